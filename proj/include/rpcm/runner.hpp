#pragma once

#include <optional>
#include <ostream>

#include "rpcm/config.hpp"

namespace rpcm {

struct RunOptions {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<int> threads;
  std::string example_id;  // reproduce only
};

// Executes one CLI command against a config, writing artifact files and a
// manifest into the output directory. Returns a process exit status.
int run_command(const std::string& command, const ExperimentConfig& config,
                const RunOptions& options, std::ostream& log);

}  // namespace rpcm
