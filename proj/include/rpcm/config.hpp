#pragma once

#include <optional>
#include <string>

#include "rpcm/io.hpp"
#include "rpcm/system.hpp"

namespace rpcm {

// Declarative experiment description. Parsing is strict: unknown fields are
// rejected by JSON-pointer path, and emit-then-parse round-trips exactly.
struct MeasureSpec {
  std::string type;  // dirac | discrete | uniform | power-law
  double value = 0.0;
  std::vector<ParameterMeasure::Atom> atoms;
  double lo = 0.0;
  double hi = 0.0;  // "inf" allowed for power-law
  double exponent = 0.0;
  int nodes = 256;

  ParameterMeasure build() const;
  io::json to_json() const;
  static MeasureSpec from_json(const io::json& j, const std::string& path);
};

struct ValidateKnobs {
  int grid_size = 512;
  int quadrature_nodes = 256;
  double slope_ceiling = 1e12;
};

struct SequencesKnobs {
  std::size_t n_terms = 100;
  std::size_t m_terms = 50;
  std::optional<double> reference_alpha;  // default: singleton nu_A value
  std::optional<double> beta;             // default: every atom of discrete nu_B
  bool predict = true;
};

struct InducedKnobs {
  std::size_t samples = 1000;
  std::size_t cap = 10000;
  std::optional<double> beta;
  std::size_t histogram_returns = 10000;
};

struct UlamKnobs {
  std::size_t y_cells = 256;
  std::size_t samples_per_cell = 10000;
  std::size_t cap = 10000;
  std::size_t x_depth = 20;
  std::size_t x_subdivide = 4;
  std::size_t n_trunc = 200;
  double tol = 1e-4;
  std::size_t max_iters = 100000;
  std::optional<double> reference_alpha;
};

struct SimulateKnobs {
  std::uint64_t steps = 1000000;
  double x0 = 0.7;
  std::size_t n_cells = 12;
  std::optional<double> reference_alpha;
};

struct AsymptoticsKnobs {
  std::size_t window_lo = 1000;
  std::size_t window_hi = 100000;
  std::size_t points = 33;
  std::string mode = "x-decay";  // x-decay | y-decay | predictor | sandwich
  std::optional<double> beta;
  std::optional<double> reference_alpha;
  std::optional<double> alpha_major;
  std::optional<double> alpha_minor;
  double envelope_c = 0.4;
};

struct ExperimentConfig {
  int schema_version = 1;
  std::string family;
  MeasureSpec nu_a;
  MeasureSpec nu_b;
  std::uint64_t seed = 1;
  std::string out_dir = "out";
  int threads = 0;  // 0 = auto

  ValidateKnobs validate;
  SequencesKnobs sequences;
  InducedKnobs induced;
  UlamKnobs ulam;
  SimulateKnobs simulate;
  AsymptoticsKnobs asymptotics;

  RandomMapSystem build_system() const;
  io::json to_json() const;
  static ExperimentConfig from_json(const io::json& j);
  static ExperimentConfig from_file(const std::string& path);
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace rpcm
