#include "rpcm/runner.hpp"

#include <cmath>
#include <filesystem>

#include "rpcm/accept.hpp"
#include "rpcm/asymptotics.hpp"
#include "rpcm/families.hpp"
#include "rpcm/montecarlo.hpp"
#include "rpcm/ulam.hpp"

namespace rpcm {

namespace {

namespace fs = std::filesystem;
using io::json;
using io::num17;

std::string status_str(ConditionCheck::Status s) {
  switch (s) {
    case ConditionCheck::Status::pass:
      return "pass";
    case ConditionCheck::Status::fail:
      return "fail";
    default:
      return "undetermined";
  }
}

json check_json(const ConditionCheck& c) {
  json j;
  j["status"] = status_str(c.status);
  j["detail"] = c.detail;
  if (c.witness)
    j["witness"] = *c.witness;
  else
    j["witness"] = nullptr;
  return j;
}

double reference_alpha_or_throw(const RandomMapSystem& sys,
                                const std::optional<double>& knob) {
  if (knob) return *knob;
  if (sys.nu_a().is_singleton()) return sys.nu_a().singleton_value();
  throw ConfigError("reference_alpha required: nu_A is not a singleton");
}

std::vector<double> betas_to_run(const RandomMapSystem& sys,
                                 const std::optional<double>& knob) {
  if (knob) return {*knob};
  if (sys.nu_b().is_discrete()) {
    std::vector<double> out;
    for (const auto& a : sys.nu_b().atoms()) out.push_back(a.param);
    return out;
  }
  throw ConfigError("beta required: nu_B is continuous");
}

std::string beta_tag(double beta) {
  std::string s = std::to_string(beta);
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  for (auto& ch : s)
    if (ch == '.') ch = '_';
  return s;
}

void emit_density_csv(const fs::path& path, const IntervalPartition& part,
                      const std::vector<double>& density, io::RunManifest& man) {
  io::CsvWriter csv(path);
  csv.row({"cell_left", "cell_right", "value"});
  for (std::size_t i = 0; i < part.size(); ++i)
    csv.row({num17(part.left(i)), num17(part.right(i)), num17(density[i])});
  csv.close();
  man.add_file(path);
}

void emit_matrix_csv(const fs::path& path, const UlamOperator& op, io::RunManifest& man) {
  io::CsvWriter csv(path);
  csv.row({"row", "col", "value"});
  for (std::size_t i = 0; i < op.size(); ++i)
    for (const auto& [j, v] : op.rows[i])
      csv.row({std::to_string(i), std::to_string(j), num17(v)});
  csv.close();
  man.add_file(path);
}

int cmd_validate(const RandomMapSystem& sys, const ExperimentConfig& cfg,
                 const fs::path& out, std::uint64_t seed, io::RunManifest& man,
                 std::ostream& log) {
  ConditionReport rep = check_conditions(sys, cfg.validate.grid_size,
                                         cfg.validate.quadrature_nodes,
                                         cfg.validate.slope_ceiling, seed);
  json j;
  j["family"] = sys.name();
  j["measurable"] = check_json(rep.measurable);
  j["endpoints_smooth"] = check_json(rep.endpoints_smooth);
  j["convexity"] = check_json(rep.convexity);
  j["bounded_slope_a"] = check_json(rep.bounded_slope_a);
  j["integrable_gap_b"] = check_json(rep.integrable_gap_b);
  j["max_left_slope_at_half"] = rep.max_left_slope_at_half;
  j["gap_integral"] = rep.gap_integral;
  j["all_pass"] = rep.all_pass();
  io::write_json(out / "conditions.json", j);
  man.add_file(out / "conditions.json");
  log << "conditions: " << (rep.all_pass() ? "all pass" : "NOT all pass") << "\n";
  return 0;
}

int cmd_sequences(const RandomMapSystem& sys, const ExperimentConfig& cfg,
                  const fs::path& out, io::RunManifest& man, std::ostream& log) {
  const auto& k = cfg.sequences;
  double ref = reference_alpha_or_throw(sys, k.reference_alpha);
  json summary = json::array();
  for (double beta : betas_to_run(sys, k.beta)) {
    AlphaStream as = AlphaStream::constant(ref);
    PartitionSequences ps = make_partition_sequences(sys, as, beta, k.m_terms);
    AlphaStream as2 = AlphaStream::constant(ref);
    XSequence xs = x_sequence(sys, as2, std::max(k.n_terms, ps.eta + k.m_terms));
    if (xs.truncated) man.add_warning("x-sequence truncated at floating-point resolution");

    std::vector<std::pair<std::size_t, double>> pred;
    if (k.predict) {
      std::vector<std::size_t> ns;
      for (std::size_t n = 2; n <= k.n_terms; ++n) ns.push_back(n);
      pred = predicted_cell_measure_series(sys, ref, ns);
    }
    fs::path path = out / ("sequences_beta" + beta_tag(beta) + ".csv");
    io::CsvWriter csv(path);
    csv.row({"n", "x_n", "y_n", "predicted_mu_Xn"});
    std::size_t rows = std::max(k.n_terms, k.m_terms + 1);
    for (std::size_t n = 1; n <= rows; ++n) {
      std::string xv = n <= xs.count() ? num17(xs.x(n)) : "";
      std::string yv = n - 1 < ps.ys.size() ? num17(ps.ys[n - 1]) : "";
      std::string pv;
      for (const auto& [pn, val] : pred)
        if (pn == n) pv = num17(val);
      csv.row({std::to_string(n), xv, yv, pv});
    }
    csv.close();
    man.add_file(path);
    summary.push_back({{"beta", beta},
                       {"eta", ps.eta},
                       {"reference_alpha", ref},
                       {"x_truncated", xs.truncated}});
    log << "beta=" << beta << ": eta=" << ps.eta << "\n";
  }
  io::write_json(out / "sequences_summary.json", summary);
  man.add_file(out / "sequences_summary.json");
  return 0;
}

int cmd_induced(const RandomMapSystem& sys, const ExperimentConfig& cfg, const fs::path& out,
                std::uint64_t seed, io::RunManifest& man, std::ostream& log) {
  const auto& k = cfg.induced;
  std::vector<double> beta_cycle;  // fixed beta or discrete atoms; else sampled
  if (k.beta)
    beta_cycle.push_back(*k.beta);
  else if (sys.nu_b().is_discrete())
    beta_cycle = betas_to_run(sys, k.beta);
  RngStream rng(derive_seed(seed, "induced", "samples"));
  fs::path spath = out / "induced_samples.csv";
  io::CsvWriter csv(spath);
  csv.row({"x", "beta", "landing", "left_steps", "return_time", "derivative", "censored"});
  for (std::size_t i = 0; i < k.samples; ++i) {
    double u = rng.next_unit();
    while (u == 0.0) u = rng.next_unit();
    double x = 0.5 + 0.5 * u;
    double beta =
        beta_cycle.empty() ? sys.nu_b().sample(rng) : beta_cycle[i % beta_cycle.size()];
    InducedStep st = induced_step(sys, x, beta, rng, k.cap);
    csv.row({num17(x), num17(beta), num17(st.landing), std::to_string(st.left_steps),
             std::to_string(st.left_steps + 1), num17(st.derivative),
             st.censored ? "1" : "0"});
  }
  csv.close();
  man.add_file(spath);

  ReturnTimeHistogram h = return_time_histogram(sys, k.histogram_returns, k.cap,
                                                derive_seed(seed, "induced", "histogram"));
  fs::path hpath = out / "return_times.csv";
  io::CsvWriter hcsv(hpath);
  hcsv.row({"return_time", "count"});
  for (std::size_t t = 1; t < h.counts.size(); ++t)
    if (h.counts[t] > 0) hcsv.row({std::to_string(t), std::to_string(h.counts[t])});
  hcsv.close();
  man.add_file(hpath);

  json j;
  j["mean_return_time"] = h.mean;
  j["censored"] = h.censored;
  j["total"] = h.total;
  j["tail_exponent"] = h.tail_exponent;
  j["tail_std_error"] = h.tail_std_error;
  j["heavy_tail"] = h.heavy_tail;
  io::write_json(out / "induced_summary.json", j);
  man.add_file(out / "induced_summary.json");
  if (h.censored > 0)
    man.add_warning(std::to_string(h.censored) + " induced steps censored at the cap");
  log << "mean return time " << h.mean << ", censored " << h.censored << "\n";
  return 0;
}

int cmd_ulam(const RandomMapSystem& sys, const ExperimentConfig& cfg, const fs::path& out,
             std::uint64_t seed, int threads, io::RunManifest& man, std::ostream& log) {
  const auto& k = cfg.ulam;
  double ref = reference_alpha_or_throw(sys, k.reference_alpha);

  auto y_part = IntervalPartition::uniform(0.5, 1.0, k.y_cells);
  UlamOperator py = build_ulam_py(sys, y_part, k.samples_per_cell, k.cap,
                                  derive_seed(seed, "ulam", "py"), threads);
  for (std::size_t i = 0; i < py.size(); ++i)
    if (py.unreliable[i])
      man.add_warning("induced row " + std::to_string(i) + " unreliable (censored fraction " +
                      num17(py.censored_fraction[i]) + ")");
  emit_matrix_csv(out / "matrix_py.csv", py, man);

  DensityEstimate est = induced_invariant_density(py, k.max_iters, k.tol);
  if (!est.converged) man.add_warning("density iteration did not converge");
  emit_density_csv(out / "h0.csv", est.y_partition, est.h0, man);

  AlphaStream as = AlphaStream::constant(ref);
  XSequence xs = x_sequence(sys, as, k.x_depth + 1);
  auto x_part = IntervalPartition::x_adapted(xs.values, k.x_depth, k.x_subdivide, y_part);
  UlamOperator p = build_ulam_p(sys, x_part, k.samples_per_cell,
                                derive_seed(seed, "ulam", "p"), threads);
  emit_matrix_csv(out / "matrix_p.csv", p, man);

  extend_density(est, p, x_part, k.n_trunc);
  emit_density_csv(out / "h_ext.csv", est.x_partition, est.h_ext, man);

  double max_censored = 0.0;
  for (double cf : py.censored_fraction) max_censored = std::max(max_censored, cf);
  json j;
  j["residual_l1"] = est.residual_l1;
  j["converged"] = est.converged;
  j["iterations"] = est.iterations;
  j["max_censored_fraction"] = max_censored;
  j["truncation_depth"] = est.truncation_depth;
  j["tail_mass"] = est.tail_mass;
  std::size_t divergent = 0;
  for (auto d : est.divergent) divergent += d;
  j["divergent_cells"] = divergent;
  j["warnings"] = man.warnings();
  io::write_json(out / "ulam_summary.json", j);
  man.add_file(out / "ulam_summary.json");
  log << "h0 residual " << est.residual_l1 << ", truncation depth " << est.truncation_depth
      << "\n";
  return 0;
}

int cmd_simulate(const RandomMapSystem& sys, const ExperimentConfig& cfg, const fs::path& out,
                 std::uint64_t seed, int threads, io::RunManifest& man, std::ostream& log) {
  const auto& k = cfg.simulate;
  double ref = reference_alpha_or_throw(sys, k.reference_alpha);
  auto cells = standard_cells(sys, ref, k.n_cells);
  OccupationEstimate occ = run_orbit(sys, k.x0, k.steps, seed, cells, threads);
  if (!occ.reliable) man.add_warning("occupation estimate unreliable (thin Y batches)");
  if (occ.absorbed) man.add_warning("orbit absorbed at 0");

  fs::path path = out / "occupation.csv";
  io::CsvWriter csv(path);
  csv.row({"cell_index", "cell_left", "cell_right", "count", "ratio", "ci"});
  for (std::size_t c = 0; c < cells.size(); ++c)
    csv.row({cells[c].label, num17(cells[c].left), num17(cells[c].right),
             std::to_string(occ.counts[c]), num17(occ.ratios[c]), num17(occ.ci_halfwidth[c])});
  csv.close();
  man.add_file(path);
  log << "orbit of " << k.steps << " steps, Y count " << occ.counts[occ.y_index] << "\n";
  return 0;
}

int cmd_asymptotics(const RandomMapSystem& sys, const ExperimentConfig& cfg,
                    const fs::path& out, io::RunManifest& man, std::ostream& log) {
  const auto& k = cfg.asymptotics;
  json j;
  j["family"] = sys.name();
  j["parameters"] = cfg.to_json();
  j["window"] = {{"lo", k.window_lo}, {"hi", k.window_hi}};
  json theoretical = nullptr;

  if (k.mode == "sandwich") {
    if (!k.alpha_major || !k.alpha_minor)
      throw ConfigError("/asymptotics: sandwich mode needs alpha_major and alpha_minor");
    SandwichReport rep = sandwich_report(sys, *k.alpha_major, *k.alpha_minor, k.window_lo,
                                         k.window_hi, k.points, k.envelope_c);
    auto side_json = [](const SandwichSide& s) {
      json arr = json::array();
      for (const auto& [n, v] : s.series) arr.push_back({{"n", n}, {"mu", v}});
      return json{{"alpha", s.alpha},
                  {"fitted_exponent", s.verdict.fit.exponent},
                  {"stderr", s.verdict.fit.std_error},
                  {"verdict", to_string(s.verdict.verdict)},
                  {"series", arr}};
    };
    j["fitted_exponent"] = rep.lower.verdict.fit.exponent;
    j["stderr"] = rep.lower.verdict.fit.std_error;
    j["theoretical_exponent"] = theoretical;
    j["verdict"] = to_string(rep.overall);
    j["sandwich"] = {{"lower", side_json(rep.lower)},
                     {"upper", side_json(rep.upper)},
                     {"ratio_bound", rep.ratio_bound},
                     {"dominance", rep.dominance.detail}};
    log << "sandwich verdict: " << to_string(rep.overall) << "\n";
  } else {
    std::vector<std::pair<std::size_t, double>> series;
    const SystemTraits* traits = &sys.traits();
    double ref = reference_alpha_or_throw(sys, k.reference_alpha);
    if (k.mode == "x-decay") {
      AlphaStream as = AlphaStream::constant(ref);
      XSequence xs = x_sequence(sys, as, k.window_hi);
      for (std::size_t n = 1; n <= xs.count(); ++n) series.push_back({n, xs.x(n)});
      if (sys.name() == "lsv" || sys.name() == "lsv-contract") theoretical = -1.0 / ref;
      traits = nullptr;  // the x-sequence itself carries no measure verdict
    } else if (k.mode == "y-decay") {
      double beta = k.beta ? *k.beta
                           : (sys.nu_b().is_singleton() ? sys.nu_b().singleton_value()
                                                        : throw ConfigError(
                                                              "/asymptotics/beta required"));
      AlphaStream as = AlphaStream::constant(ref);
      PartitionSequences ps = make_partition_sequences(sys, as, beta, k.window_hi);
      for (std::size_t n = 1; n < ps.ys.size(); ++n) series.push_back({n, ps.ys[n] - 0.5});
      if (sys.name() == "critical") theoretical = -1.0 / (ref * beta);
      traits = nullptr;
    } else if (k.mode == "predictor") {
      auto ns = log_spaced_indices(std::max<std::size_t>(2, k.window_lo), k.window_hi,
                                   k.points);
      series = predicted_cell_measure_series(sys, ref, ns);
    } else {
      throw ConfigError("/asymptotics/mode: unknown mode " + k.mode);
    }
    VerdictReport rep = finiteness_verdict(series, traits, k.window_lo, k.window_hi);
    j["fitted_exponent"] = rep.fit.exponent;
    j["stderr"] = rep.fit.std_error;
    j["theoretical_exponent"] = theoretical;
    j["verdict"] = to_string(rep.verdict);
    j["slow_variation"] = rep.fit.slow_variation;
    j["detail"] = rep.detail;
    j["sandwich"] = nullptr;
    log << k.mode << " exponent " << rep.fit.exponent << " (" << rep.detail << ")\n";
  }
  io::write_json(out / "asymptotics.json", j);
  man.add_file(out / "asymptotics.json");
  return 0;
}

int cmd_reproduce(const fs::path& out, std::uint64_t seed, int threads,
                  const std::string& example_id, io::RunManifest& man, std::ostream& log) {
  if (example_id.empty() || !accept::known_example(example_id)) {
    log << "unknown or missing example id; known ids:\n";
    for (const auto& id : accept::example_ids()) log << "  " << id << "\n";
    return 2;
  }
  auto results = accept::run_example(example_id, seed, threads);
  accept::print_results(log, results);
  io::write_json(out / "reproduce.json", accept::to_json(results));
  man.add_file(out / "reproduce.json");
  return accept::all_pass(results) ? 0 : 1;
}

}  // namespace

int run_command(const std::string& command, const ExperimentConfig& cfg,
                const RunOptions& opt, std::ostream& log) {
  std::uint64_t seed = opt.seed.value_or(cfg.seed);
  int threads = opt.threads.value_or(cfg.threads);
  fs::path out = opt.out_dir.value_or(cfg.out_dir);
  fs::create_directories(out);

  io::RunManifest man(command, cfg.to_json(), seed);
  int status = 0;
  try {
    if (command == "reproduce") {
      status = cmd_reproduce(out, seed, threads, opt.example_id, man, log);
    } else {
      RandomMapSystem sys = cfg.build_system();
      if (command == "validate")
        status = cmd_validate(sys, cfg, out, seed, man, log);
      else if (command == "sequences")
        status = cmd_sequences(sys, cfg, out, man, log);
      else if (command == "induced")
        status = cmd_induced(sys, cfg, out, seed, man, log);
      else if (command == "ulam")
        status = cmd_ulam(sys, cfg, out, seed, threads, man, log);
      else if (command == "simulate")
        status = cmd_simulate(sys, cfg, out, seed, threads, man, log);
      else if (command == "asymptotics")
        status = cmd_asymptotics(sys, cfg, out, man, log);
      else {
        log << "unknown command: " << command << "\n";
        return 2;
      }
    }
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    man.add_warning(std::string("run failed: ") + e.what());
    man.write(out);
    return 1;
  }
  for (const auto& w : man.warnings()) log << "warning: " << w << "\n";
  man.write(out);
  return status;
}

}  // namespace rpcm
