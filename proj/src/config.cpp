#include "rpcm/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "rpcm/families.hpp"

namespace rpcm {

namespace {

using io::json;

void reject_unknown(const json& j, const std::string& path,
                    const std::set<std::string>& allowed) {
  if (!j.is_object()) throw ConfigError(path + ": expected an object");
  for (const auto& [key, _] : j.items())
    if (!allowed.count(key))
      throw ConfigError(path + "/" + key + ": unknown field (strict schema)");
}

template <typename T>
T get_or(const json& j, const std::string& key, const std::string& path, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(path + "/" + key + ": " + e.what());
  }
}

std::optional<double> get_opt(const json& j, const std::string& key,
                              const std::string& path) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  try {
    return j.at(key).get<double>();
  } catch (const json::exception& e) {
    throw ConfigError(path + "/" + key + ": " + e.what());
  }
}

json opt_json(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

}  // namespace

ParameterMeasure MeasureSpec::build() const {
  if (type == "dirac") return ParameterMeasure::dirac(value);
  if (type == "discrete") return ParameterMeasure::discrete(atoms);
  if (type == "uniform") return ParameterMeasure::uniform(lo, hi, nodes);
  if (type == "power-law") return ParameterMeasure::power_law(lo, hi, exponent, nodes);
  throw ConfigError("measure type '" + type + "' is not one of dirac|discrete|uniform|power-law");
}

io::json MeasureSpec::to_json() const {
  json j;
  j["type"] = type;
  if (type == "dirac") {
    j["value"] = value;
  } else if (type == "discrete") {
    json arr = json::array();
    for (const auto& a : atoms) arr.push_back({{"param", a.param}, {"weight", a.weight}});
    j["atoms"] = arr;
  } else {
    j["lo"] = lo;
    if (std::isinf(hi))
      j["hi"] = "inf";
    else
      j["hi"] = hi;
    if (type == "power-law") j["exponent"] = exponent;
    j["nodes"] = nodes;
  }
  return j;
}

MeasureSpec MeasureSpec::from_json(const json& j, const std::string& path) {
  MeasureSpec s;
  if (!j.is_object() || !j.contains("type"))
    throw ConfigError(path + ": expected an object with a 'type' field");
  s.type = j.at("type").get<std::string>();
  if (s.type == "dirac") {
    reject_unknown(j, path, {"type", "value"});
    if (!j.contains("value")) throw ConfigError(path + "/value: required for dirac");
    s.value = j.at("value").get<double>();
  } else if (s.type == "discrete") {
    reject_unknown(j, path, {"type", "atoms"});
    if (!j.contains("atoms") || !j.at("atoms").is_array())
      throw ConfigError(path + "/atoms: required array for discrete");
    for (std::size_t i = 0; i < j.at("atoms").size(); ++i) {
      const json& a = j.at("atoms")[i];
      reject_unknown(a, path + "/atoms/" + std::to_string(i), {"param", "weight"});
      if (!a.contains("param") || !a.contains("weight"))
        throw ConfigError(path + "/atoms/" + std::to_string(i) + ": need param and weight");
      s.atoms.push_back({a.at("param").get<double>(), a.at("weight").get<double>()});
    }
  } else if (s.type == "uniform" || s.type == "power-law") {
    reject_unknown(j, path, {"type", "lo", "hi", "exponent", "nodes"});
    if (!j.contains("lo") || !j.contains("hi"))
      throw ConfigError(path + ": lo and hi required");
    s.lo = j.at("lo").get<double>();
    if (j.at("hi").is_string()) {
      if (j.at("hi").get<std::string>() != "inf")
        throw ConfigError(path + "/hi: number or \"inf\"");
      s.hi = std::numeric_limits<double>::infinity();
    } else {
      s.hi = j.at("hi").get<double>();
    }
    if (s.type == "power-law") {
      if (!j.contains("exponent")) throw ConfigError(path + "/exponent: required");
      s.exponent = j.at("exponent").get<double>();
    }
    s.nodes = get_or<int>(j, "nodes", path, 256);
  } else {
    throw ConfigError(path + "/type: '" + s.type + "' unknown");
  }
  return s;
}

RandomMapSystem ExperimentConfig::build_system() const {
  return make_system(family, nu_a.build(), nu_b.build());
}

io::json ExperimentConfig::to_json() const {
  json j;
  j["schema_version"] = schema_version;
  j["family"] = family;
  j["nu_a"] = nu_a.to_json();
  j["nu_b"] = nu_b.to_json();
  j["seed"] = seed;
  j["out_dir"] = out_dir;
  j["threads"] = threads;
  j["validate"] = {{"grid_size", validate.grid_size},
                   {"quadrature_nodes", validate.quadrature_nodes},
                   {"slope_ceiling", validate.slope_ceiling}};
  j["sequences"] = {{"n_terms", sequences.n_terms},
                    {"m_terms", sequences.m_terms},
                    {"reference_alpha", opt_json(sequences.reference_alpha)},
                    {"beta", opt_json(sequences.beta)},
                    {"predict", sequences.predict}};
  j["induced"] = {{"samples", induced.samples},
                  {"cap", induced.cap},
                  {"beta", opt_json(induced.beta)},
                  {"histogram_returns", induced.histogram_returns}};
  j["ulam"] = {{"y_cells", ulam.y_cells},
               {"samples_per_cell", ulam.samples_per_cell},
               {"cap", ulam.cap},
               {"x_depth", ulam.x_depth},
               {"x_subdivide", ulam.x_subdivide},
               {"n_trunc", ulam.n_trunc},
               {"tol", ulam.tol},
               {"max_iters", ulam.max_iters},
               {"reference_alpha", opt_json(ulam.reference_alpha)}};
  j["simulate"] = {{"steps", simulate.steps},
                   {"x0", simulate.x0},
                   {"n_cells", simulate.n_cells},
                   {"reference_alpha", opt_json(simulate.reference_alpha)}};
  j["asymptotics"] = {{"window_lo", asymptotics.window_lo},
                      {"window_hi", asymptotics.window_hi},
                      {"points", asymptotics.points},
                      {"mode", asymptotics.mode},
                      {"beta", opt_json(asymptotics.beta)},
                      {"reference_alpha", opt_json(asymptotics.reference_alpha)},
                      {"alpha_major", opt_json(asymptotics.alpha_major)},
                      {"alpha_minor", opt_json(asymptotics.alpha_minor)},
                      {"envelope_c", asymptotics.envelope_c}};
  return j;
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
  reject_unknown(j, "", {"schema_version", "family", "nu_a", "nu_b", "seed", "out_dir",
                         "threads", "validate", "sequences", "induced", "ulam", "simulate",
                         "asymptotics"});
  ExperimentConfig c;
  if (!j.contains("schema_version") || j.at("schema_version").get<int>() != 1)
    throw ConfigError("/schema_version: required and must be 1");
  if (!j.contains("family")) throw ConfigError("/family: required");
  c.family = j.at("family").get<std::string>();
  if (!j.contains("nu_a") || !j.contains("nu_b"))
    throw ConfigError("/nu_a, /nu_b: both measures are required");
  c.nu_a = MeasureSpec::from_json(j.at("nu_a"), "/nu_a");
  c.nu_b = MeasureSpec::from_json(j.at("nu_b"), "/nu_b");
  c.seed = get_or<std::uint64_t>(j, "seed", "", 1);
  c.out_dir = get_or<std::string>(j, "out_dir", "", "out");
  c.threads = get_or<int>(j, "threads", "", 0);

  if (j.contains("validate")) {
    const json& v = j.at("validate");
    reject_unknown(v, "/validate", {"grid_size", "quadrature_nodes", "slope_ceiling"});
    c.validate.grid_size = get_or<int>(v, "grid_size", "/validate", 512);
    c.validate.quadrature_nodes = get_or<int>(v, "quadrature_nodes", "/validate", 256);
    c.validate.slope_ceiling = get_or<double>(v, "slope_ceiling", "/validate", 1e12);
  }
  if (j.contains("sequences")) {
    const json& v = j.at("sequences");
    reject_unknown(v, "/sequences", {"n_terms", "m_terms", "reference_alpha", "beta", "predict"});
    c.sequences.n_terms = get_or<std::size_t>(v, "n_terms", "/sequences", 100);
    c.sequences.m_terms = get_or<std::size_t>(v, "m_terms", "/sequences", 50);
    c.sequences.reference_alpha = get_opt(v, "reference_alpha", "/sequences");
    c.sequences.beta = get_opt(v, "beta", "/sequences");
    c.sequences.predict = get_or<bool>(v, "predict", "/sequences", true);
  }
  if (j.contains("induced")) {
    const json& v = j.at("induced");
    reject_unknown(v, "/induced", {"samples", "cap", "beta", "histogram_returns"});
    c.induced.samples = get_or<std::size_t>(v, "samples", "/induced", 1000);
    c.induced.cap = get_or<std::size_t>(v, "cap", "/induced", 10000);
    c.induced.beta = get_opt(v, "beta", "/induced");
    c.induced.histogram_returns = get_or<std::size_t>(v, "histogram_returns", "/induced", 10000);
  }
  if (j.contains("ulam")) {
    const json& v = j.at("ulam");
    reject_unknown(v, "/ulam",
                   {"y_cells", "samples_per_cell", "cap", "x_depth", "x_subdivide", "n_trunc",
                    "tol", "max_iters", "reference_alpha"});
    c.ulam.y_cells = get_or<std::size_t>(v, "y_cells", "/ulam", 256);
    c.ulam.samples_per_cell = get_or<std::size_t>(v, "samples_per_cell", "/ulam", 10000);
    c.ulam.cap = get_or<std::size_t>(v, "cap", "/ulam", 10000);
    c.ulam.x_depth = get_or<std::size_t>(v, "x_depth", "/ulam", 20);
    c.ulam.x_subdivide = get_or<std::size_t>(v, "x_subdivide", "/ulam", 4);
    c.ulam.n_trunc = get_or<std::size_t>(v, "n_trunc", "/ulam", 200);
    c.ulam.tol = get_or<double>(v, "tol", "/ulam", 1e-4);
    c.ulam.max_iters = get_or<std::size_t>(v, "max_iters", "/ulam", 100000);
    c.ulam.reference_alpha = get_opt(v, "reference_alpha", "/ulam");
  }
  if (j.contains("simulate")) {
    const json& v = j.at("simulate");
    reject_unknown(v, "/simulate", {"steps", "x0", "n_cells", "reference_alpha"});
    c.simulate.steps = get_or<std::uint64_t>(v, "steps", "/simulate", 1000000);
    c.simulate.x0 = get_or<double>(v, "x0", "/simulate", 0.7);
    c.simulate.n_cells = get_or<std::size_t>(v, "n_cells", "/simulate", 12);
    c.simulate.reference_alpha = get_opt(v, "reference_alpha", "/simulate");
  }
  if (j.contains("asymptotics")) {
    const json& v = j.at("asymptotics");
    reject_unknown(v, "/asymptotics",
                   {"window_lo", "window_hi", "points", "mode", "beta", "reference_alpha",
                    "alpha_major", "alpha_minor", "envelope_c"});
    c.asymptotics.window_lo = get_or<std::size_t>(v, "window_lo", "/asymptotics", 1000);
    c.asymptotics.window_hi = get_or<std::size_t>(v, "window_hi", "/asymptotics", 100000);
    c.asymptotics.points = get_or<std::size_t>(v, "points", "/asymptotics", 33);
    c.asymptotics.mode = get_or<std::string>(v, "mode", "/asymptotics", "x-decay");
    c.asymptotics.beta = get_opt(v, "beta", "/asymptotics");
    c.asymptotics.reference_alpha = get_opt(v, "reference_alpha", "/asymptotics");
    c.asymptotics.alpha_major = get_opt(v, "alpha_major", "/asymptotics");
    c.asymptotics.alpha_minor = get_opt(v, "alpha_minor", "/asymptotics");
    c.asymptotics.envelope_c = get_or<double>(v, "envelope_c", "/asymptotics", 0.4);
  }
  return c;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config parse error in " + path + ": " + e.what());
  }
  return from_json(j);
}

}  // namespace rpcm
