#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rpcm/asymptotics.hpp"
#include "rpcm/families.hpp"
#include "rpcm/montecarlo.hpp"
#include "rpcm/ulam.hpp"

namespace py = pybind11;
using namespace rpcm;

namespace {

ParameterMeasure measure_from_dict(const py::dict& d) {
  std::string type = py::cast<std::string>(d["type"]);
  if (type == "dirac") return ParameterMeasure::dirac(py::cast<double>(d["value"]));
  if (type == "discrete") {
    std::vector<ParameterMeasure::Atom> atoms;
    for (auto item : d["atoms"]) {
      auto pair = py::cast<std::pair<double, double>>(item);
      atoms.push_back({pair.first, pair.second});
    }
    return ParameterMeasure::discrete(std::move(atoms));
  }
  if (type == "uniform")
    return ParameterMeasure::uniform(py::cast<double>(d["lo"]), py::cast<double>(d["hi"]));
  if (type == "power-law")
    return ParameterMeasure::power_law(py::cast<double>(d["lo"]), py::cast<double>(d["hi"]),
                                       py::cast<double>(d["exponent"]));
  throw std::invalid_argument("measure type must be dirac|discrete|uniform|power-law");
}

}  // namespace

PYBIND11_MODULE(_rpcmlab, m) {
  m.doc() = "random piecewise convex interval maps: transfer operators, induced maps, "
            "invariant densities";

  py::class_<RandomMapSystem>(m, "System")
      .def_property_readonly("name", &RandomMapSystem::name)
      .def("with_constant_alpha", &RandomMapSystem::with_constant_alpha);

  m.def("make_system",
        [](const std::string& family, const py::dict& nu_a, const py::dict& nu_b) {
          return make_system(family, measure_from_dict(nu_a), measure_from_dict(nu_b));
        },
        py::arg("family"), py::arg("nu_a"), py::arg("nu_b"));
  m.def("family_ids", [] { return family_ids(); });

  m.def("eval_map", &eval_map, py::arg("system"), py::arg("alpha"), py::arg("beta"),
        py::arg("x"));
  m.def("invert_left", &invert_left, py::arg("system"), py::arg("alpha"), py::arg("u"));
  m.def("invert_right",
        [](const RandomMapSystem& s, double beta, double u) -> py::object {
          auto r = invert_right(s, beta, u);
          if (!r) return py::none();
          return py::float_(*r);
        },
        py::arg("system"), py::arg("beta"), py::arg("u"));

  m.def("check_conditions",
        [](const RandomMapSystem& s, int grid, int nodes) {
          ConditionReport r = check_conditions(s, grid, nodes);
          auto one = [](const ConditionCheck& c) {
            py::dict d;
            d["pass"] = c.ok();
            d["detail"] = c.detail;
            return d;
          };
          py::dict d;
          d["measurable"] = one(r.measurable);
          d["endpoints_smooth"] = one(r.endpoints_smooth);
          d["convexity"] = one(r.convexity);
          d["bounded_slope_a"] = one(r.bounded_slope_a);
          d["integrable_gap_b"] = one(r.integrable_gap_b);
          d["all_pass"] = r.all_pass();
          return d;
        },
        py::arg("system"), py::arg("grid_size") = 512, py::arg("quadrature_nodes") = 256);

  m.def("x_sequence",
        [](const RandomMapSystem& s, double alpha, std::size_t n) {
          AlphaStream as = AlphaStream::constant(alpha);
          return x_sequence(s, as, n).values;
        },
        py::arg("system"), py::arg("alpha"), py::arg("n_terms"),
        "inverse orbit of 1/2 under the constant-alpha left branch");
  m.def("partition_sequences",
        [](const RandomMapSystem& s, double alpha, double beta, std::size_t m_terms) {
          AlphaStream as = AlphaStream::constant(alpha);
          PartitionSequences ps = make_partition_sequences(s, as, beta, m_terms);
          py::dict d;
          d["x"] = ps.xs.values;
          d["eta"] = ps.eta;
          d["y"] = ps.ys;
          return d;
        },
        py::arg("system"), py::arg("alpha"), py::arg("beta"), py::arg("m_terms"));
  m.def("tail_index", &tail_index, py::arg("system"), py::arg("delta"),
        py::arg("quadrature_nodes") = 256);
  m.def("predicted_cell_measure", &predicted_cell_measure, py::arg("system"),
        py::arg("reference_alpha"), py::arg("n"));

  m.def("induced_step",
        [](const RandomMapSystem& s, double x, double beta, double alpha, std::size_t cap) {
          AlphaStream as = AlphaStream::constant(alpha);
          InducedStep st = induced_step(s, x, beta, as, cap);
          py::dict d;
          d["landing"] = st.landing;
          d["left_steps"] = st.left_steps;
          d["derivative"] = st.derivative;
          d["censored"] = st.censored;
          return d;
        },
        py::arg("system"), py::arg("x"), py::arg("beta"), py::arg("alpha"),
        py::arg("cap") = kDefaultInducedCap);

  m.def("induced_density",
        [](const RandomMapSystem& s, std::size_t cells, std::size_t samples, std::size_t cap,
           std::uint64_t seed, int threads) {
          auto part = IntervalPartition::uniform(0.5, 1.0, cells);
          UlamOperator py_op = build_ulam_py(s, part, samples, cap, seed, threads);
          DensityEstimate est = induced_invariant_density(py_op);
          py::dict d;
          d["breakpoints"] = part.breakpoints();
          d["h0"] = est.h0;
          d["residual_l1"] = est.residual_l1;
          d["converged"] = est.converged;
          return d;
        },
        py::arg("system"), py::arg("cells") = 64, py::arg("samples_per_cell") = 1000,
        py::arg("cap") = kDefaultInducedCap, py::arg("seed") = 1, py::arg("threads") = 1);

  m.def("run_orbit",
        [](const RandomMapSystem& s, double x0, std::uint64_t steps, std::uint64_t seed,
           double reference_alpha, std::size_t n_cells, int threads) {
          auto cells = standard_cells(s, reference_alpha, n_cells);
          OccupationEstimate occ = run_orbit(s, x0, steps, seed, cells, threads);
          py::dict d;
          py::list labels, ratios, counts;
          for (std::size_t c = 0; c < cells.size(); ++c) {
            labels.append(cells[c].label);
            ratios.append(occ.ratios[c]);
            counts.append(occ.counts[c]);
          }
          d["labels"] = labels;
          d["counts"] = counts;
          d["ratios"] = ratios;
          d["reliable"] = occ.reliable;
          return d;
        },
        py::arg("system"), py::arg("x0"), py::arg("steps"), py::arg("seed"),
        py::arg("reference_alpha"), py::arg("n_cells") = 12, py::arg("threads") = 1);

  m.def("fit_exponent",
        [](const std::vector<std::pair<std::size_t, double>>& series, std::size_t lo,
           std::size_t hi) {
          ExponentFit f = fit_exponent(series, lo, hi);
          py::dict d;
          d["exponent"] = f.exponent;
          d["std_error"] = f.std_error;
          d["slow_variation"] = f.slow_variation;
          return d;
        },
        py::arg("series"), py::arg("window_lo"), py::arg("window_hi"));

  m.def("sandwich_report",
        [](const RandomMapSystem& s, double alpha_major, double alpha_minor, std::size_t lo,
           std::size_t hi) {
          SandwichReport r = sandwich_report(s, alpha_major, alpha_minor, lo, hi);
          py::dict d;
          d["overall"] = std::string(to_string(r.overall));
          d["lower_exponent"] = r.lower.verdict.fit.exponent;
          d["upper_exponent"] = r.upper.verdict.fit.exponent;
          d["ratio_bound"] = r.ratio_bound;
          return d;
        },
        py::arg("system"), py::arg("alpha_major"), py::arg("alpha_minor"),
        py::arg("window_lo") = 1000, py::arg("window_hi") = 10000);
}
