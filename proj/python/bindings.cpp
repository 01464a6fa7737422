#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>
#include <string>
#include <vector>

#include "rigclust/config.hpp"
#include "rigclust/error.hpp"
#include "rigclust/experiment.hpp"
#include "rigclust/graphgen.hpp"
#include "rigclust/mixed_poisson.hpp"
#include "rigclust/model.hpp"
#include "rigclust/pmf.hpp"
#include "rigclust/spectrum.hpp"
#include "rigclust/stopped_sum.hpp"
#include "rigclust/theory.hpp"
#include "rigclust/weights.hpp"

namespace py = pybind11;
using namespace rigclust;

namespace {

using release_gil = py::call_guard<py::gil_scoped_release>;

template <class T>
std::string csv_of(const T& value, void (*writer)(std::ostream&, const T&)) {
  std::ostringstream os;
  writer(os, value);
  return os.str();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Clustering spectrum of random intersection graphs";
  m.attr("__version__") = kVersion;

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InfiniteMomentError>(m, "InfiniteMomentError", error.ptr());
  py::register_exception<QuadratureError>(m, "QuadratureError", error.ptr());
  py::register_exception<DataError>(m, "DataError", error.ptr());
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", error.ptr());

  // weights
  py::class_<WeightLaw>(m, "WeightLaw")
      .def(py::init([](const std::string& text) { return parse_weight_law(text); }),
           py::arg("text"))
      .def_static("pareto", [](double x_min, double alpha) { return WeightLaw(Pareto{x_min, alpha}); },
                  py::arg("x_min"), py::arg("alpha"))
      .def_static("degenerate", [](double v) { return WeightLaw(Degenerate{v}); }, py::arg("value"))
      .def_static(
          "finite",
          [](const std::vector<std::pair<double, double>>& atoms) {
            Finite f;
            for (const auto& [v, p] : atoms) f.atoms.push_back({v, p});
            return WeightLaw(std::move(f));
          },
          py::arg("atoms"))
      .def_property_readonly("tail_index", &WeightLaw::tail_index)
      .def_property_readonly("tail_constant", &WeightLaw::tail_constant)
      .def("has_moment", &WeightLaw::has_moment, py::arg("r"))
      .def("moment", [](const WeightLaw& w, int r) { return moment(w, r); }, py::arg("r"))
      .def("tail", [](const WeightLaw& w, double t) { return tail(w, t); }, py::arg("t"))
      .def("truncated_moment",
           [](const WeightLaw& w, int r, double t) { return truncated_moment(w, r, t); },
           py::arg("r"), py::arg("t"))
      .def("size_biased", [](const WeightLaw& w, int r) { return size_biased(w, r); },
           py::arg("r"))
      .def("__str__", &WeightLaw::to_string)
      .def("__repr__", [](const WeightLaw& w) { return "WeightLaw('" + w.to_string() + "')"; });

  py::class_<ModelParams>(m, "ModelParams")
      .def(py::init<std::int64_t, std::int64_t, double, WeightLaw, WeightLaw>(), py::arg("n"),
           py::arg("m"), py::arg("beta"), py::arg("x_law"), py::arg("y_law"))
      .def_static("with_ratio", &ModelParams::with_ratio, py::arg("n"), py::arg("m"),
                  py::arg("x_law"), py::arg("y_law"))
      .def_property_readonly("n", &ModelParams::n)
      .def_property_readonly("m", &ModelParams::m)
      .def_property_readonly("beta", &ModelParams::beta)
      .def_property_readonly("x_law", &ModelParams::x_law)
      .def_property_readonly("y_law", &ModelParams::y_law)
      .def("a", &ModelParams::a, py::arg("r"))
      .def("b", &ModelParams::b, py::arg("r"))
      .def_property_readonly("has_fourth_moments", &ModelParams::has_fourth_moments)
      .def_property_readonly("power_law_regime", &ModelParams::power_law_regime);

  // pmfs
  py::class_<Pmf>(m, "Pmf")
      .def(py::init([](std::vector<double> mass, double tail_mass) {
             return Pmf{std::move(mass), tail_mass};
           }),
           py::arg("mass"), py::arg("tail_mass") = 0.0)
      .def_readwrite("mass", &Pmf::mass)
      .def_readwrite("tail_mass", &Pmf::tail_mass)
      .def_property_readonly("k_max", &Pmf::k_max)
      .def("total", &Pmf::total)
      .def("mean_lower", &Pmf::mean_lower)
      .def("__len__", &Pmf::size)
      .def("__getitem__", [](const Pmf& p, std::size_t s) { return p[s]; })
      .def("to_csv", [](const Pmf& p) { return csv_of(p, &write_pmf_csv); });

  m.def("poisson_pmf", &poisson_pmf, py::arg("mean"), py::arg("k_max"));

  py::enum_<Role>(m, "Role").value("actor", Role::actor).value("attribute", Role::attribute);

  py::class_<MixingSpec>(m, "MixingSpec")
      .def(py::init([](WeightLaw law, double scale, int bias_order) {
             return MixingSpec{std::move(law), scale, bias_order};
           }),
           py::arg("weight_law"), py::arg("scale"), py::arg("bias_order") = 0)
      .def_readonly("weight_law", &MixingSpec::weight_law)
      .def_readonly("scale", &MixingSpec::scale)
      .def_readonly("bias_order", &MixingSpec::bias_order);

  m.def("lambda_spec", &lambda_spec, py::arg("params"), py::arg("role"), py::arg("r"));
  m.def("pmf_mixed_poisson", &pmf_mixed_poisson, py::arg("spec"),
        py::arg("k_max") = kDefaultPmfKMax, py::arg("tol") = 1e-12, py::arg("extend") = true,
        release_gil());
  m.def("pmf_tau", &pmf_tau, py::arg("params"), py::arg("k_max") = kDefaultPmfKMax,
        py::arg("tol") = 1e-12, py::arg("extend") = true, release_gil());
  m.def("convolve", &convolve, py::arg("p"), py::arg("q"), py::arg("k_max"),
        py::arg("threads") = 1u, release_gil());
  m.def(
      "pmf_stopped_sum",
      [](const Pmf& count, const Pmf& summand, std::size_t k_max, double tol, unsigned threads) {
        return pmf_stopped_sum(StoppedSumSpec{count, summand}, k_max, tol, threads);
      },
      py::arg("count_pmf"), py::arg("summand_pmf"), py::arg("k_max"), py::arg("tol") = 1e-10,
      py::arg("threads") = 1u, release_gil());

  // theory
  py::class_<Interval>(m, "Interval")
      .def_readonly("lo", &Interval::lo)
      .def_readonly("hi", &Interval::hi)
      .def_property_readonly("mid", &Interval::mid)
      .def_property_readonly("width", &Interval::width)
      .def("__repr__", [](const Interval& i) {
        return "Interval(" + std::to_string(i.lo) + ", " + std::to_string(i.hi) + ")";
      });

  py::class_<LimitLaws>(m, "LimitLaws")
      .def_readonly("lambda0_1", &LimitLaws::lambda0_1)
      .def_readonly("lambda0_2", &LimitLaws::lambda0_2)
      .def_readonly("tau", &LimitLaws::tau)
      .def_readonly("dstar_1", &LimitLaws::dstar_1)
      .def_readonly("dstar_2", &LimitLaws::dstar_2)
      .def_readonly("lambda1_2", &LimitLaws::lambda1_2)
      .def_readonly("lambda1_3", &LimitLaws::lambda1_3)
      .def_readonly("triangle_law", &LimitLaws::triangle_law)
      .def_readonly("cherry_law", &LimitLaws::cherry_law)
      .def_readonly("triangle_prefactor", &LimitLaws::triangle_prefactor)
      .def_readonly("cherry_prefactor", &LimitLaws::cherry_prefactor);

  m.def(
      "limit_laws",
      [](const ModelParams& params, std::size_t k_max, double tol, double count_tol,
         unsigned threads) {
        return limit_laws(params, TheoryOptions{k_max, tol, count_tol, threads});
      },
      py::arg("params"), py::arg("k_max") = 2048, py::arg("tol") = 1e-12,
      py::arg("count_tol") = 1e-18, py::arg("threads") = 1u, release_gil());

  py::class_<ABValues>(m, "ABValues")
      .def_readonly("a", &ABValues::a)
      .def_readonly("b", &ABValues::b)
      .def_readonly("A", &ABValues::A)
      .def_readonly("B", &ABValues::B);

  m.def("abAB", py::overload_cast<const LimitLaws&, int>(&abAB), py::arg("laws"), py::arg("k"));
  m.def("predict_c", &predict_c, py::arg("beta"), py::arg("a"), py::arg("b"));
  m.def("predict_C", &predict_C, py::arg("beta"), py::arg("A"), py::arg("B"));
  m.def("delta_exponent", &delta_exponent, py::arg("alpha"), py::arg("gamma"));
  m.def("asymptotic_tail_dstar", &asymptotic_tail_dstar, py::arg("params"), py::arg("r"),
        py::arg("k"));
  m.def("asymptotic_tail_lambda", &asymptotic_tail_lambda, py::arg("params"), py::arg("r"),
        py::arg("k"));
  m.def(
      "asymptotic_AB",
      [](const ModelParams& params, double k) {
        const AsymptoticAB v = asymptotic_AB(params, k);
        return std::make_pair(v.A_tilde, v.B_tilde);
      },
      py::arg("params"), py::arg("k"));
  m.def("ratio_constant", &ratio_constant, py::arg("params"));

  py::class_<TheoryRow>(m, "TheoryRow")
      .def_readonly("k", &TheoryRow::k)
      .def_readonly("a", &TheoryRow::a)
      .def_readonly("b", &TheoryRow::b)
      .def_readonly("A", &TheoryRow::A)
      .def_readonly("B", &TheoryRow::B)
      .def_readonly("c_pred", &TheoryRow::c_pred)
      .def_readonly("C_pred", &TheoryRow::C_pred)
      .def_readonly("asymptotic", &TheoryRow::asymptotic);

  py::class_<TheoryCurve>(m, "TheoryCurve")
      .def_readonly("rows", &TheoryCurve::rows)
      .def_readonly("crossover_k", &TheoryCurve::crossover_k)
      .def("to_csv", [](const TheoryCurve& c) { return csv_of(c, &write_theory_csv); });

  m.def("theory_curve", &theory_curve, py::arg("params"), py::arg("laws"), py::arg("k_min"),
        py::arg("k_max"), py::arg("crossover_width") = 0.1, release_gil());

  // graphs
  py::enum_<Generator>(m, "Generator")
      .value("reference", Generator::reference)
      .value("fast", Generator::fast);

  py::class_<BipartiteSample>(m, "BipartiteSample")
      .def_readonly("x", &BipartiteSample::x)
      .def_readonly("y", &BipartiteSample::y)
      .def_readonly("links", &BipartiteSample::links)
      .def_readonly("seed", &BipartiteSample::seed)
      .def_property_readonly("num_links", &BipartiteSample::num_links);

  py::class_<ProjectedGraph>(m, "ProjectedGraph")
      .def(py::init<std::vector<std::vector<VertexId>>>(), py::arg("adjacency"))
      .def_static("from_edges", &ProjectedGraph::from_edges, py::arg("num_vertices"),
                  py::arg("edges"))
      .def_static(
          "from_edge_list",
          [](const std::string& text) {
            std::istringstream is(text);
            return read_edge_list(is);
          },
          py::arg("text"))
      .def_property_readonly("num_vertices", &ProjectedGraph::num_vertices)
      .def_property_readonly("num_edges", &ProjectedGraph::num_edges)
      .def("degree", &ProjectedGraph::degree, py::arg("v"))
      .def("neighbors", &ProjectedGraph::neighbors, py::arg("v"))
      .def("adjacent", &ProjectedGraph::adjacent, py::arg("u"), py::arg("v"))
      .def("to_edge_list", [](const ProjectedGraph& g) { return csv_of(g, &write_edge_list); });

  m.def("link_probability", &link_probability, py::arg("x"), py::arg("y"), py::arg("sqrt_nm"));
  m.def("sample_bipartite", &sample_bipartite, py::arg("params"), py::arg("seed"),
        py::arg("generator") = Generator::reference, py::arg("threads") = 1u, release_gil());
  m.def("sample_links", &sample_links, py::arg("x"), py::arg("y"), py::arg("seed"),
        py::arg("generator") = Generator::reference, py::arg("threads") = 1u, release_gil());
  m.def("project", &project, py::arg("sample"), py::arg("edge_budget") = kDefaultEdgeBudget,
        py::arg("threads") = 1u, release_gil());

  // spectrum
  py::class_<ClusteringSpectrum>(m, "ClusteringSpectrum")
      .def_property_readonly("max_degree", &ClusteringSpectrum::max_degree)
      .def("vertices", &ClusteringSpectrum::vertices, py::arg("k"))
      .def("tri_sum", &ClusteringSpectrum::tri_sum, py::arg("k"))
      .def("cherry_sum", &ClusteringSpectrum::cherry_sum, py::arg("k"))
      .def("cum_tri", &ClusteringSpectrum::cum_tri, py::arg("k"))
      .def("cum_cherry", &ClusteringSpectrum::cum_cherry, py::arg("k"))
      .def("c", &ClusteringSpectrum::c, py::arg("k"))
      .def("C", &ClusteringSpectrum::C, py::arg("k"))
      .def_property_readonly("total_triangles", &ClusteringSpectrum::total_triangles)
      .def("merge", &ClusteringSpectrum::merge, py::arg("other"))
      .def("to_csv",
           [](const ClusteringSpectrum& s) { return csv_of(s, &write_spectrum_csv); })
      .def(py::self == py::self);

  m.def("triangle_counts", &triangle_counts, py::arg("graph"), py::arg("threads") = 1u,
        release_gil());
  m.def("spectrum", &spectrum, py::arg("graph"), py::arg("threads") = 1u, release_gil());
  m.def(
      "pool",
      [](const std::vector<ClusteringSpectrum>& spectra) { return pool(spectra); },
      py::arg("spectra"));

  // experiments
  py::class_<ExperimentConfig>(m, "ExperimentConfig")
      .def(py::init<>())
      .def_static(
          "parse",
          [](const std::string& text) {
            std::istringstream is(text);
            return parse_config(is);
          },
          py::arg("text"))
      .def_static("load", &load_config, py::arg("path"))
      .def("set", [](ExperimentConfig& c, const std::string& key,
                     const std::string& value) { apply_setting(c, key, value); },
           py::arg("key"), py::arg("value"))
      .def_readwrite("n", &ExperimentConfig::n)
      .def_readwrite("m", &ExperimentConfig::m)
      .def_readwrite("beta", &ExperimentConfig::beta)
      .def_readwrite("x_law", &ExperimentConfig::x_law)
      .def_readwrite("y_law", &ExperimentConfig::y_law)
      .def_readwrite("replicates", &ExperimentConfig::replicates)
      .def_readwrite("seed", &ExperimentConfig::seed)
      .def_readwrite("k_min", &ExperimentConfig::k_min)
      .def_readwrite("k_max", &ExperimentConfig::k_max)
      .def_readwrite("pmf_k_max", &ExperimentConfig::pmf_k_max)
      .def_readwrite("tol", &ExperimentConfig::tol)
      .def_readwrite("count_tol", &ExperimentConfig::count_tol)
      .def_readwrite("crossover", &ExperimentConfig::crossover)
      .def_readwrite("fit_k_lo", &ExperimentConfig::fit_k_lo)
      .def_readwrite("fit_k_hi", &ExperimentConfig::fit_k_hi)
      .def_readwrite("generator", &ExperimentConfig::generator)
      .def_readwrite("edge_budget", &ExperimentConfig::edge_budget)
      .def_readwrite("save_replicates", &ExperimentConfig::save_replicates)
      .def_readwrite("output_dir", &ExperimentConfig::output_dir)
      .def_readwrite("threads", &ExperimentConfig::threads)
      .def("params", &ExperimentConfig::params)
      .def("validate", &ExperimentConfig::validate)
      .def("canonical", &ExperimentConfig::canonical)
      .def("hash", &ExperimentConfig::hash);

  m.def("config_keys", &config_keys);

  py::class_<FitResult>(m, "FitResult")
      .def_readonly("slope", &FitResult::slope)
      .def_readonly("intercept", &FitResult::intercept)
      .def_readonly("r2", &FitResult::r2)
      .def_readonly("points", &FitResult::points);

  m.def(
      "fit_delta",
      [](const std::vector<std::pair<double, double>>& points, double k_lo, double k_hi) {
        return fit_delta(points, k_lo, k_hi);
      },
      py::arg("points"), py::arg("k_lo"), py::arg("k_hi"));
  m.def("replicate_seed", &replicate_seed, py::arg("master_seed"), py::arg("index"));

  py::class_<SimulationResult>(m, "SimulationResult")
      .def_readonly("replicates", &SimulationResult::replicates)
      .def_readonly("pooled", &SimulationResult::pooled)
      .def_readonly("succeeded", &SimulationResult::succeeded)
      .def_readonly("failed", &SimulationResult::failed);

  m.def("simulate", &simulate, py::arg("config"), release_gil());

  py::class_<ReportRow>(m, "ReportRow")
      .def_readonly("k", &ReportRow::k)
      .def_readonly("n_vertices", &ReportRow::n_vertices)
      .def_readonly("tri_sum", &ReportRow::tri_sum)
      .def_readonly("cherry_sum", &ReportRow::cherry_sum)
      .def_readonly("cum_tri", &ReportRow::cum_tri)
      .def_readonly("cum_cherry", &ReportRow::cum_cherry)
      .def_readonly("c_hat", &ReportRow::c_hat)
      .def_readonly("c_se", &ReportRow::c_se)
      .def_readonly("C_hat", &ReportRow::C_hat)
      .def_readonly("C_se", &ReportRow::C_se)
      .def_readonly("c_pred", &ReportRow::c_pred)
      .def_readonly("C_pred", &ReportRow::C_pred)
      .def_readonly("C_pred_asymptotic", &ReportRow::C_pred_asymptotic)
      .def_readonly("c_gap", &ReportRow::c_gap)
      .def_readonly("C_gap", &ReportRow::C_gap);

  py::class_<ComparisonReport>(m, "ComparisonReport")
      .def_readonly("config_canonical", &ComparisonReport::config_canonical)
      .def_readonly("config_hash", &ComparisonReport::config_hash)
      .def_readonly("replicates_requested", &ComparisonReport::replicates_requested)
      .def_readonly("replicates_succeeded", &ComparisonReport::replicates_succeeded)
      .def_readonly("replicates_failed", &ComparisonReport::replicates_failed)
      .def_readonly("rows", &ComparisonReport::rows)
      .def_readonly("delta_fit", &ComparisonReport::delta_fit)
      .def_readonly("fit_window", &ComparisonReport::fit_window)
      .def_readonly("delta_fit_theory", &ComparisonReport::delta_fit_theory)
      .def_readonly("delta_theory", &ComparisonReport::delta_theory)
      .def_readonly("crossover_k", &ComparisonReport::crossover_k)
      .def_readonly("max_c_gap", &ComparisonReport::max_c_gap)
      .def_readonly("max_C_gap", &ComparisonReport::max_C_gap)
      .def_readonly("simulate_seconds", &ComparisonReport::simulate_seconds)
      .def_readonly("theory_seconds", &ComparisonReport::theory_seconds);

  m.def("run", &run, py::arg("config"), release_gil());
  m.def("write_report", &write_report, py::arg("report"), py::arg("dir"), release_gil());
}
