#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ergraph/datasets.hpp"
#include "ergraph/report.hpp"

namespace py = pybind11;
using namespace ergraph;

namespace {

Motif motif_from_string(const std::string& name, int k) {
    if (name == "triangle") return Motif::triangle();
    if (name == "kstar") return Motif::kstar(k);
    throw std::invalid_argument("motif must be 'triangle' or 'kstar'");
}

std::string check_json(const Graph& g, const MarkovParams& params, const std::string& which,
                       std::uint64_t seed, long long budget, double tol, int threads, int max_edges) {
    CheckOptions options;
    options.seed = seed;
    options.budget = budget;
    options.tol = tol;
    options.threads = threads;
    options.max_edges = max_edges;
    ModelEcho echo{"python", &g, &params};
    return run_check_suite(echo, CheckSelection::parse(which), options).report_json;
}

} // namespace

PYBIND11_MODULE(_ergraph, m) {
    m.doc() = "Markov random graph distributions, generating polynomials, and "
              "negative-dependence geometry (strongly Rayleigh and Lorentzian tests)";
    m.attr("__version__") = kToolVersion;

    py::class_<Graph>(m, "Graph")
        .def(py::init<int>(), py::arg("n"))
        .def_property_readonly("n", &Graph::n)
        .def_property_readonly("m", &Graph::m)
        .def("add_edge", &Graph::add_edge)
        .def("has_edge", &Graph::has_edge)
        .def("edges", [](const Graph& g) { return g.edges(); })
        .def("label", &Graph::label)
        .def("degree", &Graph::degree)
        .def("max_degree", &Graph::max_degree)
        .def("contains_triangle", &Graph::contains_triangle)
        .def("contains_three_star", &Graph::contains_three_star)
        .def_static("complete", &Graph::complete, py::arg("n"))
        .def("__repr__", [](const Graph& g) {
            return "<Graph n=" + std::to_string(g.n()) + " m=" + std::to_string(g.m()) + ">";
        });

    py::class_<EdgeSubset>(m, "EdgeSubset")
        .def(py::init<int>(), py::arg("nbits"))
        .def_static("from_index", &EdgeSubset::from_index, py::arg("nbits"), py::arg("index"))
        .def_static("full", &EdgeSubset::full, py::arg("nbits"))
        .def("test", &EdgeSubset::test)
        .def("set", &EdgeSubset::set, py::arg("i"), py::arg("value") = true)
        .def("count", &EdgeSubset::count)
        .def("to_index", &EdgeSubset::to_index)
        .def_property_readonly("size", &EdgeSubset::size);

    py::class_<SubgraphStats>(m, "SubgraphStats")
        .def_readonly("degrees", &SubgraphStats::degrees)
        .def_readonly("triangles", &SubgraphStats::triangles)
        .def_readonly("edge_count", &SubgraphStats::edge_count);

    m.def("spanning_stats", py::overload_cast<const Graph&, const EdgeSubset&>(&spanning_stats));
    m.def("hom_count_kstar", &hom_count_kstar);
    m.def("hom_count_triangle", &hom_count_triangle);
    m.def(
        "hom_density",
        [](const Graph& g, const EdgeSubset& s, const std::string& motif, int k) {
            Rational r = hom_density(g, s, motif_from_string(motif, k));
            return py::make_tuple(r.num(), r.den());
        },
        py::arg("g"), py::arg("s"), py::arg("motif"), py::arg("k") = 0,
        "Exact homomorphism density as a (numerator, denominator) pair");
    m.def(
        "edge_toggle_delta",
        [](const Graph& g, const EdgeSubset& s, int e, int max_star_order) {
            std::vector<std::pair<long long, long long>> out;
            for (const Rational& r : edge_toggle_delta(g, s, e, max_star_order))
                out.emplace_back(r.num(), r.den());
            return out;
        },
        py::arg("g"), py::arg("s"), py::arg("e"), py::arg("max_star_order"));

    py::enum_<StarTruncation>(m, "StarTruncation")
        .value("SubgraphMaxDegree", StarTruncation::SubgraphMaxDegree)
        .value("FullOrder", StarTruncation::FullOrder);

    py::class_<MarkovParams>(m, "MarkovParams")
        .def(py::init([](double T, std::vector<double> beta_stars, double beta_triangle,
                         StarTruncation truncation) {
                 MarkovParams p;
                 p.temperature = T;
                 p.beta_stars = std::move(beta_stars);
                 p.beta_triangle = beta_triangle;
                 p.truncation = truncation;
                 return p;
             }),
             py::arg("T") = 1.0, py::arg("beta_stars") = std::vector<double>{0.0},
             py::arg("beta_triangle") = 0.0,
             py::arg("truncation") = StarTruncation::SubgraphMaxDegree)
        .def_readwrite("temperature", &MarkovParams::temperature)
        .def_readwrite("beta_stars", &MarkovParams::beta_stars)
        .def_readwrite("beta_triangle", &MarkovParams::beta_triangle)
        .def_readwrite("truncation", &MarkovParams::truncation)
        .def_property_readonly("star_order", &MarkovParams::star_order);

    py::class_<BernoulliParams>(m, "BernoulliParams")
        .def(py::init([](std::vector<double> p) { return BernoulliParams{std::move(p)}; }), py::arg("p"))
        .def_readwrite("p", &BernoulliParams::p);

    py::class_<Distribution>(m, "Distribution")
        .def_property_readonly("m", &Distribution::edge_count)
        .def_property_readonly("log_z", [](const Distribution& d) { return d.log_z; })
        .def_property_readonly("positive", [](const Distribution& d) { return d.positive; })
        .def_property_readonly("product_form", [](const Distribution& d) { return d.product_form; })
        .def("log_weight", &Distribution::log_weight)
        .def("weight", &Distribution::weight)
        .def("prob", &Distribution::prob)
        .def("probs", [](const Distribution& d) {
            std::vector<double> out(d.subset_count());
            for (std::uint64_t mask = 0; mask < d.subset_count(); ++mask) out[mask] = d.prob(mask);
            return out;
        });

    m.def("energy_exponent",
          py::overload_cast<const Graph&, const EdgeSubset&, const MarkovParams&>(&energy_exponent));
    m.def("markov_distribution", &markov_distribution, py::arg("g"), py::arg("params"),
          py::arg("max_edges") = kDefaultEnumerationCap);
    m.def("bernoulli_distribution", &bernoulli_distribution);

    py::class_<MultiAffinePoly>(m, "MultiAffinePoly")
        .def_readonly("nvars", &MultiAffinePoly::nvars)
        .def_readonly("coeff", &MultiAffinePoly::coeff);

    py::class_<HomogPoly>(m, "HomogPoly")
        .def_readonly("nvars", &HomogPoly::nvars)
        .def_readonly("degree", &HomogPoly::degree)
        .def_property_readonly("terms", [](const HomogPoly& h) {
            py::dict out;
            for (const auto& [exp, c] : h.terms) out[py::tuple(py::cast(exp))] = c;
            return out;
        });

    m.def("generating_polynomial", &generating_polynomial, py::arg("dist"), py::arg("normalized") = true);
    m.def("evaluate", [](const MultiAffinePoly& p, const std::vector<double>& x) { return evaluate(p, x); });
    m.def("evaluate_homog", [](const HomogPoly& h, const std::vector<double>& x) { return evaluate(h, x); });
    m.def("partial", &partial);
    m.def("homogenize", &homogenize);
    m.def("homog_partial", &homog_partial);

    m.def("wagner_gap", [](const MultiAffinePoly& g, const std::vector<double>& x, int i, int j) {
        return wagner_gap(g, x, i, j);
    });

    py::enum_<StabilityOutcome>(m, "StabilityOutcome")
        .value("Violation", StabilityOutcome::Violation)
        .value("NoViolationFound", StabilityOutcome::NoViolationFound)
        .value("CertifiedStable", StabilityOutcome::CertifiedStable);

    py::class_<WagnerWitness>(m, "WagnerWitness")
        .def_readonly("point", &WagnerWitness::point)
        .def_readonly("i", &WagnerWitness::i)
        .def_readonly("j", &WagnerWitness::j)
        .def_readonly("gap", &WagnerWitness::gap)
        .def_readonly("scale", &WagnerWitness::scale);

    py::class_<StabilityVerdict>(m, "StabilityVerdict")
        .def_readonly("outcome", &StabilityVerdict::outcome)
        .def_readonly("witness", &StabilityVerdict::witness)
        .def_readonly("evaluations", &StabilityVerdict::evaluations)
        .def_readonly("certificate", &StabilityVerdict::certificate);

    m.def(
        "falsify_stability",
        [](const MultiAffinePoly& g, long long budget, std::uint64_t seed, int threads, double tol) {
            FalsifyOptions options;
            options.budget = budget;
            options.seed = seed;
            options.threads = threads;
            options.tol = tol;
            return falsify_stability(g, options);
        },
        py::arg("g"), py::arg("budget") = 100000, py::arg("seed") = 0, py::arg("threads") = 1,
        py::arg("tol") = 1e-9);

    py::class_<NlcResult>(m, "NlcResult")
        .def_readonly("pass_", &NlcResult::pass)
        .def_readonly("pairs_checked", &NlcResult::pairs_checked)
        .def_property_readonly("witness", [](const NlcResult& r) -> py::object {
            if (!r.witness) return py::none();
            return py::make_tuple(r.witness->s, r.witness->t);
        });

    m.def("negative_lattice_check", &negative_lattice_check, py::arg("dist"),
          py::arg("max_edges") = kDefaultEnumerationCap);
    m.def("sr_cubic_beta2", &sr_cubic_beta2, py::arg("temperature"), py::arg("beta_triangle"));

    py::class_<SrVerdict>(m, "SrVerdict")
        .def_readonly("strongly_rayleigh", &SrVerdict::strongly_rayleigh)
        .def_readonly("reason", &SrVerdict::reason);

    m.def(
        "sr_verdict_cubic",
        [](const Graph& host, const MarkovParams& params) { return sr_verdict_cubic(host, params); },
        py::arg("host"), py::arg("params"));

    py::enum_<CheckStatus>(m, "CheckStatus")
        .value("Pass", CheckStatus::Pass)
        .value("Fail", CheckStatus::Fail)
        .value("NotApplicable", CheckStatus::NotApplicable);

    py::class_<NecessaryReport>(m, "NecessaryReport")
        .def_readonly("triangle_two_star", &NecessaryReport::triangle_two_star)
        .def_readonly("three_star", &NecessaryReport::three_star)
        .def_readonly("triangle_two_star_note", &NecessaryReport::triangle_two_star_note)
        .def_readonly("three_star_note", &NecessaryReport::three_star_note)
        .def("refuted", &NecessaryReport::refuted);

    m.def("check_sr_necessary", &check_sr_necessary, py::arg("params"), py::arg("g"));

    py::enum_<LorentzOutcome>(m, "LorentzOutcome")
        .value("Lorentzian", LorentzOutcome::Lorentzian)
        .value("NotLorentzian", LorentzOutcome::NotLorentzian);

    py::class_<Signature>(m, "Signature")
        .def_readonly("positive", &Signature::positive)
        .def_readonly("negative", &Signature::negative)
        .def_readonly("zero", &Signature::zero)
        .def_readonly("eigenvalues", &Signature::eigenvalues);

    py::class_<LorentzVerdict>(m, "LorentzVerdict")
        .def_property_readonly("lorentzian", [](const LorentzVerdict& v) { return v.lorentzian(); })
        .def_property_readonly("failure", [](const LorentzVerdict& v) -> py::object {
            if (!v.failure) return py::none();
            return py::cast(v.failure->describe());
        })
        .def_property_readonly("spectra", [](const LorentzVerdict& v) {
            std::vector<std::pair<std::vector<int>, std::vector<double>>> out;
            for (const auto& rec : v.spectra) out.emplace_back(rec.derivative_counts, rec.eigenvalues);
            return out;
        });

    m.def("quadratic_signature", &quadratic_signature, py::arg("q"), py::arg("tol") = 1e-9);
    m.def(
        "is_m_convex",
        [](const std::vector<std::vector<int>>& points) {
            SupportSet j;
            if (!points.empty()) {
                j.nvars = static_cast<int>(points.front().size());
                for (int v : points.front()) j.degree += v;
            }
            j.points = points;
            std::sort(j.points.begin(), j.points.end());
            return is_m_convex(j);
        },
        py::arg("points"));
    m.def("is_lorentzian", &is_lorentzian, py::arg("h"), py::arg("tol") = 1e-9);
    m.def("is_lorentzian_distribution", &is_lorentzian_distribution, py::arg("dist"),
          py::arg("tol") = 1e-9, py::arg("max_edges") = kDefaultEnumerationCap);
    m.def(
        "lorentzian_verdict_cubic",
        [](const Graph& host, const MarkovParams& params) {
            return lorentzian_verdict_cubic(host, params);
        },
        py::arg("host"), py::arg("params"));

    py::class_<ChainConfig>(m, "ChainConfig")
        .def(py::init([](long long sweeps, long long burnin, long long thin, std::uint64_t seed) {
                 ChainConfig c;
                 c.sweeps = sweeps;
                 c.burnin = burnin;
                 c.thin = thin;
                 c.seed = seed;
                 return c;
             }),
             py::arg("sweeps") = 10000, py::arg("burnin") = 1000, py::arg("thin") = 1, py::arg("seed") = 1)
        .def_readwrite("sweeps", &ChainConfig::sweeps)
        .def_readwrite("burnin", &ChainConfig::burnin)
        .def_readwrite("thin", &ChainConfig::thin)
        .def_readwrite("seed", &ChainConfig::seed);

    py::class_<SampleResult>(m, "SampleResult")
        .def_readonly("mean", &SampleResult::mean)
        .def_readonly("stderr", &SampleResult::stderr_batch)
        .def_readonly("samples", &SampleResult::samples)
        .def_readonly("boundary_fraction", &SampleResult::boundary_fraction);

    m.def("stat_vector", &stat_vector, py::arg("g"), py::arg("s"), py::arg("star_order"));
    m.def("sample_suffstats", &sample_suffstats, py::arg("g"), py::arg("params"), py::arg("cfg"));
    m.def("exact_expected_stats", &exact_expected_stats, py::arg("g"), py::arg("params"),
          py::arg("max_edges") = kDefaultEnumerationCap);

    py::class_<FitOptions>(m, "FitOptions")
        .def(py::init([](double a0, double k0, int max_iterations, double tolerance) {
                 FitOptions o;
                 o.gain.a0 = a0;
                 o.gain.k0 = k0;
                 o.max_iterations = max_iterations;
                 o.tolerance = tolerance;
                 return o;
             }),
             py::arg("a0") = 0.1, py::arg("k0") = 10.0, py::arg("max_iterations") = 60,
             py::arg("tolerance") = 0.02);

    py::class_<FitResult>(m, "FitResult")
        .def_readonly("params", &FitResult::params)
        .def_readonly("observed_stats", &FitResult::observed_stats)
        .def_readonly("converged", &FitResult::converged)
        .def_readonly("final_gap", &FitResult::final_gap)
        .def_readonly("degeneracy_warning", &FitResult::degeneracy_warning)
        .def_property_readonly("iterations", [](const FitResult& r) { return r.trajectory.size(); });

    m.def("fit_stochastic_approximation", &fit_stochastic_approximation, py::arg("observed"),
          py::arg("star_order"), py::arg("include_triangle"), py::arg("init"), py::arg("options"),
          py::arg("cfg"));
    m.def("fit_to_stats", &fit_to_stats, py::arg("host"), py::arg("observed_stats"), py::arg("star_order"),
          py::arg("include_triangle"), py::arg("init"), py::arg("options"), py::arg("cfg"));

    py::class_<DatasetEntry>(m, "DatasetEntry")
        .def_readonly("id", &DatasetEntry::id)
        .def_readonly("description", &DatasetEntry::description)
        .def_readonly("expected_n", &DatasetEntry::expected_n)
        .def_readonly("source", &DatasetEntry::source);

    m.def("bundled_datasets", [] { return bundled_datasets(); });
    m.def("load_bundled", &load_bundled, py::arg("id"));
    m.def("load_edgelist", [](const std::string& path) {
        EdgeListResult r = load_edgelist(path);
        return py::make_tuple(r.graph, r.duplicates_collapsed);
    });
    m.def("parse_edgelist", [](const std::string& text, const std::string& origin) {
        EdgeListResult r = parse_edgelist(text, origin);
        return py::make_tuple(r.graph, r.duplicates_collapsed);
    });
    m.def("to_edgelist", &to_edgelist);
    m.def("to_dot", &to_dot);

    m.def("run_checks", &check_json, py::arg("g"), py::arg("params"), py::arg("which") = "all",
          py::arg("seed") = 0, py::arg("budget") = 100000, py::arg("tol") = 1e-9, py::arg("threads") = 1,
          py::arg("max_edges") = kDefaultEnumerationCap,
          "Run the verdict suite and return the JSON report");
}
