#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "ergraph/datasets.hpp"
#include "ergraph/report.hpp"

using namespace ergraph;
using nlohmann::json;

namespace {

constexpr int kExitUsage = 64;

struct GraphSource {
    std::string graph_spec;   // path or "complete:N"
    std::string dataset_id;

    void add_options(CLI::App* cmd) {
        auto* g = cmd->add_option("--graph", graph_spec, "Edge-list file, or complete:N for the complete graph");
        auto* d = cmd->add_option("--dataset", dataset_id, "Bundled dataset id (see `ergraph datasets list`)");
        g->excludes(d);
    }

    std::string label() const { return dataset_id.empty() ? graph_spec : dataset_id; }

    Graph load() const {
        if (!dataset_id.empty()) return load_bundled(dataset_id);
        if (graph_spec.empty()) throw CLI::ValidationError("--graph or --dataset is required");
        if (graph_spec.rfind("complete:", 0) == 0) {
            int n = std::stoi(graph_spec.substr(9));
            if (n < 2) throw CLI::ValidationError("complete:N needs N >= 2");
            return Graph::complete(n);
        }
        EdgeListResult r = load_edgelist(graph_spec);
        if (r.duplicates_collapsed > 0)
            std::cerr << "warning: collapsed " << r.duplicates_collapsed << " duplicate edge(s) in "
                      << graph_spec << "\n";
        return r.graph;
    }
};

long long line_of_byte(const std::string& text, std::size_t byte) {
    long long line = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i)
        if (text[i] == '\n') ++line;
    return line;
}

MarkovParams load_params(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open params file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();

    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(path + ":" + std::to_string(line_of_byte(text, e.byte)) +
                                 ": malformed JSON: " + e.what());
    }
    auto need = [&](const char* field) -> const json& {
        if (!doc.contains(field))
            throw std::runtime_error(path + ": missing required field '" + field + "'");
        return doc.at(field);
    };
    MarkovParams p;
    const json& t = need("T");
    if (!t.is_number() || !(t.get<double>() > 0.0))
        throw std::runtime_error(path + ": field 'T' must be a number > 0");
    p.temperature = t.get<double>();
    const json& bt = need("beta_triangle");
    if (!bt.is_number()) throw std::runtime_error(path + ": field 'beta_triangle' must be a number");
    p.beta_triangle = bt.get<double>();
    const json& bs = need("beta_stars");
    if (!bs.is_array() || bs.empty())
        throw std::runtime_error(path + ": field 'beta_stars' must be a nonempty array of numbers");
    for (std::size_t k = 0; k < bs.size(); ++k) {
        if (!bs[k].is_number())
            throw std::runtime_error(path + ": beta_stars[" + std::to_string(k) + "] must be a number");
        p.beta_stars.push_back(bs[k].get<double>());
    }
    if (doc.contains("truncation")) {
        std::string mode = doc.at("truncation").get<std::string>();
        if (mode == "subgraph-maxdeg") p.truncation = StarTruncation::SubgraphMaxDegree;
        else if (mode == "full") p.truncation = StarTruncation::FullOrder;
        else throw std::runtime_error(path + ": field 'truncation' must be 'subgraph-maxdeg' or 'full'");
    }
    return p;
}

void write_output(const std::string& out_path, const std::string& payload) {
    if (out_path.empty()) {
        std::cout << payload;
        if (!payload.empty() && payload.back() != '\n') std::cout << "\n";
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write to '" + out_path + "'");
    out << payload;
}

void print_memory_estimate(int m) {
    double mib = std::ldexp(8.0, m) / (1024.0 * 1024.0);
    std::cerr << "enumeration: 2^" << m << " subsets, ~" << mib << " MiB\n";
}

int cmd_enumerate(const GraphSource& src, const std::string& params_path, const std::string& format,
                  int max_edges, const std::string& out_path) {
    Graph g = src.load();
    MarkovParams params = load_params(params_path);
    params.validate(g);
    print_memory_estimate(g.m());
    Distribution dist = markov_distribution(g, params, max_edges);

    if (format == "json") {
        json rows = json::array();
        for (std::uint64_t mask = 0; mask < dist.subset_count(); ++mask) {
            json edges = json::array();
            for (int e = 0; e < g.m(); ++e)
                if ((mask >> e) & 1u) edges.push_back(e);
            rows.push_back(json{{"mask", mask},
                                {"edges", edges},
                                {"exponent", dist.log_weight(mask)},
                                {"probability", dist.prob(mask)}});
        }
        json doc{{"graph", json{{"source", src.label()}, {"n", g.n()}, {"m", g.m()}}},
                 {"log_z", dist.log_z},
                 {"rows", rows}};
        write_output(out_path, doc.dump(2));
    } else {
        std::ostringstream table;
        table << "subset\texponent\tprobability\n";
        for (std::uint64_t mask = 0; mask < dist.subset_count(); ++mask) {
            table << "{";
            bool first = true;
            for (int e = 0; e < g.m(); ++e)
                if ((mask >> e) & 1u) {
                    table << (first ? "" : ",") << e;
                    first = false;
                }
            table << "}\t" << dist.log_weight(mask) << "\t" << dist.prob(mask) << "\n";
        }
        write_output(out_path, table.str());
    }
    return 0;
}

std::string poly_text(const json& doc) {
    std::ostringstream out;
    const auto& vars = doc.at("vars");
    bool first = true;
    for (const auto& term : doc.at("terms")) {
        double c = term.at("coeff").get<double>();
        out << (first ? "" : " + ") << c;
        first = false;
        const auto& exp = term.at("exp");
        for (std::size_t v = 0; v < exp.size(); ++v) {
            int e = exp[v].get<int>();
            if (e == 0) continue;
            out << "*" << vars[v].get<std::string>();
            if (e > 1) out << "^" << e;
        }
    }
    out << "\n";
    return out.str();
}

int cmd_poly(const GraphSource& src, const std::string& params_path, bool homogenize_flag,
             bool unnormalized, const std::string& format, int max_edges, const std::string& out_path) {
    Graph g = src.load();
    MarkovParams params = load_params(params_path);
    params.validate(g);
    Distribution dist = markov_distribution(g, params, max_edges);
    MultiAffinePoly poly = generating_polynomial(dist, !unnormalized);
    std::string payload = homogenize_flag
        ? poly_to_json(homogenize(poly), edge_variable_names(g, true))
        : poly_to_json(poly, edge_variable_names(g, false));
    if (format == "text") payload = poly_text(json::parse(payload));
    write_output(out_path, payload);
    return 0;
}

int cmd_check(const GraphSource& src, const std::string& params_path, const std::string& which,
              const CheckOptions& options, const std::string& format, const std::string& out_path,
              bool timing) {
    Graph g = src.load();
    MarkovParams params = load_params(params_path);
    params.validate(g);
    CheckSelection selection = CheckSelection::parse(which);

    auto t0 = std::chrono::steady_clock::now();
    ModelEcho echo{src.label(), &g, &params};
    CheckSuiteResult result = run_check_suite(echo, selection, options);
    auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

    if (format == "json") {
        std::string payload = result.report_json;
        if (timing) {
            json doc = json::parse(payload);
            doc["timing_ms"] = elapsed;
            payload = doc.dump(2);
        }
        write_output(out_path, payload);
    } else {
        write_output(out_path, result.report_text);
        std::cerr << "elapsed: " << elapsed << " ms\n";
    }
    return static_cast<int>(result.exit);
}

int cmd_sample(const GraphSource& src, const std::string& params_path, const ChainConfig& cfg,
               const std::string& format, int max_edges, const std::string& out_path) {
    Graph g = src.load();
    MarkovParams params = load_params(params_path);
    params.validate(g);
    SampleResult r = sample_suffstats(g, params, cfg);

    bool enumerable = g.m() <= max_edges;
    std::vector<double> exact;
    if (enumerable) exact = exact_expected_stats(g, params, max_edges);

    auto stat_name = [&](std::size_t d) {
        return d + 1 < r.mean.size() ? "t(S_" + std::to_string(d + 1) + ")" : std::string("t(triangle)");
    };

    if (format == "json") {
        json stats = json::array();
        for (std::size_t d = 0; d < r.mean.size(); ++d) {
            json row{{"stat", stat_name(d)}, {"mean", r.mean[d]}, {"stderr", r.stderr_batch[d]}};
            if (enumerable) row["exact"] = exact[d];
            stats.push_back(row);
        }
        json doc{{"graph", json{{"source", src.label()}, {"n", g.n()}, {"m", g.m()}}},
                 {"seed", cfg.seed},
                 {"sweeps", cfg.sweeps},
                 {"burnin", cfg.burnin},
                 {"thin", cfg.thin},
                 {"samples", r.samples},
                 {"boundary_fraction", r.boundary_fraction},
                 {"exact_comparison", enumerable ? "available" : "unavailable (enumeration cap)"},
                 {"stats", stats}};
        write_output(out_path, doc.dump(2));
    } else {
        std::ostringstream out;
        out << "stat\tmean\tstderr\texact\n";
        for (std::size_t d = 0; d < r.mean.size(); ++d) {
            out << stat_name(d) << "\t" << r.mean[d] << "\t" << r.stderr_batch[d] << "\t";
            if (enumerable) out << exact[d];
            else out << "n/a";
            out << "\n";
        }
        out << "samples\t" << r.samples << "\nboundary_fraction\t" << r.boundary_fraction << "\n";
        write_output(out_path, out.str());
    }
    return 0;
}

int cmd_fit(const GraphSource& src, int stars, bool include_triangle, const FitOptions& options,
            const ChainConfig& cfg, const std::string& format, const std::string& out_path,
            const std::string& traj_path) {
    Graph g = src.load();
    MarkovParams init;
    init.beta_stars.assign(static_cast<std::size_t>(stars), 0.0);
    FitResult fit = fit_stochastic_approximation(g, stars, include_triangle, init, options, cfg);

    if (!traj_path.empty()) {
        std::ofstream traj(traj_path);
        if (!traj) throw std::runtime_error("cannot write trajectory to '" + traj_path + "'");
        traj << fit_trajectory_csv(fit);
    }
    if (fit.degeneracy_warning)
        std::cerr << "warning: " << fit.degeneracy_note << "\n";

    ModelEcho echo{src.label(), &g, &fit.params};
    CheckSuiteResult report = fit_report(echo, fit);
    write_output(out_path, format == "json" ? report.report_json : report.report_text);
    return static_cast<int>(report.exit);
}

int cmd_datasets_list(const std::string& format) {
    if (format == "json") {
        json arr = json::array();
        for (const auto& e : bundled_datasets())
            arr.push_back(json{{"id", e.id}, {"description", e.description}, {"n", e.expected_n}, {"source", e.source}});
        std::cout << arr.dump(2) << "\n";
    } else {
        for (const auto& e : bundled_datasets())
            std::cout << e.id << "\tn=" << e.expected_n << "\t" << e.description << "\n";
    }
    return 0;
}

int cmd_export_dot(const GraphSource& src, const std::string& out_path) {
    write_output(out_path, to_dot(src.load()));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Markov random graph distributions, generating polynomials, and negative-dependence geometry"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);

    std::string format = "text";
    std::string out_path;
    int max_edges = kDefaultEnumerationCap;
    int threads = 1;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--format", format, "Output format: text|json")
            ->check(CLI::IsMember({"text", "json"}));
        cmd->add_option("--out", out_path, "Write the primary output to this file");
        cmd->add_option("--max-edges", max_edges, "Enumeration cap on the edge count (default 24)");
    };

    GraphSource enum_src;
    std::string enum_params;
    auto* enumerate = app.add_subcommand("enumerate", "Print the subset probability table of a Markov model");
    enum_src.add_options(enumerate);
    enumerate->add_option("--params", enum_params, "Markov parameter JSON file")->required();
    add_common(enumerate);

    GraphSource poly_src;
    std::string poly_params;
    bool poly_homog = false, poly_unnorm = false;
    auto* poly = app.add_subcommand("poly", "Emit the generating polynomial as JSON");
    poly_src.add_options(poly);
    poly->add_option("--params", poly_params, "Markov parameter JSON file")->required();
    poly->add_flag("--homogenize", poly_homog, "Emit the homogenization (variable 0 is z)");
    poly->add_flag("--unnormalized", poly_unnorm, "Use unnormalized weights as coefficients");
    add_common(poly);

    GraphSource check_src;
    std::string check_params, which = "all";
    CheckOptions check_options;
    bool timing = false;
    auto* check = app.add_subcommand("check", "Run negative-dependence verdicts (exit 0 hold / 1 refuted / 2 undetermined)");
    check_src.add_options(check);
    check->add_option("--params", check_params, "Markov parameter JSON file")->required();
    check->add_option("--which", which, "stability|lorentzian|necessary|all")
        ->check(CLI::IsMember({"stability", "lorentzian", "necessary", "all"}));
    check->add_option("--seed", check_options.seed, "Random seed for the falsifier");
    check->add_option("--budget", check_options.budget, "Falsifier evaluation budget");
    check->add_option("--tol", check_options.tol, "Eigenvalue / violation tolerance");
    check->add_option("--threads", threads, "Worker threads for the falsifier");
    check->add_flag("--timing", timing, "Embed wall-clock timing in the JSON report (breaks byte-reproducibility)");
    add_common(check);

    GraphSource sample_src;
    std::string sample_params;
    ChainConfig sample_cfg;
    auto* sample = app.add_subcommand("sample", "Glauber-dynamics estimates of the sufficient statistics");
    sample_src.add_options(sample);
    sample->add_option("--params", sample_params, "Markov parameter JSON file")->required();
    sample->add_option("--sweeps", sample_cfg.sweeps, "Recorded sweeps (one sweep = m proposals)");
    sample->add_option("--burnin", sample_cfg.burnin, "Burn-in sweeps");
    sample->add_option("--thin", sample_cfg.thin, "Record every thin-th sweep");
    sample->add_option("--seed", sample_cfg.seed, "Chain seed");
    add_common(sample);

    GraphSource fit_src;
    int fit_stars = 2;
    bool fit_triangle = false;
    FitOptions fit_options;
    ChainConfig fit_cfg;
    fit_cfg.sweeps = 2000;
    fit_cfg.burnin = 500;
    std::string traj_path;
    auto* fit = app.add_subcommand("fit", "MCMC maximum likelihood fit, then the necessary-condition verdict");
    fit_src.add_options(fit);
    fit->add_option("--stars", fit_stars, "Star order cap K (default 2)");
    fit->add_flag("--triangle,!--no-triangle", fit_triangle, "Include the triangle term (default off)");
    fit->add_option("--iters", fit_options.max_iterations, "Iteration cap");
    fit->add_option("--tol", fit_options.tolerance, "Moment-gap stopping tolerance");
    fit->add_option("--gain-a0", fit_options.gain.a0, "Gain schedule a0 (a_k = a0/(k+k0))");
    fit->add_option("--gain-k0", fit_options.gain.k0, "Gain schedule k0");
    fit->add_option("--sweeps", fit_cfg.sweeps, "Sweeps per iteration");
    fit->add_option("--burnin", fit_cfg.burnin, "Burn-in sweeps per iteration");
    fit->add_option("--thin", fit_cfg.thin, "Thinning per iteration");
    fit->add_option("--seed", fit_cfg.seed, "Chain seed");
    fit->add_option("--traj", traj_path, "Write the fit trajectory CSV here");
    add_common(fit);

    auto* datasets = app.add_subcommand("datasets", "Bundled dataset registry");
    auto* datasets_list = datasets->add_subcommand("list", "List the bundled datasets");
    datasets_list->add_option("--format", format, "Output format: text|json")
        ->check(CLI::IsMember({"text", "json"}));
    datasets->require_subcommand(1);

    GraphSource dot_src;
    auto* export_dot = app.add_subcommand("export-dot", "Write the graph in DOT format");
    dot_src.add_options(export_dot);
    export_dot->add_option("--out", out_path, "Write the DOT output to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return 0;   // --help / --version
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }

    try {
        check_options.threads = threads;
        check_options.max_edges = max_edges;
        if (*enumerate) return cmd_enumerate(enum_src, enum_params, format, max_edges, out_path);
        if (*poly) return cmd_poly(poly_src, poly_params, poly_homog, poly_unnorm, format, max_edges, out_path);
        if (*check) return cmd_check(check_src, check_params, which, check_options, format, out_path, timing);
        if (*sample) return cmd_sample(sample_src, sample_params, sample_cfg, format, max_edges, out_path);
        if (*fit) return cmd_fit(fit_src, fit_stars, fit_triangle, fit_options, fit_cfg, format, out_path, traj_path);
        if (*datasets_list) return cmd_datasets_list(format);
        if (*export_dot) return cmd_export_dot(dot_src, out_path);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
