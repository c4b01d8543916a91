#include "ergraph/report.hpp"

#include <sstream>

#include "json.hpp"

namespace ergraph {

using nlohmann::json;

CheckSelection CheckSelection::parse(const std::string& which) {
    if (which == "all") return all();
    CheckSelection s;
    if (which == "stability") s.stability = true;
    else if (which == "lorentzian") s.lorentzian = true;
    else if (which == "necessary") s.necessary = true;
    else throw std::invalid_argument("unknown check '" + which + "' (expected stability|lorentzian|necessary|all)");
    return s;
}

namespace {

json params_json(const MarkovParams& p) {
    return json{{"T", p.temperature},
                {"beta_triangle", p.beta_triangle},
                {"beta_stars", p.beta_stars},
                {"truncation", p.truncation == StarTruncation::SubgraphMaxDegree ? "subgraph-maxdeg" : "full"}};
}

json graph_json(const std::string& source, const Graph& g) {
    return json{{"source", source}, {"n", g.n()}, {"m", g.m()}};
}

json skipped(const std::string& reason) {
    return json{{"status", "skipped"}, {"reason", reason}};
}

std::string status_label(CheckStatus s) { return to_string(s); }

// Tracks the verdict classes seen so the exit code can be derived.
struct Tally {
    int held = 0, refuted = 0, undetermined = 0;
    CheckExit exit() const {
        if (refuted > 0) return CheckExit::Refuted;
        if (undetermined > 0) return CheckExit::Undetermined;
        return CheckExit::AllHold;
    }
};

} // namespace

CheckSuiteResult run_check_suite(const ModelEcho& model, const CheckSelection& selection,
                                 const CheckOptions& options) {
    const Graph& g = *model.graph;
    const MarkovParams& params = *model.params;
    Tally tally;
    json verdicts;
    std::ostringstream text;

    const bool enumerable = g.m() <= options.max_edges;
    std::optional<Distribution> dist;
    if (enumerable && (selection.stability || selection.lorentzian))
        dist = markov_distribution(g, params, options.max_edges);

    // --- negative lattice condition + Wagner falsifier + closed form -------
    if (selection.stability) {
        if (!enumerable) {
            verdicts["nlc"] = skipped("graph exceeds the enumeration cap");
            verdicts["wagner_falsifier"] = skipped("graph exceeds the enumeration cap");
            ++tally.undetermined;
            text << "nlc: skipped (enumeration cap)\n";
            text << "wagner_falsifier: skipped (enumeration cap)\n";
        } else {
            NlcResult nlc = negative_lattice_check(*dist, options.max_edges);
            json nlc_json{{"status", nlc.pass ? "pass" : "fail"}, {"pairs_checked", nlc.pairs_checked}};
            if (!nlc.pass) {
                nlc_json["witness"] = json{{"s", nlc.witness->s},
                                           {"t", nlc.witness->t},
                                           {"log_lhs", nlc.witness->log_lhs},
                                           {"log_rhs", nlc.witness->log_rhs}};
                ++tally.refuted;
            } else {
                ++tally.held;
            }
            verdicts["nlc"] = nlc_json;
            text << "nlc: " << (nlc.pass ? "pass" : "fail") << "\n";

            MultiAffinePoly gen = generating_polynomial(*dist, true);
            if (dist->product_form) {
                verdicts["wagner_falsifier"] = json{{"status", "certified-stable"}, {"certificate", "product-form"}};
                ++tally.held;
                text << "wagner_falsifier: certified-stable (product-form)\n";
            } else {
                FalsifyOptions fo;
                fo.budget = options.budget;
                fo.seed = options.seed;
                fo.threads = options.threads;
                StabilityVerdict sv = falsify_stability(gen, fo);
                json wj{{"evaluations", sv.evaluations}};
                if (sv.outcome == StabilityOutcome::Violation) {
                    wj["status"] = "violation";
                    wj["witness"] = json{{"point", sv.witness->point},
                                         {"i", sv.witness->i},
                                         {"j", sv.witness->j},
                                         {"gap", sv.witness->gap},
                                         {"scale", sv.witness->scale}};
                    ++tally.refuted;
                    text << "wagner_falsifier: violation at pair (" << sv.witness->i << "," << sv.witness->j
                         << "), gap " << sv.witness->gap << "\n";
                } else {
                    wj["status"] = "no-violation-found";
                    ++tally.undetermined;
                    text << "wagner_falsifier: no-violation-found (budget " << options.budget << ")\n";
                }
                verdicts["wagner_falsifier"] = wj;
            }
        }

        if (g.n() == 3 && g.m() == 3 && params.star_order() <= 2) {
            SrVerdict sr = sr_verdict_cubic(g, params);
            verdicts["sr_closed_form"] = json{{"status", sr.strongly_rayleigh ? "sr" : "not-sr"},
                                              {"reason", sr.reason}};
            if (sr.strongly_rayleigh) ++tally.held; else ++tally.refuted;
            text << "sr_closed_form: " << (sr.strongly_rayleigh ? "sr" : "not-sr") << " (" << sr.reason << ")\n";
        } else {
            verdicts["sr_closed_form"] = skipped("closed form applies to K_3 models with star order <= 2 only");
            text << "sr_closed_form: skipped (not a K_3 model)\n";
        }
    } else {
        verdicts["nlc"] = skipped("not requested");
        verdicts["wagner_falsifier"] = skipped("not requested");
        verdicts["sr_closed_form"] = skipped("not requested");
    }

    // --- Lorentzian --------------------------------------------------------
    if (selection.lorentzian) {
        if (!enumerable) {
            verdicts["lorentzian"] = skipped("graph exceeds the enumeration cap");
            ++tally.undetermined;
            text << "lorentzian: skipped (enumeration cap)\n";
        } else {
            LorentzVerdict lv = is_lorentzian_distribution(*dist, options.tol, options.max_edges);
            json lj{{"status", lv.lorentzian() ? "lorentzian" : "not-lorentzian"},
                    {"quadratics_checked", lv.spectra.size()}};
            json spectra = json::array();
            for (const auto& rec : lv.spectra)
                spectra.push_back(json{{"derivative", rec.derivative_counts}, {"eigenvalues", rec.eigenvalues}});
            lj["spectra"] = spectra;
            if (!lv.lorentzian()) {
                lj["failure"] = lv.failure->describe();
                ++tally.refuted;
            } else {
                ++tally.held;
            }
            verdicts["lorentzian"] = lj;
            text << "lorentzian: " << (lv.lorentzian() ? "lorentzian" : "not-lorentzian");
            if (!lv.lorentzian()) text << " (" << lv.failure->describe() << ")";
            text << "\n";
        }
    } else {
        verdicts["lorentzian"] = skipped("not requested");
    }

    // --- necessary conditions ----------------------------------------------
    if (selection.necessary) {
        NecessaryReport nr = check_sr_necessary(params, g);
        verdicts["necessary_conditions"] =
            json{{"triangle_two_star", status_label(nr.triangle_two_star)},
                 {"triangle_two_star_note", nr.triangle_two_star_note},
                 {"three_star", status_label(nr.three_star)},
                 {"three_star_note", nr.three_star_note},
                 {"verdict", nr.refuted() ? "not-sr" : "no-refutation"}};
        if (nr.refuted()) ++tally.refuted; else ++tally.held;
        text << "necessary_conditions: triangle_two_star=" << status_label(nr.triangle_two_star)
             << ", three_star=" << status_label(nr.three_star)
             << " -> " << (nr.refuted() ? "not-sr" : "no-refutation") << "\n";
    } else {
        verdicts["necessary_conditions"] = skipped("not requested");
    }

    json report{{"tool", json{{"name", kToolName}, {"version", kToolVersion}}},
                {"model", json{{"graph", graph_json(model.graph_source, g)},
                               {"params", params_json(params)},
                               {"seed", options.seed},
                               {"budget", options.budget},
                               {"tol", options.tol},
                               {"max_edges", options.max_edges}}},
                {"verdicts", verdicts}};

    CheckSuiteResult result;
    result.report_json = report.dump(2);
    result.report_text = text.str();
    result.exit = tally.exit();
    return result;
}

CheckSuiteResult fit_report(const ModelEcho& model, const FitResult& fit) {
    // After fitting, the necessary conditions run on the estimate; the model
    // host for the fit is the complete graph on the observed vertices.
    Graph host = Graph::complete(model.graph->n());
    NecessaryReport nr = check_sr_necessary(fit.params, host);

    json fj{{"params", params_json(fit.params)},
            {"observed_stats", fit.observed_stats},
            {"converged", fit.converged},
            {"final_gap", fit.final_gap},
            {"iterations", fit.trajectory.size()},
            {"degeneracy_warning", fit.degeneracy_warning}};
    if (fit.degeneracy_warning) fj["degeneracy_note"] = fit.degeneracy_note;

    json verdicts{{"nlc", skipped("not requested by the fit pipeline")},
                  {"wagner_falsifier", skipped("not requested by the fit pipeline")},
                  {"sr_closed_form", skipped("not requested by the fit pipeline")},
                  {"lorentzian", skipped("not requested by the fit pipeline")},
                  {"necessary_conditions",
                   json{{"triangle_two_star", status_label(nr.triangle_two_star)},
                        {"triangle_two_star_note", nr.triangle_two_star_note},
                        {"three_star", status_label(nr.three_star)},
                        {"three_star_note", nr.three_star_note},
                        {"verdict", nr.refuted() ? "not-sr" : "no-refutation"}}}};

    json report{{"tool", json{{"name", kToolName}, {"version", kToolVersion}}},
                {"model", json{{"graph", graph_json(model.graph_source, *model.graph)},
                               {"params", params_json(fit.params)}}},
                {"fit", fj},
                {"verdicts", verdicts}};

    std::ostringstream text;
    text << "fit: " << (fit.converged ? "converged" : "iteration cap reached")
         << ", final moment gap " << fit.final_gap << ", iterations " << fit.trajectory.size() << "\n";
    if (fit.degeneracy_warning) text << "fit: degeneracy warning - " << fit.degeneracy_note << "\n";
    text << "necessary_conditions: triangle_two_star=" << status_label(nr.triangle_two_star)
         << ", three_star=" << status_label(nr.three_star)
         << " -> " << (nr.refuted() ? "not-sr" : "no-refutation") << "\n";

    CheckSuiteResult result;
    result.report_json = report.dump(2);
    result.report_text = text.str();
    result.exit = nr.refuted() ? CheckExit::Refuted : CheckExit::AllHold;
    return result;
}

std::string fit_trajectory_csv(const FitResult& fit) {
    std::ostringstream out;
    out << "iteration";
    std::size_t dim = fit.trajectory.empty() ? 0 : fit.trajectory.front().theta.size();
    for (std::size_t d = 0; d < dim; ++d) out << ",theta" << d;
    out << ",gap_norm\n";
    for (const auto& t : fit.trajectory) {
        out << t.iteration;
        for (double v : t.theta) out << "," << v;
        out << "," << t.gap_norm << "\n";
    }
    return out.str();
}

} // namespace ergraph
