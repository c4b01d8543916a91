#pragma once

#include <optional>
#include <string>

#include "ergraph/inference.hpp"
#include "ergraph/lorentzian.hpp"
#include "ergraph/stability.hpp"

namespace ergraph {

inline constexpr const char* kToolName = "ergraph";
inline constexpr const char* kToolVersion = "0.1.0";

struct CheckSelection {
    bool stability = false;
    bool lorentzian = false;
    bool necessary = false;

    static CheckSelection all() { return {true, true, true}; }
    static CheckSelection parse(const std::string& which);   // stability|lorentzian|necessary|all
};

struct CheckOptions {
    std::uint64_t seed = 0;
    long long budget = 100000;
    double tol = 1e-9;
    int threads = 1;
    int max_edges = kDefaultEnumerationCap;
};

// 0 = every requested property holds, 1 = some property refuted,
// 2 = nothing refuted but at least one verdict is undetermined.
enum class CheckExit { AllHold = 0, Refuted = 1, Undetermined = 2 };

struct CheckSuiteResult {
    std::string report_json;   // schema in docs/report.schema.json
    std::string report_text;
    CheckExit exit = CheckExit::AllHold;
};

struct ModelEcho {
    std::string graph_source;   // dataset id, file path, or generator spec
    const Graph* graph = nullptr;
    const MarkovParams* params = nullptr;
};

CheckSuiteResult run_check_suite(const ModelEcho& model, const CheckSelection& selection,
                                 const CheckOptions& options);

// Combined fit + necessary-condition report (the end-to-end pipeline).
CheckSuiteResult fit_report(const ModelEcho& model, const FitResult& fit);

std::string fit_trajectory_csv(const FitResult& fit);

} // namespace ergraph
