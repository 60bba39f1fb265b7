#pragma once

#include <map>
#include <optional>

#include "bhecho/nonmarkov.hpp"
#include "bhecho/params.hpp"
#include "bhecho/trace.hpp"

namespace bhecho {

enum class Method { sf, mott, ed };

Method method_from_string(const std::string& s);
const char* to_string(Method m);

// "8,10,15" or "8 10 15" or "a:b:n" (n equally spaced points, inclusive).
std::vector<double> parse_sweep_spec(const std::string& spec);

// Raw scenario configuration: everything optional, filled from a config
// file and/or command-line overrides, then resolved against method-aware
// defaults. Unknown keys are rejected.
struct ScenarioConfig {
    std::optional<std::string> method;
    std::optional<double> J, U, Ue, dt, T, T_N, T_avg, tol, compare_bound;
    std::optional<int> Ns, nbar, nmax, i0, kcount, workers;
    std::optional<unsigned long> seed;
    std::optional<std::size_t> dim_cap;
    std::optional<std::string> bc, out, tag, kernel;
    std::optional<std::vector<double>> sweep;

    static ScenarioConfig from_key_values(const std::map<std::string, std::string>& kv);
    static ScenarioConfig from_file(const std::string& path);

    // fields set in `higher` win
    void merge_from(const ScenarioConfig& higher);
};

// Fully resolved scenario; every default the code filled in is visible in
// canonical_text(), which is what run_* persist as resolved_config.txt.
struct ResolvedScenario {
    Method method = Method::ed;
    ModelParams params;
    TimeGrid grid;
    double T_N = 0.0;    // horizon entering the BLP measure
    double T_avg = 0.0;  // averaging window for dn1 (ed)
    double tol = 1e-10;
    double compare_bound = 0.5;
    int kcount = 0;      // >0: thermodynamic quadrature nodes; 0: lattice momenta
    int workers = 0;     // 0 = hardware concurrency
    unsigned long seed = 0;  // reserved; current methods are deterministic
    std::size_t dim_cap = 2'000'000;
    std::string out = "out";
    std::string tag;
    std::string kernel = "auto";
    std::vector<double> sweep;

    // the configuration this scenario was resolved from; sweep points are
    // re-resolved from it so user-pinned fields stay pinned per point
    ScenarioConfig raw;

    std::string canonical_text() const;
    std::string config_hash() const;
};

ResolvedScenario resolve(const ScenarioConfig& cfg);

struct ScenarioReport {
    std::string tag;
    Method method = Method::ed;
    std::string config_hash;
    NMReport nm;
    std::size_t clipped_samples = 0;
    std::vector<std::string> warnings;
    // method-specific predictions/diagnostics
    std::optional<double> tau_rec, sound_speed_value, ns_over_cs;
    std::optional<double> first_revival;
    std::optional<double> dn1_avg;
    std::optional<double> ground_energy, ground_gap, norm_drift;
    std::string trace_path, report_path;
};

// One scenario end to end: trace CSV + report JSON + resolved config.
ScenarioReport run_scenario(const ResolvedScenario& sc);

// Sweep over U/J: per-point artifacts, resumable via config hashes, failed
// points recorded and skipped, final sweep.csv written atomically.
SweepResult run_sweep(const ResolvedScenario& sc);

struct CompareReport {
    std::string tag;
    std::string analytic;              // "sf", "mott" or "none"
    double max_echo_deviation = 0.0;   // max |sqrtL_ed - sqrtL_analytic|
    double tcl_max_abs = 0.0;          // max |log sqrtL_ed - Gamma_corr|
    double tcl_band_ratio = 0.0;       // vs 1e-3 * max(|Gamma_corr|, 1e-6)
    double slope_ratio = 1.0;          // early-decay slope, ed vs analytic
    bool breakdown = false;
    std::vector<std::string> flags;
    std::string csv_path, report_path;
};

// ED against the applicable analytic model plus the correlation-function
// (TCL) route on a single scenario.
CompareReport compare_methods(const ResolvedScenario& sc);

// Serialized forms (exposed for tests and the resume logic).
std::string scenario_report_json(const ScenarioReport& rep, const ResolvedScenario& sc);
std::string compare_report_json(const CompareReport& rep, const ResolvedScenario& sc);
std::string sweep_csv(const SweepResult& sr);

}  // namespace bhecho
