#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "byzcode/protocol.hpp"

namespace byzcode {

// A batch of independent protocol sessions. Trial i runs with the seed
// derived from (params.seed, i), so results are reproducible and independent
// of how trials are scheduled across threads.
struct TrialConfig {
    JointPmf p;
    SimParams params;
    SensorSet traitors;
    AdversaryStrategy strategy = AdversaryStrategy::Honest;
    std::optional<JointPmf> q_tilde;
    int trials = 100;
};

struct TrialRow {
    int trial;
    bool honest_error;
    std::string error_kind;  // "none" or the first session error
    double sum_rate;
    std::string final_cover;
};

struct TrialBatch {
    std::vector<TrialRow> rows;
    double honest_error_rate = 0.0;
    double session_error_rate = 0.0;
    double mean_sum_rate = 0.0;
    double sum_rate_stddev = 0.0;
    int threads_used = 1;
};

// Respects the BYZCODE_THREADS environment variable as an upper bound on
// trial parallelism.
int trial_thread_budget();

TrialBatch run_trials(const TrialConfig& config);

// CSV with one row per trial: trial, honest_error, session_error_kind,
// sum_rate_bits_per_symbol, final_cover.
std::string trials_csv(const TrialBatch& batch);
void write_trials_csv(const std::string& path, const TrialBatch& batch);

// Aggregate report embedding the resolved configuration, the library
// version and the theoretical minimum sum rate for comparison.
nlohmann::json make_trial_report(const TrialConfig& config, const TrialBatch& batch,
                                 std::optional<double> r_star_theoretical);
void write_trial_report(const std::string& path, const nlohmann::json& report);

}  // namespace byzcode
