#include "byzcode/experiments.hpp"

#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <sstream>

#include "byzcode/version.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace byzcode {

int trial_thread_budget() {
#ifdef _OPENMP
    int budget = omp_get_max_threads();
#else
    int budget = 1;
#endif
    if (const char* env = std::getenv("BYZCODE_THREADS")) {
        int cap = std::atoi(env);
        if (cap >= 1) budget = std::min(budget, cap);
    }
    return budget;
}

TrialBatch run_trials(const TrialConfig& config) {
    config.params.validate();
    if (config.trials < 1) throw std::invalid_argument("run_trials: need at least one trial");

    TrialBatch batch;
    batch.rows.resize(config.trials);
    batch.threads_used = trial_thread_budget();

    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic) num_threads(batch.threads_used)
    for (int i = 0; i < config.trials; ++i) {
        try {
            SimParams params = config.params;
            params.seed = RngStream(config.params.seed).derive(0x747269616cULL, i).next_u64();
            SessionReport rep =
                run_session(config.p, params, config.traitors, config.strategy, config.q_tilde);
            batch.rows[i] = TrialRow{i, rep.honest_error,
                                     rep.first_error_kind.empty() ? "none" : rep.first_error_kind,
                                     measure_sum_rate(rep), rep.final_cover.to_string()};
        } catch (...) {
#pragma omp critical(byzcode_trials_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);

    double err = 0.0, sess = 0.0, rate = 0.0, rate_sq = 0.0;
    for (const TrialRow& row : batch.rows) {
        err += row.honest_error ? 1.0 : 0.0;
        sess += row.error_kind != "none" ? 1.0 : 0.0;
        rate += row.sum_rate;
        rate_sq += row.sum_rate * row.sum_rate;
    }
    const double n = static_cast<double>(config.trials);
    batch.honest_error_rate = err / n;
    batch.session_error_rate = sess / n;
    batch.mean_sum_rate = rate / n;
    batch.sum_rate_stddev = std::sqrt(std::max(0.0, rate_sq / n - batch.mean_sum_rate * batch.mean_sum_rate));
    return batch;
}

std::string trials_csv(const TrialBatch& batch) {
    std::ostringstream out;
    out << "trial,honest_error,session_error_kind,sum_rate_bits_per_symbol,final_cover\n";
    out.setf(std::ios::fixed);
    out.precision(6);
    for (const TrialRow& row : batch.rows) {
        out << row.trial << "," << (row.honest_error ? 1 : 0) << "," << row.error_kind << ","
            << row.sum_rate << "," << row.final_cover << "\n";
    }
    return out.str();
}

void write_trials_csv(const std::string& path, const TrialBatch& batch) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write csv file: " + path);
    out << trials_csv(batch);
}

nlohmann::json make_trial_report(const TrialConfig& config, const TrialBatch& batch,
                                 std::optional<double> r_star_theoretical) {
    const double n = static_cast<double>(config.trials);
    const double err_se =
        std::sqrt(std::max(0.0, batch.honest_error_rate * (1.0 - batch.honest_error_rate) / n));
    const double rate_se = batch.sum_rate_stddev / std::sqrt(n);

    nlohmann::json j;
    j["schema"] = 1;
    j["version"] = kVersion;
    j["config"] = {
        {"alphabet_sizes", config.p.alphabet_sizes()},
        {"k", config.params.k},
        {"rounds", config.params.rounds},
        {"epsilon", config.params.epsilon},
        {"C", config.params.C},
        {"seed", config.params.seed},
        {"t", config.params.t},
        {"traitors", config.traitors.to_string()},
        {"strategy", strategy_name(config.strategy)},
        {"trials", config.trials},
    };
    j["results"] = {
        {"honest_error_rate", batch.honest_error_rate},
        {"honest_error_rate_ci95", 1.96 * err_se},
        {"session_error_rate", batch.session_error_rate},
        {"mean_sum_rate", batch.mean_sum_rate},
        {"mean_sum_rate_ci95", 1.96 * rate_se},
    };
    if (r_star_theoretical) j["results"]["r_star_theoretical"] = *r_star_theoretical;
    return j;
}

void write_trial_report(const std::string& path, const nlohmann::json& report) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write report file: " + path);
    out << report.dump(2) << "\n";
}

}  // namespace byzcode
