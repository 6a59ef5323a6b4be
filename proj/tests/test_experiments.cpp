#include <doctest.h>

#include <cstdlib>

#include "byzcode/experiments.hpp"
#include "test_util.hpp"

using namespace byzcode;

TEST_CASE("trial batches are reproducible and independent of thread count") {
    TrialConfig config{testutil::correlated_pair(), SimParams{80, 2, 0.05, 16, 42, 0},
                       SensorSet{}, AdversaryStrategy::Honest, std::nullopt, 12};

    setenv("BYZCODE_THREADS", "1", 1);
    TrialBatch serial = run_trials(config);
    CHECK(serial.threads_used == 1);
    setenv("BYZCODE_THREADS", "4", 1);
    TrialBatch threaded = run_trials(config);
    unsetenv("BYZCODE_THREADS");

    CHECK(trials_csv(serial) == trials_csv(threaded));
    CHECK(serial.mean_sum_rate == threaded.mean_sum_rate);
}

TEST_CASE("csv layout: header plus one row per trial") {
    TrialConfig config{testutil::correlated_pair(), SimParams{40, 1, 0.1, 8, 7, 0}, SensorSet{},
                       AdversaryStrategy::Honest, std::nullopt, 3};
    TrialBatch batch = run_trials(config);
    std::string csv = trials_csv(batch);
    CHECK(csv.rfind("trial,honest_error,session_error_kind,sum_rate_bits_per_symbol,final_cover",
                    0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
}

TEST_CASE("report json embeds config, version and the theoretical rate") {
    TrialConfig config{testutil::correlated_pair(), SimParams{40, 1, 0.1, 8, 7, 0}, SensorSet{},
                       AdversaryStrategy::Honest, std::nullopt, 3};
    TrialBatch batch = run_trials(config);
    nlohmann::json rep = make_trial_report(config, batch, 1.721928);
    CHECK(rep["schema"] == 1);
    CHECK(rep["config"]["k"] == 40);
    CHECK(rep["config"]["strategy"] == "honest");
    CHECK(rep["results"].contains("mean_sum_rate"));
    CHECK(rep["results"]["r_star_theoretical"] == doctest::Approx(1.721928));
}
