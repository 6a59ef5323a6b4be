#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "byzcode/binning.hpp"
#include "byzcode/covers.hpp"
#include "byzcode/joint_pmf.hpp"
#include "byzcode/typicality.hpp"

namespace byzcode {

// Multiround variable-rate protocol: per round, the decoder polls each
// still-plausible sensor in index order, receiving binning-hash increments at
// rate levels eps, 2*eps, ... until the target set holds exactly one
// hash-consistent sequence. After the last phase the cover of candidate
// honest sets is pruned to the members the decoded block looks typical for.

struct SimParams {
    int k = 200;           // symbols per round
    int rounds = 4;
    double epsilon = 0.05; // rate increment and typicality tolerance
    int C = 64;            // encoding functions per phase
    std::uint64_t seed = 1;
    int t = 0;             // traitor bound the decoder defends against

    TypicalityParams typicality() const { return TypicalityParams{epsilon}; }
    void validate() const;
};

enum class AdversaryStrategy { Honest, Gibberish, Fabricate, Collide };

const char* strategy_name(AdversaryStrategy s);
std::optional<AdversaryStrategy> strategy_from_name(const std::string& name);

struct TransactionRecord {
    int round;
    int sensor;
    int tau;             // transaction number within the phase, 1-based
    int function_index;  // announced c
    int bits;            // index bits (first transaction) + hash bits
};

enum class PhaseResult { Decoded, AmbiguousError, ExhaustedError };

struct PhaseOutcome {
    int round;
    int sensor;
    PhaseResult result;
    int transactions;
    std::uint64_t bits;
    double final_rate_level;  // R at the last transaction
    bool used_filler;         // estimate is a placeholder, not a decode
};

struct RoundRecord {
    Cover cover_before;
    Cover cover_after;
    SequenceBlock decoded;   // m rows; rows outside U(cover_before) are stale
    bool cover_emptied;      // no typical member survived pruning
};

struct SessionReport {
    int m = 0;
    SimParams params;
    std::vector<TransactionRecord> transcript;
    std::vector<PhaseOutcome> phases;
    std::vector<RoundRecord> rounds;
    std::uint64_t total_bits = 0;
    bool honest_error = false;        // some honest sensor wrong or unestimated
    int session_error_count = 0;      // phase errors + emptied covers
    std::string first_error_kind;     // "", "ambiguous", "exhausted", "cover_emptied"
    Cover final_cover;
};

// Total transmitted bits per source symbol, index announcements included.
double measure_sum_rate(const SessionReport& report);

SessionReport run_session(const JointPmf& p, const SimParams& params, SensorSet traitors,
                          AdversaryStrategy strategy,
                          const std::optional<JointPmf>& q_tilde = std::nullopt);

// ---- decoder internals exposed for direct testing ----

struct DecodeResult {
    enum class Kind { Unique, None, Ambiguous } kind;
    std::vector<std::uint8_t> sequence;  // set when Unique
};

// Single-shot exact decoder: enumerate every length-k sequence over the
// alphabet, keep those whose bin-index prefix matches the received bits and
// whose conditional type entropy given the context is within the target set
// at rate R. Feasible only for small alphabet^k.
DecodeResult decode_phase(const BinningEncoder& enc, std::span<const std::uint8_t> received_bits,
                          int bits_received, int alphabet, int k, const SequenceBlock& context,
                          double rate, const TypicalityParams& params);

// Largest sub-cover the block looks typical for; nullopt when no member
// survives (the session-level error case).
std::optional<Cover> prune_cover(const Cover& cover, const SequenceBlock& decoded,
                                 const JointPmf& p, double eps);

// Number of sequences in the target set at rate R given the context
// (conditional type entropy <= R + eps'). Exact composition count; used to
// size the published per-phase bit schedule in exact mode.
double target_set_count(const SequenceBlock& context, int alphabet, int k, double rate,
                        const TypicalityParams& params);

// Cumulative hash bits the decoder requires after transaction tau. Published
// alongside the codebooks, so sensors, decoder and adversaries agree on it.
struct BitSchedule {
    static constexpr int kExactMarginBits = 12;
    static constexpr int kStatisticalMarginBits = 16;

    // exact = alphabet^k small enough for exhaustive enumeration
    static bool exact_mode(int alphabet, int k);
    static int cumulative_bits_exact(const SequenceBlock& context, int alphabet, int k,
                                     double rate, const TypicalityParams& params);
    static int cumulative_bits_statistical(int alphabet, int k, int context_cells, double rate,
                                           const TypicalityParams& params);
};

}  // namespace byzcode
