#include "byzcode/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include "byzcode/info_measures.hpp"

namespace byzcode {

namespace {

// Sub-stream labels; derivation by label keeps every random choice
// independent of decode timing and thread scheduling.
enum : std::uint64_t {
    kLabelCodebook = 1,
    kLabelSources = 2,
    kLabelFunctionDraw = 3,
    kLabelAdversary = 4,
    kLabelFalseCandidates = 5,
    kLabelFiller = 6,
};

constexpr std::uint64_t kExactEnumLimit = std::uint64_t{1} << 21;

int ceil_log2_int(int n) {
    int bits = 0;
    while ((1 << bits) < n) ++bits;
    return bits;
}

std::uint64_t pow_u64(int base, int exp) {
    std::uint64_t v = 1;
    for (int i = 0; i < exp; ++i) v *= static_cast<std::uint64_t>(base);
    return v;
}

void decode_code(std::uint64_t code, int alphabet, int k, std::span<std::uint8_t> out) {
    for (int t = k - 1; t >= 0; --t) {
        out[t] = static_cast<std::uint8_t>(code % static_cast<std::uint64_t>(alphabet));
        code /= static_cast<std::uint64_t>(alphabet);
    }
}

// Visits every length-k sequence over the alphabet in code order, handing
// the visitor the symbols and the fully-absorbed hash state. The odometer
// update re-absorbs only the changed suffix.
template <typename Fn>
void scan_sequences(const BinningEncoder& enc, int alphabet, int k, Fn&& visit) {
    std::vector<std::uint8_t> seq(k, 0);
    std::vector<std::uint64_t> state(k + 1);
    state[0] = enc.absorb_state();
    for (int t = 0; t < k; ++t) state[t + 1] = BinningEncoder::absorb(state[t], 0);
    const std::uint64_t total = pow_u64(alphabet, k);
    for (std::uint64_t code = 0;; ++code) {
        visit(code, std::span<const std::uint8_t>(seq), state[k]);
        if (code + 1 == total) break;
        int t = k - 1;
        while (seq[t] == alphabet - 1) seq[t--] = 0;
        ++seq[t];
        for (int i = t; i < k; ++i) state[i + 1] = BinningEncoder::absorb(state[i], seq[i]);
    }
}

std::uint64_t low_mask(int bits) { return bits >= 64 ? ~0ULL : ((1ULL << bits) - 1ULL); }

// Class sizes of the context: positions grouped by context symbol tuple.
std::vector<int> context_class_sizes(const SequenceBlock& context, int k) {
    if (context.sensors == 0) return {k};
    std::map<std::vector<std::uint8_t>, int> groups;
    std::vector<std::uint8_t> tuple(context.sensors);
    for (int t = 0; t < k; ++t) {
        for (int i = 0; i < context.sensors; ++i) tuple[i] = context.symbol(i, t);
        ++groups[tuple];
    }
    std::vector<int> sizes;
    for (auto& [_, n] : groups) sizes.push_back(n);
    return sizes;
}

double log2_binomial(int n, int j) {
    return (std::lgamma(n + 1.0) - std::lgamma(j + 1.0) - std::lgamma(n - j + 1.0)) /
           std::numbers::ln2;
}

// Count of per-class symbol-count vectors, weighted by multinomial size,
// whose total empirical conditional entropy stays within the budget.
// Exact at small k; the recursion prunes on the entropy budget.
struct CompositionCounter {
    int alphabet;
    double budget_bits;  // k * (R + eps')
    const std::vector<int>* classes;
    double total = 0.0;

    void run() { recurse(0, 0.0, 1.0); }

    void recurse(std::size_t cls, double spent_bits, double count_so_far) {
        if (spent_bits > budget_bits + 1e-9) return;
        if (cls == classes->size()) {
            total += count_so_far;
            return;
        }
        int n = (*classes)[cls];
        std::vector<int> counts(alphabet, 0);
        compose(cls, n, 0, n, 0.0, 0.0, spent_bits, count_so_far, counts);
    }

    // Distribute `left` symbols of class `cls` over alphabet slots >= slot.
    void compose(std::size_t cls, int n, int slot, int left, double log_mult, double h_bits,
                 double spent_bits, double count_so_far, std::vector<int>& counts) {
        if (spent_bits + h_bits > budget_bits + 1e-9) return;
        if (slot == alphabet - 1) {
            counts[slot] = left;
            double lm = log_mult;  // multinomial term for the last slot is C(left,left)=1
            double h = h_bits + (left > 0 ? left * std::log2(static_cast<double>(n) / left) : 0.0);
            if (spent_bits + h <= budget_bits + 1e-9)
                recurse(cls + 1, spent_bits + h, count_so_far * std::exp2(lm));
            return;
        }
        for (int j = 0; j <= left; ++j) {
            counts[slot] = j;
            double lm = log_mult + log2_binomial(left, j);
            double h = h_bits + (j > 0 ? j * std::log2(static_cast<double>(n) / j) : 0.0);
            compose(cls, n, slot + 1, left - j, lm, h, spent_bits, count_so_far, counts);
        }
    }
};

}  // namespace

void SimParams::validate() const {
    if (k < 1) throw std::invalid_argument("SimParams: k must be >= 1");
    if (rounds < 1) throw std::invalid_argument("SimParams: rounds must be >= 1");
    if (!(epsilon > 0.0)) throw std::invalid_argument("SimParams: epsilon must be > 0");
    if (C < 1) throw std::invalid_argument("SimParams: C must be >= 1");
    if (t < 0) throw std::invalid_argument("SimParams: t must be >= 0");
}

const char* strategy_name(AdversaryStrategy s) {
    switch (s) {
        case AdversaryStrategy::Honest: return "honest";
        case AdversaryStrategy::Gibberish: return "gibberish";
        case AdversaryStrategy::Fabricate: return "fabricate";
        case AdversaryStrategy::Collide: return "collide";
    }
    return "unknown";
}

std::optional<AdversaryStrategy> strategy_from_name(const std::string& name) {
    if (name == "honest") return AdversaryStrategy::Honest;
    if (name == "gibberish") return AdversaryStrategy::Gibberish;
    if (name == "fabricate") return AdversaryStrategy::Fabricate;
    if (name == "collide") return AdversaryStrategy::Collide;
    return std::nullopt;
}

double measure_sum_rate(const SessionReport& report) {
    return static_cast<double>(report.total_bits) /
           (static_cast<double>(report.params.k) * report.params.rounds);
}

double target_set_count(const SequenceBlock& context, int alphabet, int k, double rate,
                        const TypicalityParams& params) {
    std::vector<int> classes = context_class_sizes(context, k);
    CompositionCounter counter{alphabet, k * (rate + params.epsilon_prime()), &classes};
    counter.run();
    return counter.total;
}

bool BitSchedule::exact_mode(int alphabet, int k) {
    if (k > 63) return false;
    double cells = std::pow(static_cast<double>(alphabet), k);
    return cells <= static_cast<double>(kExactEnumLimit);
}

int BitSchedule::cumulative_bits_exact(const SequenceBlock& context, int alphabet, int k,
                                       double rate, const TypicalityParams& params) {
    double count = std::max(2.0, target_set_count(context, alphabet, k, rate, params));
    return static_cast<int>(std::ceil(std::log2(count))) + kExactMarginBits;
}

int BitSchedule::cumulative_bits_statistical(int alphabet, int k, int context_cells, double rate,
                                             const TypicalityParams& params) {
    double df = static_cast<double>(alphabet - 1) * context_cells;
    double exponent = k * (rate + params.epsilon_prime()) + df * std::log2(k + 1.0);
    return static_cast<int>(std::ceil(exponent)) + kStatisticalMarginBits;
}

DecodeResult decode_phase(const BinningEncoder& enc, std::span<const std::uint8_t> received_bits,
                          int bits_received, int alphabet, int k, const SequenceBlock& context,
                          double rate, const TypicalityParams& params) {
    if (!BitSchedule::exact_mode(alphabet, k))
        throw std::invalid_argument("decode_phase: alphabet^k too large for exact decoding");
    if (context.sensors > 0 && context.length != k)
        throw std::invalid_argument("decode_phase: context length mismatch");

    const std::uint64_t total = pow_u64(alphabet, k);
    std::vector<std::uint8_t> seq(k);
    DecodeResult out{DecodeResult::Kind::None, {}};
    int found = 0;
    for (std::uint64_t code = 0; code < total; ++code) {
        decode_code(code, alphabet, k, seq);
        if (!enc.matches(seq, 0, bits_received, received_bits)) continue;
        if (!in_target_set(seq, context, rate, params)) continue;
        if (++found == 1) {
            out.sequence.assign(seq.begin(), seq.end());
        } else {
            return DecodeResult{DecodeResult::Kind::Ambiguous, {}};
        }
    }
    if (found == 1) {
        out.kind = DecodeResult::Kind::Unique;
        return out;
    }
    return DecodeResult{DecodeResult::Kind::None, {}};
}

std::optional<Cover> prune_cover(const Cover& cover, const SequenceBlock& decoded,
                                 const JointPmf& p, double eps) {
    Cover kept;
    kept.m = cover.m;
    kept.t = cover.t;
    for (SensorSet s : cover.sets)
        if (is_typical(decoded, s, p, eps)) kept.sets.push_back(s);
    if (kept.sets.empty()) return std::nullopt;
    return kept;
}

namespace {

struct PhaseContext {
    const JointPmf& p;
    const SimParams& params;
    std::uint64_t codebook_seed;
    RngStream false_stream;   // statistical false-candidate draws
    RngStream filler_stream;  // placeholder estimates
};

std::vector<std::uint8_t> filler_row(RngStream rng, int alphabet, int k) {
    std::vector<std::uint8_t> row(k);
    for (int t = 0; t < k; ++t)
        row[t] = static_cast<std::uint8_t>(rng.next_below(static_cast<std::uint64_t>(alphabet)));
    return row;
}

struct PhaseRun {
    PhaseResult result;
    std::vector<std::uint8_t> estimate;
    bool used_filler = false;
    int transactions = 0;
    std::uint64_t bits = 0;
    double final_rate = 0.0;
};

// One phase against a sensor that honestly encodes `reported` (empty for a
// gibberish sender). Exact path enumerates real candidate sets; statistical
// path tracks the reported sequence plus an idealized-binning false count.
PhaseRun run_phase(PhaseContext& ctx, std::vector<TransactionRecord>& transcript, int round,
                   int sensor, int announced_c, std::span<const std::uint8_t> reported,
                   const SequenceBlock& context, int context_cells,
                   RngStream gibberish_bits_stream) {
    const int k = ctx.params.k;
    const int alphabet = ctx.p.alphabet_size(sensor);
    const TypicalityParams typ = ctx.params.typicality();
    const double eps = ctx.params.epsilon;
    const bool exact = BitSchedule::exact_mode(alphabet, k);
    const int tau_cap = static_cast<int>(std::ceil(std::log2(static_cast<double>(alphabet)) / eps)) + 1;
    const int index_bits = ceil_log2_int(ctx.params.C);
    const bool gibberish = reported.empty();

    BinningEncoder enc(ctx.codebook_seed, sensor, round, announced_c);

    PhaseRun run;
    // Exact mode: survivors of the received bin bits, with their bin words.
    // Cumulative exact-mode bit counts stay below 64, so one word suffices.
    std::vector<std::pair<std::uint64_t, std::uint64_t>> survivors;
    bool survivors_ready = false;
    std::uint64_t sender_word = 0;
    if (exact && !gibberish) sender_word = enc.word(reported, 0);
    std::uint64_t received_prefix = 0;
    std::vector<std::uint8_t> seq(k);

    int prev_bits = 0;
    for (int tau = 1; tau <= tau_cap; ++tau) {
        const double rate = tau * eps;
        const int cum_bits =
            exact ? BitSchedule::cumulative_bits_exact(context, alphabet, k, rate, typ)
                  : BitSchedule::cumulative_bits_statistical(alphabet, k, context_cells, rate, typ);
        const int chunk_bits = std::max(0, cum_bits - prev_bits);
        const int sent = (tau == 1 ? index_bits : 0) + chunk_bits;
        transcript.push_back({round, sensor, tau, announced_c, sent});
        run.bits += static_cast<std::uint64_t>(sent);
        run.transactions = tau;
        run.final_rate = rate;

        if (exact) {
            if (prev_bits + chunk_bits > 64)
                throw std::logic_error("exact phase: bit budget exceeded one word");
            const std::uint64_t chunk_mask = low_mask(chunk_bits) << prev_bits;
            if (gibberish)
                received_prefix |= gibberish_bits_stream.next_u64() & chunk_mask;
            else
                received_prefix |= sender_word & chunk_mask;
            const std::uint64_t prefix_mask = low_mask(prev_bits + chunk_bits);

            if (!survivors_ready) {
                scan_sequences(enc, alphabet, k,
                               [&](std::uint64_t code, std::span<const std::uint8_t>,
                                   std::uint64_t state) {
                                   std::uint64_t w = BinningEncoder::word_from_state(state, 0);
                                   if (((w ^ received_prefix) & prefix_mask) == 0)
                                       survivors.emplace_back(code, w);
                               });
                survivors_ready = true;
            } else {
                std::erase_if(survivors, [&](const auto& s) {
                    return ((s.second ^ received_prefix) & prefix_mask) != 0;
                });
            }
            int found = 0;
            std::uint64_t found_code = 0;
            for (const auto& [code, w] : survivors) {
                decode_code(code, alphabet, k, seq);
                if (in_target_set(seq, context, rate, typ)) {
                    if (++found > 1) break;
                    found_code = code;
                }
            }
            prev_bits += chunk_bits;
            if (found == 1) {
                decode_code(found_code, alphabet, k, seq);
                run.result = PhaseResult::Decoded;
                run.estimate = seq;
                return run;
            }
            if (found > 1) {
                run.result = PhaseResult::AmbiguousError;
                run.estimate = filler_row(ctx.filler_stream.derive(round, sensor), alphabet, k);
                run.used_filler = true;
                return run;
            }
        } else {
            const bool present =
                !gibberish && conditional_type_entropy(reported, context) <=
                                  rate + typ.epsilon_prime() + 1e-12;
            const double df = static_cast<double>(alphabet - 1) * context_cells;
            const double exponent =
                k * (rate + typ.epsilon_prime()) + df * std::log2(k + 1.0) - cum_bits;
            const double lambda = std::exp2(exponent);
            RngStream draw = ctx.false_stream.derive(round, sensor, tau);
            const int false_count = draw.next_poisson(lambda);
            prev_bits = cum_bits;

            const int total_candidates = (present ? 1 : 0) + false_count;
            if (total_candidates == 1) {
                if (present) {
                    run.result = PhaseResult::Decoded;
                    run.estimate.assign(reported.begin(), reported.end());
                } else {
                    // A stray bin collision decoded to the wrong sequence.
                    run.result = PhaseResult::Decoded;
                    run.estimate =
                        filler_row(ctx.filler_stream.derive(round, sensor), alphabet, k);
                    run.used_filler = true;
                }
                return run;
            }
            if (total_candidates >= 2) {
                run.result = PhaseResult::AmbiguousError;
                run.estimate = filler_row(ctx.filler_stream.derive(round, sensor), alphabet, k);
                run.used_filler = true;
                return run;
            }
        }
    }
    run.result = PhaseResult::ExhaustedError;
    run.estimate = filler_row(ctx.filler_stream.derive(round, sensor), alphabet, k);
    run.used_filler = true;
    return run;
}

// Fabrication attack: one conditional draw of the traitor symbols per slot,
// conditioned on the true honest symbols, taken before the session starts.
void fabricate_rows(const JointPmf& q_tilde, SensorSet traitors, SensorSet honest,
                    SequenceBlock& block, RngStream rng) {
    std::vector<int> honest_idx = honest.indices();
    std::vector<int> traitor_idx = traitors.indices();

    std::map<std::vector<int>, JointPmf> cache;
    std::vector<int> ctx(honest_idx.size());
    std::vector<int> fake(traitor_idx.size());
    for (int t = 0; t < block.length; ++t) {
        for (std::size_t j = 0; j < honest_idx.size(); ++j) ctx[j] = block.symbol(honest_idx[j], t);
        auto it = cache.find(ctx);
        if (it == cache.end()) {
            JointPmf cond = [&] {
                try {
                    return condition(q_tilde, traitors, ctx);
                } catch (const zero_probability_error&) {
                    // Context mass vanished under q_tilde (possible only at the
                    // marginal-check tolerance); any reply keeps the session going.
                    std::vector<int> sizes;
                    for (int i : traitor_idx) sizes.push_back(q_tilde.alphabet_size(i));
                    return JointPmf::uniform(sizes);
                }
            }();
            it = cache.emplace(ctx, std::move(cond)).first;
        }
        const JointPmf& cond = it->second;
        std::size_t cell = rng.next_weighted(cond.probs());
        cond.decode_index(cell, fake);
        for (std::size_t j = 0; j < traitor_idx.size(); ++j)
            block.set_symbol(traitor_idx[j], t, static_cast<std::uint8_t>(fake[j]));
    }
}

// Collide attack (two sensors, traitor polled first): search the victim's
// sequence space for a fake pair that reproduces the victim's first-chunk
// bin bits under a guessed encoding function, and report its first half.
// Falls back to honest behavior when no collision exists or the setup does
// not apply.
bool plan_collision(const PhaseContext& ctx, int round, int traitor, int victim,
                    std::span<const std::uint8_t> victim_true, RngStream& adversary,
                    std::vector<std::uint8_t>& traitor_row_out) {
    const int k = ctx.params.k;
    const int a_victim = ctx.p.alphabet_size(victim);
    const int a_traitor = ctx.p.alphabet_size(traitor);
    if (a_victim != a_traitor) return false;
    if (!BitSchedule::exact_mode(a_victim, k)) return false;

    const int c_guess =
        ctx.params.C == 1 ? 1 : 1 + static_cast<int>(adversary.next_below(ctx.params.C));
    BinningEncoder enc(ctx.codebook_seed, victim, round, c_guess);
    const TypicalityParams typ = ctx.params.typicality();

    // The first-transaction bit count depends on the planted context only
    // through its symbol composition; cache it in a flat composition table.
    std::size_t table_size = 1;
    for (int j = 1; j < a_victim; ++j) table_size *= static_cast<std::size_t>(k + 1);
    std::vector<int> b1_table(table_size, -1);
    std::vector<int> comp(a_victim, 0);
    auto first_chunk_bits = [&](std::span<const std::uint8_t> seq) {
        std::fill(comp.begin(), comp.end(), 0);
        for (std::uint8_t s : seq) ++comp[s];
        std::size_t idx = 0;
        for (int j = a_victim - 1; j >= 1; --j)
            idx = idx * static_cast<std::size_t>(k + 1) + static_cast<std::size_t>(comp[j]);
        if (b1_table[idx] < 0) {
            SequenceBlock ctx_block(1, k);
            int pos = 0;
            for (int sym = 0; sym < a_victim; ++sym)
                for (int c = 0; c < comp[sym]; ++c)
                    ctx_block.set_symbol(0, pos++, static_cast<std::uint8_t>(sym));
            b1_table[idx] = BitSchedule::cumulative_bits_exact(ctx_block, a_victim, k,
                                                               ctx.params.epsilon, typ);
        }
        return b1_table[idx];
    };

    const std::uint64_t want_word = enc.word(victim_true, 0);
    bool found = false;
    std::uint64_t found_code = 0;
    scan_sequences(enc, a_victim, k,
                   [&](std::uint64_t code, std::span<const std::uint8_t> seq,
                       std::uint64_t state) {
                       if (found) return;
                       std::uint64_t w = BinningEncoder::word_from_state(state, 0);
                       // Cheap prescreen on a generous prefix before the exact
                       // per-composition width is consulted.
                       if (((w ^ want_word) & low_mask(12)) != 0) return;
                       const int b1 = first_chunk_bits(seq);
                       if (b1 > 64) return;
                       if (((w ^ want_word) & low_mask(b1)) != 0) return;
                       if (std::equal(seq.begin(), seq.end(), victim_true.begin(),
                                      victim_true.end()))
                           return;
                       found = true;
                       found_code = code;
                   });
    if (!found) return false;
    traitor_row_out.resize(k);
    decode_code(found_code, a_victim, k, traitor_row_out);
    return true;
}

}  // namespace

SessionReport run_session(const JointPmf& p, const SimParams& params, SensorSet traitors,
                          AdversaryStrategy strategy, const std::optional<JointPmf>& q_tilde) {
    params.validate();
    const int m = p.dimensions();
    if (!traitors.subset_of(SensorSet::full(m)))
        throw std::invalid_argument("run_session: traitor set out of range");
    if (traitors.count() > params.t)
        throw std::invalid_argument("run_session: more traitors than the declared bound t");
    if (params.t > m - 1) throw std::invalid_argument("run_session: t must be <= m-1");
    SensorSet honest = traitors.complement(m);

    if (strategy == AdversaryStrategy::Fabricate) {
        if (!q_tilde) throw std::invalid_argument("run_session: fabricate requires q_tilde");
        if (q_tilde->alphabet_sizes() != p.alphabet_sizes())
            throw std::invalid_argument("run_session: q_tilde shape mismatch");
        if (!honest.empty()) {
            JointPmf qh = marginalize(*q_tilde, honest);
            JointPmf ph = marginalize(p, honest);
            if (qh.max_abs_diff(ph) > 1e-9)
                throw std::invalid_argument(
                    "run_session: q_tilde does not match p on the honest sensors");
        }
    }

    RngStream session(params.seed);
    PhaseContext ctx{p, params, session.derive(kLabelCodebook).next_u64(),
                     session.derive(kLabelFalseCandidates), session.derive(kLabelFiller)};
    RngStream source_stream = session.derive(kLabelSources);
    RngStream function_stream = session.derive(kLabelFunctionDraw);
    RngStream adversary_stream = session.derive(kLabelAdversary);

    SessionReport report;
    report.m = m;
    report.params = params;

    Cover cover{m, params.t, all_candidate_honest_sets(m, params.t)};

    auto note_error = [&](const char* kind) {
        ++report.session_error_count;
        if (report.first_error_kind.empty()) report.first_error_kind = kind;
    };

    for (int r = 0; r < params.rounds; ++r) {
        SequenceBlock truth = sample_block(p, params.k, source_stream.derive(r).next_u64());
        SequenceBlock reported = truth;

        std::vector<bool> sends_gibberish(m, false);
        if (!traitors.empty()) {
            switch (strategy) {
                case AdversaryStrategy::Honest:
                    break;
                case AdversaryStrategy::Gibberish:
                    for (int i : traitors.indices()) sends_gibberish[i] = true;
                    break;
                case AdversaryStrategy::Fabricate:
                    fabricate_rows(*q_tilde, traitors, honest, reported,
                                   adversary_stream.derive(kLabelAdversary, r));
                    break;
                case AdversaryStrategy::Collide: {
                    // Applies when the traitor precedes an honest sensor; the
                    // first such pair carries the attack.
                    bool planned = false;
                    for (int i : traitors.indices()) {
                        for (int v = i + 1; v < m && !planned; ++v) {
                            if (traitors.contains(v)) continue;
                            std::vector<std::uint8_t> fake;
                            RngStream adv = adversary_stream.derive(r, i);
                            if (plan_collision(ctx, r, i, v, truth.row(v), adv, fake)) {
                                std::copy(fake.begin(), fake.end(), reported.row(i).begin());
                                planned = true;
                            }
                        }
                        if (planned) break;
                    }
                    break;
                }
            }
        }

        RoundRecord round_rec{cover, cover, SequenceBlock(m, params.k), false};
        SensorSet covered = cover.united();
        SensorSet decoded_set;
        SequenceBlock& decoded = round_rec.decoded;

        for (int i = 0; i < m; ++i) {
            if (!covered.contains(i)) continue;
            SensorSet before = SensorSet::full(i).intersect(covered);
            SequenceBlock context = decoded.select(before);
            int context_cells = 1;
            for (int j : before.indices()) context_cells *= p.alphabet_size(j);

            const bool is_traitor = traitors.contains(i);
            int c = 1;
            if (params.C > 1) {
                RngStream draw = is_traitor ? adversary_stream.derive(kLabelFunctionDraw, r, i)
                                            : function_stream.derive(r, i);
                c = 1 + static_cast<int>(draw.next_below(params.C));
            }

            std::span<const std::uint8_t> row =
                sends_gibberish[i] ? std::span<const std::uint8_t>{} : reported.row(i);
            PhaseRun phase = run_phase(ctx, report.transcript, r, i, c, row, context, context_cells,
                                       adversary_stream.derive(r, i, 0x6762));

            report.phases.push_back({r, i, phase.result, phase.transactions, phase.bits,
                                     phase.final_rate, phase.used_filler});
            report.total_bits += phase.bits;
            if (phase.result != PhaseResult::Decoded)
                note_error(phase.result == PhaseResult::AmbiguousError ? "ambiguous"
                                                                       : "exhausted");
            std::copy(phase.estimate.begin(), phase.estimate.end(), decoded.row(i).begin());
            decoded_set = decoded_set.with(i);
        }

        // Keep only the candidate honest sets the decoded block is typical for.
        std::optional<Cover> pruned = prune_cover(cover, decoded, p, params.epsilon);
        if (pruned) {
            cover = std::move(*pruned);
        } else {
            round_rec.cover_emptied = true;
            note_error("cover_emptied");
        }
        round_rec.cover_after = cover;

        for (int i : honest.indices()) {
            if (!decoded_set.contains(i)) {
                report.honest_error = true;
            } else if (!std::equal(decoded.row(i).begin(), decoded.row(i).end(),
                                   truth.row(i).begin())) {
                report.honest_error = true;
            }
        }
        report.rounds.push_back(std::move(round_rec));
    }
    report.final_cover = cover;
    return report;
}

}  // namespace byzcode
