// The six data-oblivious benchmarks, each in a bit-level and a bridged
// variant, plus a plaintext reference oracle and a metering harness.
//
//   FIB  Fibonacci with a multiplexer accumulator
//   LOG  logistic-regression style filter + matrix multiply
//   MAX  rank-by-pairwise-comparison maximum
//   MUX  encrypted ternary select
//   PKS  private keyword search
//   SOR  low-depth rank sort
#pragma once

#include <chrono>
#include <random>

#include "fhebridge/secure_types.hpp"

namespace fhebridge {

enum class BenchmarkId { fib, logreg, max, mux, pks, sor };
enum class BenchMode { bit, bridged };

inline const char* to_string(BenchmarkId id) {
    switch (id) {
        case BenchmarkId::fib: return "fib";
        case BenchmarkId::logreg: return "log";
        case BenchmarkId::max: return "max";
        case BenchmarkId::mux: return "mux";
        case BenchmarkId::pks: return "pks";
        case BenchmarkId::sor: return "sor";
    }
    return "?";
}

inline const char* to_string(BenchMode m) { return m == BenchMode::bit ? "bit" : "bridged"; }

// Fixed instance shapes, chosen once for reproducibility.
inline constexpr int kFibMaxIter = 10;
inline constexpr std::size_t kPksLength = 8;
inline constexpr std::size_t kVectorLength = 4;   // MAX and SOR
inline constexpr std::size_t kLogRows = 4, kLogCols = 4, kLogOut = 2;

struct BenchmarkSpec {
    BenchmarkId benchmark = BenchmarkId::pks;
    BenchMode mode = BenchMode::bridged;
    int bits = 8;
    std::uint64_t seed = 0;
};

struct BenchResult {
    std::vector<std::vector<std::uint64_t>> outputs;  // [output index][slot]
    CostReport cost;
    double wall_ms = 0;
    std::size_t slots_used = 1;
    double amortized_ms = 0;
    bool corrupted = false;

    std::vector<std::uint64_t> flattened() const {
        std::vector<std::uint64_t> flat;
        for (const auto& o : outputs) flat.insert(flat.end(), o.begin(), o.end());
        return flat;
    }
};

// ---- benchmark bodies -------------------------------------------------------

template <std::size_t S, HomomorphicBackend B>
SecureUint<S, B> fib_bit(B& ctx, const SecureUint<S, B>& in, int max_iter) {
    auto i = SecureUint<S, B>::constant(ctx, 0);
    auto one = SecureUint<S, B>::constant(ctx, 1);
    auto a = SecureUint<S, B>::constant(ctx, 0);
    auto b = SecureUint<S, B>::constant(ctx, 1);
    auto r = SecureUint<S, B>::constant(ctx, 0);
    for (int k = 0; k < max_iter; ++k) {
        r = r + (i == in) * a;
        auto next = a + b;
        b = a;
        a = next;
        i = i + one;
    }
    return r;
}

template <std::size_t S, HomomorphicBackend B>
SecureMod<B> fib_bridged(B& ctx, const SecureUint<S, B>& in, int max_iter) {
    auto i = SecureUint<S, B>::constant(ctx, 0);
    auto one = SecureUint<S, B>::constant(ctx, 1);
    auto a = SecureMod<B>::constant(ctx, 0);
    auto b = SecureMod<B>::constant(ctx, 1);
    auto r = SecureMod<B>::constant(ctx, 0);
    for (int k = 0; k < max_iter; ++k) {
        r = r + (i == in) * a;
        auto next = a + b;
        b = a;
        a = next;
        i = i + one;
    }
    return r;
}

template <std::size_t S, HomomorphicBackend B>
SecureUint<S, B> pks_bit(B& ctx, const std::vector<SecureUint<S, B>>& v,
                         const SecureUint<S, B>& k) {
    std::vector<SecureUint<S, B>> r;
    for (std::size_t i = 0; i < v.size(); ++i) {
        auto eq = SecureUint<S, B>::constant(ctx, i) == k;
        r.push_back(eq * v[i]);
    }
    return sum(r);
}

template <std::size_t S, HomomorphicBackend B>
SecureMod<B> pks_bridged(B& ctx, const std::vector<SecureUint<S, B>>& v,
                         const SecureUint<S, B>& k) {
    std::vector<SecureMod<B>> r;
    for (std::size_t i = 0; i < v.size(); ++i) {
        auto eq = SecureUint<S, B>::constant(ctx, i) == k;
        r.push_back(eq * SecureMod<B>(v[i]));
    }
    return sum(r);
}

// MAX selects by the product of pairwise comparison indicators; the element
// that wins every comparison keeps an all-ones product. Requires distinct
// values (a duplicated maximum zeroes every product).
template <std::size_t S, HomomorphicBackend B>
SecureUint<S, B> max_bit(B& ctx, const std::vector<SecureUint<S, B>>& v) {
    std::size_t size = v.size();
    std::vector<std::vector<SecureUint<S, B>>> m(size);
    std::vector<SecureUint<S, B>> idx;
    for (std::size_t i = 0; i < size; ++i) {
        for (std::size_t j = i + 1; j < size; ++j) {
            auto cond = v[i] > v[j];
            m[i].push_back(SecureUint<S, B>(cond));
            m[j].push_back(SecureUint<S, B>(!cond));
        }
        idx.push_back(m[i].empty() ? SecureUint<S, B>::constant(ctx, 1) : product(m[i]));
    }
    std::vector<SecureUint<S, B>> r;
    for (std::size_t i = 0; i < size; ++i) r.push_back(idx[i] * v[i]);
    return sum(r);
}

template <std::size_t S, HomomorphicBackend B>
SecureMod<B> max_bridged(B& ctx, const std::vector<SecureUint<S, B>>& v) {
    std::size_t size = v.size();
    std::vector<std::vector<SecureMod<B>>> m(size);
    std::vector<SecureMod<B>> idx;
    for (std::size_t i = 0; i < size; ++i) {
        for (std::size_t j = i + 1; j < size; ++j) {
            auto cond = v[i] > v[j];
            m[i].push_back(SecureMod<B>(cond));
            m[j].push_back(SecureMod<B>(!cond));
        }
        idx.push_back(m[i].empty() ? SecureMod<B>::constant(ctx, 1) : product(m[i]));
    }
    std::vector<SecureMod<B>> r;
    for (std::size_t i = 0; i < size; ++i) r.push_back(idx[i] * SecureMod<B>(v[i]));
    return sum(r);
}

template <std::size_t S, HomomorphicBackend B>
SecureUint<S, B> mux_bit(B&, const SecureUint<S, B>& input, const SecureUint<S, B>& item,
                         const SecureUint<S, B>& tval, const SecureUint<S, B>& fval) {
    auto cond = input == item;
    return cond * tval + (!cond) * fval;
}

template <std::size_t S, HomomorphicBackend B>
SecureMod<B> mux_bridged(B&, const SecureUint<S, B>& input, const SecureUint<S, B>& item,
                         const SecureUint<S, B>& tval, const SecureUint<S, B>& fval) {
    auto cond = input == item;
    return cond * SecureMod<B>(tval) + (!cond) * SecureMod<B>(fval);
}

namespace detail {

// Ranks: element i accumulates one point per pairwise win; with distinct
// values the ranks are a permutation of 0..size-1.
template <std::size_t S, HomomorphicBackend B>
std::vector<SecureUint<S, B>> sort_ranks(B& ctx, const std::vector<SecureUint<S, B>>& v) {
    std::size_t size = v.size();
    std::vector<std::vector<SecureUint<S, B>>> m(size);
    std::vector<SecureUint<S, B>> idx;
    for (std::size_t i = 0; i < size; ++i) {
        for (std::size_t j = i + 1; j < size; ++j) {
            auto cond = v[i] > v[j];
            m[i].push_back(SecureUint<S, B>(cond));
            m[j].push_back(SecureUint<S, B>(!cond));
        }
        idx.push_back(m[i].empty() ? SecureUint<S, B>::constant(ctx, 0) : sum(m[i]));
    }
    return idx;
}

}  // namespace detail

template <std::size_t S, HomomorphicBackend B>
std::vector<SecureUint<S, B>> sor_bit(B& ctx, const std::vector<SecureUint<S, B>>& v) {
    auto idx = detail::sort_ranks(ctx, v);
    std::vector<SecureUint<S, B>> r;
    for (std::size_t i = 0; i < v.size(); ++i) {
        std::vector<SecureUint<S, B>> terms;
        for (std::size_t j = 0; j < v.size(); ++j) {
            auto eq = SecureUint<S, B>::constant(ctx, i) == idx[j];
            terms.push_back(eq * v[j]);
        }
        r.push_back(sum(terms));
    }
    return r;
}

template <std::size_t S, HomomorphicBackend B>
std::vector<SecureMod<B>> sor_bridged(B& ctx, const std::vector<SecureUint<S, B>>& v) {
    auto idx = detail::sort_ranks(ctx, v);
    std::vector<SecureMod<B>> vm;
    for (const auto& e : v) vm.push_back(SecureMod<B>(e));
    std::vector<SecureMod<B>> r;
    for (std::size_t i = 0; i < v.size(); ++i) {
        std::vector<SecureMod<B>> terms;
        for (std::size_t j = 0; j < v.size(); ++j) {
            auto eq = SecureUint<S, B>::constant(ctx, i) == idx[j];
            terms.push_back(eq * vm[j]);
        }
        r.push_back(sum(terms));
    }
    return r;
}

// Caps the filtered columns at the threshold: v = (v > thr) ? thr : v.
template <std::size_t S, HomomorphicBackend B>
std::vector<std::vector<SecureUint<S, B>>> logreg_filter(
    B&, std::vector<std::vector<SecureUint<S, B>>> m, const SecureUint<S, B>& threshold,
    const std::vector<std::size_t>& pos) {
    for (auto idx : pos) {
        for (auto& row : m) {
            auto cond = row[idx] > threshold;
            row[idx] = cond * threshold + (!cond) * row[idx];
        }
    }
    return m;
}

template <std::size_t S, HomomorphicBackend B>
std::vector<std::vector<SecureUint<S, B>>> logreg_bit(
    B& ctx, std::vector<std::vector<SecureUint<S, B>>> inputs,
    const std::vector<std::vector<SecureUint<S, B>>>& weights,
    const SecureUint<S, B>& threshold, const std::vector<std::size_t>& pos) {
    inputs = logreg_filter(ctx, std::move(inputs), threshold, pos);
    for (auto& row : inputs) row.push_back(SecureUint<S, B>::constant(ctx, 1));
    std::vector<std::vector<SecureUint<S, B>>> out(inputs.size());
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        for (std::size_t j = 0; j < weights[0].size(); ++j) {
            std::vector<SecureUint<S, B>> terms;
            for (std::size_t k = 0; k < weights.size(); ++k)
                terms.push_back(inputs[i][k] * weights[k][j]);
            out[i].push_back(sum(terms));
        }
    }
    return out;
}

template <std::size_t S, HomomorphicBackend B>
std::vector<std::vector<SecureMod<B>>> logreg_bridged(
    B& ctx, std::vector<std::vector<SecureUint<S, B>>> inputs,
    const std::vector<std::vector<SecureMod<B>>>& weights, const SecureUint<S, B>& threshold,
    const std::vector<std::size_t>& pos) {
    inputs = logreg_filter(ctx, std::move(inputs), threshold, pos);
    std::vector<std::vector<SecureMod<B>>> converted(inputs.size());
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        for (const auto& e : inputs[i]) converted[i].push_back(SecureMod<B>(e));
        converted[i].push_back(SecureMod<B>::constant(ctx, 1));
    }
    std::vector<std::vector<SecureMod<B>>> out(converted.size());
    for (std::size_t i = 0; i < converted.size(); ++i) {
        for (std::size_t j = 0; j < weights[0].size(); ++j) {
            std::vector<SecureMod<B>> terms;
            for (std::size_t k = 0; k < weights.size(); ++k)
                terms.push_back(converted[i][k] * weights[k][j]);
            out[i].push_back(sum(terms));
        }
    }
    return out;
}

// ---- instances and the plaintext oracle -------------------------------------

struct BenchInstance {
    // fib:  {in}
    // pks:  {v[0..7], k}
    // max:  {v[0..3]}      sor: {v[0..3]}
    // mux:  {input, item, tval, fval}
    // log:  {inputs[16] row-major, threshold, weights[10] row-major 5x2}
    std::vector<std::uint64_t> values;
};

inline BenchInstance gen_instance(BenchmarkId id, int bits, std::mt19937_64& rng) {
    std::uint64_t range = 1ULL << bits;
    auto uniform = [&](std::uint64_t lo, std::uint64_t hi) {
        return std::uniform_int_distribution<std::uint64_t>(lo, hi - 1)(rng);
    };
    BenchInstance inst;
    switch (id) {
        case BenchmarkId::fib:
            inst.values.push_back(uniform(0, kFibMaxIter));
            break;
        case BenchmarkId::pks:
            for (std::size_t i = 0; i < kPksLength; ++i) inst.values.push_back(uniform(0, range));
            inst.values.push_back(uniform(0, kPksLength));
            break;
        case BenchmarkId::max:
        case BenchmarkId::sor:
            // distinct by construction
            while (inst.values.size() < kVectorLength) {
                std::uint64_t x = uniform(0, range);
                bool fresh = true;
                for (auto v : inst.values) fresh = fresh && v != x;
                if (fresh) inst.values.push_back(x);
            }
            break;
        case BenchmarkId::mux: {
            std::uint64_t item = uniform(0, range);
            std::uint64_t input = uniform(0, 2) ? item : uniform(0, range);
            inst.values = {input, item, uniform(0, range), uniform(0, range)};
            break;
        }
        case BenchmarkId::logreg: {
            std::uint64_t cap = std::min<std::uint64_t>(range, 8);
            for (std::size_t i = 0; i < kLogRows * kLogCols; ++i)
                inst.values.push_back(uniform(0, cap));
            inst.values.push_back(uniform(1, cap));
            for (std::size_t i = 0; i < (kLogCols + 1) * kLogOut; ++i)
                inst.values.push_back(uniform(0, cap));
            break;
        }
    }
    return inst;
}

// Reference semantics on ordinary integers. Arithmetic is reduced after every
// step; comparisons act on the raw input values (which fit the word width, so
// the circuit sees the same ordering).
inline std::vector<std::uint64_t> run_plain(BenchmarkId id, const BenchInstance& inst,
                                            std::uint64_t modulus) {
    const auto& in = inst.values;
    auto mod = [&](std::uint64_t x) { return x % modulus; };
    switch (id) {
        case BenchmarkId::fib: {
            std::uint64_t i = 0, a = 0, b = 1, r = 0;
            for (int k = 0; k < kFibMaxIter; ++k) {
                r = mod(r + (i == in[0] ? a : 0));
                std::uint64_t next = mod(a + b);
                b = a;
                a = next;
                ++i;
            }
            return {r};
        }
        case BenchmarkId::pks: {
            std::uint64_t r = 0;
            for (std::size_t i = 0; i < kPksLength; ++i)
                r = mod(r + (i == in[kPksLength] ? in[i] : 0));
            return {r};
        }
        case BenchmarkId::max: {
            std::uint64_t r = 0;
            for (std::size_t i = 0; i < kVectorLength; ++i) {
                std::uint64_t prod = 1;
                for (std::size_t j = 0; j < kVectorLength; ++j)
                    if (j != i) prod = mod(prod * (in[i] > in[j] ? 1 : 0));
                r = mod(r + mod(prod * mod(in[i])));
            }
            return {r};
        }
        case BenchmarkId::mux:
            return {mod(in[0] == in[1] ? in[2] : in[3])};
        case BenchmarkId::sor: {
            std::vector<std::uint64_t> rank(kVectorLength, 0);
            for (std::size_t i = 0; i < kVectorLength; ++i)
                for (std::size_t j = 0; j < kVectorLength; ++j)
                    if (j != i && in[i] > in[j]) ++rank[i];
            std::vector<std::uint64_t> out(kVectorLength, 0);
            for (std::size_t i = 0; i < kVectorLength; ++i)
                for (std::size_t j = 0; j < kVectorLength; ++j)
                    if (rank[j] == i) out[i] = mod(out[i] + mod(in[j]));
            return out;
        }
        case BenchmarkId::logreg: {
            std::uint64_t threshold = in[kLogRows * kLogCols];
            const std::uint64_t* w = &in[kLogRows * kLogCols + 1];
            std::vector<std::vector<std::uint64_t>> m(kLogRows,
                                                      std::vector<std::uint64_t>(kLogCols + 1));
            for (std::size_t i = 0; i < kLogRows; ++i) {
                for (std::size_t j = 0; j < kLogCols; ++j) {
                    std::uint64_t v = in[i * kLogCols + j];
                    if (j == 0 && v > threshold) v = threshold;  // pos = {0}
                    m[i][j] = mod(v);
                }
                m[i][kLogCols] = mod(1);
            }
            std::vector<std::uint64_t> out;
            for (std::size_t i = 0; i < kLogRows; ++i) {
                for (std::size_t j = 0; j < kLogOut; ++j) {
                    std::uint64_t acc = 0;
                    for (std::size_t k = 0; k <= kLogCols; ++k)
                        acc = mod(acc + mod(m[i][k] * mod(w[k * kLogOut + j])));
                    out.push_back(acc);
                }
            }
            return out;
        }
    }
    return {};
}

// ---- metering harness -------------------------------------------------------

namespace detail {

template <std::size_t S, HomomorphicBackend B>
std::vector<SecureUint<S, B>> encrypt_column(B& ctx, const std::vector<BenchInstance>& inst,
                                             std::size_t offset, std::size_t count) {
    std::vector<SecureUint<S, B>> words;
    for (std::size_t i = 0; i < count; ++i) {
        std::vector<std::uint64_t> slot_vals;
        slot_vals.reserve(inst.size());
        for (const auto& one : inst) slot_vals.push_back(one.values[offset + i]);
        words.push_back(SecureUint<S, B>::encrypt_slots(ctx, slot_vals));
    }
    return words;
}

template <std::size_t S, HomomorphicBackend B>
std::vector<std::vector<std::uint64_t>> run_typed(B& ctx, const BenchmarkSpec& spec,
                                                  const std::vector<BenchInstance>& inst,
                                                  bool& corrupted) {
    auto take = [&](const DecryptResult& d) {
        corrupted = corrupted || d.corrupted;
        return d.values;
    };
    std::vector<std::vector<std::uint64_t>> outputs;
    switch (spec.benchmark) {
        case BenchmarkId::fib: {
            auto in = encrypt_column<S>(ctx, inst, 0, 1)[0];
            if (spec.mode == BenchMode::bit)
                outputs.push_back(take(fib_bit(ctx, in, kFibMaxIter).decrypt()));
            else
                outputs.push_back(take(fib_bridged(ctx, in, kFibMaxIter).decrypt()));
            break;
        }
        case BenchmarkId::pks: {
            auto v = encrypt_column<S>(ctx, inst, 0, kPksLength);
            auto k = encrypt_column<S>(ctx, inst, kPksLength, 1)[0];
            if (spec.mode == BenchMode::bit)
                outputs.push_back(take(pks_bit(ctx, v, k).decrypt()));
            else
                outputs.push_back(take(pks_bridged(ctx, v, k).decrypt()));
            break;
        }
        case BenchmarkId::max: {
            auto v = encrypt_column<S>(ctx, inst, 0, kVectorLength);
            if (spec.mode == BenchMode::bit)
                outputs.push_back(take(max_bit(ctx, v).decrypt()));
            else
                outputs.push_back(take(max_bridged(ctx, v).decrypt()));
            break;
        }
        case BenchmarkId::mux: {
            auto w = encrypt_column<S>(ctx, inst, 0, 4);
            if (spec.mode == BenchMode::bit)
                outputs.push_back(take(mux_bit(ctx, w[0], w[1], w[2], w[3]).decrypt()));
            else
                outputs.push_back(take(mux_bridged(ctx, w[0], w[1], w[2], w[3]).decrypt()));
            break;
        }
        case BenchmarkId::sor: {
            auto v = encrypt_column<S>(ctx, inst, 0, kVectorLength);
            if (spec.mode == BenchMode::bit) {
                for (auto& out : sor_bit(ctx, v)) outputs.push_back(take(out.decrypt()));
            } else {
                for (auto& out : sor_bridged(ctx, v)) outputs.push_back(take(out.decrypt()));
            }
            break;
        }
        case BenchmarkId::logreg: {
            auto flat = encrypt_column<S>(ctx, inst, 0, kLogRows * kLogCols);
            std::vector<std::vector<SecureUint<S, B>>> inputs;
            for (std::size_t i = 0; i < kLogRows; ++i)
                inputs.emplace_back(flat.begin() + i * kLogCols, flat.begin() + (i + 1) * kLogCols);
            auto threshold = encrypt_column<S>(ctx, inst, kLogRows * kLogCols, 1)[0];
            std::vector<std::size_t> pos = {0};
            std::size_t woff = kLogRows * kLogCols + 1;
            if (spec.mode == BenchMode::bit) {
                auto wflat = encrypt_column<S>(ctx, inst, woff, (kLogCols + 1) * kLogOut);
                std::vector<std::vector<SecureUint<S, B>>> weights;
                for (std::size_t k = 0; k <= kLogCols; ++k)
                    weights.emplace_back(wflat.begin() + k * kLogOut,
                                         wflat.begin() + (k + 1) * kLogOut);
                for (auto& row : logreg_bit(ctx, inputs, weights, threshold, pos))
                    for (auto& out : row) outputs.push_back(take(out.decrypt()));
            } else {
                std::vector<std::vector<SecureMod<B>>> weights(kLogCols + 1);
                for (std::size_t k = 0; k <= kLogCols; ++k) {
                    for (std::size_t j = 0; j < kLogOut; ++j) {
                        std::vector<std::int64_t> slot_vals;
                        for (const auto& one : inst)
                            slot_vals.push_back(static_cast<std::int64_t>(
                                one.values[woff + k * kLogOut + j]));
                        weights[k].push_back(SecureMod<B>::encrypt_slots(ctx, slot_vals));
                    }
                }
                for (auto& row : logreg_bridged(ctx, inputs, weights, threshold, pos))
                    for (auto& out : row) outputs.push_back(take(out.decrypt()));
            }
            break;
        }
    }
    return outputs;
}

}  // namespace detail

// Runs one benchmark over explicit instances (one per slot).
template <HomomorphicBackend B>
BenchResult run_benchmark_on(B& ctx, const BenchmarkSpec& spec,
                             const std::vector<BenchInstance>& inst) {
    if (spec.bits != 4 && spec.bits != 8 && spec.bits != 16)
        throw std::invalid_argument("benchmark width must be 4, 8 or 16");
    if (inst.size() != ctx.slot_count())
        throw std::invalid_argument("expected one instance per slot");

    BenchResult result;
    result.slots_used = ctx.slot_count();
    CostReport before = ctx.meter_snapshot();
    auto t0 = std::chrono::steady_clock::now();
    switch (spec.bits) {
        case 4:
            result.outputs = detail::run_typed<4>(ctx, spec, inst, result.corrupted);
            break;
        case 8:
            result.outputs = detail::run_typed<8>(ctx, spec, inst, result.corrupted);
            break;
        default:
            result.outputs = detail::run_typed<16>(ctx, spec, inst, result.corrupted);
            break;
    }
    auto t1 = std::chrono::steady_clock::now();
    result.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    result.amortized_ms = result.wall_ms / static_cast<double>(result.slots_used);
    result.cost = ctx.meter_snapshot().delta_since(before);
    return result;
}

// Seeded entry point: one independent random instance per slot.
template <HomomorphicBackend B>
BenchResult run_benchmark(B& ctx, const BenchmarkSpec& spec) {
    std::mt19937_64 rng(spec.seed);
    std::vector<BenchInstance> inst;
    inst.reserve(ctx.slot_count());
    for (std::size_t j = 0; j < ctx.slot_count(); ++j)
        inst.push_back(gen_instance(spec.benchmark, spec.bits, rng));
    return run_benchmark_on(ctx, spec, inst);
}

// Oracle outputs for the instances a given (spec, slot count) run generates.
inline std::vector<std::vector<std::uint64_t>> oracle_outputs(const BenchmarkSpec& spec,
                                                              std::size_t slots,
                                                              std::uint64_t t) {
    std::uint64_t modulus = spec.mode == BenchMode::bit ? (1ULL << spec.bits) : t;
    std::mt19937_64 rng(spec.seed);
    std::vector<std::vector<std::uint64_t>> per_slot;
    for (std::size_t j = 0; j < slots; ++j)
        per_slot.push_back(run_plain(spec.benchmark, gen_instance(spec.benchmark, spec.bits, rng),
                                     modulus));
    // transpose to [output index][slot]
    std::vector<std::vector<std::uint64_t>> out(per_slot[0].size(),
                                                std::vector<std::uint64_t>(slots));
    for (std::size_t j = 0; j < slots; ++j)
        for (std::size_t k = 0; k < per_slot[j].size(); ++k) out[k][j] = per_slot[j][k];
    return out;
}

}  // namespace fhebridge
