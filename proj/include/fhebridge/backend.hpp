// Homomorphic backend contract and the cost-metering tracked-plaintext backend.
#pragma once

#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace fhebridge {

struct BackendParams {
    std::uint64_t t = 65537;   // plaintext modulus
    std::size_t slots = 1;     // plaintexts packed per ciphertext
    int noise_budget_0 = 880;  // simulated fresh noise budget, in bits
};

// Counts ciphertext-ciphertext ops only; mixed plaintext-constant ops are
// metered separately so the two never blur in cost comparisons.
struct CostReport {
    std::uint64_t ct_adds = 0;
    std::uint64_t ct_mults = 0;
    std::uint64_t pt_ops = 0;
    int max_mult_depth = 0;
    int max_add_depth = 0;

    CostReport delta_since(const CostReport& base) const {
        CostReport d;
        d.ct_adds = ct_adds - base.ct_adds;
        d.ct_mults = ct_mults - base.ct_mults;
        d.pt_ops = pt_ops - base.pt_ops;
        d.max_mult_depth = max_mult_depth;
        d.max_add_depth = max_add_depth;
        return d;
    }
};

struct DecryptResult {
    std::vector<std::uint64_t> values;  // canonical residues in [0, t)
    bool corrupted = false;
};

class CostMeter {
public:
    void count_add() { ++report_.ct_adds; }
    void count_mult() { ++report_.ct_mults; }
    void count_pt() { ++report_.pt_ops; }
    void observe_depths(int mult_depth, int add_depth) {
        if (mult_depth > report_.max_mult_depth) report_.max_mult_depth = mult_depth;
        if (add_depth > report_.max_add_depth) report_.max_add_depth = add_depth;
    }
    const CostReport& snapshot() const { return report_; }

private:
    CostReport report_;
};

template <typename B>
concept HomomorphicBackend = requires(B b, const typename B::Ciphertext& c,
                                      std::int64_t k, std::vector<std::int64_t> v) {
    { b.encrypt(v) } -> std::same_as<typename B::Ciphertext>;
    { b.encrypt_const(k) } -> std::same_as<typename B::Ciphertext>;
    { b.decrypt(c) } -> std::same_as<DecryptResult>;
    { b.add(c, c) } -> std::same_as<typename B::Ciphertext>;
    { b.sub(c, c) } -> std::same_as<typename B::Ciphertext>;
    { b.mul(c, c) } -> std::same_as<typename B::Ciphertext>;
    { b.add_plain(c, k) } -> std::same_as<typename B::Ciphertext>;
    { b.sub_plain(c, k) } -> std::same_as<typename B::Ciphertext>;
    { b.plain_sub(k, c) } -> std::same_as<typename B::Ciphertext>;
    { b.mul_plain(c, k) } -> std::same_as<typename B::Ciphertext>;
    { b.plain_modulus() } -> std::convertible_to<std::uint64_t>;
    { b.slot_count() } -> std::convertible_to<std::size_t>;
    { b.supports_batching() } -> std::convertible_to<bool>;
    { b.meter_snapshot() } -> std::same_as<CostReport>;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace detail

// Reference backend: ciphertexts hold their residues in the clear and every
// homomorphic operation is exact modular arithmetic plus bookkeeping (op
// counters, depth, simulated noise). One instance is one evaluation context.
class PlainBackend {
public:
    struct Ciphertext {
        std::vector<std::uint64_t> payload;  // one residue per slot, in [0, t)
        int mult_depth = 0;
        int add_depth = 0;
        std::int64_t noise_halves = 0;  // simulated budget in half-bit units
        const PlainBackend* owner = nullptr;
    };

    explicit PlainBackend(BackendParams params, std::uint64_t seed = 0)
        : params_(params), seed_(seed) {
        if (params_.t < 2) throw std::invalid_argument("plaintext modulus must be >= 2");
        if (params_.t > 0xffffffffULL)
            throw std::invalid_argument("plaintext modulus must fit in 32 bits");
        if (params_.slots < 1) throw std::invalid_argument("slot count must be >= 1");
        if (params_.noise_budget_0 < 0)
            throw std::invalid_argument("noise budget must be non-negative");
    }

    PlainBackend(const PlainBackend&) = delete;
    PlainBackend& operator=(const PlainBackend&) = delete;

    std::uint64_t plain_modulus() const { return params_.t; }
    std::size_t slot_count() const { return params_.slots; }
    bool supports_batching() const { return true; }
    const BackendParams& params() const { return params_; }

    Ciphertext encrypt(const std::vector<std::int64_t>& values) {
        if (values.size() != params_.slots)
            throw std::invalid_argument("encrypt: expected one value per slot");
        Ciphertext c;
        c.payload.reserve(values.size());
        for (std::int64_t v : values) c.payload.push_back(reduce(v));
        c.noise_halves = 2LL * params_.noise_budget_0;
        c.owner = this;
        meter_.observe_depths(0, 0);
        return c;
    }

    // Trivial encryption of a program constant; not a homomorphic op, so the
    // meter does not move.
    Ciphertext encrypt_const(std::int64_t k) {
        Ciphertext c;
        c.payload.assign(params_.slots, reduce(k));
        c.noise_halves = 2LL * params_.noise_budget_0;
        c.owner = this;
        return c;
    }

    DecryptResult decrypt(const Ciphertext& c) const {
        check_owner(c);
        DecryptResult r;
        if (c.noise_halves < 0) {
            r.corrupted = true;
            r.values.reserve(c.payload.size());
            for (std::size_t i = 0; i < c.payload.size(); ++i) {
                std::uint64_t junk = detail::splitmix64(seed_ ^ (c.payload[i] + i + 1));
                r.values.push_back(junk % params_.t);
            }
        } else {
            r.values = c.payload;
        }
        return r;
    }

    Ciphertext add(const Ciphertext& a, const Ciphertext& b) { return add_sub(a, b, false); }
    Ciphertext sub(const Ciphertext& a, const Ciphertext& b) { return add_sub(a, b, true); }

    Ciphertext mul(const Ciphertext& a, const Ciphertext& b) {
        check_owner(a);
        check_owner(b);
        Ciphertext c;
        c.payload.resize(params_.slots);
        for (std::size_t i = 0; i < params_.slots; ++i)
            c.payload[i] = (a.payload[i] * b.payload[i]) % params_.t;
        c.mult_depth = std::max(a.mult_depth, b.mult_depth) + 1;
        c.add_depth = std::max(a.add_depth, b.add_depth);
        c.noise_halves = std::min(a.noise_halves, b.noise_halves) - 2 * kMulCostBits;
        c.owner = this;
        meter_.count_mult();
        meter_.observe_depths(c.mult_depth, c.add_depth);
        return c;
    }

    Ciphertext add_plain(const Ciphertext& a, std::int64_t k) {
        return plain_op(a, [&](std::uint64_t x) { return (x + reduce(k)) % params_.t; });
    }
    Ciphertext sub_plain(const Ciphertext& a, std::int64_t k) {
        return plain_op(a, [&](std::uint64_t x) { return (x + params_.t - reduce(k)) % params_.t; });
    }
    Ciphertext plain_sub(std::int64_t k, const Ciphertext& a) {
        return plain_op(a, [&](std::uint64_t x) { return (reduce(k) + params_.t - x) % params_.t; });
    }
    Ciphertext mul_plain(const Ciphertext& a, std::int64_t k) {
        return plain_op(a, [&](std::uint64_t x) { return (x * reduce(k)) % params_.t; });
    }

    CostReport meter_snapshot() const { return meter_.snapshot(); }

private:
    static constexpr int kMulCostBits = 30;

    std::uint64_t reduce(std::int64_t v) const {
        std::int64_t t = static_cast<std::int64_t>(params_.t);
        std::int64_t r = v % t;
        if (r < 0) r += t;
        return static_cast<std::uint64_t>(r);
    }

    void check_owner(const Ciphertext& c) const {
        if (c.owner != this)
            throw std::invalid_argument("ciphertext belongs to a different context");
    }

    Ciphertext add_sub(const Ciphertext& a, const Ciphertext& b, bool negate) {
        check_owner(a);
        check_owner(b);
        Ciphertext c;
        c.payload.resize(params_.slots);
        for (std::size_t i = 0; i < params_.slots; ++i) {
            std::uint64_t rhs = negate ? params_.t - b.payload[i] : b.payload[i];
            c.payload[i] = (a.payload[i] + rhs) % params_.t;
        }
        c.mult_depth = std::max(a.mult_depth, b.mult_depth);
        c.add_depth = std::max(a.add_depth, b.add_depth) + 1;
        c.noise_halves = std::min(a.noise_halves, b.noise_halves) - 1;
        c.owner = this;
        meter_.count_add();
        meter_.observe_depths(c.mult_depth, c.add_depth);
        return c;
    }

    template <typename F>
    Ciphertext plain_op(const Ciphertext& a, F&& f) {
        check_owner(a);
        Ciphertext c = a;
        for (auto& x : c.payload) x = f(x);
        meter_.count_pt();
        meter_.observe_depths(c.mult_depth, c.add_depth);
        return c;
    }

    BackendParams params_;
    std::uint64_t seed_;
    CostMeter meter_;
};

static_assert(HomomorphicBackend<PlainBackend>);

}  // namespace fhebridge
