// Bridged type system: SecureUint/SecureInt (bit-level words), SecureBool,
// SecureMod (native residues), and the conversions between the two arithmetic
// modes with closed-form operation costs.
#pragma once

#include <bit>

#include "fhebridge/circuits.hpp"

namespace fhebridge {

namespace detail {

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::uint64_t mask_bits(std::uint64_t v, std::size_t s) {
    return s >= 64 ? v : (v & ((1ULL << s) - 1));
}

inline std::int64_t sign_extend(std::uint64_t v, std::size_t s) {
    std::uint64_t sign = 1ULL << (s - 1);
    return static_cast<std::int64_t>((v ^ sign) - sign);
}

}  // namespace detail

// Folds the bits of a word into one native residue by Horner's scheme,
//   (...((x_{s-1})*2 + x_{s-2})*2 + ...)*2 + x_0,
// doubling via self-addition: 2(s-1) ciphertext additions, no multiplications.
template <HomomorphicBackend B>
typename B::Ciphertext uint_to_mod_ct(B& ctx, const BitWord<B>& w) {
    auto acc = w.bits[w.width() - 1].ct;
    for (std::size_t i = w.width() - 1; i-- > 0;) {
        acc = ctx.add(acc, acc);
        acc = ctx.add(acc, w.bits[i].ct);
    }
    return acc;
}

// Signed conversion: the positive branch is the unsigned fold, the negative
// branch adds t - 2^s, and the sign bit multiplexes between them. Exactly two
// ciphertext multiplications, multiplicative depth one.
template <HomomorphicBackend B>
typename B::Ciphertext int_to_mod_ct(B& ctx, const BitWord<B>& w) {
    std::size_t s = w.width();
    std::uint64_t t = ctx.plain_modulus();
    if (s >= 64 || t < (1ULL << s))
        throw std::invalid_argument("int_to_mod requires t >= 2^s");
    auto pos = uint_to_mod_ct(ctx, w);
    auto neg = ctx.add_plain(pos, static_cast<std::int64_t>(t - (1ULL << s)));
    const auto& msb = w.bits[s - 1].ct;
    auto picked_neg = ctx.mul(msb, neg);
    auto picked_pos = ctx.mul(ctx.plain_sub(1, msb), pos);
    return ctx.add(picked_neg, picked_pos);
}

// Right-to-left square-and-multiply. floor(log2 e) squarings plus w(e)-1
// combining products, multiplicative depth ceil(log2 e).
template <HomomorphicBackend B>
typename B::Ciphertext mod_pow_ct(B& ctx, const typename B::Ciphertext& x, std::uint64_t e) {
    if (e < 1) throw std::invalid_argument("mod_pow requires exponent >= 1");
    int highest = std::bit_width(e) - 1;
    typename B::Ciphertext base = x;
    typename B::Ciphertext result = x;
    bool have_result = false;
    for (int j = 0; j <= highest; ++j) {
        if ((e >> j) & 1U) {
            result = have_result ? ctx.mul(result, base) : base;
            have_result = true;
        }
        if (j < highest) base = ctx.mul(base, base);
    }
    return result;
}

namespace detail {

// Fermat equality indicators 1 - (x - i)^(t-1) for every residue i in [0, t).
// Each indicator costs floor(log2(t-1)) + w(t-1) - 1 multiplications.
template <HomomorphicBackend B>
std::vector<typename B::Ciphertext> equality_indicators(B& ctx,
                                                        const typename B::Ciphertext& x) {
    std::uint64_t t = ctx.plain_modulus();
    std::vector<typename B::Ciphertext> ind;
    ind.reserve(t);
    for (std::uint64_t i = 0; i < t; ++i) {
        auto diff = ctx.sub_plain(x, static_cast<std::int64_t>(i));
        ind.push_back(ctx.plain_sub(1, mod_pow_ct(ctx, diff, t - 1)));
    }
    return ind;
}

template <HomomorphicBackend B>
void accumulate_word(B& ctx, std::vector<Bit<B>>& acc, const BitWord<B>& w) {
    if (acc.empty()) {
        acc = w.bits;
        return;
    }
    for (std::size_t k = 0; k < acc.size(); ++k)
        acc[k] = Bit<B>{ctx.add(acc[k].ct, w.bits[k].ct)};  // at most one term is nonzero
}

}  // namespace detail

// Linear search over all residues: indicator times the constant word i,
// summed. Only meaningful when the residue fits in s bits; a larger residue is
// silently folded mod 2^s (contract violation, undetectable under encryption).
// Costs t*(s + floor(log2(t-1)) + w(t-1) - 1) multiplications with
// multiplicative depth ceil(log2(t-1)) + 1.
template <HomomorphicBackend B>
BitWord<B> mod_to_uint_word(B& ctx, const typename B::Ciphertext& x, std::size_t s) {
    detail::check_width(s);
    std::uint64_t t = ctx.plain_modulus();
    if (!detail::is_prime(t))
        throw std::invalid_argument("mod_to_uint requires a prime plaintext modulus");
    auto indicators = detail::equality_indicators(ctx, x);
    std::vector<Bit<B>> acc;
    for (std::uint64_t i = 0; i < t; ++i) {
        auto term = circ_bool_mul(ctx, Bit<B>{indicators[i]},
                                  const_word(ctx, detail::mask_bits(i, s), s));
        detail::accumulate_word(ctx, acc, term);
    }
    return {std::move(acc)};
}

// Residue to signed word per the sign-split identity
//   Y = (1 - X_{s-1})*X + X_{s-1}*(2^s - t + X).
// Two linear-search passes (positive and shifted table), each gating its
// indicators by the sign selector before the word multiplexing. Costs
// 2t*(s + floor(log2(t-1)) + w(t-1)) multiplications with multiplicative
// depth ceil(log2(t-1)) + 2.
template <HomomorphicBackend B>
BitWord<B> mod_to_int_word(B& ctx, const typename B::Ciphertext& x, std::size_t s) {
    detail::check_width(s);
    std::uint64_t t = ctx.plain_modulus();
    if (!detail::is_prime(t))
        throw std::invalid_argument("mod_to_int requires a prime plaintext modulus");
    if (s >= 64 || (1ULL << s) < t)
        throw std::invalid_argument("mod_to_int requires 2^s >= t");

    std::uint64_t half = 1ULL << (s - 1);

    // The sign of the would-be word is decided by whether the residue lies in
    // [2^(s-1), t); at most one indicator fires, so plain sums suffice.
    auto pass_a = detail::equality_indicators(ctx, x);
    typename B::Ciphertext msb = ctx.encrypt_const(0);
    bool have_msb = false;
    for (std::uint64_t i = half; i < t; ++i) {
        msb = have_msb ? ctx.add(msb, pass_a[i]) : pass_a[i];
        have_msb = true;
    }
    auto not_msb = ctx.plain_sub(1, msb);

    std::vector<Bit<B>> acc;
    for (std::uint64_t i = 0; i < t; ++i) {
        auto gated = ctx.mul(pass_a[i], not_msb);
        auto term = circ_bool_mul(ctx, Bit<B>{gated}, const_word(ctx, i, s));
        detail::accumulate_word(ctx, acc, term);
    }

    auto pass_b = detail::equality_indicators(ctx, x);
    for (std::uint64_t i = 0; i < t; ++i) {
        auto gated = ctx.mul(pass_b[i], msb);
        auto term = circ_bool_mul(ctx, Bit<B>{gated},
                                  const_word(ctx, (1ULL << s) - t + i, s));
        detail::accumulate_word(ctx, acc, term);
    }
    return {std::move(acc)};
}

template <HomomorphicBackend B>
class SecureMod;

template <HomomorphicBackend B>
class SecureBool {
public:
    SecureBool(B& ctx, Bit<B> bit) : ctx_(&ctx), bit_(std::move(bit)) {}

    static SecureBool encrypt(B& ctx, bool v) { return {ctx, encrypt_bit(ctx, v ? 1 : 0)}; }
    static SecureBool constant(B& ctx, bool v) { return {ctx, const_bit(ctx, v ? 1 : 0)}; }

    SecureBool operator!() const { return {*ctx_, gate_not(*ctx_, bit_)}; }

    DecryptResult decrypt() const { return ctx_->decrypt(bit_.ct); }

    const Bit<B>& bit() const { return bit_; }
    B& context() const { return *ctx_; }

private:
    B* ctx_;
    Bit<B> bit_;
};

template <std::size_t S, HomomorphicBackend B>
class SecureUint {
    static_assert(S >= 1 && S <= 64);

public:
    SecureUint(B& ctx, BitWord<B> word) : ctx_(&ctx), word_(std::move(word)) {
        if (word_.width() != S) throw std::invalid_argument("word width mismatch");
    }

    // Widening a bool places it in the LSB; the upper bits are constant zero.
    explicit SecureUint(const SecureBool<B>& b) : ctx_(&b.context()) {
        word_.bits.push_back(b.bit());
        for (std::size_t i = 1; i < S; ++i) word_.bits.push_back(const_bit(*ctx_, 0));
    }

    static SecureUint encrypt(B& ctx, std::uint64_t v) {
        return {ctx, encrypt_word(ctx, detail::mask_bits(v, S), S)};
    }
    static SecureUint encrypt_slots(B& ctx, std::vector<std::uint64_t> v) {
        for (auto& x : v) x = detail::mask_bits(x, S);
        return {ctx, encrypt_word_slots(ctx, v, S)};
    }
    static SecureUint constant(B& ctx, std::uint64_t v) {
        return {ctx, const_word(ctx, detail::mask_bits(v, S), S)};
    }

    SecureUint operator+(const SecureUint& o) const { return {*ctx_, circ_add(*ctx_, word_, o.word_)}; }
    SecureUint operator-(const SecureUint& o) const { return {*ctx_, circ_sub(*ctx_, word_, o.word_)}; }
    SecureUint operator*(const SecureUint& o) const { return {*ctx_, circ_mul(*ctx_, word_, o.word_)}; }
    SecureUint operator-() const { return {*ctx_, circ_neg(*ctx_, word_)}; }

    SecureBool<B> operator==(const SecureUint& o) const { return {*ctx_, circ_eq(*ctx_, word_, o.word_)}; }
    SecureBool<B> operator!=(const SecureUint& o) const { return !(*this == o); }
    SecureBool<B> operator<(const SecureUint& o) const { return {*ctx_, circ_lt_u(*ctx_, word_, o.word_)}; }
    SecureBool<B> operator>(const SecureUint& o) const { return {*ctx_, circ_gt_u(*ctx_, word_, o.word_)}; }
    SecureBool<B> operator!() const { return {*ctx_, circ_is_zero(*ctx_, word_)}; }

    DecryptResult decrypt() const { return decrypt_word(*ctx_, word_); }

    const BitWord<B>& word() const { return word_; }
    B& context() const { return *ctx_; }

private:
    B* ctx_;
    BitWord<B> word_;
};

template <std::size_t S, HomomorphicBackend B>
class SecureInt {
    static_assert(S >= 1 && S <= 64);

public:
    SecureInt(B& ctx, BitWord<B> word) : ctx_(&ctx), word_(std::move(word)) {
        if (word_.width() != S) throw std::invalid_argument("word width mismatch");
    }

    explicit SecureInt(const SecureBool<B>& b) : ctx_(&b.context()) {
        word_.bits.push_back(b.bit());
        for (std::size_t i = 1; i < S; ++i) word_.bits.push_back(const_bit(*ctx_, 0));
    }

    static SecureInt encrypt(B& ctx, std::int64_t v) {
        return {ctx, encrypt_word(ctx, detail::mask_bits(static_cast<std::uint64_t>(v), S), S)};
    }
    static SecureInt encrypt_slots(B& ctx, const std::vector<std::int64_t>& v) {
        std::vector<std::uint64_t> raw(v.size());
        for (std::size_t i = 0; i < v.size(); ++i)
            raw[i] = detail::mask_bits(static_cast<std::uint64_t>(v[i]), S);
        return {ctx, encrypt_word_slots(ctx, raw, S)};
    }
    static SecureInt constant(B& ctx, std::int64_t v) {
        return {ctx, const_word(ctx, detail::mask_bits(static_cast<std::uint64_t>(v), S), S)};
    }

    SecureInt operator+(const SecureInt& o) const { return {*ctx_, circ_add(*ctx_, word_, o.word_)}; }
    SecureInt operator-(const SecureInt& o) const { return {*ctx_, circ_sub(*ctx_, word_, o.word_)}; }
    SecureInt operator*(const SecureInt& o) const { return {*ctx_, circ_mul(*ctx_, word_, o.word_)}; }
    SecureInt operator-() const { return {*ctx_, circ_neg(*ctx_, word_)}; }

    SecureBool<B> operator==(const SecureInt& o) const { return {*ctx_, circ_eq(*ctx_, word_, o.word_)}; }
    SecureBool<B> operator!=(const SecureInt& o) const { return !(*this == o); }
    SecureBool<B> operator<(const SecureInt& o) const { return {*ctx_, circ_lt_s(*ctx_, word_, o.word_)}; }
    SecureBool<B> operator>(const SecureInt& o) const { return {*ctx_, circ_gt_s(*ctx_, word_, o.word_)}; }
    SecureBool<B> operator!() const { return {*ctx_, circ_is_zero(*ctx_, word_)}; }

    DecryptResult decrypt() const { return decrypt_word(*ctx_, word_); }

    std::vector<std::int64_t> decrypt_signed() const {
        auto raw = decrypt();
        std::vector<std::int64_t> out(raw.values.size());
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] = detail::sign_extend(raw.values[i], S);
        return out;
    }

    const BitWord<B>& word() const { return word_; }
    B& context() const { return *ctx_; }

private:
    B* ctx_;
    BitWord<B> word_;
};

template <HomomorphicBackend B>
class SecureMod {
public:
    SecureMod(B& ctx, typename B::Ciphertext ct) : ctx_(&ctx), ct_(std::move(ct)) {}

    // A bool's bit is already a valid residue, so the cast is free.
    SecureMod(const SecureBool<B>& b) : ctx_(&b.context()), ct_(b.bit().ct) {}

    template <std::size_t S>
    explicit SecureMod(const SecureUint<S, B>& u)
        : ctx_(&u.context()), ct_(uint_to_mod_ct(u.context(), u.word())) {}

    template <std::size_t S>
    explicit SecureMod(const SecureInt<S, B>& i)
        : ctx_(&i.context()), ct_(int_to_mod_ct(i.context(), i.word())) {}

    static SecureMod encrypt(B& ctx, std::int64_t v) {
        return {ctx, ctx.encrypt(std::vector<std::int64_t>(ctx.slot_count(), v))};
    }
    static SecureMod encrypt_slots(B& ctx, const std::vector<std::int64_t>& v) {
        return {ctx, ctx.encrypt(v)};
    }
    static SecureMod constant(B& ctx, std::int64_t v) { return {ctx, ctx.encrypt_const(v)}; }

    SecureMod operator+(const SecureMod& o) const { return {*ctx_, ctx_->add(ct_, o.ct_)}; }
    SecureMod operator-(const SecureMod& o) const { return {*ctx_, ctx_->sub(ct_, o.ct_)}; }
    SecureMod operator*(const SecureMod& o) const { return {*ctx_, ctx_->mul(ct_, o.ct_)}; }

    DecryptResult decrypt() const { return ctx_->decrypt(ct_); }

    const typename B::Ciphertext& ct() const { return ct_; }
    B& context() const { return *ctx_; }

private:
    B* ctx_;
    typename B::Ciphertext ct_;
};

template <HomomorphicBackend B>
SecureMod<B> operator*(const SecureBool<B>& b, const SecureMod<B>& m) {
    return {b.context(), b.context().mul(b.bit().ct, m.ct())};
}

template <std::size_t S, HomomorphicBackend B>
SecureUint<S, B> operator*(const SecureBool<B>& b, const SecureUint<S, B>& u) {
    return {b.context(), circ_bool_mul(b.context(), b.bit(), u.word())};
}

template <std::size_t S, HomomorphicBackend B>
SecureInt<S, B> operator*(const SecureBool<B>& b, const SecureInt<S, B>& i) {
    return {b.context(), circ_bool_mul(b.context(), b.bit(), i.word())};
}

template <HomomorphicBackend B>
SecureMod<B> mod_pow(const SecureMod<B>& x, std::uint64_t e) {
    return {x.context(), mod_pow_ct(x.context(), x.ct(), e)};
}

template <std::size_t S, HomomorphicBackend B>
SecureUint<S, B> mod_to_uint(const SecureMod<B>& x) {
    return {x.context(), mod_to_uint_word(x.context(), x.ct(), S)};
}

template <std::size_t S, HomomorphicBackend B>
SecureInt<S, B> mod_to_int(const SecureMod<B>& x) {
    return {x.context(), mod_to_int_word(x.context(), x.ct(), S)};
}

// Balanced folds; the paper-style helpers used throughout the benchmarks.
template <typename T>
T sum(std::vector<T> v) {
    if (v.empty()) throw std::invalid_argument("sum of empty vector");
    while (v.size() > 1) {
        std::vector<T> next;
        next.reserve((v.size() + 1) / 2);
        for (std::size_t i = 0; i + 1 < v.size(); i += 2) next.push_back(v[i] + v[i + 1]);
        if (v.size() % 2) next.push_back(v.back());
        v = std::move(next);
    }
    return v.front();
}

template <typename T>
T product(std::vector<T> v) {
    if (v.empty()) throw std::invalid_argument("product of empty vector");
    while (v.size() > 1) {
        std::vector<T> next;
        next.reserve((v.size() + 1) / 2);
        for (std::size_t i = 0; i + 1 < v.size(); i += 2) next.push_back(v[i] * v[i + 1]);
        if (v.size() % 2) next.push_back(v.back());
        v = std::move(next);
    }
    return v.front();
}

}  // namespace fhebridge
