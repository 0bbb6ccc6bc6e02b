// Canonical combinational circuits over encrypted bits: equality, comparison,
// two's-complement add/sub/neg/mul, and word-level multiplexing. Ripple-carry
// and schoolbook structures keep operation counts analyzable.
#pragma once

#include <cstddef>

#include "fhebridge/gates.hpp"

namespace fhebridge {

// Little-endian word of encrypted bits; bits[0] is the LSB.
template <HomomorphicBackend B>
struct BitWord {
    std::vector<Bit<B>> bits;
    std::size_t width() const { return bits.size(); }
};

namespace detail {

inline void check_width(std::size_t s) {
    if (s < 1 || s > 64) throw std::invalid_argument("word width must be in [1, 64]");
}

}  // namespace detail

template <HomomorphicBackend B>
BitWord<B> encrypt_word_slots(B& ctx, const std::vector<std::uint64_t>& values, std::size_t s) {
    detail::check_width(s);
    if (values.size() != ctx.slot_count())
        throw std::invalid_argument("encrypt_word_slots: expected one value per slot");
    BitWord<B> w;
    w.bits.reserve(s);
    for (std::size_t i = 0; i < s; ++i) {
        std::vector<std::int64_t> slot_bits(values.size());
        for (std::size_t j = 0; j < values.size(); ++j)
            slot_bits[j] = static_cast<std::int64_t>((values[j] >> i) & 1U);
        w.bits.push_back(encrypt_bit(ctx, slot_bits));
    }
    return w;
}

template <HomomorphicBackend B>
BitWord<B> encrypt_word(B& ctx, std::uint64_t value, std::size_t s) {
    return encrypt_word_slots(ctx, std::vector<std::uint64_t>(ctx.slot_count(), value), s);
}

// Trivially encrypted program constant (free of homomorphic ops).
template <HomomorphicBackend B>
BitWord<B> const_word(B& ctx, std::uint64_t value, std::size_t s) {
    detail::check_width(s);
    BitWord<B> w;
    w.bits.reserve(s);
    for (std::size_t i = 0; i < s; ++i)
        w.bits.push_back(const_bit(ctx, static_cast<int>((value >> i) & 1U)));
    return w;
}

template <HomomorphicBackend B>
DecryptResult decrypt_word(B& ctx, const BitWord<B>& w) {
    DecryptResult out;
    out.values.assign(ctx.slot_count(), 0);
    for (std::size_t i = 0; i < w.width(); ++i) {
        DecryptResult bit = ctx.decrypt(w.bits[i].ct);
        out.corrupted = out.corrupted || bit.corrupted;
        for (std::size_t j = 0; j < bit.values.size(); ++j)
            out.values[j] |= bit.values[j] << i;
    }
    return out;
}

namespace detail {

template <HomomorphicBackend B>
void check_same_width(const BitWord<B>& a, const BitWord<B>& b) {
    if (a.width() != b.width()) throw std::invalid_argument("word width mismatch");
}

// Balanced AND reduction; n-1 AND gates for n bits.
template <HomomorphicBackend B>
Bit<B> and_reduce(B& ctx, std::vector<Bit<B>> v) {
    while (v.size() > 1) {
        std::vector<Bit<B>> next;
        next.reserve((v.size() + 1) / 2);
        for (std::size_t i = 0; i + 1 < v.size(); i += 2)
            next.push_back(gate_and(ctx, v[i], v[i + 1]));
        if (v.size() % 2) next.push_back(v.back());
        v = std::move(next);
    }
    return v.front();
}

// Ripple sum of two equal-width bit vectors mod 2^width. The carry out of the
// top bit is dropped, and the top bit therefore needs only its sum gates.
template <HomomorphicBackend B>
std::vector<Bit<B>> ripple_add(B& ctx, const std::vector<Bit<B>>& a,
                               const std::vector<Bit<B>>& b) {
    std::size_t w = a.size();
    std::vector<Bit<B>> sum;
    sum.reserve(w);
    if (w == 1) {
        sum.push_back(gate_xor(ctx, a[0], b[0]));
        return sum;
    }
    sum.push_back(gate_xor(ctx, a[0], b[0]));
    Bit<B> carry = gate_and(ctx, a[0], b[0]);
    for (std::size_t i = 1; i + 1 < w; ++i) {
        Bit<B> d = gate_xor(ctx, a[i], b[i]);
        sum.push_back(gate_xor(ctx, d, carry));
        Bit<B> gen = gate_and(ctx, a[i], b[i]);
        Bit<B> prop = gate_and(ctx, d, carry);
        carry = Bit<B>{ctx.add(gen.ct, prop.ct)};  // disjoint, plain sum is an OR
    }
    Bit<B> d = gate_xor(ctx, a[w - 1], b[w - 1]);
    sum.push_back(gate_xor(ctx, d, carry));
    return sum;
}

}  // namespace detail

// Equality: s XNOR gates into a balanced AND tree, 2s-1 ciphertext
// multiplications for generic t and s-1 when t=2.
template <HomomorphicBackend B>
Bit<B> circ_eq(B& ctx, const BitWord<B>& a, const BitWord<B>& b) {
    detail::check_same_width(a, b);
    std::vector<Bit<B>> eq_bits;
    eq_bits.reserve(a.width());
    for (std::size_t i = 0; i < a.width(); ++i)
        eq_bits.push_back(gate_xnor(ctx, a.bits[i], b.bits[i]));
    return detail::and_reduce(ctx, std::move(eq_bits));
}

namespace detail {

// MSB-down ripple comparator carrying (all-equal-so-far, greater) state.
// signed_msb flips the sign-bit comparison for two's complement.
template <HomomorphicBackend B>
Bit<B> ripple_gt(B& ctx, const BitWord<B>& a, const BitWord<B>& b, bool signed_msb) {
    check_same_width(a, b);
    std::size_t s = a.width();
    std::size_t msb = s - 1;
    Bit<B> gt = signed_msb ? gate_and(ctx, gate_not(ctx, a.bits[msb]), b.bits[msb])
                           : gate_and(ctx, a.bits[msb], gate_not(ctx, b.bits[msb]));
    if (s == 1) return gt;
    Bit<B> eq = gate_xnor(ctx, a.bits[msb], b.bits[msb]);
    for (std::size_t i = s - 1; i-- > 0;) {
        Bit<B> bit_gt = gate_and(ctx, a.bits[i], gate_not(ctx, b.bits[i]));
        Bit<B> take = gate_and(ctx, eq, bit_gt);
        gt = Bit<B>{ctx.add(gt.ct, take.ct)};  // disjoint with previous gt
        if (i > 0) eq = gate_and(ctx, eq, gate_xnor(ctx, a.bits[i], b.bits[i]));
    }
    return gt;
}

}  // namespace detail

template <HomomorphicBackend B>
Bit<B> circ_gt_u(B& ctx, const BitWord<B>& a, const BitWord<B>& b) {
    return detail::ripple_gt(ctx, a, b, false);
}

template <HomomorphicBackend B>
Bit<B> circ_lt_u(B& ctx, const BitWord<B>& a, const BitWord<B>& b) {
    return detail::ripple_gt(ctx, b, a, false);
}

template <HomomorphicBackend B>
Bit<B> circ_gt_s(B& ctx, const BitWord<B>& a, const BitWord<B>& b) {
    return detail::ripple_gt(ctx, a, b, true);
}

template <HomomorphicBackend B>
Bit<B> circ_lt_s(B& ctx, const BitWord<B>& a, const BitWord<B>& b) {
    return detail::ripple_gt(ctx, b, a, true);
}

// Ripple-carry addition, wrapping mod 2^s.
template <HomomorphicBackend B>
BitWord<B> circ_add(B& ctx, const BitWord<B>& a, const BitWord<B>& b) {
    detail::check_same_width(a, b);
    return {detail::ripple_add(ctx, a.bits, b.bits)};
}

// Borrow-ripple subtraction, wrapping mod 2^s.
template <HomomorphicBackend B>
BitWord<B> circ_sub(B& ctx, const BitWord<B>& a, const BitWord<B>& b) {
    detail::check_same_width(a, b);
    std::size_t w = a.width();
    BitWord<B> out;
    out.bits.reserve(w);
    if (w == 1) {
        out.bits.push_back(gate_xor(ctx, a.bits[0], b.bits[0]));
        return out;
    }
    out.bits.push_back(gate_xor(ctx, a.bits[0], b.bits[0]));
    Bit<B> borrow = gate_and(ctx, gate_not(ctx, a.bits[0]), b.bits[0]);
    for (std::size_t i = 1; i + 1 < w; ++i) {
        Bit<B> d = gate_xor(ctx, a.bits[i], b.bits[i]);
        out.bits.push_back(gate_xor(ctx, d, borrow));
        Bit<B> gen = gate_and(ctx, gate_not(ctx, a.bits[i]), b.bits[i]);
        Bit<B> prop = gate_and(ctx, borrow, gate_not(ctx, d));
        borrow = Bit<B>{ctx.add(gen.ct, prop.ct)};  // disjoint
    }
    Bit<B> d = gate_xor(ctx, a.bits[w - 1], b.bits[w - 1]);
    out.bits.push_back(gate_xor(ctx, d, borrow));
    return out;
}

// Two's-complement negation: invert and increment. The increment carries a
// plaintext one, so the LSB comes out as the input bit itself.
template <HomomorphicBackend B>
BitWord<B> circ_neg(B& ctx, const BitWord<B>& a) {
    std::size_t w = a.width();
    BitWord<B> out;
    out.bits.reserve(w);
    out.bits.push_back(a.bits[0]);
    if (w == 1) return out;
    Bit<B> carry = gate_not(ctx, a.bits[0]);
    for (std::size_t i = 1; i + 1 < w; ++i) {
        Bit<B> n = gate_not(ctx, a.bits[i]);
        out.bits.push_back(gate_xor(ctx, n, carry));
        carry = gate_and(ctx, n, carry);
    }
    out.bits.push_back(gate_xor(ctx, gate_not(ctx, a.bits[w - 1]), carry));
    return out;
}

// Schoolbook multiplication truncated to s bits (C-style wrap).
template <HomomorphicBackend B>
BitWord<B> circ_mul(B& ctx, const BitWord<B>& a, const BitWord<B>& b) {
    detail::check_same_width(a, b);
    std::size_t s = a.width();
    std::vector<Bit<B>> acc;
    acc.reserve(s);
    for (std::size_t i = 0; i < s; ++i) acc.push_back(gate_and(ctx, b.bits[0], a.bits[i]));
    for (std::size_t j = 1; j < s; ++j) {
        std::vector<Bit<B>> pp, hi;
        pp.reserve(s - j);
        hi.reserve(s - j);
        for (std::size_t i = 0; i < s - j; ++i) {
            pp.push_back(gate_and(ctx, b.bits[j], a.bits[i]));
            hi.push_back(acc[j + i]);
        }
        auto summed = detail::ripple_add(ctx, hi, pp);
        for (std::size_t i = 0; i < s - j; ++i) acc[j + i] = summed[i];
    }
    return {std::move(acc)};
}

// Multiplexes a word by one selector bit: exactly s AND gates.
template <HomomorphicBackend B>
BitWord<B> circ_bool_mul(B& ctx, const Bit<B>& sel, const BitWord<B>& a) {
    BitWord<B> out;
    out.bits.reserve(a.width());
    for (const auto& bit : a.bits) out.bits.push_back(gate_and(ctx, sel, bit));
    return out;
}

// C-style logical not: 1 iff every bit is zero.
template <HomomorphicBackend B>
Bit<B> circ_is_zero(B& ctx, const BitWord<B>& a) {
    std::vector<Bit<B>> inv;
    inv.reserve(a.width());
    for (const auto& bit : a.bits) inv.push_back(gate_not(ctx, bit));
    return detail::and_reduce(ctx, std::move(inv));
}

}  // namespace fhebridge
