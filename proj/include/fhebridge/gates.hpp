// Homomorphic Boolean gates as ring arithmetic on {0,1}-valued ciphertexts.
//
// Identities (any plaintext modulus t):
//   AND = xy          NAND = 1-xy
//   OR  = x+y-xy      NOR  = 1-(x+y-xy)
//   XOR = x+y-2xy     XNOR = 1-(x+y-2xy)
//   NOT = 1-x         MUX(x,y,z) = x(y-z)+z
// At t=2 subtraction equals addition, so XOR = x+y and XNOR = 1+x+y need no
// ciphertext multiplication, and OR is evaluated as x+y+xy.
#pragma once

#include "fhebridge/backend.hpp"

namespace fhebridge {

template <HomomorphicBackend B>
struct Bit {
    typename B::Ciphertext ct;
};

template <HomomorphicBackend B>
Bit<B> encrypt_bit(B& ctx, const std::vector<std::int64_t>& values) {
    for (auto v : values)
        if (v != 0 && v != 1) throw std::invalid_argument("bit value must be 0 or 1");
    return {ctx.encrypt(values)};
}

template <HomomorphicBackend B>
Bit<B> encrypt_bit(B& ctx, int value) {
    return encrypt_bit(ctx, std::vector<std::int64_t>(ctx.slot_count(), value));
}

template <HomomorphicBackend B>
Bit<B> const_bit(B& ctx, int value) {
    if (value != 0 && value != 1) throw std::invalid_argument("bit value must be 0 or 1");
    return {ctx.encrypt_const(value)};
}

template <HomomorphicBackend B>
DecryptResult decrypt_bit(B& ctx, const Bit<B>& b) {
    return ctx.decrypt(b.ct);
}

template <HomomorphicBackend B>
Bit<B> gate_and(B& ctx, const Bit<B>& x, const Bit<B>& y) {
    return {ctx.mul(x.ct, y.ct)};
}

template <HomomorphicBackend B>
Bit<B> gate_nand(B& ctx, const Bit<B>& x, const Bit<B>& y) {
    return {ctx.plain_sub(1, ctx.mul(x.ct, y.ct))};
}

template <HomomorphicBackend B>
Bit<B> gate_or(B& ctx, const Bit<B>& x, const Bit<B>& y) {
    auto sum = ctx.add(x.ct, y.ct);
    auto prod = ctx.mul(x.ct, y.ct);
    if (ctx.plain_modulus() == 2) return {ctx.add(sum, prod)};
    return {ctx.sub(sum, prod)};
}

template <HomomorphicBackend B>
Bit<B> gate_nor(B& ctx, const Bit<B>& x, const Bit<B>& y) {
    return {ctx.plain_sub(1, gate_or(ctx, x, y).ct)};
}

template <HomomorphicBackend B>
Bit<B> gate_xor(B& ctx, const Bit<B>& x, const Bit<B>& y) {
    if (ctx.plain_modulus() == 2) return {ctx.add(x.ct, y.ct)};
    auto sum = ctx.add(x.ct, y.ct);
    auto twice = ctx.mul_plain(ctx.mul(x.ct, y.ct), 2);
    return {ctx.sub(sum, twice)};
}

template <HomomorphicBackend B>
Bit<B> gate_xnor(B& ctx, const Bit<B>& x, const Bit<B>& y) {
    if (ctx.plain_modulus() == 2) return {ctx.add_plain(ctx.add(x.ct, y.ct), 1)};
    return {ctx.plain_sub(1, gate_xor(ctx, x, y).ct)};
}

template <HomomorphicBackend B>
Bit<B> gate_not(B& ctx, const Bit<B>& x) {
    return {ctx.plain_sub(1, x.ct)};
}

// MUX(x,y,z) = x ? y : z
template <HomomorphicBackend B>
Bit<B> gate_mux(B& ctx, const Bit<B>& x, const Bit<B>& y, const Bit<B>& z) {
    return {ctx.add(ctx.mul(x.ct, ctx.sub(y.ct, z.ct)), z.ct)};
}

}  // namespace fhebridge
