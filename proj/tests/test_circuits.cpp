#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "fhebridge/circuits.hpp"

using namespace fhebridge;

namespace {

using WordP = BitWord<PlainBackend>;

std::uint64_t dec1(PlainBackend& ctx, const WordP& w) { return decrypt_word(ctx, w).values[0]; }
std::uint64_t dec1(PlainBackend& ctx, const Bit<PlainBackend>& b) {
    return ctx.decrypt(b.ct).values[0];
}

std::int64_t as_signed(std::uint64_t v, std::size_t s) {
    std::uint64_t sign = 1ULL << (s - 1);
    return static_cast<std::int64_t>((v ^ sign) - sign);
}

}  // namespace

TEST_CASE("exhaustive 4-bit equivalence with plaintext semantics", "[circuits]") {
    PlainBackend ctx(BackendParams{65537, 1, 1 << 24});
    constexpr std::size_t S = 4;
    constexpr std::uint64_t kMask = 15;
    for (std::uint64_t a = 0; a < 16; ++a) {
        for (std::uint64_t b = 0; b < 16; ++b) {
            WordP wa = encrypt_word(ctx, a, S), wb = encrypt_word(ctx, b, S);
            CHECK(dec1(ctx, circ_add(ctx, wa, wb)) == ((a + b) & kMask));
            CHECK(dec1(ctx, circ_sub(ctx, wa, wb)) == ((a - b) & kMask));
            CHECK(dec1(ctx, circ_mul(ctx, wa, wb)) == ((a * b) & kMask));
            CHECK(dec1(ctx, circ_eq(ctx, wa, wb)) == (a == b ? 1 : 0));
            CHECK(dec1(ctx, circ_gt_u(ctx, wa, wb)) == (a > b ? 1 : 0));
            CHECK(dec1(ctx, circ_lt_u(ctx, wa, wb)) == (a < b ? 1 : 0));
            CHECK(dec1(ctx, circ_gt_s(ctx, wa, wb)) ==
                  (as_signed(a, S) > as_signed(b, S) ? 1 : 0));
            CHECK(dec1(ctx, circ_lt_s(ctx, wa, wb)) ==
                  (as_signed(a, S) < as_signed(b, S) ? 1 : 0));
        }
        WordP wa = encrypt_word(ctx, a, S);
        CHECK(dec1(ctx, circ_neg(ctx, wa)) == ((~a + 1) & kMask));
        CHECK(dec1(ctx, circ_is_zero(ctx, wa)) == (a == 0 ? 1 : 0));
        for (int sel = 0; sel <= 1; ++sel) {
            auto sbit = encrypt_bit(ctx, sel);
            CHECK(dec1(ctx, circ_bool_mul(ctx, sbit, wa)) == (sel ? a : 0));
        }
    }
}

TEST_CASE("spot checks", "[circuits]") {
    PlainBackend ctx(BackendParams{65537, 1, 1 << 24});
    // 9+8 wraps to 1 at four bits
    CHECK(dec1(ctx, circ_add(ctx, encrypt_word(ctx, 9, 4), encrypt_word(ctx, 8, 4))) == 1);
    CHECK(dec1(ctx, circ_neg(ctx, encrypt_word(ctx, 0, 4))) == 0);
    CHECK(dec1(ctx, circ_neg(ctx, encrypt_word(ctx, 1, 4))) == 15);
    CHECK(dec1(ctx, circ_eq(ctx, encrypt_word(ctx, 11, 4), encrypt_word(ctx, 11, 4))) == 1);
    CHECK(dec1(ctx, circ_eq(ctx, encrypt_word(ctx, 11, 4), encrypt_word(ctx, 10, 4))) == 0);
    CHECK(dec1(ctx, circ_gt_u(ctx, encrypt_word(ctx, 3, 4), encrypt_word(ctx, 1, 4))) == 1);
    CHECK(dec1(ctx, circ_gt_u(ctx, encrypt_word(ctx, 1, 4), encrypt_word(ctx, 3, 4))) == 0);
    // -2 < 1 in two's complement
    CHECK(dec1(ctx, circ_lt_s(ctx, encrypt_word(ctx, 0b1110, 4), encrypt_word(ctx, 1, 4))) == 1);
    CHECK_THROWS_AS(circ_add(ctx, encrypt_word(ctx, 1, 4), encrypt_word(ctx, 1, 5)),
                    std::invalid_argument);
}

TEST_CASE("randomized equivalence at 8 and 16 bits", "[circuits]") {
    PlainBackend ctx(BackendParams{65537, 1, 1 << 24});
    std::mt19937_64 rng(3);
    for (std::size_t s : {std::size_t{8}, std::size_t{16}}) {
        std::uint64_t mask = (1ULL << s) - 1;
        for (int i = 0; i < 500; ++i) {
            std::uint64_t a = rng() & mask, b = rng() & mask;
            WordP wa = encrypt_word(ctx, a, s), wb = encrypt_word(ctx, b, s);
            CHECK(dec1(ctx, circ_add(ctx, wa, wb)) == ((a + b) & mask));
            CHECK(dec1(ctx, circ_sub(ctx, wa, wb)) == ((a - b) & mask));
            CHECK(dec1(ctx, circ_mul(ctx, wa, wb)) == ((a * b) & mask));
            CHECK(dec1(ctx, circ_eq(ctx, wa, wb)) == (a == b ? 1 : 0));
            CHECK(dec1(ctx, circ_gt_u(ctx, wa, wb)) == (a > b ? 1 : 0));
            CHECK(dec1(ctx, circ_gt_s(ctx, wa, wb)) ==
                  (as_signed(a, s) > as_signed(b, s) ? 1 : 0));
            CHECK(dec1(ctx, circ_neg(ctx, wa)) == ((~a + 1) & mask));
        }
    }
}

TEST_CASE("equality circuit costs", "[circuits]") {
    PlainBackend generic(BackendParams{65537, 1, 1 << 24});
    WordP a = encrypt_word(generic, 11, 4), b = encrypt_word(generic, 10, 4);
    CostReport before = generic.meter_snapshot();
    circ_eq(generic, a, b);
    CostReport d = generic.meter_snapshot().delta_since(before);
    CHECK(d.ct_mults == 7);          // 4 XNOR + 3 AND
    CHECK(d.max_mult_depth == 3);    // XNOR layer plus the balanced AND tree

    PlainBackend mod2(BackendParams{2, 1, 1 << 24});
    WordP a2 = encrypt_word(mod2, 11, 4), b2 = encrypt_word(mod2, 10, 4);
    before = mod2.meter_snapshot();
    circ_eq(mod2, a2, b2);
    d = mod2.meter_snapshot().delta_since(before);
    CHECK(d.ct_mults == 3);          // XNORs are free modulo 2
    CHECK(d.max_mult_depth == 2);
}

TEST_CASE("bool_mul costs exactly s multiplications", "[circuits]") {
    for (std::size_t s : {std::size_t{1}, std::size_t{4}, std::size_t{8}}) {
        PlainBackend ctx(BackendParams{65537, 1, 1 << 24});
        auto sel = encrypt_bit(ctx, 1);
        WordP a = encrypt_word(ctx, 10 & ((1ULL << s) - 1), s);
        CostReport before = ctx.meter_snapshot();
        auto out = circ_bool_mul(ctx, sel, a);
        CostReport d = ctx.meter_snapshot().delta_since(before);
        CHECK(d.ct_mults == s);
        CHECK(d.ct_adds == 0);
        // one AND layer on fresh inputs
        for (const auto& bit : out.bits) CHECK(bit.ct.mult_depth == 1);
    }
}

TEST_CASE("circuit cost is independent of input values", "[circuits]") {
    std::mt19937_64 rng(17);
    constexpr std::size_t S = 4;

    auto ops = std::vector<std::pair<const char*, int>>{
        {"add", 0}, {"sub", 1}, {"mul", 2}, {"neg", 3},   {"eq", 4},      {"gt_u", 5},
        {"lt_u", 6}, {"gt_s", 7}, {"lt_s", 8}, {"bool_mul", 9}, {"is_zero", 10}};

    for (auto [name, op] : ops) {
        CAPTURE(name);
        bool first = true;
        CostReport reference{};
        for (int trial = 0; trial < 20; ++trial) {
            PlainBackend ctx(BackendParams{65537, 1, 1 << 24});
            std::uint64_t a = rng() & 15, b = rng() & 15;
            WordP wa = encrypt_word(ctx, a, S), wb = encrypt_word(ctx, b, S);
            auto sel = encrypt_bit(ctx, static_cast<int>(rng() & 1));
            CostReport before = ctx.meter_snapshot();
            switch (op) {
                case 0: circ_add(ctx, wa, wb); break;
                case 1: circ_sub(ctx, wa, wb); break;
                case 2: circ_mul(ctx, wa, wb); break;
                case 3: circ_neg(ctx, wa); break;
                case 4: circ_eq(ctx, wa, wb); break;
                case 5: circ_gt_u(ctx, wa, wb); break;
                case 6: circ_lt_u(ctx, wa, wb); break;
                case 7: circ_gt_s(ctx, wa, wb); break;
                case 8: circ_lt_s(ctx, wa, wb); break;
                case 9: circ_bool_mul(ctx, sel, wa); break;
                default: circ_is_zero(ctx, wa); break;
            }
            CostReport d = ctx.meter_snapshot().delta_since(before);
            if (first) {
                reference = d;
                first = false;
            } else {
                CHECK(d.ct_adds == reference.ct_adds);
                CHECK(d.ct_mults == reference.ct_mults);
                CHECK(d.pt_ops == reference.pt_ops);
                CHECK(d.max_mult_depth == reference.max_mult_depth);
            }
        }
    }
}
