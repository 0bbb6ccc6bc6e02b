#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "fhebridge/secure_types.hpp"

using namespace fhebridge;

namespace {

using B = PlainBackend;

int pop(std::uint64_t e) { return std::popcount(e); }
int flog2(std::uint64_t e) { return std::bit_width(e) - 1; }
int clog2(std::uint64_t e) { return e <= 1 ? 0 : std::bit_width(e - 1); }

// paper-convention sign split: the top bit of the s-bit residue picks the branch
std::int64_t mod_to_int_oracle(std::uint64_t x, std::uint64_t t, std::size_t s) {
    std::uint64_t word = (x >> (s - 1)) & 1 ? (1ULL << s) - t + x : x;
    std::uint64_t sign = 1ULL << (s - 1);
    return static_cast<std::int64_t>((word ^ sign) - sign);
}

}  // namespace

TEST_CASE("uint_to_mod: Horner fold", "[secure_types]") {
    PlainBackend ctx(BackendParams{65537, 1, 1 << 24});

    auto x = SecureUint<4, B>::encrypt(ctx, 13);
    CostReport before = ctx.meter_snapshot();
    SecureMod<B> m(x);
    CostReport d = ctx.meter_snapshot().delta_since(before);
    CHECK(m.decrypt().values[0] == 13);
    CHECK(d.ct_mults == 0);
    CHECK(d.ct_adds == 6);

    auto y = SecureUint<8, B>::encrypt(ctx, 200);
    before = ctx.meter_snapshot();
    SecureMod<B> my(y);
    d = ctx.meter_snapshot().delta_since(before);
    CHECK(my.decrypt().values[0] == 200);
    CHECK(d.ct_adds == 14);

    CHECK(SecureMod<B>(SecureUint<8, B>::encrypt(ctx, 0)).decrypt().values[0] == 0);
}

TEST_CASE("uint_to_mod: cost formula for widths 2..16", "[secure_types]") {
    auto check_width = [](auto tag) {
        constexpr std::size_t S = decltype(tag)::value;
        PlainBackend ctx(BackendParams{65537, 1, 1 << 24});
        auto x = SecureUint<S, B>::encrypt(ctx, 1);
        CostReport before = ctx.meter_snapshot();
        SecureMod<B> m(x);
        CostReport d = ctx.meter_snapshot().delta_since(before);
        CHECK(d.ct_mults == 0);
        CHECK(d.ct_adds == 2 * (S - 1));
        CHECK(d.max_mult_depth == 0);
    };
    check_width(std::integral_constant<std::size_t, 2>{});
    check_width(std::integral_constant<std::size_t, 4>{});
    check_width(std::integral_constant<std::size_t, 8>{});
    check_width(std::integral_constant<std::size_t, 16>{});
}

TEST_CASE("uint_to_mod: exhaustive soundness", "[secure_types]") {
    auto run = [](auto tag) {
        constexpr std::size_t S = decltype(tag)::value;
        PlainBackend ctx(BackendParams{65537, 1, 1 << 24});
        for (std::uint64_t x = 0; x < (1ULL << S); ++x) {
            SecureMod<B> m(SecureUint<S, B>::encrypt(ctx, x));
            REQUIRE(m.decrypt().values[0] == x);
        }
    };
    run(std::integral_constant<std::size_t, 2>{});
    run(std::integral_constant<std::size_t, 4>{});
    run(std::integral_constant<std::size_t, 8>{});
}

TEST_CASE("int_to_mod: sign-adjusted fold", "[secure_types]") {
    PlainBackend ctx(BackendParams{17, 1, 1 << 24});

    auto x = SecureInt<4, B>::encrypt(ctx, -3);  // 0b1101
    CostReport before = ctx.meter_snapshot();
    SecureMod<B> m(x);
    CostReport d = ctx.meter_snapshot().delta_since(before);
    CHECK(m.decrypt().values[0] == 14);  // 17 - 16 + 13
    CHECK(d.ct_mults == 2);
    CHECK(d.max_mult_depth == 1);
    CHECK(d.ct_adds == 2 * 4 - 1);
    CHECK(d.pt_ops == 2);  // ct and mixed additions together make the 2s+1 of the ledger

    CHECK(SecureMod<B>(SecureInt<4, B>::encrypt(ctx, 5)).decrypt().values[0] == 5);

    PlainBackend small(BackendParams{7, 1, 1 << 24});
    auto y = SecureInt<4, B>::encrypt(small, 1);
    CHECK_THROWS_AS(SecureMod<B>(y), std::invalid_argument);  // t < 2^s
}

TEST_CASE("int_to_mod: exhaustive soundness and cost", "[secure_types]") {
    auto run = [](auto tag) {
        constexpr std::size_t S = decltype(tag)::value;
        PlainBackend ctx(BackendParams{65537, 1, 1 << 24});
        std::int64_t lo = -(1LL << (S - 1)), hi = (1LL << (S - 1));
        for (std::int64_t x = lo; x < hi; ++x) {
            CostReport before = ctx.meter_snapshot();
            SecureMod<B> m(SecureInt<S, B>::encrypt(ctx, x));
            CostReport d = ctx.meter_snapshot().delta_since(before);
            std::uint64_t expected = static_cast<std::uint64_t>((x % 65537 + 65537) % 65537);
            REQUIRE(m.decrypt().values[0] == expected);
            REQUIRE(d.ct_mults == 2);
        }
    };
    run(std::integral_constant<std::size_t, 2>{});
    run(std::integral_constant<std::size_t, 4>{});
    run(std::integral_constant<std::size_t, 8>{});
}

TEST_CASE("mod_pow: square-and-multiply costs", "[secure_types]") {
    for (std::uint64_t e : {2ULL, 3ULL, 4ULL, 5ULL, 16ULL, 100ULL}) {
        PlainBackend ctx(BackendParams{65537, 1, 1 << 24});
        auto x = SecureMod<B>::encrypt(ctx, 3);
        CostReport before = ctx.meter_snapshot();
        auto y = mod_pow(x, e);
        CostReport d = ctx.meter_snapshot().delta_since(before);
        CHECK(d.ct_mults == static_cast<std::uint64_t>(flog2(e) + pop(e) - 1));
        CHECK(d.max_mult_depth == clog2(e));

        std::uint64_t expected = 1;
        for (std::uint64_t i = 0; i < e; ++i) expected = expected * 3 % 65537;
        CHECK(y.decrypt().values[0] == expected);
    }

    PlainBackend ctx(BackendParams{5, 1, 1 << 24});
    auto x = SecureMod<B>::encrypt(ctx, 3);
    CHECK(mod_pow(x, 4).decrypt().values[0] == 1);  // Fermat: a^(t-1) = 1 mod prime t

    CostReport before = ctx.meter_snapshot();
    CHECK(mod_pow(x, 1).decrypt().values[0] == 3);
    CHECK(ctx.meter_snapshot().delta_since(before).ct_mults == 0);
    CHECK_THROWS_AS(mod_pow(x, 0), std::invalid_argument);
}

TEST_CASE("mod_to_uint: linear search", "[secure_types]") {
    {
        PlainBackend ctx(BackendParams{5, 1, 1 << 24});
        for (std::int64_t x = 0; x < 5; ++x) {
            auto m = SecureMod<B>::encrypt(ctx, x);
            auto u = mod_to_uint<3>(m);
            REQUIRE(u.decrypt().values[0] == static_cast<std::uint64_t>(x));
        }
        auto m = SecureMod<B>::encrypt(ctx, 4);
        CostReport before = ctx.meter_snapshot();
        mod_to_uint<3>(m);
        CostReport d = ctx.meter_snapshot().delta_since(before);
        CHECK(d.ct_mults == 25);  // 5 * (3 + 2 + 1 - 1)
        CHECK(d.max_mult_depth == 3);
    }
    {
        PlainBackend ctx(BackendParams{17, 1, 1 << 24});
        auto m = SecureMod<B>::encrypt(ctx, 9);
        CostReport before = ctx.meter_snapshot();
        auto u = mod_to_uint<4>(m);
        CostReport d = ctx.meter_snapshot().delta_since(before);
        CHECK(u.decrypt().values[0] == 9);
        CHECK(d.ct_mults == 136);  // 17 * (4 + 4 + 1 - 1)
        CHECK(d.max_mult_depth == 5);

        for (std::int64_t x = 0; x < 17; ++x) {
            auto u5 = mod_to_uint<5>(SecureMod<B>::encrypt(ctx, x));
            REQUIRE(u5.decrypt().values[0] == static_cast<std::uint64_t>(x));
        }
    }
    PlainBackend composite(BackendParams{9, 1, 1 << 24});
    auto m = SecureMod<B>::encrypt(composite, 1);
    CHECK_THROWS_AS(mod_to_uint<4>(m), std::invalid_argument);
}

TEST_CASE("mod_to_int: sign-split linear search", "[secure_types]") {
    {
        PlainBackend ctx(BackendParams{5, 1, 1 << 24});
        auto m4 = SecureMod<B>::encrypt(ctx, 4);
        CostReport before = ctx.meter_snapshot();
        auto y = mod_to_int<3>(m4);
        CostReport d = ctx.meter_snapshot().delta_since(before);
        CHECK(y.decrypt_signed()[0] == -1);  // X=4=0b100, MSB set: 8-5+4=7=0b111
        CHECK(d.ct_mults == 60);             // 2 * 5 * (3 + 2 + 1)
        CHECK(d.max_mult_depth == 4);

        CHECK(mod_to_int<3>(SecureMod<B>::encrypt(ctx, 3)).decrypt_signed()[0] == 3);
        for (std::int64_t x = 0; x < 5; ++x) {
            auto yi = mod_to_int<3>(SecureMod<B>::encrypt(ctx, x));
            REQUIRE(yi.decrypt_signed()[0] == mod_to_int_oracle(x, 5, 3));
        }
    }
    {
        PlainBackend ctx(BackendParams{17, 1, 1 << 24});
        for (std::int64_t x = 0; x < 17; ++x) {
            auto yi = mod_to_int<5>(SecureMod<B>::encrypt(ctx, x));
            std::int64_t got = yi.decrypt_signed()[0];
            REQUIRE(got == mod_to_int_oracle(x, 17, 5));
            REQUIRE(((got % 17) + 17) % 17 == x);  // congruence mod t
        }
    }
    PlainBackend ctx(BackendParams{17, 1, 1 << 24});
    auto m = SecureMod<B>::encrypt(ctx, 1);
    CHECK_THROWS_AS(mod_to_int<4>(m), std::invalid_argument);  // 2^4 < 17
}

TEST_CASE("word roundtrips through the modular side", "[secure_types]") {
    for (std::uint64_t t : {5ULL, 17ULL}) {
        PlainBackend ctx(BackendParams{t, 1, 1 << 24});
        for (std::uint64_t x = 0; x < t; ++x) {
            auto m = SecureMod<B>::encrypt(ctx, static_cast<std::int64_t>(x));
            auto u = mod_to_uint<5>(m);
            REQUIRE(u.decrypt().values[0] == x);
            SecureMod<B> back(u);
            REQUIRE(back.decrypt().values[0] == x);
        }
    }
}

TEST_CASE("operator surface", "[secure_types]") {
    PlainBackend ctx(BackendParams{65537, 1, 1 << 24});
    std::mt19937_64 rng(23);
    for (int i = 0; i < 50; ++i) {
        std::uint64_t a = rng() & 15, b = rng() & 15;
        auto sa = SecureUint<4, B>::encrypt(ctx, a);
        auto sb = SecureUint<4, B>::encrypt(ctx, b);
        CHECK((sa + sb).decrypt().values[0] == ((a + b) & 15));
        CHECK((sa - sb).decrypt().values[0] == ((a - b) & 15));
        CHECK((sa * sb).decrypt().values[0] == ((a * b) & 15));
        CHECK((sa == sb).decrypt().values[0] == (a == b ? 1 : 0));
        CHECK((sa != sb).decrypt().values[0] == (a != b ? 1 : 0));
        CHECK((sa < sb).decrypt().values[0] == (a < b ? 1 : 0));
        CHECK((sa > sb).decrypt().values[0] == (a > b ? 1 : 0));
        CHECK((!sa).decrypt().values[0] == (a == 0 ? 1 : 0));

        std::int64_t ia = static_cast<std::int64_t>(a) - 8, ib = static_cast<std::int64_t>(b) - 8;
        auto si = SecureInt<4, B>::encrypt(ctx, ia);
        auto sj = SecureInt<4, B>::encrypt(ctx, ib);
        CHECK((si < sj).decrypt().values[0] == (ia < ib ? 1 : 0));
        CHECK((si > sj).decrypt().values[0] == (ia > ib ? 1 : 0));
        CHECK((si + sj).decrypt_signed()[0] ==
              detail::sign_extend((static_cast<std::uint64_t>(ia + ib)) & 15, 4));
    }
}

TEST_CASE("bool-times-word and bool-times-mod", "[secure_types]") {
    PlainBackend ctx(BackendParams{17, 1, 1 << 24});
    auto a = SecureUint<4, B>::encrypt(ctx, 7);
    auto b = SecureUint<4, B>::encrypt(ctx, 7);

    // measure the equality circuit alone
    CostReport before = ctx.meter_snapshot();
    auto eq_only = (a == b);
    std::uint64_t eq_mults = ctx.meter_snapshot().delta_since(before).ct_mults;

    before = ctx.meter_snapshot();
    auto sel = (a == b) * SecureMod<B>(a);
    CostReport d = ctx.meter_snapshot().delta_since(before);
    CHECK(sel.decrypt().values[0] == 7);
    CHECK(d.ct_mults == eq_mults + 1);  // one native multiplication after the circuit

    auto zero_sel = SecureBool<B>::encrypt(ctx, false) * SecureMod<B>(a);
    CHECK(zero_sel.decrypt().values[0] == 0);

    auto word_sel = SecureBool<B>::encrypt(ctx, true) * a;
    CHECK(word_sel.decrypt().values[0] == 7);
    auto word_zero = SecureBool<B>::encrypt(ctx, false) * a;
    CHECK(word_zero.decrypt().values[0] == 0);
    CHECK(eq_only.decrypt().values[0] == 1);
}

TEST_CASE("secure-mod arithmetic", "[secure_types]") {
    PlainBackend ctx(BackendParams{65537, 1, 1 << 24});
    std::mt19937_64 rng(31);
    for (int i = 0; i < 100; ++i) {
        std::int64_t a = static_cast<std::int64_t>(rng() % 65537);
        std::int64_t b = static_cast<std::int64_t>(rng() % 65537);
        auto ma = SecureMod<B>::encrypt(ctx, a), mb = SecureMod<B>::encrypt(ctx, b);
        CHECK((ma + mb).decrypt().values[0] == static_cast<std::uint64_t>((a + b) % 65537));
        CHECK((ma * mb).decrypt().values[0] == static_cast<std::uint64_t>(a * b % 65537));
        CHECK((ma - mb).decrypt().values[0] ==
              static_cast<std::uint64_t>(((a - b) % 65537 + 65537) % 65537));
    }
}

TEST_CASE("mixed-arithmetic programs match plaintext", "[secure_types]") {
    PlainBackend ctx(BackendParams{65537, 1, 1 << 24});
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 30; ++trial) {
        std::uint64_t a = rng() & 15, b = rng() & 15, c = rng() & 15;
        auto sa = SecureUint<4, B>::encrypt(ctx, a);
        auto sb = SecureUint<4, B>::encrypt(ctx, b);
        auto sc = SecureUint<4, B>::encrypt(ctx, c);

        // acc = (a<b)*a + (a==c)*c + 3*(b bridged)
        auto acc = (sa < sb) * SecureMod<B>(sa);
        acc = acc + (sa == sc) * SecureMod<B>(sc);
        acc = acc + SecureMod<B>(sb) * SecureMod<B>::constant(ctx, 3);

        std::uint64_t expected = ((a < b ? a : 0) + (a == c ? c : 0) + 3 * b) % 65537;
        REQUIRE(acc.decrypt().values[0] == expected);
    }
}
