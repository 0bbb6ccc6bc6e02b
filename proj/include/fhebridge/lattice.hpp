// Toy textbook-BFV backend over Z_q[X]/(X^n + 1). No relinearization:
// ciphertext arity grows by one per multiplication, and decryption evaluates
// the full power basis in the secret key. Schoolbook negacyclic convolution
// throughout. Not secure at any of the permitted parameter sizes.
#pragma once

#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <random>

#include "fhebridge/backend.hpp"

namespace fhebridge::lattice {

struct LatticeParams {
    std::size_t n = 64;             // ring degree, power of two
    std::uint64_t q = 1ULL << 40;   // ciphertext modulus
    std::uint64_t t = 17;           // plaintext modulus
    double error_stddev = 3.2;

    std::uint64_t delta() const { return q / t; }

    void validate() const {
        if (!std::has_single_bit(n) || n < 16 || n > 4096)
            throw std::invalid_argument("ring degree must be a power of two in [16, 4096]");
        if (q < (1ULL << 30) || q > (1ULL << 62))
            throw std::invalid_argument("ciphertext modulus must be in [2^30, 2^62]");
        if (t < 2 || t > (1ULL << 17) || t >= q)
            throw std::invalid_argument("plaintext modulus must be in [2, 2^17] and below q");
        if (delta() < 2) throw std::invalid_argument("q/t must be at least 2");
        if (error_stddev <= 0) throw std::invalid_argument("error stddev must be positive");
    }
};

using Poly = std::vector<std::uint64_t>;  // coefficients in [0, q), length n

struct LatticeCiphertext {
    std::vector<Poly> components;  // length mult_depth + 2
    int mult_depth = 0;
};

struct SecretKey {
    LatticeParams params;
    std::vector<std::int8_t> s;  // ternary coefficients
};

struct PublicKey {
    LatticeParams params;
    Poly p0, p1;  // (-(a*s + e), a)
};

namespace detail {

using i128 = __int128;

inline std::int64_t centered(std::uint64_t x, std::uint64_t q) {
    return x > q / 2 ? static_cast<std::int64_t>(x - q) : static_cast<std::int64_t>(x);
}

inline std::uint64_t mod_q(i128 x, std::uint64_t q) {
    i128 r = x % static_cast<i128>(q);
    if (r < 0) r += q;
    return static_cast<std::uint64_t>(r);
}

inline i128 round_div(i128 num, i128 den) {
    return num >= 0 ? (num + den / 2) / den : -((-num + den / 2) / den);
}

// Negacyclic product of a mod-q polynomial with a small-coefficient one.
// Sums stay within ~n * q * max|small|, far inside 128 bits.
inline Poly negacyclic_small(const Poly& big, const std::vector<std::int64_t>& small,
                             std::uint64_t q) {
    std::size_t n = big.size();
    std::vector<i128> acc(n, 0);
    for (std::size_t j = 0; j < n; ++j) {
        if (small[j] == 0) continue;
        i128 sj = small[j];
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t k = i + j;
            i128 term = sj * static_cast<i128>(big[i]);
            if (k < n)
                acc[k] += term;
            else
                acc[k - n] -= term;
        }
    }
    Poly out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = mod_q(acc[k], q);
    return out;
}

// Accumulates the negacyclic product of two centered mod-q polynomials.
inline void negacyclic_big_acc(std::vector<i128>& acc, const Poly& a, const Poly& b,
                               std::uint64_t q) {
    std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i) {
        i128 ai = centered(a[i], q);
        if (ai == 0) continue;
        for (std::size_t j = 0; j < n; ++j) {
            i128 term = ai * static_cast<i128>(centered(b[j], q));
            std::size_t k = i + j;
            if (k < n)
                acc[k] += term;
            else
                acc[k - n] -= term;
        }
    }
}

// The exact tensor accumulates n products of centered values bounded by q/2,
// so n * (q/2)^2 must stay inside the 128-bit accumulator.
inline void check_mul_capacity(const LatticeParams& p) {
    int qbits = std::bit_width(p.q - 1);  // q <= 2^qbits
    int nbits = std::bit_width(static_cast<std::uint64_t>(p.n)) - 1;
    if (2 * (qbits - 1) + nbits > 126)
        throw std::invalid_argument(
            "ciphertext modulus too large for exact multiplication at this ring degree");
}

inline std::int64_t sample_gaussian(std::mt19937_64& rng, double stddev) {
    std::int64_t bound = static_cast<std::int64_t>(std::ceil(6.0 * stddev));
    std::uniform_int_distribution<std::int64_t> propose(-bound, bound);
    std::uniform_real_distribution<double> accept(0.0, 1.0);
    for (;;) {
        std::int64_t k = propose(rng);
        double p = std::exp(-static_cast<double>(k) * static_cast<double>(k) /
                            (2.0 * stddev * stddev));
        if (accept(rng) <= p) return k;
    }
}

inline std::vector<std::int8_t> sample_ternary(std::mt19937_64& rng, std::size_t n) {
    std::uniform_int_distribution<int> d(-1, 1);
    std::vector<std::int8_t> out(n);
    for (auto& x : out) x = static_cast<std::int8_t>(d(rng));
    return out;
}

}  // namespace detail

inline std::pair<SecretKey, PublicKey> keygen(const LatticeParams& params, std::uint64_t seed) {
    params.validate();
    std::mt19937_64 rng(seed);
    SecretKey sk{params, detail::sample_ternary(rng, params.n)};

    std::uniform_int_distribution<std::uint64_t> uniform_q(0, params.q - 1);
    Poly a(params.n);
    for (auto& x : a) x = uniform_q(rng);

    std::vector<std::int64_t> s64(sk.s.begin(), sk.s.end());
    Poly as = detail::negacyclic_small(a, s64, params.q);
    Poly p0(params.n);
    for (std::size_t i = 0; i < params.n; ++i) {
        std::int64_t e = detail::sample_gaussian(rng, params.error_stddev);
        std::uint64_t v = detail::mod_q(static_cast<detail::i128>(as[i]) + e, params.q);
        p0[i] = v == 0 ? 0 : params.q - v;  // -(a*s + e)
    }
    return {std::move(sk), PublicKey{params, std::move(p0), std::move(a)}};
}

inline LatticeCiphertext encrypt(const PublicKey& pk, const std::vector<std::uint64_t>& msg,
                                 std::mt19937_64& rng) {
    const auto& p = pk.params;
    if (msg.size() != p.n) throw std::invalid_argument("message length must equal ring degree");
    for (auto m : msg)
        if (m >= p.t) throw std::invalid_argument("message coefficients must lie in [0, t)");

    auto u = detail::sample_ternary(rng, p.n);
    std::vector<std::int64_t> u64v(u.begin(), u.end());
    Poly c0 = detail::negacyclic_small(pk.p0, u64v, p.q);
    Poly c1 = detail::negacyclic_small(pk.p1, u64v, p.q);
    std::uint64_t delta = p.delta();
    for (std::size_t i = 0; i < p.n; ++i) {
        std::int64_t e0 = detail::sample_gaussian(rng, p.error_stddev);
        std::int64_t e1 = detail::sample_gaussian(rng, p.error_stddev);
        c0[i] = detail::mod_q(static_cast<detail::i128>(c0[i]) + e0 +
                                  static_cast<detail::i128>(delta) * msg[i],
                              p.q);
        c1[i] = detail::mod_q(static_cast<detail::i128>(c1[i]) + e1, p.q);
    }
    return {{std::move(c0), std::move(c1)}, 0};
}

namespace detail {

// Horner evaluation of sum_i c_i * s^i; every step multiplies by the small
// ternary secret, so the accumulator never needs a big-big product.
inline Poly apply_secret(const SecretKey& sk, const LatticeCiphertext& c) {
    std::vector<std::int64_t> s64(sk.s.begin(), sk.s.end());
    Poly acc = c.components.back();
    for (std::size_t i = c.components.size() - 1; i-- > 0;) {
        acc = negacyclic_small(acc, s64, sk.params.q);
        for (std::size_t k = 0; k < acc.size(); ++k)
            acc[k] = mod_q(static_cast<i128>(acc[k]) + c.components[i][k], sk.params.q);
    }
    return acc;
}

}  // namespace detail

inline std::vector<std::uint64_t> decrypt(const SecretKey& sk, const LatticeCiphertext& c) {
    const auto& p = sk.params;
    Poly w = detail::apply_secret(sk, c);
    std::vector<std::uint64_t> msg(p.n);
    for (std::size_t k = 0; k < p.n; ++k) {
        detail::i128 scaled = detail::round_div(
            static_cast<detail::i128>(p.t) * detail::centered(w[k], p.q), p.q);
        detail::i128 m = scaled % static_cast<detail::i128>(p.t);
        if (m < 0) m += p.t;
        msg[k] = static_cast<std::uint64_t>(m);
    }
    return msg;
}

inline LatticeCiphertext lat_add(const LatticeParams& p, const LatticeCiphertext& a,
                                 const LatticeCiphertext& b, bool negate_b = false) {
    std::size_t len = std::max(a.components.size(), b.components.size());
    LatticeCiphertext out;
    out.components.resize(len, Poly(p.n, 0));
    out.mult_depth = static_cast<int>(len) - 2;
    for (std::size_t i = 0; i < len; ++i) {
        for (std::size_t k = 0; k < p.n; ++k) {
            detail::i128 av = i < a.components.size() ? a.components[i][k] : 0;
            detail::i128 bv = i < b.components.size() ? b.components[i][k] : 0;
            out.components[i][k] = detail::mod_q(negate_b ? av - bv : av + bv, p.q);
        }
    }
    return out;
}

inline LatticeCiphertext lat_sub(const LatticeParams& p, const LatticeCiphertext& a,
                                 const LatticeCiphertext& b) {
    return lat_add(p, a, b, true);
}

// Tensor product with BFV rescaling round(t*x/q) on every coefficient of the
// exact integer convolution. Arity grows to |a| + |b| - 1.
inline LatticeCiphertext lat_mul(const LatticeParams& p, const LatticeCiphertext& a,
                                 const LatticeCiphertext& b) {
    std::size_t ka = a.components.size(), kb = b.components.size();
    if (ka + kb > 16)
        throw std::runtime_error("lattice depth guard exceeded (combined components > 16)");
    detail::check_mul_capacity(p);

    std::vector<std::vector<detail::i128>> acc(ka + kb - 1,
                                               std::vector<detail::i128>(p.n, 0));
    for (std::size_t i = 0; i < ka; ++i)
        for (std::size_t j = 0; j < kb; ++j)
            detail::negacyclic_big_acc(acc[i + j], a.components[i], b.components[j], p.q);

    LatticeCiphertext out;
    out.components.resize(ka + kb - 1, Poly(p.n));
    out.mult_depth = a.mult_depth + b.mult_depth + 1;
    for (std::size_t c = 0; c < acc.size(); ++c) {
        for (std::size_t k = 0; k < p.n; ++k) {
            detail::i128 x = acc[c][k];
            detail::i128 h = x / static_cast<detail::i128>(p.q);
            detail::i128 r = x - h * static_cast<detail::i128>(p.q);
            if (r < 0) {
                r += p.q;
                h -= 1;
            }
            detail::i128 scaled = static_cast<detail::i128>(p.t) * h +
                                  (static_cast<detail::i128>(p.t) * r + p.q / 2) /
                                      static_cast<detail::i128>(p.q);
            out.components[c][k] = detail::mod_q(scaled, p.q);
        }
    }
    return out;
}

// Remaining headroom in bits before the invariant noise spills into the
// message; negative means decryption is no longer trustworthy. Noise is
// measured against the nearest codeword with the usual factor-two safety
// convention, so a saturated ciphertext reports a negative budget.
inline int noise_budget(const SecretKey& sk, const LatticeCiphertext& c) {
    const auto& p = sk.params;
    Poly w = detail::apply_secret(sk, c);
    std::uint64_t delta = p.delta();
    std::uint64_t vmax = 0;
    for (std::size_t k = 0; k < p.n; ++k) {
        detail::i128 scaled = detail::round_div(
            static_cast<detail::i128>(p.t) * detail::centered(w[k], p.q), p.q);
        detail::i128 m = scaled % static_cast<detail::i128>(p.t);
        if (m < 0) m += p.t;
        std::uint64_t expected = detail::mod_q(static_cast<detail::i128>(delta) * m, p.q);
        std::int64_t v = detail::centered(detail::mod_q(
            static_cast<detail::i128>(w[k]) - expected, p.q), p.q);
        std::uint64_t mag = static_cast<std::uint64_t>(v < 0 ? -v : v);
        vmax = std::max(vmax, mag);
    }
    long double headroom = std::log2(static_cast<long double>(p.q) / (2.0L * p.t));
    long double noise =
        std::log2(2.0L * static_cast<long double>(std::max<std::uint64_t>(1, vmax)));
    return static_cast<int>(std::floor(headroom - noise));
}

// --- key serialization -------------------------------------------------------
//
// Little-endian layout with an 8-byte magic header:
//   "FHBRIDG1" | kind u64 (0 secret, 1 public) | n | q | t | sigma (double bits)
//   then per polynomial: length u64 followed by that many u64 coefficients.

namespace detail {

constexpr std::array<char, 8> kMagic = {'F', 'H', 'B', 'R', 'I', 'D', 'G', '1'};

inline void write_u64(std::ostream& os, std::uint64_t v) {
    std::array<unsigned char, 8> b;
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    os.write(reinterpret_cast<const char*>(b.data()), 8);
}

inline std::uint64_t read_u64(std::istream& is) {
    std::array<unsigned char, 8> b;
    is.read(reinterpret_cast<char*>(b.data()), 8);
    if (!is) throw std::runtime_error("truncated key file");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return v;
}

inline void write_poly(std::ostream& os, const Poly& poly) {
    write_u64(os, poly.size());
    for (auto c : poly) write_u64(os, c);
}

inline Poly read_poly(std::istream& is) {
    std::uint64_t len = read_u64(is);
    if (len > 4096) throw std::runtime_error("corrupt key file: polynomial too long");
    Poly poly(len);
    for (auto& c : poly) c = read_u64(is);
    return poly;
}

inline void write_header(std::ostream& os, std::uint64_t kind, const LatticeParams& p) {
    os.write(kMagic.data(), kMagic.size());
    write_u64(os, kind);
    write_u64(os, p.n);
    write_u64(os, p.q);
    write_u64(os, p.t);
    write_u64(os, std::bit_cast<std::uint64_t>(p.error_stddev));
}

inline LatticeParams read_header(std::istream& is, std::uint64_t expected_kind) {
    std::array<char, 8> magic;
    is.read(magic.data(), magic.size());
    if (!is || magic != kMagic) throw std::runtime_error("bad key file magic");
    std::uint64_t kind = read_u64(is);
    if (kind != expected_kind) throw std::runtime_error("key file kind mismatch");
    LatticeParams p;
    p.n = read_u64(is);
    p.q = read_u64(is);
    p.t = read_u64(is);
    p.error_stddev = std::bit_cast<double>(read_u64(is));
    p.validate();
    return p;
}

}  // namespace detail

inline void save_secret_key(const std::string& path, const SecretKey& sk) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + path);
    detail::write_header(os, 0, sk.params);
    Poly coeffs(sk.params.n);
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        coeffs[i] = sk.s[i] < 0 ? sk.params.q - 1 : static_cast<std::uint64_t>(sk.s[i]);
    detail::write_poly(os, coeffs);
}

inline void save_public_key(const std::string& path, const PublicKey& pk) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + path);
    detail::write_header(os, 1, pk.params);
    detail::write_poly(os, pk.p0);
    detail::write_poly(os, pk.p1);
}

inline SecretKey load_secret_key(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open " + path);
    SecretKey sk;
    sk.params = detail::read_header(is, 0);
    Poly coeffs = detail::read_poly(is);
    if (coeffs.size() != sk.params.n) throw std::runtime_error("corrupt secret key");
    sk.s.resize(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        sk.s[i] = static_cast<std::int8_t>(detail::centered(coeffs[i], sk.params.q));
    return sk;
}

inline PublicKey load_public_key(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open " + path);
    PublicKey pk;
    pk.params = detail::read_header(is, 1);
    pk.p0 = detail::read_poly(is);
    pk.p1 = detail::read_poly(is);
    if (pk.p0.size() != pk.params.n || pk.p1.size() != pk.params.n)
        throw std::runtime_error("corrupt public key");
    return pk;
}

}  // namespace fhebridge::lattice

namespace fhebridge {

// Backend-contract adapter over the toy lattice scheme. Scalars live in
// coefficient zero; single slot, no batching.
class LatticeBackend {
public:
    struct Ciphertext {
        lattice::LatticeCiphertext ct;
        int mult_depth = 0;
        int add_depth = 0;
        const LatticeBackend* owner = nullptr;
    };

    explicit LatticeBackend(const lattice::LatticeParams& params, std::uint64_t seed = 1)
        : params_(params), rng_(seed) {
        auto [sk, pk] = lattice::keygen(params_, seed);
        sk_ = std::move(sk);
        pk_ = std::move(pk);
    }

    LatticeBackend(lattice::SecretKey sk, lattice::PublicKey pk, std::uint64_t seed = 1)
        : params_(sk.params), sk_(std::move(sk)), pk_(std::move(pk)), rng_(seed) {
        params_.validate();
    }

    LatticeBackend(const LatticeBackend&) = delete;
    LatticeBackend& operator=(const LatticeBackend&) = delete;

    std::uint64_t plain_modulus() const { return params_.t; }
    std::size_t slot_count() const { return 1; }
    bool supports_batching() const { return false; }
    const lattice::LatticeParams& params() const { return params_; }
    const lattice::SecretKey& secret_key() const { return sk_; }
    const lattice::PublicKey& public_key() const { return pk_; }

    Ciphertext encrypt(const std::vector<std::int64_t>& values) {
        if (values.size() != 1) throw std::invalid_argument("lattice backend has one slot");
        std::vector<std::uint64_t> msg(params_.n, 0);
        msg[0] = reduce(values[0]);
        Ciphertext c{lattice::encrypt(pk_, msg, rng_), 0, 0, this};
        meter_.observe_depths(0, 0);
        return c;
    }

    // Noiseless embedding of a program constant: (delta*k, 0).
    Ciphertext encrypt_const(std::int64_t k) {
        lattice::Poly c0(params_.n, 0), c1(params_.n, 0);
        c0[0] = lattice::detail::mod_q(
            static_cast<lattice::detail::i128>(params_.delta()) * reduce(k), params_.q);
        return {lattice::LatticeCiphertext{{std::move(c0), std::move(c1)}, 0}, 0, 0, this};
    }

    DecryptResult decrypt(const Ciphertext& c) const {
        check_owner(c);
        DecryptResult r;
        r.values.push_back(lattice::decrypt(sk_, c.ct)[0]);
        r.corrupted = lattice::noise_budget(sk_, c.ct) < 0;
        return r;
    }

    Ciphertext add(const Ciphertext& a, const Ciphertext& b) { return add_sub(a, b, false); }
    Ciphertext sub(const Ciphertext& a, const Ciphertext& b) { return add_sub(a, b, true); }

    Ciphertext mul(const Ciphertext& a, const Ciphertext& b) {
        check_owner(a);
        check_owner(b);
        Ciphertext c{lattice::lat_mul(params_, a.ct, b.ct), 0,
                     std::max(a.add_depth, b.add_depth), this};
        c.mult_depth = c.ct.mult_depth;
        meter_.count_mult();
        meter_.observe_depths(c.mult_depth, c.add_depth);
        return c;
    }

    Ciphertext add_plain(const Ciphertext& a, std::int64_t k) {
        check_owner(a);
        Ciphertext c = a;
        shift_constant(c.ct.components[0], reduce(k), false);
        meter_.count_pt();
        return c;
    }

    Ciphertext sub_plain(const Ciphertext& a, std::int64_t k) {
        check_owner(a);
        Ciphertext c = a;
        shift_constant(c.ct.components[0], reduce(k), true);
        meter_.count_pt();
        return c;
    }

    Ciphertext plain_sub(std::int64_t k, const Ciphertext& a) {
        check_owner(a);
        Ciphertext c = a;
        for (auto& poly : c.ct.components)
            for (auto& x : poly) x = x == 0 ? 0 : params_.q - x;
        shift_constant(c.ct.components[0], reduce(k), false);
        meter_.count_pt();
        return c;
    }

    Ciphertext mul_plain(const Ciphertext& a, std::int64_t k) {
        check_owner(a);
        Ciphertext c = a;
        std::uint64_t scale = reduce(k);
        for (auto& poly : c.ct.components)
            for (auto& x : poly)
                x = lattice::detail::mod_q(
                    static_cast<lattice::detail::i128>(x) * scale, params_.q);
        meter_.count_pt();
        return c;
    }

    int noise_budget(const Ciphertext& c) const {
        check_owner(c);
        return lattice::noise_budget(sk_, c.ct);
    }

    CostReport meter_snapshot() const { return meter_.snapshot(); }

private:
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

    void shift_constant(lattice::Poly& c0, std::uint64_t k, bool negate) {
        std::uint64_t dk = lattice::detail::mod_q(
            static_cast<lattice::detail::i128>(params_.delta()) * k, params_.q);
        c0[0] = lattice::detail::mod_q(
            static_cast<lattice::detail::i128>(c0[0]) + (negate ? -static_cast<lattice::detail::i128>(dk)
                                                                : static_cast<lattice::detail::i128>(dk)),
            params_.q);
    }

    Ciphertext add_sub(const Ciphertext& a, const Ciphertext& b, bool negate) {
        check_owner(a);
        check_owner(b);
        Ciphertext c{negate ? lattice::lat_sub(params_, a.ct, b.ct)
                            : lattice::lat_add(params_, a.ct, b.ct),
                     0, std::max(a.add_depth, b.add_depth) + 1, this};
        c.mult_depth = c.ct.mult_depth;
        meter_.count_add();
        meter_.observe_depths(c.mult_depth, c.add_depth);
        return c;
    }

    lattice::LatticeParams params_;
    lattice::SecretKey sk_;
    lattice::PublicKey pk_;
    std::mt19937_64 rng_;
    CostMeter meter_;
};

static_assert(HomomorphicBackend<LatticeBackend>);

}  // namespace fhebridge
