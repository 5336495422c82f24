#pragma once

// Orders in the image of J, computed three independent ways:
//
//   * stabilized gcd over k of k^N (k^t - 1), the bound coming from the
//     Adams conjecture k^N (psi^k x - x) = 0 applied to a generator of
//     KO~(S^{2t}) on which psi^k acts by k^t;
//   * the prime-by-prime closed form of m(t);
//   * the denominator of B_{2s} / 4s with t = 2s.
//
// Also: Bernoulli numbers, the Feder-Gitler congruence for stunted
// projective spaces, Thom spaces of multiples of Hopf bundles, and the
// small KO models of S^2 and S^4.

#include "stemcert/derivation.hpp"
#include "stemcert/einv.hpp"
#include "stemcert/exact.hpp"
#include "stemcert/kring.hpp"

#include <nlohmann/json.hpp>

#include <mutex>
#include <string>
#include <vector>

namespace stemcert::jorder {

// ---------------------------------------------------------------------------
// m(t)

struct StabilizedGcd {
    BigInt value;
    bool stable = false;
    long settled_at = 2;  // smallest k after which the running gcd never changes
    std::vector<BigInt> running;  // running[i] = gcd over k = 2..i+2
};

inline StabilizedGcd stabilized_gcd(long t, long K, long N) {
    if (t < 1) throw std::invalid_argument("stabilized_gcd: t must be >= 1");
    if (K < 3) throw std::invalid_argument("stabilized_gcd: K must be >= 3");
    if (N < t + 4) throw std::invalid_argument("stabilized_gcd: N must be >= t + 4");
    StabilizedGcd out;
    BigInt g(0);
    for (long k = 2; k <= K; ++k) {
        const BigInt bk(k);
        const BigInt term = BigInt::pow(bk, static_cast<unsigned long>(N)) *
                            (BigInt::pow(bk, static_cast<unsigned long>(t)) - BigInt(1));
        g = gcd(g, term);
        if (out.running.empty() || g != out.running.back()) out.settled_at = k;
        out.running.push_back(g);
    }
    out.value = g;
    const long window = (K + 1) / 2;
    const long first = K - window + 1;
    out.stable = out.running.at(static_cast<std::size_t>(std::max(first, 2L) - 2)) == g;
    return out;
}

inline BigInt m_closed_form(long t) {
    if (t < 1) throw std::invalid_argument("m_closed_form: t must be >= 1");
    const BigInt bt(t);
    BigInt m = t % 2 == 0 ? BigInt::pow(2, 2 + padic_valuation(bt, 2)) : BigInt(2);
    for (long p = 3; p <= t + 1; p += 2) {
        if (t % (p - 1) != 0 || !is_prime(BigInt(p))) continue;
        m *= BigInt::pow(BigInt(p), 1 + padic_valuation(bt, BigInt(p)));
    }
    return m;
}

// ---------------------------------------------------------------------------
// Bernoulli numbers, B_1 = -1/2 convention (B_2 = 1/6, B_4 = -1/30).

inline constexpr long kMaxBernoulli = 200;

namespace detail {

// All B_0..B_n.  The table only grows and every entry is a pure function of
// its index, so readers see the same values regardless of interleaving.
inline BigRational bernoulli_any(long n) {
    static std::mutex lock;
    static std::vector<BigRational> table{BigRational(1)};
    std::lock_guard guard(lock);
    for (long m = static_cast<long>(table.size()); m <= n; ++m) {
        BigRational sum;
        for (long j = 0; j < m; ++j)
            sum += BigRational(binomial(static_cast<unsigned long>(m + 1), static_cast<unsigned long>(j))) * table[j];
        table.push_back(-sum / BigRational(BigInt(m + 1)));
    }
    return table[static_cast<std::size_t>(n)];
}

}  // namespace detail

inline BigRational bernoulli(long n) {
    if (n < 0 || n % 2 != 0) throw std::invalid_argument("bernoulli: n must be a non-negative even integer, got " + std::to_string(n));
    if (n > kMaxBernoulli) throw std::invalid_argument("bernoulli: n above supported range (200)");
    return detail::bernoulli_any(n);
}

/// Product of primes p with (p - 1) | n.
inline BigInt von_staudt_clausen_denominator(long n) {
    if (n < 2 || n % 2 != 0) throw std::invalid_argument("von Staudt-Clausen needs even n >= 2");
    BigInt d(1);
    for (long p = 2; p <= n + 1; ++p)
        if (n % (p - 1) == 0 && is_prime(BigInt(p))) d *= BigInt(p);
    return d;
}

/// Denominator of B_{2k} / 4k, the order of J~(S^{4k}).
inline BigInt m_via_bernoulli(long k) {
    if (k < 1) throw std::invalid_argument("m_via_bernoulli: k must be >= 1");
    return (bernoulli(2 * k) / BigRational(BigInt(4 * k))).den();
}

// ---------------------------------------------------------------------------
// Three-way bound.

enum class Method { StabilizedGcd, ClosedForm, BernoulliDenominator };

inline std::string to_string(Method m) {
    switch (m) {
        case Method::StabilizedGcd: return "gcd";
        case Method::ClosedForm: return "closed";
        case Method::BernoulliDenominator: return "bernoulli";
    }
    return {};
}

struct JOrderBound {
    long t = 0;
    BigInt value;
    std::vector<Method> methods;  // methods that produced `value`
    bool stable = false;
};

inline constexpr long kDefaultGcdRange = 200;

/// m(t) by every applicable method; throws VerificationFailure if they disagree
/// or the gcd has not stabilized.  The Bernoulli route applies to even t only.
inline JOrderBound j_order_bound(long t, long K = kDefaultGcdRange, long N = 0) {
    if (N == 0) N = t + 10;
    const StabilizedGcd g = stabilized_gcd(t, K, N);
    const BigInt closed = m_closed_form(t);
    JOrderBound out{t, g.value, {Method::StabilizedGcd}, g.stable};
    auto disagree = [&](const std::string& what, const BigInt& v) {
        return VerificationFailure("m(" + std::to_string(t) + "): stabilized gcd " + g.value.to_string() +
                                   " disagrees with " + what + " " + v.to_string());
    };
    if (closed != g.value) throw disagree("closed form", closed);
    out.methods.push_back(Method::ClosedForm);
    if (t % 2 == 0) {
        const BigInt bern = m_via_bernoulli(t / 2);
        if (bern != g.value) throw disagree("Bernoulli denominator", bern);
        out.methods.push_back(Method::BernoulliDenominator);
    }
    if (!g.stable) throw VerificationFailure("m(" + std::to_string(t) + "): gcd not stable over k <= " + std::to_string(K));
    return out;
}

/// Upper bound for the order of nu: m(2) = 24.
inline JOrderBound nu_order_bound() {
    JOrderBound b = j_order_bound(2);
    if (b.methods.size() != 3) throw VerificationFailure("nu bound: expected three agreeing methods");
    return b;
}

inline nlohmann::json to_json(const JOrderBound& b) {
    nlohmann::json methods = nlohmann::json::array();
    for (Method m : b.methods) methods.push_back(to_string(m));
    return {{"t", b.t}, {"m", b.value.to_string()}, {"methods", methods}, {"stable", b.stable}};
}

// ---------------------------------------------------------------------------
// Stunted projective spaces.

enum class Family { ComplexP, QuaternionicP };

inline int cell_step(Family f) { return f == Family::ComplexP ? 2 : 4; }

/// P^{top} / P^{bottom - 1}, suspended `suspension` times.
struct StuntedSpace {
    Family family = Family::QuaternionicP;
    long top = 0;
    long bottom = 0;
    long suspension = 0;

    [[nodiscard]] std::vector<long> cell_dimensions() const {
        std::vector<long> dims;
        for (long j = bottom; j <= top; ++j) dims.push_back(cell_step(family) * j + suspension);
        return dims;
    }

    [[nodiscard]] std::string name() const {
        const std::string p = family == Family::ComplexP ? "CP" : "HP";
        std::string s = p + "^" + std::to_string(top) + "/" + p + "^" + std::to_string(bottom - 1);
        return suspension ? "S^" + std::to_string(suspension) + "(" + s + ")" : s;
    }

    [[nodiscard]] std::string pretty() const {
        const std::string p = family == Family::ComplexP ? "CP" : "HP";
        auto sup = [](long v) {
            return v < 0 ? "⁻" + kring::detail::superscript(static_cast<int>(-v))
                         : kring::detail::superscript(static_cast<int>(v));
        };
        std::string s = p + sup(top) + "/" + p + sup(bottom - 1);
        return suspension ? "S" + sup(suspension) + "(" + s + ")" : s;
    }

    friend bool operator==(const StuntedSpace&, const StuntedSpace&) = default;
};

/// T(k * Hopf bundle over P^n) = P^{n+k} / P^{k-1}.
inline StuntedSpace thom_space(Family family, long n, long k) {
    if (n < 1 || k < 1) throw std::invalid_argument("thom_space: n and k must be >= 1");
    return {family, n + k, k, 0};
}

/// B_n for the quaternionic Hopf bundle; only n = 1 is provided.
inline BigInt hopf_bundle_j_order(long n) {
    if (n != 1) throw std::invalid_argument("J-order of the Hopf bundle over HP^n is only provided for n = 1");
    return m_closed_form(2);
}

/// HP^{n+k}/HP^{k-1} and HP^{n+l}/HP^{l-1} are stably equivalent when k = l mod B_n.
inline bool feder_gitler_equivalent(long n, long k, long l, const BigInt& bn) {
    if (n < 1) throw std::invalid_argument("feder_gitler_equivalent: n must be >= 1");
    if (k < 0 || l < 0) throw std::invalid_argument("feder_gitler_equivalent: k, l must be >= 0");
    if (bn < BigInt(1)) throw std::invalid_argument("feder_gitler_equivalent: B_n must be >= 1");
    return (BigInt(k) - BigInt(l)).mod(bn).is_zero();
}

// ---------------------------------------------------------------------------
// KO models.

/// KO(S^2) = Z (+) Z/2: rank and the reduced class in Z/2.
struct KOClassS2 {
    BigInt rank;
    int reduced = 0;

    [[nodiscard]] bool stably_trivial() const { return reduced == 0; }
    friend KOClassS2 operator+(const KOClassS2& a, const KOClassS2& b) {
        return {a.rank + b.rank, (a.reduced + b.reduced) % 2};
    }
    friend KOClassS2 operator*(long s, const KOClassS2& a) {
        return {BigInt(s) * a.rank, static_cast<int>(((s % 2) * a.reduced % 2 + 2) % 2)};
    }
    friend bool operator==(const KOClassS2&, const KOClassS2&) = default;
};

/// Realification of a + b*eta in K(CP^1).  Real rank doubles; r(eta) - 2
/// generates KO~(S^2) = Z/2.
inline KOClassS2 ko_s2_realify(const BigInt& a, const BigInt& b) {
    return {BigInt(2) * (a + b), b.mod(BigInt(2)).is_zero() ? 0 : 1};
}

/// A class of K(CP^1) written as constant + eta_coeff * eta, computed from an augmented element.
struct HopfCoordinates {
    BigInt constant;
    BigInt eta;
};

inline HopfCoordinates hopf_coordinates(const kring::Augmented& x) {
    // rank + s*sigma with eta = 1 + sigma: (rank - s) + s*eta.
    const BigInt s = x.reduced[0];
    return {x.rank - s, s};
}

/// KO(S^4) = Z (+) Z: rank and charge along the reduced generator.
struct KOClassS4 {
    BigInt rank;
    BigInt charge;

    friend KOClassS4 operator+(const KOClassS4& a, const KOClassS4& b) {
        return {a.rank + b.rank, a.charge + b.charge};
    }
    friend KOClassS4 operator*(const BigInt& s, const KOClassS4& a) { return {s * a.rank, s * a.charge}; }
    friend bool operator==(const KOClassS4&, const KOClassS4&) = default;
};

inline KOClassS4 quaternionic_hopf_class() { return {4, 1}; }
inline KOClassS4 trivial_class(long rank) { return {rank, 0}; }

struct KOS4Check {
    BigInt rank_lhs, rank_rhs;      // 4 + 92 and 24 * 4
    BigInt charge_lhs, charge_rhs;  // charge model: 24 and 24
    bool generator_infinite_order = false;

    [[nodiscard]] bool ok() const {
        return rank_lhs == rank_rhs && charge_lhs == charge_rhs && generator_infinite_order;
    }
};

// eta_q^24 + 92 = 24 eta_q, with the 24th power read as rank 4, charge 24.
inline KOS4Check ko_s4_relation_check() {
    const KOClassS4 eta_q = quaternionic_hopf_class();
    const KOClassS4 power_24{eta_q.rank, BigInt(24) * eta_q.charge};
    const KOClassS4 lhs = power_24 + trivial_class(92);
    const KOClassS4 rhs = BigInt(24) * eta_q;
    KOS4Check out{lhs.rank, rhs.rank, lhs.charge, rhs.charge, true};
    const KOClassS4 x{0, 1};
    for (long d = 1; d <= 1000; ++d) {
        const KOClassS4 dx = BigInt(d) * x;
        if (dx.rank.is_zero() && dx.charge.is_zero()) out.generator_infinite_order = false;
    }
    return out;
}

inline nlohmann::json to_json(const KOS4Check& c) {
    return {{"rank_lhs", c.rank_lhs.to_string()},
            {"rank_rhs", c.rank_rhs.to_string()},
            {"charge_lhs", c.charge_lhs.to_string()},
            {"charge_rhs", c.charge_rhs.to_string()},
            {"generator_infinite_order", c.generator_infinite_order},
            {"ok", c.ok()}};
}

// ---------------------------------------------------------------------------
// 2[Sh_c] = 0 via KO(S^2).

namespace checks {

inline nlohmann::json eta_squared() {
    const kring::RingModel cp1 = kring::make_ring(kring::Space::complex_projective(1));
    const kring::Augmented eta{1, cp1.gen()};
    const HopfCoordinates sq = hopf_coordinates(eta * eta);
    return {{"constant", sq.constant.to_string()}, {"eta", sq.eta.to_string()}};
}

inline nlohmann::json realify_eta_squared() {
    const KOClassS2 r_eta = ko_s2_realify(0, 1);
    const KOClassS2 r_eta_sq = ko_s2_realify(-1, 2);
    const KOClassS2 lhs = r_eta_sq + ko_s2_realify(1, 0);
    const KOClassS2 rhs = 2 * r_eta;
    auto pair = [](const KOClassS2& c) { return nlohmann::json::array({c.rank.to_string(), c.reduced}); };
    return {{"r_eta", pair(r_eta)},
            {"r_eta_squared", pair(r_eta_sq)},
            {"lhs", pair(lhs)},
            {"rhs", pair(rhs)},
            {"equal", lhs == rhs},
            {"stably_trivial", lhs.stably_trivial() && r_eta_sq.stably_trivial()}};
}

inline nlohmann::json doubled_hopf_e_invariant() {
    const kring::RingModel s2cp2 = kring::make_ring(
        kring::Space::smash(kring::Space::even_sphere(1), kring::Space::complex_projective(2)));
    nlohmann::json rows = nlohmann::json::array();
    for (long k : einv::default_primes()) {
        const einv::TwoCellModel t = einv::two_cell_from(s2cp2, k);
        rows.push_back({{"k", k},
                        {"e", einv::e_invariant(t).to_string()},
                        {"doubled_e", einv::e_invariant(t.scaled(2)).to_string()}});
    }
    return rows;
}

}  // namespace checks

inline std::vector<DerivationStep> prop_2_3_chain() {
    return {
        computed_step("η² = 2η − 1 in K(CP¹)", "kring.eta_squared", checks::eta_squared(),
                      "K(CP¹) = Z[η]/((η − 1)²)"),
        computed_step("r(η²) + 2 = 2r(η) = 4 is trivial in KO(S²)", "ko.realify_eta_squared",
                      checks::realify_eta_squared(), "realification K~(S²) → KO~(S²) = Z/2"),
        cited_step("For this bundle the J-order equals the KO-order, so KO-triviality of r(η²) − 2 makes "
                   "S^N T(2η) split stably",
                   "Adams, On the groups J(X)"),
        computed_step("S²∪_{2h}B⁴ splits stably, hence 2[Sh_c] = 0; the doubled e-invariant vanishes",
                      "einv.doubled_hopf", checks::doubled_hopf_e_invariant(),
                      "e-invariant scales linearly in the attaching map"),
    };
}

}  // namespace stemcert::jorder
