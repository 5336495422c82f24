#pragma once

// Splitting obstructions for two-cell complexes.
//
// A two-cell model X = S^{2a} u e^{2b} has
//
//     psi^k = [[k^a,   0  ],
//              [c_k,  k^b ]]
//
// in the basis (bottom, top).  Over Z this is conjugate to diag(k^a, k^b)
// iff (k^b - k^a) | c_k, and the defect c_k / (k^b - k^a) mod 1 is the
// e-invariant of the attaching map.  A nonzero value proves X is not
// stably a wedge of spheres.

#include "stemcert/exact.hpp"
#include "stemcert/kring.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace stemcert::einv {

struct TwoCellModel {
    int a = 0;  // bottom cell in dimension 2a
    int b = 0;  // top cell in dimension 2b
    long k = 0;
    BigInt c;   // off-diagonal entry of psi^k

    [[nodiscard]] BigInt bottom_eigenvalue() const { return BigInt::pow(BigInt(k), static_cast<unsigned long>(a)); }
    [[nodiscard]] BigInt top_eigenvalue() const { return BigInt::pow(BigInt(k), static_cast<unsigned long>(b)); }
    [[nodiscard]] BigInt modulus() const { return top_eigenvalue() - bottom_eigenvalue(); }

    /// Wedge S^{2a} v S^{2b}: diagonal Adams matrices.
    static TwoCellModel wedge(int a, int b, long k) { return {a, b, k, BigInt(0)}; }

    /// The complex attached by d times the attaching map.
    [[nodiscard]] TwoCellModel scaled(const BigInt& d) const { return {a, b, k, c * d}; }
};

inline void require_prime_index(long k) {
    if (k < 2) throw std::invalid_argument("two-cell analysis needs k >= 2, got " + std::to_string(k));
}

inline TwoCellModel two_cell_from(const kring::RingModel& model, long k) {
    require_prime_index(k);
    if (model.rank() != 2)
        throw std::invalid_argument(model.name() + " has " + std::to_string(model.rank()) +
                                    " cells; a two-cell model is required");
    const kring::AdamsMatrix m = kring::adams_matrix(model, k);
    const int d0 = m.cell_dims[0], d1 = m.cell_dims[1];
    if (d0 % 2 || d1 % 2 || d1 <= d0) throw std::logic_error("malformed cell dimensions in " + model.name());
    TwoCellModel out{d0 / 2, d1 / 2, k, m.at(1, 0)};
    if (!m.at(0, 1).is_zero() || m.at(0, 0) != out.bottom_eigenvalue() || m.at(1, 1) != out.top_eigenvalue())
        throw std::logic_error("Adams matrix of " + model.name() + " is not in two-cell normal form");
    return out;
}

inline BigRational e_invariant(const TwoCellModel& t) {
    require_prime_index(t.k);
    return BigRational(t.c, t.modulus()).mod_one();
}

inline BigRational e_invariant(const kring::RingModel& model, long k) { return e_invariant(two_cell_from(model, k)); }

enum class Verdict { Splits, DoesNotSplit, Inconclusive };

inline std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Splits: return "Splits";
        case Verdict::DoesNotSplit: return "DoesNotSplit";
        case Verdict::Inconclusive: return "Inconclusive";
    }
    return {};
}

inline Verdict verdict_from_string(const std::string& s) {
    if (s == "Splits") return Verdict::Splits;
    if (s == "DoesNotSplit") return Verdict::DoesNotSplit;
    if (s == "Inconclusive") return Verdict::Inconclusive;
    throw std::invalid_argument("unknown verdict: " + s);
}

struct Witness {
    long k = 0;
    BigInt c;
    BigInt modulus;
    BigRational e;

    friend bool operator==(const Witness&, const Witness&) = default;
};

struct ObstructionCertificate {
    Verdict verdict = Verdict::Inconclusive;
    // The first k with nonzero e-invariant for DoesNotSplit; otherwise the first tested k.
    Witness witness;
    std::vector<Witness> tested;

    friend bool operator==(const ObstructionCertificate&, const ObstructionCertificate&) = default;
};

inline ObstructionCertificate splitting_verdict(const std::vector<TwoCellModel>& data) {
    if (data.empty()) throw std::invalid_argument("splitting_verdict needs at least one k");
    ObstructionCertificate cert;
    bool all_diagonal = true;
    const Witness* obstruction = nullptr;
    for (const auto& t : data) {
        cert.tested.push_back({t.k, t.c, t.modulus(), e_invariant(t)});
        all_diagonal = all_diagonal && t.c.is_zero();
    }
    for (const auto& w : cert.tested) {
        if (!w.e.is_zero()) {
            obstruction = &w;
            break;
        }
    }
    if (obstruction) {
        cert.verdict = Verdict::DoesNotSplit;
        cert.witness = *obstruction;
    } else {
        cert.verdict = all_diagonal ? Verdict::Splits : Verdict::Inconclusive;
        cert.witness = cert.tested.front();
    }
    return cert;
}

inline const std::vector<long>& default_primes() {
    static const std::vector<long> primes{2, 3, 5};
    return primes;
}

inline ObstructionCertificate splitting_verdict(const kring::RingModel& model,
                                                const std::vector<long>& primes = default_primes()) {
    if (primes.empty()) throw std::invalid_argument("splitting_verdict needs at least one k");
    std::vector<TwoCellModel> data;
    for (long k : primes) data.push_back(two_cell_from(model, k));
    return splitting_verdict(data);
}

/// Denominator of the e-invariant: a lower bound for the stable order of the attaching map.
inline BigInt order_lower_bound(const TwoCellModel& t) { return e_invariant(t).den(); }

inline BigInt order_lower_bound(const kring::RingModel& model, long k = 2) {
    return order_lower_bound(two_cell_from(model, k));
}

inline nlohmann::json to_json(const Witness& w) {
    return {{"k", w.k}, {"c", w.c.to_string()}, {"modulus", w.modulus.to_string()}, {"e", w.e.to_string()}};
}

inline Witness witness_from_json(const nlohmann::json& j) {
    return {j.at("k").get<long>(), BigInt::parse(j.at("c").get<std::string>()),
            BigInt::parse(j.at("modulus").get<std::string>()), BigRational::parse(j.at("e").get<std::string>())};
}

// {verdict, k, c, modulus, e: "num/den"} plus the per-k table.
inline nlohmann::json to_json(const ObstructionCertificate& cert) {
    nlohmann::json j = to_json(cert.witness);
    j["verdict"] = to_string(cert.verdict);
    j["tested"] = nlohmann::json::array();
    for (const auto& w : cert.tested) j["tested"].push_back(to_json(w));
    return j;
}

inline ObstructionCertificate certificate_from_json(const nlohmann::json& j) {
    ObstructionCertificate cert;
    cert.verdict = verdict_from_string(j.at("verdict").get<std::string>());
    cert.witness = witness_from_json(j);
    for (const auto& w : j.at("tested")) cert.tested.push_back(witness_from_json(w));
    return cert;
}

}  // namespace stemcert::einv
