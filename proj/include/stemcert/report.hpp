#pragma once

// Derivation reports for the first three stems.  Each computed step names a
// check in check_registry(); replay() recomputes every such check from
// scratch and compares it with the stored evidence.

#include "stemcert/derivation.hpp"
#include "stemcert/einv.hpp"
#include "stemcert/hopf.hpp"
#include "stemcert/jorder.hpp"
#include "stemcert/kring.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace stemcert::report {

namespace checks {

inline kring::RingModel s2_smash_cp2() {
    return kring::make_ring(kring::Space::smash(kring::Space::even_sphere(1), kring::Space::complex_projective(2)));
}

inline kring::RingModel hp2() { return kring::make_ring(kring::Space::quaternionic_projective(2)); }

inline nlohmann::json s2cp2_obstruction() {
    return einv::to_json(einv::splitting_verdict(s2_smash_cp2(), {2, 3, 5, 7}));
}

// Lower bound from the e-invariant, upper bound from the doubled attaching map.
inline nlohmann::json hopf_order() {
    const auto t = einv::two_cell_from(s2_smash_cp2(), 2);
    const BigInt lower = einv::order_lower_bound(t);
    BigInt upper(0);
    for (long d = 1; d <= 64 && upper.is_zero(); ++d)
        if (einv::e_invariant(t.scaled(d)).is_zero()) upper = d;
    return {{"lower_bound", lower.to_string()}, {"killed_by", upper.to_string()}};
}

inline nlohmann::json double_cover_monodromy() {
    constexpr int steps = 512;
    const auto gamma = hopf::ball_loop(hopf::LoopName::Gamma, steps);
    const auto alpha = hopf::ball_loop(hopf::LoopName::Alpha, steps);
    const auto beta = hopf::ball_loop(hopf::LoopName::Beta, steps);
    return {{"gamma", hopf::lift_loop(gamma).monodromy},
            {"gamma_twice", hopf::lift_loop(hopf::concatenate(gamma, gamma)).monodromy},
            {"alpha", hopf::lift_loop(alpha).monodromy},
            {"alpha_then_beta", hopf::lift_loop(hopf::concatenate(alpha, beta)).monodromy}};
}

inline nlohmann::json fiber_linking() {
    const auto r = hopf::fiber_linking({1, 0, 0}, {-1, 0, 0}, 512);
    return {{"fibers_over", "i, -i"}, {"abs_linking_rounded", std::lround(std::abs(r.linking))}};
}

inline nlohmann::json eta_squared_order() {
    const nlohmann::json eta = hopf_order();
    // 2[Sh o S^2h] = [2Sh o S^2h] = [0 o S^2h] = 0: the order of a composite
    // divides the order of its first factor.
    return {{"eta_killed_by", eta.at("killed_by")}, {"eta_squared_killed_by", eta.at("killed_by")}};
}

inline nlohmann::json nu_upper_bound() { return jorder::to_json(jorder::nu_order_bound()); }

inline nlohmann::json j_sphere_orders() {
    nlohmann::json rows = nlohmann::json::array();
    for (long k = 1; k <= 3; ++k) {
        const jorder::JOrderBound b = jorder::j_order_bound(2 * k);
        rows.push_back({{"k", k},
                        {"bernoulli", jorder::bernoulli(2 * k).to_string()},
                        {"m", b.value.to_string()},
                        {"methods", b.methods.size()}});
    }
    return rows;
}

inline nlohmann::json ko_s4_relation() { return jorder::to_json(jorder::ko_s4_relation_check()); }

inline nlohmann::json thom_24() {
    const auto s = jorder::thom_space(jorder::Family::QuaternionicP, 1, 24);
    return {{"space", s.name()}, {"cells", s.cell_dimensions()}};
}

inline nlohmann::json hp2_obstruction() {
    const auto cert = einv::splitting_verdict(hp2(), {2, 3});
    return {{"certificate", einv::to_json(cert)}, {"lower_bound", einv::order_lower_bound(hp2()).to_string()}};
}

inline nlohmann::json feder_gitler_12() {
    const BigInt b1 = jorder::hopf_bundle_j_order(1);
    const auto s12 = jorder::thom_space(jorder::Family::QuaternionicP, 1, 12);
    return {{"B1", b1.to_string()},
            {"space", s12.name()},
            {"cells", s12.cell_dimensions()},
            {"equivalent_12_0", jorder::feder_gitler_equivalent(1, 12, 0, b1)},
            {"equivalent_24_0", jorder::feder_gitler_equivalent(1, 24, 0, b1)}};
}

}  // namespace checks

using Check = std::function<nlohmann::json()>;

inline const std::map<std::string, Check>& check_registry() {
    static const std::map<std::string, Check> registry{
        {"kring.eta_squared", jorder::checks::eta_squared},
        {"ko.realify_eta_squared", jorder::checks::realify_eta_squared},
        {"einv.doubled_hopf", jorder::checks::doubled_hopf_e_invariant},
        {"einv.s2cp2", checks::s2cp2_obstruction},
        {"einv.hopf_order", checks::hopf_order},
        {"hopf.monodromy", checks::double_cover_monodromy},
        {"hopf.linking", checks::fiber_linking},
        {"stem2.order", checks::eta_squared_order},
        {"jorder.nu_bound", checks::nu_upper_bound},
        {"jorder.sphere_orders", checks::j_sphere_orders},
        {"ko.s4_relation", checks::ko_s4_relation},
        {"thom.hp25", checks::thom_24},
        {"einv.hp2", checks::hp2_obstruction},
        {"fg.hp13", checks::feder_gitler_12},
    };
    return registry;
}

inline nlohmann::json run_check(const std::string& id) {
    const auto& reg = check_registry();
    auto it = reg.find(id);
    if (it == reg.end()) throw std::invalid_argument("unknown check: " + id);
    return it->second();
}

inline DerivationStep computed(std::string claim, const std::string& check, std::string reference) {
    return computed_step(std::move(claim), check, run_check(check), std::move(reference));
}

struct StemReport {
    int stem = 0;
    std::string group;      // "Z₂", "Z₂₄"
    std::string generator;  // "η", "η²", "ν"
    std::string conclusion;
    std::vector<DerivationStep> steps;
    std::vector<std::string> notes;

    friend bool operator==(const StemReport&, const StemReport&) = default;
};

inline std::string cyclic_group(const BigInt& order) {
    return "Z" + kring::detail::subscript(static_cast<int>(order.to_int64()));
}

inline std::string stem_symbol(int stem) { return "π" + kring::detail::subscript(stem) + "^S"; }

inline StemReport stem_one() {
    StemReport r{1, "", "η", "", {}, {}};
    r.steps.push_back(computed("S²CP² is not S⁴ ∨ S⁶: the ψ-matrices are not integrally diagonalizable, e = 1/2",
                               "einv.s2cp2", "Adams operations on K~(S²CP²)"));
    for (auto& s : jorder::prop_2_3_chain()) r.steps.push_back(std::move(s));
    r.steps.push_back(computed("[Sh_c] has order exactly 2", "einv.hopf_order",
                               "e-invariant lower bound with the split doubled Thom space"));
    r.steps.push_back(computed("π₁(SO(3)) = Z₂: the loop γ lifts to S³ with monodromy −1, γ·γ with +1",
                               "hopf.monodromy", "double cover S³ → SO(3), kernel {±1}"));
    r.steps.push_back(computed("Two Hopf fibers are linked once", "hopf.linking", "Gauss linking integral"));
    r.steps.push_back(cited_step("π₄(S³) is in the stable range, so π₁^S ≅ π₄(S³) generated by [Sh_c]",
                                 "Freudenthal suspension theorem"));
    const BigInt order = BigInt::parse(r.steps[5].evidence.at("killed_by").get<std::string>());
    r.group = cyclic_group(order);
    r.conclusion = stem_symbol(1) + " = " + r.group + ", generator " + r.generator;
    return r;
}

inline StemReport stem_two() {
    StemReport r{2, "", "η²", "", {}, {}};
    r.steps.push_back(computed("2[Sh_c ∘ S²h_c] = [2Sh_c ∘ S²h_c] = [0 ∘ S²h_c] = 0", "stem2.order",
                               "order of a composite divides the order of its first factor"));
    r.steps.push_back(cited_step("[Sh_c ∘ S²h_c] ≠ 0: π₄(S³) → π₄(S²) is an isomorphism and the EHP sequence of the "
                                 "2-local fibration S² → ΩS³ → ΩS⁵ makes E: π₄(S²) → π₅(S³) an isomorphism",
                                 "EHP sequence (James, Toda)"));
    r.steps.push_back(cited_step("π₂^S ≅ π₆(S⁴) by the Freudenthal suspension theorem",
                                 "Freudenthal suspension theorem"));
    r.notes = {"KO~(S³) = 0, so η² is not in the image of J even though η is.",
               "Under π_k^S ≅ Ω_k^fr, η² is the framed torus; its Arf–Kervaire invariant detects it.",
               "Adams' d_R invariant also detects η²; no recipe for it is mechanized here."};
    const BigInt order = BigInt::parse(r.steps[0].evidence.at("eta_squared_killed_by").get<std::string>());
    r.group = cyclic_group(order);
    r.conclusion = stem_symbol(2) + " = " + r.group + ", generator " + r.generator;
    return r;
}

inline StemReport stem_three() {
    StemReport r{3, "", "ν", "", {}, {}};
    r.steps.push_back(computed("24ν = 0: gcd_k k^N(k² − 1) = 24, by the Adams conjecture on x = 1 ∈ KO~(S⁴)",
                               "jorder.nu_bound", "Adams conjecture (theorem of Quillen, Sullivan, Becker–Gottlieb)"));
    r.steps.push_back(computed("J~(S^{4k}) has order m(2k) = denominator of B_2k/4k: 24, 240, 504",
                               "jorder.sphere_orders", "Adams, On the groups J(X) IV"));
    r.steps.push_back(computed("η_q²⁴ + 92 = 24η_q in KO(S⁴) (ranks 96 = 96; charge model 24 = 24)",
                               "ko.s4_relation", "KO(HP¹) model"));
    r.steps.push_back(computed("T(24η_q) = HP²⁵/HP²³ has cells in dimensions 96 and 100, so S^N(HP²⁵/HP²³) = "
                               "S^{96+N} ∨ S^{100+N}",
                               "thom.hp25", "Thom spaces of multiples of the Hopf bundle"));
    r.steps.push_back(computed("ΣHP² does not split: complex e-invariant 1/12, so the order of ν is at least 12",
                               "einv.hp2", "Adams operations on K~(HP²)"));
    r.steps.push_back(cited_step("HP^{n+k}/HP^{k−1} and HP^{n+l}/HP^{l−1} are stably equivalent iff k ≡ l mod B_n, "
                                 "with B₁ = 24",
                                 "Feder–Gitler, stable homotopy types of stunted projective spaces"));
    r.steps.push_back(computed("12 ≢ 0 mod 24, so HP¹³/HP¹¹ is not stably S⁴⁸ ∨ S⁵² and 12ν ≠ 0",
                               "fg.hp13", "congruence criterion with B₁ = 24"));
    r.notes = {"Z₂₄ is the third stem π₃^S.",
               "Relations η⁴ = ην = 0 and η³ = 12ν hold in the stable stems; they are not checked here.",
               "Under π₃^S ≅ Ω₃^fr, ν is the framed S³; 24[S³] = 0 via the K3 surface."};
    const BigInt upper = BigInt::parse(r.steps[0].evidence.at("m").get<std::string>());
    r.group = cyclic_group(upper);
    r.conclusion = stem_symbol(3) + " = " + r.group + ", generator " + r.generator;
    return r;
}

inline StemReport build_report(int stem) {
    switch (stem) {
        case 1: return stem_one();
        case 2: return stem_two();
        case 3: return stem_three();
        default: throw std::invalid_argument("stem must be 1, 2 or 3");
    }
}

struct ReplayResult {
    std::size_t step = 0;
    bool ok = false;
    std::string message;
};

inline std::vector<ReplayResult> replay(const StemReport& r) {
    std::vector<ReplayResult> out;
    for (std::size_t i = 0; i < r.steps.size(); ++i) {
        const auto& s = r.steps[i];
        if (s.status != StepStatus::Computed) continue;
        ReplayResult res{i, false, ""};
        try {
            const nlohmann::json fresh = run_check(s.check);
            res.ok = fresh == s.evidence;
            if (!res.ok) res.message = "evidence mismatch for " + s.check + ": recomputed " + fresh.dump();
        } catch (const std::exception& e) {
            res.message = s.check + ": " + e.what();
        }
        out.push_back(std::move(res));
    }
    return out;
}

inline bool replays(const StemReport& r) {
    for (const auto& res : replay(r))
        if (!res.ok) return false;
    return true;
}

inline nlohmann::json to_json(const StemReport& r) {
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& s : r.steps) steps.push_back(stemcert::to_json(s));
    return {{"stem", r.stem},
            {"group", r.group},
            {"generator", r.generator},
            {"conclusion", r.conclusion},
            {"steps", steps},
            {"notes", r.notes}};
}

inline StemReport report_from_json(const nlohmann::json& j) {
    StemReport r;
    r.stem = j.at("stem").get<int>();
    r.group = j.at("group").get<std::string>();
    r.generator = j.at("generator").get<std::string>();
    r.conclusion = j.at("conclusion").get<std::string>();
    for (const auto& s : j.at("steps")) r.steps.push_back(step_from_json(s));
    r.notes = j.at("notes").get<std::vector<std::string>>();
    return r;
}

}  // namespace stemcert::report
