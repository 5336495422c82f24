#pragma once

#include <nlohmann/json.hpp>

#include <stdexcept>
#include <string>

namespace stemcert {

/// A checked invariant did not hold.  The CLI maps this to exit code 3.
class VerificationFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class StepStatus {
    Computed,  // evidence is recomputed by the named check
    Cited,     // taken from the literature; not machine-checked here
};

inline std::string to_string(StepStatus s) { return s == StepStatus::Computed ? "computed" : "cited"; }

inline StepStatus step_status_from_string(const std::string& s) {
    if (s == "computed") return StepStatus::Computed;
    if (s == "cited") return StepStatus::Cited;
    throw std::invalid_argument("unknown step status: " + s);
}

struct DerivationStep {
    std::string claim;
    StepStatus status = StepStatus::Cited;
    std::string check;          // replay id for computed steps
    nlohmann::json evidence;    // check output, or a citation object
    std::string reference;      // where the claim comes from

    friend bool operator==(const DerivationStep&, const DerivationStep&) = default;
};

inline DerivationStep computed_step(std::string claim, std::string check, nlohmann::json evidence,
                                    std::string reference) {
    return {std::move(claim), StepStatus::Computed, std::move(check), std::move(evidence), std::move(reference)};
}

inline DerivationStep cited_step(std::string claim, std::string reference) {
    nlohmann::json evidence = {{"citation", reference}};
    return {std::move(claim), StepStatus::Cited, "", std::move(evidence), std::move(reference)};
}

inline nlohmann::json to_json(const DerivationStep& s) {
    return {{"claim", s.claim},
            {"status", to_string(s.status)},
            {"check", s.check},
            {"evidence", s.evidence},
            {"reference", s.reference}};
}

inline DerivationStep step_from_json(const nlohmann::json& j) {
    return {j.at("claim").get<std::string>(), step_status_from_string(j.at("status").get<std::string>()),
            j.at("check").get<std::string>(), j.at("evidence"), j.at("reference").get<std::string>()};
}

}  // namespace stemcert
