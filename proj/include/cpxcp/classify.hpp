#pragma once

#include "cpxcp/decompose.hpp"

namespace cpxcp {

/// Family tag 1..9 with parameters; complete description of the
/// indecomposable part plus the abelian complement's invariants.
struct CanonicalForm {
    int family = 0;
    Int p;
    std::vector<Int> m;    // m1 [, m2][, m3] — orders of the canonical t_i as exponents
    int infinite_rank = 0;  // 0, 1 or 2 infinite center factors
    InvariantFactors complement;

    bool operator==(const CanonicalForm&) const = default;
};

struct SplitFound {
    std::vector<Factor> factors;  // split-off central direct factors
    GroupPresentation reduced;
};

/// Result of one rank-dispatched classification step.
struct ClassifyOutcome {
    std::optional<SplitFound> split;
    // Set when no split was found:
    int family = 0;
    std::vector<Int> m;
    int infinite_rank = 0;
    GroupPresentation canonical;
    Transcript transcript;

    bool is_split() const { return split.has_value(); }
};

ClassifyOutcome classify_rank1(const GroupPresentation& d);
ClassifyOutcome classify_rank2(const GroupPresentation& d);
ClassifyOutcome classify_rank3(const GroupPresentation& d);

struct ClassifyResult {
    CanonicalForm form;
    GroupPresentation canonical;  // template-form presentation of D
    Transcript transcript;        // replays the input onto `canonical`
};

/// Full pipeline: decompose, dispatch by center rank, loop on splits.
ClassifyResult classify(const GroupPresentation& pres);

/// True iff family, p, all m-parameters and complement invariants agree.
bool canonical_iso(const CanonicalForm& a, const CanonicalForm& b);

/// Table-form instance of a family with the given parameters (complement
/// ignored; the indecomposable part only).
GroupPresentation canonical_presentation(int family, const Int& p, const std::vector<Int>& m);

/// Number of m-parameters (1, 2 or 3) and infinite rank (0, 1 or 2) per family.
int family_m_count(int family);
int family_infinite_rank(int family);

std::string canonical_form_json(const CanonicalForm& form, const Transcript& transcript);

}  // namespace cpxcp
