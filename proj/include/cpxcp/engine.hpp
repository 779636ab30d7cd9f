#pragma once

#include "cpxcp/presentation.hpp"

namespace cpxcp {

/// Group element in collected normal form x^i y^j c with 0 <= i,j < p and c
/// central.  Tagged with the owning presentation's fingerprint.
struct Element {
    Int xe, ye;
    CentralVector z;
    std::uint64_t pres_id = 0;

    bool operator==(const Element&) const = default;
};

struct MixedPresentations : std::invalid_argument {
    MixedPresentations() : std::invalid_argument("elements belong to different presentations") {}
};

Element make_element(const GroupPresentation& g, Int xe, Int ye, CentralVector z);
Element identity(const GroupPresentation& g);
Element gen_x(const GroupPresentation& g);
Element gen_y(const GroupPresentation& g);
Element central(const GroupPresentation& g, CentralVector z);

/// Collection product: yx = xy s^{-1}, x/y carries land in xp/yp.
Element multiply(const GroupPresentation& g, const Element& a, const Element& b);

Element inverse(const GroupPresentation& g, const Element& a);

/// (x^i y^j c)^n, closed form; negative n goes through the inverse.
Element power(const GroupPresentation& g, const Element& a, const Int& n);

/// [a, b] = a^{-1} b^{-1} a b = s^(i_a j_b - j_a i_b); always central.
CentralVector commutator(const GroupPresentation& g, const Element& a, const Element& b);

CyclicOrder element_order(const GroupPresentation& g, const Element& a);

bool is_central(const GroupPresentation& g, const Element& a);

}  // namespace cpxcp
