#pragma once

#include "cpxcp/normalize.hpp"

namespace cpxcp {

/// Constructive direct decomposition G = D x A: D keeps t1 plus the (at most
/// two) center factors supporting x^p and y^p, A absorbs the coprime torsion
/// and every unused factor.
struct DecompositionResult {
    GroupPresentation d;
    FgAbelian a;
    // Change of basis from the input center to the (Z(D), A) coordinates:
    // row i of `witness` gives factor i of [D's factors, then A's] as it sits
    // over the final rebased center; columns of `old_images` express each
    // input factor in those same final coordinates.
    std::vector<std::string> final_factor_names;
    std::vector<CentralVector> old_images;  // one per input factor, in final coords
    Transcript transcript;
};

DecompositionResult decompose(const GroupPresentation& pres);

/// Product presentation of D with an abelian complement (names uniquified).
GroupPresentation product(const GroupPresentation& d, const FgAbelian& a);

struct CommutingPair : std::invalid_argument {
    CommutingPair() : std::invalid_argument("pair has commuting images mod the center") {}
};

/// Lemma-3.4 recovery: from any pair with unit commutator determinant,
/// produce x1 = x (mod Z) and y1 = y (mod Z).
std::pair<Element, Element> recover_generators(const GroupPresentation& g, const Element& g1,
                                               const Element& g2);

}  // namespace cpxcp
