#pragma once

#include "cpxcp/abelian.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace cpxcp {

/// Central-extension presentation: G = <x, y, Z> with [x,y] = s of order p,
/// x^p, y^p central.  The single input format for all user-supplied groups.
struct GroupPresentation {
    Int p;
    FgAbelian center;
    CentralVector s;   // [x, y]
    CentralVector xp;  // x^p
    CentralVector yp;  // y^p

    // Cheap semantic fingerprint; equal presentations share it, so mixing
    // elements across presentations is detectable.
    std::uint64_t id = 0;

    bool operator==(const GroupPresentation& o) const {
        return p == o.p && center == o.center && s == o.s && xp == o.xp && yp == o.yp;
    }

    // |G| = p^2 * |Z| for finite centers.
    std::optional<Int> group_size() const;
};

GroupPresentation make_presentation(Int p, FgAbelian center, CentralVector s,
                                    CentralVector xp, CentralVector yp);

enum class ViolationKind {
    NonPrimeP,
    TrivialCommutator,
    CommutatorOrderNotP,
    UnreducedExponent,
    UnknownFactorName,
};

struct Violation {
    ViolationKind kind;
    std::string detail;
};

std::string to_string(ViolationKind k);

/// Structural checks; violations are data, not exceptions.
std::vector<Violation> validate(const GroupPresentation& pres);

struct ParseError : std::runtime_error {
    int line, col;
    ParseError(int line_, int col_, const std::string& what)
        : std::runtime_error("parse error at " + std::to_string(line_) + ":" +
                             std::to_string(col_) + ": " + what),
          line(line_), col(col_) {}
};

struct ValidationError : std::runtime_error {
    std::vector<Violation> violations;
    explicit ValidationError(std::vector<Violation> v);
};

/// Parses the DSL:
///   group := "group" "{" stmt (";" stmt)* "}"
///   stmt  := "prime" INT | "center" factor ("," factor)* |
///            "comm" word | "xp" word | "yp" word
/// Exponents are reduced mod finite factor orders; the result is validated.
GroupPresentation parse(const std::string& text);

enum class EmitFormat { Dsl, Json };

std::string emit(const GroupPresentation& pres, EmitFormat format);

}  // namespace cpxcp
