#pragma once

#include "cpxcp/ints.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cpxcp {

/// Order of a cyclic factor: finite n >= 2 or infinite.
struct CyclicOrder {
    // 0 encodes infinite; finite values are >= 2 (trivial factors are
    // stripped at FgAbelian construction).
    Int n = 0;

    static CyclicOrder infinite() { return CyclicOrder{0}; }
    static CyclicOrder finite(Int v) { return CyclicOrder{std::move(v)}; }

    bool is_finite() const { return n != 0; }
    bool operator==(const CyclicOrder&) const = default;
};

struct Factor {
    std::string name;
    CyclicOrder order;

    bool operator==(const Factor&) const = default;
};

/// Exponent vector over the factors of a specific FgAbelian, index-aligned.
struct CentralVector {
    std::vector<Int> c;

    bool is_zero() const {
        for (const auto& e : c)
            if (e != 0) return false;
        return true;
    }
    bool operator==(const CentralVector&) const = default;
};

/// Finitely generated abelian group as an ordered list of named cyclic
/// factors. Order-1 factors are rejected at construction.
class FgAbelian {
  public:
    FgAbelian() = default;
    explicit FgAbelian(std::vector<Factor> factors);

    const std::vector<Factor>& factors() const { return factors_; }
    std::size_t rank() const { return factors_.size(); }
    int free_rank() const;

    // Index of a named factor, or -1.
    int index_of(const std::string& name) const;

    const Factor& at(std::size_t i) const { return factors_.at(i); }

    CentralVector zero() const { return CentralVector{std::vector<Int>(factors_.size(), 0)}; }

    // Reduce each coordinate into [0, n) for finite factors.
    CentralVector reduced(CentralVector v) const;
    bool is_reduced(const CentralVector& v) const;

    CentralVector add(const CentralVector& a, const CentralVector& b) const;
    CentralVector neg(const CentralVector& a) const;
    CentralVector scale(const Int& k, const CentralVector& a) const;

    // |A| for finite A, nullopt when a free factor is present.
    std::optional<Int> size() const;

    bool operator==(const FgAbelian&) const = default;

  private:
    std::vector<Factor> factors_;
};

/// Dense arbitrary-precision integer matrix, row-major.
struct IntMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<Int> a;

    IntMatrix() = default;
    IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}

    Int& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const Int& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    static IntMatrix identity(std::size_t n);
    IntMatrix mul(const IntMatrix& o) const;
    Int det() const;  // exact, via fraction-free elimination on a copy
    bool operator==(const IntMatrix&) const = default;
};

struct SmithResult {
    IntMatrix s;  // diagonal, d_i >= 0, d_i | d_{i+1}
    IntMatrix u;  // unimodular rows x rows
    IntMatrix v;  // unimodular cols x cols
};

/// U*M*V = S with S diagonal, nonnegative, divisibility chain. Pivot choice:
/// minimal nonzero absolute value, first occurrence in row-major scan.
SmithResult smith_normal_form(const IntMatrix& m);

struct InvariantFactors {
    std::vector<Int> torsion;  // d_1 | d_2 | ..., all >= 2
    int free_rank = 0;

    bool operator==(const InvariantFactors&) const = default;
};

InvariantFactors invariant_factors(const FgAbelian& a);

bool abelian_iso(const FgAbelian& a, const FgAbelian& b);

struct PrimarySplit {
    FgAbelian b;  // p-torsion part
    FgAbelian c;  // coprime torsion part
    FgAbelian f;  // free part
};

PrimarySplit primary_split(const FgAbelian& a, const Int& p);

struct AdaptedBasis {
    // r x r unimodular matrix; row i is the basis vector u_{i+1} in the old
    // coordinates, with w = alpha * u_1.
    IntMatrix basis;
    Int alpha;
};

/// Basis of Z^r adapted to the nonzero vector w: w = alpha*u_1, alpha = gcd(w).
AdaptedBasis adapted_basis(const std::vector<Int>& w);

CyclicOrder central_order(const FgAbelian& a, const CentralVector& v);

/// A verified change of generators of an FgAbelian: the new generators are
/// given in old coordinates, checked to generate the group with unchanged
/// invariant factors, and coordinate conversion runs both ways exactly.
class Rebase {
  public:
    const FgAbelian& old_group() const { return old_; }
    const FgAbelian& new_group() const { return new_; }

    CentralVector to_new(const CentralVector& old_coords) const;
    CentralVector to_old(const CentralVector& new_coords) const;

    // Attempts the rebase; nullopt when the proposed generators do not give a
    // direct decomposition isomorphic to `old`.
    static std::optional<Rebase> make(const FgAbelian& old,
                                      std::vector<std::pair<std::string, CentralVector>> gens);

  private:
    FgAbelian old_, new_;
    std::vector<CentralVector> gens_;  // new generators in old coordinates
    // Solver data: SNF of [G | R] where G's columns are the generators and R
    // holds the finite-order relations of the old group.
    IntMatrix u_, v_;
    std::size_t n_cols_ = 0;
};

}  // namespace cpxcp
