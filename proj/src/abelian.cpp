#include "cpxcp/abelian.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace cpxcp {

FgAbelian::FgAbelian(std::vector<Factor> factors) {
    std::set<std::string> seen;
    for (auto& f : factors) {
        if (f.name.empty()) throw std::invalid_argument("FgAbelian: empty factor name");
        if (!seen.insert(f.name).second)
            throw std::invalid_argument("FgAbelian: duplicate factor name " + f.name);
        if (f.order.is_finite() && f.order.n < 2)
            throw std::invalid_argument("FgAbelian: finite factor order must be >= 2");
    }
    factors_ = std::move(factors);
}

int FgAbelian::free_rank() const {
    int r = 0;
    for (const auto& f : factors_)
        if (!f.order.is_finite()) ++r;
    return r;
}

int FgAbelian::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < factors_.size(); ++i)
        if (factors_[i].name == name) return static_cast<int>(i);
    return -1;
}

CentralVector FgAbelian::reduced(CentralVector v) const {
    if (v.c.size() != factors_.size())
        throw std::invalid_argument("CentralVector has wrong dimension");
    for (std::size_t i = 0; i < factors_.size(); ++i)
        if (factors_[i].order.is_finite()) v.c[i] = mod_floor(v.c[i], factors_[i].order.n);
    return v;
}

bool FgAbelian::is_reduced(const CentralVector& v) const {
    if (v.c.size() != factors_.size()) return false;
    for (std::size_t i = 0; i < factors_.size(); ++i)
        if (factors_[i].order.is_finite() &&
            (v.c[i] < 0 || v.c[i] >= factors_[i].order.n))
            return false;
    return true;
}

CentralVector FgAbelian::add(const CentralVector& a, const CentralVector& b) const {
    if (a.c.size() != factors_.size() || b.c.size() != factors_.size())
        throw std::invalid_argument("CentralVector has wrong dimension");
    CentralVector r = zero();
    for (std::size_t i = 0; i < factors_.size(); ++i) r.c[i] = a.c[i] + b.c[i];
    return reduced(std::move(r));
}

CentralVector FgAbelian::neg(const CentralVector& a) const {
    CentralVector r = zero();
    for (std::size_t i = 0; i < factors_.size(); ++i) r.c[i] = -a.c[i];
    return reduced(std::move(r));
}

CentralVector FgAbelian::scale(const Int& k, const CentralVector& a) const {
    CentralVector r = zero();
    for (std::size_t i = 0; i < factors_.size(); ++i) r.c[i] = k * a.c[i];
    return reduced(std::move(r));
}

std::optional<Int> FgAbelian::size() const {
    Int n = 1;
    for (const auto& f : factors_) {
        if (!f.order.is_finite()) return std::nullopt;
        n *= f.order.n;
    }
    return n;
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::mul(const IntMatrix& o) const {
    if (cols != o.rows) throw std::invalid_argument("IntMatrix::mul: shape mismatch");
    IntMatrix r(rows, o.cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t k = 0; k < cols; ++k) {
            const Int& x = (*this)(i, k);
            if (x == 0) continue;
            for (std::size_t j = 0; j < o.cols; ++j) r(i, j) += x * o(k, j);
        }
    return r;
}

Int IntMatrix::det() const {
    if (rows != cols) throw std::invalid_argument("IntMatrix::det: not square");
    if (rows == 0) return 1;
    // Bareiss fraction-free elimination.
    IntMatrix m = *this;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < rows; ++k) {
        if (m(k, k) == 0) {
            std::size_t piv = k + 1;
            while (piv < rows && m(piv, k) == 0) ++piv;
            if (piv == rows) return 0;
            for (std::size_t j = 0; j < cols; ++j) std::swap(m(k, j), m(piv, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < rows; ++i)
            for (std::size_t j = k + 1; j < cols; ++j)
                m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
        prev = m(k, k);
    }
    return sign > 0 ? m(rows - 1, rows - 1) : Int(-m(rows - 1, rows - 1));
}

namespace {

Int abs_int(const Int& v) { return v < 0 ? Int(-v) : v; }

// Row/column elementary operations mirrored into the transform matrices.
void swap_rows(IntMatrix& m, IntMatrix& u, std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < m.cols; ++k) std::swap(m(i, k), m(j, k));
    for (std::size_t k = 0; k < u.cols; ++k) std::swap(u(i, k), u(j, k));
}

void swap_cols(IntMatrix& m, IntMatrix& v, std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < m.rows; ++k) std::swap(m(k, i), m(k, j));
    for (std::size_t k = 0; k < v.rows; ++k) std::swap(v(k, i), v(k, j));
}

void add_row(IntMatrix& m, IntMatrix& u, std::size_t dst, std::size_t src, const Int& f) {
    if (f == 0) return;
    for (std::size_t k = 0; k < m.cols; ++k) m(dst, k) += f * m(src, k);
    for (std::size_t k = 0; k < u.cols; ++k) u(dst, k) += f * u(src, k);
}

void add_col(IntMatrix& m, IntMatrix& v, std::size_t dst, std::size_t src, const Int& f) {
    if (f == 0) return;
    for (std::size_t k = 0; k < m.rows; ++k) m(k, dst) += f * m(k, src);
    for (std::size_t k = 0; k < v.rows; ++k) v(k, dst) += f * v(k, src);
}

void negate_row(IntMatrix& m, IntMatrix& u, std::size_t i) {
    for (std::size_t k = 0; k < m.cols; ++k) m(i, k) = -m(i, k);
    for (std::size_t k = 0; k < u.cols; ++k) u(i, k) = -u(i, k);
}

// Minimal-|value| nonzero entry of the trailing submatrix, row-major first.
bool find_pivot(const IntMatrix& m, std::size_t s, std::size_t& pi, std::size_t& pj) {
    bool found = false;
    Int best = 0;
    for (std::size_t i = s; i < m.rows; ++i)
        for (std::size_t j = s; j < m.cols; ++j) {
            if (m(i, j) == 0) continue;
            Int a = abs_int(m(i, j));
            if (!found || a < best) {
                found = true;
                best = a;
                pi = i;
                pj = j;
            }
        }
    return found;
}

}  // namespace

SmithResult smith_normal_form(const IntMatrix& input) {
    SmithResult r;
    r.s = input;
    r.u = IntMatrix::identity(input.rows);
    r.v = IntMatrix::identity(input.cols);
    IntMatrix& m = r.s;

    const std::size_t nmin = std::min(m.rows, m.cols);
    for (std::size_t k = 0; k < nmin; ++k) {
        std::size_t pi = k, pj = k;
        if (!find_pivot(m, k, pi, pj)) break;  // trailing block zero: done
        swap_rows(m, r.u, k, pi);
        swap_cols(m, r.v, k, pj);

        for (;;) {
            // Clear column k below the pivot.
            bool dirty = false;
            for (std::size_t i = k + 1; i < m.rows; ++i) {
                if (m(i, k) == 0) continue;
                Int q = m(i, k) / m(k, k);
                add_row(m, r.u, i, k, -q);
                if (m(i, k) != 0) dirty = true;
            }
            for (std::size_t j = k + 1; j < m.cols; ++j) {
                if (m(k, j) == 0) continue;
                Int q = m(k, j) / m(k, k);
                add_col(m, r.v, j, k, -q);
                if (m(k, j) != 0) dirty = true;
            }
            if (dirty) {
                // Remainders survived; re-pick the smallest pivot and repeat.
                find_pivot(m, k, pi, pj);
                swap_rows(m, r.u, k, pi);
                swap_cols(m, r.v, k, pj);
                continue;
            }
            // Row and column clear; enforce divisibility into the rest.
            bool divides = true;
            for (std::size_t i = k + 1; i < m.rows && divides; ++i)
                for (std::size_t j = k + 1; j < m.cols && divides; ++j)
                    if (m(i, j) % m(k, k) != 0) {
                        add_row(m, r.u, k, i, 1);
                        divides = false;
                    }
            if (divides) break;
        }
        if (m(k, k) < 0) negate_row(m, r.u, k);
    }
    return r;
}

InvariantFactors invariant_factors(const FgAbelian& a) {
    InvariantFactors out;
    out.free_rank = a.free_rank();
    std::vector<Int> orders;
    for (const auto& f : a.factors())
        if (f.order.is_finite()) orders.push_back(f.order.n);
    if (orders.empty()) return out;
    IntMatrix d(orders.size(), orders.size());
    for (std::size_t i = 0; i < orders.size(); ++i) d(i, i) = orders[i];
    SmithResult s = smith_normal_form(d);
    for (std::size_t i = 0; i < orders.size(); ++i)
        if (s.s(i, i) > 1) out.torsion.push_back(s.s(i, i));
    return out;
}

bool abelian_iso(const FgAbelian& a, const FgAbelian& b) {
    return invariant_factors(a) == invariant_factors(b);
}

PrimarySplit primary_split(const FgAbelian& a, const Int& p) {
    if (!is_prime(p)) throw std::invalid_argument("primary_split: p must be prime");
    std::vector<Factor> bf, cf, ff;
    for (const auto& f : a.factors()) {
        if (!f.order.is_finite()) {
            ff.push_back(f);
            continue;
        }
        Int cof;
        int e = p_valuation(f.order.n, p, cof);
        if (e > 0) bf.push_back({f.name, CyclicOrder::finite(pow_int(p, e))});
        if (cof > 1) cf.push_back({f.name, CyclicOrder::finite(cof)});
    }
    return PrimarySplit{FgAbelian(std::move(bf)), FgAbelian(std::move(cf)),
                        FgAbelian(std::move(ff))};
}

AdaptedBasis adapted_basis(const std::vector<Int>& w) {
    const std::size_t r = w.size();
    if (r == 0) throw std::invalid_argument("adapted_basis: rank must be >= 1");
    bool all_zero = true;
    for (const auto& e : w)
        if (e != 0) all_zero = false;
    if (all_zero) throw std::invalid_argument("adapted_basis: zero vector");

    // SNF of w as a column: U*w*V = (alpha, 0, ..., 0)^T with V = (±1).
    IntMatrix col(r, 1);
    for (std::size_t i = 0; i < r; ++i) col(i, 0) = w[i];
    SmithResult s = smith_normal_form(col);
    Int alpha = s.s(0, 0);
    // w = U^{-1} * (alpha e_1) * V^{-1}; fold V (= ±1) into the first row so
    // the rows of U^{-1}, as basis vectors, satisfy w = alpha * u_1.
    // Compute U^{-1} by solving U * X = I via the unimodularity of U
    // (adjugate-free: invert with another SNF would be overkill; use Bareiss
    // style Gauss over Q is unnecessary — do integer inversion via the
    // identity U^{-1} = V' where smith(U) must be I; simplest is cofactor
    // elimination with exact division since det U = ±1).
    const IntMatrix& u = s.u;
    IntMatrix inv = IntMatrix::identity(r);
    IntMatrix work = u;
    // Gauss-Jordan over the integers: pivots are ±1 eventually because U is
    // unimodular; eliminate with exact rational-free steps by swapping in a
    // ±1 pivot produced by the Euclidean row ops.
    for (std::size_t k = 0; k < r; ++k) {
        // Euclidean reduction in column k to create a ±1 pivot.
        for (;;) {
            std::size_t best = k;
            bool found = false;
            for (std::size_t i = k; i < r; ++i) {
                if (work(i, k) == 0) continue;
                if (!found || abs_int(work(i, k)) < abs_int(work(best, k))) {
                    best = i;
                    found = true;
                }
            }
            if (!found) throw std::logic_error("adapted_basis: singular unimodular matrix");
            if (best != k) {
                for (std::size_t j = 0; j < r; ++j) {
                    std::swap(work(k, j), work(best, j));
                    std::swap(inv(k, j), inv(best, j));
                }
            }
            bool clear = true;
            for (std::size_t i = k + 1; i < r; ++i) {
                if (work(i, k) == 0) continue;
                Int q = work(i, k) / work(k, k);
                for (std::size_t j = 0; j < r; ++j) {
                    work(i, j) -= q * work(k, j);
                    inv(i, j) -= q * inv(k, j);
                }
                if (work(i, k) != 0) clear = false;
            }
            if (clear) break;
        }
    }
    // Back-substitute (work is upper triangular with ±1 diagonal).
    for (std::size_t kk = r; kk-- > 0;) {
        if (work(kk, kk) == -1) {
            for (std::size_t j = 0; j < r; ++j) {
                work(kk, j) = -work(kk, j);
                inv(kk, j) = -inv(kk, j);
            }
        }
        for (std::size_t i = 0; i < kk; ++i) {
            Int q = work(i, kk);
            if (q == 0) continue;
            for (std::size_t j = 0; j < r; ++j) {
                work(i, j) -= q * work(kk, j);
                inv(i, j) -= q * inv(kk, j);
            }
        }
    }
    // Now inv = U^{-1}. Basis rows: u_i = row i of (U^{-1})^T? Careful:
    // U*w = alpha*e_1*V^{-1}; with V 1x1 = (v), v = ±1: w = U^{-1} e_1 * alpha * v.
    // So u_1 = v * (column 1 of U^{-1}); take u_i = columns of U^{-1}, with
    // the first column sign-adjusted.
    Int vsign = s.v(0, 0);
    AdaptedBasis out;
    out.alpha = alpha;
    out.basis = IntMatrix(r, r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
            out.basis(i, j) = inv(j, i);  // row i of basis = column i of U^{-1}
    if (vsign < 0)
        for (std::size_t j = 0; j < r; ++j) out.basis(0, j) = -out.basis(0, j);
    return out;
}

CyclicOrder central_order(const FgAbelian& a, const CentralVector& v) {
    if (v.c.size() != a.rank()) throw std::invalid_argument("central_order: dimension mismatch");
    Int o = 1;
    for (std::size_t i = 0; i < a.rank(); ++i) {
        const auto& f = a.at(i);
        if (!f.order.is_finite()) {
            if (v.c[i] != 0) return CyclicOrder::infinite();
            continue;
        }
        Int e = mod_floor(v.c[i], f.order.n);
        if (e == 0) continue;
        o = lcm(o, f.order.n / gcd(e, f.order.n));
    }
    return CyclicOrder::finite(o);
}

std::optional<Rebase> Rebase::make(const FgAbelian& old,
                                   std::vector<std::pair<std::string, CentralVector>> gens) {
    Rebase rb;
    rb.old_ = old;

    // The proposed generators, with their orders in the old group, must have
    // the same invariant factors as the old group...
    std::vector<Factor> new_factors;
    for (auto& [name, vec] : gens) {
        if (vec.c.size() != old.rank()) return std::nullopt;
        CyclicOrder o = central_order(old, old.reduced(vec));
        if (o.is_finite() && o.n == 1) return std::nullopt;  // trivial generator
        new_factors.push_back({name, o});
    }
    FgAbelian candidate;
    try {
        candidate = FgAbelian(new_factors);
    } catch (const std::invalid_argument&) {
        return std::nullopt;
    }
    if (invariant_factors(candidate) != invariant_factors(old)) return std::nullopt;

    // ...and generate it: SNF of [G | R] has all-ones diagonal, where G's
    // columns are the generators and R the finite-order relations.
    const std::size_t kOld = old.rank();
    std::size_t nFinite = 0;
    for (const auto& f : old.factors())
        if (f.order.is_finite()) ++nFinite;
    IntMatrix m(kOld, gens.size() + nFinite);
    for (std::size_t j = 0; j < gens.size(); ++j)
        for (std::size_t i = 0; i < kOld; ++i) m(i, j) = gens[j].second.c[i];
    {
        std::size_t j = gens.size();
        for (std::size_t i = 0; i < kOld; ++i)
            if (old.at(i).order.is_finite()) m(i, j++) = old.at(i).order.n;
    }
    SmithResult s = smith_normal_form(m);
    for (std::size_t i = 0; i < kOld; ++i)
        if (i >= std::min(m.rows, m.cols) || s.s(i, i) != 1) return std::nullopt;

    rb.new_ = std::move(candidate);
    rb.gens_.reserve(gens.size());
    for (auto& [name, vec] : gens) rb.gens_.push_back(old.reduced(vec));
    rb.u_ = std::move(s.u);
    rb.v_ = std::move(s.v);
    rb.n_cols_ = m.cols;
    return rb;
}

CentralVector Rebase::to_new(const CentralVector& old_coords) const {
    if (old_coords.c.size() != old_.rank())
        throw std::invalid_argument("Rebase::to_new: dimension mismatch");
    const std::size_t kOld = old_.rank();
    // Solve [G | R] * w = v exactly: w = V * (U*v padded with zeros).
    std::vector<Int> uv(kOld, 0);
    for (std::size_t i = 0; i < kOld; ++i)
        for (std::size_t j = 0; j < kOld; ++j) uv[i] += u_(i, j) * old_coords.c[j];
    CentralVector out = new_.zero();
    for (std::size_t i = 0; i < gens_.size(); ++i) {
        Int w = 0;
        for (std::size_t j = 0; j < kOld; ++j) w += v_(i, j) * uv[j];
        out.c[i] = w;
    }
    return new_.reduced(std::move(out));
}

CentralVector Rebase::to_old(const CentralVector& new_coords) const {
    if (new_coords.c.size() != new_.rank())
        throw std::invalid_argument("Rebase::to_old: dimension mismatch");
    CentralVector out = old_.zero();
    for (std::size_t i = 0; i < gens_.size(); ++i)
        for (std::size_t j = 0; j < old_.rank(); ++j)
            out.c[j] += new_coords.c[i] * gens_[i].c[j];
    return old_.reduced(std::move(out));
}

}  // namespace cpxcp
