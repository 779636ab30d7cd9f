#include "cpxcp/classify.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <set>

namespace cpxcp {

namespace {

int p_exponent(const Int& n, const Int& p) {
    Int cof;
    int e = p_valuation(n, p, cof);
    if (cof != 1) throw std::logic_error("factor order is not a p-power");
    return e;
}

// ---------------------------------------------------------------------------
// GL2(F_p) enumeration and realization as generator moves
// ---------------------------------------------------------------------------

struct Gl2 {
    Int a, b, c, d;  // new x = x^a y^b, new y = x^c y^d
};

std::vector<Gl2> gl2_all(const Int& p) {
    std::vector<Gl2> out;
    out.push_back({1, 0, 0, 1});
    for (Int a = 0; a < p; ++a)
        for (Int b = 0; b < p; ++b)
            for (Int c = 0; c < p; ++c)
                for (Int d = 0; d < p; ++d) {
                    if (mod_floor(a * d - b * c, p) == 0) continue;
                    if (a == 1 && b == 0 && c == 0 && d == 1) continue;
                    out.push_back({a, b, c, d});
                }
    return out;
}

// Factors A into elementary row operations; returns moves in application
// order whose composite generator change is exactly A.
std::vector<GeneratorMove> moves_for_gl2(const Gl2& A, const Int& p) {
    Int m[2][2] = {{A.a, A.b}, {A.c, A.d}};
    std::vector<GeneratorMove> inverse_ops;

    auto row_scale = [&](int r, const Int& c) {
        m[r][0] = mod_floor(m[r][0] * c, p);
        m[r][1] = mod_floor(m[r][1] * c, p);
        Int cinv = inv_mod(c, p);
        inverse_ops.push_back(r == 0 ? GeneratorMove::x_pow(cinv) : GeneratorMove::y_pow(cinv));
    };
    auto row_add = [&](int dst, int src, const Int& f) {
        m[dst][0] = mod_floor(m[dst][0] + f * m[src][0], p);
        m[dst][1] = mod_floor(m[dst][1] + f * m[src][1], p);
        Int neg = mod_floor(-f, p);
        if (neg != 0)
            inverse_ops.push_back(dst == 0 ? GeneratorMove::x_times_y_pow(neg)
                                           : GeneratorMove::y_times_x_pow(neg));
    };
    auto row_swap = [&]() {
        std::swap(m[0][0], m[1][0]);
        std::swap(m[0][1], m[1][1]);
        inverse_ops.push_back(GeneratorMove::swap());
    };

    if (m[0][0] == 0) row_swap();
    if (m[0][0] != 1) row_scale(0, inv_mod(m[0][0], p));
    if (m[1][0] != 0) row_add(1, 0, mod_floor(-m[1][0], p));
    if (m[1][1] != 1) row_scale(1, inv_mod(m[1][1], p));
    if (m[0][1] != 0) row_add(0, 1, mod_floor(-m[0][1], p));

    std::reverse(inverse_ops.begin(), inverse_ops.end());
    return inverse_ops;
}

// ---------------------------------------------------------------------------
// Matcher machinery
// ---------------------------------------------------------------------------

CentralVector unit_vec(const GroupPresentation& g, std::size_t i) {
    CentralVector v = g.center.zero();
    v.c[i] = 1;
    return v;
}

struct State {
    GroupPresentation g;
    Transcript tr;

    int m_of(std::size_t slot) const { return p_exponent(g.center.at(slot).order.n, g.p); }
    bool finite(std::size_t slot) const { return g.center.at(slot).order.is_finite(); }

    bool s_in_form() const {
        if (!finite(0)) return false;
        Int want = pow_int(g.p, m_of(0) - 1);
        if (g.s.c[0] != want) return false;
        for (std::size_t i = 1; i < g.center.rank(); ++i)
            if (g.s.c[i] != 0) return false;
        return true;
    }

    // Replace the generator of `slot` by `vec`; fails when the rebase is
    // invalid or s leaves t1-power form.
    bool absorb(std::size_t slot, const CentralVector& vec) {
        std::vector<std::pair<std::string, CentralVector>> gens;
        for (std::size_t i = 0; i < g.center.rank(); ++i)
            gens.emplace_back(g.center.at(i).name,
                              i == slot ? vec : unit_vec(g, i));
        auto rb = Rebase::make(g.center, gens);
        if (!rb) return false;
        Transcript local;
        GroupPresentation next = apply_rebase(g, *rb, &local);
        if (!State{next, {}}.s_in_form()) return false;
        g = std::move(next);
        tr.append(local);
        return true;
    }

    void move(const GeneratorMove& mv) {
        g = apply_move_raw(g, mv, &tr);
        g = locate_t1(g, &tr);
        Transcript local;
        g = reduce_pth_powers(g, &local);
        tr.append(local);
    }

    // Scale a generator so the given coordinate of y^p (resp. x^p) is 1.
    bool normalize_yp_coord(std::size_t slot) {
        Int b = mod_floor(g.yp.c[slot], g.p);
        if (b == 0) return false;
        Int c = inv_mod(b, g.p);
        if (c != 1) move(GeneratorMove::y_pow(c));
        return g.yp.c[slot] == 1;
    }
    bool normalize_xp_coord(std::size_t slot) {
        Int a = mod_floor(g.xp.c[slot], g.p);
        if (a == 0) return false;
        Int c = inv_mod(a, g.p);
        if (c != 1) move(GeneratorMove::x_pow(c));
        return g.xp.c[slot] == 1;
    }

    SplitFound split_off(const std::vector<std::size_t>& slots) {
        SplitFound sf;
        std::set<std::size_t> drop(slots.begin(), slots.end());
        for (std::size_t i : slots) {
            if (g.s.c[i] != 0 || g.xp.c[i] != 0 || g.yp.c[i] != 0)
                throw std::logic_error("split_off: factor still in use");
            sf.factors.push_back(g.center.at(i));
            tr.steps.push_back(SplitStep{g.center.at(i).name});
        }
        std::vector<Factor> keep;
        std::vector<Int> sc, xc, yc;
        for (std::size_t i = 0; i < g.center.rank(); ++i) {
            if (drop.count(i)) continue;
            keep.push_back(g.center.at(i));
            sc.push_back(g.s.c[i]);
            xc.push_back(g.xp.c[i]);
            yc.push_back(g.yp.c[i]);
        }
        sf.reduced = make_presentation(g.p, FgAbelian(keep), CentralVector{sc},
                                       CentralVector{xc}, CentralVector{yc});
        return sf;
    }

    // Permutation rebase bringing the factors into the given slot order.
    void reorder(const std::vector<std::size_t>& order) {
        bool trivial = true;
        for (std::size_t i = 0; i < order.size(); ++i)
            if (order[i] != i) trivial = false;
        if (trivial) return;
        std::vector<std::pair<std::string, CentralVector>> gens;
        for (std::size_t i : order)
            gens.emplace_back(g.center.at(i).name, unit_vec(g, i));
        auto rb = Rebase::make(g.center, gens);
        if (!rb) throw std::logic_error("reorder: permutation rebase rejected");
        g = apply_rebase(g, *rb, &tr);
    }
};

ClassifyOutcome split_outcome(State st, std::vector<std::size_t> slots) {
    ClassifyOutcome out;
    out.split = st.split_off(slots);
    out.transcript = std::move(st.tr);
    return out;
}

ClassifyOutcome family_outcome(State st, int family, std::vector<Int> m, int inf_rank) {
    ClassifyOutcome out;
    out.family = family;
    out.m = std::move(m);
    out.infinite_rank = inf_rank;
    out.canonical = st.g;
    out.transcript = std::move(st.tr);
    return out;
}

// t1 <- yp^{1/yp[0]}; valid when the rest of yp's support is torsion of order
// < p^{m1} (the s-form check enforces it). Exposes the other slots as direct
// factors.
std::optional<ClassifyOutcome> try_t1_absorb(const State& st0) {
    const GroupPresentation& g = st0.g;
    if (!g.xp.is_zero()) return std::nullopt;
    if (g.yp.c[0] == 0 || mod_floor(g.yp.c[0], g.p) == 0) return std::nullopt;
    for (std::size_t i = 1; i < g.center.rank(); ++i)
        if (g.yp.c[i] != 0 && !g.center.at(i).order.is_finite()) return std::nullopt;
    Int e = inv_mod(g.yp.c[0], g.center.at(0).order.n);
    State st = st0;
    CentralVector t1 = g.center.scale(e, g.yp);
    if (!st.absorb(0, t1)) return std::nullopt;
    std::vector<std::size_t> unused;
    for (std::size_t i = 1; i < st.g.center.rank(); ++i) {
        if (st.g.xp.c[i] != 0 || st.g.yp.c[i] != 0 || st.g.s.c[i] != 0) return std::nullopt;
        unused.push_back(i);
    }
    return split_outcome(std::move(st), unused);
}

struct Candidate {
    State st;
    std::optional<SplitFound> split;
};

// Applies the generator change A, re-decomposes, reports an exposed split or
// the normalized candidate.
Candidate prepare(const GroupPresentation& d, const Gl2& A) {
    Candidate c;
    c.st.g = d;
    for (const auto& mv : moves_for_gl2(A, d.p))
        c.st.g = apply_move_raw(c.st.g, mv, &c.st.tr);
    DecompositionResult dec = decompose(c.st.g);
    c.st.tr.append(dec.transcript);
    if (dec.a.rank() > 0) {
        SplitFound sf;
        for (const auto& f : dec.a.factors()) {
            sf.factors.push_back(f);
            c.st.tr.steps.push_back(SplitStep{f.name});
        }
        sf.reduced = dec.d;
        c.split = std::move(sf);
    }
    c.st.g = dec.d;
    return c;
}

ClassifyOutcome to_outcome(Candidate c) {
    ClassifyOutcome out;
    out.split = std::move(c.split);
    out.transcript = std::move(c.st.tr);
    return out;
}

ClassifyOutcome rank1_impl(const GroupPresentation& d) {
    for (const Gl2& A : gl2_all(d.p)) {
        Candidate c = prepare(d, A);
        if (c.split) throw std::logic_error("classify_rank1: unexpected split");
        State& st = c.st;
        const Int &a = st.g.xp.c[0], &b = st.g.yp.c[0];
        if (a == 0 && b == 0) return family_outcome(std::move(st), 1, {Int(st.m_of(0))}, 0);
        if (a == 1 && b == 1) return family_outcome(std::move(st), 2, {Int(st.m_of(0))}, 0);
    }
    throw std::logic_error("classify_rank1: no matcher fired");
}

ClassifyOutcome rank2_impl(const GroupPresentation& d) {
    for (const Gl2& A : gl2_all(d.p)) {
        Candidate c = prepare(d, A);
        if (c.split) return to_outcome(std::move(c));
        State& st = c.st;
        const GroupPresentation& g = st.g;
        if (g.center.rank() != 2) throw std::logic_error("classify_rank2: unexpected rank");

        if (st.finite(1)) {
            int m1 = st.m_of(0), m2 = st.m_of(1);
            if (g.xp.is_zero() && g.yp.c[1] != 0) {
                State f3 = st;
                if (f3.absorb(1, g.yp) && f3.g.xp.is_zero() && f3.g.yp == unit_vec(f3.g, 1))
                    return family_outcome(std::move(f3), 3, {Int(m1), Int(m2)}, 0);
            }
            if (g.xp == unit_vec(g, 0) && g.yp.c[1] != 0) {
                State f4 = st;
                if (f4.absorb(1, g.yp) && f4.g.xp == unit_vec(f4.g, 0) &&
                    f4.g.yp == unit_vec(f4.g, 1))
                    return family_outcome(std::move(f4), 4, {Int(m1), Int(m2)}, 0);
            }
            if (auto split = try_t1_absorb(st)) return std::move(*split);
        } else {
            int m1 = st.m_of(0);
            if (g.xp.is_zero() && g.yp.c[1] != 0) {
                State f5 = st;
                if (f5.normalize_yp_coord(1) && f5.g.xp.is_zero()) {
                    if (f5.g.yp.c[0] != 0 && !f5.absorb(1, f5.g.yp)) continue;
                    if (f5.g.xp.is_zero() && f5.g.yp == unit_vec(f5.g, 1))
                        return family_outcome(std::move(f5), 5, {Int(m1)}, 1);
                }
            }
            if (g.xp.c[1] == 0 && g.xp.c[0] != 0 && g.yp.c[1] != 0) {
                State f6 = st;
                if (!f6.normalize_yp_coord(1)) continue;
                if (f6.g.yp.c[0] != 0 && !f6.absorb(1, f6.g.yp)) continue;
                if (f6.g.xp.c[1] != 0) continue;
                Int lam = f6.g.xp.c[0];
                if (lam != 0 && lam > f6.g.p - lam) {
                    // Mirror the twist class representative: invert u1.
                    CentralVector u = f6.g.center.zero();
                    u.c[1] = -1;
                    if (!f6.absorb(1, u)) continue;
                    Transcript local;
                    f6.g = reduce_pth_powers(f6.g, &local);
                    f6.tr.append(local);
                    if (!f6.normalize_yp_coord(1)) continue;
                    if (f6.g.yp.c[0] != 0 && !f6.absorb(1, f6.g.yp)) continue;
                    lam = f6.g.xp.c[0];
                }
                if (lam != 0 && mod_floor(lam, f6.g.p) != 0 && f6.g.xp.c[1] == 0 &&
                    f6.g.yp == unit_vec(f6.g, 1))
                    return family_outcome(std::move(f6), 6, {Int(m1)}, 1);
            }
        }
    }
    throw std::logic_error("classify_rank2: no matcher fired");
}

ClassifyOutcome rank3_impl(const GroupPresentation& d) {
    for (int pass = 0; pass < 2; ++pass) {
        for (const Gl2& A : gl2_all(d.p)) {
            Candidate c = prepare(d, A);
            if (c.split) return to_outcome(std::move(c));
            State& st = c.st;
            const GroupPresentation& g = st.g;
            if (g.center.rank() != 3) throw std::logic_error("classify_rank3: unexpected rank");

            const int n_inf = g.center.free_rank();
            if (n_inf == 0) {
                for (std::size_t i : {std::size_t(1), std::size_t(2)}) {
                    std::size_t j = 3 - i;
                    if (g.xp.c[j] != 0 || g.xp.c[i] == 0 || g.yp.c[j] == 0) continue;
                    int m1 = st.m_of(0), mi = st.m_of(i), mj = st.m_of(j);
                    if (pass == 0 && mi > mj) continue;  // prefer m2 <= m3
                    State f7 = st;
                    if (!f7.absorb(i, g.xp)) continue;
                    if (f7.g.yp.c[j] == 0) continue;
                    if (!f7.absorb(j, f7.g.yp)) continue;
                    if (!(f7.g.xp == unit_vec(f7.g, i)) || !(f7.g.yp == unit_vec(f7.g, j)))
                        continue;
                    f7.reorder({0, i, j});
                    return family_outcome(std::move(f7), 7, {Int(m1), Int(mi), Int(mj)}, 0);
                }
                if (auto split = try_t1_absorb(st)) return std::move(*split);
            } else if (n_inf == 1) {
                std::size_t fi = st.finite(1) ? 1 : 2;
                std::size_t ui = 3 - fi;
                if (g.xp.c[ui] == 0 && g.xp.c[fi] != 0 && g.yp.c[ui] != 0) {
                    int m1 = st.m_of(0), m2 = st.m_of(fi);
                    State f8 = st;
                    if (f8.absorb(fi, g.xp) && f8.normalize_yp_coord(ui) &&
                        f8.g.xp == unit_vec(f8.g, fi)) {
                        bool ok = true;
                        if (f8.g.yp.c[0] != 0 || f8.g.yp.c[fi] != 0)
                            ok = f8.absorb(ui, f8.g.yp);
                        if (ok && f8.g.xp == unit_vec(f8.g, fi) &&
                            f8.g.yp == unit_vec(f8.g, ui)) {
                            f8.reorder({0, fi, ui});
                            return family_outcome(std::move(f8), 8, {Int(m1), Int(m2)}, 1);
                        }
                    }
                }
                if (auto split = try_t1_absorb(st)) return std::move(*split);
            } else {
                // Two infinite slots; decompose consolidated xp's free support.
                std::size_t u1;
                if (g.xp.c[1] != 0 && g.xp.c[2] == 0)
                    u1 = 1;
                else if (g.xp.c[2] != 0 && g.xp.c[1] == 0)
                    u1 = 2;
                else
                    continue;
                std::size_t u2 = 3 - u1;
                State f9 = st;
                if (f9.g.xp.c[0] != 0) {
                    // Fold xp's t1 part into the u1 generator.
                    Int alpha = f9.g.xp.c[u1];
                    Int n1 = f9.g.center.at(0).order.n;
                    CentralVector u = f9.g.center.zero();
                    u.c[0] = mod_floor(f9.g.xp.c[0] * inv_mod(alpha, n1), n1);
                    u.c[u1] = 1;
                    if (!f9.absorb(u1, u)) continue;
                }
                if (f9.g.xp.c[0] != 0 || !f9.normalize_xp_coord(u1)) continue;
                if (!(f9.g.xp == unit_vec(f9.g, u1))) continue;
                if (f9.g.yp.c[u2] == 0) {
                    // yp lives in <t1, u1>: u2 splits off.
                    return split_outcome(std::move(f9), {u2});
                }
                if (!f9.normalize_yp_coord(u2)) continue;
                if (!(f9.g.xp == unit_vec(f9.g, u1))) continue;
                if (f9.g.yp.c[0] != 0 || f9.g.yp.c[u1] != 0) {
                    if (!f9.absorb(u2, f9.g.yp)) continue;
                }
                if (f9.g.xp == unit_vec(f9.g, u1) && f9.g.yp == unit_vec(f9.g, u2)) {
                    f9.reorder({0, u1, u2});
                    return family_outcome(std::move(f9), 9, {Int(st.m_of(0))}, 2);
                }
            }
        }
    }
    throw std::logic_error("classify_rank3: no matcher fired");
}

std::vector<std::string> template_names(int family) {
    switch (family) {
        case 1:
        case 2: return {"t1"};
        case 3:
        case 4: return {"t1", "t2"};
        case 5:
        case 6: return {"t1", "u1"};
        case 7: return {"t1", "t2", "t3"};
        case 8: return {"t1", "t2", "u1"};
        case 9: return {"t1", "u1", "u2"};
    }
    throw std::invalid_argument("unknown family");
}

}  // namespace

ClassifyOutcome classify_rank1(const GroupPresentation& d) { return rank1_impl(d); }
ClassifyOutcome classify_rank2(const GroupPresentation& d) { return rank2_impl(d); }
ClassifyOutcome classify_rank3(const GroupPresentation& d) { return rank3_impl(d); }

int family_m_count(int family) {
    switch (family) {
        case 1:
        case 2:
        case 5:
        case 6:
        case 9: return 1;
        case 3:
        case 4:
        case 8: return 2;
        case 7: return 3;
    }
    throw std::invalid_argument("unknown family");
}

int family_infinite_rank(int family) {
    switch (family) {
        case 1:
        case 2:
        case 3:
        case 4:
        case 7: return 0;
        case 5:
        case 6:
        case 8: return 1;
        case 9: return 2;
    }
    throw std::invalid_argument("unknown family");
}

GroupPresentation canonical_presentation(int family, const Int& p, const std::vector<Int>& m) {
    if (family < 1 || family > 9) throw std::invalid_argument("unknown family");
    if (static_cast<int>(m.size()) != family_m_count(family))
        throw std::invalid_argument("wrong number of m-parameters");
    for (const auto& mi : m)
        if (mi < 1) throw std::invalid_argument("m-parameters must be >= 1");

    std::vector<std::string> names = template_names(family);
    std::vector<Factor> factors;
    std::size_t mi = 0;
    for (const auto& name : names) {
        if (name[0] == 't')
            factors.push_back({name, CyclicOrder::finite(pow_int(p, m.at(mi++)))});
        else
            factors.push_back({name, CyclicOrder::infinite()});
    }
    FgAbelian z(factors);
    CentralVector s = z.zero();
    s.c[0] = pow_int(p, m[0] - 1);
    CentralVector xp = z.zero(), yp = z.zero();
    switch (family) {
        case 1: break;
        case 2: xp.c[0] = 1; yp.c[0] = 1; break;
        case 3: yp.c[1] = 1; break;
        case 4: xp.c[0] = 1; yp.c[1] = 1; break;
        case 5: yp.c[1] = 1; break;
        case 6: xp.c[0] = 1; yp.c[1] = 1; break;
        case 7: xp.c[1] = 1; yp.c[2] = 1; break;
        case 8: xp.c[1] = 1; yp.c[2] = 1; break;
        case 9: xp.c[1] = 1; yp.c[2] = 1; break;
    }
    return make_presentation(p, z, std::move(s), std::move(xp), std::move(yp));
}

ClassifyResult classify(const GroupPresentation& pres) {
    {
        auto violations = validate(pres);
        if (!violations.empty()) throw ValidationError(std::move(violations));
    }
    Transcript tr;
    DecompositionResult dec = decompose(pres);
    tr.append(dec.transcript);
    std::vector<Factor> comp = dec.a.factors();
    for (const auto& f : dec.a.factors()) tr.steps.push_back(SplitStep{f.name});
    GroupPresentation d = dec.d;

    ClassifyOutcome out;
    bool done = false;
    for (int guard = 0; guard < 8 && !done; ++guard) {
        switch (d.center.rank()) {
            case 1: out = classify_rank1(d); break;
            case 2: out = classify_rank2(d); break;
            case 3: out = classify_rank3(d); break;
            default: throw std::logic_error("classify: unexpected center rank");
        }
        tr.append(out.transcript);
        if (out.is_split()) {
            for (const auto& f : out.split->factors) comp.push_back(f);
            d = out.split->reduced;
        } else {
            done = true;
        }
    }
    if (!done) throw std::logic_error("classify: split loop did not terminate");

    // Rename the canonical presentation's factors to the template names.
    GroupPresentation canon = out.canonical;
    {
        std::vector<std::string> names = template_names(out.family);
        std::vector<std::pair<std::string, CentralVector>> gens;
        for (std::size_t i = 0; i < canon.center.rank(); ++i) {
            CentralVector v = canon.center.zero();
            v.c[i] = 1;
            gens.emplace_back(names.at(i), std::move(v));
        }
        auto rb = Rebase::make(canon.center, gens);
        if (!rb) throw std::logic_error("classify: rename rebase rejected");
        canon = apply_rebase(canon, *rb, &tr);
    }

    ClassifyResult res;
    res.form.family = out.family;
    res.form.p = pres.p;
    res.form.m = out.m;
    res.form.infinite_rank = out.infinite_rank;
    {
        std::vector<Factor> cf;
        std::set<std::string> taken;
        for (Factor f : comp) {
            while (taken.count(f.name)) f.name += "_";
            taken.insert(f.name);
            cf.push_back(std::move(f));
        }
        res.form.complement = invariant_factors(FgAbelian(std::move(cf)));
    }
    res.canonical = std::move(canon);
    res.transcript = std::move(tr);
    return res;
}

bool canonical_iso(const CanonicalForm& a, const CanonicalForm& b) {
    return a.family == b.family && a.p == b.p && a.m == b.m &&
           a.infinite_rank == b.infinite_rank && a.complement == b.complement;
}

std::string canonical_form_json(const CanonicalForm& form, const Transcript& transcript) {
    nlohmann::json j;
    j["family"] = form.family;
    j["p"] = to_i64(form.p);
    j["m"] = nlohmann::json::array();
    for (const auto& mi : form.m) j["m"].push_back(to_i64(mi));
    j["infinite_rank"] = form.infinite_rank;
    j["complement"]["torsion"] = nlohmann::json::array();
    for (const auto& t : form.complement.torsion)
        j["complement"]["torsion"].push_back(to_i64(t));
    j["complement"]["free_rank"] = form.complement.free_rank;
    j["moves"] = nlohmann::json::array();
    for (const auto& step : transcript.steps) {
        nlohmann::json js;
        if (const auto* mv = std::get_if<GeneratorMove>(&step)) {
            switch (mv->kind) {
                case GeneratorMove::Kind::XTimesCentral: js["move"] = "x*=central"; break;
                case GeneratorMove::Kind::YTimesCentral: js["move"] = "y*=central"; break;
                case GeneratorMove::Kind::XTimesYPow: js["move"] = "x*=y^n"; break;
                case GeneratorMove::Kind::YTimesXPow: js["move"] = "y*=x^n"; break;
                case GeneratorMove::Kind::XPow: js["move"] = "x^=n"; break;
                case GeneratorMove::Kind::YPow: js["move"] = "y^=n"; break;
                case GeneratorMove::Kind::Swap: js["move"] = "swap"; break;
            }
            if (mv->kind == GeneratorMove::Kind::XTimesCentral ||
                mv->kind == GeneratorMove::Kind::YTimesCentral) {
                js["v"] = nlohmann::json::array();
                for (const auto& e : mv->v.c) js["v"].push_back(to_i64(e));
            } else if (mv->kind != GeneratorMove::Kind::Swap) {
                js["n"] = to_i64(mv->n);
            }
        } else if (const auto* rs = std::get_if<RebaseStep>(&step)) {
            nlohmann::json gens = nlohmann::json::array();
            for (const auto& [name, vec] : rs->gens) {
                nlohmann::json gj;
                gj["name"] = name;
                gj["coords"] = nlohmann::json::array();
                for (const auto& e : vec.c) gj["coords"].push_back(to_i64(e));
                gens.push_back(gj);
            }
            js["rebase"] = gens;
        } else if (const auto* sp = std::get_if<SplitStep>(&step)) {
            js["split"] = sp->factor;
        }
        j["moves"].push_back(js);
    }
    return j.dump();
}

}  // namespace cpxcp
