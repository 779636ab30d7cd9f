#include "cpxcp/decompose.hpp"

#include <algorithm>
#include <set>

namespace cpxcp {

namespace {

struct Tracker {
    Transcript transcript;
    std::vector<CentralVector> old_images;  // input factors in current coords

    void init(const FgAbelian& z) {
        old_images.clear();
        for (std::size_t i = 0; i < z.rank(); ++i) {
            CentralVector u = z.zero();
            u.c[i] = 1;
            old_images.push_back(std::move(u));
        }
    }
};

GroupPresentation tracked_rebase(const GroupPresentation& g, const Rebase& rb, Tracker& tk) {
    for (auto& img : tk.old_images) img = rb.to_new(img);
    return apply_rebase(g, rb, &tk.transcript);
}

GroupPresentation tracked_locate(const GroupPresentation& g, Tracker& tk) {
    Transcript local;
    GroupPresentation out = locate_t1(g, &local);
    // Re-apply the recorded rebases to the tracked images.
    GroupPresentation cur = g;
    for (const auto& step : local.steps) {
        const auto* rs = std::get_if<RebaseStep>(&step);
        if (!rs) throw std::logic_error("locate_t1 emitted a non-rebase step");
        auto rb = Rebase::make(cur.center, rs->gens);
        if (!rb) throw std::logic_error("locate_t1 transcript not replayable");
        for (auto& img : tk.old_images) img = rb->to_new(img);
        cur = apply_rebase(cur, *rb, nullptr);
    }
    tk.transcript.append(local);
    return out;
}

// Torsion indices (p-power factors) and free indices of the support of w,
// ignoring `skip` positions.
struct Support {
    std::vector<std::size_t> torsion;
    std::vector<std::size_t> free;
};

Support support_of(const GroupPresentation& g, const CentralVector& w,
                   const std::set<std::size_t>& skip) {
    Support s;
    for (std::size_t i = 0; i < g.center.rank(); ++i) {
        if (skip.count(i) || w.c[i] == 0) continue;
        if (g.center.at(i).order.is_finite())
            s.torsion.push_back(i);
        else
            s.free.push_back(i);
    }
    return s;
}

// Merges the support of `w` (beyond `skip`) into a single factor and returns
// its index: the proof's t_2 <- t_2^{a_2} ... t_m^{a_m} step for pure torsion,
// and the adapted-basis step with the torsion carried into the new infinite
// generator when free coordinates are present.
std::optional<std::size_t> merge_support(GroupPresentation& g, const CentralVector*& wptr,
                                         const std::set<std::size_t>& skip, Tracker& tk,
                                         bool is_xp) {
    const CentralVector& w = *wptr;
    Support sup = support_of(g, w, skip);
    if (sup.torsion.empty() && sup.free.empty()) return std::nullopt;

    if (sup.free.empty()) {
        // Pure torsion: sort descending by order, ties by declaration order.
        std::stable_sort(sup.torsion.begin(), sup.torsion.end(),
                         [&](std::size_t a, std::size_t b) {
                             return g.center.at(a).order.n > g.center.at(b).order.n;
                         });
        std::size_t target = sup.torsion.front();
        if (sup.torsion.size() == 1) return target;
        std::vector<std::pair<std::string, CentralVector>> gens;
        for (std::size_t i = 0; i < g.center.rank(); ++i) {
            CentralVector v = g.center.zero();
            if (i == target) {
                for (std::size_t t : sup.torsion) v.c[t] = w.c[t];
            } else {
                v.c[i] = 1;
            }
            gens.emplace_back(g.center.at(i).name, std::move(v));
        }
        auto rb = Rebase::make(g.center, gens);
        if (!rb) throw std::logic_error("decompose: torsion merge rebase rejected");
        g = tracked_rebase(g, *rb, tk);
        wptr = is_xp ? &g.xp : &g.yp;
        return target;
    }

    // Free coordinates present: adapted basis on the participating free part,
    // with the torsion coordinates folded into the new first generator.
    std::vector<std::size_t> free_slots;
    for (std::size_t i = 0; i < g.center.rank(); ++i)
        if (!g.center.at(i).order.is_finite() && !skip.count(i)) free_slots.push_back(i);
    std::vector<Int> wfree;
    for (std::size_t f : free_slots) wfree.push_back(w.c[f]);
    AdaptedBasis ab = adapted_basis(wfree);
    if (gcd(ab.alpha, g.p) != 1)
        throw std::logic_error("decompose: adapted alpha divisible by p after reduction");

    // tau = torsion part of w beyond skip; fold tau^{alpha^{-1}} into u_1.
    Int tau_order = 1;
    for (std::size_t t : sup.torsion) {
        CentralVector only = g.center.zero();
        only.c[t] = w.c[t];
        CyclicOrder o = central_order(g.center, only);
        tau_order = lcm(tau_order, o.n);
    }
    Int alpha_inv = tau_order == 1 ? Int(1) : inv_mod(ab.alpha, tau_order);

    std::vector<std::pair<std::string, CentralVector>> gens;
    for (std::size_t i = 0; i < g.center.rank(); ++i) {
        CentralVector v = g.center.zero();
        auto slot = std::find(free_slots.begin(), free_slots.end(), i);
        if (slot == free_slots.end()) {
            v.c[i] = 1;
        } else {
            std::size_t row = static_cast<std::size_t>(slot - free_slots.begin());
            for (std::size_t col = 0; col < free_slots.size(); ++col)
                v.c[free_slots[col]] = ab.basis(row, col);
            if (row == 0)
                for (std::size_t t : sup.torsion) v.c[t] = alpha_inv * w.c[t];
        }
        gens.emplace_back(g.center.at(i).name, std::move(v));
    }
    auto rb = Rebase::make(g.center, gens);
    if (!rb) throw std::logic_error("decompose: adapted rebase rejected");
    g = tracked_rebase(g, *rb, tk);
    wptr = is_xp ? &g.xp : &g.yp;
    return free_slots.front();
}

}  // namespace

DecompositionResult decompose(const GroupPresentation& pres) {
    Tracker tk;
    tk.init(pres.center);
    GroupPresentation g = tracked_locate(pres, tk);  // splits mixed factors first
    {
        Transcript local;
        g = reduce_pth_powers(g, &local);
        tk.transcript.append(local);
    }

    std::set<std::size_t> designated{0};  // t1
    const CentralVector* w = &g.xp;
    auto z2 = merge_support(g, w, designated, tk, true);
    if (z2) designated.insert(*z2);
    {
        Transcript local;
        g = reduce_pth_powers(g, &local);  // re-reduce after rebasing
        tk.transcript.append(local);
    }
    w = &g.yp;
    auto z3 = merge_support(g, w, designated, tk, false);
    if (z3) designated.insert(*z3);
    {
        Transcript local;
        g = reduce_pth_powers(g, &local);
        tk.transcript.append(local);
    }

    // Project: D keeps t1 (+ z2, z3) in that order; A absorbs the rest. The
    // reorder is a recorded rebase so transcripts replay it.
    std::vector<std::size_t> d_slots{0};
    if (z2) d_slots.push_back(*z2);
    if (z3) d_slots.push_back(*z3);
    std::vector<std::size_t> a_slots;
    for (std::size_t i = 0; i < g.center.rank(); ++i)
        if (!designated.count(i)) a_slots.push_back(i);

    for (std::size_t i : a_slots)
        if (g.s.c[i] != 0 || g.xp.c[i] != 0 || g.yp.c[i] != 0)
            throw std::logic_error("decompose: undesignated factor still in use");

    std::vector<std::size_t> final_order = d_slots;
    final_order.insert(final_order.end(), a_slots.begin(), a_slots.end());
    bool trivial_perm = true;
    for (std::size_t i = 0; i < final_order.size(); ++i)
        if (final_order[i] != i) trivial_perm = false;
    if (!trivial_perm) {
        std::vector<std::pair<std::string, CentralVector>> gens;
        for (std::size_t i : final_order) {
            CentralVector u = g.center.zero();
            u.c[i] = 1;
            gens.emplace_back(g.center.at(i).name, std::move(u));
        }
        auto rb = Rebase::make(g.center, gens);
        if (!rb) throw std::logic_error("decompose: permutation rebase rejected");
        g = tracked_rebase(g, *rb, tk);
    }

    const std::size_t nd = d_slots.size();
    auto project = [&](const CentralVector& v) {
        std::vector<Int> c(v.c.begin(), v.c.begin() + static_cast<long>(nd));
        return CentralVector{std::move(c)};
    };
    std::vector<Factor> d_factors(g.center.factors().begin(),
                                  g.center.factors().begin() + static_cast<long>(nd));
    std::vector<Factor> a_factors(g.center.factors().begin() + static_cast<long>(nd),
                                  g.center.factors().end());

    DecompositionResult out;
    out.d = make_presentation(g.p, FgAbelian(std::move(d_factors)), project(g.s),
                              project(g.xp), project(g.yp));
    out.a = FgAbelian(std::move(a_factors));
    out.transcript = std::move(tk.transcript);
    for (const auto& f : g.center.factors()) out.final_factor_names.push_back(f.name);
    out.old_images = std::move(tk.old_images);
    return out;
}

GroupPresentation product(const GroupPresentation& d, const FgAbelian& a) {
    std::set<std::string> taken;
    for (const auto& f : d.center.factors()) taken.insert(f.name);
    std::vector<Factor> factors = d.center.factors();
    for (const auto& f : a.factors()) {
        std::string name = f.name;
        while (taken.count(name)) name += "_";
        taken.insert(name);
        factors.push_back({name, f.order});
    }
    FgAbelian z(factors);
    auto extend = [&](const CentralVector& v) {
        CentralVector out = z.zero();
        for (std::size_t i = 0; i < d.center.rank(); ++i) out.c[i] = v.c[i];
        return out;
    };
    return make_presentation(d.p, z, extend(d.s), extend(d.xp), extend(d.yp));
}

std::pair<Element, Element> recover_generators(const GroupPresentation& g, const Element& g1,
                                               const Element& g2) {
    // Coset exponents: g1 ~ x^a y^b, g2 ~ x^n y^m.
    const Int &a = g1.xe, &b = g1.ye, &n = g2.xe, &m = g2.ye;
    Int det = mod_floor(a * m - b * n, g.p);
    if (det == 0) throw CommutingPair();
    Int di = inv_mod(det, g.p);
    // [a n; b m]^{-1} = det^{-1} [m -n; -b a]; columns solve for (1,0), (0,1).
    Int ax = mod_floor(di * m, g.p), bx = mod_floor(-di * b, g.p);
    Int ay = mod_floor(-di * n, g.p), by = mod_floor(di * a, g.p);
    Element x1 = multiply(g, power(g, g1, ax), power(g, g2, bx));
    Element y1 = multiply(g, power(g, g1, ay), power(g, g2, by));
    return {x1, y1};
}

}  // namespace cpxcp
