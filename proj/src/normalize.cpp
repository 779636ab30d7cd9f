#include "cpxcp/normalize.hpp"

#include <algorithm>
#include <set>

namespace cpxcp {

namespace {

std::string fresh_name(const std::set<std::string>& taken, std::string base) {
    while (taken.count(base)) base += "_";
    return base;
}

// Splits every finite factor of mixed order p^a * m (a >= 1, m >= 2) into a
// p-power factor and a coprime factor. Identity when nothing is mixed.
GroupPresentation split_mixed_factors(const GroupPresentation& pres, Transcript* transcript) {
    bool any_mixed = false;
    for (const auto& f : pres.center.factors()) {
        if (!f.order.is_finite()) continue;
        Int cof;
        int e = p_valuation(f.order.n, pres.p, cof);
        if (e > 0 && cof > 1) any_mixed = true;
    }
    if (!any_mixed) return pres;

    std::set<std::string> taken;
    for (const auto& f : pres.center.factors()) taken.insert(f.name);

    std::vector<std::pair<std::string, CentralVector>> gens;
    for (std::size_t i = 0; i < pres.center.rank(); ++i) {
        const auto& f = pres.center.at(i);
        CentralVector unit = pres.center.zero();
        unit.c[i] = 1;
        if (!f.order.is_finite()) {
            gens.emplace_back(f.name, unit);
            continue;
        }
        Int cof;
        int e = p_valuation(f.order.n, pres.p, cof);
        if (e == 0 || cof == 1) {
            gens.emplace_back(f.name, unit);
            continue;
        }
        // C_{p^e * m} = <t^m> x <t^{p^e}>.
        CentralVector gp = pres.center.zero();
        gp.c[i] = cof;
        CentralVector gc = pres.center.zero();
        gc.c[i] = pow_int(pres.p, e);
        std::string np = fresh_name(taken, f.name + "_p");
        taken.insert(np);
        std::string nc = fresh_name(taken, f.name + "_c");
        taken.insert(nc);
        gens.emplace_back(np, std::move(gp));
        gens.emplace_back(nc, std::move(gc));
    }
    auto rb = Rebase::make(pres.center, gens);
    if (!rb) throw std::logic_error("split_mixed_factors: rebase rejected");
    return apply_rebase(pres, *rb, transcript);
}

}  // namespace

GroupPresentation apply_rebase(const GroupPresentation& pres, const Rebase& rb,
                               Transcript* transcript) {
    if (!(rb.old_group() == pres.center))
        throw std::invalid_argument("apply_rebase: rebase built for a different center");
    GroupPresentation out = make_presentation(pres.p, rb.new_group(), rb.to_new(pres.s),
                                              rb.to_new(pres.xp), rb.to_new(pres.yp));
    if (transcript) {
        RebaseStep step;
        for (std::size_t i = 0; i < rb.new_group().rank(); ++i) {
            CentralVector unit = rb.new_group().zero();
            unit.c[i] = 1;
            step.gens.emplace_back(rb.new_group().at(i).name, rb.to_old(unit));
        }
        transcript->steps.push_back(std::move(step));
    }
    return out;
}

GroupPresentation locate_t1(const GroupPresentation& pres, Transcript* transcript) {
    GroupPresentation g = split_mixed_factors(pres, transcript);

    // s-coordinates over the p-power factors: coord_i = c_i * p^{m_i - 1}.
    const auto& z = g.center;
    struct Digit {
        std::size_t idx;
        int m;
        Int c;
    };
    std::vector<Digit> digits;
    for (std::size_t i = 0; i < z.rank(); ++i) {
        const auto& f = z.at(i);
        if (g.s.c[i] == 0) continue;
        if (!f.order.is_finite())
            throw std::invalid_argument("locate_t1: commutator has infinite-order support");
        Int cof;
        int m = p_valuation(f.order.n, g.p, cof);
        if (cof != 1 || m == 0)
            throw std::invalid_argument("locate_t1: commutator supported off the p-part");
        Int unit_step = pow_int(g.p, m - 1);
        if (g.s.c[i] % unit_step != 0)
            throw std::invalid_argument("locate_t1: commutator not of order p");
        digits.push_back({i, m, g.s.c[i] / unit_step});
    }
    if (digits.empty()) throw std::invalid_argument("locate_t1: trivial commutator");

    // Pivot: unit digit with minimal m, first occurrence.
    std::size_t pivot = digits.size();
    for (std::size_t d = 0; d < digits.size(); ++d) {
        if (digits[d].c % g.p == 0) continue;
        if (pivot == digits.size() || digits[d].m < digits[pivot].m) pivot = d;
    }
    if (pivot == digits.size())
        throw std::invalid_argument("locate_t1: commutator not of order p");
    const Digit& pv = digits[pivot];

    // Fixed point: first factor already carries s = t1^{p^{m1-1}} alone.
    if (digits.size() == 1 && pv.idx == 0 && pv.c == 1) return g;

    // t1 = prod_{c_j != 0} t_j^{c_j * p^{m_j - m_*}}; replaces the pivot factor
    // and moves to the front.
    CentralVector t1 = z.zero();
    for (const auto& d : digits) t1.c[d.idx] = d.c * pow_int(g.p, d.m - pv.m);

    std::vector<std::pair<std::string, CentralVector>> gens;
    gens.emplace_back(z.at(pv.idx).name, std::move(t1));
    for (std::size_t i = 0; i < z.rank(); ++i) {
        if (i == pv.idx) continue;
        CentralVector unit = z.zero();
        unit.c[i] = 1;
        gens.emplace_back(z.at(i).name, std::move(unit));
    }
    auto rb = Rebase::make(z, gens);
    if (!rb) throw std::logic_error("locate_t1: pivot rebase rejected");
    return apply_rebase(g, *rb, transcript);
}

namespace {

// Central multiplier that brings the coordinates of w into {0..p-1} on
// p-power and infinite factors and clears them on coprime factors.
CentralVector reduction_vector(const GroupPresentation& g, const CentralVector& w) {
    CentralVector v = g.center.zero();
    for (std::size_t i = 0; i < g.center.rank(); ++i) {
        const auto& f = g.center.at(i);
        if (w.c[i] == 0) continue;
        if (!f.order.is_finite()) {
            Int r = mod_floor(w.c[i], g.p);
            v.c[i] = -((w.c[i] - r) / g.p);
            continue;
        }
        Int cof;
        int e = p_valuation(f.order.n, g.p, cof);
        if (e == 0) {
            // coprime factor: w + p*v = 0 (mod n)
            v.c[i] = mod_floor(-w.c[i] * inv_mod(g.p, f.order.n), f.order.n);
        } else if (cof == 1) {
            Int r = mod_floor(w.c[i], g.p);
            v.c[i] = -((w.c[i] - r) / g.p);
        } else {
            throw std::invalid_argument("reduce_pth_powers: mixed factor; run locate_t1 first");
        }
    }
    return v;
}

GroupPresentation apply_move_impl(const GroupPresentation& g, const GeneratorMove& mv) {
    const auto& z = g.center;
    switch (mv.kind) {
        case GeneratorMove::Kind::XTimesCentral: {
            if (mv.v.c.size() != z.rank())
                throw InvalidMove("central multiplier has wrong dimension");
            CentralVector xp = z.add(g.xp, z.scale(g.p, mv.v));
            return make_presentation(g.p, z, g.s, std::move(xp), g.yp);
        }
        case GeneratorMove::Kind::YTimesCentral: {
            if (mv.v.c.size() != z.rank())
                throw InvalidMove("central multiplier has wrong dimension");
            CentralVector yp = z.add(g.yp, z.scale(g.p, mv.v));
            return make_presentation(g.p, z, g.s, g.xp, std::move(yp));
        }
        case GeneratorMove::Kind::XTimesYPow: {
            Element nx = multiply(g, gen_x(g), power(g, gen_y(g), mv.n));
            CentralVector xp = power(g, nx, g.p).z;
            CentralVector s = commutator(g, nx, gen_y(g));
            return make_presentation(g.p, z, std::move(s), std::move(xp), g.yp);
        }
        case GeneratorMove::Kind::YTimesXPow: {
            Element ny = multiply(g, power(g, gen_x(g), mv.n), gen_y(g));
            CentralVector yp = power(g, ny, g.p).z;
            CentralVector s = commutator(g, gen_x(g), ny);
            return make_presentation(g.p, z, std::move(s), g.xp, std::move(yp));
        }
        case GeneratorMove::Kind::XPow: {
            if (gcd(mv.n, g.p) != 1) throw InvalidMove("x^c move needs gcd(c, p) = 1");
            Element nx = power(g, gen_x(g), mv.n);
            CentralVector xp = power(g, nx, g.p).z;
            CentralVector s = commutator(g, nx, gen_y(g));
            return make_presentation(g.p, z, std::move(s), std::move(xp), g.yp);
        }
        case GeneratorMove::Kind::YPow: {
            if (gcd(mv.n, g.p) != 1) throw InvalidMove("y^c move needs gcd(c, p) = 1");
            Element ny = power(g, gen_y(g), mv.n);
            CentralVector yp = power(g, ny, g.p).z;
            CentralVector s = commutator(g, gen_x(g), ny);
            return make_presentation(g.p, z, std::move(s), g.xp, std::move(yp));
        }
        case GeneratorMove::Kind::Swap: {
            CentralVector s = z.neg(g.s);
            return make_presentation(g.p, z, std::move(s), g.yp, g.xp);
        }
    }
    throw std::logic_error("apply_move: unknown kind");
}

}  // namespace

GroupPresentation reduce_pth_powers(const GroupPresentation& pres, Transcript* transcript) {
    GroupPresentation g = pres;
    CentralVector vx = reduction_vector(g, g.xp);
    if (!vx.is_zero()) {
        GeneratorMove mv = GeneratorMove::x_times_central(vx);
        g = apply_move_impl(g, mv);
        if (transcript) transcript->steps.push_back(mv);
    }
    CentralVector vy = reduction_vector(g, g.yp);
    if (!vy.is_zero()) {
        GeneratorMove mv = GeneratorMove::y_times_central(vy);
        g = apply_move_impl(g, mv);
        if (transcript) transcript->steps.push_back(mv);
    }
    return g;
}

GroupPresentation apply_move_raw(const GroupPresentation& pres, const GeneratorMove& move,
                                 Transcript* transcript) {
    GroupPresentation g = apply_move_impl(pres, move);
    if (transcript) transcript->steps.push_back(move);
    return g;
}

GroupPresentation apply_move(const GroupPresentation& pres, const GeneratorMove& move,
                             Transcript* transcript) {
    GroupPresentation g = apply_move_raw(pres, move, transcript);
    return locate_t1(g, transcript);
}

GroupPresentation replay(const GroupPresentation& pres, const Transcript& t) {
    GroupPresentation g = pres;
    for (const auto& step : t.steps) {
        if (const auto* mv = std::get_if<GeneratorMove>(&step)) {
            g = apply_move_raw(g, *mv, nullptr);
        } else if (const auto* rs = std::get_if<RebaseStep>(&step)) {
            auto rb = Rebase::make(g.center, rs->gens);
            if (!rb) throw std::logic_error("replay: recorded rebase no longer valid");
            g = apply_rebase(g, *rb, nullptr);
        } else if (const auto* sp = std::get_if<SplitStep>(&step)) {
            int idx = g.center.index_of(sp->factor);
            if (idx < 0) throw std::logic_error("replay: split factor missing");
            std::vector<Factor> keep;
            CentralVector s = g.center.zero(), xp = s, yp = s;
            std::vector<Int> sc, xc, yc;
            for (std::size_t i = 0; i < g.center.rank(); ++i) {
                if (static_cast<int>(i) == idx) {
                    if (g.s.c[i] != 0 || g.xp.c[i] != 0 || g.yp.c[i] != 0)
                        throw std::logic_error("replay: split factor still in use");
                    continue;
                }
                keep.push_back(g.center.at(i));
                sc.push_back(g.s.c[i]);
                xc.push_back(g.xp.c[i]);
                yc.push_back(g.yp.c[i]);
            }
            FgAbelian nz(keep);
            g = make_presentation(g.p, nz, CentralVector{sc}, CentralVector{xc},
                                  CentralVector{yc});
        }
    }
    return g;
}

GeneratorMove random_move(const GroupPresentation& pres, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> kind(0, 6);
    auto unit = [&]() {
        std::uniform_int_distribution<long long> d(1, to_i64(pres.p) - 1);
        return pres.p == 2 ? Int(1) : Int(d(rng));
    };
    auto small_central = [&]() {
        CentralVector v = pres.center.zero();
        std::uniform_int_distribution<int> coord(-3, 3);
        for (auto& c : v.c) c = coord(rng);
        return v;
    };
    switch (kind(rng)) {
        case 0: return GeneratorMove::x_times_central(small_central());
        case 1: return GeneratorMove::y_times_central(small_central());
        case 2: return GeneratorMove::x_times_y_pow(unit());
        case 3: return GeneratorMove::y_times_x_pow(unit());
        case 4: return GeneratorMove::x_pow(unit());
        case 5: return GeneratorMove::y_pow(unit());
        default: return GeneratorMove::swap();
    }
}

GroupPresentation random_center_change(const GroupPresentation& pres, std::mt19937_64& rng) {
    const auto& z = pres.center;
    if (z.rank() == 0) return pres;
    std::uniform_int_distribution<std::size_t> pick(0, z.rank() - 1);
    std::uniform_int_distribution<int> kind(0, 2);
    std::uniform_int_distribution<int> coeff(1, 6);

    for (int attempt = 0; attempt < 24; ++attempt) {
        std::vector<std::pair<std::string, CentralVector>> gens;
        for (std::size_t i = 0; i < z.rank(); ++i) {
            CentralVector unit = z.zero();
            unit.c[i] = 1;
            gens.emplace_back(z.at(i).name, std::move(unit));
        }
        int k = kind(rng);
        if (k == 0 && z.rank() >= 2) {
            // Swap two factors (names travel with their generators).
            std::size_t i = pick(rng), j = pick(rng);
            if (i == j) continue;
            std::swap(gens[i].second, gens[j].second);
        } else if (k == 1) {
            // Scale one generator by a unit.
            std::size_t i = pick(rng);
            const auto& f = z.at(i);
            Int c = coeff(rng);
            if (f.order.is_finite()) {
                if (gcd(c, f.order.n) != 1) continue;
            } else {
                c = (coeff(rng) % 2 == 0) ? Int(1) : Int(-1);
            }
            gens[i].second.c[i] = c;
        } else {
            // Transvection: g_i = e_i + c * e_j.
            std::size_t i = pick(rng), j = pick(rng);
            if (i == j) continue;
            gens[i].second.c[j] = coeff(rng);
        }
        auto rb = Rebase::make(z, gens);
        if (!rb) continue;
        return apply_rebase(pres, *rb, nullptr);
    }
    return pres;
}

GroupPresentation scramble(const GroupPresentation& pres, std::mt19937_64& rng, int steps) {
    GroupPresentation g = pres;
    std::uniform_int_distribution<int> which(0, 2);
    for (int i = 0; i < steps; ++i) {
        if (which(rng) == 0) {
            g = random_center_change(g, rng);
        } else {
            GeneratorMove mv = random_move(g, rng);
            g = apply_move_raw(g, mv, nullptr);
        }
    }
    return g;
}

}  // namespace cpxcp
