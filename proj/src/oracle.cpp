#include "cpxcp/oracle.hpp"

#include <algorithm>
#include <ostream>
#include <set>
#include <sstream>

namespace cpxcp {

int MulTable::inv(int i) const {
    for (int j = 0; j < n; ++j)
        if (mul(i, j) == 0) return j;
    throw std::logic_error("MulTable: element without inverse");
}

int MulTable::pow(int g, long long e) const {
    if (e < 0) return pow(inv(g), -e);
    int r = 0;
    while (e-- > 0) r = mul(r, g);
    return r;
}

int MulTable::order_of(int g) const {
    int o = 1, c = g;
    while (c != 0) {
        c = mul(c, g);
        ++o;
    }
    return o;
}

bool MulTable::is_latin_square() const {
    std::vector<char> seen(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        std::fill(seen.begin(), seen.end(), 0);
        for (int j = 0; j < n; ++j) {
            int v = mul(i, j);
            if (v < 0 || v >= n || seen[v]) return false;
            seen[v] = 1;
        }
        std::fill(seen.begin(), seen.end(), 0);
        for (int j = 0; j < n; ++j) {
            int v = mul(j, i);
            if (v < 0 || v >= n || seen[v]) return false;
            seen[v] = 1;
        }
    }
    return true;
}

MulTable build_table(const GroupPresentation& pres, int max_order) {
    auto zsize = pres.center.size();
    if (!zsize) throw InfiniteGroup();
    Int total = pres.p * pres.p * *zsize;
    if (total > max_order)
        throw TooLarge("group order " + total.str() + " exceeds bound " +
                       std::to_string(max_order));

    const int p = static_cast<int>(to_i64(pres.p));
    const int nz = static_cast<int>(to_i64(*zsize));
    const int n = p * p * nz;
    const std::size_t k = pres.center.rank();

    std::vector<int> orders(k);
    for (std::size_t i = 0; i < k; ++i) orders[i] = static_cast<int>(to_i64(pres.center.at(i).order.n));

    auto z_index = [&](const CentralVector& z) {
        int idx = 0;
        for (std::size_t i = 0; i < k; ++i)
            idx = idx * orders[i] + static_cast<int>(to_i64(z.c[i]));
        return idx;
    };
    auto z_of_index = [&](int idx) {
        CentralVector z = pres.center.zero();
        for (std::size_t i = k; i-- > 0;) {
            z.c[i] = idx % orders[i];
            idx /= orders[i];
        }
        return z;
    };
    auto elem_index = [&](const Element& e) {
        return (static_cast<int>(to_i64(e.xe)) * p + static_cast<int>(to_i64(e.ye))) * nz +
               z_index(e.z);
    };

    MulTable t;
    t.n = n;
    t.table.assign(static_cast<std::size_t>(n) * n, 0);
    t.elem_labels.resize(static_cast<std::size_t>(n));

    std::vector<Element> elems;
    elems.reserve(static_cast<std::size_t>(n));
    for (int xe = 0; xe < p; ++xe)
        for (int ye = 0; ye < p; ++ye)
            for (int zi = 0; zi < nz; ++zi)
                elems.push_back(make_element(pres, xe, ye, z_of_index(zi)));

    for (int i = 0; i < n; ++i) {
        std::ostringstream lab;
        const Element& e = elems[static_cast<std::size_t>(i)];
        bool empty = true;
        if (e.xe != 0) {
            lab << "x" << (e.xe == 1 ? "" : "^" + e.xe.str());
            empty = false;
        }
        if (e.ye != 0) {
            lab << (empty ? "" : " ") << "y" << (e.ye == 1 ? "" : "^" + e.ye.str());
            empty = false;
        }
        for (std::size_t f = 0; f < k; ++f)
            if (e.z.c[f] != 0) {
                lab << (empty ? "" : " ") << pres.center.at(f).name;
                if (e.z.c[f] != 1) lab << "^" << e.z.c[f].str();
                empty = false;
            }
        if (empty) lab << "1";
        t.elem_labels[static_cast<std::size_t>(i)] = lab.str();
    }

    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            t.table[static_cast<std::size_t>(i) * n + j] = elem_index(
                multiply(pres, elems[static_cast<std::size_t>(i)], elems[static_cast<std::size_t>(j)]));

    t.x = elem_index(gen_x(pres));
    t.y = elem_index(gen_y(pres));
    for (std::size_t f = 0; f < k; ++f) {
        CentralVector z = pres.center.zero();
        z.c[f] = 1;
        t.center_gens.push_back(elem_index(central(pres, std::move(z))));
    }
    return t;
}

CenterInfo center_and_quotient(const MulTable& t) {
    CenterInfo info;
    for (int i = 0; i < t.n; ++i) {
        bool central = true;
        for (int j = 0; j < t.n && central; ++j)
            if (t.mul(i, j) != t.mul(j, i)) central = false;
        if (central) info.center.push_back(i);
    }
    const int zsize = static_cast<int>(info.center.size());
    if (t.n % zsize != 0) return info;  // cannot happen for a group table
    const int index = t.n / zsize;
    // Quotient is C_q x C_q iff [G:Z] = q^2 for a prime q and g^q central for
    // every g (order q^2 + exponent q forces the elementary abelian rank 2).
    Int q2 = index;
    for (Int q = 2; q * q <= q2; ++q) {
        if (q * q == q2 && is_prime(q)) {
            std::set<int> zset(info.center.begin(), info.center.end());
            bool ok = true;
            for (int g = 0; g < t.n && ok; ++g)
                if (!zset.count(t.pow(g, to_i64(q)))) ok = false;
            info.quotient_is_cpxcp = ok;
            break;
        }
    }
    return info;
}

Int exponent_of(const MulTable& t) {
    Int e = 1;
    for (int g = 0; g < t.n; ++g) e = lcm(e, Int(t.order_of(g)));
    return e;
}

OrderProfile order_profile(const MulTable& t) {
    OrderProfile p;
    std::set<int> zset;
    {
        CenterInfo ci = center_and_quotient(t);
        zset.insert(ci.center.begin(), ci.center.end());
    }
    for (int g = 0; g < t.n; ++g) {
        Int o = t.order_of(g);
        p.counts[o]++;
        if (!zset.count(g)) p.noncentral_counts[o]++;
    }
    return p;
}

namespace {

// Greedy generating sequence: first a non-central element when one exists,
// then smallest-index elements outside the running closure.
struct GenSet {
    std::vector<int> gens;
    // Closure order and expressions: order[t] lists the elements of
    // <g_1..g_{t+1}> \ <g_1..g_t> in the order they were produced, each as
    // expr = (earlier element, generator index).
    std::vector<int> bfs_order;                    // all elements, identity first
    std::vector<std::pair<int, int>> expr;         // per element: (u, gen#); identity = (-1,-1)
    std::vector<std::size_t> closure_sizes;        // |<g_1..g_t>| prefix sizes
};

GenSet generating_sequence(const MulTable& t, const std::vector<char>& central) {
    GenSet gs;
    gs.expr.assign(static_cast<std::size_t>(t.n), {-1, -1});
    std::vector<char> in(static_cast<std::size_t>(t.n), 0);
    in[0] = 1;
    gs.bfs_order.push_back(0);

    auto extend = [&](int g) {
        int gi = static_cast<int>(gs.gens.size());
        gs.gens.push_back(g);
        // Multiply everything reachable by the new generator until closed.
        for (std::size_t head = 0; head < gs.bfs_order.size(); ++head) {
            int u = gs.bfs_order[head];
            for (int s = 0; s <= gi; ++s) {
                int v = t.mul(u, gs.gens[static_cast<std::size_t>(s)]);
                if (!in[static_cast<std::size_t>(v)]) {
                    in[static_cast<std::size_t>(v)] = 1;
                    gs.expr[static_cast<std::size_t>(v)] = {u, s};
                    gs.bfs_order.push_back(v);
                }
            }
        }
        gs.closure_sizes.push_back(gs.bfs_order.size());
    };

    // A noncommuting pair first (their images are the most constrained),
    // then the rest by decreasing order so strong constraints come early.
    int first = -1;
    for (int i = 0; i < t.n && first < 0; ++i)
        if (!central[static_cast<std::size_t>(i)]) first = i;
    if (first >= 0) {
        extend(first);
        int second = -1;
        for (int i = 0; i < t.n && second < 0; ++i)
            if (t.mul(first, i) != t.mul(i, first)) second = i;
        if (second >= 0 && !in[static_cast<std::size_t>(second)]) extend(second);
    }
    while (gs.bfs_order.size() < static_cast<std::size_t>(t.n)) {
        int nxt = -1, nxt_order = 0;
        for (int i = 0; i < t.n; ++i) {
            if (in[static_cast<std::size_t>(i)]) continue;
            int o = t.order_of(i);
            if (o > nxt_order) {
                nxt = i;
                nxt_order = o;
            }
        }
        extend(nxt);
    }
    return gs;
}

struct IsoSearch {
    const MulTable& a;
    const MulTable& b;
    const GenSet& gs;
    const std::vector<Int>& ord_a;
    const std::vector<Int>& ord_b;
    const std::vector<char>& cen_a;
    const std::vector<char>& cen_b;
    std::vector<int> inv_a;    // precomputed inverses
    std::vector<int> inv_b;
    std::vector<int> map;      // a-index -> b-index or -1
    std::vector<int> images;   // chosen images of gens

    // Order fingerprints of products and commutators with the earlier
    // generators; wrong candidates die here before any closure work.
    bool prefilter(std::size_t t_idx, int g, int h) const {
        if (ord_b[static_cast<std::size_t>(h)] != ord_a[static_cast<std::size_t>(g)]) return false;
        if (cen_b[static_cast<std::size_t>(h)] != cen_a[static_cast<std::size_t>(g)]) return false;
        for (std::size_t s = 0; s < t_idx; ++s) {
            int gs_a = gs.gens[s];
            int gs_b = images[s];
            int prod_a = a.mul(gs_a, g);
            int prod_b = b.mul(gs_b, h);
            if (ord_a[static_cast<std::size_t>(prod_a)] != ord_b[static_cast<std::size_t>(prod_b)])
                return false;
            int com_a = a.mul(a.mul(inv_a[static_cast<std::size_t>(gs_a)],
                                    inv_a[static_cast<std::size_t>(g)]),
                              prod_a);
            int com_b = b.mul(b.mul(inv_b[static_cast<std::size_t>(gs_b)],
                                    inv_b[static_cast<std::size_t>(h)]),
                              prod_b);
            if (ord_a[static_cast<std::size_t>(com_a)] != ord_b[static_cast<std::size_t>(com_b)])
                return false;
        }
        return true;
    }

    bool assign(std::size_t t_idx) {
        if (t_idx == gs.gens.size()) return true;
        int g = gs.gens[t_idx];
        for (int h = 0; h < b.n; ++h) {
            if (!prefilter(t_idx, g, h)) continue;
            std::vector<std::pair<int, int>> touched;
            if (try_extend(t_idx, g, h, touched)) {
                images.push_back(h);
                if (assign(t_idx + 1)) return true;
                images.pop_back();
            }
            for (auto& [idx, old] : touched) map[static_cast<std::size_t>(idx)] = old;
        }
        return false;
    }

    // Maps the closure layer of generator t and re-checks consistency of the
    // multiplicative extension; records every map cell it writes.
    bool try_extend(std::size_t t_idx, int g, int h, std::vector<std::pair<int, int>>& touched) {
        auto set_map = [&](int u, int v) {
            touched.push_back({u, map[static_cast<std::size_t>(u)]});
            map[static_cast<std::size_t>(u)] = v;
        };
        set_map(g, h);
        std::size_t upto = gs.closure_sizes[t_idx];
        // Elements of <g_1..g_{t+1}> appear in bfs_order[0, upto); each has an
        // expression through earlier elements. Verify m(u * g_s) = m(u)m(g_s)
        // for all u in the closure and s <= t.
        for (std::size_t head = 0; head < upto; ++head) {
            int u = gs.bfs_order[head];
            int mu = map[static_cast<std::size_t>(u)];
            if (mu < 0) {
                auto [pu, ps] = gs.expr[static_cast<std::size_t>(u)];
                int mpu = map[static_cast<std::size_t>(pu)];
                int mg = map[static_cast<std::size_t>(gs.gens[static_cast<std::size_t>(ps)])];
                mu = b.mul(mpu, mg);
                set_map(u, mu);
            }
            for (std::size_t s = 0; s <= t_idx; ++s) {
                int v = a.mul(u, gs.gens[s]);
                int mv = b.mul(mu, map[static_cast<std::size_t>(gs.gens[s])]);
                int cur = map[static_cast<std::size_t>(v)];
                if (cur >= 0) {
                    if (cur != mv) return false;
                } else {
                    set_map(v, mv);
                }
            }
        }
        // Injectivity on the mapped set.
        std::set<int> seen;
        for (std::size_t head = 0; head < upto; ++head) {
            int mv = map[static_cast<std::size_t>(gs.bfs_order[head])];
            if (!seen.insert(mv).second) return false;
        }
        return true;
    }
};

}  // namespace

std::optional<std::vector<int>> brute_iso(const MulTable& a, const MulTable& b, int max_order) {
    if (a.n > max_order || b.n > max_order)
        throw TooLarge("brute_iso: order exceeds bound " + std::to_string(max_order));
    if (a.n != b.n) return std::nullopt;

    std::vector<char> cen_a(static_cast<std::size_t>(a.n), 0), cen_b(static_cast<std::size_t>(b.n), 0);
    {
        CenterInfo ca = center_and_quotient(a), cb = center_and_quotient(b);
        if (ca.center.size() != cb.center.size()) return std::nullopt;
        for (int i : ca.center) cen_a[static_cast<std::size_t>(i)] = 1;
        for (int i : cb.center) cen_b[static_cast<std::size_t>(i)] = 1;
    }
    std::vector<Int> ord_a(static_cast<std::size_t>(a.n)), ord_b(static_cast<std::size_t>(b.n));
    for (int i = 0; i < a.n; ++i) ord_a[static_cast<std::size_t>(i)] = a.order_of(i);
    for (int i = 0; i < b.n; ++i) ord_b[static_cast<std::size_t>(i)] = b.order_of(i);

    // Profile prefilter: order census, split by centrality.
    {
        std::map<std::pair<Int, int>, int> pa, pb;
        for (int i = 0; i < a.n; ++i) pa[{ord_a[static_cast<std::size_t>(i)], cen_a[static_cast<std::size_t>(i)]}]++;
        for (int i = 0; i < b.n; ++i) pb[{ord_b[static_cast<std::size_t>(i)], cen_b[static_cast<std::size_t>(i)]}]++;
        if (pa != pb) return std::nullopt;
    }

    GenSet gs = generating_sequence(a, cen_a);
    IsoSearch search{a, b, gs, ord_a, ord_b, cen_a, cen_b, {}, {}, {}, {}};
    search.inv_a.resize(static_cast<std::size_t>(a.n));
    search.inv_b.resize(static_cast<std::size_t>(b.n));
    for (int i = 0; i < a.n; ++i) search.inv_a[static_cast<std::size_t>(i)] = a.inv(i);
    for (int i = 0; i < b.n; ++i) search.inv_b[static_cast<std::size_t>(i)] = b.inv(i);
    search.map.assign(static_cast<std::size_t>(a.n), -1);
    search.map[0] = 0;
    if (!search.assign(0)) return std::nullopt;
    return search.map;
}

std::optional<std::pair<std::vector<int>, std::vector<int>>> direct_factor_search(
    const MulTable& t, int max_order) {
    if (t.n > max_order)
        throw TooLarge("direct_factor_search: order exceeds bound " + std::to_string(max_order));

    CenterInfo ci = center_and_quotient(t);
    std::set<std::vector<int>> seen_subgroups;

    for (int z : ci.center) {
        if (z == 0) continue;
        int q = t.order_of(z);
        if (!is_prime(Int(q))) continue;

        std::vector<int> zsub;
        {
            int c = 0;
            do {
                zsub.push_back(c);
                c = t.mul(c, z);
            } while (c != 0);
            std::sort(zsub.begin(), zsub.end());
            if (!seen_subgroups.insert(zsub).second) continue;
        }

        // Quotient G / <z>: cosets keyed by minimal member.
        std::vector<int> coset_rep(static_cast<std::size_t>(t.n), -1);
        std::vector<int> reps;
        for (int g = 0; g < t.n; ++g) {
            if (coset_rep[static_cast<std::size_t>(g)] >= 0) continue;
            int c = g;
            int m = g;
            do {
                m = std::min(m, c);
                c = t.mul(c, z);
            } while (c != g);
            c = g;
            do {
                coset_rep[static_cast<std::size_t>(c)] = m;
                c = t.mul(c, z);
            } while (c != g);
            reps.push_back(m);
        }
        std::sort(reps.begin(), reps.end());
        const int nq = static_cast<int>(reps.size());
        std::vector<int> rep_index(static_cast<std::size_t>(t.n), -1);
        for (int i = 0; i < nq; ++i)
            rep_index[static_cast<std::size_t>(reps[static_cast<std::size_t>(i)])] = i;

        MulTable quot;
        quot.n = nq;
        quot.table.assign(static_cast<std::size_t>(nq) * nq, 0);
        for (int i = 0; i < nq; ++i)
            for (int j = 0; j < nq; ++j)
                quot.table[static_cast<std::size_t>(i) * nq + j] = rep_index[static_cast<std::size_t>(
                    coset_rep[static_cast<std::size_t>(t.mul(reps[static_cast<std::size_t>(i)],
                                                             reps[static_cast<std::size_t>(j)]))])];

        std::vector<char> qcentral(static_cast<std::size_t>(nq), 1);
        for (int i = 0; i < nq; ++i)
            for (int j = 0; j < nq; ++j)
                if (quot.mul(i, j) != quot.mul(j, i)) qcentral[static_cast<std::size_t>(i)] = 0;
        GenSet gq = generating_sequence(quot, qcentral);
        const std::size_t k = gq.gens.size();

        // Enumerate homomorphic sections generator by generator; a section's
        // image is a complement of <z>.
        // The identity coset's minimal member is 0, so quotient index 0 is the
        // identity, matching generating_sequence's assumption.
        std::vector<int> lift(static_cast<std::size_t>(nq), -1);  // quotient index -> G index
        lift[0] = 0;

        std::vector<int> choice(k, 0);
        std::vector<std::vector<std::pair<int, int>>> touched(k);

        std::size_t level = 0;
        while (true) {
            if (level == k) {
                std::vector<int> h;
                for (int i = 0; i < nq; ++i) h.push_back(lift[static_cast<std::size_t>(i)]);
                std::sort(h.begin(), h.end());
                return std::make_pair(h, zsub);
            }
            bool advanced = false;
            for (int& c = choice[level]; c < q; ++c) {
                int gq_rep = reps[static_cast<std::size_t>(gq.gens[level])];
                int cand = gq_rep;
                for (int i = 0; i < c; ++i) cand = t.mul(cand, z);
                // Extend the partial section by the closure layer of gen level.
                auto& tlist = touched[level];
                tlist.clear();
                auto set_lift = [&](int u, int v) {
                    tlist.push_back({u, lift[static_cast<std::size_t>(u)]});
                    lift[static_cast<std::size_t>(u)] = v;
                };
                set_lift(gq.gens[level], cand);
                bool ok = true;
                std::size_t upto = gq.closure_sizes[level];
                for (std::size_t head = 0; head < upto && ok; ++head) {
                    int u = gq.bfs_order[head];
                    int lu = lift[static_cast<std::size_t>(u)];
                    if (lu < 0) {
                        auto [pu, ps] = gq.expr[static_cast<std::size_t>(u)];
                        lu = t.mul(lift[static_cast<std::size_t>(pu)],
                                   lift[static_cast<std::size_t>(gq.gens[static_cast<std::size_t>(ps)])]);
                        set_lift(u, lu);
                    }
                    for (std::size_t s = 0; s <= level && ok; ++s) {
                        int v = quot.mul(u, gq.gens[s]);
                        int lv = t.mul(lu, lift[static_cast<std::size_t>(gq.gens[s])]);
                        int cur = lift[static_cast<std::size_t>(v)];
                        if (cur >= 0) {
                            if (cur != lv) ok = false;
                        } else {
                            set_lift(v, lv);
                        }
                    }
                }
                if (ok) {
                    ++level;
                    advanced = true;
                    ++c;  // resume point when backtracking
                    break;
                }
                for (auto it = tlist.rbegin(); it != tlist.rend(); ++it)
                    lift[static_cast<std::size_t>(it->first)] = it->second;
            }
            if (advanced) {
                if (level < k) choice[level] = 0;
                continue;
            }
            if (level == 0) break;
            --level;
            auto& tlist = touched[level];
            for (auto it = tlist.rbegin(); it != tlist.rend(); ++it)
                lift[static_cast<std::size_t>(it->first)] = it->second;
        }
    }
    return std::nullopt;
}

void export_table(const MulTable& t, std::ostream& os) {
    os << "order " << t.n << "\n";
    for (int i = 0; i < t.n; ++i) {
        for (int j = 0; j < t.n; ++j) {
            if (j) os << ' ';
            os << t.mul(i, j);
        }
        os << '\n';
    }
}

}  // namespace cpxcp
