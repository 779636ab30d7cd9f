#include "cpxcp/engine.hpp"

namespace cpxcp {

namespace {

void check_owner(const GroupPresentation& g, const Element& a) {
    if (a.pres_id != g.id || a.z.c.size() != g.center.rank()) throw MixedPresentations();
}

}  // namespace

Element make_element(const GroupPresentation& g, Int xe, Int ye, CentralVector z) {
    Element e;
    e.xe = mod_floor(xe, g.p);
    e.ye = mod_floor(ye, g.p);
    e.z = g.center.reduced(std::move(z));
    e.pres_id = g.id;
    return e;
}

Element identity(const GroupPresentation& g) { return make_element(g, 0, 0, g.center.zero()); }
Element gen_x(const GroupPresentation& g) { return make_element(g, 1, 0, g.center.zero()); }
Element gen_y(const GroupPresentation& g) { return make_element(g, 0, 1, g.center.zero()); }
Element central(const GroupPresentation& g, CentralVector z) {
    return make_element(g, 0, 0, std::move(z));
}

Element multiply(const GroupPresentation& g, const Element& a, const Element& b) {
    check_owner(g, a);
    check_owner(g, b);
    Int xs = a.xe + b.xe;
    Int ys = a.ye + b.ye;
    Int cx = xs / g.p;  // carries; xe, ye are in [0, p) so sums are in [0, 2p)
    Int cy = ys / g.p;
    CentralVector z = g.center.add(a.z, b.z);
    if (cx != 0) z = g.center.add(z, g.center.scale(cx, g.xp));
    if (cy != 0) z = g.center.add(z, g.center.scale(cy, g.yp));
    Int se = -(b.xe * a.ye);  // y^{j1} past x^{i2}
    if (se != 0) z = g.center.add(z, g.center.scale(se, g.s));
    return make_element(g, mod_floor(xs, g.p), mod_floor(ys, g.p), std::move(z));
}

Element inverse(const GroupPresentation& g, const Element& a) {
    check_owner(g, a);
    Element h = make_element(g, mod_floor(-a.xe, g.p), mod_floor(-a.ye, g.p), g.center.zero());
    Element t = multiply(g, a, h);  // central by construction
    h.z = g.center.neg(t.z);
    return h;
}

Element power(const GroupPresentation& g, const Element& a, const Int& n) {
    check_owner(g, a);
    if (n < 0) return power(g, inverse(g, a), -n);
    if (n == 0) return identity(g);
    Int xs = n * a.xe;
    Int ys = n * a.ye;
    CentralVector z = g.center.scale(n, a.z);
    Int cx = xs / g.p;
    Int cy = ys / g.p;
    if (cx != 0) z = g.center.add(z, g.center.scale(cx, g.xp));
    if (cy != 0) z = g.center.add(z, g.center.scale(cy, g.yp));
    Int se = -(a.xe * a.ye * (n * (n - 1) / 2));
    if (se != 0) z = g.center.add(z, g.center.scale(se, g.s));
    return make_element(g, mod_floor(xs, g.p), mod_floor(ys, g.p), std::move(z));
}

CentralVector commutator(const GroupPresentation& g, const Element& a, const Element& b) {
    check_owner(g, a);
    check_owner(g, b);
    Int e = a.xe * b.ye - a.ye * b.xe;
    return g.center.scale(e, g.s);
}

CyclicOrder element_order(const GroupPresentation& g, const Element& a) {
    check_owner(g, a);
    if (is_central(g, a)) return central_order(g.center, a.z);
    Element ap = power(g, a, g.p);
    CyclicOrder o = central_order(g.center, ap.z);
    if (!o.is_finite()) return o;
    return CyclicOrder::finite(g.p * o.n);
}

bool is_central(const GroupPresentation& g, const Element& a) {
    check_owner(g, a);
    return a.xe == 0 && a.ye == 0;
}

}  // namespace cpxcp
