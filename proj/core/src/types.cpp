#include "montes/types.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "montes/error.hpp"

namespace montes {

IntPoly lift_ffp0(const FFPoly& P) {
    std::vector<mpz_class> c;
    for (const auto& e : P.c) c.push_back(e.c[0]);
    return IntPoly(std::move(c));
}

FFPoly reduce_mod_p(const FieldTower& T, const IntPoly& f) {
    std::vector<FFElem> c;
    for (const auto& v : f.coeffs()) c.push_back(T.from_int(0, v));
    return ffp_from(T, 0, std::move(c));
}

TypeRec TypeRec::order_zero(const mpz_class& p, const FFPoly& psi0) {
    TypeRec t;
    t.tower = FieldTower(p).extend(psi0);
    t.psi0 = psi0;
    TypeLevel L;
    L.phi = lift_ffp0(psi0);
    L.m = L.phi.degree();
    L.vphi = 0;
    t.levels.push_back(L);
    for (int k = 0; k < L.m; ++k) {
        t.PQ.push_back(IntPoly::monomial(1, k));
        t.PQVals.emplace_back(0);
    }
    return t;
}

std::int64_t TypeRec::e_product(int upto) const {
    std::int64_t r = 1;
    for (int i = 1; i <= upto; ++i) r *= level(i).e;
    return r;
}

std::int64_t TypeRec::f_product(int upto) const {
    std::int64_t r = psi0.degree();
    for (int i = 1; i <= upto; ++i) r *= level(i).f;
    return r;
}

Valuation TypeRec::value(int i, const IntPoly& P) const {
    if (P.is_zero()) return kInfinity;
    if (i == 1) return val_poly(P, p());
    const TypeLevel& L = level(i - 1);
    if (P.degree() < L.m) return L.e * value(i - 1, P);
    std::vector<IntPoly> dev = phi_coeffs(P, L.phi);
    Valuation slope = L.e * L.vphi + L.h;  // v_i(phi_{i-1})
    Valuation best = kInfinity;
    for (size_t k = 0; k < dev.size(); ++k) {
        if (dev[k].is_zero()) continue;
        Valuation w = L.e * value(i - 1, dev[k]) + static_cast<Valuation>(k) * slope;
        best = std::min(best, w);
    }
    return best;
}

Valuation TypeRec::phi_value(int r, int s) const {
    // v_r(phi_s) = sum_k e_{k+1}..e_{r-1} (e_k f_k)..(e_{s-1} f_{s-1}) h_k,
    // the sum running over k <= s with k < r.
    Valuation total = 0;
    for (int k = 1; k <= std::min(s, r - 1); ++k) {
        Valuation a = 1;
        for (int j = k + 1; j <= r - 1; ++j) a *= level(j).e;
        for (int j = k; j <= s - 1; ++j) a *= level(j).e * level(j).f;
        total += a * level(k).h;
    }
    return total;
}

std::pair<Valuation, FFElem> TypeRec::value_and_reduce(int i, const IntPoly& a) const {
    if (a.is_zero()) throw ContractViolation("reduce: zero polynomial");
    if (a.degree() >= level(i).m) throw ContractViolation("reduce: degree must be below m_i");
    if (i == 1) {
        Valuation v = val_poly(a, p());
        mpz_class pv = ipow(p(), static_cast<unsigned long>(v));
        FFPoly red = reduce_mod_p(tower, a.divexact(pv));
        red = ffp_rem(tower, red, psi0);
        return {v, tower.from_chunks(1, red.c)};
    }
    const int j = i - 1;
    const TypeLevel& L = level(j);
    std::vector<IntPoly> dev = phi_coeffs(a, L.phi);
    std::vector<Valuation> w(dev.size(), kInfinity), U(dev.size(), kInfinity);
    Valuation V = kInfinity;
    for (size_t k = 0; k < dev.size(); ++k) {
        if (dev[k].is_zero()) continue;
        U[k] = value(j, dev[k]) + static_cast<Valuation>(k) * L.vphi;
        w[k] = L.e * U[k] + L.h * static_cast<Valuation>(k);
        V = std::min(V, w[k]);
    }
    size_t s = 0;
    while (w[s] != V) ++s;
    std::vector<FFElem> ch;
    for (size_t k = s; k < dev.size(); k += L.e) {
        if (w[k] == V)
            ch.push_back(reduce(j, dev[k]));
        else
            ch.push_back(tower.zero(j));
    }
    MONTES_CHECK(static_cast<int>(ch.size()) <= L.f, "reduce: development too long");
    FFElem R = tower.from_chunks(i, ch);
    long tw = -(static_cast<long>(s) * L.ellp + L.ell * U[s]);
    FFElem xi = tower.mul(tower.pow_si(tower.gen(i), tw), R);
    return {V, xi};
}

std::vector<CloudPoint> TypeRec::points(int i, const std::vector<IntPoly>& dev) const {
    std::vector<CloudPoint> pts;
    Valuation vp = level(i).vphi;
    for (size_t k = 0; k < dev.size(); ++k) {
        Valuation v = value(i, dev[k]);
        pts.push_back({static_cast<std::int64_t>(k), is_inf(v) ? kInfinity : v + static_cast<Valuation>(k) * vp});
    }
    return pts;
}

NewtonPolygon TypeRec::newton_polygon(int i, const IntPoly& P) const {
    if (P.is_zero()) throw ContractViolation("newton_polygon: zero polynomial");
    return lower_hull(points(i, phi_coeffs(P, level(i).phi)));
}

FFPoly TypeRec::residual(int i, const std::vector<IntPoly>& dev, const Side& S) const {
    Valuation vp = level(i).vphi;
    std::vector<FFElem> c;
    std::int64_t d = S.degree();
    for (std::int64_t t = 0; t <= d; ++t) {
        std::int64_t k = S.start.x + t * S.e;
        std::int64_t u = S.start.y - t * S.h;
        FFElem ct = tower.zero(i);
        if (k < static_cast<std::int64_t>(dev.size()) && !dev[k].is_zero()) {
            auto [v, red] = value_and_reduce(i, dev[k]);
            if (v + k * vp == u) ct = red;
            MONTES_CHECK(v + k * vp >= u, "residual: point below the side");
        }
        c.push_back(ct);
    }
    MONTES_CHECK(!tower.is_zero(c.front()) && !tower.is_zero(c.back()), "residual: vanishing extreme coefficient");
    return ffp_from(tower, i, std::move(c));
}

FFPoly TypeRec::residual(int i, const IntPoly& P, std::int64_t h, std::int64_t e) const {
    std::vector<IntPoly> dev = phi_coeffs(P, level(i).phi);
    NewtonPolygon N = lower_hull(points(i, dev));
    return residual(i, dev, lambda_component(N, h, e));
}

int TypeRec::omega(int i, const IntPoly& P) const {
    if (i == 1) return ord_factor(tower, reduce_mod_p(tower, P), psi0);
    const TypeLevel& L = level(i - 1);
    MONTES_CHECK(L.closed(), "omega: level not closed");
    return ord_factor(tower, residual(i - 1, P, L.h, L.e), L.psi);
}

IntPoly TypeRec::lift(int i, const FFElem& xi, Valuation U) const {
    if (tower.is_zero(xi)) throw ContractViolation("lift: zero residue");
    IntPoly a;
    if (i == 1) {
        if (U < 0) throw ContractViolation("lift: negative valuation at level 1");
        std::vector<FFElem> ch = tower.chunks(xi);
        std::vector<mpz_class> c;
        for (const auto& e : ch) c.push_back(e.c[0]);
        a = IntPoly(std::move(c)) * ipow(p(), static_cast<unsigned long>(U));
    } else {
        const int j = i - 1;
        const TypeLevel& L = level(j);
        std::int64_t s = ((U * L.ell) % L.e + L.e) % L.e;
        MONTES_CHECK((U - s * L.h) % L.e == 0, "lift: abscissa residue mismatch");
        std::int64_t Us = (U - s * L.h) / L.e;
        long tw = -(static_cast<long>(s) * L.ellp + L.ell * Us);
        FFElem eta = tower.mul(xi, tower.pow_si(tower.gen(i), -tw));
        std::vector<FFElem> ch = tower.chunks(eta);
        IntPoly phik = L.phi.pow(static_cast<unsigned>(s));
        IntPoly phie = L.phi.pow(static_cast<unsigned>(L.e));
        for (std::int64_t t = 0; t < static_cast<std::int64_t>(ch.size()); ++t) {
            if (t > 0) phik = phik * phie;
            if (tower.is_zero(ch[t])) continue;
            std::int64_t k = s + t * L.e;
            IntPoly b = lift(j, ch[t], Us - t * L.h - k * L.vphi);
            a += b * phik;
        }
    }
    auto [v, red] = value_and_reduce(i, a);
    if (v != U || red != xi) throw InternalError("lift: self-check failed at level " + std::to_string(i));
    return a;
}

TypeLevel TypeRec::close_level(std::int64_t h, std::int64_t e, const FFPoly& psi) const {
    if (h <= 0 || e <= 0 || std::gcd(h, e) != 1) throw ContractViolation("close_level: need coprime positive h, e");
    TypeLevel L = levels.back();
    L.h = h;
    L.e = e;
    mpz_class inv, hh(h), ee(e);
    if (e == 1) {
        L.ell = 0;
    } else {
        mpz_invert(inv.get_mpz_t(), hh.get_mpz_t(), ee.get_mpz_t());
        L.ell = inv.get_si();
    }
    L.ellp = (L.ell * h - 1) / e;
    MONTES_CHECK(L.ell * h - L.ellp * e == 1, "close_level: Bezout identity");
    L.psi = psi;
    L.f = psi.degree();
    return L;
}

IntPoly TypeRec::representative(std::int64_t h, std::int64_t e, const FFPoly& psi) const {
    const int r = open_level();
    const TypeLevel& L = levels.back();
    if (psi.level != r) throw ContractViolation("representative: psi must live over F_r");
    if (psi.degree() < 1 || !tower.is_one(psi.c.back())) throw ContractViolation("representative: psi must be monic");
    if (tower.is_zero(psi.c[0])) throw ContractViolation("representative: psi must not be y");
    const int f = psi.degree();
    IntPoly phie = L.phi.pow(static_cast<unsigned>(e));
    IntPoly acc = IntPoly::constant(1);
    IntPoly rep;
    for (int k = 0; k <= f; ++k) {
        if (k > 0) acc = acc * phie;
        if (k == f) {
            rep += acc;
            break;
        }
        if (tower.is_zero(psi.c[k])) continue;
        Valuation U = static_cast<Valuation>(f - k) * (e * L.vphi + h);
        rep += lift(r, psi.c[k], U) * acc;
    }

    // Contract checks: one-sided of slope -h/e, residual psi, power of phi_1 mod p.
    std::vector<IntPoly> dev = phi_coeffs(rep, L.phi);
    NewtonPolygon N = lower_hull(points(r, dev));
    std::vector<Side> ss = sides(N);
    if (ss.size() != 1 || ss[0].h != h || ss[0].e != e || ss[0].start.x != 0 || ss[0].end.x != e * f)
        throw InternalError("representative: polygon is not one-sided of the requested slope");
    if (residual(r, dev, ss[0]) != psi) throw InternalError("representative: residual differs from psi");
    IntPoly base = lift_ffp0(psi0).pow(static_cast<unsigned>(rep.degree() / psi0.degree()));
    if (rep.mod(p()) != base.mod(p())) throw InternalError("representative: not a power of phi_1 mod p");
    return rep;
}

TypeRec TypeRec::extended(std::int64_t h, std::int64_t e, const FFPoly& psi) const {
    IntPoly rep = representative(h, e, psi);
    TypeRec t = *this;
    const int r = open_level();
    t.levels.back() = close_level(h, e, psi);
    t.tower = tower.extend(psi);
    TypeLevel next;
    next.phi = rep;
    next.m = rep.degree();
    t.levels.push_back(next);
    Valuation v = t.value(r + 1, rep);
    const TypeLevel& cl = t.level(r);
    MONTES_CHECK(v == cl.e * cl.f * (cl.e * cl.vphi + cl.h), "extended: v(phi) recursion mismatch");
    MONTES_CHECK(v == t.phi_value(r + 1, r + 1), "extended: v(phi) closed formula mismatch");
    t.levels.back().vphi = v;
    MONTES_CHECK(next.m == cl.e * cl.f * cl.m, "extended: degree mismatch");
    return t;
}

TypeRec TypeRec::refined(std::int64_t h, const FFPoly& psi) const {
    if (psi.degree() != 1) throw ContractViolation("refined: psi must be linear");
    IntPoly rep = representative(h, 1, psi);
    TypeRec t = *this;
    Valuation v = value(open_level(), rep);
    MONTES_CHECK(v == levels.back().vphi, "refined: valuation of the new phi changed");
    t.levels.back().phi = rep;
    t.H = h;
    t.refinements = refinements + 1;
    return t;
}

std::string TypeRec::to_string() const {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < levels.size(); ++i) {
        const TypeLevel& L = levels[i];
        os << L.phi.to_string();
        if (L.closed()) {
            os << "; -" << L.h;
            if (L.e != 1) os << "/" << L.e;
            os << ", ";
        }
    }
    if (levels.back().closed()) os << tower.to_string(levels.back().psi);
    os << ")";
    return os.str();
}

}  // namespace montes
