#include "montes/fixtures.hpp"

#include <map>
#include <numeric>

#include "montes/error.hpp"
#include "montes/ffield.hpp"
#include "montes/poly_parse.hpp"
#include "montes/types.hpp"

namespace montes::fixtures {

IntPoly golden() { return parse_poly("x^12 + 4*x^6 + 16*x^3 + 64"); }

IntPoly quartic(const mpz_class& p, unsigned k) {
    IntPoly base = parse_poly("(x^2 + x + 1)^2");
    return base - IntPoly::constant(ipow(p, 2 * k + 1));
}

namespace {

const char* const kTower[] = {
    "x^2 + 4*x + 16",
    "p1^2 + 16*x*p1 + 1024",
    "p2^2 + 2^11*u*p2 + 2^18*x*p1",
    "p3^2 + 2^25*x*p3 + 2^35*p1*p2",
    "p4^3 + 2^29*p3*p4^2 + 2^139*p3 + 2^153*p2",
    "p5^2 + 2^141*p3*p5 + 2^279*p4",
    "p6^3 + 2^998*p1 + 2^1003",
    "p7^2 + 2^1505*(p5 + 2^167)*p6",
    "p8^2 + ("
    "  ((2^683*(x*v*p2 + 2^13*w)*p3 + 2^710*(w*p2 + 2^11*x*v))*p4^2"
    "   + 2^743*(x*(p2 + 2^7*v)*p3 + 2^25*(u*p2 + 2^7*(u*p1 + 64)))*p4"
    "   + 2^793*(u*p1*p2 + 2^13*w)*p3 + 2^26*(x*v*p2 + 2^13*p1))*p5"
    "  + 2^867*(u*p3 + 2^10*(w*p2 + 2*u*v))*p4^2"
    "  + 2^905*(((u*p1 + 64)*p2 + 2^12*u*p1)*p3 + 2^31*u*(p2 + 2^7*p1))*p4"
    "  + 2^960*((x*p1 + 64)*p2 + 2^12*x*v)*p3"
    "  + 2^986*((u*p1 + 32*x)*p2 + 2^13*(p1 + 16*u))"
    ")*p7*p8 + ("
    "  (2^3364*(u*(p2 + 2^12)*p3 + 2^22*(v*p2 + 2^11*u*p1))*p4^2"
    "   + 2^3420*((p2 + 64*u*v)*p3 + 2^20*(u*p1 + 32*x)*p2 + 2^33*w)*p4"
    "   + 2^3469*(x*p1*p2 + 2^13*w)*p3"
    "   + 2^3495*((x*p1 + 32*u)*p2 + 2^12*(u*p1 + 32*x)))*p5"
    "  + 2^3531*((u*p2 + 2^7*(x*p1 + 32*u))*p3 + 2^22*(p1 + 16*u)*(p2 + 2^12))*p4^2"
    "  + 2^3582*((v*p2 + 2^16*x)*p3 + 2^25*u*v*p2)*p4"
    "  + 2^3641*((u*p2 + 2^13)*p3 + 2^21*(x*v*p2 + 2^13*(p1 + 16*u)))"
    ")*p6",
};

}  // namespace

IntPoly tower(int j) {
    if (j < 1 || j > 9) throw ContractViolation("tower: index must be in 1..9");
    std::map<std::string, IntPoly> b;
    b["u"] = parse_poly("x + 2");
    IntPoly last;
    for (int i = 1; i <= j; ++i) {
        last = parse_poly(kTower[i - 1], b);
        b["p" + std::to_string(i)] = last;
        if (i == 1) {
            b["v"] = last + IntPoly::constant(32);
            b["w"] = last + IntPoly::monomial(16, 1);
        }
    }
    return last;
}

std::int64_t tower_index(int j) {
    static const std::int64_t idx[] = {0, 0, 12, 72, 352, 3696, 15408, 142416, 573696, 2303520};
    if (j < 2 || j > 9) throw ContractViolation("tower_index: index must be in 2..9");
    return idx[j];
}

namespace {

struct Rng {
    explicit Rng(std::uint64_t seed) : g(gmp_randinit_mt) { g.seed(mpz_class(std::to_string(seed))); }
    long uniform(long lo, long hi) {  // inclusive
        mpz_class r = g.get_z_range(mpz_class(hi - lo + 1));
        return lo + r.get_si();
    }
    gmp_randclass g;
};

FFPoly random_irreducible(const FieldTower& T, int level, int deg, bool avoid_y, Rng& rng) {
    while (true) {
        std::vector<FFElem> c;
        for (int i = 0; i < deg; ++i) c.push_back(T.random(level, rng.g));
        c.push_back(T.one(level));
        FFPoly P = ffp_from(T, level, std::move(c));
        if (avoid_y && T.is_zero(P.c[0])) continue;
        if (is_irreducible(T, P)) return P;
    }
}

mpz_class random_prime(Rng& rng, unsigned max_prime, bool small_bias) {
    static const unsigned kSmall[] = {2, 3, 5, 7, 11, 13};
    if (small_bias && rng.uniform(0, 3) != 0) return kSmall[rng.uniform(0, 5)];
    while (true) {
        mpz_class c = rng.uniform(2, static_cast<long>(max_prime) - 1);
        if (mpz_probab_prime_p(c.get_mpz_t(), 30)) return c;
    }
}

// A random type of order `order` (levels 1..order closed) whose
// representative has degree <= max_degree. Returns false when the degree
// budget cannot be met.
bool random_type(const mpz_class& p, int order, int max_degree, Rng& rng, TypeRec& out, const FFPoly* psi0_hint) {
    FieldTower F0(p);
    int f0 = psi0_hint ? psi0_hint->degree() : static_cast<int>(rng.uniform(1, 2));
    if (f0 > max_degree) return false;
    FFPoly psi0 = psi0_hint ? *psi0_hint : random_irreducible(F0, 0, f0, false, rng);
    TypeRec t = TypeRec::order_zero(p, psi0);
    std::int64_t m = f0;
    for (int lvl = 1; lvl <= order; ++lvl) {
        bool placed = false;
        for (int attempt = 0; attempt < 20 && !placed; ++attempt) {
            std::int64_t e = rng.uniform(1, 3);
            std::int64_t f = rng.uniform(1, 2);
            if (e * f == 1) continue;
            if (m * e * f > max_degree) continue;
            std::int64_t h = rng.uniform(1, 4);
            if (std::gcd(h, e) != 1) continue;
            FFPoly psi = random_irreducible(t.tower, t.open_level(), static_cast<int>(f), true, rng);
            t = t.extended(h, e, psi);
            m *= e * f;
            placed = true;
        }
        if (!placed) return false;
    }
    out = std::move(t);
    return true;
}

IntPoly random_small_poly(Rng& rng, int deg_bound, long bound) {
    std::vector<mpz_class> c;
    for (int i = 0; i < deg_bound; ++i) c.emplace_back(rng.uniform(-bound, bound));
    return IntPoly(std::move(c));
}

// Tail t with f + p^N t irreducible modulo an auxiliary prime q != p, hence
// irreducible over Z: t = 1 + p (h0 + q h1), h0 fixed by a random irreducible
// target modulo q and h1 small.
IntPoly irreducible_tail(Rng& rng, const IntPoly& f, const mpz_class& p, std::int64_t N) {
    const mpz_class q = p == 2 ? 3 : 2;
    FieldTower Fq(q);
    FFPoly target = random_irreducible(Fq, 0, f.degree(), false, rng);
    mpz_class pN = ipow(p, static_cast<unsigned long>(N)), inv;
    mpz_class pN1 = pN * p;
    mpz_invert(inv.get_mpz_t(), pN1.get_mpz_t(), q.get_mpz_t());
    IntPoly h1 = random_small_poly(rng, f.degree(), 1);
    std::vector<mpz_class> h(f.degree());
    for (int i = 0; i < f.degree(); ++i) {
        mpz_class r = target.c[i].c[0] - f.coeff(i) - (i == 0 ? pN : mpz_class(0));
        r = r * inv % q;
        if (r < 0) r += q;
        h[i] = r + q * h1.coeff(i);
    }
    return IntPoly::constant(1) + IntPoly(std::move(h)) * p;
}

}  // namespace

Generated random_single_type(std::uint64_t seed, const SingleTypeParams& params) {
    Rng rng(seed);
    while (true) {
        mpz_class p = random_prime(rng, 64, true);
        int order = static_cast<int>(rng.uniform(1, params.max_order));
        TypeRec t;
        if (!random_type(p, order, params.max_degree, rng, t, nullptr)) continue;
        const IntPoly& phi = t.phi();
        Valuation v = t.level(t.open_level()).vphi;
        std::int64_t E = t.e_product(t.open_level() - 1);
        std::int64_t N = v / E + 1 + rng.uniform(0, 2);
        IntPoly tail = IntPoly::constant(1) + random_small_poly(rng, phi.degree(), 3) * p;
        IntPoly f = phi + tail * ipow(p, static_cast<unsigned long>(N));
        if (is_inf(disc_valuation(f, p))) continue;
        return {f, p, "single type " + t.to_string() + " N=" + std::to_string(N)};
    }
}

Generated random_mixed(std::uint64_t seed, const MixedParams& params) {
    Rng rng(seed);
    while (true) {
        mpz_class p = random_prime(rng, params.max_prime, true);
        int k = static_cast<int>(rng.uniform(1, params.max_factors));
        IntPoly f = IntPoly::constant(1);
        int budget = params.max_degree;
        Valuation vmax = 0;
        std::string desc;
        FFPoly shared;
        bool have_shared = false;
        for (int i = 0; i < k && budget > 0; ++i) {
            int order = static_cast<int>(rng.uniform(1, params.max_order));
            int mult = static_cast<int>(rng.uniform(1, 2));
            TypeRec t;
            const FFPoly* hint = (have_shared && rng.uniform(0, 1) == 0) ? &shared : nullptr;
            if (!random_type(p, order - 1, budget / mult, rng, t, hint)) continue;
            if (!have_shared) shared = t.psi0, have_shared = true;
            const IntPoly& phi = t.phi();
            if (phi.degree() * mult > budget) continue;
            budget -= phi.degree() * mult;
            f = f * phi.pow(static_cast<unsigned>(mult));
            std::int64_t E = t.e_product(t.open_level() - 1);
            vmax = std::max<Valuation>(vmax, t.level(t.open_level()).vphi / E + 1);
            if (!desc.empty()) desc += " * ";
            desc += "(" + phi.to_string() + ")" + (mult > 1 ? "^" + std::to_string(mult) : "");
        }
        if (f.degree() < 2) continue;
        std::int64_t N = rng.uniform(1, vmax + 3);
        for (int attempt = 0; attempt < 4; ++attempt, ++N) {
            IntPoly g = f + irreducible_tail(rng, f, p, N) * ipow(p, static_cast<unsigned long>(N));
            if (!g.is_monic()) continue;
            if (is_inf(disc_valuation(g, p))) continue;
            return {g, p, desc + " + p^" + std::to_string(N) + "*(...)"};
        }
    }
}

}  // namespace montes::fixtures
