#pragma once

// Hand-rolled generators shared by the property tests.

#include <gmpxx.h>

#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "montes/ffield.hpp"
#include "montes/types.hpp"
#include "montes/zpoly.hpp"

namespace gen {

using Rng = std::mt19937_64;

inline long uniform(Rng& g, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(g); }

inline mpz_class small_prime(Rng& g) {
    static const long ps[] = {2, 3, 5, 7, 11, 13};
    return ps[uniform(g, 0, 5)];
}

inline montes::IntPoly poly(Rng& g, int deg, long bound, bool monic = false) {
    std::vector<mpz_class> c;
    for (int i = 0; i <= deg; ++i) c.emplace_back(uniform(g, -bound, bound));
    if (monic) c.back() = 1;
    if (!monic && c.back() == 0) c.back() = 1;
    return montes::IntPoly(std::move(c));
}

// Integer polynomial whose coefficients carry random powers of p.
inline montes::IntPoly p_poly(Rng& g, const mpz_class& p, int deg, int max_exp) {
    std::vector<mpz_class> c;
    for (int i = 0; i <= deg; ++i) {
        mpz_class v = uniform(g, 1, 50);
        if (uniform(g, 0, 5) == 0) v = 0;
        c.push_back(v * montes::ipow(p, static_cast<unsigned long>(uniform(g, 0, max_exp))));
    }
    if (c.back() == 0) c.back() = 1;
    return montes::IntPoly(std::move(c));
}

inline montes::FFElem elem(Rng& g, const montes::FieldTower& T, int level) {
    montes::FFElem e;
    e.level = level;
    mpz_class p = T.p();
    for (std::size_t i = 0; i < T.abs_degree(level); ++i) e.c.emplace_back(uniform(g, 0, p.get_si() - 1));
    return e;
}

inline montes::FFPoly ffpoly(Rng& g, const montes::FieldTower& T, int level, int deg, bool monic) {
    std::vector<montes::FFElem> c;
    for (int i = 0; i <= deg; ++i) c.push_back(elem(g, T, level));
    if (monic) c.back() = T.one(level);
    return montes::ffp_from(T, level, std::move(c));
}

inline montes::FFPoly irreducible(Rng& g, const montes::FieldTower& T, int level, int deg, bool avoid_y) {
    while (true) {
        montes::FFPoly P = ffpoly(g, T, level, deg, true);
        if (avoid_y && T.is_zero(P.c[0])) continue;
        if (montes::is_irreducible(T, P)) return P;
    }
}

// A type with `closed` closed levels and representative degree <= max_deg.
inline bool type(Rng& g, const mpz_class& p, int closed, int max_deg, montes::TypeRec& out) {
    montes::FieldTower F0(p);
    int f0 = static_cast<int>(uniform(g, 1, 2));
    montes::TypeRec t = montes::TypeRec::order_zero(p, irreducible(g, F0, 0, f0, false));
    std::int64_t m = f0;
    for (int i = 0; i < closed; ++i) {
        bool ok = false;
        for (int a = 0; a < 30 && !ok; ++a) {
            std::int64_t e = uniform(g, 1, 3), f = uniform(g, 1, 2), h = uniform(g, 1, 4);
            if (e * f == 1 || std::gcd(e, h) != 1 || m * e * f > max_deg) continue;
            t = t.extended(h, e, irreducible(g, t.tower, t.open_level(), static_cast<int>(f), true));
            m *= e * f;
            ok = true;
        }
        if (!ok) return false;
    }
    out = std::move(t);
    return true;
}

}  // namespace gen
