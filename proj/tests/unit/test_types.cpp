#include <gtest/gtest.h>

#include "gen.hpp"
#include "montes/types.hpp"

using namespace montes;

namespace {

// P = sum c_k phi^k with random p-power weights on the coefficients.
IntPoly random_development(gen::Rng& g, const TypeRec& t, int i, int terms) {
    const IntPoly& phi = t.level(i).phi;
    const mpz_class& p = t.p();
    IntPoly P, pw = IntPoly::constant(1);
    for (int k = 0; k < terms; ++k) {
        IntPoly c = gen::p_poly(g, p, phi.degree() - 1, 6);
        P = P + c * pw;
        pw = pw * phi;
    }
    return P;
}

// (phi_1, ..., phi_r)-multiadic development of P, deg P < m_{r+1}.
void multiadic(const TypeRec& t, const IntPoly& P, int k, std::vector<std::int64_t>& idx,
               std::vector<std::pair<IntPoly, std::vector<std::int64_t>>>& out) {
    if (k == 0) {
        out.emplace_back(P, idx);
        return;
    }
    auto coeffs = phi_coeffs(P, t.level(k).phi);
    for (size_t j = 0; j < coeffs.size(); ++j) {
        if (coeffs[j].is_zero()) continue;
        idx[k - 1] = static_cast<std::int64_t>(j);
        multiadic(t, coeffs[j], k - 1, idx, out);
    }
    idx[k - 1] = 0;
}

}  // namespace

TEST(Types, OrderZeroData) {
    FieldTower F(2);
    TypeRec t = TypeRec::order_zero(2, ffp_from(F, 0, {F.zero(0), F.one(0)}));
    EXPECT_EQ(t.order(), 0);
    EXPECT_EQ(t.phi(), IntPoly::x());
    IntPoly f{64, 0, 0, 16, 0, 0, 4, 0, 0, 0, 0, 0, 1};
    EXPECT_EQ(t.omega(1, f), 12);
    EXPECT_EQ(t.value(1, f), 0);
    EXPECT_EQ(t.value(1, IntPoly{12, 4}), 2);
}

TEST(Types, GoldenSecondOrderData) {
    FieldTower F(2);
    TypeRec t = TypeRec::order_zero(2, ffp_from(F, 0, {F.zero(0), F.one(0)}));
    TypeRec t2 = t.extended(1, 3, ffp_from(t.tower, 1, {t.tower.one(1), t.tower.one(1)}));
    EXPECT_EQ(t2.level(2).m, 3);
    EXPECT_EQ(t2.level(2).vphi, 3);
    EXPECT_EQ(t2.value(2, IntPoly::constant(2)), 3);
    IntPoly f{64, 0, 0, 16, 0, 0, 4, 0, 0, 0, 0, 0, 1};
    EXPECT_EQ(t2.phi(), (IntPoly{2, 0, 0, 1}));
    EXPECT_EQ(t2.value(2, f), 12);
    EXPECT_EQ(t2.omega(2, f), 2);
    NewtonPolygon N = principal_part(t2.newton_polygon(2, f));
    EXPECT_EQ(N.vertices.front(), (Point{0, 18}));
    EXPECT_EQ(N.vertices.back(), (Point{2, 12}));
}

TEST(Types, ResidualPolynomialIsMultiplicative) {
    gen::Rng g(51);
    int done = 0;
    for (int it = 0; done < 200 && it < 2000; ++it) {
        mpz_class p = gen::small_prime(g);
        int closed = static_cast<int>(gen::uniform(g, 0, 2));
        TypeRec t;
        if (!gen::type(g, p, closed, 24, t)) continue;
        int i = t.open_level();
        std::int64_t e = gen::uniform(g, 1, 4), h = gen::uniform(g, 1, 6);
        if (std::gcd(e, h) != 1) continue;
        IntPoly P = random_development(g, t, i, static_cast<int>(gen::uniform(g, 1, 4)));
        IntPoly Q = random_development(g, t, i, static_cast<int>(gen::uniform(g, 1, 4)));
        FFPoly RP = t.residual(i, P, h, e), RQ = t.residual(i, Q, h, e);
        FFPoly RPQ = t.residual(i, P * Q, h, e);
        EXPECT_EQ(RPQ, ffp_mul(t.tower, RP, RQ)) << t.to_string() << " h=" << h << " e=" << e;
        ++done;
    }
    EXPECT_EQ(done, 200);
}

TEST(Types, RepresentativeContract) {
    gen::Rng g(52);
    int done = 0;
    for (int it = 0; done < 150 && it < 2000; ++it) {
        mpz_class p = gen::small_prime(g);
        int closed = static_cast<int>(gen::uniform(g, 0, 2));
        TypeRec t;
        if (!gen::type(g, p, closed, 18, t)) continue;
        int r = t.open_level();
        std::int64_t e = gen::uniform(g, 1, 3), h = gen::uniform(g, 1, 5);
        std::int64_t f = gen::uniform(g, 1, 2);
        if (std::gcd(e, h) != 1 || e * f * t.level(r).m > 36) continue;
        FFPoly psi = gen::irreducible(g, t.tower, r, static_cast<int>(f), true);
        IntPoly phi = t.representative(h, e, psi);
        EXPECT_TRUE(phi.is_monic());
        EXPECT_EQ(phi.degree(), e * f * t.level(r).m);
        NewtonPolygon N = t.newton_polygon(r, phi);
        auto S = sides(N);
        ASSERT_EQ(S.size(), 1u) << t.to_string() << " " << N.to_string();
        EXPECT_EQ(S[0].h, h);
        EXPECT_EQ(S[0].e, e);
        EXPECT_EQ(S[0].length(), e * f);
        FFPoly R = t.residual(r, phi_coeffs(phi, t.level(r).phi), S[0]);
        EXPECT_EQ(ffp_monic(t.tower, R), psi);
        // value of the new representative from the closed formula
        TypeRec u = t.extended(h, e, psi);
        EXPECT_EQ(u.level(r + 1).vphi, e * f * (e * t.level(r).vphi + h));
        ++done;
    }
    EXPECT_EQ(done, 150);
}

TEST(Types, ClosedFormulaForPhiValues) {
    gen::Rng g(53);
    for (int it = 0; it < 120; ++it) {
        TypeRec t;
        if (!gen::type(g, gen::small_prime(g), static_cast<int>(gen::uniform(g, 1, 3)), 30, t)) continue;
        for (int r = 1; r <= t.open_level(); ++r)
            for (int s = 1; s <= t.open_level(); ++s)
                EXPECT_EQ(t.phi_value(r, s), t.value(r, t.level(s).phi)) << t.to_string() << " r=" << r << " s=" << s;
    }
}

TEST(Types, MultiadicDevelopmentAttainsMinimum) {
    gen::Rng g(54);
    int done = 0;
    for (int it = 0; done < 200 && it < 3000; ++it) {
        TypeRec t;
        if (!gen::type(g, gen::small_prime(g), static_cast<int>(gen::uniform(g, 1, 3)), 30, t)) continue;
        int r1 = t.open_level();
        std::int64_t m = t.level(r1).m;
        IntPoly P = gen::p_poly(g, t.p(), static_cast<int>(m - 1), 8);
        std::vector<std::pair<IntPoly, std::vector<std::int64_t>>> terms;
        std::vector<std::int64_t> idx(r1 - 1, 0);
        multiadic(t, P, r1 - 1, idx, terms);
        Valuation best = kInfinity;
        std::int64_t E = t.e_product(r1 - 1);
        for (const auto& [a, j] : terms) {
            Valuation v = E * val_poly(a, t.p());
            for (int k = 1; k < r1; ++k) {
                EXPECT_LT(j[k - 1], t.level(k).e * t.level(k).f);
                v += j[k - 1] * t.phi_value(r1, k);
            }
            best = std::min(best, v);
        }
        EXPECT_EQ(t.value(r1, P), best) << t.to_string() << " P=" << P.to_string();
        ++done;
    }
    EXPECT_EQ(done, 200);
}

TEST(Types, LowerIndexWeightsStayBelowRepresentativeValue) {
    gen::Rng g(55);
    for (int it = 0; it < 200; ++it) {
        TypeRec t;
        if (!gen::type(g, gen::small_prime(g), static_cast<int>(gen::uniform(g, 1, 3)), 36, t)) continue;
        int r = t.open_level();
        std::int64_t s = 0;
        for (int k = 1; k < r; ++k) {
            std::int64_t j = gen::uniform(g, 0, t.level(k).e * t.level(k).f - 1);
            if (it % 2 == 0) j = t.level(k).e * t.level(k).f - 1;  // extreme case
            s += j * t.phi_value(r, k);
        }
        EXPECT_LT(s, t.phi_value(r, r));
    }
}

TEST(Types, LiftHasRequestedValueAndResidue) {
    gen::Rng g(56);
    int done = 0;
    for (int it = 0; done < 200 && it < 3000; ++it) {
        TypeRec t;
        if (!gen::type(g, gen::small_prime(g), static_cast<int>(gen::uniform(g, 0, 2)), 24, t)) continue;
        int i = t.open_level();
        FFElem xi = gen::elem(g, t.tower, i);
        if (t.tower.is_zero(xi)) continue;
        Valuation U = t.level(i).vphi + gen::uniform(g, 0, 12);
        IntPoly a = t.lift(i, xi, U);
        EXPECT_LT(a.degree(), t.level(i).m);
        auto [v, red] = t.value_and_reduce(i, a);
        EXPECT_EQ(v, U);
        EXPECT_EQ(red, xi);
        ++done;
    }
    EXPECT_EQ(done, 200);
}
