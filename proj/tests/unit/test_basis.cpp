#include <gtest/gtest.h>

#include "gen.hpp"
#include "montes/basis.hpp"
#include "montes/error.hpp"
#include "montes/fixtures.hpp"
#include "montes/poly_parse.hpp"

using namespace montes;

namespace {

using Matrix = std::vector<std::vector<mpz_class>>;

mpz_class bareiss_det(Matrix M) {
    const size_t n = M.size();
    if (n == 0) return 1;
    mpz_class prev = 1;
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (M[k][k] == 0) {
            size_t r = k + 1;
            while (r < n && M[r][k] == 0) ++r;
            if (r == n) return 0;
            std::swap(M[k], M[r]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j) M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) / prev;
        prev = M[k][k];
    }
    return sign * M[n - 1][n - 1];
}

// Plain integer Hermite form of the rows of A (n columns) together with
// p^nubar e_j, pivots at column d in row d, entries left of a pivot
// column reduced into [0, pivot).
Matrix integer_hnf(Matrix rows, int n) {
    Matrix T(n, std::vector<mpz_class>(n));
    for (int d = n - 1; d >= 0; --d) {
        // Euclid on column d
        while (true) {
            std::vector<size_t> nz;
            for (size_t i = 0; i < rows.size(); ++i)
                if (rows[i][d] != 0) nz.push_back(i);
            if (nz.size() <= 1) break;
            size_t best = nz[0];
            for (size_t i : nz)
                if (abs(rows[i][d]) < abs(rows[best][d])) best = i;
            for (size_t i : nz) {
                if (i == best) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), rows[i][d].get_mpz_t(), rows[best][d].get_mpz_t());
                for (int j = 0; j < n; ++j) rows[i][j] -= q * rows[best][j];
            }
        }
        size_t piv = rows.size();
        for (size_t i = 0; i < rows.size(); ++i)
            if (rows[i][d] != 0) piv = i;
        if (piv == rows.size()) throw std::runtime_error("lattice is not full rank");
        if (rows[piv][d] < 0)
            for (auto& v : rows[piv]) v = -v;
        T[d] = rows[piv];
        rows.erase(rows.begin() + static_cast<long>(piv));
    }
    for (int d = 0; d < n; ++d)
        for (int j = d - 1; j >= 0; --j) {
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), T[d][j].get_mpz_t(), T[j][j].get_mpz_t());
            for (int i = 0; i <= j; ++i) T[d][i] -= q * T[j][i];
        }
    return T;
}

}  // namespace

TEST(Basis, CharpolyOfCompanionMatrixIsF) {
    gen::Rng g(61);
    for (int it = 0; it < 60; ++it) {
        IntPoly f = gen::poly(g, static_cast<int>(gen::uniform(g, 1, 12)), 40, true);
        auto cp = charpoly(multiplication_matrix(IntPoly::x(), f));
        EXPECT_EQ(IntPoly(cp), f);
    }
}

TEST(Basis, CharpolyMatchesDeterminantAtIntegerPoints) {
    gen::Rng g(62);
    for (int it = 0; it < 40; ++it) {
        int n = static_cast<int>(gen::uniform(g, 1, 7));
        Matrix M(n, std::vector<mpz_class>(n));
        for (auto& r : M)
            for (auto& v : r) v = gen::uniform(g, -9, 9);
        IntPoly cp(charpoly(M));
        for (long t = -3; t <= 3; ++t) {
            Matrix A = M;
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) A[i][j] = -A[i][j];
                A[i][i] += t;
            }
            EXPECT_EQ(cp.eval(t), bareiss_det(A));
        }
        mpz_class mod = 1000003;
        IntPoly cpm(charpoly(M, mod));
        EXPECT_EQ(cpm, cp.mod(mod));
    }
}

TEST(Basis, IntegralityOracleOnKnownElements) {
    IntPoly f = fixtures::golden();
    IntPoly q1{0, 0, 16, 0, 0, 4, 0, 0, 0, 0, 0, 1};
    EXPECT_TRUE(integrality_oracle(q1, 5, f, 2));
    EXPECT_FALSE(integrality_oracle(q1, 6, f, 2));
    IntPoly phi2 = fixtures::tower(2);
    EXPECT_TRUE(integrality_oracle(IntPoly{24, 1}, 2, phi2, 2));
    EXPECT_FALSE(integrality_oracle(IntPoly{24, 1}, 3, phi2, 2));
    EXPECT_TRUE(integrality_oracle(IntPoly{1, 1}, 0, phi2, 2));
    // (1 + sqrt 5)/2
    EXPECT_TRUE(integrality_oracle(IntPoly{1, 1}, 1, IntPoly{-5, 0, 1}, 2));
    EXPECT_FALSE(integrality_oracle(IntPoly{1, 1}, 1, IntPoly{-3, 0, 1}, 2));
}

TEST(Basis, DeterminantValuationMatchesExact) {
    gen::Rng g(63);
    for (int it = 0; it < 60; ++it) {
        int n = static_cast<int>(gen::uniform(g, 1, 6));
        mpz_class p = gen::small_prime(g);
        Matrix M(n, std::vector<mpz_class>(n));
        for (auto& r : M)
            for (auto& v : r) v = gen::uniform(g, -20, 20) * ipow(p, static_cast<unsigned long>(gen::uniform(g, 0, 3)));
        mpz_class d = bareiss_det(M);
        auto v = det_valuation(M, p, 40);
        if (d == 0 || val_int(d, p) >= 40)
            EXPECT_FALSE(v.has_value());
        else
            EXPECT_EQ(*v, val_int(d, p));
    }
}

TEST(Basis, HermiteMatchesIntegerHnf) {
    for (std::uint64_t s = 0; s < 40; ++s) {
        auto gin = fixtures::random_mixed(s, {2, 14, 2, 50});
        MontesResult r = montes_run(gin.f, gin.p);
        auto B = basis_elements(r);
        const int n = gin.f.degree();
        std::int64_t nubar = 0;
        for (const auto& b : B) nubar = std::max(nubar, b.nu);
        Matrix rows;
        for (const auto& b : B) {
            std::vector<mpz_class> row(n);
            for (int j = 0; j < n; ++j) row[j] = b.num.coeff(j) * ipow(gin.p, static_cast<unsigned long>(nubar - b.nu));
            rows.push_back(row);
        }
        for (int j = 0; j < n; ++j) {
            std::vector<mpz_class> row(n);
            row[j] = ipow(gin.p, static_cast<unsigned long>(nubar));
            rows.push_back(row);
        }
        Matrix T = integer_hnf(rows, n);
        TriangularForm tf = hermite_local(B, gin.f, gin.p);
        for (int d = 0; d < n; ++d) {
            mpz_class pk = ipow(gin.p, static_cast<unsigned long>(nubar - tf.mu[d]));
            EXPECT_EQ(T[d][d], pk) << gin.description;
            for (int j = 0; j <= d; ++j) EXPECT_EQ(T[d][j], tf.g[d].coeff(j) * pk) << gin.description << " d=" << d;
        }
    }
}

TEST(Basis, HermiteRejectsNonIntegralNumerators) {
    std::vector<BasisElement> B{{IntPoly{1, 2}, mpq_class(2), 2}};
    EXPECT_THROW(hermite_local(B, IntPoly{1, 0, 1}, 2), InputError);
    std::vector<BasisElement> C{{IntPoly{1, 2}, mpq_class(1), 1}};
    EXPECT_THROW(triangularize(C, IntPoly{1, 0, 1}, 2), InputError);
}

TEST(Basis, GoldenStem) {
    Analysis a = analyze(fixtures::golden(), 2);
    const std::vector<std::pair<std::string, std::int64_t>> want = {
        {"1", 0}, {"x^3", 1}, {"x^5 + 2*x^2", 2}, {"x^6 + 2*x^3", 3}, {"x^8 + 2*x^5 + 8*x^2", 4}, {"x^11 + 4*x^5 + 16*x^2", 5}};
    ASSERT_EQ(a.stem.entries.size(), want.size());
    for (size_t i = 0; i < want.size(); ++i) {
        EXPECT_EQ(a.stem.entries[i].g, parse_poly(want[i].first));
        EXPECT_EQ(a.stem.entries[i].mu, want[i].second);
    }
    EXPECT_EQ(stem_weight(a.stem, 12), 2 * 1 + 1 * 2 + 2 * 3 + 3 * 4 + 1 * 5);
    EXPECT_TRUE(a.res.stem_weight_ok);
    EXPECT_TRUE(a.res.numerator_ok);
    EXPECT_TRUE(a.res.maximal);
    EXPECT_EQ(a.vdisc_K, 15);
    auto tb = triangular_basis(a.stem, 12);
    ASSERT_EQ(tb.size(), 12u);
    for (size_t d = 0; d < tb.size(); ++d) {
        EXPECT_EQ(tb[d].num.degree(), static_cast<int>(d));
        EXPECT_TRUE(integrality_oracle(tb[d].num, tb[d].nu, a.res.f, 2));
    }
}

TEST(Basis, CriteriaFailOnTruncatedBasis) {
    MontesResult r = montes_run(fixtures::golden(), 2);
    for (auto& d : r.denominators) d = std::max<std::int64_t>(0, d - 1);
    NumeratorCriterion c = check_numerator_criterion(r, r.f, r.p);
    EXPECT_FALSE(c.holds);
    Stem s = triangularize(basis_elements(r), r.f, r.p);
    EXPECT_FALSE(stem_criterion(s, 12, r.total_index));
}
