#include "montes/basis.hpp"

#include <algorithm>
#include <chrono>

#include "montes/error.hpp"

namespace montes {

std::vector<BasisElement> basis_elements(const MontesResult& res) {
    std::vector<BasisElement> B;
    for (size_t i = 0; i < res.numerators.size(); ++i) B.push_back({res.numerators[i], res.hvals[i], res.denominators[i]});
    return B;
}

std::vector<std::vector<mpz_class>> multiplication_matrix(const IntPoly& q, const IntPoly& f) {
    const int n = f.degree();
    std::vector<std::vector<mpz_class>> M(n, std::vector<mpz_class>(n));
    IntPoly cur = poly_rem(q, f);
    for (int k = 0; k < n; ++k) {
        if (k > 0) cur = poly_rem(cur * IntPoly::x(), f);
        for (int j = 0; j < n; ++j) M[k][j] = cur.coeff(j);
    }
    return M;
}

std::vector<mpz_class> charpoly(const std::vector<std::vector<mpz_class>>& A, const mpz_class& mod) {
    const size_t n = A.size();
    auto red = [&](mpz_class& v) {
        if (mod != 0) mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), mod.get_mpz_t());
    };
    if (n == 0) return {1};
    // Coefficients in descending powers while building.
    std::vector<mpz_class> poly{1, -A[n - 1][n - 1]};
    red(poly[1]);
    for (size_t i = n - 1; i-- > 0;) {
        const size_t m = n - 1 - i;  // size of the trailing block
        std::vector<mpz_class> t{1, -A[i][i]};
        red(t[1]);
        std::vector<mpz_class> v(m), w(m);
        for (size_t k = 0; k < m; ++k) v[k] = A[i + 1 + k][i];
        for (size_t pw = 0; pw < m; ++pw) {
            if (pw > 0) {
                for (size_t r = 0; r < m; ++r) {
                    mpz_class acc = 0;
                    for (size_t c = 0; c < m; ++c)
                        mpz_addmul(acc.get_mpz_t(), A[i + 1 + r][i + 1 + c].get_mpz_t(), v[c].get_mpz_t());
                    red(acc);
                    w[r] = acc;
                }
                std::swap(v, w);
            }
            mpz_class s = 0;
            for (size_t k = 0; k < m; ++k) mpz_addmul(s.get_mpz_t(), A[i][i + 1 + k].get_mpz_t(), v[k].get_mpz_t());
            s = -s;
            red(s);
            t.push_back(s);
        }
        std::vector<mpz_class> next(m + 2);
        for (size_t r = 0; r < m + 2; ++r) {
            mpz_class acc = 0;
            for (size_t j = 0; j <= r && j < poly.size(); ++j) mpz_addmul(acc.get_mpz_t(), t[r - j].get_mpz_t(), poly[j].get_mpz_t());
            red(acc);
            next[r] = acc;
        }
        poly = std::move(next);
    }
    std::reverse(poly.begin(), poly.end());
    return poly;
}

bool integrality_oracle(const IntPoly& q, std::int64_t nu, const IntPoly& f, const mpz_class& p) {
    if (nu <= 0) return true;
    const std::int64_t n = f.degree();
    mpz_class mod = ipow(p, static_cast<unsigned long>(nu * n + 1));
    std::vector<mpz_class> cp = charpoly(multiplication_matrix(q, f), mod);
    // cp[n - k] multiplies x^(n-k).
    for (std::int64_t k = 1; k <= n; ++k) {
        const mpz_class& c = cp[n - k];
        if (c == 0) continue;
        if (val_int(c, p) < nu * k) return false;
    }
    return true;
}

TriangularForm hermite_local(const std::vector<BasisElement>& B, const IntPoly& f, const mpz_class& p) {
    const int n = f.degree();
    std::int64_t nubar = 0;
    for (const auto& b : B) {
        if (b.nu < 0) throw InputError("negative denominator exponent");
        if (b.num.degree() >= n) throw InputError("numerator degree must be below deg f");
        nubar = std::max(nubar, b.nu);
    }
    const mpz_class mod = ipow(p, static_cast<unsigned long>(nubar));
    using Row = std::vector<mpz_class>;
    std::vector<Row> pool;
    for (const auto& b : B) {
        Row r(n);
        mpz_class s = ipow(p, static_cast<unsigned long>(nubar - b.nu));
        for (int j = 0; j < n; ++j) {
            r[j] = b.num.coeff(j) * s;
            mpz_fdiv_r(r[j].get_mpz_t(), r[j].get_mpz_t(), mod.get_mpz_t());
        }
        pool.push_back(std::move(r));
    }
    // Rows p^nubar x^j are implicit: everything is taken mod p^nubar.
    std::vector<Row> T(n);
    std::vector<std::int64_t> k(n, nubar);
    for (int d = n - 1; d >= 0; --d) {
        size_t best = pool.size();
        Valuation bv = kInfinity;
        for (size_t i = 0; i < pool.size(); ++i) {
            if (pool[i][d] == 0) continue;
            Valuation v = val_int(pool[i][d], p);
            if (v < bv) bv = v, best = i;
        }
        if (best == pool.size()) {
            T[d] = Row(n);
            T[d][d] = mod;
            k[d] = nubar;
            continue;
        }
        Row P = std::move(pool[best]);
        pool.erase(pool.begin() + best);
        mpz_class pk = ipow(p, static_cast<unsigned long>(bv));
        mpz_class u, uinv;
        mpz_divexact(u.get_mpz_t(), P[d].get_mpz_t(), pk.get_mpz_t());
        mpz_invert(uinv.get_mpz_t(), u.get_mpz_t(), mod.get_mpz_t());
        for (auto& v : P) {
            v *= uinv;
            mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), mod.get_mpz_t());
        }
        for (auto& R : pool) {
            if (R[d] == 0) continue;
            mpz_class c;
            mpz_divexact(c.get_mpz_t(), R[d].get_mpz_t(), pk.get_mpz_t());
            for (int j = 0; j <= d; ++j) {
                mpz_submul(R[j].get_mpz_t(), c.get_mpz_t(), P[j].get_mpz_t());
                mpz_fdiv_r(R[j].get_mpz_t(), R[j].get_mpz_t(), mod.get_mpz_t());
            }
        }
        T[d] = std::move(P);
        k[d] = bv;
    }
    // Canonical reduction of the entries below the diagonal.
    for (int d = 0; d < n; ++d) {
        for (int j = d - 1; j >= 0; --j) {
            if (T[d][j] == 0) continue;
            mpz_class pj = ipow(p, static_cast<unsigned long>(k[j]));
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), T[d][j].get_mpz_t(), pj.get_mpz_t());
            if (q == 0) continue;
            for (int i = 0; i <= j; ++i) {
                mpz_submul(T[d][i].get_mpz_t(), q.get_mpz_t(), T[j][i].get_mpz_t());
                if (i < j) mpz_fdiv_r(T[d][i].get_mpz_t(), T[d][i].get_mpz_t(), mod.get_mpz_t());
            }
        }
    }
    TriangularForm out;
    for (int d = 0; d < n; ++d) {
        mpz_class pk = ipow(p, static_cast<unsigned long>(k[d]));
        std::vector<mpz_class> g(d + 1);
        for (int j = 0; j <= d; ++j) {
            if (!mpz_divisible_p(T[d][j].get_mpz_t(), pk.get_mpz_t()))
                throw InputError("span is not triangular with monic integral numerators (degree " + std::to_string(d) + ")");
            mpz_divexact(g[j].get_mpz_t(), T[d][j].get_mpz_t(), pk.get_mpz_t());
        }
        out.g.push_back(IntPoly(std::move(g)));
        out.mu.push_back(nubar - k[d]);
    }
    return out;
}

Stem triangularize(const std::vector<BasisElement>& B, const IntPoly& f, const mpz_class& p) {
    TriangularForm tf = hermite_local(B, f, p);
    if (tf.mu.empty() || tf.mu[0] != 0) throw InputError("span contains non-integral constants");
    Stem s;
    s.entries.push_back({tf.g[0], 0});
    for (size_t d = 1; d < tf.mu.size(); ++d) {
        if (tf.mu[d] < tf.mu[d - 1]) throw InputError("denominator exponents decrease: span is not an order");
        if (tf.mu[d] > tf.mu[d - 1]) s.entries.push_back({tf.g[d], tf.mu[d]});
    }
    return s;
}

std::int64_t stem_weight(const Stem& stem, std::int64_t n) {
    std::int64_t w = 0;
    for (size_t i = 0; i < stem.entries.size(); ++i) {
        std::int64_t d = stem.entries[i].g.degree();
        std::int64_t dn = i + 1 < stem.entries.size() ? stem.entries[i + 1].g.degree() : n;
        w += (dn - d) * stem.entries[i].mu;
    }
    return w;
}

bool stem_criterion(const Stem& stem, std::int64_t n, std::int64_t ind) { return stem_weight(stem, n) == ind; }

std::vector<BasisElement> triangular_basis(const Stem& stem, std::int64_t n) {
    std::vector<BasisElement> out;
    for (size_t i = 0; i < stem.entries.size(); ++i) {
        std::int64_t d = stem.entries[i].g.degree();
        std::int64_t dn = i + 1 < stem.entries.size() ? stem.entries[i + 1].g.degree() : n;
        for (std::int64_t j = 0; d + j < dn; ++j)
            out.push_back({stem.entries[i].g * IntPoly::monomial(1, static_cast<int>(j)), mpq_class(stem.entries[i].mu),
                           stem.entries[i].mu});
    }
    return out;
}

Analysis analyze(const IntPoly& f, const mpz_class& p, const MontesOptions& opts) {
    using clock = std::chrono::steady_clock;
    auto ms = [](clock::time_point a, clock::time_point b) {
        return std::chrono::duration<double, std::milli>(b - a).count();
    };
    Analysis a;
    auto t0 = clock::now();
    a.res = montes_run(f, p, opts);
    auto t1 = clock::now();
    MontesResult& r = a.res;
    NumeratorCriterion num = check_numerator_criterion(r, f, p);
    r.ind_num = num.ind_num;
    r.numerator_ok = num.holds;
    auto t2 = clock::now();
    a.timings.montes_ms = ms(t0, t1);
    a.timings.numerator_ms = ms(t1, t2);
    try {
        a.stem = triangularize(basis_elements(r), f, p);
        a.stem_built = true;
        r.stem_weight_ok = stem_criterion(a.stem, f.degree(), r.total_index);
    } catch (const InputError& e) {
        a.diagnostic = e.what();
        r.stem_weight_ok = false;
    }
    if (r.numerator_ok != r.stem_weight_ok && a.diagnostic.empty())
        a.diagnostic = "criteria disagree: numerator determinant and stem weight give different verdicts";
    r.maximal = r.numerator_ok && r.stem_weight_ok;
    a.timings.stem_ms = ms(t2, clock::now());
    a.vdisc_K = r.vdisc_f - 2 * r.total_index;
    return a;
}

}  // namespace montes
