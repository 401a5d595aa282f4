#include "montes/montes.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "montes/error.hpp"

namespace montes {

std::int64_t MontesResult::sum_nu() const {
    std::int64_t s = 0;
    for (auto v : denominators) s += v;
    return s;
}

bool operator==(const MontesResult& a, const MontesResult& b) {
    if (a.primes.size() != b.primes.size()) return false;
    for (size_t i = 0; i < a.primes.size(); ++i) {
        const auto &x = a.primes[i], &y = b.primes[i];
        if (x.type != y.type || x.e != y.e || x.f != y.f || x.path != y.path || x.phi_equals_f != y.phi_equals_f)
            return false;
    }
    return a.f == b.f && a.p == b.p && a.total_index == b.total_index && a.index_by_order == b.index_by_order &&
           a.numerators == b.numerators && a.denominators == b.denominators && a.hvals == b.hvals &&
           a.iterations == b.iterations && a.refinements == b.refinements && a.vdisc_f == b.vdisc_f &&
           a.ind_num == b.ind_num && a.numerator_ok == b.numerator_ok && a.stem_weight_ok == b.stem_weight_ok &&
           a.maximal == b.maximal;
}

bool is_probable_prime(const mpz_class& p) {
    // 64 Miller-Rabin rounds: error probability below 4^-64 = 2^-128.
    return p >= 2 && mpz_probab_prime_p(p.get_mpz_t(), 64) > 0;
}

std::vector<TypeRec> initialize(const IntPoly& f, const mpz_class& p, std::uint64_t seed) {
    if (!f.is_monic() || f.degree() < 1) throw InputError("f must be monic of degree >= 1");
    if (!is_probable_prime(p)) throw InputError("p must be prime");
    FieldTower F0(p);
    FFPoly fbar = reduce_mod_p(F0, f);
    std::vector<TypeRec> out;
    int idx = 0;
    for (const auto& fa : factor_poly(F0, fbar, seed)) {
        TypeRec t = TypeRec::order_zero(p, fa.factor);
        t.omega_f = fa.multiplicity;
        t.path = {idx++};
        out.push_back(std::move(t));
    }
    return out;
}

std::int64_t ind_partial(const TypeRec& t, const NewtonPolygon& NH, std::int64_t H) {
    std::int64_t l = NH.length();
    std::int64_t raw = polygon_index(NH) - H * l * (l - 1) / 2;
    if (raw < 0) throw InternalError("ind_partial: negative index contribution");
    return t.f_product(t.open_level() - 1) * raw;
}

mpq_class h_value(const TypeRec& t, const NewtonPolygon& principal, std::int64_t j) {
    const int r = t.open_level();
    mpq_class Y = ordinate_at(principal, j);
    mpq_class H = (Y - mpq_class(mpz_class(j) * t.level(r).vphi)) / mpq_class(t.e_product(r - 1));
    H.canonicalize();
    return H;
}

EnlargedPQ enlarge_pq(const TypeRec& t, const std::vector<IntPoly>& quotients, std::int64_t b, std::int64_t e,
                      std::int64_t fmax, const NewtonPolygon& principal, const IntPoly& f) {
    EnlargedPQ out{t.PQ, t.PQVals};
    for (std::int64_t k = 1; k <= e * fmax; ++k) {
        std::int64_t j = b - k;
        MONTES_CHECK(j >= 1, "enlarge_pq: quotient index out of range");
        const IntPoly& q = quotients.at(j - 1);
        mpq_class Hj = h_value(t, principal, j);
        for (size_t i = 0; i < t.PQ.size(); ++i) {
            out.PQ.push_back(poly_mulmod(q, t.PQ[i], f));
            out.PQVals.push_back(Hj + t.PQVals[i]);
        }
    }
    return out;
}

namespace {

struct Emitted {
    std::vector<int> path;
    IntPoly num;
    mpq_class hval;
};

struct Collector {
    std::vector<Emitted> elems;
    std::vector<PrimeInfo> primes;
    std::vector<std::int64_t> index_by_order;
    std::int64_t iterations = 0;
    std::int64_t refinements = 0;
    std::ostringstream trace;
};

std::string slope_str(std::int64_t h, std::int64_t e) {
    return "-" + std::to_string(h) + (e == 1 ? "" : "/" + std::to_string(e));
}

std::string closed_type_string(const TypeRec& t, std::int64_t h, std::int64_t e, const FFPoly& psi) {
    std::string s = t.to_string();
    s.pop_back();
    return s + "; " + slope_str(h, e) + ", " + t.tower.to_string(psi) + ")";
}

std::string factor_list_string(const TypeRec& t, const std::vector<FFFactor>& fs) {
    std::string s;
    for (const auto& fa : fs) {
        if (!s.empty()) s += " * ";
        s += "(" + t.tower.to_string(fa.factor) + ")";
        if (fa.multiplicity > 1) s += "^" + std::to_string(fa.multiplicity);
    }
    return s;
}

void emit(Collector& out, const std::vector<int>& path, const IntPoly& num, const mpq_class& hval) {
    MONTES_CHECK(hval >= 0, "emitted a negative exponent");
    out.elems.push_back({path, num, hval});
}

void add_index(Collector& out, int order, std::int64_t v) {
    if (static_cast<int>(out.index_by_order.size()) <= order) out.index_by_order.resize(order + 1, 0);
    out.index_by_order[order] += v;
}

// One pass of the main loop on t; children are appended to `children` in
// processing order.
void process_type(const TypeRec& t, const IntPoly& f, std::uint64_t seed, bool tracing, Collector& out,
                  std::vector<TypeRec>& children) {
    const int r = t.open_level();
    const TypeLevel& L = t.level(r);
    std::int64_t omega = t.omega_f;
    MONTES_CHECK(omega > 0, "process_type: omega must be positive");
    if (tracing) out.trace << "type " << t.to_string() << "  order " << t.order() << "  H=" << t.H << "  omega=" << omega << "\n";

    PhiExpansion ex = phi_expansion(f, L.phi, static_cast<int>(omega));
    if (ex.coeffs[0].is_zero()) {
        if (L.phi != f) throw InputError("f is reducible: divisible by " + L.phi.to_string());
        PrimeInfo pi{t.to_string(), t.e_product(r - 1), t.f_product(r - 1), t.order(), t.path, true};
        out.primes.push_back(pi);
        for (size_t i = 0; i < t.PQ.size(); ++i) emit(out, t.path, t.PQ[i], t.PQVals[i]);
        if (tracing) out.trace << "  representative equals f: complete\n";
        return;
    }

    NewtonPolygon N = lower_hull(t.points(r, ex.coeffs));
    NewtonPolygon Nm = principal_part(N);
    MONTES_CHECK(Nm.length() == omega && Nm.vertices.front().x == 0, "process_type: principal length differs from omega");
    NewtonPolygon NH = partial_polygon(Nm, t.H);
    std::int64_t contrib = ind_partial(t, NH, t.H);
    add_index(out, r, contrib);
    if (tracing) {
        out.trace << "  N_" << r << "^- = " << Nm.to_string() << "   N^H = " << NH.to_string() << "   ind += " << contrib
                  << "\n";
    }

    const std::int64_t E = t.e_product(r - 1);
    const std::int64_t F = t.f_product(r - 1);
    std::vector<Side> ss = sides(NH);
    for (size_t si = 0; si < ss.size(); ++si) {
        const Side& S = ss[si];
        const std::int64_t a = S.start.x, b = S.end.x;
        FFPoly R = t.residual(r, ex.coeffs, S);
        std::vector<FFFactor> fs = factor_poly(t.tower, R, seed);
        bool separable = std::all_of(fs.begin(), fs.end(), [](const FFFactor& x) { return x.multiplicity == 1; });
        if (tracing) {
            out.trace << "  side " << si << " slope " << slope_str(S.h, S.e) << " [" << a << "," << b << "]  R = "
                      << t.tower.to_string(R) << " = " << factor_list_string(t, fs) << "\n";
        }
        std::vector<int> side_path = t.path;
        side_path.push_back(static_cast<int>(si));

        if (separable) {
            for (std::int64_t j = a + 1; j <= b; ++j) {
                mpq_class Hj = h_value(t, Nm, j);
                const IntPoly& q = ex.quotients.at(j - 1);
                for (size_t i = 0; i < t.PQ.size(); ++i) emit(out, side_path, poly_mulmod(q, t.PQ[i], f), Hj + t.PQVals[i]);
            }
            for (size_t fi = 0; fi < fs.size(); ++fi) {
                std::vector<int> pp = side_path;
                pp.push_back(static_cast<int>(fi));
                out.primes.push_back({closed_type_string(t, S.h, S.e, fs[fi].factor), E * S.e,
                                      F * fs[fi].factor.degree(), t.order() + 1, pp, false});
            }
            if (tracing) out.trace << "    regular side: " << fs.size() << " complete branch(es)\n";
            continue;
        }

        std::int64_t fmax = 0;
        for (const auto& fa : fs) fmax = std::max<std::int64_t>(fmax, fa.factor.degree());
        EnlargedPQ big = enlarge_pq(t, ex.quotients, b, S.e, fmax, Nm, f);

        for (size_t fi = 0; fi < fs.size(); ++fi) {
            const FFPoly& psi = fs[fi].factor;
            const int mult = fs[fi].multiplicity;
            std::vector<int> child_path = side_path;
            child_path.push_back(static_cast<int>(fi));

            if (mult > 1 && psi.degree() == 1 && S.e == 1) {
                TypeRec c = t.refined(S.h, psi);
                c.path = child_path;
                out.refinements++;
                if (tracing) out.trace << "    factor " << fi << ": refine, phi <- " << c.phi().to_string() << ", H <- " << S.h << "\n";
                children.push_back(std::move(c));
                continue;
            }

            TypeRec c = t.extended(S.h, S.e, psi);
            size_t take = static_cast<size_t>(S.e * psi.degree()) * t.PQ.size();
            MONTES_CHECK(take <= big.PQ.size(), "process_type: enlarged list too short");
            std::vector<IntPoly> pq(big.PQ.begin(), big.PQ.begin() + take);
            std::vector<mpq_class> pv(big.PQVals.begin(), big.PQVals.begin() + take);

            if (mult == 1) {
                const IntPoly& phi_next = c.phi();
                IntPoly q;
                mpq_class H;
                bool equals_f = phi_next == f;
                if (equals_f) {
                    q = IntPoly::constant(1);
                    H = 0;
                } else {
                    q = poly_divmod(f, phi_next).quotient;
                    Valuation vf = c.value(r + 1, f);
                    H = mpq_class(vf - c.level(r + 1).vphi, c.e_product(r));
                    H.canonicalize();
                    MONTES_CHECK(H >= 0, "process_type: negative H at a complete branch");
                }
                for (size_t i = 0; i < pq.size(); ++i) emit(out, child_path, poly_mulmod(q, pq[i], f), H + pv[i]);
                out.primes.push_back({closed_type_string(t, S.h, S.e, psi), c.e_product(r), c.f_product(r),
                                      t.order() + 1, child_path, equals_f});
                if (tracing) out.trace << "    factor " << fi << ": complete, H = " << H.get_str() << "\n";
                continue;
            }

            c.H = 0;
            c.PQ = std::move(pq);
            c.PQVals = std::move(pv);
            c.omega_f = mult;
            c.path = child_path;
            c.refinements = 0;
            if (tracing) out.trace << "    factor " << fi << ": deepen, phi_" << r + 1 << " = " << c.phi().to_string() << "\n";
            children.push_back(std::move(c));
        }
    }
}

void process_tree(const TypeRec& root, const IntPoly& f, std::uint64_t seed, std::int64_t cap,
                  std::atomic<std::int64_t>& global_iter, bool tracing, Collector& out) {
    std::vector<TypeRec> stack{root};
    while (!stack.empty()) {
        TypeRec t = std::move(stack.back());
        stack.pop_back();
        out.iterations++;
        if (++global_iter > cap)
            throw InternalError("main loop exceeded its iteration cap (" + std::to_string(cap) + ") at type " + t.to_string());
        std::vector<TypeRec> children;
        process_type(t, f, seed, tracing, out, children);
        for (auto it = children.rbegin(); it != children.rend(); ++it) stack.push_back(std::move(*it));
    }
}

}  // namespace

MontesResult montes_run(const IntPoly& f, const mpz_class& p, const MontesOptions& opts) {
    if (!f.is_monic() || f.degree() < 1) throw InputError("f must be monic of degree >= 1");
    if (!is_probable_prime(p)) throw InputError("p must be prime");
    MontesResult res;
    res.f = f;
    res.p = p;
    res.vdisc_f = disc_valuation(f, p);
    if (is_inf(res.vdisc_f)) throw InputError("f is not squarefree (zero discriminant)");
    const std::int64_t n = f.degree();
    std::int64_t cap = opts.max_iter > 0 ? opts.max_iter : 10 * n * (1 + res.vdisc_f);

    std::vector<TypeRec> roots = initialize(f, p, opts.seed);
    std::vector<Collector> cols(roots.size());
    std::atomic<std::int64_t> global_iter{0};
    bool tracing = opts.trace != nullptr;

    int jobs = std::max(1, std::min<int>(opts.jobs, static_cast<int>(roots.size())));
    if (jobs == 1) {
        for (size_t i = 0; i < roots.size(); ++i) process_tree(roots[i], f, opts.seed, cap, global_iter, tracing, cols[i]);
    } else {
        std::atomic<size_t> next{0};
        std::mutex err_mu;
        std::exception_ptr err;
        std::vector<std::thread> pool;
        for (int w = 0; w < jobs; ++w) {
            pool.emplace_back([&] {
                while (true) {
                    size_t i = next++;
                    if (i >= roots.size()) return;
                    try {
                        process_tree(roots[i], f, opts.seed, cap, global_iter, tracing, cols[i]);
                    } catch (...) {
                        std::lock_guard<std::mutex> lk(err_mu);
                        if (!err) err = std::current_exception();
                        return;
                    }
                }
            });
        }
        for (auto& th : pool) th.join();
        if (err) std::rethrow_exception(err);
    }

    std::vector<Emitted> elems;
    for (auto& c : cols) {
        for (auto& e : c.elems) elems.push_back(std::move(e));
        for (auto& pr : c.primes) res.primes.push_back(std::move(pr));
        for (size_t r = 0; r < c.index_by_order.size(); ++r) {
            if (res.index_by_order.size() <= r) res.index_by_order.resize(r + 1, 0);
            res.index_by_order[r] += c.index_by_order[r];
        }
        res.iterations += c.iterations;
        res.refinements += c.refinements;
        if (tracing) *opts.trace << c.trace.str();
    }
    std::stable_sort(elems.begin(), elems.end(), [](const Emitted& a, const Emitted& b) { return a.path < b.path; });
    std::stable_sort(res.primes.begin(), res.primes.end(),
                     [](const PrimeInfo& a, const PrimeInfo& b) { return a.path < b.path; });
    for (auto& e : elems) {
        mpz_class fl;
        mpz_fdiv_q(fl.get_mpz_t(), e.hval.get_num_mpz_t(), e.hval.get_den_mpz_t());
        res.numerators.push_back(std::move(e.num));
        res.denominators.push_back(fl.get_si());
        res.hvals.push_back(e.hval);
    }
    for (auto v : res.index_by_order) res.total_index += v;
    if (res.index_by_order.empty()) res.index_by_order.resize(1, 0);

    std::int64_t sum_ef = 0;
    for (const auto& pr : res.primes) sum_ef += pr.e * pr.f;
    MONTES_CHECK(sum_ef == n, "sum of e f over the primes differs from deg f");
    MONTES_CHECK(static_cast<std::int64_t>(res.numerators.size()) == n, "basis candidate does not have n elements");
    MONTES_CHECK(2 * res.total_index <= res.vdisc_f, "2 ind(f) exceeds v(disc f)");
    return res;
}

std::optional<std::int64_t> det_valuation(std::vector<std::vector<mpz_class>> M, const mpz_class& p,
                                          std::int64_t precision) {
    const size_t n = M.size();
    mpz_class mod = ipow(p, static_cast<unsigned long>(precision));
    for (auto& row : M)
        for (auto& v : row) mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), mod.get_mpz_t());
    std::int64_t total = 0;
    for (size_t k = 0; k < n; ++k) {
        size_t bi = n, bj = n;
        Valuation best = kInfinity;
        for (size_t i = k; i < n && best > 0; ++i)
            for (size_t j = k; j < n; ++j) {
                if (M[i][j] == 0) continue;
                Valuation v = val_int(M[i][j], p);
                if (v < best) {
                    best = v, bi = i, bj = j;
                    if (v == 0) break;
                }
            }
        if (is_inf(best)) return std::nullopt;
        total += best;
        if (total >= precision) return std::nullopt;
        std::swap(M[k], M[bi]);
        for (auto& row : M) std::swap(row[k], row[bj]);
        mpz_class pv = ipow(p, static_cast<unsigned long>(best));
        mpz_class u, uinv;
        mpz_divexact(u.get_mpz_t(), M[k][k].get_mpz_t(), pv.get_mpz_t());
        mpz_invert(uinv.get_mpz_t(), u.get_mpz_t(), mod.get_mpz_t());
        for (size_t i = k + 1; i < n; ++i) {
            if (M[i][k] == 0) continue;
            mpz_class c;
            mpz_divexact(c.get_mpz_t(), M[i][k].get_mpz_t(), pv.get_mpz_t());
            c = c * uinv;
            mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), mod.get_mpz_t());
            for (size_t j = k; j < n; ++j) {
                mpz_submul(M[i][j].get_mpz_t(), c.get_mpz_t(), M[k][j].get_mpz_t());
                mpz_fdiv_r(M[i][j].get_mpz_t(), M[i][j].get_mpz_t(), mod.get_mpz_t());
            }
        }
    }
    return total;
}

NumeratorCriterion check_numerator_criterion(const MontesResult& res, const IntPoly& f, const mpz_class& p) {
    const size_t n = static_cast<size_t>(f.degree());
    NumeratorCriterion out;
    out.sum_nu = res.sum_nu();
    if (res.numerators.size() != n) return out;
    std::vector<std::vector<mpz_class>> M(n, std::vector<mpz_class>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) M[i][j] = res.numerators[i].coeff(static_cast<int>(j));
    out.ind_num = det_valuation(std::move(M), p, out.sum_nu + 1);
    out.holds = out.ind_num && out.sum_nu == *out.ind_num + res.total_index;
    return out;
}

}  // namespace montes
