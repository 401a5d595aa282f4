#include "montes/ffield.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "montes/error.hpp"

namespace montes {

FieldTower::FieldTower(const mpz_class& p) : p_(p) {
    if (p < 2) throw InputError("field characteristic must be a prime >= 2");
}

std::size_t FieldTower::abs_degree(int level) const {
    if (level == 0) return 1;
    return levels_.at(level - 1)->abs_degree;
}

int FieldTower::rel_degree(int level) const { return levels_.at(level - 1)->psi.degree(); }

const FFPoly& FieldTower::modulus(int level) const { return levels_.at(level - 1)->psi; }

mpz_class FieldTower::cardinality(int level) const {
    mpz_class q;
    mpz_pow_ui(q.get_mpz_t(), p_.get_mpz_t(), abs_degree(level));
    return q;
}

FieldTower FieldTower::extend(const FFPoly& psi) const {
    if (psi.level != top()) throw ContractViolation("tower_extend: psi must live over the top level");
    if (psi.degree() < 1 || !is_one(psi.c.back())) throw InputError("tower_extend: psi must be monic of degree >= 1");
    if (!is_irreducible(*this, psi)) throw InputError("tower_extend: psi is reducible");
    FieldTower t = *this;
    t.levels_.push_back(std::make_shared<Level>(Level{psi, abs_degree(top()) * psi.degree()}));
    return t;
}

FFElem FieldTower::zero(int level) const { return FFElem{level, std::vector<mpz_class>(abs_degree(level))}; }

FFElem FieldTower::one(int level) const {
    FFElem r = zero(level);
    r.c[0] = 1;
    return r;
}

FFElem FieldTower::from_int(int level, const mpz_class& v) const {
    FFElem r = zero(level);
    mpz_fdiv_r(r.c[0].get_mpz_t(), v.get_mpz_t(), p_.get_mpz_t());
    return r;
}

FFElem FieldTower::gen(int level) const {
    if (level < 1) throw ContractViolation("gen: level must be >= 1");
    FFElem r = zero(level);
    if (rel_degree(level) == 1) {
        // y is the root of the linear modulus y + b, i.e. -b.
        FFElem b = modulus(level).c[0];
        return embed(neg(b), level);
    }
    r.c[abs_degree(level - 1)] = 1;
    return r;
}

FFElem FieldTower::random(int level, gmp_randclass& rng) const {
    FFElem r = zero(level);
    for (auto& v : r.c) v = rng.get_z_range(p_);
    return r;
}

bool FieldTower::is_zero(const FFElem& a) const {
    for (const auto& v : a.c)
        if (v != 0) return false;
    return true;
}

bool FieldTower::is_one(const FFElem& a) const {
    if (a.c.empty() || a.c[0] != 1) return false;
    for (size_t i = 1; i < a.c.size(); ++i)
        if (a.c[i] != 0) return false;
    return true;
}

FFElem FieldTower::add(const FFElem& a, const FFElem& b) const {
    FFElem r = a;
    for (size_t i = 0; i < r.c.size(); ++i) {
        r.c[i] += b.c[i];
        if (r.c[i] >= p_) r.c[i] -= p_;
    }
    return r;
}

FFElem FieldTower::sub(const FFElem& a, const FFElem& b) const {
    FFElem r = a;
    for (size_t i = 0; i < r.c.size(); ++i) {
        r.c[i] -= b.c[i];
        if (r.c[i] < 0) r.c[i] += p_;
    }
    return r;
}

FFElem FieldTower::neg(const FFElem& a) const {
    FFElem r = a;
    for (auto& v : r.c)
        if (v != 0) v = p_ - v;
    return r;
}

FFElem FieldTower::mul_int(const FFElem& a, const mpz_class& k) const {
    FFElem r = a;
    for (auto& v : r.c) {
        v *= k;
        mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), p_.get_mpz_t());
    }
    return r;
}

std::vector<FFElem> FieldTower::chunks(const FFElem& a) const {
    int L = a.level;
    size_t d = abs_degree(L - 1);
    int f = rel_degree(L);
    std::vector<FFElem> out(f);
    for (int j = 0; j < f; ++j) {
        out[j].level = L - 1;
        out[j].c.assign(a.c.begin() + j * d, a.c.begin() + (j + 1) * d);
    }
    return out;
}

FFElem FieldTower::from_chunks(int level, const std::vector<FFElem>& ch) const {
    FFElem r = zero(level);
    size_t d = abs_degree(level - 1);
    MONTES_CHECK(ch.size() <= static_cast<size_t>(rel_degree(level)), "from_chunks: too many chunks");
    for (size_t j = 0; j < ch.size(); ++j)
        std::copy(ch[j].c.begin(), ch[j].c.end(), r.c.begin() + j * d);
    return r;
}

FFElem FieldTower::mul(const FFElem& a, const FFElem& b) const {
    int L = a.level;
    if (L == 0) {
        FFElem r{0, {a.c[0] * b.c[0]}};
        mpz_fdiv_r(r.c[0].get_mpz_t(), r.c[0].get_mpz_t(), p_.get_mpz_t());
        return r;
    }
    FFPoly pa = ffp_from(*this, L - 1, chunks(a));
    FFPoly pb = ffp_from(*this, L - 1, chunks(b));
    FFPoly pr = ffp_rem(*this, ffp_mul(*this, pa, pb), modulus(L));
    return from_chunks(L, pr.c);
}

FFElem FieldTower::inv(const FFElem& a) const {
    if (is_zero(a)) throw std::domain_error("inverse of zero in a finite field");
    int L = a.level;
    if (L == 0) {
        FFElem r{0, {0}};
        mpz_invert(r.c[0].get_mpz_t(), a.c[0].get_mpz_t(), p_.get_mpz_t());
        return r;
    }
    // Extended Euclid in F_{L-1}[y] against the modulus.
    FFPoly r0 = modulus(L), r1 = ffp_from(*this, L - 1, chunks(a));
    FFPoly s0{L - 1, {}}, s1 = ffp_from(*this, L - 1, {one(L - 1)});
    while (r1.degree() > 0) {
        auto [q, r] = ffp_divmod(*this, r0, r1);
        FFPoly s = ffp_sub(*this, s0, ffp_mul(*this, q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
    }
    MONTES_CHECK(r1.degree() == 0, "inv: modulus is not irreducible");
    FFElem c = inv(r1.c[0]);
    return from_chunks(L, ffp_scale(*this, s1, c).c);
}

FFElem FieldTower::pow(const FFElem& a, const mpz_class& e) const {
    FFElem result = one(a.level), base = a;
    size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    if (e == 0) return result;
    for (size_t i = bits; i-- > 0;) {
        result = mul(result, result);
        if (mpz_tstbit(e.get_mpz_t(), i)) result = mul(result, base);
    }
    return result;
}

FFElem FieldTower::pow_si(const FFElem& a, long e) const {
    if (e >= 0) return pow(a, mpz_class(e));
    return pow(inv(a), mpz_class(-e));
}

FFElem FieldTower::embed(const FFElem& a, int to) const {
    if (a.level == to) return a;
    if (a.level > to) throw ContractViolation("embed: target level below source");
    FFElem r = zero(to);
    std::copy(a.c.begin(), a.c.end(), r.c.begin());
    return r;
}

std::string FieldTower::to_string(const FFElem& a) const {
    if (a.level == 0) return a.c[0].get_str();
    auto ch = chunks(a);
    std::ostringstream os;
    bool first = true;
    std::string var = "z" + std::to_string(a.level);
    for (size_t j = ch.size(); j-- > 0;) {
        if (is_zero(ch[j])) continue;
        if (!first) os << " + ";
        first = false;
        std::string cs = to_string(ch[j]);
        bool simple = ch[j].level == 0 || cs.find(' ') == std::string::npos;
        if (j == 0) {
            os << (simple ? cs : "(" + cs + ")");
            continue;
        }
        if (!is_one(ch[j])) os << (simple ? cs : "(" + cs + ")") << "*";
        os << var;
        if (j > 1) os << "^" << j;
    }
    return first ? "0" : os.str();
}

std::string FieldTower::to_string(const FFPoly& P) const {
    if (P.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t j = P.c.size(); j-- > 0;) {
        if (is_zero(P.c[j])) continue;
        if (!first) os << " + ";
        first = false;
        std::string cs = to_string(P.c[j]);
        bool simple = cs.find(' ') == std::string::npos;
        if (j == 0) {
            os << (simple ? cs : "(" + cs + ")");
            continue;
        }
        if (!is_one(P.c[j])) os << (simple ? cs : "(" + cs + ")") << "*";
        os << "y";
        if (j > 1) os << "^" << j;
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Polynomials over a level.

namespace {

void trim(const FieldTower& T, FFPoly& a) {
    while (!a.c.empty() && T.is_zero(a.c.back())) a.c.pop_back();
}

}  // namespace

FFPoly ffp_from(const FieldTower& T, int level, std::vector<FFElem> coeffs) {
    FFPoly r{level, std::move(coeffs)};
    trim(T, r);
    return r;
}

FFPoly ffp_monomial(const FieldTower& T, int level, const FFElem& c, int deg) {
    FFPoly r{level, std::vector<FFElem>(deg + 1, T.zero(level))};
    r.c[deg] = c;
    trim(T, r);
    return r;
}

FFPoly ffp_add(const FieldTower& T, const FFPoly& a, const FFPoly& b) {
    FFPoly r = a;
    if (b.c.size() > r.c.size()) r.c.resize(b.c.size(), T.zero(a.level));
    for (size_t i = 0; i < b.c.size(); ++i) r.c[i] = T.add(r.c[i], b.c[i]);
    trim(T, r);
    return r;
}

FFPoly ffp_sub(const FieldTower& T, const FFPoly& a, const FFPoly& b) {
    FFPoly r = a;
    if (b.c.size() > r.c.size()) r.c.resize(b.c.size(), T.zero(a.level));
    for (size_t i = 0; i < b.c.size(); ++i) r.c[i] = T.sub(r.c[i], b.c[i]);
    trim(T, r);
    return r;
}

FFPoly ffp_mul(const FieldTower& T, const FFPoly& a, const FFPoly& b) {
    if (a.is_zero() || b.is_zero()) return FFPoly{a.level, {}};
    int L = a.level;
    if (L == 0) {
        // Plain integer convolution with a single final reduction.
        std::vector<mpz_class> acc(a.c.size() + b.c.size() - 1);
        for (size_t i = 0; i < a.c.size(); ++i)
            for (size_t j = 0; j < b.c.size(); ++j)
                mpz_addmul(acc[i + j].get_mpz_t(), a.c[i].c[0].get_mpz_t(), b.c[j].c[0].get_mpz_t());
        FFPoly r{0, {}};
        r.c.reserve(acc.size());
        for (auto& v : acc) {
            mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), T.p().get_mpz_t());
            r.c.push_back(FFElem{0, {v}});
        }
        trim(T, r);
        return r;
    }
    FFPoly r{L, std::vector<FFElem>(a.c.size() + b.c.size() - 1, T.zero(L))};
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (T.is_zero(a.c[i])) continue;
        for (size_t j = 0; j < b.c.size(); ++j) {
            if (T.is_zero(b.c[j])) continue;
            r.c[i + j] = T.add(r.c[i + j], T.mul(a.c[i], b.c[j]));
        }
    }
    trim(T, r);
    return r;
}

FFPoly ffp_scale(const FieldTower& T, const FFPoly& a, const FFElem& s) {
    FFPoly r = a;
    for (auto& v : r.c) v = T.mul(v, s);
    trim(T, r);
    return r;
}

std::pair<FFPoly, FFPoly> ffp_divmod(const FieldTower& T, const FFPoly& a, const FFPoly& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    int L = a.level;
    int db = b.degree();
    if (a.degree() < db) return {FFPoly{L, {}}, a};
    bool monic = T.is_one(b.c.back());
    FFElem linv = monic ? T.one(L) : T.inv(b.c.back());
    std::vector<FFElem> r = a.c;
    std::vector<FFElem> q(a.degree() - db + 1, T.zero(L));
    for (int i = a.degree(); i >= db; --i) {
        if (T.is_zero(r[i])) continue;
        FFElem c = monic ? r[i] : T.mul(r[i], linv);
        q[i - db] = c;
        for (int j = 0; j < db; ++j) {
            if (T.is_zero(b.c[j])) continue;
            r[i - db + j] = T.sub(r[i - db + j], T.mul(c, b.c[j]));
        }
        r[i] = T.zero(L);
    }
    r.resize(db, T.zero(L));
    return {ffp_from(T, L, std::move(q)), ffp_from(T, L, std::move(r))};
}

FFPoly ffp_rem(const FieldTower& T, const FFPoly& a, const FFPoly& b) {
    if (a.degree() < b.degree()) return a;
    return ffp_divmod(T, a, b).second;
}

FFPoly ffp_monic(const FieldTower& T, const FFPoly& a) {
    if (a.is_zero() || T.is_one(a.c.back())) return a;
    return ffp_scale(T, a, T.inv(a.c.back()));
}

FFPoly ffp_gcd(const FieldTower& T, const FFPoly& a, const FFPoly& b) {
    FFPoly x = a, y = b;
    while (!y.is_zero()) {
        FFPoly r = ffp_rem(T, x, y);
        x = std::move(y);
        y = std::move(r);
    }
    return ffp_monic(T, x);
}

FFPoly ffp_derivative(const FieldTower& T, const FFPoly& a) {
    if (a.c.size() <= 1) return FFPoly{a.level, {}};
    std::vector<FFElem> r;
    r.reserve(a.c.size() - 1);
    for (size_t i = 1; i < a.c.size(); ++i) r.push_back(T.mul_int(a.c[i], mpz_class(static_cast<unsigned long>(i))));
    return ffp_from(T, a.level, std::move(r));
}

FFPoly ffp_powmod(const FieldTower& T, const FFPoly& a, const mpz_class& e, const FFPoly& m) {
    FFPoly result = ffp_from(T, a.level, {T.one(a.level)});
    result = ffp_rem(T, result, m);
    if (e == 0) return result;
    FFPoly base = ffp_rem(T, a, m);
    size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (size_t i = bits; i-- > 0;) {
        result = ffp_rem(T, ffp_mul(T, result, result), m);
        if (mpz_tstbit(e.get_mpz_t(), i)) result = ffp_rem(T, ffp_mul(T, result, base), m);
    }
    return result;
}

FFPoly ffp_pow(const FieldTower& T, const FFPoly& a, unsigned e) {
    FFPoly result = ffp_from(T, a.level, {T.one(a.level)}), base = a;
    while (e) {
        if (e & 1) result = ffp_mul(T, result, base);
        e >>= 1;
        if (e) base = ffp_mul(T, base, base);
    }
    return result;
}

FFElem ffp_eval(const FieldTower& T, const FFPoly& a, const FFElem& x) {
    FFElem r = T.zero(x.level);
    for (size_t i = a.c.size(); i-- > 0;) r = T.add(T.mul(r, x), T.embed(a.c[i], x.level));
    return r;
}

bool ffp_less(const FFPoly& a, const FFPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (size_t i = 0; i < a.c.size(); ++i) {
        const auto& x = a.c[i].c;
        const auto& y = b.c[i].c;
        for (size_t k = 0; k < x.size() && k < y.size(); ++k) {
            int cmp = ::cmp(x[k], y[k]);
            if (cmp != 0) return cmp < 0;
        }
        if (x.size() != y.size()) return x.size() < y.size();
    }
    return false;
}

// ---------------------------------------------------------------------------
// Factorization.

namespace {

FFPoly var_y(const FieldTower& T, int L) { return ffp_monomial(T, L, T.one(L), 1); }

bool is_unit(const FFPoly& a) { return a.degree() == 0; }

// p-th root of a polynomial whose derivative vanishes.
FFPoly pth_root(const FieldTower& T, const FFPoly& a) {
    int L = a.level;
    mpz_class q = T.cardinality(L);
    mpz_class e = q / T.p();  // a^(q/p) is the p-th root of a in F_q
    unsigned long p = T.p().get_ui();
    std::vector<FFElem> r;
    for (size_t i = 0; i < a.c.size(); i += p) r.push_back(T.pow(a.c[i], e));
    return ffp_from(T, L, std::move(r));
}

// Squarefree decomposition of a monic polynomial.
void squarefree(const FieldTower& T, const FFPoly& f, int mult, std::vector<FFFactor>& out) {
    if (f.degree() < 1) return;
    FFPoly c = ffp_gcd(T, f, ffp_derivative(T, f));
    FFPoly w = ffp_divmod(T, f, c).first;
    int i = 1;
    while (!is_unit(w)) {
        FFPoly y = ffp_gcd(T, w, c);
        FFPoly fac = ffp_divmod(T, w, y).first;
        if (fac.degree() > 0) out.push_back({ffp_monic(T, fac), i * mult});
        w = std::move(y);
        c = ffp_divmod(T, c, w).first;
        ++i;
    }
    if (c.degree() > 0) {
        MONTES_CHECK(T.p().fits_ulong_p(), "squarefree: characteristic too large for p-th root");
        squarefree(T, ffp_monic(T, pth_root(T, c)), mult * static_cast<int>(T.p().get_ui()), out);
    }
}

// Distinct-degree factorization of a squarefree monic polynomial.
std::vector<std::pair<FFPoly, int>> distinct_degree(const FieldTower& T, FFPoly f) {
    int L = f.level;
    mpz_class q = T.cardinality(L);
    std::vector<std::pair<FFPoly, int>> out;
    FFPoly y = var_y(T, L);
    FFPoly h = ffp_rem(T, y, f);
    int i = 1;
    while (f.degree() >= 2 * i) {
        h = ffp_powmod(T, h, q, f);
        FFPoly g = ffp_gcd(T, f, ffp_sub(T, h, y));
        if (g.degree() > 0) {
            out.emplace_back(g, i);
            f = ffp_divmod(T, f, g).first;
            h = ffp_rem(T, h, f);
        }
        ++i;
    }
    if (f.degree() > 0) out.emplace_back(f, f.degree());
    return out;
}

FFPoly random_poly(const FieldTower& T, int L, int deg_bound, gmp_randclass& rng) {
    std::vector<FFElem> c;
    for (int i = 0; i < deg_bound; ++i) c.push_back(T.random(L, rng));
    return ffp_from(T, L, std::move(c));
}

void equal_degree(const FieldTower& T, const FFPoly& f, int d, gmp_randclass& rng, std::vector<FFPoly>& out) {
    if (f.degree() == d) {
        out.push_back(f);
        return;
    }
    int L = f.level;
    mpz_class q = T.cardinality(L);
    mpz_class qd;
    mpz_pow_ui(qd.get_mpz_t(), q.get_mpz_t(), d);
    bool even = T.p() == 2;
    unsigned long trace_len = T.abs_degree(L) * d;
    while (true) {
        FFPoly a = random_poly(T, L, f.degree(), rng);
        if (a.degree() < 1) continue;
        FFPoly b;
        if (even) {
            b = a;
            FFPoly t = a;
            for (unsigned long j = 1; j < trace_len; ++j) {
                t = ffp_rem(T, ffp_mul(T, t, t), f);
                b = ffp_add(T, b, t);
            }
        } else {
            b = ffp_powmod(T, a, (qd - 1) / 2, f);
            b = ffp_sub(T, b, ffp_from(T, L, {T.one(L)}));
        }
        FFPoly g = ffp_gcd(T, f, b);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            equal_degree(T, g, d, rng, out);
            equal_degree(T, ffp_divmod(T, f, g).first, d, rng, out);
            return;
        }
    }
}

}  // namespace

std::vector<FFFactor> factor_poly(const FieldTower& T, const FFPoly& R, std::uint64_t seed) {
    if (R.is_zero()) throw ContractViolation("factor_poly: zero polynomial");
    std::vector<FFFactor> out;
    if (R.degree() == 0) return out;
    gmp_randclass rng(gmp_randinit_mt);
    rng.seed(mpz_class(std::to_string(seed)));
    std::vector<FFFactor> sqf;
    squarefree(T, ffp_monic(T, R), 1, sqf);
    for (const auto& [part, mult] : sqf) {
        for (auto& [block, d] : distinct_degree(T, part)) {
            std::vector<FFPoly> irr;
            equal_degree(T, block, d, rng, irr);
            for (auto& g : irr) out.push_back({ffp_monic(T, g), mult});
        }
    }
    std::sort(out.begin(), out.end(), [](const FFFactor& a, const FFFactor& b) { return ffp_less(a.factor, b.factor); });
    // The same irreducible may surface from two squarefree layers.
    std::vector<FFFactor> merged;
    for (auto& fa : out) {
        if (!merged.empty() && merged.back().factor == fa.factor)
            merged.back().multiplicity += fa.multiplicity;
        else
            merged.push_back(std::move(fa));
    }
    return merged;
}

bool is_irreducible(const FieldTower& T, const FFPoly& P) {
    if (P.degree() < 1) return false;
    if (P.degree() == 1) return true;
    FFPoly m = ffp_monic(T, P);
    if (ffp_gcd(T, m, ffp_derivative(T, m)).degree() > 0) return false;
    auto dd = distinct_degree(T, m);
    return dd.size() == 1 && dd[0].second == m.degree();
}

int ord_factor(const FieldTower& T, const FFPoly& R, const FFPoly& psi) {
    if (psi.degree() < 1) throw ContractViolation("ord_factor: psi must have degree >= 1");
    if (R.is_zero()) throw ContractViolation("ord_factor: zero polynomial");
    int k = 0;
    FFPoly cur = R;
    while (cur.degree() >= psi.degree()) {
        auto [q, r] = ffp_divmod(T, cur, psi);
        if (!r.is_zero()) break;
        cur = std::move(q);
        ++k;
    }
    return k;
}

}  // namespace montes
