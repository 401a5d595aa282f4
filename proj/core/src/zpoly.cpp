#include "montes/zpoly.hpp"

#include <algorithm>
#include <sstream>

#include "montes/error.hpp"

namespace montes {

IntPoly::IntPoly(std::initializer_list<long> coeffs) {
    c_.reserve(coeffs.size());
    for (long v : coeffs) c_.emplace_back(v);
    trim();
}

IntPoly::IntPoly(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) { trim(); }

IntPoly IntPoly::constant(const mpz_class& c) { return IntPoly(std::vector<mpz_class>{c}); }

IntPoly IntPoly::monomial(const mpz_class& c, int deg) {
    if (c == 0) return {};
    std::vector<mpz_class> v(deg + 1);
    v[deg] = c;
    return IntPoly(std::move(v));
}

void IntPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

mpz_class IntPoly::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return 0;
    return c_[i];
}

void IntPoly::set_coeff(int i, const mpz_class& v) {
    if (i >= static_cast<int>(c_.size())) {
        if (v == 0) return;
        c_.resize(i + 1);
    }
    c_[i] = v;
    trim();
}

IntPoly& IntPoly::operator+=(const IntPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}

IntPoly& IntPoly::operator*=(const mpz_class& s) {
    if (s == 0) {
        c_.clear();
        return *this;
    }
    for (auto& v : c_) v *= s;
    return *this;
}

IntPoly operator-(IntPoly a) {
    for (auto& v : a.c_) v = -v;
    return a;
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<mpz_class> r(a.c_.size() + b.c_.size() - 1);
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (size_t j = 0; j < b.c_.size(); ++j)
            mpz_addmul(r[i + j].get_mpz_t(), a.c_[i].get_mpz_t(), b.c_[j].get_mpz_t());
    }
    return IntPoly(std::move(r));
}

IntPoly IntPoly::divexact(const mpz_class& d) const {
    IntPoly r = *this;
    for (auto& v : r.c_) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), d.get_mpz_t());
    return r;
}

IntPoly IntPoly::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<mpz_class> r(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * static_cast<unsigned long>(i);
    return IntPoly(std::move(r));
}

IntPoly IntPoly::pow(unsigned k) const {
    IntPoly result = constant(1), base = *this;
    while (k) {
        if (k & 1) result = result * base;
        k >>= 1;
        if (k) base = base * base;
    }
    return result;
}

mpz_class IntPoly::eval(const mpz_class& x) const {
    mpz_class r = 0;
    for (size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
    return r;
}

IntPoly IntPoly::compose(const IntPoly& g) const {
    IntPoly r;
    for (size_t i = c_.size(); i-- > 0;) r = r * g + constant(c_[i]);
    return r;
}

IntPoly IntPoly::mod(const mpz_class& m) const {
    IntPoly r = *this;
    for (auto& v : r.c_) mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
    r.trim();
    return r;
}

std::string IntPoly::to_string(const std::string& var) const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = c_.size(); i-- > 0;) {
        const mpz_class& v = c_[i];
        if (v == 0) continue;
        mpz_class a = abs(v);
        if (first) {
            if (v < 0) os << "-";
        } else {
            os << (v < 0 ? " - " : " + ");
        }
        first = false;
        if (i == 0) {
            os << a;
            continue;
        }
        if (a != 1) os << a << "*";
        os << var;
        if (i > 1) os << "^" << i;
    }
    return os.str();
}

DivMod poly_divmod(const IntPoly& a, const IntPoly& b) {
    if (!b.is_monic()) throw ContractViolation("poly_divmod: divisor must be monic");
    int db = b.degree();
    int da = a.degree();
    if (da < db) return {IntPoly{}, a};
    std::vector<mpz_class> r = a.coeffs();
    std::vector<mpz_class> q(da - db + 1);
    const auto& bc = b.coeffs();
    for (int i = da; i >= db; --i) {
        if (r[i] == 0) continue;
        mpz_class c = r[i];
        q[i - db] = c;
        for (int j = 0; j < db; ++j)
            mpz_submul(r[i - db + j].get_mpz_t(), c.get_mpz_t(), bc[j].get_mpz_t());
        r[i] = 0;
    }
    r.resize(db);
    return {IntPoly(std::move(q)), IntPoly(std::move(r))};
}

IntPoly poly_rem(const IntPoly& a, const IntPoly& b) { return poly_divmod(a, b).remainder; }

PhiExpansion phi_expansion(const IntPoly& f, const IntPoly& phi, int max_index) {
    if (phi.degree() < 1) throw ContractViolation("phi_expansion: deg phi must be >= 1");
    if (!phi.is_monic()) throw ContractViolation("phi_expansion: phi must be monic");
    PhiExpansion out;
    IntPoly cur = f;
    while (true) {
        if (max_index >= 0 && static_cast<int>(out.coeffs.size()) == max_index) {
            out.coeffs.push_back(poly_rem(cur, phi));
            break;
        }
        if (cur.degree() < phi.degree()) {
            out.coeffs.push_back(cur);
            break;
        }
        DivMod qr = poly_divmod(cur, phi);
        out.coeffs.push_back(std::move(qr.remainder));
        out.quotients.push_back(qr.quotient);
        cur = std::move(qr.quotient);
    }
    return out;
}

std::vector<IntPoly> phi_coeffs(const IntPoly& f, const IntPoly& phi) {
    if (phi.degree() < 1) throw ContractViolation("phi_coeffs: deg phi must be >= 1");
    std::vector<IntPoly> out;
    IntPoly cur = f;
    while (cur.degree() >= phi.degree()) {
        DivMod qr = poly_divmod(cur, phi);
        out.push_back(std::move(qr.remainder));
        cur = std::move(qr.quotient);
    }
    out.push_back(std::move(cur));
    return out;
}

Valuation val_int(const mpz_class& n, const mpz_class& p) {
    if (n == 0) return kInfinity;
    if (p == 2) return static_cast<Valuation>(mpz_scan1(n.get_mpz_t(), 0));
    if (!mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) return 0;
    mpz_class tmp;
    return static_cast<Valuation>(mpz_remove(tmp.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

Valuation val_poly(const IntPoly& P, const mpz_class& p) {
    Valuation best = kInfinity;
    for (const auto& c : P.coeffs()) {
        if (c == 0) continue;
        best = std::min(best, val_int(c, p));
        if (best == 0) break;
    }
    return best;
}

IntPoly poly_mulmod(const IntPoly& a, const IntPoly& b, const IntPoly& f) {
    return poly_rem(a * b, f);
}

mpz_class ipow(const mpz_class& b, unsigned long e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

namespace {

mpz_class content(const IntPoly& a) {
    mpz_class g = 0;
    for (const auto& c : a.coeffs()) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

// lc(b)^(deg a - deg b + 1) * a mod b.
IntPoly pseudo_rem(const IntPoly& a, const IntPoly& b) {
    int db = b.degree();
    std::vector<mpz_class> r = a.coeffs();
    const auto& bc = b.coeffs();
    const mpz_class& lb = b.lead();
    int e = a.degree() - db + 1;
    for (int i = a.degree(); i >= db; --i) {
        mpz_class c = r[i];
        for (int k = 0; k < i; ++k) r[k] *= lb;
        if (c != 0)
            for (int j = 0; j < db; ++j)
                mpz_submul(r[i - db + j].get_mpz_t(), c.get_mpz_t(), bc[j].get_mpz_t());
        r[i] = 0;
        --e;
    }
    r.resize(db);
    IntPoly out(std::move(r));
    if (e > 0) out *= ipow(lb, e);
    return out;
}

}  // namespace

mpz_class resultant(const IntPoly& a0, const IntPoly& b0) {
    if (a0.is_zero() || b0.is_zero()) return 0;
    IntPoly A = a0, B = b0;
    mpz_class ca = content(A), cb = content(B);
    A = A.divexact(ca);
    B = B.divexact(cb);
    mpz_class g = 1, h = 1, s = 1;
    mpz_class t = ipow(ca, B.degree()) * ipow(cb, A.degree());
    if (A.degree() < B.degree()) {
        std::swap(A, B);
        if ((A.degree() & 1) && (B.degree() & 1)) s = -s;
    }
    while (B.degree() > 0) {
        int delta = A.degree() - B.degree();
        if ((A.degree() & 1) && (B.degree() & 1)) s = -s;
        IntPoly R = pseudo_rem(A, B);
        if (R.is_zero()) return 0;
        A = std::move(B);
        B = R.divexact(g * ipow(h, delta));
        g = A.lead();
        if (delta == 0) {
            // h stays h^1 g^0
        } else {
            mpz_class num = ipow(g, delta);
            mpz_class den = ipow(h, delta - 1);
            mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        }
    }
    // B is a nonzero constant here.
    int da = A.degree();
    mpz_class lb = B.lead();
    if (da == 0) {
        h = 1;
    } else {
        mpz_class num = ipow(lb, da);
        mpz_class den = ipow(h, da - 1);
        mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    }
    return s * t * h;
}

mpz_class discriminant(const IntPoly& f) {
    int n = f.degree();
    mpz_class r = resultant(f, f.derivative());
    mpz_divexact(r.get_mpz_t(), r.get_mpz_t(), f.lead().get_mpz_t());
    if ((static_cast<long>(n) * (n - 1) / 2) & 1) r = -r;
    return r;
}

Valuation disc_valuation(const IntPoly& f, const mpz_class& p) {
    if (f.degree() < 1) return 0;
    if (f.degree() == 1) return 0;
    return val_int(resultant(f, f.derivative()), p);
}

}  // namespace montes
