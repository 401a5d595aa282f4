#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace montes {

// p-adic valuation; kInfinity stands for the valuation of zero.
using Valuation = std::int64_t;
inline constexpr Valuation kInfinity = std::numeric_limits<Valuation>::max();

inline bool is_inf(Valuation v) { return v == kInfinity; }

// Dense univariate polynomial over Z. c[i] is the coefficient of x^i;
// trailing zeros are always trimmed, so the zero polynomial has no
// coefficients and degree kZeroDegree.
class IntPoly {
public:
    static constexpr int kZeroDegree = -1;

    IntPoly() = default;
    IntPoly(std::initializer_list<long> coeffs);
    explicit IntPoly(std::vector<mpz_class> coeffs);
    static IntPoly constant(const mpz_class& c);
    static IntPoly monomial(const mpz_class& c, int deg);
    static IntPoly x() { return monomial(1, 1); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }
    // Coefficient of x^i, zero outside the stored range.
    mpz_class coeff(int i) const;
    const mpz_class& lead() const { return c_.back(); }
    const std::vector<mpz_class>& coeffs() const { return c_; }

    void set_coeff(int i, const mpz_class& v);

    IntPoly& operator+=(const IntPoly& o);
    IntPoly& operator-=(const IntPoly& o);
    IntPoly& operator*=(const mpz_class& s);

    friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
    friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
    friend IntPoly operator-(IntPoly a);
    friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
    friend IntPoly operator*(IntPoly a, const mpz_class& s) { return a *= s; }
    friend IntPoly operator*(const mpz_class& s, IntPoly a) { return a *= s; }
    friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const IntPoly& a, const IntPoly& b) { return !(a == b); }

    // Exact division of every coefficient by d (d must divide all of them).
    IntPoly divexact(const mpz_class& d) const;
    IntPoly derivative() const;
    IntPoly pow(unsigned k) const;
    mpz_class eval(const mpz_class& x) const;
    // Composition this(g(x)).
    IntPoly compose(const IntPoly& g) const;
    // Coefficientwise reduction into [0, m).
    IntPoly mod(const mpz_class& m) const;

    std::string to_string(const std::string& var = "x") const;

private:
    void trim();
    std::vector<mpz_class> c_;
};

struct DivMod {
    IntPoly quotient;
    IntPoly remainder;
};

// Division by a monic divisor; throws ContractViolation otherwise.
DivMod poly_divmod(const IntPoly& a, const IntPoly& b);
IntPoly poly_rem(const IntPoly& a, const IntPoly& b);

struct PhiExpansion {
    std::vector<IntPoly> coeffs;     // a_0, a_1, ...
    std::vector<IntPoly> quotients;  // quotients[i] = quotient of f by phi^(i+1)
};

// phi-adic development. With max_index >= 0 the development stops after
// computing a_0 .. a_{max_index} (the last one is then the remaining
// quotient reduced mod phi), so quotients holds q_1 .. q_{max_index}.
PhiExpansion phi_expansion(const IntPoly& f, const IntPoly& phi, int max_index = -1);

// Only the coefficients of the phi-development.
std::vector<IntPoly> phi_coeffs(const IntPoly& f, const IntPoly& phi);

Valuation val_int(const mpz_class& n, const mpz_class& p);
Valuation val_poly(const IntPoly& P, const mpz_class& p);

IntPoly poly_mulmod(const IntPoly& a, const IntPoly& b, const IntPoly& f);

// Res(a, b) over Z via the subresultant PRS.
mpz_class resultant(const IntPoly& a, const IntPoly& b);
mpz_class discriminant(const IntPoly& f);
// v_p(Res(f, f')); kInfinity when f is not squarefree.
Valuation disc_valuation(const IntPoly& f, const mpz_class& p);

mpz_class ipow(const mpz_class& b, unsigned long e);

}  // namespace montes
