#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace montes {

// Element of level L of a tower. c holds the D_L base-field residues in
// nested order: level L is F_{L-1}[y]/(psi_{L-1}), so c is f_{L-1}
// consecutive chunks of size D_{L-1}, chunk j being the coefficient of y^j.
struct FFElem {
    int level = 0;
    std::vector<mpz_class> c;

    friend bool operator==(const FFElem& a, const FFElem& b) { return a.level == b.level && a.c == b.c; }
    friend bool operator!=(const FFElem& a, const FFElem& b) { return !(a == b); }
};

// Polynomial in y over a tower level. Coefficients ascending, trimmed.
struct FFPoly {
    int level = 0;
    std::vector<FFElem> c;

    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    friend bool operator==(const FFPoly& a, const FFPoly& b) { return a.level == b.level && a.c == b.c; }
    friend bool operator!=(const FFPoly& a, const FFPoly& b) { return !(a == b); }
};

// F_0 = F_p and F_{i+1} = F_i[y]/(psi_i). Levels are shared between
// copies; extend() returns a new tower and leaves this one untouched.
class FieldTower {
public:
    explicit FieldTower(const mpz_class& p);

    // Adds F_{top+1} = F_top[y]/(psi). Throws InputError if psi is not
    // monic irreducible over the top level.
    FieldTower extend(const FFPoly& psi) const;

    const mpz_class& p() const { return p_; }
    int top() const { return static_cast<int>(levels_.size()); }
    // Degree of level L over F_p.
    std::size_t abs_degree(int level) const;
    // Degree of psi_{L-1}, for L >= 1.
    int rel_degree(int level) const;
    const FFPoly& modulus(int level) const;
    mpz_class cardinality(int level) const;

    FFElem zero(int level) const;
    FFElem one(int level) const;
    FFElem from_int(int level, const mpz_class& v) const;
    // Class of y in level L >= 1.
    FFElem gen(int level) const;
    FFElem random(int level, gmp_randclass& rng) const;

    bool is_zero(const FFElem& a) const;
    bool is_one(const FFElem& a) const;
    FFElem add(const FFElem& a, const FFElem& b) const;
    FFElem sub(const FFElem& a, const FFElem& b) const;
    FFElem neg(const FFElem& a) const;
    FFElem mul(const FFElem& a, const FFElem& b) const;
    FFElem mul_int(const FFElem& a, const mpz_class& k) const;
    // Throws std::domain_error on zero.
    FFElem inv(const FFElem& a) const;
    FFElem pow(const FFElem& a, const mpz_class& e) const;
    // Signed exponent; negative exponents invert first.
    FFElem pow_si(const FFElem& a, long e) const;

    // Image of a lower-level element in level `to`.
    FFElem embed(const FFElem& a, int to) const;
    // Coefficients of a (level L >= 1) as a polynomial over level L-1.
    std::vector<FFElem> chunks(const FFElem& a) const;
    FFElem from_chunks(int level, const std::vector<FFElem>& ch) const;

    std::string to_string(const FFElem& a) const;
    std::string to_string(const FFPoly& P) const;

private:
    struct Level {
        FFPoly psi;
        std::size_t abs_degree;
    };
    mpz_class p_;
    std::vector<std::shared_ptr<const Level>> levels_;
};

// Polynomial helpers over a level; all results are trimmed.
FFPoly ffp_from(const FieldTower& T, int level, std::vector<FFElem> coeffs);
FFPoly ffp_monomial(const FieldTower& T, int level, const FFElem& c, int deg);
FFPoly ffp_add(const FieldTower& T, const FFPoly& a, const FFPoly& b);
FFPoly ffp_sub(const FieldTower& T, const FFPoly& a, const FFPoly& b);
FFPoly ffp_mul(const FieldTower& T, const FFPoly& a, const FFPoly& b);
FFPoly ffp_scale(const FieldTower& T, const FFPoly& a, const FFElem& s);
std::pair<FFPoly, FFPoly> ffp_divmod(const FieldTower& T, const FFPoly& a, const FFPoly& b);
FFPoly ffp_rem(const FieldTower& T, const FFPoly& a, const FFPoly& b);
FFPoly ffp_monic(const FieldTower& T, const FFPoly& a);
FFPoly ffp_gcd(const FieldTower& T, const FFPoly& a, const FFPoly& b);
FFPoly ffp_derivative(const FieldTower& T, const FFPoly& a);
FFPoly ffp_powmod(const FieldTower& T, const FFPoly& a, const mpz_class& e, const FFPoly& m);
FFPoly ffp_pow(const FieldTower& T, const FFPoly& a, unsigned e);
FFElem ffp_eval(const FieldTower& T, const FFPoly& a, const FFElem& x);

// Total order used to sort factor lists: degree first, then the flattened
// coefficient vectors compared lexicographically from the constant term.
bool ffp_less(const FFPoly& a, const FFPoly& b);

struct FFFactor {
    FFPoly factor;
    int multiplicity;
};

// Monic irreducible factors with multiplicities, canonically sorted.
// The seed only steers equal-degree splitting; the result does not depend on it.
std::vector<FFFactor> factor_poly(const FieldTower& T, const FFPoly& R, std::uint64_t seed = 0);
bool is_irreducible(const FieldTower& T, const FFPoly& P);
int ord_factor(const FieldTower& T, const FFPoly& R, const FFPoly& psi);

}  // namespace montes
