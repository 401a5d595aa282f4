#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "montes/ffield.hpp"
#include "montes/polygon.hpp"
#include "montes/zpoly.hpp"

namespace montes {

// Data of level i of a type. phi, m and vphi are known as soon as the
// level is opened; the remaining fields are filled when it is closed by
// choosing a side (slope -h/e) and a residual factor psi.
struct TypeLevel {
    IntPoly phi;
    std::int64_t m = 0;
    Valuation vphi = 0;  // v_i(phi_i)

    std::int64_t h = 0, e = 0;
    // ell*h - ellp*e = 1 with 0 <= ell < e.
    std::int64_t ell = 0, ellp = 0;
    FFPoly psi;  // over F_i
    int f = 0;

    bool closed() const { return e > 0; }
};

// Reduction conventions (level i >= 2, j = i - 1):
//   pi_1 = p, Phi_j = phi_j / pi_j^vphi_j,
//   gamma_j = Phi_j^e_j / pi_j^h_j reduces to the generator z_j of F_i,
//   pi_i = Phi_j^ell_j / pi_j^ellp_j, so v_i(pi_i) = 1.
// For a of degree < m_i write a = sum b_k phi_j^k, let s be the first
// abscissa on the slope -h_j/e_j line and U_s its ordinate. Then
//   red_i(a) = z_j^t * sum_t red_j(b_{s+t e}) z_j^t,  t = -(s*ellp + ell*U_s).
// Residual polynomials use red_i on the coefficients along a side without
// any extra twist, which makes them multiplicative.
class TypeRec {
public:
    // Order-zero type attached to an irreducible factor psi0 of f mod p.
    static TypeRec order_zero(const mpz_class& p, const FFPoly& psi0);

    // Last (open) level index r; the type has order r - 1.
    int open_level() const { return static_cast<int>(levels.size()); }
    int order() const { return open_level() - 1; }
    const mpz_class& p() const { return tower.p(); }
    const TypeLevel& level(int i) const { return levels.at(i - 1); }
    const IntPoly& phi() const { return levels.back().phi; }

    // e_1 ... e_{i} and f_0 f_1 ... f_{i}.
    std::int64_t e_product(int upto) const;
    std::int64_t f_product(int upto) const;

    // v_i(P) for 1 <= i <= open_level().
    Valuation value(int i, const IntPoly& P) const;
    // v_r(phi_s) from the product formula over the level data.
    Valuation phi_value(int r, int s) const;
    // (v_i(a), red_i(a)) for nonzero a with deg a < m_i; red_i(a) in F_i.
    std::pair<Valuation, FFElem> value_and_reduce(int i, const IntPoly& a) const;
    FFElem reduce(int i, const IntPoly& a) const { return value_and_reduce(i, a).second; }

    // Points (k, v_i(a_k) + k v_i(phi_i)) of a phi_i-development.
    std::vector<CloudPoint> points(int i, const std::vector<IntPoly>& dev) const;
    NewtonPolygon newton_polygon(int i, const IntPoly& P) const;
    // Residual polynomial over F_i attached to side S of the polygon of dev.
    FFPoly residual(int i, const std::vector<IntPoly>& dev, const Side& S) const;
    // Residual polynomial of the lambda-component of N_i(P), lambda = -h/e.
    FFPoly residual(int i, const IntPoly& P, std::int64_t h, std::int64_t e) const;
    // ord_{psi_{i-1}} R_{i-1}(P); for i = 1 the order of psi0 in P mod p.
    int omega(int i, const IntPoly& P) const;

    // a with deg a < m_i, v_i(a) = U and red_i(a) = xi (xi in F_i, nonzero).
    // Feasible whenever U >= v_i(phi_i); the result is always re-checked.
    IntPoly lift(int i, const FFElem& xi, Valuation U) const;

    // Representative for the open level closed by (h, e, psi): monic of
    // degree e f m_r, one-sided of slope -h/e, residual equal to psi.
    IntPoly representative(std::int64_t h, std::int64_t e, const FFPoly& psi) const;
    // Closes the open level with (h, e, psi) and opens the next one.
    TypeRec extended(std::int64_t h, std::int64_t e, const FFPoly& psi) const;
    // Replaces phi_r by the representative of (h, 1, psi), deg psi = 1.
    TypeRec refined(std::int64_t h, const FFPoly& psi) const;

    // (phi_1; -h_1/e_1, phi_2; ...; psi)
    std::string to_string() const;

    FieldTower tower{2};  // F_0 .. F_r
    FFPoly psi0;
    std::vector<TypeLevel> levels;

    std::int64_t H = 0;
    std::vector<IntPoly> PQ;
    std::vector<mpq_class> PQVals;
    std::vector<int> path;
    std::int64_t omega_f = 0;
    std::int64_t refinements = 0;

private:
    TypeLevel close_level(std::int64_t h, std::int64_t e, const FFPoly& psi) const;
};

// Monic lift of a polynomial over F_0 with coefficients in [0, p).
IntPoly lift_ffp0(const FFPoly& P);
// f mod p as a polynomial over F_0.
FFPoly reduce_mod_p(const FieldTower& T, const IntPoly& f);

}  // namespace montes
