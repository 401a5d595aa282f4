#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "montes/montes.hpp"
#include "montes/zpoly.hpp"

namespace montes {

// num(theta) / p^nu with nu = floor(hval).
struct BasisElement {
    IntPoly num;
    mpq_class hval;
    std::int64_t nu = 0;
};

struct StemEntry {
    IntPoly g;  // monic
    std::int64_t mu = 0;
};

// Generators listed where mu strictly increases; the first is (1, 0).
struct Stem {
    std::vector<StemEntry> entries;
};

std::vector<BasisElement> basis_elements(const MontesResult& res);

// Exact test of q(theta)/p^nu being integral: the characteristic polynomial
// of multiplication by q(theta) must have its x^(n-k) coefficient divisible
// by p^(nu k) for every k.
bool integrality_oracle(const IntPoly& q, std::int64_t nu, const IntPoly& f, const mpz_class& p);

// Characteristic polynomial det(xI - M) by division-free Berkowitz, with
// coefficients reduced mod `mod` (mod = 0 keeps them exact). Ascending powers.
std::vector<mpz_class> charpoly(const std::vector<std::vector<mpz_class>>& M, const mpz_class& mod = 0);

// Matrix of multiplication by q(theta) on the power basis (row k = x^k q mod f).
std::vector<std::vector<mpz_class>> multiplication_matrix(const IntPoly& q, const IntPoly& f);

// Hermite reduction of the span of B and Z[theta], one monic row per degree.
struct TriangularForm {
    std::vector<IntPoly> g;          // g[d] monic of degree d
    std::vector<std::int64_t> mu;    // exponent of p in the denominator of row d
};

// Throws InputError when the span is not generated by monic integral
// numerators over p-power denominators (the family is then not an order).
TriangularForm hermite_local(const std::vector<BasisElement>& B, const IntPoly& f, const mpz_class& p);
Stem triangularize(const std::vector<BasisElement>& B, const IntPoly& f, const mpz_class& p);

// (d_2 - d_1) mu_1 + ... + (n - d_k) mu_k.
std::int64_t stem_weight(const Stem& stem, std::int64_t n);
bool stem_criterion(const Stem& stem, std::int64_t n, std::int64_t ind);
std::vector<BasisElement> triangular_basis(const Stem& stem, std::int64_t n);

struct StageTimings {
    double montes_ms = 0, numerator_ms = 0, stem_ms = 0;
};

struct Analysis {
    MontesResult res;
    Stem stem;
    bool stem_built = false;
    std::string diagnostic;
    std::int64_t vdisc_K = 0;
    StageTimings timings;
};

// Full pipeline: main loop, criterion on the numerators, triangulation,
// criterion on the stem and the final verdict (filled into res).
Analysis analyze(const IntPoly& f, const mpz_class& p, const MontesOptions& opts = {});

}  // namespace montes
