#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "montes/zpoly.hpp"

namespace montes::fixtures {

// x^12 + 4x^6 + 16x^3 + 64 at p = 2.
IntPoly golden();

// (x^2 + x + 1)^2 - p^(2k+1).
IntPoly quartic(const mpz_class& p, unsigned k);

// phi_j of the 2-adic tower family, 1 <= j <= 9.
IntPoly tower(int j);
// Tabulated 2-index of tower(j), j >= 2.
std::int64_t tower_index(int j);

struct Generated {
    IntPoly f;
    mpz_class p;
    std::string description;
};

struct SingleTypeParams {
    int max_order = 3;
    int max_degree = 36;
};

// f = phi_{r+1} + p^N (1 + p g) for a random type of order r, chosen so
// that f has a single complete type of order r + 1 (irreducible over Z_p).
Generated random_single_type(std::uint64_t seed, const SingleTypeParams& params = {});

struct MixedParams {
    int max_order = 3;
    int max_degree = 40;
    int max_factors = 3;
    unsigned max_prime = 1024;
};

// f = prod phi_i^{m_i} + p^N (1 + p g) with phi_i representatives of random
// types of orders 1..max_order. g is chosen so that f is irreducible modulo an
// auxiliary prime q != p, hence irreducible over Z.
Generated random_mixed(std::uint64_t seed, const MixedParams& params = {});

}  // namespace montes::fixtures
