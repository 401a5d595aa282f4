#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "montes/polygon.hpp"
#include "montes/types.hpp"
#include "montes/zpoly.hpp"

namespace montes {

struct PrimeInfo {
    std::string type;  // type in (phi_1; lambda_1, ...; psi) notation
    std::int64_t e = 0;
    std::int64_t f = 0;
    int order = 0;
    std::vector<int> path;
    // The branch ended because a representative coincided with f.
    bool phi_equals_f = false;
};

struct MontesResult {
    IntPoly f;
    mpz_class p;
    std::vector<PrimeInfo> primes;
    std::int64_t total_index = 0;
    // index_by_order[r] is the contribution of order-r passes (slot 0 unused).
    std::vector<std::int64_t> index_by_order;
    std::vector<IntPoly> numerators;
    std::vector<std::int64_t> denominators;
    std::vector<mpq_class> hvals;
    std::int64_t iterations = 0;
    std::int64_t refinements = 0;
    Valuation vdisc_f = 0;

    // Filled by the basis stage.
    std::optional<std::int64_t> ind_num;
    bool numerator_ok = false;
    bool stem_weight_ok = false;
    bool maximal = false;

    std::int64_t sum_nu() const;
    friend bool operator==(const MontesResult& a, const MontesResult& b);
};

struct MontesOptions {
    std::uint64_t seed = 0;
    int jobs = 1;
    // <= 0 selects 10 n (1 + v(disc f)).
    std::int64_t max_iter = 0;
    std::ostream* trace = nullptr;
};

// One order-zero type per irreducible factor of f mod p.
std::vector<TypeRec> initialize(const IntPoly& f, const mpz_class& p, std::uint64_t seed = 0);

// f_0 ... f_{r-1} (ind(N) - H l (l - 1) / 2) for a partial polygon of order r.
std::int64_t ind_partial(const TypeRec& t, const NewtonPolygon& NH, std::int64_t H);

struct EnlargedPQ {
    std::vector<IntPoly> PQ;
    std::vector<mpq_class> PQVals;
};

// H_{r,j} = (Y_j - j v_r(phi_r)) / (e_1 ... e_{r-1}), read off the principal polygon.
mpq_class h_value(const TypeRec& t, const NewtonPolygon& principal, std::int64_t j);

// [PQ, q_{b-1} PQ, ..., q_{b-e fmax} PQ] (mod f) with matching values.
EnlargedPQ enlarge_pq(const TypeRec& t, const std::vector<IntPoly>& quotients, std::int64_t b, std::int64_t e,
                      std::int64_t fmax, const NewtonPolygon& principal, const IntPoly& f);

MontesResult montes_run(const IntPoly& f, const mpz_class& p, const MontesOptions& opts = {});

struct NumeratorCriterion {
    // v_p(det) of the numerator matrix; empty when the matrix is singular
    // to the working precision (the criterion then fails).
    std::optional<std::int64_t> ind_num;
    std::int64_t sum_nu = 0;
    bool holds = false;
};

NumeratorCriterion check_numerator_criterion(const MontesResult& res, const IntPoly& f, const mpz_class& p);

// v_p of the determinant of an integer matrix, computed modulo p^precision.
// Returns empty if the valuation is >= precision.
std::optional<std::int64_t> det_valuation(std::vector<std::vector<mpz_class>> M, const mpz_class& p,
                                          std::int64_t precision);

bool is_probable_prime(const mpz_class& p);

}  // namespace montes
