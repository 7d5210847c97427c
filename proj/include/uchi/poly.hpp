#pragma once

#include <vector>

#include "uchi/fp.hpp"
#include "uchi/linalg.hpp"

namespace uchi {

// Polynomial over F_p, coefficients lowest degree first, leading coefficient
// nonzero unless the zero polynomial (empty vector).
struct FpPoly {
  std::vector<fp_t> c;

  bool is_zero() const { return c.empty(); }
  // degree of the zero polynomial is -1 by convention
  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool operator==(const FpPoly& o) const { return c == o.c; }
};

FpPoly poly_trim(const PrimeField& F, std::vector<fp_t> c);
FpPoly poly_add(const PrimeField& F, const FpPoly& a, const FpPoly& b);
FpPoly poly_mul(const PrimeField& F, const FpPoly& a, const FpPoly& b);
FpPoly poly_mod(const PrimeField& F, const FpPoly& a, const FpPoly& b);
FpPoly poly_derivative(const PrimeField& F, const FpPoly& a);
// monic gcd; gcd(f, 0) = monic(f)
FpPoly poly_gcd(const PrimeField& F, FpPoly a, FpPoly b);
FpPoly poly_monic(const PrimeField& F, const FpPoly& a);

// true iff gcd(f, f') = 1; signals on the zero polynomial
bool is_squarefree(const PrimeField& F, const FpPoly& f);

// for nonzero f: true iff f divides t^p - t, i.e. f is squarefree with all
// roots in F_p
bool splits_distinct_over_fp(const PrimeField& F, const FpPoly& f);

// Monic polynomial m of least degree with m(M) = 0 (first linear dependence
// among the powers of M).
FpPoly minimal_polynomial(const PrimeField& F, const DenseMatFp& M);

// Evaluate f(M).
DenseMatFp poly_eval(const PrimeField& F, const FpPoly& f, const DenseMatFp& M);

}  // namespace uchi
