#pragma once

#include <vector>

namespace sumdecomp::detail {

// Monic real polynomials stored as ascending coefficients:
// coeffs[k] multiplies t^k, coeffs.back() == 1.

// Expand prod_m (t - roots[m]) into ascending monic coefficients.
std::vector<double> poly_from_roots(const std::vector<double>& roots);

// Monic polynomial t^M - e1 t^{M-1} + e2 t^{M-2} - ... + (-1)^M e_M from
// elementary symmetric values e[0..M-1] = e_1..e_M.
std::vector<double> monic_from_elementary(const std::vector<double>& e);

// Horner evaluation in extended precision.
long double eval_monic(const std::vector<double>& coeffs, long double t);

// Divide by (t - r). Returns the ascending quotient; *remainder gets p(r).
std::vector<double> deflate_once(const std::vector<double>& coeffs, double r,
                                 long double* remainder);

// All real roots of a monic polynomial whose roots are known (up to noise)
// to be real. Simultaneous Weierstrass iteration started on a circle of
// radius 1 + max|coeff|, then cluster detection via the Weierstrass
// correction inclusion disks (floored at 10*root_tol), then a
// multiplicity-aware Newton polish of each cluster centroid. Roots are
// returned with multiplicity, sorted ascending.
//
// Throws RootRecoveryFailure if a cluster centroid keeps an imaginary part
// above root_tol, or its residual stays above root_tol relative to the
// coefficient scale after max_iters.
std::vector<double> real_roots_monic(const std::vector<double>& coeffs,
                                     double root_tol, int max_iters);

}  // namespace sumdecomp::detail
