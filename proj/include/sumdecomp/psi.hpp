#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "sumdecomp/errors.hpp"

namespace sumdecomp::psi {

// The staircase-of-reflections function: psi_tilde is built on (0,1] by
// reflecting the identity inside even-numbered dyadic subintervals at every
// level, giving a limit that is continuous exactly off the dyadic
// rationals. Rescaling the argument by an irrational A moves every
// discontinuity to an irrational point, so the rescaled function is
// continuous at every rational of [0, A].
struct PsiConfig {
    double scale_A = std::log(4.0);
    int truncation_n = 40;
    std::vector<double> probe_radii = {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
};

// n-th digit of the non-terminating binary expansion of x in (0,1]
// (dyadic rationals take the repeating-ones form, e.g. 0.5 = 0.0111...).
// Exact for every double via integer arithmetic on the significand.
int binary_digit(double x, int n);

// Midpoint of the unique half-open dyadic interval
// (k 2^-n, (k+1) 2^-n] containing x.
double midpoint(double x, int n);

// Partial sum with n reflection terms; psi_tilde(x, 0) = x.
double psi_tilde(double x, int n);

// psi(x) = psi_tilde(x / A) on [0, A], truncated so the absolute error is
// at most tol (each omitted tail is bounded by 2^-n). psi(0) = 0.
double psi(double x, double tol, double scale_A = std::log(4.0));

// For each radius r (positive, decreasing), max - min of psi over a dense
// sample of [x0 - r, x0 + r] intersected with [0, A]. Shrinks toward zero
// at continuity points and stabilizes above a positive floor at jumps.
std::vector<std::pair<double, double>> oscillation_probe(const PsiConfig& config, double x0,
                                                         int samples_per_radius);

// CSV (columns x,psi) at the given resolution over [0, A]; optionally an
// SVG polyline rendering next to it. Pass an empty svg_path to skip it.
void emit_plot(const PsiConfig& config, int resolution, const std::string& csv_path,
               const std::string& svg_path = "");

}  // namespace sumdecomp::psi
