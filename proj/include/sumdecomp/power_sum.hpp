#pragma once

#include <functional>
#include <vector>

#include "sumdecomp/multiset.hpp"

namespace sumdecomp {

using SetFunction = std::function<double(const Multiset&)>;
using LatentFunction = std::function<double(const LatentVector&)>;

// Fixed-size codec: a size-M multiset maps to its first M power sums, taken
// after an affine rescaling of the domain onto [0, 1] (power sums on wide
// intervals are badly conditioned). Decoding inverts the power sums through
// elementary symmetric values and real root recovery. Conditioning limits
// practical use to M <= 10.
struct PowerSumCodec {
    int set_size;
    DomainInterval domain;
    double root_tol;
    int max_root_iters;
};

PowerSumCodec make_power_sum_codec(int set_size, DomainInterval domain,
                                   double root_tol = 1e-9, int max_root_iters = 200);

// The per-element map phi(x) = (y, y^2, ..., y^M) with y the rescaled
// element; encode(X) is the elementwise sum of these.
std::vector<double> element_powers(const PowerSumCodec& codec, double x);

LatentVector encode(const PowerSumCodec& codec, const Multiset& X);

// Newton's identities: power sums p_1..p_M to elementary symmetric e_1..e_M
// via k*e_k = sum_{i=1..k} (-1)^{i-1} e_{k-i} p_i, e_0 = 1.
std::vector<double> power_to_elementary(const std::vector<double>& p);

// The M real roots (with multiplicity) of
// t^M - e_1 t^{M-1} + e_2 t^{M-2} - ... + (-1)^M e_M,
// clamped into the domain when within root_tol of a boundary. Values e must
// come from a real multiset in the domain.
Multiset roots_from_elementary(const std::vector<double>& e, DomainInterval domain,
                               double root_tol, int max_root_iters);

Multiset decode(const PowerSumCodec& codec, const LatentVector& z);

// rho = f o Phi^{-1}: the latent-side factor completing the
// sum-decomposition f(X) = rho(sum_x phi(x)).
LatentFunction build_rho(const PowerSumCodec& codec, SetFunction f);

}  // namespace sumdecomp
