#pragma once

#include <optional>

#include "sumdecomp/power_sum.hpp"

namespace sumdecomp {

// Variable-size codec: multisets of size 0..M map to the sentinel-shifted
// power sums z_q = sum_m (x_m^q - k^q), q = 1..M, where the sentinel k lies
// strictly outside the element domain. Conceptually the input is padded to
// size M with copies of k; the shift makes the padded encoding a genuine
// per-element sum. Decoding reconstructs the padded power sums, strips the
// sentinel copies and returns the actual elements.
struct VarSizeCodec {
    int max_size;
    DomainInterval domain;
    double sentinel;
    PowerSumCodec inner;  // set_size = max_size over the extended interval
};

// Default sentinel is domain.lo - 1.
VarSizeCodec make_varsize_codec(int max_size, DomainInterval domain,
                                std::optional<double> sentinel = std::nullopt,
                                double root_tol = 1e-9, int max_root_iters = 200);

// phi_hat(x) = (x^q - k^q)_q, the per-element map in original coordinates.
std::vector<double> element_features_var(const VarSizeCodec& codec, double x);

LatentVector encode_var(const VarSizeCodec& codec, const Multiset& X);

Multiset decode_var(const VarSizeCodec& codec, const LatentVector& z);

LatentFunction build_rho_var(const VarSizeCodec& codec, SetFunction f);

}  // namespace sumdecomp
