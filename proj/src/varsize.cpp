#include "sumdecomp/varsize.hpp"

#include <cmath>

#include "sumdecomp/detail/polynomial.hpp"

namespace sumdecomp {

VarSizeCodec make_varsize_codec(int max_size, DomainInterval domain,
                                std::optional<double> sentinel, double root_tol,
                                int max_root_iters) {
    if (max_size < 1) throw PreconditionViolation("max_size must be >= 1");
    double k = sentinel.value_or(domain.lo - 1.0);
    if (!std::isfinite(k)) throw PreconditionViolation("sentinel must be finite");
    if (domain.contains(k)) {
        throw PreconditionViolation("sentinel " + format_double(k) +
                                    " must lie strictly outside the element domain");
    }
    DomainInterval extended(std::min(k, domain.lo), std::max(k, domain.hi));
    PowerSumCodec inner = make_power_sum_codec(max_size, extended, root_tol, max_root_iters);
    return VarSizeCodec{max_size, domain, k, inner};
}

std::vector<double> element_features_var(const VarSizeCodec& codec, double x) {
    if (!codec.domain.contains(x)) {
        throw DomainViolation("element " + format_double(x) + " outside codec domain");
    }
    std::vector<double> out(codec.max_size);
    double xp = 1.0;
    double kp = 1.0;
    for (int q = 0; q < codec.max_size; ++q) {
        xp *= x;
        kp *= codec.sentinel;
        out[q] = xp - kp;
    }
    return out;
}

LatentVector encode_var(const VarSizeCodec& codec, const Multiset& X) {
    if (static_cast<int>(X.size()) > codec.max_size) {
        throw SizeMismatch("encode_var accepts at most " + std::to_string(codec.max_size) +
                           " elements, got " + std::to_string(X.size()));
    }
    std::vector<double> z(codec.max_size, 0.0);
    for (double x : X.elements()) {
        if (!codec.domain.contains(x)) {
            throw DomainViolation("element " + format_double(x) + " outside codec domain");
        }
        double xp = 1.0;
        double kp = 1.0;
        for (int q = 0; q < codec.max_size; ++q) {
            xp *= x;
            kp *= codec.sentinel;
            z[q] += xp - kp;
        }
    }
    return LatentVector(std::move(z));
}

namespace {

// Binomial transform of power sums under the affine map y = a*x + b:
// p'_q = sum_{j=0}^{q} C(q,j) a^j b^{q-j} p_j with p_0 = count.
std::vector<long double> affine_power_sums(const std::vector<long double>& p_raw, int count,
                                           long double a, long double b) {
    const int m = static_cast<int>(p_raw.size());
    std::vector<std::vector<long double>> choose(m + 1, std::vector<long double>(m + 1, 0.0L));
    for (int q = 0; q <= m; ++q) {
        choose[q][0] = 1.0L;
        for (int j = 1; j <= q; ++j) {
            choose[q][j] = choose[q - 1][j - 1] + (j <= q - 1 ? choose[q - 1][j] : 0.0L);
        }
    }
    std::vector<long double> out(m, 0.0L);
    for (int q = 1; q <= m; ++q) {
        long double acc = 0.0L;
        for (int j = 0; j <= q; ++j) {
            long double pj = (j == 0) ? static_cast<long double>(count) : p_raw[j - 1];
            acc += choose[q][j] * std::pow(a, static_cast<long double>(j)) *
                   std::pow(b, static_cast<long double>(q - j)) * pj;
        }
        out[q - 1] = acc;
    }
    return out;
}

}  // namespace

Multiset decode_var(const VarSizeCodec& codec, const LatentVector& z) {
    const int m = codec.max_size;
    if (static_cast<int>(z.dim()) != m) {
        throw SizeMismatch("latent dimension " + std::to_string(z.dim()) +
                           " does not match codec max_size " + std::to_string(m));
    }
    const DomainInterval& ext = codec.inner.domain;

    // Padded raw power sums p_q = z_q + M * k^q.
    std::vector<long double> p_raw(m);
    long double kp = 1.0L;
    for (int q = 0; q < m; ++q) {
        kp *= static_cast<long double>(codec.sentinel);
        p_raw[q] = static_cast<long double>(z[q]) + static_cast<long double>(m) * kp;
    }

    // Rescale onto [0,1] over the extended interval; the sentinel lands
    // exactly on an endpoint (0 when k < lo, 1 when k > hi).
    const long double w = static_cast<long double>(ext.width());
    std::vector<long double> p_unit =
        affine_power_sums(p_raw, m, 1.0L / w, -static_cast<long double>(ext.lo) / w);

    std::vector<double> p_unit_d(p_unit.begin(), p_unit.end());
    std::vector<double> e = power_to_elementary(p_unit_d);
    std::vector<double> coeffs = detail::monic_from_elementary(e);

    const double k_unit = (codec.sentinel - ext.lo) / ext.width();

    // Strip sentinel copies by synthetic division at the exactly-known
    // sentinel coordinate. The remainder is p(k_unit): ~rounding noise while
    // sentinel roots remain, jumping to at least gap^{M'} once they are
    // gone, so a mid-scale threshold separates the two regimes cleanly.
    double coeff_scale = 1.0;
    for (double c : coeffs) coeff_scale = std::max(coeff_scale, std::abs(c));
    const double strip_tol = 1e-7 * coeff_scale;
    int sentinel_count = 0;
    while (coeffs.size() > 1 && sentinel_count < m) {
        long double remainder = 0.0L;
        std::vector<double> quotient = detail::deflate_once(coeffs, k_unit, &remainder);
        if (std::abs(static_cast<double>(remainder)) > strip_tol) break;
        coeffs = std::move(quotient);
        ++sentinel_count;
    }

    std::vector<double> unit_roots;
    if (coeffs.size() > 1) {
        unit_roots =
            detail::real_roots_monic(coeffs, codec.inner.root_tol, codec.inner.max_root_iters);
    }

    // Actual elements must land in the image of the declared domain.
    const double dom_lo_unit = (codec.domain.lo - ext.lo) / ext.width();
    const double dom_hi_unit = (codec.domain.hi - ext.lo) / ext.width();
    const double band = 100.0 * codec.inner.root_tol;
    std::vector<double> elems;
    elems.reserve(unit_roots.size());
    for (double y : unit_roots) {
        if (y < dom_lo_unit - band || y > dom_hi_unit + band) {
            throw MalformedLatent("recovered element at unit coordinate " + format_double(y) +
                                  " is neither in-domain nor a sentinel");
        }
        double clamped = std::min(std::max(y, dom_lo_unit), dom_hi_unit);
        elems.push_back(ext.lo + ext.width() * clamped);
    }
    return canonicalize(elems, codec.domain);
}

LatentFunction build_rho_var(const VarSizeCodec& codec, SetFunction f) {
    return [codec, f = std::move(f)](const LatentVector& z) { return f(decode_var(codec, z)); };
}

}  // namespace sumdecomp
