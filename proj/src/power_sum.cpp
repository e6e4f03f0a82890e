#include "sumdecomp/power_sum.hpp"

#include <cmath>

#include "sumdecomp/detail/polynomial.hpp"

namespace sumdecomp {

PowerSumCodec make_power_sum_codec(int set_size, DomainInterval domain,
                                   double root_tol, int max_root_iters) {
    if (set_size < 1) throw PreconditionViolation("set_size must be >= 1");
    if (!(root_tol > 0.0)) throw PreconditionViolation("root_tol must be > 0");
    if (max_root_iters < 1) throw PreconditionViolation("max_root_iters must be >= 1");
    return PowerSumCodec{set_size, domain, root_tol, max_root_iters};
}

namespace {

double rescale_to_unit(const DomainInterval& d, double x) {
    return (x - d.lo) / d.width();
}

void check_elements_in_domain(const PowerSumCodec& codec, const Multiset& X) {
    for (double x : X.elements()) {
        if (!codec.domain.contains(x)) {
            throw DomainViolation("element " + format_double(x) + " outside codec domain");
        }
    }
}

}  // namespace

std::vector<double> element_powers(const PowerSumCodec& codec, double x) {
    if (!codec.domain.contains(x)) {
        throw DomainViolation("element " + format_double(x) + " outside codec domain");
    }
    double y = rescale_to_unit(codec.domain, x);
    std::vector<double> out(codec.set_size);
    double acc = 1.0;
    for (int q = 0; q < codec.set_size; ++q) {
        acc *= y;
        out[q] = acc;
    }
    return out;
}

LatentVector encode(const PowerSumCodec& codec, const Multiset& X) {
    if (static_cast<int>(X.size()) != codec.set_size) {
        throw SizeMismatch("encode expects exactly " + std::to_string(codec.set_size) +
                           " elements, got " + std::to_string(X.size()));
    }
    check_elements_in_domain(codec, X);
    std::vector<double> p(codec.set_size, 0.0);
    for (double x : X.elements()) {
        double y = rescale_to_unit(codec.domain, x);
        double acc = 1.0;
        for (int q = 0; q < codec.set_size; ++q) {
            acc *= y;
            p[q] += acc;
        }
    }
    return LatentVector(std::move(p));
}

std::vector<double> power_to_elementary(const std::vector<double>& p) {
    const std::size_t m = p.size();
    std::vector<long double> e(m + 1, 0.0L);
    e[0] = 1.0L;
    for (std::size_t k = 1; k <= m; ++k) {
        long double acc = 0.0L;
        long double sign = 1.0L;
        for (std::size_t i = 1; i <= k; ++i) {
            acc += sign * e[k - i] * static_cast<long double>(p[i - 1]);
            sign = -sign;
        }
        e[k] = acc / static_cast<long double>(k);
    }
    std::vector<double> out(m);
    for (std::size_t k = 1; k <= m; ++k) out[k - 1] = static_cast<double>(e[k]);
    return out;
}

namespace {

// Shared by roots_from_elementary and decode. `accept_band` is the width
// (in the coordinates of `domain`) within which slightly out-of-range roots
// are clamped onto the boundary; beyond it the caller decides what to
// signal.
std::vector<double> recover_roots(const std::vector<double>& e, const DomainInterval& domain,
                                  double root_tol, int max_root_iters, double accept_band,
                                  bool* out_of_domain) {
    std::vector<double> coeffs = detail::monic_from_elementary(e);
    std::vector<double> roots = detail::real_roots_monic(coeffs, root_tol, max_root_iters);
    *out_of_domain = false;
    for (double& r : roots) {
        if (r < domain.lo) {
            if (domain.lo - r <= accept_band) {
                r = domain.lo;
            } else {
                *out_of_domain = true;
            }
        } else if (r > domain.hi) {
            if (r - domain.hi <= accept_band) {
                r = domain.hi;
            } else {
                *out_of_domain = true;
            }
        }
    }
    return roots;
}

}  // namespace

Multiset roots_from_elementary(const std::vector<double>& e, DomainInterval domain,
                               double root_tol, int max_root_iters) {
    bool out_of_domain = false;
    std::vector<double> roots =
        recover_roots(e, domain, root_tol, max_root_iters, root_tol, &out_of_domain);
    // canonicalize rejects the stragglers with DomainViolation
    return canonicalize(roots, domain);
}

Multiset decode(const PowerSumCodec& codec, const LatentVector& z) {
    if (static_cast<int>(z.dim()) != codec.set_size) {
        throw SizeMismatch("latent dimension " + std::to_string(z.dim()) +
                           " does not match codec set_size " + std::to_string(codec.set_size));
    }
    std::vector<double> e = power_to_elementary(z.values());
    // Root recovery happens in rescaled [0,1] coordinates. Legitimate
    // recoveries can overshoot the boundary by amplified rounding noise, so
    // the acceptance band is wider than the clamp in roots_from_elementary.
    bool out_of_domain = false;
    std::vector<double> unit_roots =
        recover_roots(e, unit_interval(), codec.root_tol, codec.max_root_iters,
                      100.0 * codec.root_tol, &out_of_domain);
    if (out_of_domain) {
        throw OutOfImage("recovered roots leave the codec domain");
    }
    std::vector<double> elems(unit_roots.size());
    for (std::size_t i = 0; i < unit_roots.size(); ++i) {
        elems[i] = codec.domain.lo + codec.domain.width() * unit_roots[i];
    }
    return canonicalize(elems, codec.domain);
}

LatentFunction build_rho(const PowerSumCodec& codec, SetFunction f) {
    return [codec, f = std::move(f)](const LatentVector& z) { return f(decode(codec, z)); };
}

}  // namespace sumdecomp
