#include "sumdecomp/detail/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

#include "sumdecomp/errors.hpp"

namespace sumdecomp::detail {

namespace {

using cld = std::complex<long double>;

cld eval_monic_c(const std::vector<double>& coeffs, cld t) {
    cld acc = 1.0L;  // leading monic coefficient
    for (std::size_t k = coeffs.size(); k-- > 1;) {
        acc = acc * t + static_cast<long double>(coeffs[k - 1]);
    }
    return acc;
}

cld eval_monic_derivative_c(const std::vector<double>& coeffs, cld t) {
    std::size_t deg = coeffs.size() - 1;
    cld acc = static_cast<long double>(deg);
    for (std::size_t k = deg; k-- > 1;) {
        acc = acc * t + static_cast<long double>(k) * static_cast<long double>(coeffs[k]);
    }
    return acc;
}

struct Cluster {
    cld centroid;
    int multiplicity;
};

}  // namespace

std::vector<double> poly_from_roots(const std::vector<double>& roots) {
    std::vector<long double> c = {1.0L};
    for (double r : roots) {
        c.push_back(0.0L);
        for (std::size_t k = c.size() - 1; k > 0; --k) {
            c[k] = c[k - 1] - static_cast<long double>(r) * c[k];
        }
        c[0] = -static_cast<long double>(r) * c[0];
    }
    // c currently holds descending coefficients; flip to ascending.
    std::vector<double> out(c.size());
    for (std::size_t k = 0; k < c.size(); ++k) {
        out[k] = static_cast<double>(c[c.size() - 1 - k]);
    }
    return out;
}

std::vector<double> monic_from_elementary(const std::vector<double>& e) {
    std::size_t m = e.size();
    std::vector<double> coeffs(m + 1, 0.0);
    coeffs[m] = 1.0;
    for (std::size_t k = 1; k <= m; ++k) {
        double sign = (k % 2 == 0) ? 1.0 : -1.0;
        coeffs[m - k] = sign * e[k - 1];
    }
    return coeffs;
}

long double eval_monic(const std::vector<double>& coeffs, long double t) {
    long double acc = 1.0L;
    for (std::size_t k = coeffs.size(); k-- > 1;) {
        acc = acc * t + static_cast<long double>(coeffs[k - 1]);
    }
    return acc;
}

std::vector<double> deflate_once(const std::vector<double>& coeffs, double r,
                                 long double* remainder) {
    std::size_t deg = coeffs.size() - 1;
    std::vector<double> quotient(deg);
    long double acc = 1.0L;
    quotient[deg - 1] = 1.0;
    for (std::size_t k = deg; k-- > 1;) {
        acc = acc * static_cast<long double>(r) + static_cast<long double>(coeffs[k]);
        quotient[k - 1] = static_cast<double>(acc);
    }
    *remainder = acc * static_cast<long double>(r) + static_cast<long double>(coeffs[0]);
    return quotient;
}

std::vector<double> real_roots_monic(const std::vector<double>& coeffs,
                                     double root_tol, int max_iters) {
    if (coeffs.empty() || coeffs.back() != 1.0) {
        throw RootRecoveryFailure("expected a monic polynomial");
    }
    const std::size_t deg = coeffs.size() - 1;
    if (deg == 0) return {};
    if (deg == 1) return {-coeffs[0]};

    long double coeff_scale = 1.0L;
    double max_abs = 0.0;
    for (std::size_t k = 0; k < deg; ++k) {
        coeff_scale += std::abs(static_cast<long double>(coeffs[k]));
        max_abs = std::max(max_abs, std::abs(coeffs[k]));
    }

    // Initial guesses on a circle; the angular offset breaks real-axis
    // symmetry so iterates stay pairwise distinct.
    std::vector<cld> z(deg);
    const long double radius = 1.0L + static_cast<long double>(max_abs);
    for (std::size_t i = 0; i < deg; ++i) {
        long double theta =
            2.0L * static_cast<long double>(M_PI) * static_cast<long double>(i) /
                static_cast<long double>(deg) +
            0.7L / static_cast<long double>(deg);
        z[i] = radius * cld(std::cos(theta), std::sin(theta));
    }

    std::vector<cld> w(deg, cld(0.0L, 0.0L));  // Weierstrass corrections
    const long double conv_tol = static_cast<long double>(root_tol) * 1e-3L;
    for (int iter = 0; iter < max_iters; ++iter) {
        long double max_step = 0.0L;
        for (std::size_t i = 0; i < deg; ++i) {
            cld denom = 1.0L;
            for (std::size_t j = 0; j < deg; ++j) {
                if (j == i) continue;
                cld d = z[i] - z[j];
                if (std::abs(d) == 0.0L) {
                    d = cld(1e-18L, 1e-18L);
                }
                denom *= d;
            }
            w[i] = eval_monic_c(coeffs, z[i]) / denom;
            z[i] -= w[i];
            max_step = std::max(max_step, std::abs(w[i]));
        }
        if (max_step < conv_tol) break;
    }

    // Cluster roots whose inclusion disks D(z_i, deg*|w_i|) overlap, or that
    // sit within 10*root_tol of each other. A multiple root stalls the
    // iteration at the cluster scatter radius, so its disks stay overlapped
    // while well-separated simple roots shrink theirs to points.
    std::vector<std::size_t> parent(deg);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t a) {
        while (parent[a] != a) {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        return a;
    };
    const long double merge_floor = 10.0L * static_cast<long double>(root_tol);
    for (std::size_t i = 0; i < deg; ++i) {
        for (std::size_t j = i + 1; j < deg; ++j) {
            long double dist = std::abs(z[i] - z[j]);
            long double reach = static_cast<long double>(deg) * (std::abs(w[i]) + std::abs(w[j]));
            if (dist <= std::max(merge_floor, reach)) {
                parent[find(i)] = find(j);
            }
        }
    }

    std::vector<Cluster> clusters;
    for (std::size_t rep = 0; rep < deg; ++rep) {
        if (find(rep) != rep) continue;
        cld sum = 0.0L;
        int count = 0;
        for (std::size_t i = 0; i < deg; ++i) {
            if (find(i) == rep) {
                sum += z[i];
                ++count;
            }
        }
        clusters.push_back({sum / static_cast<long double>(count), count});
    }

    // Multiplicity-aware Newton polish: c <- c - m p(c)/p'(c) converges
    // quadratically to an m-fold root.
    for (Cluster& cl : clusters) {
        cld best = cl.centroid;
        long double best_res = std::abs(eval_monic_c(coeffs, best));
        cld c = cl.centroid;
        for (int step = 0; step < 8; ++step) {
            cld p = eval_monic_c(coeffs, c);
            cld dp = eval_monic_derivative_c(coeffs, c);
            if (std::abs(dp) == 0.0L) break;
            c -= static_cast<long double>(cl.multiplicity) * p / dp;
            long double res = std::abs(eval_monic_c(coeffs, c));
            if (res < best_res) {
                best_res = res;
                best = c;
            }
        }
        cl.centroid = best;
    }

    std::vector<double> roots;
    roots.reserve(deg);
    const long double rt = static_cast<long double>(root_tol);
    for (const Cluster& cl : clusters) {
        if (std::abs(cl.centroid.imag()) > rt) {
            throw RootRecoveryFailure("complex root survived polishing (|imag| > root_tol)");
        }
        long double residual = std::abs(eval_monic_c(coeffs, cld(cl.centroid.real(), 0.0L)));
        if (residual > rt * coeff_scale) {
            throw RootRecoveryFailure("root residual above tolerance after iteration limit");
        }
        for (int k = 0; k < cl.multiplicity; ++k) {
            roots.push_back(static_cast<double>(cl.centroid.real()));
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

}  // namespace sumdecomp::detail
