#include "sumdecomp/psi.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>

#include "sumdecomp/detail/svg.hpp"
#include "sumdecomp/multiset.hpp"

namespace sumdecomp::psi {

namespace {

void check_unit_open(double x) {
    if (!(x > 0.0) || !(x <= 1.0) || !std::isfinite(x)) {
        throw DomainViolation("argument must lie in (0, 1]");
    }
}

struct DyadicForm {
    std::uint64_t mantissa;  // x = mantissa * 2^exponent, exactly
    int exponent;
};

DyadicForm decompose(double x) {
    int e;
    double f = std::frexp(x, &e);  // f in [0.5, 1)
    auto m = static_cast<std::uint64_t>(std::ldexp(f, 53));
    return {m, e - 53};
}

// ceil(x * 2^p) for x = m * 2^e in (0, 1]. Only needed when e + p <= 0;
// for e + p > 0 the value is the exact integer m << (e+p), which callers
// special-case to avoid overflow.
std::uint64_t ceil_scaled(const DyadicForm& d, int p) {
    long long s = static_cast<long long>(d.exponent) + p;
    if (s >= 0) {
        return d.mantissa << s;  // callers guarantee s <= 10 here
    }
    long long shift = -s;
    if (shift >= 64) return 1;  // 0 < x * 2^p < 1
    std::uint64_t q = d.mantissa >> shift;
    std::uint64_t rem = d.mantissa & ((std::uint64_t(1) << shift) - 1);
    return q + (rem != 0 ? 1 : 0);
}

}  // namespace

int binary_digit(double x, int n) {
    check_unit_open(x);
    if (n < 1) throw PreconditionViolation("digit index starts at 1");
    DyadicForm d = decompose(x);
    long long s = static_cast<long long>(d.exponent) + n;
    // Past the last set bit of x both scaled values are exact integers and
    // the non-terminating expansion is all ones.
    if (s >= 1) return 1;
    if (s <= -53) return 0;  // both ceilings collapse to 1
    std::uint64_t cn = ceil_scaled(d, n);
    std::uint64_t cn1 = ceil_scaled(d, n - 1);
    long long b = static_cast<long long>(cn) - 2 * static_cast<long long>(cn1) + 1;
    return static_cast<int>(b);
}

double midpoint(double x, int n) {
    check_unit_open(x);
    if (n < 1) throw PreconditionViolation("interval level starts at 1");
    DyadicForm d = decompose(x);
    long long s = static_cast<long long>(d.exponent) + n;
    if (s >= 0) {
        // x * 2^n is an exact integer: the interval's right endpoint is x.
        return x - std::ldexp(0.5, -n);
    }
    std::uint64_t k = ceil_scaled(d, n) - 1;
    return std::ldexp(static_cast<double>(k) + 0.5, -n);
}

double psi_tilde(double x, int n) {
    check_unit_open(x);
    if (n < 0) throw PreconditionViolation("truncation order must be >= 0");
    long double acc = static_cast<long double>(x);
    int ones_parity = 0;
    for (int i = 1; i <= n; ++i) {
        if (binary_digit(x, i) == 1) {
            ones_parity ^= 1;
            double a = midpoint(x, i);
            long double term = 2.0L * (static_cast<long double>(x) - static_cast<long double>(a));
            acc += ones_parity ? -term : term;
        }
    }
    return static_cast<double>(acc);
}

double psi(double x, double tol, double scale_A) {
    if (!(tol > 0.0)) throw PreconditionViolation("tol must be > 0");
    if (!(scale_A > 0.0)) throw PreconditionViolation("scale must be > 0");
    if (!std::isfinite(x) || x < 0.0 || x > scale_A) {
        throw DomainViolation("argument must lie in [0, A]");
    }
    if (x == 0.0) return 0.0;
    double y = std::min(x / scale_A, 1.0);
    if (y <= 0.0) return 0.0;  // underflow guard for denormal-scale x
    int n = static_cast<int>(std::ceil(std::log2(1.0 / tol)));
    n = std::clamp(n, 1, 62);
    return psi_tilde(y, n);
}

std::vector<std::pair<double, double>> oscillation_probe(const PsiConfig& config, double x0,
                                                         int samples_per_radius) {
    if (samples_per_radius < 2) {
        throw PreconditionViolation("need at least 2 samples per radius");
    }
    for (std::size_t i = 0; i < config.probe_radii.size(); ++i) {
        if (!(config.probe_radii[i] > 0.0)) {
            throw PreconditionViolation("probe radii must be positive");
        }
        if (i > 0 && config.probe_radii[i] >= config.probe_radii[i - 1]) {
            throw PreconditionViolation("probe radii must be decreasing");
        }
    }
    const double eval_tol = 1e-12;
    std::vector<std::pair<double, double>> out;
    out.reserve(config.probe_radii.size());
    for (double r : config.probe_radii) {
        double lo = std::max(0.0, x0 - r);
        double hi = std::min(config.scale_A, x0 + r);
        double vmin = 0.0, vmax = 0.0;
        for (int j = 0; j < samples_per_radius; ++j) {
            double x = lo + (hi - lo) * static_cast<double>(j) /
                                static_cast<double>(samples_per_radius - 1);
            double v = psi(x, eval_tol, config.scale_A);
            if (j == 0) {
                vmin = vmax = v;
            } else {
                vmin = std::min(vmin, v);
                vmax = std::max(vmax, v);
            }
        }
        out.emplace_back(r, vmax - vmin);
    }
    return out;
}

void emit_plot(const PsiConfig& config, int resolution, const std::string& csv_path,
               const std::string& svg_path) {
    if (resolution < 2) throw PreconditionViolation("resolution must be >= 2");
    if (config.truncation_n < 1) throw PreconditionViolation("truncation_n must be >= 1");
    std::vector<std::pair<double, double>> points;
    points.reserve(static_cast<std::size_t>(resolution));
    for (int i = 0; i < resolution; ++i) {
        double x = config.scale_A * static_cast<double>(i) / static_cast<double>(resolution - 1);
        double y = (x == 0.0) ? 0.0
                              : psi_tilde(std::min(x / config.scale_A, 1.0), config.truncation_n);
        points.emplace_back(x, y);
    }

    std::ofstream csv(csv_path);
    if (!csv) throw IoError("cannot open " + csv_path + " for writing");
    csv << "x,psi\n";
    for (const auto& [x, y] : points) {
        csv << format_double(x) << "," << format_double(y) << "\n";
    }
    if (!csv.good()) throw IoError("failed writing " + csv_path);
    csv.close();

    if (!svg_path.empty()) {
        detail::SvgChart chart("psi over [0, A]");
        chart.add_series("psi", points);
        chart.write(svg_path);
    }
}

}  // namespace sumdecomp::psi
