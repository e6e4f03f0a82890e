#include "sumdecomp/lab.hpp"

#include <cmath>
#include <limits>

namespace sumdecomp::lab {

namespace {

std::vector<double> eval_checked(const ElementMap& phi, double x) {
    std::vector<double> v = phi.eval(x);
    if (static_cast<int>(v.size()) != phi.dim_out) {
        throw ShapeMismatch("element map returned dimension " + std::to_string(v.size()) +
                            ", declared " + std::to_string(phi.dim_out));
    }
    return v;
}

std::vector<double> summed_latent(const ElementMap& phi, const Multiset& X) {
    std::vector<double> acc(static_cast<std::size_t>(phi.dim_out), 0.0);
    for (double x : X.elements()) {
        std::vector<double> v = eval_checked(phi, x);
        for (std::size_t n = 0; n < acc.size(); ++n) acc[n] += v[n];
    }
    return acc;
}

}  // namespace

ElementMap random_smooth_map(int dim_out, Seed seed, int hidden) {
    if (dim_out < 1) throw PreconditionViolation("element map needs dim_out >= 1");
    Rng rng(seed);
    std::vector<double> w(hidden), b(hidden), c(dim_out);
    std::vector<std::vector<double>> a(dim_out, std::vector<double>(hidden));
    for (int j = 0; j < hidden; ++j) {
        w[j] = rng.uniform(-3.0, 3.0);
        b[j] = rng.uniform(-2.0, 2.0);
    }
    for (int n = 0; n < dim_out; ++n) {
        c[n] = rng.uniform(-1.0, 1.0);
        for (int j = 0; j < hidden; ++j) a[n][j] = rng.uniform(-1.0, 1.0);
    }
    auto eval = [w, b, c, a, hidden, dim_out](double x) {
        std::vector<double> h(static_cast<std::size_t>(hidden));
        for (int j = 0; j < hidden; ++j) h[j] = std::tanh(w[j] * x + b[j]);
        std::vector<double> out(static_cast<std::size_t>(dim_out));
        for (int n = 0; n < dim_out; ++n) {
            double acc = c[n];
            for (int j = 0; j < hidden; ++j) acc += a[n][j] * h[j];
            out[n] = acc;
        }
        return out;
    };
    return ElementMap{dim_out, eval};
}

DecompositionCheck check_sum_decomposition(const ElementMap& phi, const LatentFunction& rho,
                                           const SetFunction& f,
                                           const std::vector<Multiset>& samples, double tol) {
    DecompositionCheck report{true, 0.0, std::nullopt};
    for (const Multiset& X : samples) {
        double lhs = rho(LatentVector(summed_latent(phi, X)));
        double residual = std::abs(lhs - f(X));
        if (residual > report.worst_residual) {
            report.worst_residual = residual;
            report.worst_sample = X;
        }
        if (residual > tol) report.pass = false;
    }
    return report;
}

CollisionReport collision_search(const ElementMap& phi, int set_size, long trials,
                                 double latent_eps, DomainInterval domain, Seed seed) {
    if (trials < 1) throw PreconditionViolation("collision search needs trials >= 1");
    if (set_size < 1) throw PreconditionViolation("collision search needs set_size >= 1");
    Rng rng(seed);
    auto sample = [&]() {
        std::vector<double> elems(static_cast<std::size_t>(set_size));
        for (double& e : elems) e = rng.uniform(domain.lo, domain.hi);
        return canonicalize(elems, domain);
    };
    double min_distance = std::numeric_limits<double>::infinity();
    for (long t = 0; t < trials; ++t) {
        Multiset a = sample();
        Multiset b = sample();
        int retries = 0;
        while (multiset_equal(a, b, 1e-9) && retries++ < 100) b = sample();
        if (multiset_equal(a, b, 1e-9)) continue;
        std::vector<double> za = summed_latent(phi, a);
        std::vector<double> zb = summed_latent(phi, b);
        double dist = 0.0;
        for (std::size_t n = 0; n < za.size(); ++n) {
            dist = std::max(dist, std::abs(za[n] - zb[n]));
        }
        min_distance = std::min(min_distance, dist);
        if (dist <= latent_eps) {
            return CollisionReport{true, a, b, dist};
        }
    }
    return CollisionReport{false, std::nullopt, std::nullopt, min_distance};
}

double max_decompose_eval(const ElementMap& phi, const LatentFunction& rho, const Multiset& X) {
    if (X.empty()) throw EmptySet("max-decomposition needs at least one element");
    std::vector<double> maxed;
    bool first = true;
    for (double x : X.elements()) {
        std::vector<double> v = eval_checked(phi, x);
        if (first) {
            maxed = v;
            first = false;
        } else {
            for (std::size_t n = 0; n < maxed.size(); ++n) {
                maxed[n] = std::max(maxed[n], v[n]);
            }
        }
    }
    return rho(LatentVector(std::move(maxed)));
}

std::pair<Multiset, AdversaryReport> max_collision_adversary(const ElementMap& phi,
                                                             const Multiset& x) {
    const int m_count = static_cast<int>(x.size());
    const int n_dim = phi.dim_out;
    if (n_dim >= m_count) {
        throw PreconditionViolation("adversary requires latent dimension N < set size M");
    }
    const std::vector<double>& elems = x.elements();
    for (int i = 0; i + 1 < m_count; ++i) {
        if (elems[i] == elems[i + 1]) {
            throw PreconditionViolation("adversary requires pairwise distinct elements");
        }
    }

    std::vector<std::vector<double>> values(static_cast<std::size_t>(m_count));
    for (int i = 0; i < m_count; ++i) values[i] = eval_checked(phi, elems[i]);

    std::vector<int> argmax(static_cast<std::size_t>(n_dim), 0);
    for (int n = 0; n < n_dim; ++n) {
        int best = 0;
        for (int i = 1; i < m_count; ++i) {
            if (values[i][n] > values[best][n]) best = i;
        }
        argmax[n] = best;
    }

    std::vector<bool> attains_max(static_cast<std::size_t>(m_count), false);
    for (int n = 0; n < n_dim; ++n) attains_max[argmax[n]] = true;
    int overwritten = -1;
    for (int i = 0; i < m_count; ++i) {
        if (!attains_max[i]) {
            overwritten = i;
            break;
        }
    }
    // N < M guarantees some element attains no maximum.
    std::vector<double> modified = elems;
    modified[overwritten] = elems[argmax[0]];
    Multiset x_tilde = canonicalize(modified, x.domain());

    AdversaryReport report;
    report.max_phi_original.resize(static_cast<std::size_t>(n_dim));
    report.max_phi_modified.resize(static_cast<std::size_t>(n_dim));
    for (int n = 0; n < n_dim; ++n) {
        report.max_phi_original[n] = values[argmax[n]][n];
    }
    {
        std::vector<std::vector<double>> mod_values(static_cast<std::size_t>(m_count));
        for (int i = 0; i < m_count; ++i) mod_values[i] = eval_checked(phi, x_tilde.elements()[i]);
        for (int n = 0; n < n_dim; ++n) {
            double best = mod_values[0][n];
            for (int i = 1; i < m_count; ++i) best = std::max(best, mod_values[i][n]);
            report.max_phi_modified[n] = best;
        }
    }
    report.sum_original = 0.0;
    for (double v : elems) report.sum_original += v;
    report.sum_modified = 0.0;
    for (double v : x_tilde.elements()) report.sum_modified += v;
    return {x_tilde, report};
}

}  // namespace sumdecomp::lab
