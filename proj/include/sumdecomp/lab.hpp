#pragma once

#include <optional>
#include <utility>

#include "sumdecomp/power_sum.hpp"

namespace sumdecomp::lab {

// An opaque per-element map x -> R^N; the lab treats it as a black box.
// eval must be total, finite and thread-safe on the declared domain.
struct ElementMap {
    int dim_out;
    std::function<std::vector<double>(double)> eval;
};

// A small random tanh network (1 -> hidden -> dim_out), used as a generic
// continuous element map in searches and adversary runs.
ElementMap random_smooth_map(int dim_out, Seed seed, int hidden = 8);

struct DecompositionCheck {
    bool pass;
    double worst_residual;
    std::optional<Multiset> worst_sample;
};

// Verifies |rho(sum_x phi(x)) - f(X)| <= tol on every sample.
DecompositionCheck check_sum_decomposition(const ElementMap& phi, const LatentFunction& rho,
                                           const SetFunction& f,
                                           const std::vector<Multiset>& samples, double tol);

struct CollisionReport {
    bool found;
    std::optional<Multiset> x;
    std::optional<Multiset> y;
    // For a found pair, the max-norm distance of their summed latents;
    // otherwise the smallest distance seen across all trials.
    double latent_distance;
};

// Samples random pairs of distinct size-M multisets over `domain` and
// reports the first pair whose summed latents come within latent_eps in
// max-norm. Deterministic given the seed.
CollisionReport collision_search(const ElementMap& phi, int set_size, long trials,
                                 double latent_eps, DomainInterval domain, Seed seed);

// rho applied to the coordinate-wise maximum of phi over the elements.
double max_decompose_eval(const ElementMap& phi, const LatentFunction& rho, const Multiset& X);

struct AdversaryReport {
    std::vector<double> max_phi_original;
    std::vector<double> max_phi_modified;
    double sum_original;
    double sum_modified;
};

// For N < M and distinct elements, constructs x~ by overwriting one element
// that attains no coordinate maximum with the element attaining the first
// coordinate's maximum. The coordinate-wise phi-maxima of x and x~ agree
// bit-exactly while the element sums differ, witnessing that the element
// sum admits no max-decomposition through phi. Argmax ties break toward
// the lowest element index after canonical sorting.
std::pair<Multiset, AdversaryReport> max_collision_adversary(const ElementMap& phi,
                                                             const Multiset& x);

}  // namespace sumdecomp::lab
