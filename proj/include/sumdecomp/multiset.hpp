#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sumdecomp/errors.hpp"

namespace sumdecomp {

// Closed interval [lo, hi] with lo < hi, both finite. All multiset elements
// live inside their declared interval.
struct DomainInterval {
    double lo;
    double hi;

    DomainInterval(double lo_, double hi_);

    double width() const { return hi - lo; }
    bool contains(double x) const { return x >= lo && x <= hi; }
};

inline DomainInterval unit_interval() { return DomainInterval(0.0, 1.0); }

// An unordered finite collection of reals, stored canonically sorted
// ascending. Duplicates are permitted. Equality is equality of the sorted
// element lists.
class Multiset {
public:
    Multiset(std::vector<double> sorted_elements, DomainInterval domain)
        : elements_(std::move(sorted_elements)), domain_(domain) {}

    const std::vector<double>& elements() const { return elements_; }
    const DomainInterval& domain() const { return domain_; }
    std::size_t size() const { return elements_.size(); }
    bool empty() const { return elements_.empty(); }

private:
    std::vector<double> elements_;
    DomainInterval domain_;
};

// Fixed-dimension real vector; the image of a summed element map.
class LatentVector {
public:
    explicit LatentVector(std::vector<double> values);

    const std::vector<double>& values() const { return values_; }
    std::size_t dim() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }

private:
    std::vector<double> values_;
};

struct Seed {
    std::uint64_t value = 0;
};

// Splittable counter-based generator. A (key, counter) pair is hashed per
// draw, so streams are reproducible and children forked with split() are
// statistically independent of the parent.
class Rng {
public:
    explicit Rng(Seed seed) : key_(seed.value), counter_(0) {}

    std::uint64_t next_u64();
    // Uniform in [0, 1) with 53 random bits.
    double next_double();
    double uniform(double lo, double hi);
    // Box-Muller; two uniform draws per call.
    double gaussian(double mean, double stddev);
    // Sum of `shape` exponentials; shape must be a positive integer.
    double gamma(int shape, double scale);
    Rng split();

private:
    std::uint64_t key_;
    std::uint64_t counter_;
};

// Deterministic seed derivation for keyed, order-independent run seeding.
Seed derive_seed(Seed base, std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0);

// Sorts ascending after validating every element is finite and in-domain.
Multiset canonicalize(const std::vector<double>& elements, DomainInterval domain);

// True iff sizes match and sorted elements agree pairwise within tol.
bool multiset_equal(const Multiset& a, const Multiset& b, double tol);

// Text form used by the CLI: comma-separated decimals inside braces,
// e.g. "{0.2,0.7,0.7}".
std::string format_multiset(const Multiset& m);
Multiset parse_multiset(const std::string& text, DomainInterval domain);

// 12 significant digits, always with a decimal point or exponent
// ("1.0", not "1").
std::string format_double(double v);
std::string format_double_list(const std::vector<double>& v);
std::vector<double> parse_double_list(const std::string& text);

}  // namespace sumdecomp
