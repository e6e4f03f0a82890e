#pragma once

#include <gmpxx.h>

#include <vector>

#include "sumdecomp/errors.hpp"

namespace sumdecomp::countable {

using Rational = mpq_class;
using BigInt = mpz_class;

// A bounded countable universe addressed by index 0..max_index-1; callers
// own the bijection between indices and their actual elements. The prime
// table for the multiset encoding is sieved at construction.
class CountableUniverse {
public:
    explicit CountableUniverse(int max_index);

    int max_index() const { return max_index_; }
    const std::vector<unsigned long>& primes() const { return primes_; }

private:
    int max_index_;
    std::vector<unsigned long> primes_;
};

// Subsets (no repeats) to sum_{i in S} 4^{-i}, exactly. Injective over
// subsets; fails on multisets, which is what the collision witness below
// demonstrates.
Rational base4_encode(const CountableUniverse& u, const std::vector<int>& indices);

// Inverse by base-4 digit extraction; every digit must be 0 or 1 and the
// expansion must terminate within max_index digits.
std::vector<int> base4_decode(const CountableUniverse& u, const Rational& v);

// Multisets (repeats allowed) to the product of the indexed primes. The
// paper-facing encoding is the negative logarithm of this integer; the
// integer itself is the exact carrier.
BigInt prime_encode(const CountableUniverse& u, const std::vector<int>& indices);

// Inverse by trial division over the universe's prime table.
std::vector<int> prime_decode(const CountableUniverse& u, const BigInt& n);

// Constructive content of the divergence remark: any nonzero per-element
// value a makes the infinite-multiset sum n*a unbounded.
struct DivergenceWitness {
    double increment;
    std::vector<double> partial_sums;  // n*a for n = 1..100
    bool unbounded;
};

DivergenceWitness divergence_witness(double a);

}  // namespace sumdecomp::countable
