#include "sumdecomp/countable.hpp"

#include <algorithm>
#include <cmath>

namespace sumdecomp::countable {

CountableUniverse::CountableUniverse(int max_index) : max_index_(max_index) {
    if (max_index < 1) {
        throw PreconditionViolation("universe needs max_index >= 1");
    }
    primes_.reserve(max_index);
    unsigned long candidate = 2;
    while (static_cast<int>(primes_.size()) < max_index) {
        bool is_prime = true;
        for (unsigned long p : primes_) {
            if (p * p > candidate) break;
            if (candidate % p == 0) {
                is_prime = false;
                break;
            }
        }
        if (is_prime) primes_.push_back(candidate);
        candidate += (candidate == 2) ? 1 : 2;
    }
}

namespace {

void check_index(const CountableUniverse& u, int i) {
    if (i < 0 || i >= u.max_index()) {
        throw IndexOutOfUniverse("index " + std::to_string(i) + " outside universe of size " +
                                 std::to_string(u.max_index()));
    }
}

}  // namespace

Rational base4_encode(const CountableUniverse& u, const std::vector<int>& indices) {
    std::vector<int> sorted = indices;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
        if (sorted[i] == sorted[i + 1]) {
            throw DuplicateIndex("index " + std::to_string(sorted[i]) +
                                 " repeats; base-4 encoding requires a set");
        }
    }
    Rational sum(0);
    for (int i : sorted) {
        check_index(u, i);
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 4, static_cast<unsigned long>(i));
        sum += Rational(1, den);
    }
    sum.canonicalize();
    return sum;
}

std::vector<int> base4_decode(const CountableUniverse& u, const Rational& v) {
    if (v < 0) throw NotInImage("negative value is not a base-4 subset encoding");
    Rational rest = v;
    std::vector<int> indices;
    for (int i = 0; i < u.max_index(); ++i) {
        mpz_class digit = rest.get_num() / rest.get_den();  // floor for nonnegative
        if (digit == 1) {
            indices.push_back(i);
            rest -= 1;
        } else if (digit != 0) {
            throw NotInImage("base-4 digit " + digit.get_str() + " at position " +
                             std::to_string(i) + " is not 0 or 1");
        }
        rest *= 4;
    }
    if (rest != 0) {
        throw NotInImage("expansion does not terminate within the universe");
    }
    return indices;
}

BigInt prime_encode(const CountableUniverse& u, const std::vector<int>& indices) {
    BigInt product(1);
    for (int i : indices) {
        check_index(u, i);
        product *= u.primes()[static_cast<std::size_t>(i)];
    }
    return product;
}

std::vector<int> prime_decode(const CountableUniverse& u, const BigInt& n) {
    if (n < 1) throw NotInImage("prime encoding is a product of primes, so >= 1");
    BigInt rest = n;
    std::vector<int> indices;
    for (int i = 0; i < u.max_index(); ++i) {
        unsigned long p = u.primes()[static_cast<std::size_t>(i)];
        while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
            rest /= p;
            indices.push_back(i);
        }
    }
    if (rest != 1) {
        throw NotInImage("factor " + rest.get_str() + " lies outside the universe's primes");
    }
    std::sort(indices.begin(), indices.end());
    return indices;
}

DivergenceWitness divergence_witness(double a) {
    if (a == 0.0) throw ZeroInput("divergence witness needs a != 0");
    if (!std::isfinite(a)) throw NonFiniteElement("divergence witness needs finite a");
    DivergenceWitness w;
    w.increment = a;
    w.partial_sums.reserve(100);
    for (int n = 1; n <= 100; ++n) {
        w.partial_sums.push_back(static_cast<double>(n) * a);
    }
    w.unbounded = true;
    return w;
}

}  // namespace sumdecomp::countable
