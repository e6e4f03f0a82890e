#include "sumdecomp/multiset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace sumdecomp {

DomainInterval::DomainInterval(double lo_, double hi_) : lo(lo_), hi(hi_) {
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
        throw DomainViolation("interval bounds must be finite");
    }
    if (!(lo < hi)) {
        throw DomainViolation("interval requires lo < hi");
    }
}

LatentVector::LatentVector(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) {
        throw ShapeMismatch("latent vector must have dimension >= 1");
    }
    for (double v : values_) {
        if (!std::isfinite(v)) {
            throw NonFiniteElement("latent vector entries must be finite");
        }
    }
}

namespace {

// SplitMix64 finalizer (Stafford variant 13).
std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

std::uint64_t Rng::next_u64() {
    return mix64(key_ ^ mix64(counter_++));
}

double Rng::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
    return lo + (hi - lo) * next_double();
}

double Rng::gaussian(double mean, double stddev) {
    double u1 = next_double();
    double u2 = next_double();
    while (u1 == 0.0) u1 = next_double();
    double r = std::sqrt(-2.0 * std::log(u1));
    return mean + stddev * r * std::cos(2.0 * M_PI * u2);
}

double Rng::gamma(int shape, double scale) {
    if (shape < 1) {
        throw PreconditionViolation("gamma shape must be a positive integer");
    }
    double acc = 0.0;
    for (int i = 0; i < shape; ++i) {
        double u = next_double();
        while (u == 0.0) u = next_double();
        acc -= std::log(u);
    }
    return scale * acc;
}

Rng Rng::split() {
    Rng child(Seed{next_u64()});
    return child;
}

Seed derive_seed(Seed base, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    std::uint64_t h = base.value;
    h = mix64(h ^ mix64(a));
    h = mix64(h ^ mix64(b));
    h = mix64(h ^ mix64(c));
    return Seed{h};
}

Multiset canonicalize(const std::vector<double>& elements, DomainInterval domain) {
    for (double x : elements) {
        if (!std::isfinite(x)) {
            throw NonFiniteElement("multiset elements must be finite");
        }
    }
    for (double x : elements) {
        if (!domain.contains(x)) {
            throw DomainViolation("element " + format_double(x) + " outside [" +
                                  format_double(domain.lo) + ", " + format_double(domain.hi) + "]");
        }
    }
    std::vector<double> sorted = elements;
    std::sort(sorted.begin(), sorted.end());
    return Multiset(std::move(sorted), domain);
}

bool multiset_equal(const Multiset& a, const Multiset& b, double tol) {
    if (tol < 0.0) {
        throw PreconditionViolation("tolerance must be >= 0");
    }
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::abs(a.elements()[i] - b.elements()[i]) > tol) return false;
    }
    return true;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    std::string s(buf);
    if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
        s.find("inf") == std::string::npos && s.find("nan") == std::string::npos) {
        s += ".0";
    }
    return s;
}

std::string format_double_list(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += format_double(v[i]);
    }
    return out;
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::string trimmed;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) trimmed += c;
    }
    if (trimmed.empty()) return out;
    std::stringstream ss(trimmed);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) {
            throw FormatError("empty entry in number list: '" + text + "'");
        }
        std::size_t pos = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &pos);
        } catch (const std::exception&) {
            throw FormatError("bad number '" + item + "'");
        }
        if (pos != item.size()) {
            throw FormatError("bad number '" + item + "'");
        }
        out.push_back(v);
    }
    return out;
}

std::string format_multiset(const Multiset& m) {
    return "{" + format_double_list(m.elements()) + "}";
}

Multiset parse_multiset(const std::string& text, DomainInterval domain) {
    std::string trimmed;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) trimmed += c;
    }
    if (trimmed.size() < 2 || trimmed.front() != '{' || trimmed.back() != '}') {
        throw FormatError("multiset text must look like {a,b,c}: '" + text + "'");
    }
    std::vector<double> elems = parse_double_list(trimmed.substr(1, trimmed.size() - 2));
    return canonicalize(elems, domain);
}

}  // namespace sumdecomp
