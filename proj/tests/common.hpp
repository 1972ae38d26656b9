#pragma once

#include "toric/io.hpp"

#include <random>
#include <string>
#include <vector>

namespace testkit {

using namespace toric;

inline Fan corpus_fan(const std::string& name) { return load_fan(std::string(TORIC_CORPUS_DIR) + "/" + name + ".fan"); }

inline ToricVariety corpus(const std::string& name) { return ToricVariety(corpus_fan(name)); }

inline const std::vector<std::string>& corpus_names() {
    static const std::vector<std::string> names{"p1", "p2", "p3", "p1xp1", "p1xp2", "f0", "f1", "f2", "f3"};
    return names;
}

inline DivisorClass cls(std::initializer_list<long> v) {
    DivisorClass c;
    for (long x : v) c.coords.emplace_back(x);
    return c;
}

inline TDivisor tdiv(std::initializer_list<long> v) {
    TDivisor d;
    for (long x : v) d.coeffs.emplace_back(x);
    return d;
}

inline IntVector ivec(std::initializer_list<long> v) {
    IntVector out;
    for (long x : v) out.emplace_back(x);
    return out;
}

inline RationalVector rvec(std::initializer_list<Rational> v) { return RationalVector(v); }

inline std::vector<long> longs(const IntVector& v) {
    std::vector<long> out;
    for (const auto& x : v) out.push_back(x.get_si());
    return out;
}

/// Seeded generators for property tests.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

    IntVector vec(std::size_t n, long lo, long hi) {
        IntVector v;
        for (std::size_t i = 0; i < n; ++i) v.emplace_back(integer(lo, hi));
        return v;
    }

    IntMatrix matrix(std::size_t r, std::size_t c, long lo, long hi) {
        IntMatrix m(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) m(i, j) = integer(lo, hi);
        return m;
    }

    DivisorClass cls(std::size_t rank, long lo, long hi) { return DivisorClass{vec(rank, lo, hi)}; }
    TDivisor tdiv(std::size_t rays, long lo, long hi) { return TDivisor{vec(rays, lo, hi)}; }

    Rational rational(long den) {
        Rational q(integer(-3 * den, 3 * den), den);
        q.canonicalize();
        return q;
    }

    RationalVector point(std::size_t n, long den) {
        RationalVector p;
        for (std::size_t i = 0; i < n; ++i) p.push_back(rational(den));
        return p;
    }

    template <class T>
    const T& pick(const std::vector<T>& v) {
        return v[static_cast<std::size_t>(integer(0, static_cast<long>(v.size()) - 1))];
    }

private:
    std::mt19937_64 rng_;
};

}  // namespace testkit
