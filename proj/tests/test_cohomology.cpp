#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "common.hpp"

#include "toric/error.hpp"

using namespace toric;
using namespace testkit;

namespace {

long binom(long n, long k) {
    if (k < 0 || n < k) return 0;
    long r = 1;
    for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Bott's formula for line bundles on P^n.
CohomologyVector bott(long n, long d) {
    CohomologyVector h(static_cast<std::size_t>(n) + 1, 0);
    h[0] = d >= 0 ? binom(n + d, n) : 0;
    h[static_cast<std::size_t>(n)] += d <= -n - 1 ? binom(-d - 1, n) : 0;
    return h;
}

CohomologyVector kunneth(const CohomologyVector& a, const CohomologyVector& b) {
    CohomologyVector h(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) h[i + j] += a[i] * b[j];
    return h;
}

long chi(const CohomologyVector& h) {
    long c = 0;
    for (std::size_t q = 0; q < h.size(); ++q) c += (q % 2 == 0) ? h[q] : -h[q];
    return c;
}

// Riemann-Roch on a smooth complete toric surface given by rays in cyclic
// order: chi(D) = 1 + (D.D - D.K) / 2 with D_i.D_{i+1} = 1, D_i^2 = -b_i.
long surface_rr(const std::vector<IntVector>& cyclic, const std::vector<long>& a) {
    const std::size_t r = cyclic.size();
    auto inter = [&](std::size_t i, std::size_t j) -> long {
        if (i == j) {
            const auto& p = cyclic[(i + r - 1) % r];
            const auto& n = cyclic[(i + 1) % r];
            const auto& v = cyclic[i];
            const Integer s0 = p[0] + n[0], s1 = p[1] + n[1];
            const Integer b = v[0] != 0 ? Integer(s0 / v[0]) : Integer(s1 / v[1]);
            return -b.get_si();
        }
        return ((i + 1) % r == j || (j + 1) % r == i) ? 1 : 0;
    };
    long dd = 0, dk = 0;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            dd += a[i] * a[j] * inter(i, j);
            dk += a[i] * -1 * inter(i, j);
        }
    return 1 + (dd - dk) / 2;
}

}  // namespace

TEST_CASE("cohomology examples on the projective line and plane") {
    const ToricVariety p1 = corpus("p1");
    CHECK(sheaf_cohomology(p1, tdiv({2, 0})) == CohomologyVector{3, 0});
    CHECK(sheaf_cohomology(p1, tdiv({-2, 0})) == CohomologyVector{0, 1});
    const ToricVariety p2 = corpus("p2");
    CHECK(sheaf_cohomology(p2, tdiv({-3, 0, 0})) == CohomologyVector{0, 0, 1});
    for (const auto& name : corpus_names()) {
        const ToricVariety x = corpus(name);
        CHECK(class_cohomology(x, DivisorClass{IntVector(x.pic_rank(), Integer(0))})[0] == 1);
    }
}

TEST_CASE("cohomology tables") {
    const ToricVariety p1 = corpus("p1");
    const auto t = cohomology_table(p1, class_window(1, -2, 2));
    CHECK(t.at(cls({-2})) == CohomologyVector{0, 1});
    CHECK(t.at(cls({-1})) == CohomologyVector{0, 0});
    CHECK(t.at(cls({0})) == CohomologyVector{1, 0});
    CHECK(t.at(cls({1})) == CohomologyVector{2, 0});
    CHECK(t.at(cls({2})) == CohomologyVector{3, 0});
    CHECK_THROWS_AS(t.at(cls({5})), PreconditionError);
    CHECK(class_cohomology(corpus("p2"), cls({0})) == CohomologyVector{1, 0, 0});
    const ToricVariety q = corpus("p1xp1");
    for (long b = -4; b <= 4; ++b) CHECK(class_cohomology(q, cls({-1, b})) == CohomologyVector{0, 0, 0});
}

TEST_CASE("projective spaces match Bott's formula") {
    for (long n = 1; n <= 3; ++n) {
        const ToricVariety x = corpus("p" + std::to_string(n));
        for (long d = -7; d <= 4; ++d) CHECK(class_cohomology(x, cls({d})) == bott(n, d));
    }
}

TEST_CASE("products match the Kunneth formula") {
    const ToricVariety q = corpus("p1xp1");
    const ToricVariety r = corpus("p1xp2");
    // class coordinates are the two factor degrees
    CHECK(r.class_of(tdiv({1, 0, 0, 0, 0})) == cls({1, 0}));
    CHECK(r.class_of(tdiv({0, 0, 0, 0, 1})) == cls({0, 1}));
    for (long a = -4; a <= 3; ++a)
        for (long b = -4; b <= 3; ++b) {
            CHECK(class_cohomology(q, cls({a, b})) == kunneth(bott(1, a), bott(1, b)));
            CHECK(class_cohomology(r, cls({a, b})) == kunneth(bott(1, a), bott(2, b)));
        }
}

TEST_CASE("Hirzebruch surfaces satisfy Riemann-Roch") {
    Gen gen(51);
    for (long a = 0; a <= 3; ++a) {
        const ToricVariety x = corpus("f" + std::to_string(a));
        // corpus rays are already in cyclic order
        for (int t = 0; t < 40; ++t) {
            const TDivisor d = gen.tdiv(4, -3, 3);
            std::vector<long> coeffs = longs(d.coeffs);
            CHECK(chi(sheaf_cohomology(x, d)) == surface_rr(x.fan().rays, coeffs));
        }
    }
}

TEST_CASE("region kernel matches the direct weight scan") {
    Gen gen(52);
    for (const auto& name : corpus_names()) {
        INFO(name);
        const ToricVariety x = corpus(name);
        for (int t = 0; t < 12; ++t) {
            const TDivisor d = gen.tdiv(x.ray_count(), -3, 3);
            CHECK(sheaf_cohomology(x, d) == sheaf_cohomology_reference(x, d));
        }
    }
}

TEST_CASE("cohomology is class-invariant") {
    Gen gen(53);
    for (const auto& name : corpus_names()) {
        const ToricVariety x = corpus(name);
        for (int t = 0; t < 10; ++t) {
            const TDivisor d = gen.tdiv(x.ray_count(), -2, 2);
            const IntVector m = gen.vec(x.dim(), -3, 3);
            CHECK(sheaf_cohomology(x, d) == sheaf_cohomology(x, d + x.principal(m)));
        }
    }
}

TEST_CASE("global sections are lattice points of the section polytope") {
    Gen gen(54);
    for (const auto& name : corpus_names()) {
        const ToricVariety x = corpus(name);
        for (int t = 0; t < 15; ++t) {
            const TDivisor d = gen.tdiv(x.ray_count(), -2, 3);
            CHECK(static_cast<std::size_t>(sheaf_cohomology(x, d)[0]) ==
                  polytope_of_divisor(x, d).system().count_lattice_points());
        }
    }
}

TEST_CASE("Serre duality on a small window") {
    for (const auto& name : corpus_names()) {
        INFO(name);
        const ToricVariety x = corpus(name);
        const DivisorClass k = x.class_of(canonical_divisor(x.fan()));
        for (const auto& c : class_window(x.pic_rank(), -2, 2)) {
            const auto h = class_cohomology(x, c);
            const auto dual = class_cohomology(x, k - c);
            for (std::size_t q = 0; q < h.size(); ++q) CHECK(h[q] == dual[x.dim() - q]);
        }
    }
}

TEST_CASE("Demazure vanishing for nef classes") {
    for (const auto& name : corpus_names()) {
        const ToricVariety x = corpus(name);
        for (const auto& c : nef_classes(x, 3)) {
            const auto h = class_cohomology(x, c);
            for (std::size_t q = 1; q < h.size(); ++q) CHECK(h[q] == 0);
        }
    }
}

TEST_CASE("Batyrev-Borisov floor examples") {
    const ToricVariety p2 = corpus("p2");
    const QDivisor h = QDivisor::from(tdiv({1, 0, 0}));
    CHECK(bb_vanishing_floor(p2, h) == 2);
    CHECK(class_cohomology(p2, cls({-1})) == CohomologyVector{0, 0, 0});
    CHECK(bb_vanishing_floor(p2, QDivisor::from(tdiv({0, 0, 0}))) == 0);
    const ToricVariety q = corpus("p1xp1");
    CHECK(bb_vanishing_floor(q, QDivisor::from(tdiv({1, 0, 0, 0}))) == 1);
    CHECK(class_cohomology(q, cls({-1, 0}))[0] == 0);
    CHECK_THROWS_AS(bb_vanishing_floor(p2, QDivisor::from(tdiv({-1, 0, 0}))), PreconditionError);
}

TEST_CASE("Batyrev-Borisov floor is confirmed on rational nef divisors") {
    Gen gen(55);
    for (const auto& name : corpus_names()) {
        INFO(name);
        const ToricVariety x = corpus(name);
        const auto nef = nef_classes(x, 2);
        for (int t = 0; t < 10; ++t) {
            Rational scale(gen.integer(1, 5), gen.integer(1, 3));
            scale.canonicalize();
            const QDivisor d = QDivisor::from(x.section(gen.pick(nef))).scaled(scale);
            const int floor = bb_vanishing_floor(x, d);
            const auto h = sheaf_cohomology(x, -d.ceiling());
            for (int q = 0; q < floor && q < static_cast<int>(h.size()); ++q) CHECK(h[static_cast<std::size_t>(q)] == 0);
        }
    }
}

TEST_CASE("reduced cohomology of induced subcomplexes") {
    const ToricVariety p1 = corpus("p1");
    CHECK(induced_reduced_cohomology(p1, 0b00) == std::vector<long>{1, 0});
    CHECK(induced_reduced_cohomology(p1, 0b11) == std::vector<long>{0, 1});
    const ToricVariety p2 = corpus("p2");
    CHECK(induced_reduced_cohomology(p2, 0b111) == std::vector<long>{0, 0, 1});
    CHECK(induced_reduced_cohomology(p2, 0b011) == std::vector<long>{0, 0, 0});
    CHECK(induced_reduced_cohomology(p2, 0b101) == std::vector<long>{0, 0, 0});
    const ToricVariety q = corpus("p1xp1");
    // rays 0 and 1 are opposite: two points
    CHECK(induced_reduced_cohomology(q, 0b0011) == std::vector<long>{0, 1, 0});
}

TEST_CASE("memoized values survive a cache clear") {
    const ToricVariety p3 = corpus("p3");
    const auto before = class_cohomology(p3, cls({-5}));
    clear_cohomology_cache();
    CHECK(class_cohomology(p3, cls({-5})) == before);
    CHECK(before == bott(3, -5));
}
