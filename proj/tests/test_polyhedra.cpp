#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "common.hpp"

#include "toric/error.hpp"

#include <algorithm>
#include <set>

using namespace toric;
using namespace testkit;

namespace {

std::vector<IntVector> box_scan(const HPolyhedron& p, long r) {
    std::vector<IntVector> out;
    IntVector m(p.dim, Integer(-r));
    const LinearSystem s = p.system();
    for (;;) {
        if (s.satisfied_by(to_rational(m))) out.push_back(m);
        std::size_t j = 0;
        while (j < p.dim && m[j] == r) {
            m[j] = -r;
            ++j;
        }
        if (j == p.dim) break;
        ++m[j];
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<IntVector> signed_rays(const Fan& f) {
    std::vector<IntVector> normals = f.rays;
    for (const auto& v : f.rays) {
        IntVector neg = v;
        for (auto& c : neg) c = -c;
        normals.push_back(neg);
    }
    return normals;
}

std::vector<std::size_t> counts(const std::vector<Region>& regions, std::size_t n) {
    std::vector<std::size_t> c(n + 1, 0);
    for (const auto& r : regions) ++c[static_cast<std::size_t>(r.dim)];
    return c;
}

}  // namespace

TEST_CASE("section polytope of 2 D_1 on the projective line") {
    const ToricVariety p1 = corpus("p1");
    const auto p = polytope_of_divisor(p1, tdiv({2, 0}));
    REQUIRE(p.normals.size() == 2);
    CHECK(p.bounds == rvec({-2, 0}));
    const auto s = dim_and_lattice_points(p);
    CHECK(s.dim == 1);
    CHECK(s.points == std::vector<IntVector>{ivec({-2}), ivec({-1}), ivec({0})});
}

TEST_CASE("section polytope of D_1 on the plane is the unit triangle") {
    const ToricVariety p2 = corpus("p2");
    const auto s = dim_and_lattice_points(polytope_of_divisor(p2, tdiv({1, 0, 0})));
    CHECK(s.dim == 2);
    CHECK(s.points == std::vector<IntVector>{ivec({-1, 0}), ivec({-1, 1}), ivec({0, 0})});
}

TEST_CASE("zero divisor gives the origin") {
    for (const auto& name : corpus_names()) {
        const ToricVariety x = corpus(name);
        const auto s = dim_and_lattice_points(polytope_of_divisor(x, TDivisor{IntVector(x.ray_count(), Integer(0))}));
        CHECK(s.dim == 0);
        CHECK(s.points == std::vector<IntVector>{IntVector(x.dim(), Integer(0))});
    }
}

TEST_CASE("empty and unbounded polyhedra") {
    HPolyhedron empty{1, {ivec({1}), ivec({-1})}, rvec({1, 0})};
    const auto s = dim_and_lattice_points(empty);
    CHECK(s.dim == -1);
    CHECK(s.points.empty());
    HPolyhedron ray{1, {ivec({1})}, rvec({0})};
    CHECK_THROWS_AS(dim_and_lattice_points(ray), PreconditionError);
}

TEST_CASE("lattice points agree with a box scan on corpus polytopes") {
    Gen gen(41);
    for (const auto& name : corpus_names()) {
        INFO(name);
        const ToricVariety x = corpus(name);
        for (int t = 0; t < 15; ++t) {
            const TDivisor d = gen.tdiv(x.ray_count(), -1, 2);
            const auto p = polytope_of_divisor(x, d);
            const auto s = dim_and_lattice_points(p);
            CHECK(s.points == box_scan(p, 8));
        }
    }
}

TEST_CASE("polytope dimension and point count are representative-invariant") {
    Gen gen(42);
    for (const auto& name : corpus_names()) {
        const ToricVariety x = corpus(name);
        for (int t = 0; t < 10; ++t) {
            const TDivisor d = gen.tdiv(x.ray_count(), -1, 2);
            const IntVector m = gen.vec(x.dim(), -3, 3);
            const auto a = dim_and_lattice_points(polytope_of_divisor(x, d));
            const auto b = dim_and_lattice_points(polytope_of_divisor(x, d + x.principal(m)));
            CHECK(a.dim == b.dim);
            REQUIRE(a.points.size() == b.points.size());
            // P_{D + div(chi^m)} = P_D - m
            std::set<IntVector> shifted;
            for (auto p : a.points) {
                for (std::size_t i = 0; i < p.size(); ++i) p[i] -= m[i];
                shifted.insert(p);
            }
            CHECK(shifted == std::set<IntVector>(b.points.begin(), b.points.end()));
        }
    }
}

TEST_CASE("cube level ranges") {
    const auto [lo, hi] = cube_levels(ivec({-1, 2, 0}));
    CHECK(lo == -1);
    CHECK(hi == 2);
}

TEST_CASE("torus arrangement on the circle") {
    const auto fc = torus_arrangement_faces({ivec({1}), ivec({-1})}, 1);
    CHECK(fc.face_counts() == std::vector<std::size_t>{1, 1});
}

TEST_CASE("torus arrangement of the plane's signed rays") {
    const auto fc = torus_arrangement_faces(signed_rays(corpus_fan("p2")), 2);
    CHECK(fc.face_counts() == std::vector<std::size_t>{1, 3, 2});
    CHECK(fc.euler_characteristic() == 0);
}

TEST_CASE("empty torus arrangement is one open face") {
    const auto fc = torus_arrangement_faces({}, 2);
    CHECK(fc.face_counts() == std::vector<std::size_t>{0, 0, 1});
}

TEST_CASE("incremental torus kernel matches the brute-force reference") {
    for (const auto& name : corpus_names()) {
        INFO(name);
        const Fan f = corpus_fan(name);
        for (const auto& normals : {f.rays, signed_rays(f)}) {
            const auto a = torus_arrangement_faces(normals, f.rank);
            const auto b = torus_arrangement_faces_reference(normals, f.rank);
            REQUIRE(a.faces().size() == b.faces().size());
            for (std::size_t i = 0; i < a.faces().size(); ++i) {
                CHECK(a.faces()[i].key == b.faces()[i].key);
                CHECK(a.faces()[i].dim == b.faces()[i].dim);
                CHECK(a.faces()[i].sample == b.faces()[i].sample);
            }
            // spanning arrangements tile the torus, which has Euler characteristic 0
            CHECK(a.euler_characteristic() == 0);
        }
    }
}

TEST_CASE("random torus points lie in exactly one face") {
    Gen gen(43);
    for (const auto* name : {"p2", "f1", "p1xp2", "p3"}) {
        INFO(name);
        const Fan f = corpus_fan(name);
        const auto normals = signed_rays(f);
        const auto fc = torus_arrangement_faces(normals, f.rank);
        const int points = 250;
        for (int t = 0; t < points; ++t) {
            const RationalVector x = gen.point(f.rank, gen.pick(std::vector<long>{1, 2, 3, 4, 6, 12}));
            std::size_t hits = 0;
            std::set<std::size_t> active;
            for (std::size_t i = 0; i < normals.size(); ++i)
                if (dot(x, normals[i]).get_den() == 1) active.insert(i);
            for (const auto& face : fc.faces())
                if (face.key == fc.key_of(x)) {
                    ++hits;
                    CHECK(std::set<std::size_t>(face.active.begin(), face.active.end()) == active);
                }
            CHECK(hits == 1);
            CHECK(fc.locate(x).has_value());
        }
    }
}

TEST_CASE("face samples lie in the unit cube and reproduce their keys") {
    for (const auto& name : corpus_names()) {
        const Fan f = corpus_fan(name);
        const auto fc = torus_arrangement_faces(signed_rays(f), f.rank);
        for (const auto& face : fc.faces()) {
            for (const auto& c : face.sample) {
                CHECK(c >= 0);
                CHECK(c < 1);
            }
            CHECK(fc.key_of(face.sample) == face.key);
        }
    }
}

TEST_CASE("affine regions of a single hyperplane") {
    const auto r = affine_region_decomposition({ivec({1})}, rvec({0}));
    CHECK(r.size() == 3);
}

TEST_CASE("affine regions for D = 0 on the projective line") {
    const Fan f = corpus_fan("p1");
    CHECK(affine_region_decomposition(f.rays, rvec({0, 0})).size() == 3);
}

TEST_CASE("affine regions for D = 0 on the plane") {
    const Fan f = corpus_fan("p2");
    const auto oracle = affine_region_decomposition_reference(f.rays, rvec({0, 0, 0}));
    // frozen from the brute-force oracle: 1 vertex, 6 rays, 6 sectors
    CHECK(oracle.size() == 13);
    CHECK(counts(oracle, 2) == std::vector<std::size_t>{1, 6, 6});
    const auto fast = affine_region_decomposition(f.rays, rvec({0, 0, 0}));
    REQUIRE(fast.size() == oracle.size());
    for (std::size_t i = 0; i < fast.size(); ++i) {
        CHECK(fast[i].signs == oracle[i].signs);
        CHECK(fast[i].dim == oracle[i].dim);
    }
}

TEST_CASE("incremental affine regions match the exhaustive reference") {
    Gen gen(44);
    for (const auto& name : corpus_names()) {
        INFO(name);
        const Fan f = corpus_fan(name);
        if (f.ray_count() > 5) continue;
        for (int t = 0; t < 4; ++t) {
            RationalVector bounds;
            for (std::size_t i = 0; i < f.ray_count(); ++i) bounds.emplace_back(gen.integer(-2, 2));
            const auto a = affine_region_decomposition(f.rays, bounds);
            const auto b = affine_region_decomposition_reference(f.rays, bounds);
            REQUIRE(a.size() == b.size());
            for (std::size_t i = 0; i < a.size(); ++i) {
                CHECK(a[i].signs == b[i].signs);
                CHECK(a[i].dim == b[i].dim);
                CHECK(region_system(f.rays, bounds, a[i].signs).satisfied_by(a[i].sample));
            }
        }
    }
}
