#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "common.hpp"

#include "toric/error.hpp"

#include <map>

using namespace toric;
using namespace testkit;

namespace {

using PairCount = std::map<std::pair<DivisorClass, DivisorClass>, long>;

PairCount pairs_at(const ResolutionTerms& k, std::size_t p) {
    PairCount out;
    for (const auto& t : k.terms.at(p)) out[{t.eprime, t.e}] += t.mult;
    return out;
}

long thomsen_denominator(const Fan& f) {
    long m = 0;
    for (const auto& v : f.rays) {
        long s = 0;
        for (const auto& c : v) s += std::labs(c.get_si());
        m = std::max(m, s);
    }
    return 1 + m;
}

}  // namespace

TEST_CASE("Bondal labels on the projective line and plane") {
    const ToricVariety p1 = corpus("p1");
    auto l0 = bondal_label(p1, rvec({0}));
    CHECK(l0.cls == cls({0}));
    CHECK(l0.fractional == rvec({0, 0}));
    auto l1 = bondal_label(p1, rvec({Rational(1, 2)}));
    CHECK(l1.cls == cls({-1}));
    CHECK(l1.fractional == rvec({Rational(1, 2), Rational(1, 2)}));
    CHECK(l1.floor_divisor == tdiv({0, -1}));

    const ToricVariety p2 = corpus("p2");
    auto l2 = bondal_label(p2, rvec({Rational(1, 3), Rational(1, 3)}));
    CHECK(l2.cls == cls({-1}));
    CHECK(l2.fractional == rvec({Rational(1, 3), Rational(1, 3), Rational(1, 3)}));
}

TEST_CASE("labels are lift-independent and match the rounded divisor") {
    Gen gen(61);
    for (const auto& name : corpus_names()) {
        const ToricVariety x = corpus(name);
        for (int t = 0; t < 50; ++t) {
            const RationalVector p = gen.point(x.dim(), gen.integer(1, 7));
            RationalVector shifted = p;
            for (auto& c : shifted) c += gen.integer(-5, 5);
            const auto a = bondal_label(x, p);
            const auto b = bondal_label(x, shifted);
            CHECK(a.cls == b.cls);
            CHECK(a.fractional == b.fractional);
            CHECK(a.cls == x.class_of(a.floor_divisor));
            for (const auto& c : a.fractional) {
                CHECK(c >= 0);
                CHECK(c < 1);
            }
        }
    }
}

TEST_CASE("Thomsen collections") {
    CHECK(thomsen_collection(corpus("p1")) == std::vector<DivisorClass>{cls({-1}), cls({0})});
    CHECK(thomsen_collection(corpus("p2")) == std::vector<DivisorClass>{cls({-2}), cls({-1}), cls({0})});
    CHECK(thomsen_collection(corpus("p1xp1")) ==
          std::vector<DivisorClass>{cls({-1, -1}), cls({-1, 0}), cls({0, -1}), cls({0, 0})});
}

TEST_CASE("Thomsen collection stabilizes under grid refinement") {
    for (const auto& name : corpus_names()) {
        INFO(name);
        const ToricVariety x = corpus(name);
        const long m = thomsen_denominator(x.fan());
        const auto coarse = thomsen_by_sampling(x, m);
        CHECK(coarse == thomsen_by_sampling(x, 2 * m));
        CHECK(coarse == thomsen_collection(x));
    }
}

TEST_CASE("diagonal strata of the projective line") {
    const auto s = diagonal_strata(corpus("p1"));
    REQUIRE(s.size() == 2);
    CHECK(s[0].p == 0);
    CHECK(s[0].eprime == cls({0}));
    CHECK(s[0].e == cls({0}));
    CHECK(s[1].p == 1);
    CHECK(s[1].eprime == cls({-1}));
    CHECK(s[1].e == cls({-1}));
}

TEST_CASE("diagonal strata of the plane") {
    const auto k = build_k_terms(corpus("p2"));
    CHECK(k.ranks() == std::vector<long>{1, 3, 2});
    CHECK(pairs_at(k, 0) == PairCount{{{cls({0}), cls({0})}, 1}});
    CHECK(pairs_at(k, 1) == PairCount{{{cls({-1}), cls({-1})}, 3}});
    CHECK(pairs_at(k, 2) == PairCount{{{cls({-1}), cls({-2})}, 1}, {{cls({-2}), cls({-1})}, 1}});
    // samples named in the hand enumeration
    const ToricVariety p2 = corpus("p2");
    CHECK(bondal_label(p2, rvec({Rational(1, 4), Rational(1, 4)})).cls == cls({-1}));
    CHECK(bondal_label(p2, rvec({Rational(-1, 4), Rational(-1, 4)})).cls == cls({-2}));
    CHECK(bondal_label(p2, rvec({Rational(1, 2), Rational(3, 4)})).cls == cls({-2}));
    CHECK(bondal_label(p2, rvec({Rational(-1, 2), Rational(-3, 4)})).cls == cls({-1}));
}

TEST_CASE("diagonal strata of the product of lines is the box product") {
    const auto k = build_k_terms(corpus("p1xp1"));
    CHECK(k.ranks() == std::vector<long>{1, 2, 1});
    CHECK(pairs_at(k, 0) == PairCount{{{cls({0, 0}), cls({0, 0})}, 1}});
    CHECK(pairs_at(k, 1) == PairCount{{{cls({-1, 0}), cls({-1, 0})}, 1}, {{cls({0, -1}), cls({0, -1})}, 1}});
    CHECK(pairs_at(k, 2) == PairCount{{{cls({-1, -1}), cls({-1, -1})}, 1}});
}

TEST_CASE("resolution ranks") {
    CHECK(build_k_terms(corpus("p1")).ranks() == std::vector<long>{1, 1});
    CHECK(build_k_terms(corpus("p2")).ranks() == std::vector<long>{1, 3, 2});
    CHECK(build_k_terms(corpus("p1xp1")).ranks() == std::vector<long>{1, 2, 1});
}

TEST_CASE("degree-zero piece is (O, O) on the Fano corpus but not on F_2 and F_3") {
    for (const auto* name : {"p1", "p2", "p3", "p1xp1", "p1xp2", "f0", "f1"})
        CHECK(build_k_terms(corpus(name)).degree_zero_is_trivial());
    for (const auto* name : {"f2", "f3"}) {
        const auto k = build_k_terms(corpus(name));
        CHECK_FALSE(k.degree_zero_is_trivial());
        // the extra vertices contribute pairs with no global sections on either side
        for (const auto& t : k.terms[0]) {
            if (t.e.is_zero()) continue;
            CHECK_FALSE(corpus(name).is_effective(t.e));
        }
    }
}

TEST_CASE("resolution invariants on the corpus") {
    for (const auto& name : corpus_names()) {
        INFO(name);
        const ToricVariety x = corpus(name);
        const auto k = build_k_terms(x);
        CHECK(k.length() <= x.dim());
        long euler = 0;
        const auto ranks = k.ranks();
        for (std::size_t p = 0; p < ranks.size(); ++p) euler += (p % 2 == 0) ? ranks[p] : -ranks[p];
        CHECK(euler == 0);
        for (std::size_t p = 0; p < k.terms.size(); ++p) {
            PairCount swapped;
            for (const auto& [pair, m] : pairs_at(k, p)) swapped[{pair.second, pair.first}] += m;
            CHECK(swapped == pairs_at(k, p));
        }
        // every label belongs to the Thomsen collection
        const auto th = thomsen_collection(x);
        for (const auto& level : k.terms)
            for (const auto& t : level) {
                CHECK(std::binary_search(th.begin(), th.end(), t.e));
                CHECK(std::binary_search(th.begin(), th.end(), t.eprime));
            }
    }
}

TEST_CASE("audit examples on the plane") {
    const ToricVariety p2 = corpus("p2");
    const auto audits = audit_terms(p2, build_k_terms(p2));
    REQUIRE(audits.size() == 4);
    for (const auto& a : audits) {
        CHECK(a.passed());
        CHECK(a.failures.empty());
        if (a.p == 2 && a.e == cls({-2})) {
            CHECK(a.d == ivec({0, 0, 2}));
            CHECK(a.dim_p == 2);
        }
        if (a.p == 1) CHECK(a.dim_p == 2);
        if (a.p == 0) CHECK(a.dim_p == 0);
    }
}

TEST_CASE("audits pass on every corpus variety") {
    for (const auto& name : corpus_names()) {
        INFO(name);
        const ToricVariety x = corpus(name);
        for (const auto& a : audit_terms(x, build_k_terms(x))) {
            INFO(a.e.str());
            CHECK(a.passed());
            CHECK(x.class_of(TDivisor{a.d}) == -a.e);
        }
    }
}

TEST_CASE("a corrupted term fails its audits") {
    const ToricVariety p2 = corpus("p2");
    ResolutionTerms k = build_k_terms(p2);
    // label E = O(1) is not anti-effective and does not match its sample
    k.terms[2][0].e = cls({1});
    const auto audits = audit_terms(p2, k);
    const auto bad_it = std::find_if(audits.begin(), audits.end(), [](const TermAudit& a) { return a.e == cls({1}); });
    REQUIRE(bad_it != audits.end());
    const auto& bad = *bad_it;
    CHECK_FALSE(bad.effective);
    CHECK_FALSE(bad.frobenius);
    CHECK_FALSE(bad.failures.empty());
}

TEST_CASE("ample support examples") {
    const ToricVariety p2 = corpus("p2");
    const auto r2 = certify_ample_support(p2, build_k_terms(p2), {tdiv({1, 0, 0})});
    CHECK(r2.all_symbolic());
    CHECK(r2.all_empirical());
    CHECK(class_cohomology(p2, cls({-3}))[0] == 0);
    CHECK(class_cohomology(p2, cls({-3}))[1] == 0);
    const ToricVariety p1 = corpus("p1");
    const auto r1 = certify_ample_support(p1, build_k_terms(p1), {tdiv({1, 0})});
    CHECK(r1.all_symbolic());
    CHECK(class_cohomology(p1, cls({-2}))[0] == 0);
    for (const auto& t : r1.terms) {
        CHECK(t.status() == "proven");
        if (t.p == 0) CHECK(t.violations.empty());
    }
}

TEST_CASE("non-ample support samples are rejected") {
    const ToricVariety q = corpus("p1xp1");
    CHECK_THROWS_AS(certify_ample_support(q, build_k_terms(q), {tdiv({1, 0, 0, 0})}), PreconditionError);
}

TEST_CASE("support replays record a valid epsilon") {
    const ToricVariety f1 = corpus("f1");
    const auto samples = ample_classes(f1, 3);
    REQUIRE(samples.size() >= 2);
    const auto r = certify_ample_support(f1, build_k_terms(f1), {f1.section(samples[0]), f1.section(samples[1])});
    for (const auto& t : r.terms) {
        REQUIRE(t.replays.size() == 2);
        for (const auto& rp : t.replays) {
            CHECK(rp.epsilon > 0);
            CHECK(rp.epsilon < 1);
            CHECK(rp.ok());
        }
    }
}
