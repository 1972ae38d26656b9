// Parallel kernels against their serial references. Pass the thread count as
// the benchmark argument; 1 runs the OpenMP kernel on a single thread.

#include "toric/cohomology.hpp"
#include "toric/diagres.hpp"
#include "toric/io.hpp"
#include "toric/parallel.hpp"
#include "toric/polyhedra.hpp"

#include <benchmark/benchmark.h>

#include <string>

namespace {

using namespace toric;

ToricVariety corpus(const std::string& name) {
    return ToricVariety(load_fan(std::string(TORIC_CORPUS_DIR) + "/" + name + ".fan"));
}

std::vector<IntVector> signed_rays(const Fan& f) {
    std::vector<IntVector> normals = f.rays;
    for (auto v : f.rays) {
        for (auto& c : v) c = -c;
        normals.push_back(v);
    }
    return normals;
}

TDivisor sample_divisor(const ToricVariety& x) {
    TDivisor d{IntVector(x.ray_count(), Integer(0))};
    for (std::size_t i = 0; i < x.ray_count(); ++i) d.coeffs[i] = (i % 3 == 0) ? -3 : (i % 3 == 1 ? 1 : -1);
    return d;
}

void BM_TorusFaces(benchmark::State& state) {
    const ThreadCountGuard guard(static_cast<int>(state.range(0)));
    const Fan f = corpus("p3").fan();
    const auto normals = signed_rays(f);
    for (auto _ : state) benchmark::DoNotOptimize(torus_arrangement_faces(normals, f.rank).faces().size());
}

void BM_TorusFacesReference(benchmark::State& state) {
    const Fan f = corpus("p3").fan();
    const auto normals = signed_rays(f);
    for (auto _ : state) benchmark::DoNotOptimize(torus_arrangement_faces_reference(normals, f.rank).faces().size());
}

void BM_AffineRegions(benchmark::State& state) {
    const ThreadCountGuard guard(static_cast<int>(state.range(0)));
    const Fan f = corpus("p1xp2").fan();
    const RationalVector bounds{Rational(1), Rational(-2), Rational(0), Rational(2), Rational(-1)};
    for (auto _ : state) benchmark::DoNotOptimize(affine_region_decomposition(f.rays, bounds).size());
}

void BM_AffineRegionsReference(benchmark::State& state) {
    const Fan f = corpus("p1xp2").fan();
    const RationalVector bounds{Rational(1), Rational(-2), Rational(0), Rational(2), Rational(-1)};
    for (auto _ : state) benchmark::DoNotOptimize(affine_region_decomposition_reference(f.rays, bounds).size());
}

void BM_Cohomology(benchmark::State& state) {
    const ThreadCountGuard guard(static_cast<int>(state.range(0)));
    const ToricVariety x = corpus("p1xp2");
    const TDivisor d = sample_divisor(x);
    for (auto _ : state) {
        clear_cohomology_cache();
        benchmark::DoNotOptimize(sheaf_cohomology(x, d));
    }
}

void BM_CohomologyReference(benchmark::State& state) {
    const ToricVariety x = corpus("p1xp2");
    const TDivisor d = sample_divisor(x);
    for (auto _ : state) benchmark::DoNotOptimize(sheaf_cohomology_reference(x, d));
}

void BM_CohomologyTable(benchmark::State& state) {
    const ThreadCountGuard guard(static_cast<int>(state.range(0)));
    const ToricVariety x = corpus("f2");
    const auto classes = class_window(x.pic_rank(), -3, 3);
    for (auto _ : state) {
        clear_cohomology_cache();
        benchmark::DoNotOptimize(cohomology_table(x, classes).values.size());
    }
}

void BM_Audits(benchmark::State& state) {
    const ThreadCountGuard guard(static_cast<int>(state.range(0)));
    const ToricVariety x = corpus("p3");
    const auto k = build_k_terms(x);
    for (auto _ : state) benchmark::DoNotOptimize(audit_terms(x, k).size());
}

void thread_counts(benchmark::internal::Benchmark* b) {
    b->Arg(1);
    if (max_threads() > 1) b->Arg(max_threads());
}

}  // namespace

BENCHMARK(BM_TorusFaces)->Apply(thread_counts)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TorusFacesReference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AffineRegions)->Apply(thread_counts)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AffineRegionsReference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Cohomology)->Apply(thread_counts)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CohomologyReference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CohomologyTable)->Apply(thread_counts)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Audits)->Apply(thread_counts)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
