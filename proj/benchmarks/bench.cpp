// Micro benchmarks for the hot paths: geodesic distances, the cut
// extraction, shortest-vector enumeration, and the constants engine.
#include "sysgeo/cell_graph.hpp"
#include "sysgeo/induction.hpp"
#include "sysgeo/lattice.hpp"
#include "sysgeo/minsurf.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace sysgeo;

namespace {

CubicalTorus random_mesh(std::vector<int> dims, unsigned seed) {
    std::size_t cells = 1;
    for (int d : dims) cells *= static_cast<std::size_t>(d);
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> pick(512, 2047);
    std::vector<double> weights(cells);
    for (auto& w : weights) w = pick(rng) / 1024.0;
    return build_conformal_torus(std::move(dims), std::move(weights));
}

void bm_distance_field(benchmark::State& state) {
    auto g = ambient_graph(random_mesh({64, 64}, 1));
    for (auto _ : state) benchmark::DoNotOptimize(distance_field(g, 0).dist.back());
}
BENCHMARK(bm_distance_field);

void bm_min_hypersurface(benchmark::State& state) {
    auto g = ambient_graph(random_mesh({16, 16, 16}, 2));
    for (auto _ : state) benchmark::DoNotOptimize(min_hypersurface(g, 1u).surface.area);
}
BENCHMARK(bm_min_hypersurface);

void bm_shortest_vector(benchmark::State& state) {
    auto L = random_lattice(8, 3);
    for (auto _ : state) benchmark::DoNotOptimize(lattice_systole(L));
}
BENCHMARK(bm_shortest_vector);

void bm_epsilon_table(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(epsilon_table(32, BetaRule::Optimal).rows.size());
}
BENCHMARK(bm_epsilon_table);

void bm_certificate(benchmark::State& state) {
    auto mesh = build_flat_torus({1.0, 1.0}, 32);
    for (auto _ : state)
        benchmark::DoNotOptimize(guth_certificate(mesh, {1u, 2u}, 0.4).ball_volume);
}
BENCHMARK(bm_certificate);

} // namespace

BENCHMARK_MAIN();
