#include <benchmark/benchmark.h>

#include <random>

#include "refl4/construction.hpp"
#include "refl4/coxeter.hpp"

namespace {

using namespace refl4;

Rational frac(long p, long q) {
  Rational r{Integer(p), Integer(q)};
  r.canonicalize();
  return r;
}

BallConfiguration square_configuration() {
  const CubicalCell s[] = {CubicalCell::square({0, 0, 0, 0}, 0, 1)};
  return generate_configuration(build_complex(s));
}

BallConfiguration cube_configuration() { return generate_configuration(build_complex(four_cube_squares())); }

std::vector<Sphere> random_spheres(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> num(-24, 24), den(1, 12), rad(1, 40);
  std::vector<Sphere> out;
  while (out.size() < n) {
    Vec4 c;
    for (auto& x : c) x = frac(num(rng), den(rng));
    out.emplace_back(c, frac(rad(rng), den(rng)));
  }
  return out;
}

void BM_ClassifyPair(benchmark::State& state) {
  const auto spheres = random_spheres(256, 1);
  std::size_t k = 0;
  for (auto _ : state) {
    const auto& a = spheres[k % 256];
    const auto& b = spheres[(k * 7 + 1) % 256];
    if (!(a == b)) benchmark::DoNotOptimize(classify_pair(a, b));
    ++k;
  }
}
BENCHMARK(BM_ClassifyPair);

void BM_IntersectBalls(benchmark::State& state) {
  const auto spheres = random_spheres(400, 2);
  const std::size_t k = static_cast<std::size_t>(state.range(0));
  std::size_t offset = 0;
  for (auto _ : state) {
    std::span<const Sphere> group(spheres.data() + offset % (spheres.size() - k), k);
    benchmark::DoNotOptimize(intersect_balls(group));
    offset += k;
  }
}
BENCHMARK(BM_IntersectBalls)->DenseRange(2, 4);

void BM_NerveFourCube(benchmark::State& state) {
  const auto conf = cube_configuration();
  for (auto _ : state) benchmark::DoNotOptimize(nerve(conf, 3, 1));
}
BENCHMARK(BM_NerveFourCube)->Unit(benchmark::kMillisecond);

void BM_EnumerateSquare(benchmark::State& state) {
  const auto conf = square_configuration();
  const auto length = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate(conf, length));
}
BENCHMARK(BM_EnumerateSquare)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_AbstractGrowthSquare(benchmark::State& state) {
  const auto conf = square_configuration();
  AuditOptions opts;
  opts.with_nerve = false;
  const auto pres = presentation_from_audit(audit(conf, opts));
  const auto length = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(abstract_growth(pres, length));
}
BENCHMARK(BM_AbstractGrowthSquare)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
