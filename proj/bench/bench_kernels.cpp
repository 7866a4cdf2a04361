// Serial reference versus OpenMP kernel for each parallel hot spot.
// Run with OMP_NUM_THREADS set to the core count of interest.

#include <benchmark/benchmark.h>

#include <random>

#include "kummer/arith.hpp"
#include "kummer/classnumber.hpp"
#include "kummer/hurwitz.hpp"
#include "kummer/lfunc.hpp"

using namespace kummer;

namespace {

Exec mode(const benchmark::State& st) { return st.range(0) ? Exec::parallel : Exec::serial; }

void label(benchmark::State& st) { st.SetLabel(st.range(0) ? "parallel" : "serial"); }

void BM_Sieve(benchmark::State& st) {
  const auto limit = static_cast<std::uint64_t>(st.range(1));
  for (auto _ : st) benchmark::DoNotOptimize(arith::sieve_primes_segmented(limit, mode(st)));
  label(st);
}
BENCHMARK(BM_Sieve)->ArgsProduct({{0, 1}, {10000000}})->Unit(benchmark::kMillisecond);

void BM_PowerTable(benchmark::State& st) {
  const BallReal s = BallReal::from_double(1.0625, 192);
  for (auto _ : st)
    benchmark::DoNotOptimize(hurwitz::power_table(s, st.range(1), true, 192, mode(st)));
  label(st);
}
BENCHMARK(BM_PowerTable)->ArgsProduct({{0, 1}, {50000}})->Unit(benchmark::kMillisecond);

void BM_HurwitzTable(benchmark::State& st) {
  chars::CharacterTable table(static_cast<std::uint64_t>(st.range(1)));
  const BallReal s = BallReal::from_double(1.0625, 128);
  for (auto _ : st)
    benchmark::DoNotOptimize(lfunc::hurwitz_table(table, s, 3, 128, mode(st)));
  label(st);
}
BENCHMARK(BM_HurwitzTable)->ArgsProduct({{0, 1}, {1009}})->Unit(benchmark::kMillisecond);

void BM_CharacterSums(benchmark::State& st) {
  const auto p = static_cast<std::uint64_t>(st.range(1));
  chars::CharacterTable table(p);
  const BallReal s = BallReal::from_double(1.0625, 128);
  auto values = lfunc::hurwitz_table(table, s, 3, 128, Exec::parallel);
  chars::RootTable roots(p - 1, 160);
  std::vector<std::uint64_t> js;
  for (std::uint64_t j = 1; j + 1 < p; j += 2) js.push_back(j);
  for (auto _ : st) benchmark::DoNotOptimize(lfunc::character_sums(values, roots, js, mode(st)));
  label(st);
}
BENCHMARK(BM_CharacterSums)->ArgsProduct({{0, 1}, {1009}})->Unit(benchmark::kMillisecond);

void BM_ScaledB1(benchmark::State& st) {
  const auto p = static_cast<std::uint64_t>(st.range(1));
  chars::CharacterTable table(p);
  const mpfr_prec_t prec = classnumber::analytic_policy(p).initial;
  for (auto _ : st) benchmark::DoNotOptimize(classnumber::scaled_b1_odd(table, prec, mode(st)));
  label(st);
}
BENCHMARK(BM_ScaledB1)->ArgsProduct({{0, 1}, {2003}})->Unit(benchmark::kMillisecond);

void BM_Bareiss(benchmark::State& st) {
  const auto p = static_cast<std::uint64_t>(st.range(1));
  const auto m = classnumber::maillet_matrix(p);
  const std::size_t n = (p - 1) / 2;
  for (auto _ : st) benchmark::DoNotOptimize(classnumber::bareiss_determinant(m, n, mode(st)));
  label(st);
}
BENCHMARK(BM_Bareiss)->ArgsProduct({{0, 1}, {199}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
