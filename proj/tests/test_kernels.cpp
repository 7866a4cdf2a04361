// The OpenMP kernels against their serial references: results must be
// bit-identical, not merely overlapping.

#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <omp.h>

#include <random>
#include <stdexcept>

#include "kummer/arith.hpp"
#include "kummer/classnumber.hpp"
#include "kummer/exec.hpp"
#include "kummer/hurwitz.hpp"
#include "kummer/lfunc.hpp"
#include "support.hpp"

using namespace kummer;
using testsupport::identical;

TEST_CASE("segmented sieve") {
  for (std::uint64_t limit : {10ULL, 65536ULL, 1000003ULL}) {
    auto ref = arith::sieve_primes_simple(limit);
    CHECK(arith::sieve_primes_segmented(limit, Exec::serial) == ref);
    CHECK(arith::sieve_primes_segmented(limit, Exec::parallel) == ref);
  }
}

TEST_CASE("power table") {
  for (double s : {2.0, 1.375}) {
    BallReal sb = BallReal::from_double(s, 160);
    auto a = hurwitz::power_table(sb, 5000, true, 160, Exec::serial);
    auto b = hurwitz::power_table(sb, 5000, true, 160, Exec::parallel);
    REQUIRE(a.inv_pow.size() == b.inv_pow.size());
    bool same = true;
    for (std::size_t n = 1; n < a.inv_pow.size(); ++n)
      same = same && identical(a.inv_pow[n], b.inv_pow[n]) && identical(a.logs[n], b.logs[n]);
    CHECK(same);
  }
}

TEST_CASE("Hurwitz table and character sums") {
  const std::uint64_t p = 211;
  chars::CharacterTable table(p);
  BallReal s = BallReal::from_double(1.0625, 128);
  auto a = lfunc::hurwitz_table(table, s, 3, 128, Exec::serial);
  auto b = lfunc::hurwitz_table(table, s, 3, 128, Exec::parallel);
  REQUIRE(a.size() == b.size());
  bool same = true;
  for (std::size_t k = 0; k < a.size(); ++k)
    for (std::size_t i = 0; i < a[k].size(); ++i) same = same && identical(a[k][i], b[k][i]);
  CHECK(same);

  chars::RootTable roots(p - 1, 128);
  std::vector<std::uint64_t> js;
  for (std::uint64_t j = 1; j < p - 1; j += 2) js.push_back(j);
  auto ca = lfunc::character_sums(a, roots, js, Exec::serial);
  auto cb = lfunc::character_sums(a, roots, js, Exec::parallel);
  same = ca.size() == cb.size();
  for (std::size_t j = 0; same && j < ca.size(); ++j)
    for (std::size_t i = 0; i < ca[j].size(); ++i) same = same && identical(ca[j][i], cb[j][i]);
  CHECK(same);

  auto la = lfunc::l_value_derivs_many(table, js, s, 2, 128, Exec::serial);
  auto lb = lfunc::l_value_derivs_many(table, js, s, 2, 128, Exec::parallel);
  same = true;
  for (std::size_t j = 0; j < la.size(); ++j)
    for (std::size_t i = 0; i < la[j].size(); ++i) same = same && identical(la[j][i], lb[j][i]);
  CHECK(same);
}

TEST_CASE("B1 transform and the analytic product") {
  chars::CharacterTable table(1009);
  auto a = classnumber::scaled_b1_odd(table, 600, Exec::serial);
  auto b = classnumber::scaled_b1_odd(table, 600, Exec::parallel);
  bool same = a.size() == b.size();
  for (std::size_t i = 0; same && i < a.size(); ++i) same = identical(a[i], b[i]);
  CHECK(same);
  auto pa = classnumber::analytic_product(401, 700, Exec::serial);
  auto pb = classnumber::analytic_product(401, 700, Exec::parallel);
  CHECK(identical(pa.value, pb.value));
  CHECK(classnumber::hminus_analytic(401, classnumber::analytic_policy(401), Exec::serial).h_minus ==
        classnumber::hminus_analytic(401, classnumber::analytic_policy(401), Exec::parallel).h_minus);
}

TEST_CASE("Bareiss") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> dist(-1000, 1000);
  const std::size_t n = 40;
  std::vector<mpz_class> m(n * n);
  for (auto& e : m) e = dist(rng);
  CHECK(classnumber::bareiss_determinant(m, n, Exec::serial) ==
        classnumber::bareiss_determinant(m, n, Exec::parallel));
  CHECK(classnumber::maillet_determinant(101, Exec::serial) ==
        classnumber::maillet_determinant(101, Exec::parallel));
}

TEST_CASE("exceptions from a parallel loop surface deterministically") {
  auto body = [](std::size_t i) {
    if (i == 17 || i == 40) throw std::runtime_error("index " + std::to_string(i));
  };
  for (Exec e : {Exec::serial, Exec::parallel}) {
    try {
      for_each_index(64, e, body);
      FAIL("expected an exception");
    } catch (const std::runtime_error& err) {
      CHECK(std::string(err.what()) == "index 17");
    }
  }
}

int main(int argc, char** argv) {
  // Several threads even on one core, so scheduling really interleaves.
  omp_set_num_threads(4);
  doctest::Context ctx(argc, argv);
  return ctx.run();
}
