#include <algorithm>

#include "doctest.h"
#include "lacunary/diophantine.hpp"
#include "lacunary/error.hpp"
#include "oracles.hpp"

using namespace lacunary;

namespace {

LacunarySequence random_sequence(std::size_t n, std::uint64_t max_term) {
  std::vector<std::uint64_t> v;
  while (v.size() < n) {
    v.push_back(oracle::uniform_int(1, max_term));
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
  LacunarySequence s;
  for (auto t : v) s.terms.emplace_back(t);
  return s;
}

}  // namespace

TEST_SUITE("diophantine") {

TEST_CASE("solution counts match the double loop") {
  for (int trial = 0; trial < 150; ++trial) {
    const auto seq = random_sequence(oracle::uniform_int(1, 40), 200);
    const std::uint64_t a = oracle::uniform_int(1, 4);
    const std::uint64_t b = oracle::uniform_int(1, 4);
    const long c = static_cast<long>(oracle::uniform_int(0, 40)) - 20;
    const bool distinct = oracle::uniform_int(0, 1) == 1;
    DiophantineQuery q{a, b, BigInt(c), seq.size(), distinct};
    CHECK(count_solutions(seq, q) == oracle::count_solutions_naive(seq.terms, a, b, mpz_class(c), distinct));
  }
}

TEST_CASE("known counts") {
  const auto m = generate(PowerMinusOne{2}, 20);
  CHECK(count_solutions(m, {1, 2, BigInt(1), 20, false}) == 19);
  const auto p = generate(GeometricInt{2}, 30);
  CHECK(count_solutions(p, {1, 1, BigInt(0), 30, false}) == 30);
  CHECK(count_solutions(p, {1, 1, BigInt(0), 30, true}) == 0);
  CHECK(count_solutions(p, {1, 2, BigInt(0), 30, false}) == 29);
  const BigInt huge = BigInt(1) << 200;
  CHECK(count_solutions(p, {1, 1, huge, 30, false}) == 0);
  CHECK_THROWS_AS(count_solutions(p, {0, 1, BigInt(0), 30, false}), InvalidArgument);
}

TEST_CASE("b2 representation counts") {
  for (int trial = 0; trial < 80; ++trial) {
    const auto seq = random_sequence(oracle::uniform_int(2, 50), 300);
    const auto r = b2_max_representations(seq, seq.size());
    const auto o = oracle::b2_naive(seq.terms);
    CHECK(r.max_representations == o.max_total);
    CHECK(r.witness.value() == o.witness);
    CHECK(r.sum_reps_max == o.sum_max);
    CHECK(r.diff_reps_max == o.diff_max);
  }
  const auto sidon = b2_max_representations(generate(GreedySidon{}, 32), 32);
  CHECK(sidon.sum_reps_max == 1);
  CHECK(sidon.diff_reps_max == 1);
  CHECK_THROWS_AS(b2_max_representations(generate(Linear{}, 5000), 5000), CapacityExceeded);
}

TEST_CASE("four-term relations") {
  for (int trial = 0; trial < 40; ++trial) {
    const auto seq = random_sequence(oracle::uniform_int(4, 18), 60);
    const std::size_t min_idx = oracle::uniform_int(1, seq.size());
    const bool distinct = oracle::uniform_int(0, 1) == 1;
    const auto r = four_term_zero_solutions(seq, seq.size(), min_idx, distinct);
    const auto o = oracle::four_term_naive(seq.terms, min_idx, distinct);
    CHECK(r.total == o.total);
    CHECK(r.balanced == o.balanced);
  }
  const auto pow2 = four_term_zero_solutions(generate(GeometricInt{2}, 10), 10, 1);
  CHECK(pow2.total == 8);
  CHECK(pow2.balanced == 0);
  CHECK(four_term_zero_solutions(generate(GreedySidon{}, 40), 40, 1, true).balanced == 0);
  CHECK_THROWS_AS(four_term_zero_solutions(generate(Linear{}, 3000), 3000, 1), CapacityExceeded);
}

TEST_CASE("report text is stable") {
  B2Report b;
  b.max_representations = 3;
  b.witness = BigNat(12);
  b.sum_reps_max = 2;
  b.diff_reps_max = 1;
  CHECK(report_text(b) == "diff_reps_max=1\nmax_representations=3\nsum_reps_max=2\nwitness=12\n");
  FourTermReport f;
  f.total = 5;
  CHECK(report_text(f) == "balanced=0\ntotal=5\n");
}

}
