#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "qsective/classifier.hpp"

using namespace qsective;

TEST_CASE("the quadruple (7, 251, 1757, 12299) has roots modulo every integer") {
  ClassificationReport rep = classify(validate_instance(3, {7, 251, 1757, 12299}));
  CHECK(rep.verdict == Verdict::intersective);
  CHECK_FALSE(rep.failure_reason.has_value());
  CHECK(rep.condition1.covers);

  REQUIRE(rep.condition2.has_value());
  CHECK(rep.condition2->index == 1);  // 251 = 8 = 2^3 (mod 27)
  REQUIRE(rep.condition2->root.has_value());
  CHECK(mod_pow(int128(*rep.condition2->root), 3, NaturalModulus(27)) == 8);

  REQUIRE(rep.condition3.size() == 2);
  CHECK(rep.condition3[0].first == 7);
  REQUIRE(rep.condition3[0].second.has_value());
  CHECK(rep.condition3[0].second->index == 1);  // 251 = 6 (mod 7), a cube
  CHECK(rep.condition3[1].first == 251);
  REQUIRE(rep.condition3[1].second.has_value());
  CHECK(rep.condition3[1].second->index == 0);  // 251 = 2 (mod 3): all cubes
  // roots attached to small-prime witnesses re-verify
  for (const auto& [p, w] : rep.condition3) {
    REQUIRE(w->root.has_value());
    CHECK(mod_pow(int128(*w->root), 3, NaturalModulus(uint128(p))) ==
          normalize_mod(rep.entries[w->index], uint128(p)));
  }
}

TEST_CASE("the companion quadruple over (7, 2141) is also intersective") {
  ClassificationReport rep = classify(validate_instance(3, {7, 2141, 14987, 104909}));
  CHECK(rep.verdict == Verdict::intersective);
  REQUIRE(rep.condition2.has_value());
  CHECK(rep.entries[rep.condition2->index] == 2141);  // 2141 = 8 (mod 27)
}

TEST_CASE("single support prime never suffices") {
  ClassificationReport rep = classify(validate_instance(3, {2, 4}));
  CHECK(rep.verdict == Verdict::not_intersective);
  CHECK(rep.failure_reason == FailureReason::k_equals_one);
  CHECK(rep.matrix.k() == 1);
}

TEST_CASE("too few hyperplanes: covering fails") {
  // support {7, 251} but only the columns (1,1) and (2,1)
  ClassificationReport rep = classify(validate_instance(3, {1757, 12299}));
  CHECK(rep.verdict == Verdict::not_intersective);
  CHECK(rep.failure_reason == FailureReason::covering_fails);
  CHECK(rep.condition1.uncovered_vector.has_value());
}

TEST_CASE("no entry a cube modulo 27: the q^q condition fails") {
  // covering shape (p1, p2, p1 p2, p1^2 p2) over (2, 3); none is 0,1,8,10,17,19,26 mod 27
  ClassificationReport rep = classify(validate_instance(3, {2, 3, 6, 12}));
  CHECK(rep.condition1.covers);
  CHECK(rep.verdict == Verdict::not_intersective);
  CHECK(rep.failure_reason == FailureReason::mod_qq_fails);
  CHECK_FALSE(rep.condition2.has_value());
}

TEST_CASE("a support prime with no coprime cube entry fails condition three") {
  // 17 = 3 (mod 7) is not a cube mod 7 and is the only entry coprime to 7,
  // while 17 is a cube mod 27, so only the per-prime condition breaks.
  ClassificationReport rep = classify(validate_instance(3, {7, 17, 119, 833}));
  CHECK(rep.condition1.covers);
  CHECK(rep.condition2.has_value());
  CHECK(rep.verdict == Verdict::not_intersective);
  CHECK(rep.failure_reason == FailureReason::prime_condition_fails);
  CHECK(rep.failing_prime == 7);
  CHECK_FALSE(rep.condition3[0].second.has_value());
}

TEST_CASE("check_residue_everywhere: (1757) first fails at 13") {
  ResidueScanReport scan = check_residue_everywhere(validate_instance(3, {1757}), 1000);
  CHECK(scan.first_failing_prime == 13);  // 1757 = 2 (mod 13), not a cube
  ResidueScanReport ok = check_residue_everywhere(validate_instance(3, {7, 251, 1757, 12299}), 1000);
  CHECK(ok.first_failing_prime == 0);
  CHECK(ok.primes_checked > 150);
}

TEST_CASE("covering condition matches the almost-every-prime scan on a small corpus") {
  // Prop.-2 equivalence at desk scale: hyperplanes cover iff no prime
  // outside the support is missed, checked up to 10^4.
  std::vector<std::vector<int64_t>> corpus = {
      {7, 251, 1757, 12299}, {1757, 12299},     {2, 3, 6, 12},     {7, 17, 119, 833},
      {1757},                {2, 5, 10, 20},    {2, 3, 6, 18, 12}, {6, 10, 15},
      {2, 3, 5, 30},         {4, 9, 6, 12, 18}, {2, 3},            {5, 11, 55, 275},
  };
  for (const auto& entries : corpus) {
    ProblemInstance inst = validate_instance(3, entries);
    ClassificationReport rep = classify(inst);
    if (rep.matrix.k() == 1) continue;  // covering trivially fails there
    ResidueScanReport scan = check_residue_everywhere(inst, 10000);
    CHECK(rep.condition1.covers == (scan.first_failing_prime == 0));
  }
}

TEST_CASE("at most q entries never produce an intersective product") {
  std::vector<std::vector<int64_t>> corpus = {
      {2, 3},     {2, 3, 6},   {6, 10, 15}, {2, 5, 10}, {3, 5, 15},
      {2, 4, 6},  {7, 11, 77}, {2},         {30, 6, 5}, {2, 9, 12},
  };
  for (const auto& entries : corpus) {
    ProblemInstance inst = validate_instance(3, entries);
    CHECK(lower_bound_check(inst));
    CHECK(classify(inst).verdict == Verdict::not_intersective);
  }
  CHECK_FALSE(lower_bound_check(validate_instance(3, {7, 251, 1757, 12299})));
}

TEST_CASE("exponentiate_instance reduces entries by rad_q") {
  ProblemInstance inst = validate_instance(3, {7, 251, 1757, 12299});
  ProblemInstance sq = exponentiate_instance(inst, {2, 2, 2, 2});
  CHECK(sq.entries[0] == 49);
  CHECK(sq.entries[3] == rad_q_signed(int128(12299) * 12299, 3));
  CHECK_THROWS_AS(exponentiate_instance(inst, {0, 1, 1, 1}), validation_error);
  CHECK_THROWS_AS(exponentiate_instance(inst, {1, 1, 3, 1}), validation_error);
  CHECK_THROWS_AS(exponentiate_instance(inst, {1, 1, 1}), validation_error);
}

TEST_CASE("the verdict is invariant under entrywise exponentiation") {
  std::vector<std::pair<int64_t, std::vector<int64_t>>> corpus = {
      {3, {7, 251, 1757, 12299}}, {3, {2, 3, 6, 12}},   {3, {7, 17, 119, 833}},
      {3, {1757, 12299}},         {5, {2, 3, 6, 12, 18, 48}},
  };
  std::mt19937_64 rng(2026);
  for (const auto& [q, entries] : corpus) {
    ProblemInstance inst = validate_instance(q, entries);
    Verdict base = classify(inst).verdict;
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<int> c;
      for (size_t j = 0; j < entries.size(); ++j) c.push_back(1 + int(rng() % uint64_t(q - 1)));
      CHECK(classify(exponentiate_instance(inst, c)).verdict == base);
    }
  }
}
