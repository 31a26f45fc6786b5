#include <catch2/catch_amalgamated.hpp>

#include "qsective/generate.hpp"

using namespace qsective;

TEST_CASE("family_q3 over (7, 251) and (7, 2141)") {
  FamilyReport fr = family_q3(7, 251);
  CHECK(fr.inst.entries == std::vector<int64_t>{7, 251, 1757, 12299});
  CHECK(fr.report.verdict == Verdict::intersective);
  CHECK(fr.power_mod_qq);
  CHECK(fr.p1_power_mod_p2);
  CHECK(fr.p2_power_mod_p1);

  FamilyReport fr2 = family_q3(7, 2141);
  CHECK(fr2.inst.entries == std::vector<int64_t>{7, 2141, 14987, 104909});
  CHECK(fr2.report.verdict == Verdict::intersective);
}

TEST_CASE("family_q3 verdict always equals the three pair conditions") {
  // family_report throws internally if the corollary-style conditions
  // ever disagree with the classifier; exercise both outcomes.
  FamilyReport good = family_q3(2, 5);
  CHECK(good.report.verdict == Verdict::intersective);

  FamilyReport bad = family_q3(2, 7);  // 2 is not a cube mod 7
  CHECK(bad.report.verdict == Verdict::not_intersective);
  CHECK_FALSE(bad.p1_power_mod_p2);

  for (int64_t p1 : {2, 5, 7, 11, 13}) {
    for (int64_t p2 : {17, 19, 23, 29, 31, 251}) {
      FamilyReport fr = family_q3(p1, p2);  // must not throw
      CHECK((fr.report.verdict == Verdict::intersective) ==
            (fr.power_mod_qq && fr.p1_power_mod_p2 && fr.p2_power_mod_p1));
    }
  }
}

TEST_CASE("family constructors reject degenerate prime pairs") {
  CHECK_THROWS_AS(family_q3(7, 7), validation_error);
  CHECK_THROWS_AS(family_q3(3, 7), validation_error);
  CHECK_THROWS_AS(family_q3(4, 7), validation_error);
  CHECK_THROWS_AS(family_q5(5, 7), validation_error);
}

TEST_CASE("family_q5 builds the sextuple shape") {
  FamilyReport fr = family_q5(2, 3);
  CHECK(fr.inst.entries == std::vector<int64_t>{2, 3, 6, 12, 18, 48});
  ExponentMatrix m = exponent_matrix(fr.inst);
  CHECK(m.nu[0] == std::vector<int>{1, 0, 1, 2, 1, 4});
  CHECK(m.nu[1] == std::vector<int>{0, 1, 1, 1, 2, 1});
  CHECK(fr.report.condition1.covers);
}

TEST_CASE("mine_pairs at bound 251 finds (7, 251) in order") {
  size_t emitted = 0;
  std::vector<MinedPair> mined =
      mine_pairs(3, 251, [&](const MinedPair&) { ++emitted; });
  CHECK(emitted == mined.size());
  CHECK(!mined.empty());

  bool has_7_251 = false;
  for (const MinedPair& mp : mined) {
    CHECK(mp.p1 < mp.p2);
    CHECK(mp.family.report.verdict == Verdict::intersective);
    CHECK_FALSE(mp.spot_check.first_failure.has_value());
    if (mp.p1 == 7 && mp.p2 == 251) has_7_251 = true;
  }
  CHECK(has_7_251);
  // deterministic ordering: nondecreasing p1, increasing p2 within p1
  for (size_t i = 1; i < mined.size(); ++i) {
    CHECK(mined[i - 1].p1 <= mined[i].p1);
    if (mined[i - 1].p1 == mined[i].p1) CHECK(mined[i - 1].p2 < mined[i].p2);
  }
}

TEST_CASE("mine_pairs rejects unsupported exponents") {
  CHECK_THROWS_AS(mine_pairs(7, 100), validation_error);
}

TEST_CASE("expansion of the quadruple covers all 16 variants") {
  ExpansionResult r = expand_by_exponentiation(validate_instance(3, {7, 251, 1757, 12299}));
  CHECK(r.variants.size() + r.skipped_overflow == 16);
  CHECK(r.verdicts_checked == r.variants.size());  // exhaustive regime
  CHECK(r.variants[0].entries == std::vector<int64_t>{7, 251, 1757, 12299});  // all-ones vector
  // entries stay supported on {7, 251}
  for (const ProblemInstance& v : r.variants) {
    ExponentMatrix m = exponent_matrix(v);
    CHECK(m.primes == std::vector<int64_t>{7, 251});
  }
}

TEST_CASE("expansion sampling regime for longer instances") {
  // l = 6 over q = 5: 4^6 = 4096 variants, sampled at 64
  ExpansionResult r = expand_by_exponentiation(validate_instance(5, {2, 3, 6, 12, 18, 48}));
  CHECK(r.variants.size() + r.skipped_overflow == 4096);
  CHECK(r.verdicts_checked <= 64);
  CHECK(r.verdicts_checked >= 32);
}

TEST_CASE("expansion preserves the verdict for non-intersective inputs too") {
  ExpansionResult r = expand_by_exponentiation(validate_instance(3, {2, 3, 6, 12}));
  CHECK(r.variants.size() == 16);
  for (const ProblemInstance& v : r.variants)
    CHECK(classify(v).verdict == Verdict::not_intersective);
}

TEST_CASE("covering holds for every valid family pair regardless of residues") {
  for (int64_t p1 : {2, 5, 11}) {
    for (int64_t p2 : {7, 13, 101}) {
      if (p1 == p2) continue;
      CHECK(family_q3(p1, p2).report.condition1.covers);
    }
  }
}
