#pragma once

/**
 * @file generate.hpp
 * @brief The two example families (q = 3 quadruples and q = 5 sextuples
 *        over a prime pair), pair mining for the residue conditions, and
 *        expansion of an instance by entry-wise exponentiation.
 */

#include <cstdint>
#include <functional>
#include <vector>

#include "qsective/classifier.hpp"
#include "qsective/errors.hpp"
#include "qsective/oracle.hpp"
#include "qsective/qfree.hpp"
#include "qsective/residue.hpp"

namespace qsective {

/// A family instance plus its classification and the family-level
/// residue conditions evaluated directly (they must match the verdict;
/// the covering condition holds for every valid pair by construction).
struct FamilyReport {
  ProblemInstance inst;
  ClassificationReport report;
  bool power_mod_qq = false;   // some entry a q-th power mod q^q
  bool p1_power_mod_p2 = false;
  bool p2_power_mod_p1 = false;
};

namespace detail {

inline FamilyReport family_report(int64_t q, int64_t p1, int64_t p2,
                                  const std::vector<int64_t>& entries) {
  if (p1 == p2 || p1 == q || p2 == q || !is_prime(uint128(p1)) || !is_prime(uint128(p2)))
    throw validation_error(validation_error::violation::domain,
                           "family requires two distinct primes different from q");
  FamilyReport fr;
  fr.inst = validate_instance(q, entries);
  fr.report = classify(fr.inst);
  uint128 qq = checked_pow(uint128(q), unsigned(q));
  for (int64_t a : entries) {
    if (is_qth_power_mod(a, q, NaturalModulus(qq))) {
      fr.power_mod_qq = true;
      break;
    }
  }
  fr.p1_power_mod_p2 = is_qth_power_mod_p(p1, q, p2);
  fr.p2_power_mod_p1 = is_qth_power_mod_p(p2, q, p1);
  bool corollary = fr.power_mod_qq && fr.p1_power_mod_p2 && fr.p2_power_mod_p1;
  if (corollary != (fr.report.verdict == Verdict::intersective))
    throw error("family conditions disagree with the classifier verdict");
  return fr;
}

}  // namespace detail

/// [p1, p2, p1*p2, p1^2*p2] for q = 3.
inline FamilyReport family_q3(int64_t p1, int64_t p2) {
  return detail::family_report(3, p1, p2, {p1, p2, p1 * p2, p1 * p1 * p2});
}

/// [p1, p2, p1*p2, p1^2*p2, p1*p2^2, p1^4*p2] for q = 5.
inline FamilyReport family_q5(int64_t p1, int64_t p2) {
  return detail::family_report(
      5, p1, p2,
      {p1, p2, p1 * p2, p1 * p1 * p2, p1 * p2 * p2, p1 * p1 * p1 * p1 * p2});
}

struct MinedPair {
  int64_t p1;
  int64_t p2;
  FamilyReport family;
  OracleVerdict spot_check;
};

/// All pairs p1 < p2 <= bound passing the family conditions, in
/// deterministic (p1, p2) order, each with a full classification and an
/// oracle spot-check at bound 10^3. The emit callback, when given, sees
/// each pair as it is found.
inline std::vector<MinedPair> mine_pairs(int64_t q, uint64_t bound,
                                         const std::function<void(const MinedPair&)>& emit = {}) {
  if (q != 3 && q != 5)
    throw validation_error(validation_error::violation::domain, "mining supports q = 3 or 5");
  std::vector<MinedPair> out;
  std::vector<uint64_t> primes = primes_up_to(bound);
  for (uint64_t p1 : primes) {
    if (int64_t(p1) == q) continue;
    for (uint64_t p2 : primes) {
      if (p2 <= p1 || int64_t(p2) == q) continue;
      // Cheap residue pre-filter before building the full report.
      if (!is_qth_power_mod_p(int64_t(p1), q, int64_t(p2))) continue;
      if (!is_qth_power_mod_p(int64_t(p2), q, int64_t(p1))) continue;
      FamilyReport fr = q == 3 ? family_q3(int64_t(p1), int64_t(p2))
                               : family_q5(int64_t(p1), int64_t(p2));
      if (fr.report.verdict != Verdict::intersective) continue;
      OracleVerdict spot = scan_solvability(fr.inst, 1000);
      MinedPair mp{int64_t(p1), int64_t(p2), std::move(fr), std::move(spot)};
      if (emit) emit(mp);
      out.push_back(std::move(mp));
    }
  }
  return out;
}

/// All (q-1)^l exponent-vector variants of an instance. Verdict equality
/// is asserted across the list: exhaustively up to 256 variants, by a
/// deterministic 64-sample above that. Variants whose entries overflow
/// 64 bits are skipped with a note.
struct ExpansionResult {
  std::vector<ProblemInstance> variants;
  size_t skipped_overflow = 0;
  size_t verdicts_checked = 0;
};

inline ExpansionResult expand_by_exponentiation(const ProblemInstance& inst) {
  ExpansionResult result;
  const size_t l = inst.entries.size();
  const int base = int(inst.q) - 1;
  uint64_t total = 1;
  for (size_t i = 0; i < l; ++i) {
    if (total > 1u << 20) throw bound_error("expansion too large");
    total *= uint64_t(base);
  }
  Verdict reference = classify(inst).verdict;
  std::vector<uint64_t> sample_ranks;
  bool exhaustive = total <= 256;
  if (!exhaustive) {
    // Deterministic 64-sample via a fixed LCG.
    uint64_t state = 0x9e3779b97f4a7c15ull;
    for (int i = 0; i < 64; ++i) {
      state = state * 6364136223846793005ull + 1442695040888963407ull;
      sample_ranks.push_back(state % total);
    }
  }
  for (uint64_t rank = 0; rank < total; ++rank) {
    std::vector<int> c(l);
    uint64_t r = rank;
    for (size_t i = 0; i < l; ++i) {
      c[i] = 1 + int(r % uint64_t(base));
      r /= uint64_t(base);
    }
    ProblemInstance variant;
    try {
      variant = exponentiate_instance(inst, c);
    } catch (const width_error&) {
      ++result.skipped_overflow;
      continue;
    }
    bool check = exhaustive ||
                 std::find(sample_ranks.begin(), sample_ranks.end(), rank) != sample_ranks.end();
    if (check) {
      ++result.verdicts_checked;
      if (classify(variant).verdict != reference)
        throw error("exponentiation variant changed the verdict");
    }
    result.variants.push_back(std::move(variant));
  }
  return result;
}

}  // namespace qsective
