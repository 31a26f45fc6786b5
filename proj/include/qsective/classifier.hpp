#pragma once

/**
 * @file classifier.hpp
 * @brief The full decision procedure: covering condition, q-th power
 *        modulo q^q, and per-support-prime residue condition, with
 *        re-checkable witnesses in the report. Includes the k = 1
 *        branch, the almost-every-prime cross-check, and the derived
 *        lower-bound and exponentiation-invariance operations.
 */

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "qsective/arith.hpp"
#include "qsective/covering.hpp"
#include "qsective/errors.hpp"
#include "qsective/qfree.hpp"
#include "qsective/residue.hpp"

namespace qsective {

enum class Verdict { intersective, not_intersective };

enum class FailureReason { covering_fails, mod_qq_fails, prime_condition_fails, k_equals_one };

/// A witnessing entry index together with a directly re-checkable root.
struct ConditionWitness {
  size_t index;    // index into entries (0-based)
  std::optional<uint128> root;
};

struct ClassificationReport {
  Verdict verdict = Verdict::not_intersective;
  int64_t q = 3;
  std::vector<int64_t> entries;
  ExponentMatrix matrix;
  std::vector<Hyperplane> hyperplanes;
  CoveringReport condition1;
  /// Some a_i that is a q-th power modulo q^q, with a root.
  std::optional<ConditionWitness> condition2;
  /// Per support prime p_i: the smallest-index a_j with p_i not dividing
  /// a_j that is a q-th power modulo p_i, with a root modulo p_i.
  std::vector<std::pair<int64_t, std::optional<ConditionWitness>>> condition3;
  std::optional<FailureReason> failure_reason;
  std::optional<int64_t> failing_prime;  // set for prime_condition_fails
};

/// Decide intersectivity of prod_j (x^q - a_j) per the three conditions.
/// k = 1 is decided not_intersective outright: a single-prime support
/// yields only multiples of one linear form on F_q^1, which never covers.
inline ClassificationReport classify(const ProblemInstance& inst,
                                     uint64_t covering_cap = kCoveringEnumerationCap) {
  ClassificationReport rep;
  rep.q = inst.q;
  rep.entries = inst.entries;
  rep.matrix = exponent_matrix(inst);
  rep.hyperplanes = hyperplanes_of(rep.matrix);
  const int k = int(rep.matrix.k());
  rep.condition1 = check_covering(rep.hyperplanes, inst.q, k, covering_cap);

  // Condition (2): some signed a_i a q-th power mod q^q (smallest index).
  uint128 qq = checked_pow(uint128(inst.q), unsigned(inst.q));
  for (size_t i = 0; i < inst.entries.size(); ++i) {
    auto root = is_qth_power_mod(inst.entries[i], inst.q, NaturalModulus(qq));
    if (root) {
      rep.condition2 = ConditionWitness{i, root};
      break;
    }
  }

  // Condition (3): per support prime, smallest j with p_i not dividing a_j
  // and a_j a q-th power mod p_i.
  for (int64_t p : rep.matrix.primes) {
    std::optional<ConditionWitness> witness;
    for (size_t j = 0; j < inst.entries.size(); ++j) {
      if (normalize_mod(inst.entries[j], uint128(p)) == 0) continue;
      if (is_qth_power_mod_p(inst.entries[j], inst.q, p)) {
        ConditionWitness w{j, std::nullopt};
        if (uint64_t(p) <= kRootPrimeBound) {
          auto roots = roots_mod_prime(inst.entries[j], inst.q, p);
          if (!roots.empty()) w.root = uint128(roots[0]);
        }
        witness = w;
        break;
      }
    }
    rep.condition3.emplace_back(p, witness);
  }

  bool cond3_total = true;
  int64_t first_failing_prime = 0;
  for (const auto& [p, w] : rep.condition3) {
    if (!w) {
      cond3_total = false;
      if (first_failing_prime == 0) first_failing_prime = p;
    }
  }

  if (k == 1) {
    rep.verdict = Verdict::not_intersective;
    rep.failure_reason = FailureReason::k_equals_one;
  } else if (!rep.condition1.covers) {
    rep.verdict = Verdict::not_intersective;
    rep.failure_reason = FailureReason::covering_fails;
  } else if (!rep.condition2) {
    rep.verdict = Verdict::not_intersective;
    rep.failure_reason = FailureReason::mod_qq_fails;
  } else if (!cond3_total) {
    rep.verdict = Verdict::not_intersective;
    rep.failure_reason = FailureReason::prime_condition_fails;
    rep.failing_prime = first_failing_prime;
  } else {
    rep.verdict = Verdict::intersective;
  }
  return rep;
}

/// Scan of the almost-every-prime condition: for every prime p <= bound
/// outside {q, p_1..p_k}, some a_j must be a q-th power mod p. Agrees
/// with the covering condition (Prop. 2 equivalence at desk scale).
struct ResidueScanReport {
  uint64_t bound = 0;
  size_t primes_checked = 0;
  int64_t first_failing_prime = 0;  // 0 when none
};

inline ResidueScanReport check_residue_everywhere(const ProblemInstance& inst,
                                                  uint64_t prime_bound) {
  ResidueScanReport rep;
  rep.bound = prime_bound;
  ExponentMatrix m = exponent_matrix(inst);
  for (uint64_t p : primes_up_to(prime_bound)) {
    if (int64_t(p) == inst.q) continue;
    if (std::find(m.primes.begin(), m.primes.end(), int64_t(p)) != m.primes.end()) continue;
    ++rep.primes_checked;
    bool found = false;
    for (int64_t a : inst.entries) {
      if (is_qth_power_mod_p(a, inst.q, int64_t(p))) {
        found = true;
        break;
      }
    }
    if (!found && rep.first_failing_prime == 0) {
      rep.first_failing_prime = int64_t(p);
      break;
    }
  }
  return rep;
}

/// True iff l <= q. Entries are q-free and not +-1, so none is a perfect
/// q-th power and the verdict is forced to not_intersective in that case.
inline bool lower_bound_check(const ProblemInstance& inst) {
  return inst.entries.size() <= size_t(inst.q);
}

/// The instance with entries rad_q(a_j^c_j); verdict-preserving for
/// nonzero exponents c_j mod q. The duplicate-entry rule is suspended
/// (multiset semantics) because exponentiation can collide entries.
inline ProblemInstance exponentiate_instance(const ProblemInstance& inst,
                                             const std::vector<int>& c) {
  if (c.size() != inst.entries.size())
    throw validation_error(validation_error::violation::domain,
                           "exponent vector length must equal the number of entries");
  std::vector<int64_t> out;
  for (size_t j = 0; j < c.size(); ++j) {
    if (c[j] < 1 || c[j] >= int(inst.q))
      throw validation_error(validation_error::violation::domain,
                             "exponents must lie in [1, q)");
    uint128 power = checked_pow(uint128(inst.entries[j] < 0 ? -int128(inst.entries[j])
                                                            : int128(inst.entries[j])),
                                unsigned(c[j]));
    int sign = (inst.entries[j] < 0 && c[j] % 2 == 1) ? -1 : 1;
    int128 value = rad_q_signed(sign > 0 ? int128(power) : -int128(power), inst.q);
    if (value > int128(INT64_MAX) || value < -int128(INT64_MAX))
      throw width_error("exponentiated entry exceeds 64-bit range");
    out.push_back(int64_t(value));
  }
  return validate_instance(inst.q, out, /*allow_duplicates=*/true);
}

}  // namespace qsective
