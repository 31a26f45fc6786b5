#pragma once

/**
 * @file oracle.hpp
 * @brief Independent brute-force verification: exhaustive solvability
 *        scans over bounded moduli, witness-modulus construction and
 *        search for non-intersective instances, and empirical residue
 *        density scans.
 *
 * By CRT a composite modulus is solvable iff all of its prime-power
 * parts are, so the scan only visits prime powers.
 */

#include <cstdint>
#include <optional>
#include <vector>

#include "qsective/arith.hpp"
#include "qsective/classifier.hpp"
#include "qsective/errors.hpp"
#include "qsective/qfree.hpp"
#include "qsective/residue.hpp"

namespace qsective {

inline constexpr uint64_t kOracleScanBound = 1000000;    // hard cap on modulus scans
inline constexpr uint64_t kWitnessVerifyBound = 1000000; // full-scan re-verification cap

/// An explicit modulus with a proof that the product polynomial has no
/// root modulo it. Verified by full x-scan when the modulus is small
/// enough, by the per-factor residue argument (Lemma-1/Lemma-2 chain)
/// above that.
struct WitnessCertificate {
  enum class Construction { lemma2_prime_power, searched_prime, direct };
  enum class Verification { full_scan, lemma_chain };

  uint128 modulus = 0;
  Construction construction = Construction::direct;
  Verification verification = Verification::full_scan;
  int64_t p = 0;     // base prime for the prime-power constructions
  int exponent = 0;  // exponent for lemma2_prime_power
};

struct OracleVerdict {
  uint64_t bound = 0;
  uint64_t checked_moduli = 0;
  std::optional<WitnessCertificate> first_failure;
};

namespace detail {

/// Exhaustive: does prod_j (x^q - a_j) = 0 (mod m) have a solution?
/// m must be within the scan cap; arithmetic stays in 64 bits.
inline bool product_solvable_by_scan(const ProblemInstance& inst, uint64_t m) {
  std::vector<uint64_t> av;
  av.reserve(inst.entries.size());
  for (int64_t a : inst.entries) av.push_back(uint64_t(normalize_mod(a, uint128(m))));
  for (uint64_t x = 0; x < m; ++x) {
    uint64_t xq = pow_mod_small(x, uint64_t(inst.q), m);
    uint64_t prod = 1 % m;
    for (uint64_t a : av) {
      prod = prod * ((xq + m - a) % m) % m;
      if (prod == 0) break;
    }
    if (prod == 0) return true;
  }
  return false;
}

/// Is the product solvable modulo the prime p (exponent 1)?
inline bool product_solvable_mod_prime(const ProblemInstance& inst, int64_t p) {
  for (int64_t a : inst.entries) {
    if (normalize_mod(a, uint128(p)) == 0) return true;  // x = 0 kills this factor
    if (is_qth_power_mod_p(a, inst.q, p)) return true;
  }
  return false;
}

/// Does some single factor admit roots modulo every power of p? True
/// when a unit entry is a q-th power mod p (p != q) or mod q^2 (p == q):
/// Hensel lifts it to every level.
inline bool some_factor_lifts_fully(const ProblemInstance& inst, int64_t p) {
  for (int64_t a : inst.entries) {
    if (normalize_mod(a, uint128(p)) == 0) continue;
    if (p != inst.q) {
      if (is_qth_power_mod_p(a, inst.q, p)) return true;
    } else {
      uint128 q2 = uint128(p) * uint128(p);
      if (is_qth_power_mod(a, inst.q, NaturalModulus(q2))) return true;
    }
  }
  return false;
}

}  // namespace detail

/// Check every prime power p^b <= modulus_bound for solvability of the
/// product; report the smallest failing modulus, if any.
inline OracleVerdict scan_solvability(const ProblemInstance& inst, uint64_t modulus_bound) {
  if (modulus_bound > kOracleScanBound)
    throw bound_error("oracle scan bound capped at " + std::to_string(kOracleScanBound));
  OracleVerdict verdict;
  verdict.bound = modulus_bound;
  uint128 smallest_failure = 0;
  for (uint64_t p : primes_up_to(modulus_bound)) {
    ++verdict.checked_moduli;
    if (!detail::product_solvable_mod_prime(inst, int64_t(p))) {
      if (smallest_failure == 0 || uint128(p) < smallest_failure) smallest_failure = p;
      continue;
    }
    if (p * p > modulus_bound) continue;
    if (detail::some_factor_lifts_fully(inst, int64_t(p))) {
      // Every power of p is solvable through a single lifted factor;
      // count the remaining powers without scanning them.
      for (uint128 pb = uint128(p) * p; pb <= modulus_bound; pb *= p) ++verdict.checked_moduli;
      continue;
    }
    for (uint128 pb = uint128(p) * p; pb <= modulus_bound; pb *= p) {
      ++verdict.checked_moduli;
      if (!detail::product_solvable_by_scan(inst, uint64_t(pb))) {
        if (smallest_failure == 0 || pb < smallest_failure) smallest_failure = pb;
        break;  // unsolvable propagates to higher powers of p
      }
    }
  }
  if (smallest_failure != 0) {
    WitnessCertificate cert;
    cert.modulus = smallest_failure;
    cert.construction = WitnessCertificate::Construction::direct;
    cert.verification = WitnessCertificate::Verification::full_scan;
    verdict.first_failure = cert;
  }
  return verdict;
}

/// Re-check a witness certificate independently. Full scan for small
/// moduli; for the big Lemma-2 prime powers, check that every factor is
/// unsolvable modulo p^q (which forces the product unsolvable mod p^(ql)).
inline bool verify_witness(const ProblemInstance& inst, const WitnessCertificate& cert) {
  if (cert.modulus <= kWitnessVerifyBound)
    return !detail::product_solvable_by_scan(inst, uint64_t(cert.modulus));
  if (cert.construction != WitnessCertificate::Construction::lemma2_prime_power) return false;
  if (cert.exponent != int(inst.q) * int(inst.entries.size())) return false;
  if (checked_pow(uint128(cert.p), unsigned(cert.exponent)) != cert.modulus) return false;
  for (int64_t a : inst.entries) {
    if (solve_prime_power(a, inst.q, cert.p, int(inst.q))) return false;
  }
  return true;
}

/// Construct a verified witness modulus for a not_intersective instance,
/// by the cheapest applicable route for its failure reason.
inline WitnessCertificate find_witness(const ProblemInstance& inst,
                                       const ClassificationReport& report,
                                       uint64_t search_bound = 1000000) {
  if (report.verdict != Verdict::not_intersective)
    throw validation_error(validation_error::violation::domain,
                           "witness search requires a not_intersective report");
  const int64_t q = inst.q;
  const int l = int(inst.entries.size());

  auto lemma2_witness = [&](int64_t p) -> std::optional<WitnessCertificate> {
    WitnessCertificate cert;
    cert.construction = WitnessCertificate::Construction::lemma2_prime_power;
    cert.p = p;
    cert.exponent = int(q) * l;
    try {
      cert.modulus = checked_pow(uint128(p), unsigned(cert.exponent));
    } catch (const width_error&) {
      return std::nullopt;
    }
    cert.verification = cert.modulus <= kWitnessVerifyBound
                            ? WitnessCertificate::Verification::full_scan
                            : WitnessCertificate::Verification::lemma_chain;
    if (!verify_witness(inst, cert)) throw error("constructed witness failed re-verification");
    return cert;
  };

  auto scan_prime_powers = [&](int64_t p) -> std::optional<WitnessCertificate> {
    // Fallback: direct scan of powers of p inside the scan cap.
    for (uint128 pb = uint128(p); pb <= kWitnessVerifyBound; pb *= uint128(p)) {
      if (!detail::product_solvable_by_scan(inst, uint64_t(pb))) {
        WitnessCertificate cert;
        cert.modulus = pb;
        cert.construction = WitnessCertificate::Construction::direct;
        cert.verification = WitnessCertificate::Verification::full_scan;
        cert.p = p;
        return cert;
      }
    }
    return std::nullopt;
  };

  if (report.failure_reason == FailureReason::mod_qq_fails ||
      report.failure_reason == FailureReason::prime_condition_fails) {
    int64_t p = report.failure_reason == FailureReason::mod_qq_fails
                    ? q
                    : report.failing_prime.value();
    if (auto cert = lemma2_witness(p)) return *cert;
    if (auto cert = scan_prime_powers(p)) return *cert;
    throw bound_error("witness modulus " + std::to_string(p) + "^" +
                      std::to_string(int(q) * l) + " exceeds 127-bit width and no small power" +
                      " of " + std::to_string(p) + " is unsolvable within the scan cap");
  }

  // Covering failure (including k = 1): search for a prime p outside the
  // support where no a_j is a q-th power. Only p == 1 (mod q) can qualify,
  // every unit being a q-th power otherwise.
  ExponentMatrix m = exponent_matrix(inst);
  for (uint64_t p : primes_up_to(search_bound)) {
    if (int64_t(p) == q) continue;
    if (p % uint64_t(q) != 1) continue;
    if (std::find(m.primes.begin(), m.primes.end(), int64_t(p)) != m.primes.end()) continue;
    bool any_power = false;
    for (int64_t a : inst.entries) {
      if (is_qth_power_mod_p(a, q, int64_t(p))) {
        any_power = true;
        break;
      }
    }
    if (!any_power) {
      WitnessCertificate cert;
      cert.modulus = p;
      cert.construction = WitnessCertificate::Construction::searched_prime;
      cert.verification = WitnessCertificate::Verification::full_scan;
      cert.p = int64_t(p);
      if (p <= kWitnessVerifyBound && !verify_witness(inst, cert))
        throw error("searched witness prime failed re-verification");
      return cert;
    }
  }
  throw bound_error("no witness prime found up to " + std::to_string(search_bound) +
                    "; either the classifier is wrong or the least witness is extraordinary");
}

/// Fraction of primes p <= bound (outside {q, p_1..p_k}) for which some
/// a_j is a q-th power mod p.
struct DensityScan {
  uint64_t bound = 0;
  size_t primes_checked = 0;
  size_t primes_with_power = 0;

  double fraction() const {
    return primes_checked == 0 ? 0.0 : double(primes_with_power) / double(primes_checked);
  }
};

inline DensityScan residue_density_scan(const ProblemInstance& inst, uint64_t prime_bound) {
  DensityScan scan;
  scan.bound = prime_bound;
  ExponentMatrix m = exponent_matrix(inst);
  for (uint64_t p : primes_up_to(prime_bound)) {
    if (int64_t(p) == inst.q) continue;
    if (std::find(m.primes.begin(), m.primes.end(), int64_t(p)) != m.primes.end()) continue;
    ++scan.primes_checked;
    for (int64_t a : inst.entries) {
      if (is_qth_power_mod_p(a, inst.q, int64_t(p))) {
        ++scan.primes_with_power;
        break;
      }
    }
  }
  return scan;
}

}  // namespace qsective
