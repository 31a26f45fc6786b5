#pragma once

/**
 * @file qfree.hpp
 * @brief q-free validation, signed/absolute q-free radicals, and the
 *        exponent matrix nu_ij over the prime support of an instance.
 */

#include <cstdint>
#include <vector>

#include "qsective/arith.hpp"
#include "qsective/errors.hpp"

namespace qsective {

/// Validated (q, [a_1..a_l]) pair: the polynomial prod_j (x^q - a_j)
/// in implicit form. q is an odd prime; entries are distinct nonzero
/// q-free integers, none equal to +-1.
struct ProblemInstance {
  int64_t q = 3;
  std::vector<int64_t> entries;

  size_t l() const { return entries.size(); }
};

/// Signed q-free radical: sign(n) * prod p^(e mod q). Idempotent.
inline int128 rad_q_signed(int128 n, int64_t q) {
  FactoredInteger f = factorize(n);
  uint128 v = 1;
  for (auto [p, e] : f.factors) v = checked_mul(v, checked_pow(p, e % unsigned(q)));
  return f.sign > 0 ? int128(v) : -int128(v);
}

/// Absolute q-free radical, always positive. Equals 1 exactly when |n|
/// is a perfect q-th power.
inline uint128 rad_q_abs(int128 n, int64_t q) {
  return uint128(rad_q_signed(n < 0 ? -n : n, q));
}

/// Check the instance hypotheses; every violation is a distinct error
/// variant naming the offending entry. Duplicates are allowed only for
/// derived multiset instances (exponentiation images).
inline ProblemInstance validate_instance(int64_t q, const std::vector<int64_t>& entries,
                                         bool allow_duplicates = false) {
  if (q < 3 || q % 2 == 0 || !is_prime(uint128(q)))
    throw validation_error(validation_error::violation::not_odd_prime,
                           "q = " + std::to_string(q) + " is not an odd prime");
  if (entries.empty())
    throw validation_error(validation_error::violation::domain, "entry list is empty");
  for (int64_t a : entries) {
    if (a == 0)
      throw validation_error(validation_error::violation::zero_entry, "entry 0 is excluded");
    if (a == 1 || a == -1)
      throw validation_error(validation_error::violation::unit_entry,
                             "entry " + std::to_string(a) + " is excluded");
    FactoredInteger f = factorize(a);
    for (auto [p, e] : f.factors) {
      if (e >= unsigned(q))
        throw validation_error(validation_error::violation::not_q_free,
                               "entry " + std::to_string(a) + " is not " + std::to_string(q) +
                                   "-free: " + std::to_string(p) + "^" + std::to_string(e) +
                                   " divides it");
    }
  }
  if (!allow_duplicates) {
    for (size_t i = 0; i < entries.size(); ++i)
      for (size_t j = i + 1; j < entries.size(); ++j)
        if (entries[i] == entries[j])
          throw validation_error(validation_error::violation::duplicate_entry,
                                 "duplicate entry " + std::to_string(entries[i]));
  }
  return ProblemInstance{q, entries};
}

/// Primes p_1 < ... < p_k dividing prod a_j, together with the exact
/// divisibility exponents nu[i][j] (p_i^nu || a_j) and entry signs.
/// Since every a_j is q-free, nu[i][j] lies in [0, q).
struct ExponentMatrix {
  int64_t q = 3;
  std::vector<int64_t> primes;             // k ascending
  std::vector<std::vector<int>> nu;        // k x l
  std::vector<int> signs;                  // l entries, +-1

  size_t k() const { return primes.size(); }
  size_t l() const { return signs.size(); }
};

inline ExponentMatrix exponent_matrix(const ProblemInstance& inst) {
  ExponentMatrix m;
  m.q = inst.q;
  std::vector<FactoredInteger> facs;
  facs.reserve(inst.entries.size());
  for (int64_t a : inst.entries) {
    facs.push_back(factorize(a));
    m.signs.push_back(a < 0 ? -1 : 1);
  }
  for (const auto& f : facs)
    for (auto [p, e] : f.factors)
      if (std::find(m.primes.begin(), m.primes.end(), int64_t(p)) == m.primes.end())
        m.primes.push_back(int64_t(p));
  std::sort(m.primes.begin(), m.primes.end());
  m.nu.assign(m.primes.size(), std::vector<int>(inst.entries.size(), 0));
  for (size_t j = 0; j < facs.size(); ++j)
    for (auto [p, e] : facs[j].factors) {
      size_t i = size_t(std::find(m.primes.begin(), m.primes.end(), int64_t(p)) - m.primes.begin());
      m.nu[i][j] = int(e);
    }
  return m;
}

}  // namespace qsective
