#pragma once

/**
 * @file covering.hpp
 * @brief Hyperplanes in F_q^k associated with an instance and exhaustive
 *        linear-covering verification, plus the minimum covering size.
 *
 * Covering is decided by full enumeration of q^k vectors so that the
 * report carries a per-vector certificate (an assigned hyperplane for
 * every vector, or the first uncovered vector in lexicographic order).
 */

#include <cstdint>
#include <optional>
#include <vector>

#include "qsective/errors.hpp"
#include "qsective/qfree.hpp"

namespace qsective {

inline constexpr uint64_t kCoveringEnumerationCap = 100000000;  // q^k hard cap

/// A hyperplane through the origin in F_q^k, as a coefficient vector
/// (not all zero) of the linear form sum coeffs[i] * x_i.
struct Hyperplane {
  std::vector<int> coeffs;
};

/// Outcome of a covering check over all q^k vectors.
struct CoveringReport {
  int64_t q = 3;
  int k = 0;
  bool covers = false;
  /// First vector (lexicographic) on no listed hyperplane, when covers is false.
  std::optional<std::vector<int>> uncovered_vector;
  /// Index of a covering hyperplane per vector rank (lexicographic), when covers is true.
  std::optional<std::vector<int32_t>> per_vector_assignment;
};

/// Column j of the exponent matrix, reduced mod q, as a hyperplane.
/// Duplicates are preserved; a column that is zero mod q is rejected
/// (it would describe the whole space, not a hyperplane).
inline std::vector<Hyperplane> hyperplanes_of(const ExponentMatrix& m) {
  std::vector<Hyperplane> out;
  for (size_t j = 0; j < m.l(); ++j) {
    Hyperplane h;
    bool nonzero = false;
    for (size_t i = 0; i < m.k(); ++i) {
      int c = m.nu[i][j] % int(m.q);
      h.coeffs.push_back(c);
      if (c != 0) nonzero = true;
    }
    if (!nonzero)
      throw validation_error(validation_error::violation::zero_column,
                             "column " + std::to_string(j) + " is zero mod q");
    out.push_back(std::move(h));
  }
  return out;
}

namespace detail {

/// Decode lexicographic rank into a vector of F_q^k, most significant
/// coordinate first.
inline std::vector<int> decode_vector(uint64_t rank, int64_t q, int k) {
  std::vector<int> v(size_t(k), 0);
  for (int i = k - 1; i >= 0; --i) {
    v[size_t(i)] = int(rank % uint64_t(q));
    rank /= uint64_t(q);
  }
  return v;
}

inline bool on_hyperplane(const std::vector<int>& coeffs, const std::vector<int>& v, int64_t q) {
  int64_t s = 0;
  for (size_t i = 0; i < coeffs.size(); ++i) s += int64_t(coeffs[i]) * v[i];
  return s % q == 0;
}

}  // namespace detail

/// Exhaustive check whether the hyperplanes cover F_q^k.
inline CoveringReport check_covering(const std::vector<Hyperplane>& planes, int64_t q, int k,
                                     uint64_t enumeration_cap = kCoveringEnumerationCap) {
  CoveringReport report;
  report.q = q;
  report.k = k;
  uint64_t total = 1;
  for (int i = 0; i < k; ++i) {
    if (total > enumeration_cap / uint64_t(q))
      throw bound_error("covering enumeration bound exceeded: q^k > " +
                        std::to_string(enumeration_cap));
    total *= uint64_t(q);
  }
  std::vector<int32_t> assignment(total, -1);
  for (uint64_t rank = 0; rank < total; ++rank) {
    std::vector<int> v = detail::decode_vector(rank, q, k);
    int32_t found = -1;
    for (size_t j = 0; j < planes.size(); ++j) {
      if (detail::on_hyperplane(planes[j].coeffs, v, q)) {
        found = int32_t(j);
        break;
      }
    }
    if (found < 0) {
      report.covers = false;
      report.uncovered_vector = v;
      return report;
    }
    assignment[rank] = found;
  }
  report.covers = true;
  report.per_vector_assignment = std::move(assignment);
  return report;
}

namespace detail {

/// All hyperplanes of F_q^k up to scalar: first nonzero coefficient
/// normalized to 1, giving (q^k - 1)/(q - 1) representatives.
inline std::vector<Hyperplane> normalized_hyperplanes(int64_t q, int k) {
  std::vector<Hyperplane> out;
  uint64_t total = 1;
  for (int i = 0; i < k; ++i) total *= uint64_t(q);
  for (uint64_t rank = 1; rank < total; ++rank) {
    std::vector<int> c = decode_vector(rank, q, k);
    size_t first = 0;
    while (c[first] == 0) ++first;
    if (c[first] != 1) continue;
    out.push_back(Hyperplane{std::move(c)});
  }
  return out;
}

/// Per-hyperplane bitmask of covered vector ranks; usable when q^k <= 128.
inline std::vector<uint128> coverage_masks(const std::vector<Hyperplane>& planes, int64_t q,
                                           int k, uint64_t total) {
  std::vector<uint128> masks(planes.size(), 0);
  for (uint64_t rank = 0; rank < total; ++rank) {
    std::vector<int> v = decode_vector(rank, q, k);
    for (size_t j = 0; j < planes.size(); ++j)
      if (on_hyperplane(planes[j].coeffs, v, q)) masks[j] |= uint128(1) << rank;
  }
  return masks;
}

inline bool any_subset_covers(const std::vector<uint128>& masks, uint128 full, size_t size) {
  if (size > masks.size()) return false;
  std::vector<size_t> pick(size);
  for (size_t i = 0; i < size; ++i) pick[i] = i;
  while (true) {
    uint128 u = 0;
    for (size_t idx : pick) u |= masks[idx];
    if (u == full) return true;
    // next lexicographic size-subset of [0, masks.size())
    size_t i = size;
    while (i > 0) {
      --i;
      if (pick[i] != i + masks.size() - size) {
        ++pick[i];
        for (size_t j = i + 1; j < size; ++j) pick[j] = pick[j - 1] + 1;
        break;
      }
      if (i == 0) return false;
    }
  }
}

}  // namespace detail

/// Exact minimum cardinality of a hyperplane covering of F_q^k, by
/// exhaustive search over normalized hyperplane subsets of size <= q+1.
/// Intended for desk-scale (q, k); refuses when the search space is too big.
inline int min_covering_size(int64_t q, int k, uint64_t enumeration_cap = kCoveringEnumerationCap) {
  if (k < 2)
    throw validation_error(validation_error::violation::domain,
                           "minimum covering size requires dimension >= 2");
  uint64_t total = 1;
  for (int i = 0; i < k; ++i) {
    if (total > enumeration_cap / uint64_t(q))
      throw bound_error("covering enumeration bound exceeded");
    total *= uint64_t(q);
  }
  if (total > 128) throw bound_error("hyperplane search limited to q^k <= 128");
  std::vector<Hyperplane> all = detail::normalized_hyperplanes(q, k);
  std::vector<uint128> masks = detail::coverage_masks(all, q, k, total);
  uint128 full = total == 128 ? ~uint128(0) : (uint128(1) << total) - 1;
  for (size_t s = 1; s <= size_t(q) + 1; ++s) {
    if (detail::any_subset_covers(masks, full, s)) return int(s);
  }
  throw error("no covering found up to size q+1; this contradicts #LC = q+1");
}

}  // namespace qsective
