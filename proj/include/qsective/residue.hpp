#pragma once

/**
 * @file residue.hpp
 * @brief q-th power residue tests modulo primes and prime powers, root
 *        finding for x^q = a, Hensel lifting, and root composition for
 *        the product polynomial modulo arbitrary m via CRT.
 *
 * Strategy: exhaustive scan below the scan bound (the certificate is the
 * construction), Euler criterion plus lifting above it.
 */

#include <cstdint>
#include <optional>
#include <vector>

#include "qsective/arith.hpp"
#include "qsective/errors.hpp"
#include "qsective/qfree.hpp"

namespace qsective {

inline constexpr uint64_t kScanBound = 1000000;       // direct x-scan crossover
inline constexpr uint64_t kRootPrimeBound = 1000000;  // roots_mod_prime scan limit

namespace detail {

/// x^e mod m for small m (m^2 must fit in 64 bits).
inline uint64_t pow_mod_small(uint64_t x, uint64_t e, uint64_t m) {
  uint64_t r = 1 % m;
  x %= m;
  while (e > 0) {
    if (e & 1) r = r * x % m;
    x = x * x % m;
    e >>= 1;
  }
  return r;
}

}  // namespace detail

/// Whether a is a q-th power modulo the prime p, for p not dividing a.
/// p = q: the q-power map is the identity on F_q, so always true.
/// p != 1 (mod q): the q-power map is a bijection on F_p*, so always true.
/// p == 1 (mod q): Euler criterion a^((p-1)/q) == 1.
inline bool is_qth_power_mod_p(int128 a, int64_t q, int64_t p) {
  uint128 ar = normalize_mod(a, uint128(p));
  if (ar == 0)
    throw validation_error(validation_error::violation::domain,
                           "residue symbol undefined: " + std::to_string(p) + " divides a");
  if (p == q) return true;
  if ((p - 1) % q != 0) return true;
  return mod_pow(a, uint128((p - 1) / q), NaturalModulus(uint128(p))) == 1;
}

/// All roots of x^q = a modulo a prime p, by direct scan (p <= 10^6).
inline std::vector<int64_t> roots_mod_prime(int128 a, int64_t q, int64_t p) {
  if (uint64_t(p) > kRootPrimeBound)
    throw bound_error("roots_mod_prime limited to p <= " + std::to_string(kRootPrimeBound));
  uint64_t target = uint64_t(normalize_mod(a, uint128(p)));
  std::vector<int64_t> roots;
  for (uint64_t x = 0; x < uint64_t(p); ++x)
    if (detail::pow_mod_small(x, uint64_t(q), uint64_t(p)) == target) roots.push_back(int64_t(x));
  return roots;
}

namespace detail {

/// Lift a unit root of x^q = a from level p^s0 to p^b.
///
/// For p != q the derivative q*x^(q-1) is a unit, so Newton iteration
/// doubles the level. For p = q the derivative has valuation exactly 1;
/// a digit-by-digit lift applies from s0 >= 2 and perturbs the root at
/// level q^(s-1), so the result agrees with the seed modulo p^(s0-1).
inline uint128 lift_unit_root(int128 a, int64_t q, int64_t p, uint128 root, int s0, int b) {
  uint128 pb = checked_pow(uint128(p), unsigned(b));
  if (p != int64_t(q)) {
    int s = s0;
    uint128 mod_cur = checked_pow(uint128(p), unsigned(s));
    uint128 x = root % mod_cur;
    while (s < b) {
      int s2 = std::min(2 * s, b);
      NaturalModulus m(checked_pow(uint128(p), unsigned(s2)));
      uint128 xv = x % m.value;
      uint128 gx = normalize_mod(int128(mod_pow(int128(xv), uint128(q), m)) - a, m.value);
      uint128 dg = mul_mod(uint128(q) % m.value, mod_pow(int128(xv), uint128(q - 1), m), m.value);
      uint128 corr = mul_mod(gx, mod_inverse(int128(dg), m), m.value);
      x = normalize_mod(int128(xv) - int128(corr), m.value);
      s = s2;
    }
    return x % pb;
  }
  // p == q: one digit per step.
  int s = s0;
  uint128 qs = checked_pow(uint128(q), unsigned(s));
  uint128 x = root % qs;
  while (s < b) {
    NaturalModulus m_next(checked_pow(uint128(q), unsigned(s + 1)));
    uint128 xq = mod_pow(int128(x), uint128(q), m_next);
    uint128 diff = normalize_mod(int128(xq) - a, m_next.value);
    // diff is divisible by q^s; solve for the digit t in x' = x + t*q^(s-1).
    uint128 c = (diff / qs) % uint128(q);
    NaturalModulus mq{uint128(q)};
    uint128 dinv = mod_inverse(int128(mod_pow(int128(x), uint128(q - 1), mq)), mq);
    uint128 t = mul_mod(normalize_mod(-int128(c), uint128(q)), dinv, uint128(q));
    x = (x + t * checked_pow(uint128(q), unsigned(s - 1))) % m_next.value;
    qs = checked_mul(qs, uint128(q));
    ++s;
  }
  return x % pb;
}

}  // namespace detail

/// Lift root (a q-th root of a modulo the seed level) to modulo p^b.
/// For p != q the seed level is p and p must not divide the root; for
/// p = q the seed must already satisfy x^q = a (mod q^q) with q not
/// dividing x (the valuation criterion |g'|^2 = q^-2 > q^-q).
inline uint128 hensel_lift(int128 a, int64_t q, int64_t p, uint128 root, int b) {
  if (b < 1)
    throw validation_error(validation_error::violation::domain, "target exponent must be >= 1");
  if (p != q) {
    NaturalModulus mp((uint128(p)));
    if (root % uint128(p) == 0)
      throw error("Hensel criterion failed: p | root, derivative q*x^(q-1) not a unit mod " +
                  std::to_string(p));
    if (mod_pow(int128(root), uint128(q), mp) != normalize_mod(a, uint128(p)))
      throw error("Hensel seed invalid: root^q != a (mod " + std::to_string(p) + ")");
    return detail::lift_unit_root(a, q, p, root, 1, b);
  }
  // p == q
  if (root % uint128(q) == 0)
    throw error("Hensel criterion failed: q | root gives |g'(root)|_q^2 <= q^-4 < q^-2");
  uint128 qq = checked_pow(uint128(q), unsigned(q));
  NaturalModulus mqq(qq);
  if (mod_pow(int128(root), uint128(q), mqq) != normalize_mod(a, qq))
    throw error("Hensel seed invalid: root^q != a (mod q^q), valuation |g(root)|_q > q^-q");
  if (b <= int(q)) return root % checked_pow(uint128(q), unsigned(b));
  return detail::lift_unit_root(a, q, int64_t(q), root, int(q), b);
}

/// One root of x^q = a (mod p^e), or empty if there is none.
/// Handles non-unit a by stripping q-divisible valuations.
inline std::optional<uint128> solve_prime_power(int128 a, int64_t q, int64_t p, int e,
                                                uint64_t scan_bound = kScanBound) {
  uint128 pe = checked_pow(uint128(p), unsigned(e));
  uint128 ar = normalize_mod(a, pe);
  if (pe <= scan_bound) {
    uint64_t m = uint64_t(pe);
    uint64_t target = uint64_t(ar);
    for (uint64_t x = 0; x < m; ++x)
      if (detail::pow_mod_small(x, uint64_t(q), m) == target) return uint128(x);
    return std::nullopt;
  }
  if (ar == 0) return uint128(0);
  unsigned v = valuation(int128(ar), uint64_t(p));
  if (v > 0) {
    if (v % unsigned(q) != 0) return std::nullopt;
    // x = p^(v/q) * y with y^q = a/p^v (mod p^(e-v))
    uint128 unit = ar / checked_pow(uint128(p), v);
    auto sub = solve_prime_power(int128(unit), q, p, e - int(v), scan_bound);
    if (!sub) return std::nullopt;
    return (checked_pow(uint128(p), v / unsigned(q)) * *sub) % pe;
  }
  if (e == 1) {
    // Only reachable when p > scan_bound; decide by criterion, no root search.
    if (!is_qth_power_mod_p(int128(ar), q, p)) return std::nullopt;
    throw bound_error("root extraction modulo primes above " + std::to_string(scan_bound) +
                      " is out of scope");
  }
  if (p != q) {
    if (!is_qth_power_mod_p(int128(ar), q, p)) return std::nullopt;
    auto roots = roots_mod_prime(int128(ar), q, p);
    if (roots.empty()) return std::nullopt;  // not reachable given the criterion
    return detail::lift_unit_root(int128(ar), q, p, uint128(roots[0]), 1, e);
  }
  // p == q, e >= 2, unit a: solvability mod q^2 decides all higher levels.
  uint128 q2 = checked_pow(uint128(q), 2);
  std::optional<uint128> seed;
  for (uint128 x = 1; x < q2; ++x) {
    if (x % uint128(q) == 0) continue;
    if (mod_pow(int128(x), uint128(q), NaturalModulus(q2)) == ar % q2) {
      seed = x;
      break;
    }
  }
  if (!seed) return std::nullopt;
  return detail::lift_unit_root(int128(ar), q, q, *seed, 2, e);
}

/// Some root of x^q = a (mod m) if one exists, else empty. Exhaustive
/// scan for small m, prime-power decomposition plus CRT above.
inline std::optional<uint128> is_qth_power_mod(int128 a, int64_t q, const NaturalModulus& m,
                                               uint64_t scan_bound = kScanBound) {
  if (m.value <= scan_bound) {
    uint64_t mm = uint64_t(m.value);
    uint64_t target = uint64_t(normalize_mod(a, m.value));
    for (uint64_t x = 0; x < mm; ++x)
      if (detail::pow_mod_small(x, uint64_t(q), mm) == target) return uint128(x);
    return std::nullopt;
  }
  FactoredInteger f = factorize(int128(m.value));
  uint128 r = 0;
  uint128 mod_acc = 1;
  for (auto [p, e] : f.factors) {
    auto local = solve_prime_power(a, q, int64_t(p), int(e), scan_bound);
    if (!local) return std::nullopt;
    uint128 pe = checked_pow(uint128(p), e);
    if (mod_acc == 1) {
      r = *local;
      mod_acc = pe;
    } else {
      auto [nr, nm] = crt_pair(int128(r), NaturalModulus(mod_acc), int128(*local),
                               NaturalModulus(pe));
      r = nr;
      mod_acc = nm.value;
    }
  }
  return r;
}

/// A root of the product polynomial modulo m, with per-prime-power
/// provenance. factor_index is set when a single factor works for the
/// whole modulus.
struct RootCertificate {
  uint128 modulus = 1;
  uint128 root = 0;
  std::optional<size_t> factor_index;
  struct Part {
    int64_t p;
    int e;
    size_t factor_index;
    uint128 local_root;
  };
  std::vector<Part> parts;
};

/// Find x with prod_j (x^q - a_j) = 0 (mod m). Searches for an x such
/// that every prime power p^e || m divides x^q - a_j for some j (choosing
/// the smallest such j per prime power, CRT-combining the local roots);
/// falls back to a direct product scan for m <= the scan bound.
inline std::optional<RootCertificate> root_mod(const ProblemInstance& inst, uint128 m,
                                               uint64_t scan_bound = kScanBound) {
  if (m == 0)
    throw validation_error(validation_error::violation::domain, "modulus must be positive");
  RootCertificate cert;
  cert.modulus = m;
  if (m == 1) {
    cert.root = 0;
    cert.factor_index = 0;
    return cert;
  }
  if (m > kMaxModulus) throw width_error("modulus exceeds 127-bit width");
  FactoredInteger f = factorize(int128(m));
  bool per_factor_ok = true;
  uint128 r = 0;
  uint128 mod_acc = 1;
  for (auto [p, e] : f.factors) {
    std::optional<uint128> local;
    size_t jfound = 0;
    for (size_t j = 0; j < inst.entries.size(); ++j) {
      local = solve_prime_power(inst.entries[j], inst.q, int64_t(p), int(e), scan_bound);
      if (local) {
        jfound = j;
        break;
      }
    }
    if (!local) {
      per_factor_ok = false;
      break;
    }
    uint128 pe = checked_pow(uint128(p), e);
    cert.parts.push_back({int64_t(p), int(e), jfound, *local});
    if (mod_acc == 1) {
      r = *local;
      mod_acc = pe;
    } else {
      auto [nr, nm] =
          crt_pair(int128(r), NaturalModulus(mod_acc), int128(*local), NaturalModulus(pe));
      r = nr;
      mod_acc = nm.value;
    }
  }
  if (per_factor_ok) {
    cert.root = r;
    if (!cert.parts.empty()) {
      size_t j0 = cert.parts[0].factor_index;
      bool uniform = true;
      for (const auto& part : cert.parts) uniform = uniform && part.factor_index == j0;
      if (uniform) cert.factor_index = j0;
    }
    return cert;
  }
  // No per-prime-power single-factor assignment; a product root can still
  // exist when valuations split across factors. Scan directly when small.
  if (m <= scan_bound) {
    uint64_t mm = uint64_t(m);
    for (uint64_t x = 0; x < mm; ++x) {
      uint64_t prod = 1 % mm;
      uint64_t xq = detail::pow_mod_small(x, uint64_t(inst.q), mm);
      for (int64_t a : inst.entries) {
        uint64_t av = uint64_t(normalize_mod(a, m));
        prod = prod * ((xq + mm - av) % mm) % mm;
      }
      if (prod == 0) {
        cert.parts.clear();
        cert.root = x;
        cert.factor_index = std::nullopt;
        return cert;
      }
    }
  }
  return std::nullopt;
}

}  // namespace qsective
