#pragma once

/**
 * @file arith.hpp
 * @brief Exact integer arithmetic: modular exponentiation, deterministic
 *        primality, factorization, modular inverse and CRT.
 *
 * Everything works in 128-bit machine integers with checked operations.
 * Moduli are restricted to 127 bits so that sums of two residues never
 * wrap; primality-needing paths are restricted to 64 bits where the
 * Miller-Rabin witness set is deterministic.
 */

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qsective/errors.hpp"

namespace qsective {

using int128 = __int128;
using uint128 = unsigned __int128;

inline constexpr uint128 kMaxModulus = (uint128(1) << 127) - 1;

/// Decimal rendering for 128-bit values (iostreams cannot print them).
inline std::string to_string(uint128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.push_back(char('0' + int(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

inline std::string to_string(int128 v) {
  if (v < 0) return "-" + to_string(uint128(-v));
  return to_string(uint128(v));
}

/// Parse a decimal string (optional leading '-') into int128.
inline std::optional<int128> parse_int128(const std::string& s) {
  if (s.empty()) return std::nullopt;
  size_t i = 0;
  bool neg = false;
  if (s[0] == '-') {
    neg = true;
    i = 1;
    if (s.size() == 1) return std::nullopt;
  }
  uint128 acc = 0;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return std::nullopt;
    if (acc > (uint128(-1) - 9) / 10) return std::nullopt;
    acc = acc * 10 + uint128(s[i] - '0');
  }
  if (!neg && acc > uint128(kMaxModulus)) return std::nullopt;
  if (neg && acc > uint128(kMaxModulus) + 1) return std::nullopt;
  return neg ? -int128(acc) : int128(acc);
}

/// A positive modulus m >= 2 of width <= 127 bits.
struct NaturalModulus {
  uint128 value;

  explicit NaturalModulus(uint128 v) : value(v) {
    if (v < 2)
      throw validation_error(validation_error::violation::domain, "modulus must be >= 2");
    if (v > kMaxModulus) throw width_error("modulus exceeds 127-bit width");
  }
};

/// a * b with overflow check against the 127-bit modulus width.
inline uint128 checked_mul(uint128 a, uint128 b) {
  if (a != 0 && b > kMaxModulus / a) throw width_error("product exceeds 127-bit width");
  return a * b;
}

/// base^exp with overflow check.
inline uint128 checked_pow(uint128 base, unsigned exp) {
  uint128 r = 1;
  for (unsigned i = 0; i < exp; ++i) r = checked_mul(r, base);
  return r;
}

/// a * b mod m, valid for m up to 127 bits.
inline uint128 mul_mod(uint128 a, uint128 b, uint128 m) {
  a %= m;
  b %= m;
  if (m <= UINT64_MAX) return (a * b) % m;
  // Double-and-add; residues < 2^127 so a+a never wraps uint128.
  uint128 r = 0;
  while (b > 0) {
    if (b & 1) {
      r += a;
      if (r >= m) r -= m;
    }
    a += a;
    if (a >= m) a -= m;
    b >>= 1;
  }
  return r;
}

/// Canonical residue of a signed value in [0, m).
inline uint128 normalize_mod(int128 a, uint128 m) {
  int128 r = a % int128(m);
  if (r < 0) r += int128(m);
  return uint128(r);
}

/// base^exp mod m by repeated squaring.
inline uint128 mod_pow(int128 base, uint128 exp, const NaturalModulus& m) {
  uint128 b = normalize_mod(base, m.value);
  uint128 r = 1 % m.value;
  while (exp > 0) {
    if (exp & 1) r = mul_mod(r, b, m.value);
    b = mul_mod(b, b, m.value);
    exp >>= 1;
  }
  return r;
}

/// Extended gcd: returns g = gcd(a,b) and x,y with a*x + b*y = g.
struct Egcd {
  int128 g, x, y;
};

inline Egcd ext_gcd(int128 a, int128 b) {
  if (b == 0) return {a < 0 ? -a : a, a < 0 ? int128(-1) : int128(1), 0};
  Egcd e = ext_gcd(b, a % b);
  return {e.g, e.y, e.x - (a / b) * e.y};
}

inline uint128 gcd_u128(uint128 a, uint128 b) {
  while (b != 0) {
    uint128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

/// Inverse of a modulo m; throws if gcd(a, m) != 1.
inline uint128 mod_inverse(int128 a, const NaturalModulus& m) {
  uint128 ar = normalize_mod(a, m.value);
  Egcd e = ext_gcd(int128(ar), int128(m.value));
  if (e.g != 1)
    throw validation_error(validation_error::violation::domain,
                           "element not invertible modulo " + to_string(m.value));
  return normalize_mod(e.x, m.value);
}

namespace detail {

inline bool miller_rabin_witness(uint64_t n, uint64_t a, uint64_t d, int r) {
  uint128 x = 1;
  uint128 base = a % n;
  if (base == 0) return true;
  uint64_t e = d;
  while (e > 0) {
    if (e & 1) x = (x * base) % n;
    base = (base * base) % n;
    e >>= 1;
  }
  if (x == 1 || x == n - 1) return true;
  for (int i = 1; i < r; ++i) {
    x = (x * x) % n;
    if (x == n - 1) return true;
  }
  return false;
}

}  // namespace detail

/// Deterministic primality for n < 2^64. Larger inputs are rejected.
inline bool is_prime(uint128 n) {
  if (n > UINT64_MAX) throw width_error("primality test limited to 64-bit inputs");
  uint64_t v = uint64_t(n);
  if (v < 2) return false;
  for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (v == p) return true;
    if (v % p == 0) return false;
  }
  uint64_t d = v - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  // This witness set is deterministic for all n < 2^64 (Sinclair).
  for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (!detail::miller_rabin_witness(v, a, d, r)) return false;
  }
  return true;
}

/// Sign plus strictly increasing prime-exponent list; reconstructs the
/// original integer exactly. Never represents 0.
struct FactoredInteger {
  int sign = 1;  // +1 or -1
  std::vector<std::pair<uint64_t, unsigned>> factors;

  int128 reconstruct() const {
    uint128 v = 1;
    for (auto [p, e] : factors) v = checked_mul(v, checked_pow(p, e));
    return sign > 0 ? int128(v) : -int128(v);
  }
};

namespace detail {

inline uint64_t pollard_brent(uint64_t n) {
  // Deterministic restart schedule: c = 1, 2, 3, ...
  auto f = [&](uint128 x, uint64_t c) { return uint64_t((x * x + c) % n); };
  for (uint64_t c = 1;; ++c) {
    uint64_t x = 2, y = 2, d = 1;
    uint64_t power = 1, lam = 1;
    while (d == 1) {
      if (power == lam) {
        x = y;
        power *= 2;
        lam = 0;
      }
      y = f(y, c);
      ++lam;
      uint64_t diff = x > y ? x - y : y - x;
      if (diff == 0) break;  // cycle without factor: retry with next c
      d = uint64_t(gcd_u128(diff, n));
    }
    if (d != 1 && d != n) return d;
  }
}

inline void factor_u64(uint64_t n, std::vector<std::pair<uint64_t, unsigned>>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.emplace_back(n, 1);
    return;
  }
  uint64_t d = pollard_brent(n);
  factor_u64(d, out);
  factor_u64(n / d, out);
}

}  // namespace detail

/// Canonical factorization of a nonzero integer. Trial division to 10^6,
/// then Pollard-Brent on the (at most 64-bit) cofactor.
inline FactoredInteger factorize(int128 n) {
  if (n == 0)
    throw validation_error(validation_error::violation::domain, "cannot factor 0");
  FactoredInteger out;
  uint128 v;
  if (n < 0) {
    out.sign = -1;
    v = uint128(-n);
  } else {
    v = uint128(n);
  }
  if (v > kMaxModulus) throw width_error("factorization input exceeds 127-bit width");
  static const std::vector<uint64_t> small = [] {
    std::vector<uint64_t> p;
    std::vector<bool> comp(10001, false);
    for (uint64_t i = 2; i <= 10000; ++i)
      if (!comp[i]) {
        p.push_back(i);
        for (uint64_t j = i * i; j <= 10000; j += i) comp[j] = true;
      }
    return p;
  }();
  for (uint64_t p : small) {
    if (uint128(p) * p > v) break;
    if (v % p == 0) {
      unsigned e = 0;
      while (v % p == 0) {
        v /= p;
        ++e;
      }
      out.factors.emplace_back(p, e);
    }
  }
  if (v > 1) {
    if (v > UINT64_MAX)
      throw width_error("cofactor " + to_string(v) + " exceeds 64-bit factorization range");
    std::vector<std::pair<uint64_t, unsigned>> rest;
    detail::factor_u64(uint64_t(v), rest);
    std::sort(rest.begin(), rest.end());
    for (auto [p, e] : rest) {
      if (!out.factors.empty() && out.factors.back().first == p)
        out.factors.back().second += e;
      else
        out.factors.emplace_back(p, e);
    }
  }
  return out;
}

/// Exact p-adic valuation of a nonzero value.
inline unsigned valuation(int128 n, uint64_t p) {
  if (n == 0)
    throw validation_error(validation_error::violation::domain, "valuation of 0 undefined");
  uint128 v = n < 0 ? uint128(-n) : uint128(n);
  unsigned e = 0;
  while (v % p == 0) {
    v /= p;
    ++e;
  }
  return e;
}

/// Combine r1 mod m1 and r2 mod m2 into the unique residue mod m1*m2.
/// Moduli must be coprime.
inline std::pair<uint128, NaturalModulus> crt_pair(int128 r1, const NaturalModulus& m1,
                                                   int128 r2, const NaturalModulus& m2) {
  if (gcd_u128(m1.value, m2.value) != 1)
    throw validation_error(validation_error::violation::non_coprime_moduli,
                           "crt_pair requires coprime moduli");
  uint128 prod = checked_mul(m1.value, m2.value);
  uint128 a1 = normalize_mod(r1, m1.value);
  uint128 a2 = normalize_mod(r2, m2.value);
  // r = a1 + m1 * ((a2 - a1) * m1^{-1} mod m2)
  uint128 diff = normalize_mod(int128(a2 % m2.value) - int128(a1 % m2.value), m2.value);
  uint128 t = mul_mod(diff, mod_inverse(int128(m1.value), m2), m2.value);
  uint128 r = a1 + m1.value * t;  // < m1*m2 <= 2^127
  return {r, NaturalModulus(prod)};
}

/// Primes up to (and including) `limit`, by sieve.
inline std::vector<uint64_t> primes_up_to(uint64_t limit) {
  std::vector<uint64_t> out;
  if (limit < 2) return out;
  std::vector<bool> composite(limit + 1, false);
  for (uint64_t i = 2; i <= limit; ++i) {
    if (!composite[i]) {
      out.push_back(i);
      for (uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
  }
  return out;
}

}  // namespace qsective
