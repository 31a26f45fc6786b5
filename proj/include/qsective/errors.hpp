#pragma once

#include <stdexcept>
#include <string>

namespace qsective {

/// Base class for all library errors.
class error : public std::runtime_error {
 public:
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// An input violates a hypothesis of the problem (bad instance, bad flag,
/// domain precondition). Maps to CLI exit code 2.
class validation_error : public error {
 public:
  enum class violation {
    not_odd_prime,
    zero_entry,
    unit_entry,
    not_q_free,
    duplicate_entry,
    zero_column,
    non_coprime_moduli,
    domain,
  };

  validation_error(violation v, const std::string& what) : error(what), violation_(v) {}

  violation kind() const { return violation_; }

 private:
  violation violation_;
};

/// A required intermediate does not fit in 127 bits (or a primality path
/// exceeds 64 bits). Inputs are rejected rather than silently truncated.
class width_error : public error {
 public:
  explicit width_error(const std::string& what) : error(what) {}
};

/// A configured enumeration or search bound would be exceeded; the
/// operation refuses instead of running unbounded. Maps to CLI exit code 3.
class bound_error : public error {
 public:
  explicit bound_error(const std::string& what) : error(what) {}
};

}  // namespace qsective
