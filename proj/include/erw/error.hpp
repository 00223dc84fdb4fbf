#pragma once

#include <stdexcept>
#include <string>

namespace erw {

/// Precondition or parameter-domain violation (kernel off the lattice,
/// bound outside its range of validity, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Operation invoked on a state it is not defined for.
class StateError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Inconsistent combination of options, or a rejected configuration document.
class ConfigError : public std::invalid_argument {
 public:
  enum class Kind { malformed, unknown_key, missing_key, type_mismatch, out_of_range, invalid_combination };

  ConfigError(Kind kind, std::string key, const std::string& what)
      : std::invalid_argument(what), kind_(kind), key_(std::move(key)) {}

  Kind kind() const noexcept { return kind_; }
  const std::string& key() const noexcept { return key_; }

 private:
  Kind kind_;
  std::string key_;
};

/// A hard cap (enumeration size, horizon) would be exceeded.
class ResourceError : public std::length_error {
 public:
  using std::length_error::length_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace erw
