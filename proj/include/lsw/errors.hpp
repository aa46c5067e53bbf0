#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace lsw {

/// Raised when a numeric routine receives arguments outside its domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when a configuration file is malformed or fails validation.
/// `key()` names the offending dotted key (empty for parse errors).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error(key.empty() ? message : key + ": " + message), key_(std::move(key)) {}

  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

namespace detail {

[[noreturn]] inline void domain_fail(const std::string& what) { throw DomainError(what); }

}  // namespace detail

}  // namespace lsw
