#pragma once

#include <stdexcept>
#include <string>

namespace coopaloha {

enum class error_kind {
  config,          // malformed or inconsistent input
  guard_refusal,   // exact analysis refused for the pattern-space size
  non_convergence,
  numerical,       // probability escaped [0, 1] beyond float noise
};

class error : public std::runtime_error {
 public:
  error(error_kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  error_kind kind() const noexcept { return kind_; }

 private:
  error_kind kind_;
};

class config_error : public error {
 public:
  explicit config_error(const std::string& what) : error(error_kind::config, what) {}
};

class guard_error : public error {
 public:
  explicit guard_error(const std::string& what) : error(error_kind::guard_refusal, what) {}
};

class numerical_error : public error {
 public:
  explicit numerical_error(const std::string& what) : error(error_kind::numerical, what) {}
};

// Values within 1e-6 of [0, 1] are float noise and get clamped; anything
// further out is a logic error.
double checked_probability(double value, const char* what);

}  // namespace coopaloha
