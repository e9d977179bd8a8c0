#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace jmgrow {

// Base class so callers can catch everything thrown by this library at once.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside a function's mathematical domain (negative time, p <= 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Adaptive integration hit its depth limit before reaching the requested
// tolerance. Carries the error estimate actually achieved.
class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, double achieved_abs, double achieved_rel)
      : Error(what), achieved_abs_(achieved_abs), achieved_rel_(achieved_rel) {}

  double achieved_abs() const { return achieved_abs_; }
  double achieved_rel() const { return achieved_rel_; }

 private:
  double achieved_abs_;
  double achieved_rel_;
};

// A requested speed moment does not exist (or overflows to infinity).
class InfiniteMomentError : public Error {
 public:
  using Error::Error;
};

// Model or campaign parameters violate an invariant. Collects every violation
// found, not just the first one.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> messages)
      : Error(join(messages)), messages_(std::move(messages)) {}

  const std::vector<std::string>& messages() const { return messages_; }

 private:
  static std::string join(const std::vector<std::string>& messages) {
    std::string out = "validation failed:";
    for (const auto& m : messages) {
      out += "\n  - ";
      out += m;
    }
    return out;
  }

  std::vector<std::string> messages_;
};

// Empirical sample unusable for a distributional statistic (too few points,
// zero variance where positive variance is required).
class DegenerateSampleError : public Error {
 public:
  using Error::Error;
};

// Config file could not be parsed; message lists every offending line/key.
class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<std::string> messages)
      : Error(join(messages)), messages_(std::move(messages)) {}

  const std::vector<std::string>& messages() const { return messages_; }

 private:
  static std::string join(const std::vector<std::string>& messages) {
    std::string out = "config error:";
    for (const auto& m : messages) {
      out += "\n  - ";
      out += m;
    }
    return out;
  }

  std::vector<std::string> messages_;
};

// Rejection sampling failed to place a point (should not happen for sane
// geometry; indicates a bug or a degenerate window).
class SamplerError : public Error {
 public:
  using Error::Error;
};

}  // namespace jmgrow
