#pragma once

#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace splab {

// Caller violated an operation's precondition or a theorem hypothesis.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Query outside the mathematical domain (gradient at the origin, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Non-finite or otherwise unusable numerical values.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad harness configuration: unknown ids, unresolvable grids, parse failures.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A theorem hypothesis does not hold for the requested parameters.
class HypothesisError : public UsageError {
 public:
  using UsageError::UsageError;
};

// Throws HypothesisError(message) unless ok, or records the message instead
// while a HypothesisWaiver is alive on the calling thread.
void require_hypothesis(bool ok, const std::string& message);

/// Scoped waiver for negative-control sweeps: hypothesis checks on this
/// thread (and in parallel_for workers it starts) record their violations,
/// once per distinct message, instead of throwing.
class HypothesisWaiver {
 public:
  HypothesisWaiver();
  ~HypothesisWaiver();
  HypothesisWaiver(const HypothesisWaiver&) = delete;
  HypothesisWaiver& operator=(const HypothesisWaiver&) = delete;

  const std::vector<std::string>& violations() const { return violations_; }

 private:
  friend void require_hypothesis(bool, const std::string&);
  HypothesisWaiver* previous_;
  std::mutex mutex_;
  std::vector<std::string> violations_;
};

HypothesisWaiver* active_waiver();

// Installs another thread's waiver on this thread for the scope.
class AdoptedWaiver {
 public:
  explicit AdoptedWaiver(HypothesisWaiver* waiver);
  ~AdoptedWaiver();
  AdoptedWaiver(const AdoptedWaiver&) = delete;
  AdoptedWaiver& operator=(const AdoptedWaiver&) = delete;

 private:
  HypothesisWaiver* previous_;
};

}  // namespace splab
