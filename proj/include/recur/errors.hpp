#pragma once

#include <stdexcept>
#include <string>

namespace recur {

/// A refinement loop hit the precision ceiling without deciding.
class PrecisionExceeded : public std::runtime_error {
 public:
  explicit PrecisionExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// Negative index requested for a recurrence with |p_0| != 1.
class NotBackwardExtendable : public std::runtime_error {
 public:
  explicit NotBackwardExtendable(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed user input (JSON, flags, invalid specs).
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// A family builder clause does not hold. `clause` is a stable identifier.
class ConditionFailed : public std::runtime_error {
 public:
  ConditionFailed(std::string clause, const std::string& detail)
      : std::runtime_error(clause + ": " + detail), clause_(std::move(clause)) {}
  const std::string& clause() const { return clause_; }

 private:
  std::string clause_;
};

/// The term store of a search would exceed the configured cap.
class MemoryGuardExceeded : public std::runtime_error {
 public:
  explicit MemoryGuardExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// A hypothesis of the certification theorem does not hold. `which` is a
/// stable identifier of the first failed check.
class HypothesisFailed : public std::runtime_error {
 public:
  HypothesisFailed(std::string which, const std::string& detail)
      : std::runtime_error(which + ": " + detail), which_(std::move(which)) {}
  const std::string& which() const { return which_; }

 private:
  std::string which_;
};

/// No multiplicative dependence found up to the denominator bound. This is
/// not a refutation.
class DependenceUnknown : public std::runtime_error {
 public:
  explicit DependenceUnknown(const std::string& what) : std::runtime_error(what) {}
};

/// The requested ledger mode is undefined for this input.
class ModeUnavailable : public InputError {
 public:
  explicit ModeUnavailable(const std::string& what) : InputError(what) {}
};

}  // namespace recur
