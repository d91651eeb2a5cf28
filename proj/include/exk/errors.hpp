#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace exk {

// Base for every failure that stems from bad input rather than a bug.
// code() is a stable machine-readable tag; detail() the violated condition.
class DomainError : public std::runtime_error {
 public:
  DomainError(std::string code, std::string detail)
      : std::runtime_error(code + ": " + detail),
        code_(std::move(code)),
        detail_(std::move(detail)) {}

  const std::string& code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::string code_;
  std::string detail_;
};

class NotAnExcursion : public DomainError {
 public:
  // reason is one of: empty, bad-step, interior-zero, nonzero-endpoint, mixed-sign
  explicit NotAnExcursion(std::string reason)
      : DomainError("NotAnExcursion", std::move(reason)) {}
};

class MalformedSequence : public DomainError {
 public:
  explicit MalformedSequence(std::string reason)
      : DomainError("MalformedSequence", std::move(reason)) {}
};

class InvalidLevelNumbers : public DomainError {
 public:
  explicit InvalidLevelNumbers(std::string reason)
      : DomainError("InvalidLevelNumbers", std::move(reason)) {}
};

class OutOfDomain : public DomainError {
 public:
  OutOfDomain(std::string condition, int stage = -1)
      : DomainError("OutOfDomain", stage < 0 ? condition
                                             : "stage " + std::to_string(stage) + ": " + condition),
        condition_(std::move(condition)),
        stage_(stage) {}

  const std::string& condition() const noexcept { return condition_; }
  // Index of the failing op inside a composition, -1 for a single shift.
  int stage() const noexcept { return stage_; }

 private:
  std::string condition_;
  int stage_;
};

class LevelNumbersMismatch : public DomainError {
 public:
  explicit LevelNumbersMismatch(std::string detail)
      : DomainError("LevelNumbersMismatch", std::move(detail)) {}
};

class InvalidDecomposition : public DomainError {
 public:
  explicit InvalidDecomposition(std::string detail)
      : DomainError("InvalidDecomposition", std::move(detail)) {}
};

class BoundExceeded : public DomainError {
 public:
  explicit BoundExceeded(std::string detail)
      : DomainError("BoundExceeded", std::move(detail)) {}
};

class NotUniqueMax : public DomainError {
 public:
  explicit NotUniqueMax(std::string detail)
      : DomainError("NotUniqueMax", std::move(detail)) {}
};

class InvalidLaw : public DomainError {
 public:
  explicit InvalidLaw(std::string detail)
      : DomainError("InvalidLaw", std::move(detail)) {}
};

}  // namespace exk
