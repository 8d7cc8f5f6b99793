#pragma once

#include <stdexcept>
#include <string>

namespace kmk {

// Raised when an argument violates a documented precondition.
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Factorization gave up; remainder() is the unfactored cofactor (rendered).
class FactorizationBoundError : public std::runtime_error {
 public:
  FactorizationBoundError(const std::string& what, std::string remainder)
      : std::runtime_error(what), remainder_(std::move(remainder)) {}
  const std::string& remainder() const { return remainder_; }

 private:
  std::string remainder_;
};

class PrecisionError : public std::runtime_error {
 public:
  explicit PrecisionError(const std::string& what) : std::runtime_error(what) {}
};

// A residue field we cannot reduce to a smaller tower.
class UnsupportedError : public std::runtime_error {
 public:
  explicit UnsupportedError(const std::string& what) : std::runtime_error(what) {}
};

class InternalError : public std::runtime_error {
 public:
  explicit InternalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace kmk
