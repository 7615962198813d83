#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace conjlen {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SingularMatrix : public Error {
 public:
  SingularMatrix() : Error("matrix is singular") {}
  using Error::Error;
};

class LatticeNotInvariant : public Error {
 public:
  LatticeNotInvariant() : Error("matrix does not preserve the lattice") {}
};

class NonInvertibleAction : public Error {
 public:
  NonInvertibleAction() : Error("action on the finite quotient is not a bijection") {}
};

class CapExceeded : public Error {
 public:
  explicit CapExceeded(std::size_t cap)
      : Error("size cap of " + std::to_string(cap) + " exceeded"), cap_(cap) {}
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t cap_;
};

class BeyondRadius : public Error {
 public:
  BeyondRadius() : Error("element lies outside the ball") {}
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class HypothesisViolated : public Error {
 public:
  using Error::Error;
};

class SearchExhausted : public Error {
 public:
  SearchExhausted() : Error("search window exhausted without a certified answer") {}
  using Error::Error;
};

class EmptyTable : public Error {
 public:
  EmptyTable() : Error("table has no certified rows") {}
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// Word parse failure; `position` is a 0-based character offset into the input.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace conjlen
