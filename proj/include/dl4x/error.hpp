#pragma once

#include <stdexcept>
#include <string>

namespace dl4x {

// Base of every error raised by the reasoner.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class UndeclaredName : public Error {
public:
  using Error::Error;
};

class NormalizationUnsupported : public Error {
public:
  NormalizationUnsupported(const std::string &what, std::string subterm)
      : Error(what + ": " + subterm), subterm_(std::move(subterm)) {}
  const std::string &subterm() const { return subterm_; }

private:
  std::string subterm_;
};

class UnsupportedStatement : public Error {
public:
  using Error::Error;
};

class UnknownName : public Error {
public:
  using Error::Error;
};

// A configured resource budget (clauses, branches, oracle bits) was hit.
class CapacityExceeded : public Error {
public:
  using Error::Error;
};

class PreconditionViolated : public Error {
public:
  using Error::Error;
};

class BranchNotComplete : public Error {
public:
  using Error::Error;
};

} // namespace dl4x
