#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace ttspin {

// All library failures derive from Error so callers (the CLI in particular)
// can separate them from std::bad_alloc and friends.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class NonHermitianInput : public Error {
public:
  using Error::Error;
};

class NotADensityMatrix : public Error {
public:
  using Error::Error;
};

// Raised by assemble_density when production coefficients give a
// non-positive operator.
class NotPSD : public NotADensityMatrix {
public:
  using NotADensityMatrix::NotADensityMatrix;
};

class ZeroAxis : public Error {
public:
  using Error::Error;
};

class BelowThreshold : public Error {
public:
  using Error::Error;
};

class InvalidKinematics : public Error {
public:
  using Error::Error;
};

class NegativeRadicand : public Error {
public:
  using Error::Error;
};

// A log argument of the closed-form expressions left the positive domain.
class DomainError : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  using Error::Error;
};

class ValidationError : public Error {
public:
  ValidationError(std::string field, const std::string &what)
      : Error(field + ": " + what), field_(std::move(field)) {}

  const std::string &field() const noexcept { return field_; }

private:
  std::string field_;
};

class IoError : public Error {
public:
  using Error::Error;
};

} // namespace ttspin
