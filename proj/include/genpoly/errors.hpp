#pragma once

#include <stdexcept>
#include <string>

namespace genpoly {

/// Base of every error raised by the library. `exit_code()` is the CLI mapping.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual int exit_code() const { return 1; }
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, std::string expected, const std::string& detail)
      : Error("syntax error at " + std::to_string(position) + ": expected " + expected +
              (detail.empty() ? "" : " (" + detail + ")")),
        position_(position),
        expected_(std::move(expected)) {}
  std::size_t position() const { return position_; }
  const std::string& expected() const { return expected_; }
  int exit_code() const override { return 2; }

 private:
  std::size_t position_;
  std::string expected_;
};

class ConstantTermError : public Error {
 public:
  using Error::Error;
  int exit_code() const override { return 2; }
};

/// A decision (bracket, sign, membership) could not be certified at the precision cap.
class Undecidable : public Error {
 public:
  using Error::Error;
  int exit_code() const override { return 3; }
};

class TieUndecidable : public Undecidable {
 public:
  using Undecidable::Undecidable;
};

class UndecidableZero : public Undecidable {
 public:
  using Undecidable::Undecidable;
};

class NotSGP : public Error {
 public:
  using Error::Error;
  int exit_code() const override { return 4; }
};

class NotGP : public Error {
 public:
  using Error::Error;
  int exit_code() const override { return 4; }
};

class CapExceeded : public Error {
 public:
  using Error::Error;
  int exit_code() const override { return 5; }
};

class WindowTooLarge : public CapExceeded {
 public:
  using CapExceeded::CapExceeded;
};

class LevelTooLarge : public CapExceeded {
 public:
  using CapExceeded::CapExceeded;
};

class ResolutionTooFine : public CapExceeded {
 public:
  using CapExceeded::CapExceeded;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
  int exit_code() const override { return 6; }
};

class NotGoodShift : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class SpacingViolation : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// Raised when a PET step fails to lower the weight vector; indicates a construction bug.
class DescentFailure : public Error {
 public:
  using Error::Error;
  int exit_code() const override { return 6; }
};

}  // namespace genpoly
