#pragma once

#include <stdexcept>
#include <string>

namespace cogcap {

// Base class for every error raised by the library. The CLI maps these to
// exit code 3; anything else escaping a subcommand is a bug.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside its mathematical domain (alpha not in [0,1], n < 1, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Operation called outside the interference regime it is valid for.
class RegimeError : public Error {
 public:
  using Error::Error;
};

class ZeroGain : public Error {
 public:
  using Error::Error;
};

class NonpositiveNoise : public Error {
 public:
  using Error::Error;
};

class ZeroPower : public Error {
 public:
  using Error::Error;
};

// An iterative solver finished without meeting its residual bound.
class ToleranceError : public Error {
 public:
  using Error::Error;
};

class DegenerateSlope : public Error {
 public:
  using Error::Error;
};

class EmptySet : public Error {
 public:
  using Error::Error;
};

class SingularMatrix : public Error {
 public:
  using Error::Error;
};

class NonPSD : public Error {
 public:
  using Error::Error;
};

class NonConvergence : public Error {
 public:
  using Error::Error;
};

// Malformed configuration or output path problems.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace cogcap
