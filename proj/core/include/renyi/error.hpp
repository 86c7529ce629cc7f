#pragma once

#include <stdexcept>
#include <string>

namespace renyi {

/// Base class for every numerical or domain failure raised by the library.
/// The CLI maps anything derived from this to exit status 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class NotPositiveDefinite : public Error {
 public:
  using Error::Error;
};

class TooFewRows : public Error {
 public:
  using Error::Error;
};

class KTooLarge : public Error {
 public:
  using Error::Error;
};

/// Some k-th neighbour distance is zero where the estimator needs rho > 0.
class DuplicatePoints : public Error {
 public:
  using Error::Error;
};

class DegenerateSample : public Error {
 public:
  using Error::Error;
};

class NTooSmall : public Error {
 public:
  using Error::Error;
};

class NTooLarge : public Error {
 public:
  using Error::Error;
};

class NonPositiveMean : public Error {
 public:
  using Error::Error;
};

}  // namespace renyi
