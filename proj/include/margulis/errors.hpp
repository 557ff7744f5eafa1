#pragma once

#include <stdexcept>
#include <string>

namespace margulis {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A frame whose smallest singular value falls below its rank tolerance.
class RankDeficient : public Error {
 public:
  using Error::Error;
};

/// Input subspace fails a required signature (isotropic, positive definite, type (n,1,0)).
class SignatureError : public Error {
 public:
  using Error::Error;
};

/// Linear part has no genuine attracting/repelling splitting.
class NotProximal : public Error {
 public:
  using Error::Error;
};

/// A computation whose answer is numerically indeterminate.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

/// Matrix is not in SO(n+1,n) (or not in the identity component where required).
class MembershipError : public Error {
 public:
  using Error::Error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

class InsufficientSamples : public Error {
 public:
  using Error::Error;
};

/// Malformed, dimensionally inconsistent or otherwise invalid input document.
class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace margulis
