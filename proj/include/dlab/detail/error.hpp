#pragma once

#include <stdexcept>
#include <string>

namespace dlab {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of the operation (poles, cuts,
/// divergent regions).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Index or point outside a truncation (n > N, x outside the grid range).
class RangeError : public Error {
 public:
  using Error::Error;
};

/// A configured memory or size budget would be exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// Parameters that are invalid for the requested construction.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Exact integer arithmetic overflowed its representation.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// A Dirichlet polynomial has mass on a basis direction excluded by w_n = 0.
class MembershipError : public Error {
 public:
  using Error::Error;
};

/// A measure was queried beyond its truncation horizon.
class HorizonError : public Error {
 public:
  using Error::Error;
};

}  // namespace dlab
