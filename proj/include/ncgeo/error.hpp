#pragma once

#include <stdexcept>
#include <string>

namespace ncgeo {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Shape or index mismatch in a linear-algebra or tensor operation.
class DimensionError : public Error {
public:
  explicit DimensionError(const std::string& msg) : Error(msg) {}
};

/// Division by zero, inversion of a singular matrix, and similar.
class SingularError : public Error {
public:
  explicit SingularError(const std::string& msg) : Error(msg) {}
};

/// A structural invariant of an algebra, module or form was violated.
class InvariantError : public Error {
public:
  explicit InvariantError(const std::string& msg) : Error(msg) {}
};

/// An operation that requires a commutative coefficient algebra was
/// invoked over a noncommutative one.  Jet construction raises this by
/// contract; callers must not silently fall back.
class NoncommutativeAlgebraError : public Error {
public:
  explicit NoncommutativeAlgebraError(const std::string& msg) : Error(msg) {}
};

/// Mixing elements of two distinct algebras or incompatible module kinds.
class MismatchError : public Error {
public:
  explicit MismatchError(const std::string& msg) : Error(msg) {}
};

}  // namespace ncgeo
