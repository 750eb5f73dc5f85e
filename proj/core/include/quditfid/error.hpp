#pragma once

#include <stdexcept>
#include <string>

namespace qfid {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  DimensionMismatch(std::size_t lhs, std::size_t rhs);
};

class NotFinite : public Error {
 public:
  using Error::Error;
};

class NotHermitian : public Error {
 public:
  explicit NotHermitian(double deviation);
  double deviation() const noexcept { return deviation_; }

 private:
  double deviation_;
};

class NotPositive : public Error {
 public:
  explicit NotPositive(double min_eigenvalue);
  double min_eigenvalue() const noexcept { return min_eigenvalue_; }

 private:
  double min_eigenvalue_;
};

class TraceError : public Error {
 public:
  explicit TraceError(double trace);
  double trace() const noexcept { return trace_; }

 private:
  double trace_;
};

class NotUnitary : public Error {
 public:
  explicit NotUnitary(double deviation);
  double deviation() const noexcept { return deviation_; }

 private:
  double deviation_;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace qfid
