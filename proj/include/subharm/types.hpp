#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace subharm {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The generators' brackets stabilize on a proper subalgebra.
class NotHoermander : public Error {
 public:
  using Error::Error;
};

/// A requested band is not resolved by the quadrature grid or the stored data.
class BandExceeded : public Error {
 public:
  using Error::Error;
};

class CutoffMismatch : public Error {
 public:
  using Error::Error;
};

/// A scalar function is undefined at some eigenvalue of a symbol.
class DomainError : public Error {
 public:
  using Error::Error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace subharm
