#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace isolab {

class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Algebraic preconditions (zero inverse, t = 0, ...).
class DomainError : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  ParseError(const std::string& msg, std::size_t offset)
      : Error(msg + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

private:
  std::size_t offset_;
};

// Evaluation hit a pole (division by zero, log of zero) at a known point.
class PoleError : public Error {
public:
  PoleError(const std::string& msg, std::complex<double> at)
      : Error(msg + " at z = (" + std::to_string(at.real()) + ", " +
              std::to_string(at.imag()) + ")"),
        at_(at) {}
  std::complex<double> at() const { return at_; }

private:
  std::complex<double> at_;
};

// Failure tied to a grid node; p, q are the node indices.
class NodeError : public Error {
public:
  NodeError(const std::string& msg, int p, int q)
      : Error(msg + " at node (" + std::to_string(p) + ", " + std::to_string(q) + ")"),
        p_(p), q_(q) {}
  int node_p() const { return p_; }
  int node_q() const { return q_; }

private:
  int p_, q_;
};

class PoleOnGridError : public NodeError {
public:
  using NodeError::NodeError;
};

class DegenerateMetricError : public NodeError {
public:
  using NodeError::NodeError;
};

// An ODE solution left the working scale (Darboux transform passing through
// infinity is rejected rather than continued).
class EscapeError : public NodeError {
public:
  using NodeError::NodeError;
};

class CoincidenceError : public NodeError {
public:
  using NodeError::NodeError;
};

class SingularDataError : public NodeError {
public:
  using NodeError::NodeError;
};

class ScalingError : public NodeError {
public:
  using NodeError::NodeError;
};

class FrameSingularError : public NodeError {
public:
  using NodeError::NodeError;
};

// Configuration file problems; message carries the offending key path.
class ValidationError : public Error {
public:
  using Error::Error;
};

}  // namespace isolab
