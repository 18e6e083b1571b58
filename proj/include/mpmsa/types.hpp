#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace mpmsa {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using MatrixXd = Matrix<double>;
using VectorXd = Vector<double>;

using Vertex = int;

// Broken caller contract (wrong arity, precondition not met).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Malformed user input: spec strings, config files, parameter values.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Non-finite matrix entries and similar numerical garbage.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A graph or volume larger than the configured budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// E within the resolvent guard of the spectrum.
class ResonanceError : public std::runtime_error {
 public:
  ResonanceError(const std::string& what, double distance)
      : std::runtime_error(what), distance_(distance) {}
  double distance() const { return distance_; }

 private:
  double distance_;
};

inline void require(bool cond, const char* msg) {
  if (!cond) throw ContractViolation(msg);
}

}  // namespace mpmsa
