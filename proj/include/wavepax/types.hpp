#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace wavepax {

// Validity horizon of a flow or phase solution. Infinite horizons are a
// distinct state, never a sentinel value.
class Horizon {
 public:
  Horizon() : finite_(false), t_(0.0) {}  // default: no crossing
  static Horizon infinite() { return Horizon(); }
  static Horizon at(double t) { return Horizon(t); }

  bool is_finite() const { return finite_; }
  double time() const {
    if (!finite_) throw std::logic_error("Horizon::time() on infinite horizon");
    return t_;
  }
  // min(horizon, T) as a plain number
  double clipped(double T) const { return finite_ ? std::min(t_, T) : T; }

 private:
  explicit Horizon(double t) : finite_(true), t_(t) {}
  bool finite_;
  double t_;
};

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Missing or out-of-range construction parameters.
struct ParameterError : Error {
  using Error::Error;
};

// Argument outside an operation's stated domain.
struct DomainError : Error {
  using Error::Error;
};

// Evaluation past the validity horizon, or blow-up during integration.
struct HorizonError : Error {
  HorizonError(const std::string& msg, double last_valid_time)
      : Error(msg + " (last valid t=" + std::to_string(last_valid_time) + ")"),
        last_valid(last_valid_time) {}
  double last_valid;
};

// Mass reaching the grid boundary (aliasing) or an under-resolved field.
struct GridError : Error {
  GridError(const std::string& msg, double at_time)
      : Error(msg + " (t=" + std::to_string(at_time) + ")"), time(at_time) {}
  double time;
};

// Divergent weighted quadrature.
struct IntegrabilityError : Error {
  using Error::Error;
};

// Two internal routes disagree; indicates a bug, not bad input.
struct ConsistencyError : Error {
  using Error::Error;
};

// A certificate quantity degenerated (vanishing integral, empty condition set).
struct CertificateError : Error {
  using Error::Error;
};

}  // namespace wavepax
