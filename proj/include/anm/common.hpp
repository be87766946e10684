#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace anm {

// Absolute tolerance for all equilibrium-inequality comparisons.
inline constexpr double kDefaultTol = 1e-9;

// Pivot / feasibility tolerance of the LP solver.
inline constexpr double kLpTol = 1e-8;

// Maximum number of decimal places accepted when rescaling decimal
// inputs to integers for the knapsack DPs.
inline constexpr int kMaxDecimalScale = 6;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed JSON or missing/mistyped fields.
struct SchemaError : Error {
  using Error::Error;
};

// Structurally valid input violating a model invariant.
struct ValidationError : Error {
  using Error::Error;
};

// Solver called on a problem outside its supported mode.
struct ModeError : Error {
  using Error::Error;
};

// Input not expressible as scaled integers within the decimal cap.
struct ScaleError : Error {
  using Error::Error;
};

// Oracle input exceeds the enumeration caps.
struct CapExceeded : Error {
  using Error::Error;
};

// Generator input outside the stated bounds.
struct PreconditionError : Error {
  using Error::Error;
};

// LP solver exceeded its iteration cap.
struct NumericalFailure : Error {
  using Error::Error;
};

// Compensated (Kahan) accumulator.
class KahanSum {
 public:
  void add(double x) {
    double y = x - comp_;
    double t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Smallest power-of-ten scale (10^0 .. 10^kMaxDecimalScale) that makes every
// value integral, or -1 if none works.
inline int decimal_scale(const std::vector<double>& values) {
  double p = 1.0;
  for (int d = 0; d <= kMaxDecimalScale; ++d, p *= 10.0) {
    bool ok = true;
    for (double v : values) {
      double s = v * p;
      if (std::abs(s) > 9e15 || std::abs(s - std::llround(s)) > 1e-6 * std::max(1.0, std::abs(s))) {
        ok = false;
        break;
      }
    }
    if (ok) return d;
  }
  return -1;
}

inline long long scale_to_int(double v, int d) {
  double p = std::pow(10.0, d);
  return std::llround(v * p);
}

// ceil(num/den) for den > 0, exact.
inline long long ceil_div(long long num, long long den) {
  long long q = num / den;
  if (num % den != 0 && num > 0) ++q;
  return q;
}

// floor(num/den) for den > 0, exact.
inline long long floor_div(long long num, long long den) {
  long long q = num / den;
  if (num % den != 0 && num < 0) --q;
  return q;
}

}  // namespace anm
