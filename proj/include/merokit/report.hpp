#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <variant>
#include <vector>

#include "merokit/series.hpp"

namespace merokit {

enum class Verdict { holds, fails, inconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::fails: return "fails";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

/// Where a check was decided: a sample point or a coefficient index.
using Witness = std::variant<std::monostate, cplx, int>;

/// Outcome of one numeric check. A `fails` verdict always carries a witness.
struct Report {
  Verdict verdict = Verdict::inconclusive;
  double worst_margin = std::numeric_limits<double>::quiet_NaN();
  Witness witness;
  std::string detail;
  std::vector<std::string> warnings;
  std::string grid_hash;  // set by grid-sampled checks

  bool has_witness() const { return !std::holds_alternative<std::monostate>(witness); }
  bool holds() const { return verdict == Verdict::holds; }
  bool fails() const { return verdict == Verdict::fails; }
  bool inconclusive() const { return verdict == Verdict::inconclusive; }
};

/// Running minimum of a pointwise margin; ties keep the first witness.
class MarginTracker {
 public:
  void observe(double margin, Witness where) {
    if (!seen_ || margin < worst_) {
      worst_ = margin;
      witness_ = where;
      seen_ = true;
    }
  }
  bool seen() const { return seen_; }
  double worst() const { return seen_ ? worst_ : std::numeric_limits<double>::infinity(); }
  const Witness& witness() const { return witness_; }

 private:
  bool seen_ = false;
  double worst_ = std::numeric_limits<double>::infinity();
  Witness witness_;
};

}  // namespace merokit
