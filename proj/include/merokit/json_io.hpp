#pragma once

// JSON encodings of the library types. Parse errors carry the path of the
// offending field, e.g. "series.coeffs[3][1]: expected a number".

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "merokit/bounds.hpp"
#include "merokit/generators.hpp"
#include "merokit/membership.hpp"
#include "merokit/operator.hpp"
#include "merokit/report.hpp"
#include "merokit/series.hpp"

namespace merokit::io {

using json = nlohmann::json;

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline const json& field(const json& j, const std::string& path, const char* key) {
  if (!j.is_object()) throw FormatError(path + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw FormatError(path + "." + key + ": missing field");
  return *it;
}

inline double number(const json& j, const std::string& path) {
  if (!j.is_number()) throw FormatError(path + ": expected a number");
  return j.get<double>();
}

inline int integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw FormatError(path + ": expected an integer");
  return j.get<int>();
}

inline cplx complex_value(const json& j, const std::string& path) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) throw FormatError(path + ": expected [re, im]");
  return {number(j[0], path + "[0]"), number(j[1], path + "[1]")};
}

inline std::vector<cplx> complex_list(const json& j, const std::string& path) {
  if (!j.is_array()) throw FormatError(path + ": expected an array");
  std::vector<cplx> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(complex_value(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

inline double optional_number(const json& j, const std::string& path, const char* key, double fallback) {
  auto it = j.find(key);
  return it == j.end() ? fallback : number(*it, path + "." + key);
}

}  // namespace detail

inline json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

// --- series ----------------------------------------------------------------

inline json to_json(const LaurentSeries& f) {
  json coeffs = json::array();
  for (cplx c : f.coeffs()) coeffs.push_back(complex_to_json(c));
  return {{"pole_order", f.pole_order()},
          {"trunc_order", f.trunc_order()},
          {"coeffs", coeffs},
          {"exact_support", f.exact_support()}};
}

/// `exact_support` defaults to true: a listed coefficient vector is taken as the whole function.
inline LaurentSeries series_from_json(const json& j, const std::string& path = "series") {
  const int p = detail::integer(detail::field(j, path, "pole_order"), path + ".pole_order");
  const int k = detail::integer(detail::field(j, path, "trunc_order"), path + ".trunc_order");
  auto coeffs = detail::complex_list(detail::field(j, path, "coeffs"), path + ".coeffs");
  if (p < 1) throw FormatError(path + ".pole_order: must be >= 1");
  if (k < 1 - p) throw FormatError(path + ".trunc_order: must be >= 1 - pole_order");
  if (static_cast<int>(coeffs.size()) != k + p)
    throw FormatError(path + ".coeffs: expected " + std::to_string(k + p) + " entries (a_{1-p}..a_K), got " +
                      std::to_string(coeffs.size()));
  bool exact = true;
  if (auto it = j.find("exact_support"); it != j.end()) {
    if (!it->is_boolean()) throw FormatError(path + ".exact_support: expected a boolean");
    exact = it->get<bool>();
  }
  return LaurentSeries(p, std::move(coeffs), exact);
}

inline json to_json(const RawLaurent& r) {
  json coeffs = json::array();
  for (cplx c : r.coeffs()) coeffs.push_back(complex_to_json(c));
  return {{"low", r.low()}, {"coeffs", coeffs}, {"normalized", r.normalized()}};
}

// --- parameters ------------------------------------------------------------

inline json to_json(const OperatorParams& op) {
  return {{"lambda", op.lambda}, {"mu", op.mu}, {"m", op.m}, {"p", op.p}};
}

inline json to_json(const ClassParams& cp) { return {{"alpha", cp.alpha}, {"beta", cp.beta}}; }

inline OperatorParams operator_from_json(const json& j, const std::string& path = "params") {
  OperatorParams op;
  op.lambda = detail::number(detail::field(j, path, "lambda"), path + ".lambda");
  op.mu = detail::number(detail::field(j, path, "mu"), path + ".mu");
  op.m = detail::integer(detail::field(j, path, "m"), path + ".m");
  op.p = detail::integer(detail::field(j, path, "p"), path + ".p");
  try {
    op.validate();
  } catch (const std::invalid_argument& e) {
    throw FormatError(path + ": " + e.what());
  }
  return op;
}

/// alpha and beta are optional (defaults 0 and 1).
inline ClassParams class_from_json(const json& j, const std::string& path = "params") {
  if (!j.is_object()) throw FormatError(path + ": expected an object");
  ClassParams cp;
  cp.alpha = detail::optional_number(j, path, "alpha", 0.0);
  cp.beta = detail::optional_number(j, path, "beta", 1.0);
  try {
    cp.validate();
  } catch (const std::invalid_argument& e) {
    throw FormatError(path + ": " + e.what());
  }
  return cp;
}

inline json to_json(const SampleGrid& g) {
  return {{"radii", g.radii}, {"angles", g.angles}, {"margin", g.margin}, {"hash", g.hash()}};
}

inline SampleGrid grid_from_json(const json& j, const std::string& path = "grid") {
  if (!j.is_object()) throw FormatError(path + ": expected an object");
  SampleGrid g;
  if (auto it = j.find("radii"); it != j.end()) {
    if (!it->is_array()) throw FormatError(path + ".radii: expected an array");
    g.radii.clear();
    for (std::size_t i = 0; i < it->size(); ++i)
      g.radii.push_back(detail::number((*it)[i], path + ".radii[" + std::to_string(i) + "]"));
  }
  if (auto it = j.find("angles"); it != j.end()) g.angles = detail::integer(*it, path + ".angles");
  g.margin = detail::optional_number(j, path, "margin", g.margin);
  try {
    g.validate();
  } catch (const std::invalid_argument& e) {
    throw FormatError(path + ": " + e.what());
  }
  return g;
}

inline MeasureAtoms atoms_from_json(const json& j, const std::string& path = "atoms") {
  const json& list = j.is_object() ? detail::field(j, path, "atoms") : j;
  const std::string lpath = j.is_object() ? path + ".atoms" : path;
  if (!list.is_array()) throw FormatError(lpath + ": expected an array");
  MeasureAtoms mu;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string ip = lpath + "[" + std::to_string(i) + "]";
    mu.atoms.push_back({detail::complex_value(detail::field(list[i], ip, "x"), ip + ".x"),
                        detail::number(detail::field(list[i], ip, "weight"), ip + ".weight")});
  }
  try {
    mu.validate();
  } catch (const std::invalid_argument& e) {
    throw FormatError(lpath + ": " + e.what());
  }
  return mu;
}

inline json to_json(const MeasureAtoms& mu) {
  json list = json::array();
  for (const auto& a : mu.atoms) list.push_back({{"x", complex_to_json(a.x)}, {"weight", a.weight}});
  return {{"atoms", list}};
}

/// {"coeffs": [[re, im], ...]} listing c_1..c_d.
inline SchwarzPoly schwarz_from_json(const json& j, const std::string& path = "w") {
  auto coeffs = detail::complex_list(detail::field(j, path, "coeffs"), path + ".coeffs");
  try {
    return SchwarzPoly(std::move(coeffs));
  } catch (const std::invalid_argument& e) {
    throw FormatError(path + ": " + e.what());
  }
}

inline json to_json(const SchwarzPoly& w) {
  json coeffs = json::array();
  for (cplx c : w.coeffs()) coeffs.push_back(complex_to_json(c));
  return {{"coeffs", coeffs}};
}

// --- results ---------------------------------------------------------------

inline json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

inline json to_json(const Report& r) {
  json witness = nullptr;
  if (const auto* z = std::get_if<cplx>(&r.witness)) witness = complex_to_json(*z);
  if (const auto* k = std::get_if<int>(&r.witness)) witness = *k;
  json out = {{"verdict", to_string(r.verdict)},
              {"worst_margin", finite_or_null(r.worst_margin)},
              {"witness", witness},
              {"detail", r.detail},
              {"warnings", r.warnings}};
  if (!r.grid_hash.empty()) out["grid_hash"] = r.grid_hash;
  return out;
}

inline json to_json(const Certificate& c) {
  json checks = json::array();
  for (const auto& ch : c.checks) checks.push_back({{"name", ch.name}, {"passed", ch.passed}, {"value", finite_or_null(ch.value)}});
  return {{"generator", c.generator}, {"trunc_order", c.trunc_order}, {"checks", checks}};
}

inline json to_json(const DistortionBounds& b) {
  return {{"lower", finite_or_null(b.lower)},
          {"upper", finite_or_null(b.upper)},
          {"divergent", b.divergent},
          {"partial_sum", finite_or_null(b.partial_sum)},
          {"tail_bound", finite_or_null(b.tail_bound)},
          {"premise_holds", b.premise_holds}};
}

}  // namespace merokit::io
