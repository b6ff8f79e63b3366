#pragma once

// Truncated Laurent and Taylor series over complex doubles.
//
// LaurentSeries is the normalized form z^{-p} + sum_{k=1-p}^{K} a_k z^k with
// the leading coefficient implicit. RawLaurent is an arbitrary truncated
// Laurent polynomial; it is what sums, derivatives and kernels produce, since
// those do not keep the leading coefficient at 1.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace merokit {

using cplx = std::complex<double>;

inline constexpr int kDefaultTruncation = 64;

/// Integer power by repeated squaring; negative exponents invert.
inline cplx ipow(cplx z, int n) {
  if (n < 0) return 1.0 / ipow(z, -n);
  cplx result{1.0, 0.0};
  cplx base = z;
  while (n > 0) {
    if (n & 1) result *= base;
    base *= base;
    n >>= 1;
  }
  return result;
}

// ---------------------------------------------------------------------------
// PowerSeries
// ---------------------------------------------------------------------------

class PowerSeries {
 public:
  /// The zero series of order 0.
  PowerSeries() : c_(1, cplx{}) {}

  explicit PowerSeries(std::vector<cplx> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty())
      throw std::invalid_argument("PowerSeries: needs at least the constant term");
  }

  static PowerSeries zero(int order) { return PowerSeries(std::vector<cplx>(check_order(order) + 1)); }

  static PowerSeries constant(cplx c, int order) {
    std::vector<cplx> v(check_order(order) + 1);
    v[0] = c;
    return PowerSeries(std::move(v));
  }

  int order() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<cplx>& coeffs() const { return c_; }
  cplx operator[](int n) const { return (n >= 0 && n <= order()) ? c_[n] : cplx{}; }

  cplx eval(cplx z) const {
    cplx acc{};
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
    return acc;
  }

  PowerSeries scaled(cplx s) const {
    auto v = c_;
    for (auto& x : v) x *= s;
    return PowerSeries(std::move(v));
  }

  PowerSeries truncated(int order) const {
    check_order(order);
    std::vector<cplx> v(order + 1);
    for (int n = 0; n <= std::min(order, this->order()); ++n) v[n] = c_[n];
    return PowerSeries(std::move(v));
  }

 private:
  static int check_order(int order) {
    if (order < 0) throw std::invalid_argument("PowerSeries: negative truncation order");
    return order;
  }
  std::vector<cplx> c_;
};

inline PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
  const int n = std::min(a.order(), b.order());
  std::vector<cplx> v(n + 1);
  for (int i = 0; i <= n; ++i) v[i] = a[i] + b[i];
  return PowerSeries(std::move(v));
}

/// Cauchy product, truncated to the shorter operand.
inline PowerSeries cauchy_mul(const PowerSeries& a, const PowerSeries& b) {
  const int n = std::min(a.order(), b.order());
  std::vector<cplx> v(n + 1);
  for (int i = 0; i <= n; ++i) {
    cplx s{};
    for (int j = 0; j <= i; ++j) s += a[j] * b[i - j];
    v[i] = s;
  }
  return PowerSeries(std::move(v));
}

/// exp of a series with zero constant term, via b_n = (1/n) sum_{j=1}^n j a_j b_{n-j}.
inline PowerSeries series_exp(const PowerSeries& a) {
  if (a[0] != cplx{})
    throw std::domain_error("series_exp: constant term must be zero; factor exp(a_0) out first");
  const int n = a.order();
  std::vector<cplx> b(n + 1);
  b[0] = 1.0;
  for (int i = 1; i <= n; ++i) {
    cplx s{};
    for (int j = 1; j <= i; ++j) s += static_cast<double>(j) * a[j] * b[i - j];
    b[i] = s / static_cast<double>(i);
  }
  return PowerSeries(std::move(b));
}

/// log(1 - x z) = -sum_{n>=1} x^n z^n / n, truncated at order K.
inline PowerSeries log_one_minus(cplx x, int order) {
  if (order < 0) throw std::invalid_argument("log_one_minus: negative order");
  std::vector<cplx> v(order + 1);
  cplx xn{1.0, 0.0};
  for (int n = 1; n <= order; ++n) {
    xn *= x;
    v[n] = -xn / static_cast<double>(n);
  }
  return PowerSeries(std::move(v));
}

/// 1/a for a series with nonzero constant term.
inline PowerSeries series_reciprocal(const PowerSeries& a) {
  if (a[0] == cplx{}) throw std::domain_error("series_reciprocal: zero constant term");
  const int n = a.order();
  std::vector<cplx> b(n + 1);
  b[0] = 1.0 / a[0];
  for (int i = 1; i <= n; ++i) {
    cplx s{};
    for (int j = 1; j <= i; ++j) s += a[j] * b[i - j];
    b[i] = -s / a[0];
  }
  return PowerSeries(std::move(b));
}

/// Term-wise antiderivative vanishing at 0, keeping the same truncation order.
inline PowerSeries integrate(const PowerSeries& a) {
  const int n = a.order();
  std::vector<cplx> v(n + 1);
  for (int i = 1; i <= n; ++i) v[i] = a[i - 1] / static_cast<double>(i);
  return PowerSeries(std::move(v));
}

// ---------------------------------------------------------------------------
// RawLaurent
// ---------------------------------------------------------------------------

/// sum_{j=low}^{high} c_j z^j with no normalization assumed.
class RawLaurent {
 public:
  RawLaurent(int low, std::vector<cplx> coeffs) : low_(low), c_(std::move(coeffs)) {
    if (c_.empty()) throw std::invalid_argument("RawLaurent: empty coefficient list");
  }

  int low() const { return low_; }
  int high() const { return low_ + static_cast<int>(c_.size()) - 1; }
  const std::vector<cplx>& coeffs() const { return c_; }
  cplx lead() const { return c_.front(); }
  /// Leading coefficient is exactly 1.
  bool normalized() const { return c_.front() == cplx{1.0, 0.0}; }

  /// Coefficient of z^j; zero outside [low, high].
  cplx at(int j) const { return (j >= low_ && j <= high()) ? c_[j - low_] : cplx{}; }

  cplx eval(cplx z) const {
    if (z == cplx{} && low_ < 0) throw std::domain_error("RawLaurent::eval: z = 0 is a pole");
    cplx acc{};
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
    return acc * ipow(z, low_);
  }

  /// Multiplication by z^n (index shift).
  RawLaurent shifted(int n) const { return RawLaurent(low_ + n, c_); }

  RawLaurent scaled(cplx s) const {
    auto v = c_;
    for (auto& x : v) x *= s;
    return RawLaurent(low_, std::move(v));
  }

  /// Term-wise derivative. The lowest exponent always drops by one, even when
  /// the differentiated term is a constant.
  RawLaurent derivative() const {
    std::vector<cplx> v(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) v[i] = static_cast<double>(low_ + static_cast<int>(i)) * c_[i];
    return RawLaurent(low_ - 1, std::move(v));
  }

 private:
  int low_;
  std::vector<cplx> c_;
};

/// Sum aligned at min(low); truncated at min(high).
inline RawLaurent operator+(const RawLaurent& a, const RawLaurent& b) {
  const int lo = std::min(a.low(), b.low());
  const int hi = std::min(a.high(), b.high());
  if (hi < lo) throw std::invalid_argument("RawLaurent: operands share no coefficient range");
  std::vector<cplx> v(hi - lo + 1);
  for (int j = lo; j <= hi; ++j) v[j - lo] = a.at(j) + b.at(j);
  return RawLaurent(lo, std::move(v));
}

/// Coefficient-wise product over the common exponent range.
inline RawLaurent hadamard(const RawLaurent& a, const RawLaurent& b) {
  const int lo = std::max(a.low(), b.low());
  const int hi = std::min(a.high(), b.high());
  if (hi < lo) throw std::invalid_argument("hadamard: operands share no coefficient range");
  std::vector<cplx> v(hi - lo + 1);
  for (int j = lo; j <= hi; ++j) v[j - lo] = a.at(j) * b.at(j);
  return RawLaurent(lo, std::move(v));
}

// ---------------------------------------------------------------------------
// LaurentSeries
// ---------------------------------------------------------------------------

/// f(z) = z^{-p} + sum_{k=1-p}^{K} a_k z^k.
///
/// `exact_support` records that every coefficient past K is known to vanish,
/// i.e. the object is the function itself rather than a truncation of it.
class LaurentSeries {
 public:
  LaurentSeries(int pole_order, std::vector<cplx> coeffs, bool exact_support = true)
      : p_(pole_order), a_(std::move(coeffs)), exact_(exact_support) {
    if (p_ < 1) throw std::invalid_argument("LaurentSeries: pole_order must be >= 1");
    if (a_.empty()) throw std::invalid_argument("LaurentSeries: needs coefficients a_{1-p}..a_K (K >= 1-p)");
  }

  /// z^{-p} with an all-zero tail up to K.
  static LaurentSeries pole(int pole_order, int trunc_order) {
    if (trunc_order < 1 - pole_order) throw std::invalid_argument("LaurentSeries: trunc_order < 1 - pole_order");
    return LaurentSeries(pole_order, std::vector<cplx>(trunc_order + pole_order), true);
  }

  /// z^{-p} + c z^n, truncated at n.
  static LaurentSeries monomial(int pole_order, int n, cplx c) {
    auto f = pole(pole_order, std::max(n, 1 - pole_order));
    f.a_[n - f.first_index()] = c;
    return f;
  }

  int pole_order() const { return p_; }
  int first_index() const { return 1 - p_; }
  int trunc_order() const { return static_cast<int>(a_.size()) - p_; }
  bool exact_support() const { return exact_; }
  const std::vector<cplx>& coeffs() const { return a_; }

  /// a_k for 1-p <= k <= K; zero past K.
  cplx coeff(int k) const {
    if (k < first_index()) throw std::out_of_range("LaurentSeries::coeff: index below 1 - p");
    return k <= trunc_order() ? a_[k - first_index()] : cplx{};
  }

  LaurentSeries with_coeff(int k, cplx value) const {
    if (k < first_index()) throw std::out_of_range("LaurentSeries::with_coeff: index below 1 - p");
    auto v = a_;
    if (k > trunc_order()) {
      if (!exact_) throw std::domain_error("LaurentSeries::with_coeff: cannot extend a truncated series");
      v.resize(k - first_index() + 1);
    }
    v[k - first_index()] = value;
    return LaurentSeries(p_, std::move(v), exact_);
  }

  /// Zero-extends an exactly supported series to a longer truncation.
  LaurentSeries extended(int trunc_order) const {
    if (trunc_order <= this->trunc_order()) return *this;
    if (!exact_) throw std::domain_error("LaurentSeries::extended: series is truncated, not exactly supported");
    auto v = a_;
    v.resize(trunc_order + p_);
    return LaurentSeries(p_, std::move(v), true);
  }

  LaurentSeries with_exact_support(bool exact) const { return LaurentSeries(p_, a_, exact); }

  RawLaurent raw() const {
    std::vector<cplx> v;
    v.reserve(a_.size() + 1);
    v.push_back(1.0);
    v.insert(v.end(), a_.begin(), a_.end());
    return RawLaurent(-p_, std::move(v));
  }

  /// Inverse of raw(): requires lowest exponent -p and leading coefficient 1
  /// up to `lead_tol`; the leading coefficient is then dropped.
  static LaurentSeries from_raw(const RawLaurent& r, int pole_order, bool exact_support, double lead_tol = 0.0) {
    if (r.low() != -pole_order)
      throw std::invalid_argument("LaurentSeries::from_raw: lowest exponent is not -p");
    if (std::abs(r.lead() - cplx{1.0, 0.0}) > lead_tol)
      throw std::domain_error("LaurentSeries::from_raw: leading coefficient is not 1");
    if (r.high() < 1 - pole_order) throw std::invalid_argument("LaurentSeries::from_raw: no tail coefficients");
    return LaurentSeries(pole_order, std::vector<cplx>(r.coeffs().begin() + 1, r.coeffs().end()), exact_support);
  }

  /// Divides by the leading coefficient. Used to renormalize sums.
  static LaurentSeries renormalize(const RawLaurent& r, int pole_order, bool exact_support) {
    if (r.lead() == cplx{}) throw std::domain_error("LaurentSeries::renormalize: zero leading coefficient");
    return from_raw(r.scaled(1.0 / r.lead()), pole_order, exact_support, 1e-15);
  }

  bool all_real(double tol = 0.0) const {
    return std::all_of(a_.begin(), a_.end(), [tol](cplx c) { return std::abs(c.imag()) <= tol; });
  }

 private:
  int p_;
  std::vector<cplx> a_;
  bool exact_;
};

namespace detail {
inline void require_same_pole(const LaurentSeries& f, const LaurentSeries& g, const char* op) {
  if (f.pole_order() != g.pole_order())
    throw std::invalid_argument(std::string(op) + ": pole_order mismatch (" + std::to_string(f.pole_order()) +
                                " vs " + std::to_string(g.pole_order()) + ")");
}

// A product or sum truncated at min(K_f, K_g) is still exact when the shorter
// operand is exactly supported (everything past its K vanishes anyway).
inline bool combined_exactness(const LaurentSeries& f, const LaurentSeries& g, bool multiplicative) {
  const int kf = f.trunc_order(), kg = g.trunc_order();
  if (multiplicative)
    return (f.exact_support() && kf <= kg) || (g.exact_support() && kg <= kf);
  return f.exact_support() && g.exact_support() && kf == kg;
}
}  // namespace detail

/// Coefficient-wise sum. The result has leading coefficient 2, so it is returned raw.
inline RawLaurent add(const LaurentSeries& f, const LaurentSeries& g) {
  detail::require_same_pole(f, g, "add");
  return f.raw() + g.raw();
}

inline bool add_is_exact(const LaurentSeries& f, const LaurentSeries& g) {
  return detail::combined_exactness(f, g, false);
}

inline LaurentSeries hadamard(const LaurentSeries& f, const LaurentSeries& g) {
  detail::require_same_pole(f, g, "hadamard");
  const int k = std::min(f.trunc_order(), g.trunc_order());
  std::vector<cplx> v(k + f.pole_order());
  for (int i = f.first_index(); i <= k; ++i) v[i - f.first_index()] = f.coeff(i) * g.coeff(i);
  return LaurentSeries(f.pole_order(), std::move(v), detail::combined_exactness(f, g, true));
}

/// Evaluates the truncated series at 0 < |z| < 1.
inline cplx eval(const LaurentSeries& f, cplx z) {
  const double r = std::abs(z);
  if (r == 0.0) throw std::domain_error("eval: z = 0 is the pole");
  if (!(r < 1.0)) throw std::domain_error("eval: |z| must be < 1");
  // z^{-p} (1 + sum a_k z^{k+p})
  cplx acc{};
  const auto& a = f.coeffs();
  for (auto it = a.rbegin(); it != a.rend(); ++it) acc = acc * z + *it;
  acc = 1.0 + acc * z;
  return acc * ipow(z, -f.pole_order());
}

/// Term-wise derivative; leading term -p z^{-p-1}, so the result is raw.
inline RawLaurent derivative(const LaurentSeries& f) { return f.raw().derivative(); }

// ---------------------------------------------------------------------------
// SampleGrid
// ---------------------------------------------------------------------------

/// Polar grid r_i e^{2 pi i j / N} in the punctured disk.
struct SampleGrid {
  std::vector<double> radii{0.1, 0.3, 0.5, 0.7, 0.9};
  int angles = 720;
  double margin = 1e-9;

  void validate() const {
    if (radii.empty()) throw std::invalid_argument("SampleGrid: radii must be non-empty");
    for (std::size_t i = 0; i < radii.size(); ++i) {
      if (!(radii[i] > 0.0 && radii[i] < 1.0)) throw std::invalid_argument("SampleGrid: radii must lie in (0, 1)");
      if (i > 0 && !(radii[i] > radii[i - 1]))
        throw std::invalid_argument("SampleGrid: radii must be strictly increasing");
    }
    if (angles < 1) throw std::invalid_argument("SampleGrid: angles must be positive");
    if (!(margin >= 0.0)) throw std::invalid_argument("SampleGrid: margin must be nonnegative");
  }

  std::size_t size() const { return radii.size() * static_cast<std::size_t>(angles); }

  /// Radius-major ordering.
  std::vector<cplx> points() const {
    validate();
    std::vector<cplx> pts;
    pts.reserve(size());
    for (double r : radii)
      for (int j = 0; j < angles; ++j) pts.push_back(std::polar(r, 2.0 * std::numbers::pi * j / angles));
    return pts;
  }

  /// FNV-1a over the defining values, as 16 hex digits.
  std::string hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](const void* data, std::size_t n) {
      const auto* bytes = static_cast<const unsigned char*>(data);
      for (std::size_t i = 0; i < n; ++i) {
        h ^= bytes[i];
        h *= 0x100000001b3ULL;
      }
    };
    for (double r : radii) mix(&r, sizeof r);
    mix(&angles, sizeof angles);
    mix(&margin, sizeof margin);
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
  }
};

}  // namespace merokit
