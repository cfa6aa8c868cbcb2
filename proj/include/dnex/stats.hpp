#pragma once

// One-sided Welch two-sample t-test, alternative mean(high) > mean(low).

#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "core_model.hpp"
#include "error.hpp"

namespace dnex::stats {

namespace detail {

// Continued fraction for the regularized incomplete beta (modified Lentz).
inline double beta_cf(double a, double b, double x) {
  constexpr int kMaxIter = 10000;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  return h;
}

}  // namespace detail

/// Regularized incomplete beta I_x(a, b), with y = 1 - x supplied by the
/// caller when it can be formed without cancellation.
inline double incomplete_beta(double a, double b, double x, double y) {
  if (x <= 0.0) return 0.0;
  if (y <= 0.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log(y);
  if (x < (a + 1.0) / (a + b + 2.0)) return std::exp(log_front) * detail::beta_cf(a, b, x) / a;
  return 1.0 - std::exp(log_front) * detail::beta_cf(b, a, y) / b;
}

inline double incomplete_beta(double a, double b, double x) { return incomplete_beta(a, b, x, 1.0 - x); }

/// P(T > t) for Student's t with df degrees of freedom.
inline double student_t_sf(double t, double df) {
  if (std::isnan(t)) return std::numeric_limits<double>::quiet_NaN();
  if (t == 0.0) return 0.5;
  if (std::isinf(t)) return t > 0 ? 0.0 : 1.0;
  const double t2 = t * t;
  const double tail = 0.5 * incomplete_beta(0.5 * df, 0.5, df / (df + t2), t2 / (df + t2));
  return t > 0 ? tail : 1.0 - tail;
}

inline SampleSummary summarize(std::span<const double> xs) {
  SampleSummary s;
  s.n = xs.size();
  if (xs.empty()) return s;
  double sum = 0.0;
  for (double x : xs) sum += x;
  s.mean = sum / static_cast<double>(s.n);
  if (s.n > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - s.mean) * (x - s.mean);
    s.sd = std::sqrt(ss / static_cast<double>(s.n - 1));
  }
  return s;
}

/// Welch t with Welch-Satterthwaite degrees of freedom and the one-sided p
/// for mean(high) > mean(low). Each sample needs n >= 2. When both samples
/// have zero variance the statistic is taken at its limit: t = 0 and p = 0.5
/// for equal means, otherwise t = +/-inf with p = 0 or 1.
inline TestResult welch_t_test(std::span<const double> high, std::span<const double> low) {
  if (high.size() < 2 || low.size() < 2)
    throw Error(ErrorCode::InsufficientSample, "need at least 2 values per group (high " +
                                                   std::to_string(high.size()) + ", low " +
                                                   std::to_string(low.size()) + ")");
  TestResult r;
  r.group_high = summarize(high);
  r.group_low = summarize(low);
  const double nh = static_cast<double>(r.group_high.n), nl = static_cast<double>(r.group_low.n);
  const double vh = r.group_high.sd * r.group_high.sd / nh;
  const double vl = r.group_low.sd * r.group_low.sd / nl;
  const double diff = r.group_high.mean - r.group_low.mean;
  const double se2 = vh + vl;
  if (!std::isfinite(se2))
    throw Error(ErrorCode::InsufficientSample, "non-finite variance");
  if (se2 == 0.0) {
    r.df = nh + nl - 2.0;
    r.t_stat = diff == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), diff);
  } else {
    r.t_stat = diff / std::sqrt(se2);
    r.df = se2 * se2 / (vh * vh / (nh - 1.0) + vl * vl / (nl - 1.0));
  }
  r.p_value = student_t_sf(r.t_stat, r.df);
  r.stars = stars_for(r.p_value);
  return r;
}

inline TestResult welch_t_test(const std::vector<double>& high, const std::vector<double>& low) {
  return welch_t_test(std::span<const double>(high), std::span<const double>(low));
}

}  // namespace dnex::stats
