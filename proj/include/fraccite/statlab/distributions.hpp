#pragma once

// Continuous distributions used for p-values. Each type validates its
// parameters on construction and offers cdf, sf (upper tail, computed
// directly so small p-values keep their relative accuracy), and quantile.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <variant>
#include <vector>

#include "fraccite/error.hpp"
#include "fraccite/statlab/quadrature.hpp"
#include "fraccite/statlab/special.hpp"

namespace fraccite::stat {

namespace detail {

inline void require_df(double df, const char* what) {
  if (!(df > 0.0) || std::isnan(df)) {
    throw Error(ErrorCode::invalid_argument, std::string(what) + " requires df > 0");
  }
}

}  // namespace detail

class StudentT {
 public:
  explicit StudentT(double df) : df_(df) { detail::require_df(df, "student_t"); }

  double df() const noexcept { return df_; }

  double cdf(double t) const {
    if (std::isnan(t)) return t;
    if (std::isinf(t)) return t > 0 ? 1.0 : 0.0;
    const double tail = 0.5 * ibeta(0.5 * df_, 0.5, df_ / (df_ + t * t));
    return t > 0 ? 1.0 - tail : tail;
  }

  double sf(double t) const { return cdf(-t); }

  // P(|T| >= |t|)
  double two_sided(double t) const {
    if (std::isinf(t)) return 0.0;
    return ibeta(0.5 * df_, 0.5, df_ / (df_ + t * t));
  }

 private:
  double df_;
};

class FisherF {
 public:
  FisherF(double df1, double df2) : df1_(df1), df2_(df2) {
    detail::require_df(df1, "fisher_f");
    detail::require_df(df2, "fisher_f");
  }

  double df1() const noexcept { return df1_; }
  double df2() const noexcept { return df2_; }

  double cdf(double x) const {
    if (std::isnan(x)) return x;
    if (x <= 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    return ibeta(0.5 * df1_, 0.5 * df2_, df1_ * x / (df1_ * x + df2_));
  }

  double sf(double x) const {
    if (std::isnan(x)) return x;
    if (x <= 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    return ibeta(0.5 * df2_, 0.5 * df1_, df2_ / (df2_ + df1_ * x));
  }

 private:
  double df1_, df2_;
};

class ChiSquared {
 public:
  explicit ChiSquared(double df) : df_(df) { detail::require_df(df, "chi_squared"); }

  double df() const noexcept { return df_; }
  double cdf(double x) const { return gamma_p(0.5 * df_, 0.5 * x); }
  double sf(double x) const { return gamma_q(0.5 * df_, 0.5 * x); }

 private:
  double df_;
};

// Range of k independent standard normals divided by an independent
// sqrt(chi2_df / df). df may be +infinity (known variance).
//
//   P(Q <= q) = int_0^inf f_df(s) W(q s) ds
//   W(w)      = k int phi(z) [Phi(z) - Phi(z - w)]^(k-1) dz
class StudentizedRange {
 public:
  StudentizedRange(int k, double df) : k_(k), df_(df) {
    if (k < 2) throw Error(ErrorCode::invalid_argument, "studentized_range requires k >= 2");
    if (!(df >= 1.0)) throw Error(ErrorCode::invalid_argument, "studentized_range requires df >= 1");
  }

  int k() const noexcept { return k_; }
  double df() const noexcept { return df_; }

  double cdf(double q) const {
    if (std::isnan(q)) return q;
    if (q <= 0.0) return 0.0;
    if (std::isinf(q)) return 1.0;
    const double upper = sf(q);
    if (upper <= 0.5) return 1.0 - upper;
    return std::clamp(mix(q, false), 0.0, 1.0);
  }

  double sf(double q) const {
    if (std::isnan(q)) return q;
    if (q <= 0.0) return 1.0;
    if (std::isinf(q)) return 0.0;
    return std::clamp(mix(q, true), 0.0, 1.0);
  }

  // Range distribution for known variance; `upper` selects 1 - W(w).
  double range(double w, bool upper) const {
    if (w <= 0.0) return upper ? 1.0 : 0.0;
    const double m = k_ - 1;
    auto diff = [w](double z) {
      // Phi(z) - Phi(z - w) from whichever tail keeps precision
      if (z > 0.5 * w) return 0.5 * (std::erfc((z - w) / std::numbers::sqrt2) -
                                     std::erfc(z / std::numbers::sqrt2));
      return normal_cdf(z) - normal_cdf(z - w);
    };
    std::vector<double> bp;
    if (upper) {
      auto integrand = [&](double z) {
        const double a = normal_cdf(z);
        if (a <= 0.0) return 0.0;
        const double r = normal_cdf(z - w) / a;
        // a^m - (a - a r)^m = -a^m expm1(m log1p(-r))
        return -normal_pdf(z) * std::pow(a, m) * std::expm1(m * std::log1p(-r));
      };
      bp = {-12.0, -3.0, 0.0, 3.0, 12.0, 0.5 * w, 0.5 * w + 9.0};
      std::sort(bp.begin(), bp.end());
      return k_ * integrate(integrand, bp, 1e-300, 1e-11).value;
    }
    auto integrand = [&](double z) { return normal_pdf(z) * std::pow(diff(z), m); };
    bp = {-12.0, -3.0, 0.0, std::min(w, 12.0), 3.0, 12.0};
    std::sort(bp.begin(), bp.end());
    return k_ * integrate(integrand, bp, 1e-15, 1e-11).value;
  }

 private:
  double mix(double q, bool upper) const {
    if (std::isinf(df_)) return range(q, upper);
    const double nu = df_;
    const double log_norm = std::log(2.0) + 0.5 * nu * std::log(0.5 * nu) - log_gamma(0.5 * nu);
    auto density = [&](double s) {
      if (s <= 0.0) return 0.0;
      return std::exp(log_norm + (nu - 1.0) * std::log(s) - 0.5 * nu * s * s);
    };
    auto integrand = [&](double s) {
      const double f = density(s);
      return f == 0.0 ? 0.0 : f * range(q * s, upper);
    };
    const double sigma = 1.0 / std::sqrt(2.0 * nu);
    const double lo = std::max(0.0, 1.0 - 14.0 * sigma);
    const double hi = 1.0 + 14.0 * sigma;
    std::vector<double> bp;
    for (int i = 0; i <= 8; ++i) bp.push_back(lo + (hi - lo) * i / 8.0);
    bp.push_back(1.0);
    std::sort(bp.begin(), bp.end());
    return integrate(integrand, bp, upper ? 1e-300 : 1e-14, 1e-10).value;
  }

  int k_;
  double df_;
};

using Distribution = std::variant<StudentT, FisherF, ChiSquared, StudentizedRange>;

inline double dist_cdf(const Distribution& dist, double x) {
  return std::visit([x](const auto& d) { return d.cdf(x); }, dist);
}

inline double dist_sf(const Distribution& dist, double x) {
  return std::visit([x](const auto& d) { return d.sf(x); }, dist);
}

// Inverse CDF by bracketing and Illinois-modified regula falsi on the
// relevant tail.
template <typename D>
double quantile(const D& dist, double p) {
  if (!(p > 0.0 && p < 1.0)) throw Error(ErrorCode::invalid_argument, "quantile needs 0 < p < 1");
  const bool use_sf = p > 0.5;
  auto g = [&](double x) { return use_sf ? dist.sf(x) - (1.0 - p) : dist.cdf(x) - p; };
  double lo, hi;
  if constexpr (std::is_same_v<D, StudentT>) {
    lo = -1.0;
    hi = 1.0;
    while (dist.cdf(lo) > p) lo *= 2.0;
  } else {
    lo = 0.0;
    hi = 1.0;
  }
  while (dist.cdf(hi) < p) hi *= 2.0;
  double glo = g(lo), ghi = g(hi);
  // g is decreasing in x on the sf branch
  int side = 0;
  for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, std::fabs(hi)); ++it) {
    const double x = (lo * ghi - hi * glo) / (ghi - glo);
    const double gx = g(x);
    if (gx == 0.0) return x;
    if ((gx > 0) == (ghi > 0)) {
      hi = x;
      ghi = gx;
      if (side == -1) glo *= 0.5;
      side = -1;
    } else {
      lo = x;
      glo = gx;
      if (side == 1) ghi *= 0.5;
      side = 1;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace fraccite::stat
