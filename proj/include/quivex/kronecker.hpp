#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "quivex/error.hpp"
#include "quivex/ivec.hpp"
#include "quivex/rational.hpp"
#include "quivex/stability.hpp"

namespace quivex {

/// Closed-form data for the generalized Kronecker quiver with m >= 3 arrows:
/// two vertices, dimension vector (d1, d2), weights (kappa1, kappa2). The
/// standing assumption d1^2 - m d1 d2 + d2^2 < 0 is validated exactly.
struct KroneckerInstance {
  long long m;
  long long d1, d2;
  Rational kappa1, kappa2;

  KroneckerInstance(long long m_, long long d1_, long long d2_, Rational k1, Rational k2)
      : m(m_), d1(d1_), d2(d2_), kappa1(std::move(k1)), kappa2(std::move(k2)) {
    if (m < 3) fail(errc::out_of_range, "need m >= 3 arrows");
    if (d1 < 1 || d2 < 1) fail(errc::out_of_range, "need d1, d2 >= 1");
    if (kappa1 <= 0 || kappa2 <= 0) fail(errc::kappa_not_positive, "kappa must be positive");
    const BigInt q = BigInt(d1) * d1 - BigInt(m) * d1 * d2 + BigInt(d2) * d2;
    if (q >= 0)
      fail(errc::out_of_range,
           "d1^2 - m d1 d2 + d2^2 = " + q.str() + " must be negative");
  }

  Rational kappa_d() const { return kappa1 * d1 + kappa2 * d2; }
};

/// c_d(x) = (mx + d2 - sqrt((mx - d2)^2 + 4x(d1 - x))) / 2: the boundary
/// curve of the embeddable region, e embeds into d iff e2 >= c_d(e1).
inline double kronecker_c(long long m, long long d1, long long d2, double x) {
  if (m < 3) fail(errc::out_of_range, "need m >= 3 arrows");
  if (!(x >= 0.0 && x <= static_cast<double>(d1)))
    fail(errc::out_of_range, "x must lie in [0, d1]");
  const double md = m * x - static_cast<double>(d2);
  const double rad = md * md + 4.0 * x * (static_cast<double>(d1) - x);
  return 0.5 * (m * x + static_cast<double>(d2) - std::sqrt(rad));
}

/// Exact test <e, d-e> >= 0 for the m-Kronecker quiver; equivalent to
/// e2 >= c_d(e1) but decided on the integer quadratic form, never on the
/// square root.
inline bool kronecker_embeds_closed_form(long long m, const IVec& e, const IVec& d) {
  if (m < 3) fail(errc::out_of_range, "need m >= 3 arrows");
  if (e.size() != 2 || d.size() != 2)
    fail(errc::index_mismatch, "Kronecker dimension vectors have two entries");
  if (!is_nonnegative(e) || !leq(e, d)) fail(errc::not_below, "need 0 <= e <= d");
  const BigInt form = BigInt(e[0]) * (d[0] - e[0]) + BigInt(e[1]) * (d[1] - e[1]) -
                      BigInt(m) * e[0] * (d[1] - e[1]);
  return form >= 0;
}

/// zeta_alpha(t) with alpha = d2/d1, defined on 0 < t < 1 by
/// c_d(x) = (1 + zeta_alpha(x/d1)) * (d2/d1) * x. Positive and strictly
/// decreasing on (0,1).
inline double kronecker_zeta(long long m, const Rational& alpha, double t) {
  if (m < 3) fail(errc::out_of_range, "need m >= 3 arrows");
  if (alpha <= 0) fail(errc::out_of_range, "alpha must be positive");
  if (!(t > 0.0 && t < 1.0)) fail(errc::out_of_range, "t must lie in (0,1)");
  const double a = to_double(alpha);
  const double md = m * t - a;
  const double c = 0.5 * (m * t + a - std::sqrt(md * md + 4.0 * t * (1.0 - t)));
  return c / (a * t) - 1.0;
}

/// Explicit uniform lower bound eps_d(delta) =
/// d1 d2 zeta_alpha(delta) / (kappa(d) + kappa2 d2 zeta_alpha(delta)).
inline double kronecker_epsilon_bound(const KroneckerInstance& inst, const Rational& delta) {
  if (delta <= 0 || delta >= 1) fail(errc::out_of_range, "delta must lie in (0,1)");
  const double z = kronecker_zeta(inst.m, Rational(inst.d2, inst.d1), to_double(delta));
  const double num = static_cast<double>(inst.d1) * static_cast<double>(inst.d2) * z;
  const double den = to_double(inst.kappa_d()) + to_double(inst.kappa2) * inst.d2 * z;
  return num / den;
}

/// Translation of an expansion pair (delta, eps) in the dimension-expander
/// normalization into the slope-function normalization:
///   delta' = (delta kappa1 d1 + kappa2 d2) / (kappa1 d1 + kappa2 d2)
///   eps'   = d1 d2 eps / (kappa(d) + kappa2 d2 eps).
inline std::pair<Rational, Rational> kronecker_translate(const KroneckerInstance& inst,
                                                         const Rational& delta,
                                                         const Rational& eps) {
  if (delta <= 0 || delta >= 1) fail(errc::out_of_range, "delta must lie in (0,1)");
  if (eps <= 0) fail(errc::out_of_range, "eps must be positive");
  const Rational k1d1 = inst.kappa1 * inst.d1;
  const Rational k2d2 = inst.kappa2 * inst.d2;
  const Rational delta_prime = (delta * k1d1 + k2d2) / (k1d1 + k2d2);
  const Rational eps_prime =
      (Rational(inst.d1) * inst.d2 * eps) / (inst.kappa_d() + k2d2 * eps);
  return {delta_prime, eps_prime};
}

/// Theta normalized so that mu(d) = 0: Theta = (d2, -d1).
inline std::vector<Rational> kronecker_normalized_theta(long long d1, long long d2) {
  if (d1 < 1 || d2 < 1) fail(errc::out_of_range, "need d1, d2 >= 1");
  return {Rational(d2), Rational(-d1)};
}

inline SlopeFunction kronecker_slope_function(const KroneckerInstance& inst) {
  return make_slope_function(kronecker_normalized_theta(inst.d1, inst.d2),
                             {inst.kappa1, inst.kappa2});
}

}  // namespace quivex
