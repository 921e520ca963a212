#pragma once

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <numeric>
#include <optional>
#include <vector>

#include "quivex/error.hpp"
#include "quivex/forms.hpp"
#include "quivex/ivec.hpp"
#include "quivex/quiver.hpp"
#include "quivex/rational.hpp"
#include "quivex/stability.hpp"

namespace quivex {

using BigFloat = boost::multiprecision::cpp_bin_float_50;

/// paths(i, j) = number of paths i ~> j, the trivial path included.
/// Canonical order is topological, so a reverse sweep closes the recursion
/// paths(i, j) = [i == j] + sum_{arrows i->k} mult * paths(k, j).
inline IMat path_count_matrix(const Quiver& q) {
  const int n = q.size();
  IMat paths = IMat::Zero(n, n);
  for (int i = n - 1; i >= 0; --i) {
    paths(i, i) = 1;
    for (int k = 0; k < n; ++k) {
      const long long mult = q.arrow_count(i, k);
      if (mult == 0) continue;
      for (int j = 0; j < n; ++j)
        paths(i, j) = checked_add(paths(i, j), checked_mul(mult, paths(k, j)));
    }
  }
  return paths;
}

/// Dimension vectors of the indecomposable projectives P_i (paths out of i).
inline std::vector<IVec> proj_dims(const Quiver& q) {
  const IMat paths = path_count_matrix(q);
  std::vector<IVec> out(q.size(), IVec(q.size()));
  for (int i = 0; i < q.size(); ++i)
    for (int j = 0; j < q.size(); ++j) out[i][j] = paths(i, j);
  return out;
}

/// Dimension vectors of the indecomposable injectives I_i (paths into i).
inline std::vector<IVec> inj_dims(const Quiver& q) {
  const IMat paths = path_count_matrix(q);
  std::vector<IVec> out(q.size(), IVec(q.size()));
  for (int i = 0; i < q.size(); ++i)
    for (int j = 0; j < q.size(); ++j) out[i][j] = paths(j, i);
  return out;
}

inline Rational exact_determinant(IMat m) {
  const int n = static_cast<int>(m.rows());
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = Rational(m(i, j));
  Rational det = 1;
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (a[r][col] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) return Rational(0);
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (int r = col + 1; r < n; ++r) {
      if (a[r][col] == 0) continue;
      const Rational f = a[r][col] / a[col][col];
      for (int c = col; c < n; ++c) a[r][c] -= f * a[col][c];
    }
  }
  return det;
}

namespace detail {

/// A primitive integer kernel vector of m, or nullopt when m is invertible.
inline std::optional<IVec> integer_kernel_vector(const IMat& m) {
  const int n = static_cast<int>(m.rows());
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = Rational(m(i, j));
  std::vector<int> pivot_col(n, -1);
  int rank = 0;
  for (int col = 0; col < n && rank < n; ++col) {
    int pivot = -1;
    for (int r = rank; r < n; ++r)
      if (a[r][col] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(a[pivot], a[rank]);
    const Rational inv = a[rank][col];
    for (int c = 0; c < n; ++c) a[rank][c] /= inv;
    for (int r = 0; r < n; ++r) {
      if (r == rank || a[r][col] == 0) continue;
      const Rational f = a[r][col];
      for (int c = 0; c < n; ++c) a[r][c] -= f * a[rank][c];
    }
    pivot_col[rank] = col;
    ++rank;
  }
  if (rank == n) return std::nullopt;
  std::vector<bool> is_pivot(n, false);
  for (int r = 0; r < rank; ++r) is_pivot[pivot_col[r]] = true;
  int free_col = 0;
  while (is_pivot[free_col]) ++free_col;
  std::vector<Rational> x(n, Rational(0));
  x[free_col] = 1;
  for (int r = 0; r < rank; ++r) x[pivot_col[r]] = -a[r][free_col];
  BigInt lcm = 1;
  for (const auto& v : x) lcm = boost::multiprecision::lcm(lcm, denominator(v));
  std::vector<BigInt> ints(n);
  BigInt g = 0;
  for (int i = 0; i < n; ++i) {
    ints[i] = numerator(x[i]) * (lcm / denominator(x[i]));
    g = boost::multiprecision::gcd(g, ints[i]);
  }
  if (g == 0) g = 1;
  IVec out(n);
  bool any_negative = false, any_positive = false;
  for (int i = 0; i < n; ++i) {
    out[i] = (ints[i] / g).convert_to<long long>();
    any_negative |= out[i] < 0;
    any_positive |= out[i] > 0;
  }
  if (any_negative && !any_positive)
    for (auto& v : out) v = -v;
  return out;
}

inline Eigen::MatrixXd to_double_matrix(const IMat& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = static_cast<double>(m(i, j));
  return out;
}

/// Dominant eigenvector of an integer matrix, sign-normalized positive.
inline std::pair<double, Eigen::VectorXd> dominant_eigenvector(const IMat& m) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(to_double_matrix(m));
  int best = 0;
  for (int i = 1; i < es.eigenvalues().size(); ++i)
    if (std::abs(es.eigenvalues()(i)) > std::abs(es.eigenvalues()(best))) best = i;
  Eigen::VectorXd v = es.eigenvectors().col(best).real();
  if (v.sum() < 0) v = -v;
  return {std::abs(es.eigenvalues()(best)), v};
}

}  // namespace detail

/// The Coxeter transformation on dimension vectors. Phi^{-1} is the
/// composition of the simple reflections s_i(d) = d - (d, i) i taken along
/// the canonical topological order, sources first; Phi is its exact integer
/// inverse. rho is the spectral radius, y_minus / y_plus the positive limit
/// directions of Phi^{-k} / Phi^{k} orbits (for extended Dynkin quivers both
/// equal the exact eigenvector for eigenvalue 1).
struct CoxeterData {
  IMat phi;
  IMat phi_inv;
  double rho = 1.0;
  Eigen::VectorXd y_minus;
  Eigen::VectorXd y_plus;
  bool extended_dynkin = false;
};

inline CoxeterData coxeter(const Quiver& q) {
  if (!q.is_connected()) fail(errc::disconnected, "coxeter needs a connected quiver");
  const QuiverClass cls = classify_connected(q);
  if (cls == QuiverClass::Dynkin)
    fail(errc::dynkin_input, "Coxeter limit data needs a non-Dynkin quiver");
  const int n = q.size();

  std::vector<IMat> reflections;
  for (int i = 0; i < n; ++i) {
    IMat s = IMat::Identity(n, n);
    for (int j = 0; j < n; ++j) s(i, j) -= q.cartan_matrix()(i, j);
    reflections.push_back(std::move(s));
  }
  CoxeterData data;
  data.phi_inv = IMat::Identity(n, n);
  data.phi = IMat::Identity(n, n);
  for (int i = 0; i < n; ++i) {
    data.phi_inv = reflections[i] * data.phi_inv;  // source reflections act first
    data.phi = data.phi * reflections[i];
  }
  if (data.phi * data.phi_inv != IMat::Identity(n, n))
    fail(errc::malformed_input, "internal: reflection composition failed to invert");

  data.extended_dynkin = cls == QuiverClass::ExtendedDynkin;
  if (data.extended_dynkin) {
    data.rho = 1.0;
    const auto kernel = detail::integer_kernel_vector(data.phi - IMat::Identity(n, n));
    if (!kernel) fail(errc::malformed_input, "internal: no eigenvector for eigenvalue 1");
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) y(i) = static_cast<double>((*kernel)[i]);
    data.y_minus = y;
    data.y_plus = y;
  } else {
    auto [rho_plus, y_plus] = detail::dominant_eigenvector(data.phi);
    auto [rho_minus, y_minus] = detail::dominant_eigenvector(data.phi_inv);
    (void)rho_minus;
    data.rho = rho_plus;
    data.y_plus = y_plus;
    data.y_minus = y_minus;
  }
  const auto normalize = [](Eigen::VectorXd& v) {
    const double m = v.minCoeff();
    if (m > 0) v /= m;
  };
  normalize(data.y_minus);
  normalize(data.y_plus);
  return data;
}

/// Phi^{-k} dim P_i for k = 0..n_max, truncated at the first vector that
/// is zero or has a negative entry (a guard; non-Dynkin orbits stay positive
/// at desk scale).
inline std::vector<IVec> tau_orbit(const Quiver& q, int vertex, long long n_max) {
  if (n_max < 0) fail(errc::out_of_range, "n_max must be >= 0");
  if (vertex < 0 || vertex >= q.size()) fail(errc::malformed_input, "vertex index out of range");
  const CoxeterData data = coxeter(q);
  std::vector<IVec> orbit;
  IVec v = proj_dims(q)[vertex];
  for (long long k = 0; k <= n_max; ++k) {
    if (is_zero(v) || !is_nonnegative(v)) break;
    orbit.push_back(v);
    IVec next(q.size(), 0);
    for (int r = 0; r < q.size(); ++r) {
      long long acc = 0;
      for (int c = 0; c < q.size(); ++c)
        acc = checked_add(acc, checked_mul(data.phi_inv(r, c), v[c]));
      next[r] = acc;
    }
    v = std::move(next);
  }
  return orbit;
}

struct SlopeConvergenceRow {
  long long k;
  IVec dim;
  Rational slope_value;
  double gap;  // |mu(Phi^{-k} dim P_i) - mu(y_minus)|
};

struct SlopeConvergenceReport {
  double rho = 1.0;
  double mu_limit = 0.0;
  std::vector<SlopeConvergenceRow> rows;
};

namespace detail {

inline BigFloat to_bigfloat(const Rational& r) {
  return BigFloat(numerator(r)) / BigFloat(denominator(r));
}

/// Limit slope of the Phi^{-k} orbit direction, in extended precision.
/// Extended Dynkin: the exact eigenvector for eigenvalue 1. Wild: power
/// iteration of Phi^{-1} refined far below double rounding, so that gap
/// sequences stay strictly monotone when the mathematics says they are.
inline BigFloat limit_slope(const Quiver& q, const SlopeFunction& mu, const CoxeterData& data) {
  const int n = q.size();
  std::vector<BigFloat> y(n);
  if (data.extended_dynkin) {
    for (int i = 0; i < n; ++i) y[i] = BigFloat(data.y_minus(i));
  } else {
    for (int i = 0; i < n; ++i) y[i] = BigFloat(std::max(data.y_minus(i), 1e-3));
    std::vector<BigFloat> next(n);
    for (int iter = 0; iter < 500; ++iter) {
      for (int r = 0; r < n; ++r) {
        BigFloat acc = 0;
        for (int c = 0; c < n; ++c) acc += BigFloat(data.phi_inv(r, c)) * y[c];
        next[r] = acc;
      }
      BigFloat scale = 0;
      for (const auto& v : next)
        if (abs(v) > scale) scale = abs(v);
      BigFloat diff = 0;
      for (int r = 0; r < n; ++r) {
        next[r] /= scale;
        if (abs(next[r] - y[r]) > diff) diff = abs(next[r] - y[r]);
      }
      y = next;
      if (diff < BigFloat("1e-42")) break;
    }
  }
  BigFloat num = 0, den = 0;
  for (int i = 0; i < n; ++i) {
    num += to_bigfloat(mu.theta[i]) * y[i];
    den += to_bigfloat(mu.kappa[i]) * y[i];
  }
  return num / den;
}

}  // namespace detail

/// Slopes of the preprojective orbit mu(Phi^{-k} dim P_i), their limit
/// mu(y_minus), and the gap sequence: the numerical demonstration that
/// slopes of embeddable preprojectives crowd the family slope, leaving no
/// uniform expansion margin.
inline SlopeConvergenceReport slope_convergence_report(const Quiver& q, const SlopeFunction& mu,
                                                       int vertex, long long n_max) {
  const CoxeterData data = coxeter(q);
  const BigFloat limit = detail::limit_slope(q, mu, data);
  SlopeConvergenceReport report;
  report.rho = data.rho;
  report.mu_limit = limit.convert_to<double>();
  for (const auto& dim : tau_orbit(q, vertex, n_max)) {
    SlopeConvergenceRow row;
    row.k = static_cast<long long>(report.rows.size());
    row.dim = dim;
    row.slope_value = slope(mu, dim);
    row.gap = abs(detail::to_bigfloat(row.slope_value) - limit).convert_to<double>();
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace quivex
