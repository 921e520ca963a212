#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "quivex/error.hpp"
#include "quivex/forms.hpp"
#include "quivex/ivec.hpp"
#include "quivex/quiver.hpp"
#include "quivex/rational.hpp"
#include "quivex/rng.hpp"
#include "quivex/stability.hpp"

namespace quivex {

inline constexpr double kSpectralTol = 1e-9;

struct Spectrum {
  Eigen::VectorXd eigenvalues;   // ascending
  Eigen::MatrixXd eigenvectors;  // orthonormal columns, aligned with eigenvalues
};

/// Eigen-decomposition of the Cartan matrix of a connected quiver. For a
/// wild quiver 2I - C is irreducible nonnegative, so the smallest eigenvalue
/// is simple with a positive eigenvector; that eigenvector is returned with
/// positive sign.
inline Spectrum cartan_spectrum(const Quiver& q) {
  if (!q.is_connected()) fail(errc::disconnected, "cartan_spectrum needs a connected quiver");
  const int n = q.size();
  Eigen::MatrixXd c(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) c(i, j) = static_cast<double>(q.cartan_matrix()(i, j));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(c);
  Spectrum s{es.eigenvalues(), es.eigenvectors()};
  // Sign convention for the bottom eigenvector: make its dominant entry
  // (and, in the wild case, every entry) positive.
  if (s.eigenvectors.col(0).sum() < 0) s.eigenvectors.col(0) = -s.eigenvectors.col(0);
  return s;
}

/// (d, i) <= 0 for all vertices i (strict: < 0, and d strictly positive),
/// decided in exact integer arithmetic.
inline bool in_fundamental_domain(const Quiver& q, const IVec& d, bool strict) {
  detail::check_indexed(q, d, "d");
  if (strict ? !is_positive(d) : !is_nonnegative(d)) return false;
  for (int i = 0; i < q.size(); ++i) {
    const long long p = sym_form(q, d, q.unit_vector(i));
    if (strict ? p >= 0 : p > 0) return false;
  }
  return true;
}

/// Largest admissible gamma for the hyperplane eigenvalue estimate:
/// -lambda1 when lambda2 >= 0, else lambda1(lambda2-lambda1)/(lambda1+lambda2).
inline double gamma_threshold(double lambda1, double lambda2) {
  if (lambda2 >= 0) return -lambda1;
  return lambda1 * (lambda2 - lambda1) / (lambda1 + lambda2);
}

struct RestrictedEig {
  bool applicable = false;  // false when H = {0} (n == 1)
  double value = 0.0;
};

/// Minimal eigenvalue of the symmetric form given by `c` restricted to the
/// hyperplane H = Ker (v, _) = { x : (Cv)^T x = 0 }. H is realized as the
/// Euclidean orthogonal complement of Cv via a Householder basis.
inline RestrictedEig restricted_min_eigenvalue(const Eigen::MatrixXd& c,
                                               const Eigen::VectorXd& v) {
  const int n = static_cast<int>(c.rows());
  if (v.size() != n) fail(errc::index_mismatch, "vector length does not match the matrix");
  if (v.norm() == 0.0) fail(errc::zero_vector, "v must be nonzero");
  if (n == 1) return {false, 0.0};
  const Eigen::VectorXd w = c * v;
  if (w.norm() == 0.0) {
    // v lies in the radical, so the restriction is the whole form.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(c);
    return {true, es.eigenvalues()(0)};
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(w);
  const Eigen::MatrixXd full = qr.householderQ();
  const Eigen::MatrixXd basis = full.rightCols(n - 1);  // orthonormal basis of w-perp
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(basis.transpose() * c * basis);
  return {true, es.eigenvalues()(0)};
}

/// The uniform-expansion certificate for a wild connected quiver and a
/// dimension vector d strictly inside the fundamental domain. The certified
/// lower bound is eps_eff(delta) >= C (1 - delta) for the slope function
/// attached to d.
struct SpectralCertificate {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  Eigen::VectorXd v1;  // Perron direction, scaled so the minimal entry is 1
  double gamma = 0.0;
  double gamma_threshold = 0.0;
  bool lambda_h_applicable = false;
  double lambda_h = 0.0;  // meaningful only when applicable
  double c_constant = 0.0;

  bool connected = false;
  bool wild = false;
  bool interior = false;
  bool gamma_ok = false;
  bool valid = false;

  double bound(double delta) const { return c_constant * (1.0 - delta); }
};

/// Computes every certificate field and flag without throwing on a failed
/// condition; `certificate` below enforces them as errors.
inline SpectralCertificate evaluate_certificate(const Quiver& q, const IVec& d) {
  detail::check_indexed(q, d, "d");
  SpectralCertificate cert;
  cert.connected = q.is_connected();
  if (!cert.connected) return cert;
  cert.wild = classify_connected(q) == QuiverClass::Wild;

  const Spectrum s = cartan_spectrum(q);
  cert.lambda1 = s.eigenvalues(0);
  cert.lambda2 = q.size() > 1 ? s.eigenvalues(1) : s.eigenvalues(0);
  cert.v1 = s.eigenvectors.col(0);
  const double vmin = cert.v1.minCoeff();
  if (vmin > 0) cert.v1 /= vmin;

  cert.interior = in_fundamental_domain(q, d, /*strict=*/true);
  if (!cert.wild || !cert.interior) return cert;

  const long long dd_form = sym_form(q, d, d);
  long long dd_euclid = 0;
  for (long long x : d) dd_euclid = checked_add(dd_euclid, checked_mul(x, x));
  cert.gamma = to_double(Rational(dd_form, dd_euclid)) - cert.lambda1;
  cert.gamma_threshold = gamma_threshold(cert.lambda1, cert.lambda2);
  cert.gamma_ok = cert.gamma <= cert.gamma_threshold - kSpectralTol;

  Eigen::MatrixXd c(q.size(), q.size());
  for (int i = 0; i < q.size(); ++i)
    for (int j = 0; j < q.size(); ++j) c(i, j) = static_cast<double>(q.cartan_matrix()(i, j));
  Eigen::VectorXd dv(q.size());
  for (int i = 0; i < q.size(); ++i) dv(i) = static_cast<double>(d[i]);
  const RestrictedEig r = restricted_min_eigenvalue(c, dv);
  cert.lambda_h_applicable = r.applicable;
  cert.lambda_h = r.value;
  // H = {0} forces the x-component of the decomposition to vanish, which is
  // the same situation as lambda_H >= 0: the constant is 1.
  if (!r.applicable || r.value >= 0)
    cert.c_constant = 1.0;
  else
    cert.c_constant = 1.0 - r.value / (cert.lambda1 + cert.gamma);
  cert.valid = cert.connected && cert.wild && cert.interior && cert.gamma_ok;
  return cert;
}

inline SpectralCertificate certificate(const Quiver& q, const IVec& d) {
  if (!q.is_connected()) fail(errc::disconnected, "certificate needs a connected quiver");
  SpectralCertificate cert = evaluate_certificate(q, d);
  if (!cert.wild) fail(errc::not_wild, "quiver is not wild");
  if (!cert.interior)
    fail(errc::not_interior, "d is not strictly interior to the fundamental domain");
  if (!cert.gamma_ok)
    fail(errc::gamma_too_large, "gamma = " + std::to_string(cert.gamma) +
                                    " is not below the threshold " +
                                    std::to_string(cert.gamma_threshold));
  return cert;
}

struct ExpanderDimVector {
  IVec d;
  long long t = 0;  // schedule step that produced d
  SpectralCertificate cert;
};

/// Walks the schedule t = 1, 2, ... rounding t*v1/min(v1) to an integer
/// vector until a valid certificate appears. The paper only asks for d
/// "sufficiently close" to the Perron ray; the schedule is this library's
/// concrete choice.
inline ExpanderDimVector find_expander_dimvector(const Quiver& q, long long t_cap = 64) {
  if (!q.is_connected()) fail(errc::disconnected, "need a connected quiver");
  if (classify_connected(q) != QuiverClass::Wild) fail(errc::not_wild, "quiver is not wild");
  const Spectrum s = cartan_spectrum(q);
  Eigen::VectorXd v1 = s.eigenvectors.col(0);
  const double vmin = v1.minCoeff();
  if (vmin <= 0) fail(errc::not_wild, "bottom eigenvector is not positive");
  v1 /= vmin;
  for (long long t = 1; t <= t_cap; ++t) {
    IVec d(q.size());
    for (int i = 0; i < q.size(); ++i) d[i] = std::llround(static_cast<double>(t) * v1(i));
    SpectralCertificate cert = evaluate_certificate(q, d);
    if (cert.valid) return {std::move(d), t, std::move(cert)};
  }
  fail(errc::search_exhausted,
       "no valid certificate up to schedule step " + std::to_string(t_cap));
}

/// One randomized check of the hyperplane eigenvalue estimate.
struct AppendixTrial {
  int n = 0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double gamma = 0.0;
  double lambda_h = 0.0;
  double margin = 0.0;  // lambda_h - (lambda1 + gamma)
  bool pass = false;
};

struct AppendixReport {
  int trials = 0;
  int passes = 0;
  double worst_margin = 0.0;
  int r_monotonicity_violations = 0;
  std::vector<AppendixTrial> rows;
};

namespace detail {

/// Random orthogonal matrix: QR of a seeded Gaussian matrix with the sign
/// convention R_ii > 0.
inline Eigen::MatrixXd random_orthogonal(int n, Rng& rng) {
  Eigen::MatrixXd g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = rng.gaussian();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j)
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  return q;
}

}  // namespace detail

/// Randomized verifier for the hyperplane estimate: sample a symmetric form
/// with lambda1 < 0, a vector v with (v,v) = lambda1 + gamma for gamma below
/// the threshold, and check that the minimal eigenvalue on Ker (v,_) stays
/// strictly above lambda1 + gamma (up to 1e-9 slack). As a secondary check,
/// R(x) = sum_i lambda_i^2 v_i^2 / (lambda_i - x) is probed for monotone
/// increase on (lambda1, lambda2).
inline AppendixReport verify_appendix_lemma(int n, int trials, std::uint64_t seed) {
  if (n < 2) fail(errc::out_of_range, "need n >= 2");
  if (trials < 0) fail(errc::out_of_range, "trials must be >= 0");
  Rng rng(seed);
  AppendixReport report;
  report.trials = trials;
  for (int t = 0; t < trials; ++t) {
    Eigen::VectorXd lambda(n);
    lambda(0) = rng.uniform(-5.0, -0.5);
    for (int i = 1; i < n; ++i) lambda(i) = rng.uniform(lambda(0) + 0.2, 6.0);
    std::sort(lambda.data() + 1, lambda.data() + n);

    const Eigen::MatrixXd q = detail::random_orthogonal(n, rng);
    const Eigen::MatrixXd c = q * lambda.asDiagonal() * q.transpose();

    Eigen::VectorXd v(n);
    bool found = false;
    for (int attempt = 0; attempt < 200 && !found; ++attempt) {
      for (int i = 0; i < n; ++i) v(i) = rng.gaussian();
      found = v.dot(c * v) < 0;
    }
    if (!found) v = q.col(0);  // (v,v) = lambda1 < 0 exactly

    const double threshold = gamma_threshold(lambda(0), lambda(1));
    const double gamma = rng.unit() * threshold;
    const double target = lambda(0) + gamma;
    v *= std::sqrt(target / v.dot(c * v));

    AppendixTrial trial;
    trial.n = n;
    trial.lambda1 = lambda(0);
    trial.lambda2 = lambda(1);
    trial.gamma = gamma;
    trial.lambda_h = restricted_min_eigenvalue(c, v).value;
    trial.margin = trial.lambda_h - target;
    trial.pass = trial.margin > -kSpectralTol;
    if (trial.pass) ++report.passes;
    if (t == 0 || trial.margin < report.worst_margin) report.worst_margin = trial.margin;

    // R(x) must increase strictly between consecutive grid points.
    const Eigen::VectorXd w = q.transpose() * v;
    auto r_of = [&](double x) {
      double s = 0;
      for (int i = 0; i < n; ++i) s += lambda(i) * lambda(i) * w(i) * w(i) / (lambda(i) - x);
      return s;
    };
    const double lo = lambda(0), hi = lambda(1);
    double prev = r_of(lo + (hi - lo) / 17.0);
    for (int g = 2; g < 17; ++g) {
      const double x = lo + (hi - lo) * g / 17.0;
      const double cur = r_of(x);
      if (cur <= prev) ++report.r_monotonicity_violations;
      prev = cur;
    }
    report.rows.push_back(trial);
  }
  return report;
}

/// Tightness probe in two dimensions: for the diagonal form
/// diag(lambda1, lambda2) and v = (sqrt((lambda1+gamma-lambda2)/lambda1), 1),
/// the constraint (v,v) = lambda1 + gamma holds by construction and the
/// margin of the estimate shrinks to zero as gamma approaches the threshold.
inline std::vector<AppendixTrial> appendix_tightness_sweep(double lambda1, double lambda2,
                                                           const std::vector<double>& gamma_fracs) {
  if (lambda1 >= 0 || lambda1 >= lambda2) fail(errc::out_of_range, "need lambda1 < 0, lambda1 < lambda2");
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(2, 2);
  c(0, 0) = lambda1;
  c(1, 1) = lambda2;
  const double threshold = gamma_threshold(lambda1, lambda2);
  std::vector<AppendixTrial> rows;
  for (double f : gamma_fracs) {
    const double gamma = f * threshold;
    const double v1sq = (lambda1 + gamma - lambda2) / lambda1;
    Eigen::VectorXd v(2);
    v << std::sqrt(v1sq), 1.0;
    AppendixTrial trial;
    trial.n = 2;
    trial.lambda1 = lambda1;
    trial.lambda2 = lambda2;
    trial.gamma = gamma;
    trial.lambda_h = restricted_min_eigenvalue(c, v).value;
    trial.margin = trial.lambda_h - (lambda1 + gamma);
    trial.pass = trial.margin > -kSpectralTol;
    rows.push_back(trial);
  }
  return rows;
}

}  // namespace quivex
