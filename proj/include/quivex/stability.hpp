#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "quivex/error.hpp"
#include "quivex/forms.hpp"
#include "quivex/ivec.hpp"
#include "quivex/quiver.hpp"
#include "quivex/rational.hpp"
#include "quivex/subrep.hpp"

namespace quivex {

/// Slope datum mu = Theta / kappa: two linear functionals in the canonical
/// vertex order, kappa strictly positive on every vertex.
struct SlopeFunction {
  std::vector<Rational> theta;
  std::vector<Rational> kappa;
};

inline SlopeFunction make_slope_function(std::vector<Rational> theta,
                                         std::vector<Rational> kappa) {
  if (theta.size() != kappa.size())
    fail(errc::index_mismatch, "theta and kappa must have the same length");
  for (const auto& k : kappa)
    if (k <= 0) fail(errc::kappa_not_positive, "kappa must be positive on every vertex");
  return {std::move(theta), std::move(kappa)};
}

inline Rational theta_of(const SlopeFunction& mu, const IVec& d) {
  if (mu.theta.size() != d.size()) fail(errc::index_mismatch, "vector does not match slope function");
  Rational s = 0;
  for (std::size_t i = 0; i < d.size(); ++i) s += mu.theta[i] * d[i];
  return s;
}

inline Rational kappa_of(const SlopeFunction& mu, const IVec& d) {
  if (mu.kappa.size() != d.size()) fail(errc::index_mismatch, "vector does not match slope function");
  Rational s = 0;
  for (std::size_t i = 0; i < d.size(); ++i) s += mu.kappa[i] * d[i];
  return s;
}

inline Rational slope(const SlopeFunction& mu, const IVec& d) {
  if (is_zero(d)) fail(errc::zero_vector, "slope of the zero vector is undefined");
  return theta_of(mu, d) / kappa_of(mu, d);
}

/// The stability datum attached to a dimension vector d in the interior of
/// the fundamental domain: Theta = {d,_}, kappa = -(d,_). Requires
/// (d, i) < 0 for every vertex i, which makes kappa positive; the returned
/// slope function satisfies mu(d) = 0.
inline SlopeFunction slope_from_d(const Quiver& q, const IVec& d) {
  detail::check_indexed(q, d, "d");
  const int n = q.size();
  std::vector<Rational> theta(n), kappa(n);
  for (int i = 0; i < n; ++i) {
    const IVec unit = q.unit_vector(i);
    const long long pairing = sym_form(q, d, unit);
    if (pairing >= 0)
      fail(errc::kappa_not_positive,
           "(d, " + q.vertex_ids()[i] + ") = " + std::to_string(pairing) +
               " >= 0; d is not interior to the fundamental domain");
    theta[i] = antisym_form(q, d, unit);
    kappa[i] = -pairing;
  }
  return {std::move(theta), std::move(kappa)};
}

/// Value of a constrained minimum over lattice points. An empty feasible set
/// is the first-class outcome `unconstrained`, not an error.
struct EpsilonResult {
  std::optional<Rational> value;
  std::optional<IVec> witness;

  bool unconstrained() const { return !value.has_value(); }
};

enum class EpsilonKind { Effective, Optimal };

namespace detail {

inline void check_epsilon_args(const Quiver& q, const IVec& d, const Rational& delta) {
  check_indexed(q, d, "d");
  if (is_zero(d)) fail(errc::zero_vector, "d must be nonzero");
  if (!is_nonnegative(d)) fail(errc::out_of_range, "d must be nonnegative");
  if (delta <= 0 || delta >= 1) fail(errc::out_of_range, "delta must lie in (0,1)");
}

/// Scans candidates e (nonzero, kappa(e) <= delta*kappa(d), feasible per
/// `feasible`) for the minimum of mu(d) - mu(e). Candidates arrive in
/// lexicographic order, so the first minimizer found is the lex-smallest.
template <typename Candidates, typename Feasible>
EpsilonResult epsilon_minimum(const SlopeFunction& mu, const IVec& d, const Rational& delta,
                              Candidates&& for_each_candidate, Feasible&& feasible) {
  const Rational mu_d = slope(mu, d);
  const Rational cap = delta * kappa_of(mu, d);
  EpsilonResult best;
  for_each_candidate([&](const IVec& e) {
    if (is_zero(e)) return;
    if (kappa_of(mu, e) > cap) return;
    if (!feasible(e)) return;
    const Rational gap = mu_d - slope(mu, e);
    if (!best.value || gap < *best.value) {
      best.value = gap;
      best.witness = e;
    }
  });
  return best;
}

}  // namespace detail

/// eps_eff: minimum of mu(d) - mu(e) over nonzero e <= d with
/// <e, d-e> >= 0 and kappa(e) <= delta*kappa(d). Exhaustive over the
/// lattice box [0, d].
inline EpsilonResult epsilon_eff(const Quiver& q, const SlopeFunction& mu, const IVec& d,
                                 const Rational& delta,
                                 long long budget = kDefaultLatticeBudget) {
  detail::check_epsilon_args(q, d, delta);
  if (!box_within_budget(d, budget))
    fail(errc::budget_exceeded, "lattice box [0," + quivex::to_string(d) + "] exceeds the budget");
  auto candidates = [&](auto&& visit) {
    IVec e(d.size(), 0);
    while (true) {
      visit(e);
      if (!next_in_box(e, d)) break;
    }
  };
  auto feasible = [&](const IVec& e) { return euler_form(q, e, vec_sub(d, e)) >= 0; };
  return detail::epsilon_minimum(mu, d, delta, candidates, feasible);
}

/// eps_opt: as eps_eff but with feasibility "e embeds into d" via the
/// Schofield oracle.
inline EpsilonResult epsilon_opt(const Quiver& q, const SlopeFunction& mu, const IVec& d,
                                 const Rational& delta, EmbedCache& cache) {
  detail::check_epsilon_args(q, d, delta);
  const auto subs = general_subreps(q, d, cache);  // lex-sorted
  auto candidates = [&](auto&& visit) {
    for (const auto& e : subs) visit(e);
  };
  return detail::epsilon_minimum(mu, d, delta, candidates, [](const IVec&) { return true; });
}

struct ExpanderDecision {
  bool exists;
  std::optional<IVec> violator;  // lex-smallest counterexample when false
};

/// A (delta, eps)-expander of dimension vector d exists iff every nonzero
/// e embedding into d with kappa(e) <= delta*kappa(d) has
/// mu(e) <= mu(d) - eps.
inline ExpanderDecision expander_exists(const Quiver& q, const SlopeFunction& mu, const IVec& d,
                                        const Rational& delta, const Rational& eps,
                                        EmbedCache& cache) {
  detail::check_epsilon_args(q, d, delta);
  if (eps <= 0) fail(errc::out_of_range, "eps must be positive");
  const Rational mu_d = slope(mu, d);
  const Rational cap = delta * kappa_of(mu, d);
  for (const auto& e : general_subreps(q, d, cache)) {
    if (is_zero(e) || kappa_of(mu, e) > cap) continue;
    if (slope(mu, e) > mu_d - eps) return {false, e};
  }
  return {true, std::nullopt};
}

struct ScanEntry {
  long long k;
  EpsilonResult result;
  std::optional<Rational> running_min;  // over finite values seen so far
};

/// The sequence eps_{k d}(delta) for k = 1..k_max together with its running
/// minimum, a desk-scale proxy for the liminf over the family (k d)_k.
inline std::vector<ScanEntry> uniform_scan(const Quiver& q, const SlopeFunction& mu, const IVec& d,
                                           const Rational& delta, long long k_max,
                                           EpsilonKind kind, EmbedCache& cache) {
  if (k_max < 0) fail(errc::out_of_range, "k_max must be >= 0");
  std::vector<ScanEntry> out;
  std::optional<Rational> running;
  for (long long k = 1; k <= k_max; ++k) {
    const IVec kd = vec_scaled(d, k);
    EpsilonResult r = kind == EpsilonKind::Effective
                          ? epsilon_eff(q, mu, kd, delta, cache.lattice_budget())
                          : epsilon_opt(q, mu, kd, delta, cache);
    if (r.value && (!running || *r.value < *running)) running = r.value;
    out.push_back({k, std::move(r), running});
  }
  return out;
}

}  // namespace quivex
