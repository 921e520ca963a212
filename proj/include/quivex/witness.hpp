#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "quivex/error.hpp"
#include "quivex/ivec.hpp"
#include "quivex/quiver.hpp"
#include "quivex/rational.hpp"
#include "quivex/rng.hpp"
#include "quivex/stability.hpp"

namespace quivex {

inline constexpr long long kDefaultSubspaceBudget = 1'000'000;

inline bool is_prime(long long p) {
  if (p < 2) return false;
  for (long long f = 2; f * f <= p; ++f)
    if (p % f == 0) return false;
  return true;
}

/// Dense matrix over F_p, row major, entries reduced to [0, p).
struct FpMat {
  int rows = 0, cols = 0;
  std::vector<long long> a;

  FpMat() = default;
  FpMat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0) {}

  long long& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
  long long at(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }
};

/// A representation of a quiver over a prime field: one matrix per arrow
/// (multiplicities expanded, aligned with Quiver::arrow_list), each of shape
/// dim(target) x dim(source).
struct FiniteFieldRep {
  long long p = 0;
  IVec dims;
  std::vector<FpMat> maps;
};

/// Seed-deterministic uniform representation of dimension vector d over F_p.
inline FiniteFieldRep sample_rep(const Quiver& q, const IVec& d, long long p,
                                 std::uint64_t seed) {
  detail::check_indexed(q, d, "d");
  if (!is_nonnegative(d)) fail(errc::out_of_range, "d must be nonnegative");
  if (!is_prime(p)) fail(errc::not_prime, std::to_string(p) + " is not prime");
  Rng rng(seed);
  FiniteFieldRep rep;
  rep.p = p;
  rep.dims = d;
  for (const auto& [src, tgt] : q.arrow_list()) {
    FpMat m(static_cast<int>(d[tgt]), static_cast<int>(d[src]));
    for (auto& entry : m.a) entry = static_cast<long long>(rng.below(static_cast<std::uint64_t>(p)));
    rep.maps.push_back(std::move(m));
  }
  return rep;
}

namespace detail {

/// Gaussian binomial [d choose k]_p: the number of k-dimensional subspaces
/// of F_p^d.
inline BigInt gaussian_binomial(long long d, long long k, long long p) {
  if (k < 0 || k > d) return 0;
  BigInt num = 1, den = 1;
  for (long long i = 0; i < k; ++i) {
    num *= boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(d - i)) - 1;
    den *= boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(i + 1)) - 1;
  }
  return num / den;
}

/// A k-dimensional subspace of F_p^d as the row space of a k x d matrix in
/// reduced row echelon form; `pivots` lists the pivot columns.
struct Subspace {
  FpMat basis;          // k x d, RREF
  std::vector<int> pivots;

  /// Reduce v against the basis; returns true iff v lies in the subspace.
  bool contains(std::vector<long long> v, long long p) const {
    for (int r = 0; r < basis.rows; ++r) {
      const long long c = v[pivots[r]] % p;
      if (c == 0) continue;
      for (int j = 0; j < basis.cols; ++j)
        v[j] = ((v[j] - c * basis.at(r, j)) % p + p) % p;
    }
    for (long long x : v)
      if (x % p != 0) return false;
    return true;
  }
};

/// Enumerates every k-dimensional subspace of F_p^d exactly once, as RREF
/// representatives. The visitor returns false to stop; the function returns
/// false when stopped early.
template <typename Visit>
bool for_each_subspace(int d, int k, long long p, Visit&& visit) {
  if (k == 0) {
    Subspace s;
    s.basis = FpMat(0, d);
    return visit(s);
  }
  std::vector<int> pivots(k);
  for (int i = 0; i < k; ++i) pivots[i] = i;
  while (true) {
    // Free positions: (r, c) with c > pivots[r], c not a pivot column.
    std::vector<bool> is_pivot(d, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<std::pair<int, int>> free_pos;
    for (int r = 0; r < k; ++r)
      for (int c = pivots[r] + 1; c < d; ++c)
        if (!is_pivot[c]) free_pos.emplace_back(r, c);

    Subspace s;
    s.basis = FpMat(k, d);
    s.pivots = pivots;
    for (int r = 0; r < k; ++r) s.basis.at(r, pivots[r]) = 1;
    std::vector<long long> values(free_pos.size(), 0);
    while (true) {
      for (std::size_t i = 0; i < free_pos.size(); ++i)
        s.basis.at(free_pos[i].first, free_pos[i].second) = values[i];
      if (!visit(s)) return false;
      int idx = static_cast<int>(values.size()) - 1;
      while (idx >= 0 && values[idx] == p - 1) values[idx--] = 0;
      if (idx < 0) break;
      ++values[idx];
    }

    // Next pivot combination in lexicographic order.
    int i = k - 1;
    while (i >= 0 && pivots[i] == d - k + i) --i;
    if (i < 0) break;
    ++pivots[i];
    for (int j = i + 1; j < k; ++j) pivots[j] = pivots[j - 1] + 1;
  }
  return true;
}

inline std::vector<long long> apply_map(const FpMat& m, const FpMat& basis, int row,
                                        long long p) {
  std::vector<long long> out(m.rows, 0);
  for (int r = 0; r < m.rows; ++r) {
    long long acc = 0;
    for (int c = 0; c < m.cols; ++c) acc += m.at(r, c) * basis.at(row, c);
    out[r] = acc % p;
  }
  return out;
}

}  // namespace detail

struct SubrepWitness {
  bool found = false;
  std::vector<FpMat> subspaces;  // RREF bases, one per vertex
};

/// Exhaustive search for a subrepresentation of dimension vector e: tuples
/// of RREF subspace representatives, one Grassmannian per vertex, pruned as
/// soon as an arrow constraint V_alpha(U_i) <= U_j fails.
inline SubrepWitness has_subrep(const Quiver& q, const FiniteFieldRep& rep, const IVec& e,
                                long long budget = kDefaultSubspaceBudget) {
  detail::check_indexed(q, rep.dims, "rep dims");
  detail::check_indexed(q, e, "e");
  if (!is_nonnegative(e) || !leq(e, rep.dims))
    fail(errc::not_below, "need 0 <= e <= dim V componentwise");

  BigInt tuples = 1;
  for (int i = 0; i < q.size(); ++i)
    tuples *= detail::gaussian_binomial(rep.dims[i], e[i], rep.p);
  if (tuples > budget)
    fail(errc::budget_exceeded, "Grassmannian product has " + tuples.str() +
                                    " subspace tuples, budget is " + std::to_string(budget));

  const auto& arrows = q.arrow_list();
  // Arrows become checkable once the later of their endpoints is chosen.
  std::vector<std::vector<int>> checkable(q.size());
  for (std::size_t a = 0; a < arrows.size(); ++a)
    checkable[std::max(arrows[a].first, arrows[a].second)].push_back(static_cast<int>(a));

  std::vector<detail::Subspace> chosen(q.size());
  SubrepWitness result;

  auto arrows_ok = [&](int vertex) {
    for (int a : checkable[vertex]) {
      const auto& [src, tgt] = arrows[a];
      const detail::Subspace& u = chosen[src];
      const detail::Subspace& w = chosen[tgt];
      for (int row = 0; row < u.basis.rows; ++row) {
        if (!w.contains(detail::apply_map(rep.maps[a], u.basis, row, rep.p), rep.p))
          return false;
      }
    }
    return true;
  };

  // Depth-first over vertices in canonical order.
  auto search = [&](auto&& self, int vertex) -> bool {
    if (vertex == q.size()) {
      result.found = true;
      result.subspaces.clear();
      for (const auto& s : chosen) result.subspaces.push_back(s.basis);
      return false;  // stop enumeration
    }
    return detail::for_each_subspace(
        static_cast<int>(rep.dims[vertex]), static_cast<int>(e[vertex]), rep.p,
        [&](const detail::Subspace& s) {
          chosen[vertex] = s;
          if (!arrows_ok(vertex)) return true;  // prune, keep enumerating
          return self(self, vertex + 1);
        });
  };
  search(search, 0);
  return result;
}

/// All dimension vectors of subrepresentations of rep, by exhaustive search
/// over the box [0, dim V]. The budget bounds the total Grassmannian-tuple
/// count across the whole box.
inline std::vector<IVec> all_subrep_dims(const Quiver& q, const FiniteFieldRep& rep,
                                         long long budget = kDefaultSubspaceBudget) {
  BigInt total = 1;
  for (int i = 0; i < q.size(); ++i) {
    BigInt per_vertex = 0;
    for (long long k = 0; k <= rep.dims[i]; ++k)
      per_vertex += detail::gaussian_binomial(rep.dims[i], k, rep.p);
    total *= per_vertex;
  }
  if (total > budget)
    fail(errc::budget_exceeded, "box of Grassmannian tuples has " + total.str() +
                                    " elements, budget is " + std::to_string(budget));
  std::vector<IVec> out;
  IVec e(rep.dims.size(), 0);
  while (true) {
    if (has_subrep(q, rep, e, budget).found) out.push_back(e);
    if (!next_in_box(e, rep.dims)) break;
  }
  return out;
}

struct EmpiricalCheck {
  bool pass = false;
  std::optional<IVec> violator;
  std::vector<FpMat> violating_subspaces;
};

/// Empirical (delta, eps)-expander test of one sampled representation: fails
/// iff some subrepresentation dimension e != 0 with kappa(e) <= delta
/// kappa(dim V) has mu(e) > mu(dim V) - eps. Verdicts are heuristic: an
/// F_p-rational witness can be absent even when e embeds over the closure.
inline EmpiricalCheck empirical_expander_check(const Quiver& q, const FiniteFieldRep& rep,
                                               const SlopeFunction& mu, const Rational& delta,
                                               const Rational& eps,
                                               long long budget = kDefaultSubspaceBudget) {
  if (delta <= 0 || delta >= 1) fail(errc::out_of_range, "delta must lie in (0,1)");
  if (eps <= 0) fail(errc::out_of_range, "eps must be positive");
  if (is_zero(rep.dims)) fail(errc::zero_vector, "representation is zero");
  const Rational mu_d = slope(mu, rep.dims);
  const Rational cap = delta * kappa_of(mu, rep.dims);
  EmpiricalCheck check;
  check.pass = true;
  for (const IVec& e : all_subrep_dims(q, rep, budget)) {
    if (is_zero(e) || kappa_of(mu, e) > cap) continue;
    if (slope(mu, e) > mu_d - eps) {
      check.pass = false;
      check.violator = e;
      check.violating_subspaces = has_subrep(q, rep, e, budget).subspaces;
      break;
    }
  }
  return check;
}

}  // namespace quivex
