#pragma once

#include <vector>

#include "quivex/error.hpp"
#include "quivex/ivec.hpp"
#include "quivex/quiver.hpp"
#include "quivex/rational.hpp"

namespace quivex {

namespace detail {

inline void check_indexed(const Quiver& q, const IVec& v, const char* what) {
  if (static_cast<int>(v.size()) != q.size())
    fail(errc::index_mismatch,
         std::string(what) + " has " + std::to_string(v.size()) + " entries, quiver has " +
             std::to_string(q.size()) + " vertices");
}

/// d^T M e with overflow detection. Inputs may be negative (the forms are
/// evaluated on differences like d - e).
inline long long bilinear(const IMat& m, const IVec& d, const IVec& e) {
  const int n = static_cast<int>(d.size());
  __int128 acc = 0;
  for (int i = 0; i < n; ++i) {
    if (d[i] == 0) continue;
    __int128 row = 0;
    for (int j = 0; j < n; ++j) row += static_cast<__int128>(m(i, j)) * e[j];
    acc += static_cast<__int128>(d[i]) * row;
  }
  if (acc > static_cast<__int128>(INT64_MAX) || acc < static_cast<__int128>(INT64_MIN))
    fail(errc::overflow, "bilinear form value exceeds 64 bits");
  return static_cast<long long>(acc);
}

}  // namespace detail

/// Euler form <d,e> = sum_i d_i e_i - sum_{arrows i->j} d_i e_j.
inline long long euler_form(const Quiver& q, const IVec& d, const IVec& e) {
  detail::check_indexed(q, d, "left vector");
  detail::check_indexed(q, e, "right vector");
  return detail::bilinear(q.euler_matrix(), d, e);
}

/// Symmetrized form (d,e) = <d,e> + <e,d> = d^T C e.
inline long long sym_form(const Quiver& q, const IVec& d, const IVec& e) {
  detail::check_indexed(q, d, "left vector");
  detail::check_indexed(q, e, "right vector");
  return detail::bilinear(q.cartan_matrix(), d, e);
}

/// Antisymmetrized form {d,e} = <d,e> - <e,d>.
inline long long antisym_form(const Quiver& q, const IVec& d, const IVec& e) {
  return checked_add(euler_form(q, d, e), -euler_form(q, e, d));
}

enum class QuiverClass { Dynkin, ExtendedDynkin, Wild };

inline const char* to_string(QuiverClass c) {
  switch (c) {
    case QuiverClass::Dynkin: return "Dynkin";
    case QuiverClass::ExtendedDynkin: return "ExtendedDynkin";
    case QuiverClass::Wild: return "Wild";
  }
  return "?";
}

/// Signature of a symmetric rational matrix, computed exactly.
struct Inertia {
  int positive = 0;
  int negative = 0;
  int zero = 0;
};

/// Exact inertia by symmetric (congruence) reduction over the rationals.
/// When every remaining diagonal entry vanishes but some off-diagonal entry
/// b = m[i][j] does not, adding row/column j to row/column i produces the
/// diagonal entry 2b without changing the signature.
inline Inertia rational_inertia(std::vector<std::vector<Rational>> m) {
  const int n = static_cast<int>(m.size());
  std::vector<int> live(n);
  for (int i = 0; i < n; ++i) live[i] = i;
  Inertia sig;
  while (!live.empty()) {
    int pivot = -1;
    for (int idx : live)
      if (m[idx][idx] != 0) {
        pivot = idx;
        break;
      }
    if (pivot < 0) {
      int a = -1, b = -1;
      for (std::size_t s = 0; s < live.size() && a < 0; ++s)
        for (std::size_t t = s + 1; t < live.size() && a < 0; ++t)
          if (m[live[s]][live[t]] != 0) {
            a = live[s];
            b = live[t];
          }
      if (a < 0) {
        sig.zero += static_cast<int>(live.size());
        break;
      }
      for (int idx : live) {
        m[a][idx] += m[b][idx];
      }
      for (int idx : live) {
        m[idx][a] += m[idx][b];
      }
      continue;
    }
    const Rational p = m[pivot][pivot];
    if (p > 0)
      ++sig.positive;
    else
      ++sig.negative;
    std::vector<int> rest;
    for (int idx : live)
      if (idx != pivot) rest.push_back(idx);
    for (int i : rest)
      for (int j : rest) m[i][j] -= m[i][pivot] * m[pivot][j] / p;
    live = std::move(rest);
  }
  return sig;
}

struct ComponentClass {
  std::vector<int> vertices;  // canonical indices
  QuiverClass cls;
};

/// Dynkin / extended Dynkin / wild per connected component, decided by the
/// exact signature of the Cartan matrix restricted to the component.
inline std::vector<ComponentClass> classify(const Quiver& q) {
  std::vector<ComponentClass> out;
  for (const auto& comp : q.components()) {
    const int k = static_cast<int>(comp.size());
    std::vector<std::vector<Rational>> c(k, std::vector<Rational>(k));
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b) c[a][b] = Rational(q.cartan_matrix()(comp[a], comp[b]));
    const Inertia sig = rational_inertia(std::move(c));
    QuiverClass cls = QuiverClass::Wild;
    if (sig.negative == 0) cls = sig.zero == 0 ? QuiverClass::Dynkin : QuiverClass::ExtendedDynkin;
    out.push_back({comp, cls});
  }
  return out;
}

inline QuiverClass classify_connected(const Quiver& q) {
  if (!q.is_connected()) fail(errc::disconnected, "quiver is not connected");
  return classify(q).front().cls;
}

}  // namespace quivex
