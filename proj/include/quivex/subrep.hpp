#pragma once

#include <memory>
#include <mutex>
#include <map>
#include <vector>

#include "quivex/error.hpp"
#include "quivex/forms.hpp"
#include "quivex/ivec.hpp"
#include "quivex/quiver.hpp"

namespace quivex {

inline constexpr long long kDefaultLatticeBudget = 10'000'000;

/// Memoized tables Sub(e) = { e' <= e : e' embeds into e } for one fixed
/// quiver, following the recursive criterion
///
///   e' embeds into e  iff  <e'', e - e'> >= 0 for every e'' in Sub(e').
///
/// The recursion is on e alone, so one cache serves every query against the
/// same quiver. Entries are immutable once stored; concurrent queries may
/// recompute an entry in parallel but always produce the same set, and a
/// partially built set is never published.
class EmbedCache {
 public:
  explicit EmbedCache(const Quiver& q, long long lattice_budget = kDefaultLatticeBudget)
      : euler_(q.euler_matrix()), n_(q.size()), budget_(lattice_budget) {}

  long long lattice_budget() const { return budget_; }
  void set_lattice_budget(long long b) { budget_ = b; }

  bool built_for(const Quiver& q) const {
    return q.size() == n_ && q.euler_matrix() == euler_;
  }

  /// Sub(e), sorted lexicographically. Always contains 0 and e.
  std::shared_ptr<const std::vector<IVec>> sub_dims(const IVec& e) {
    if (static_cast<int>(e.size()) != n_)
      fail(errc::index_mismatch, "dimension vector does not match the cached quiver");
    if (!is_nonnegative(e)) fail(errc::out_of_range, "dimension vector must be nonnegative");
    return compute(e);
  }

 private:
  std::shared_ptr<const std::vector<IVec>> lookup(const IVec& e) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = table_.find(e);
    return it == table_.end() ? nullptr : it->second;
  }

  std::shared_ptr<const std::vector<IVec>> store(const IVec& e,
                                                 std::shared_ptr<const std::vector<IVec>> v) {
    std::lock_guard<std::mutex> lock(mu_);
    auto [it, inserted] = table_.emplace(e, std::move(v));
    (void)inserted;  // first writer wins; duplicates are identical anyway
    return it->second;
  }

  long long euler_dot(const IVec& a, const IVec& b) const {
    return detail::bilinear(euler_, a, b);
  }

  std::shared_ptr<const std::vector<IVec>> compute(const IVec& e) {
    if (auto hit = lookup(e)) return hit;
    if (!box_within_budget(e, budget_))
      fail(errc::budget_exceeded,
           "lattice box [0," + quivex::to_string(e) + "] exceeds the budget of " +
               std::to_string(budget_) + " points");
    auto out = std::make_shared<std::vector<IVec>>();
    IVec ep(n_, 0);
    while (true) {
      if (is_zero(ep) || ep == e) {
        out->push_back(ep);
      } else {
        const IVec rest = vec_sub(e, ep);
        bool ok = true;
        const auto subs = compute(ep);  // strictly smaller total dimension
        for (const auto& epp : *subs) {
          if (euler_dot(epp, rest) < 0) {
            ok = false;
            break;
          }
        }
        if (ok) out->push_back(ep);
      }
      if (!next_in_box(ep, e)) break;
    }
    return store(e, std::move(out));
  }

  IMat euler_;
  int n_;
  long long budget_;
  std::map<IVec, std::shared_ptr<const std::vector<IVec>>> table_;
  std::mutex mu_;
};

/// Does every representation of dimension vector d contain a
/// subrepresentation of dimension vector e?
inline bool embeds(const Quiver& q, const IVec& e, const IVec& d, EmbedCache& cache) {
  detail::check_indexed(q, e, "e");
  detail::check_indexed(q, d, "d");
  if (!cache.built_for(q)) fail(errc::index_mismatch, "cache was built for a different quiver");
  if (!is_nonnegative(e) || !leq(e, d))
    fail(errc::not_below, "need 0 <= e <= d componentwise");
  if (is_zero(e) || e == d) return true;
  const IVec rest = vec_sub(d, e);
  for (const auto& ep : *cache.sub_dims(e)) {
    if (euler_form(q, ep, rest) < 0) return false;  // first violation decides
  }
  return true;
}

/// { e : 0 <= e <= d, e embeds into d }, sorted lexicographically.
inline std::vector<IVec> general_subreps(const Quiver& q, const IVec& d, EmbedCache& cache) {
  detail::check_indexed(q, d, "d");
  if (!cache.built_for(q)) fail(errc::index_mismatch, "cache was built for a different quiver");
  if (!is_nonnegative(d)) fail(errc::out_of_range, "d must be nonnegative");
  return *cache.sub_dims(d);
}

}  // namespace quivex
