#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"

using namespace quivex;

TEST_CASE("embeds on frozen Kronecker examples") {
  const Quiver k3 = qt::kronecker(3);
  EmbedCache cache(k3);
  CHECK(embeds(k3, {1, 2}, {2, 3}, cache));        // <(1,2),(1,1)> = 0
  CHECK_FALSE(embeds(k3, {1, 1}, {2, 3}, cache));  // <(1,1),(1,2)> = -3
  CHECK(embeds(k3, {0, 0}, {4, 7}, cache));
  CHECK(embeds(k3, {4, 7}, {4, 7}, cache));
}

TEST_CASE("embeds validates its arguments") {
  const Quiver k3 = qt::kronecker(3);
  EmbedCache cache(k3);
  CHECK_THROWS_MATCHES(embeds(k3, {2, 0}, {1, 1}, cache), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& e) { return e.code() == errc::not_below; }));
  CHECK_THROWS_MATCHES(embeds(k3, {-1, 0}, {1, 1}, cache), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& e) { return e.code() == errc::not_below; }));
  const Quiver a2 = qt::path_quiver(2);
  EmbedCache other(a2);
  CHECK_THROWS_MATCHES(embeds(k3, {0, 1}, {1, 1}, other), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& e) { return e.code() == errc::index_mismatch; }));
}

TEST_CASE("general_subreps on frozen examples") {
  const Quiver k3 = qt::kronecker(3);
  EmbedCache cache(k3);
  CHECK(general_subreps(k3, {1, 1}, cache) ==
        std::vector<IVec>{{0, 0}, {0, 1}, {1, 1}});

  const Quiver a2 = qt::path_quiver(2);
  EmbedCache ca2(a2);
  CHECK(general_subreps(a2, {1, 1}, ca2) == std::vector<IVec>{{0, 0}, {0, 1}, {1, 1}});
  CHECK(general_subreps(a2, {0, 0}, ca2) == std::vector<IVec>{{0, 0}});
}

TEST_CASE("budget refuses oversized boxes") {
  const Quiver k3 = qt::kronecker(3);
  EmbedCache cache(k3, /*lattice_budget=*/8);
  CHECK_THROWS_MATCHES(general_subreps(k3, {2, 3}, cache), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& e) { return e.code() == errc::budget_exceeded; }));
  // 3x3 box fits the budget of 9.
  EmbedCache ok(k3, 9);
  CHECK(general_subreps(k3, {2, 2}, ok).size() >= 2);
}

TEST_CASE("necessary condition: embeds implies <e, d-e> >= 0") {
  Rng rng(424242);
  for (int iter = 0; iter < 25; ++iter) {
    const Quiver q = qt::random_acyclic_quiver(rng);
    EmbedCache cache(q);
    IVec d(q.size(), 0);
    const IVec top(q.size(), 3);
    while (true) {
      for (const auto& e : general_subreps(q, d, cache))
        CHECK(euler_form(q, e, vec_sub(d, e)) >= 0);
      if (!next_in_box(d, top)) break;
    }
  }
}

TEST_CASE("Kronecker closed-form agreement up to (4,4)") {
  for (long long m : {3, 4}) {
    const Quiver q = qt::kronecker(m);
    EmbedCache cache(q);
    IVec d(2, 0);
    const IVec top{4, 4};
    while (true) {
      IVec e(2, 0);
      while (true) {
        if (leq(e, d))
          CHECK(embeds(q, e, d, cache) ==
                (euler_form(q, e, vec_sub(d, e)) >= 0));
        if (!next_in_box(e, d)) break;
      }
      if (!next_in_box(d, top)) break;
    }
  }
}

TEST_CASE("results do not depend on cache state or query order") {
  const Quiver q = qt::wild3_quiver();
  const IVec d{2, 2, 2};

  // Fresh cache per query, descending order.
  std::vector<IVec> cold;
  {
    IVec e(3, 0);
    std::vector<IVec> all;
    while (true) {
      all.push_back(e);
      if (!next_in_box(e, d)) break;
    }
    for (auto it = all.rbegin(); it != all.rend(); ++it) {
      EmbedCache cache(q);
      if (embeds(q, *it, d, cache)) cold.push_back(*it);
    }
    std::sort(cold.begin(), cold.end());
  }
  // One shared cache, ascending order.
  EmbedCache warm(q);
  CHECK(general_subreps(q, d, warm) == cold);
  // Asking twice gives the identical set.
  CHECK(general_subreps(q, d, warm) == cold);
}

TEST_CASE("duality cross-check against the opposite quiver") {
  // embeds(Q, e, d) iff embeds(Q^op, d-e, d); vertices map through their ids
  // because the canonical order of the opposite differs.
  Rng rng(909090);
  for (int iter = 0; iter < 12; ++iter) {
    const Quiver q = qt::random_acyclic_quiver(rng, 3, 3);
    const Quiver op = q.opposite();
    EmbedCache cq(q), cop(op);
    std::vector<int> perm(q.size());
    for (int i = 0; i < q.size(); ++i) perm[i] = op.index_of(q.vertex_ids()[i]);

    IVec d(q.size(), 0);
    const IVec top(q.size(), 2);
    while (true) {
      IVec e(q.size(), 0);
      while (true) {
        if (leq(e, d)) {
          IVec dop(q.size()), rop(q.size());
          for (int i = 0; i < q.size(); ++i) {
            dop[perm[i]] = d[i];
            rop[perm[i]] = d[i] - e[i];
          }
          CHECK(embeds(q, e, d, cq) == embeds(op, rop, dop, cop));
        }
        if (!next_in_box(e, d)) break;
      }
      if (!next_in_box(d, top)) break;
    }
  }
}
