#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"

using namespace quivex;

TEST_CASE("validate accepts the 3-Kronecker quiver") {
  const Quiver q = qt::kronecker(3);
  CHECK(q.size() == 2);
  CHECK(q.vertex_ids() == std::vector<std::string>{"1", "2"});
  CHECK(q.arrow_count(0, 1) == 3);
  CHECK(q.arrow_count(1, 0) == 0);
}

TEST_CASE("validate rejects cycles and malformed input") {
  CHECK_THROWS_MATCHES(Quiver::validate({"1"}, {{"1", "1", 1}}), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& e) { return e.code() == errc::cyclic_quiver; }));
  CHECK_THROWS_MATCHES(
      Quiver::validate({"1", "2", "3"}, {{"1", "2", 1}, {"2", "3", 1}, {"3", "1", 1}}), Error,
      Catch::Matchers::Predicate<Error>(
          [](const Error& e) { return e.code() == errc::cyclic_quiver; }));
  CHECK_THROWS_MATCHES(Quiver::validate({"1"}, {{"1", "2", 1}}), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& e) { return e.code() == errc::malformed_input; }));
  CHECK_THROWS_MATCHES(Quiver::validate({"1", "1"}, {}), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& e) { return e.code() == errc::malformed_input; }));
}

TEST_CASE("canonical order puts sources first with lexicographic ties") {
  // b and c are sources; a is the sink.
  const Quiver q = Quiver::validate({"a", "c", "b"}, {{"b", "a", 1}, {"c", "a", 1}});
  CHECK(q.vertex_ids() == std::vector<std::string>{"b", "c", "a"});
}

TEST_CASE("text and JSON parsing agree") {
  const Quiver qt_text = Quiver::from_text("vertices: 1 2\narrow: 1 2 x3\n");
  const Quiver qt_json = Quiver::from_json(nlohmann::json::parse(
      R"({"vertices":["1","2"],"arrows":[["1","2",3]]})"));
  CHECK(qt_text.euler_matrix() == qt_json.euler_matrix());
  CHECK(qt_text.to_json() == qt_json.to_json());
  CHECK_THROWS_AS(Quiver::from_text("vertices: 1 2\narrow: 1\n"), Error);
  CHECK_THROWS_AS(Quiver::from_text("arrow: 1 2\n"), Error);
  CHECK_THROWS_AS(Quiver::from_text("vertices: 1 2\narrow: 1 2 y3\n"), Error);
}

TEST_CASE("euler form on frozen examples") {
  const Quiver k3 = qt::kronecker(3);
  CHECK(euler_form(k3, {1, 1}, {1, 1}) == -1);  // 1+1 - 3*1*1
  CHECK(euler_form(k3, k3.unit_vector(0), k3.unit_vector(0)) == 1);
  CHECK(euler_form(k3, k3.unit_vector(1), k3.unit_vector(1)) == 1);
  const Quiver a2 = qt::path_quiver(2);
  CHECK(euler_form(a2, {1, 0}, {0, 1}) == -1);
  CHECK_THROWS_MATCHES(euler_form(k3, {1, 1, 1}, {1, 1}), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& e) { return e.code() == errc::index_mismatch; }));
}

TEST_CASE("symmetrized and antisymmetrized forms") {
  const Quiver k3 = qt::kronecker(3);
  CHECK(sym_form(k3, {1, 1}, {1, 1}) == -2);  // 2 * <(1,1),(1,1)>
  CHECK(antisym_form(k3, {1, 1}, {1, 1}) == 0);
  CHECK(antisym_form(k3, {1, 1}, {1, 0}) == 3);  // m (e1 d2 - d1 e2)
  // Cartan diagonal is 2 on every vertex.
  for (int i = 0; i < 2; ++i) CHECK(k3.cartan_matrix()(i, i) == 2);
}

TEST_CASE("form identities on random vectors") {
  Rng rng(20240901);
  for (int iter = 0; iter < 60; ++iter) {
    const Quiver q = qt::random_acyclic_quiver(rng);
    const int n = q.size();
    const IVec d = qt::random_vector(rng, n, -5, 5);
    const IVec dp = qt::random_vector(rng, n, -5, 5);
    const IVec e = qt::random_vector(rng, n, -5, 5);
    const long long lambda = rng.int_in(-3, 3);

    IVec sum(n), scaled(n);
    for (int i = 0; i < n; ++i) {
      sum[i] = d[i] + dp[i];
      scaled[i] = lambda * d[i];
    }
    CHECK(euler_form(q, sum, e) == euler_form(q, d, e) + euler_form(q, dp, e));
    CHECK(euler_form(q, scaled, e) == lambda * euler_form(q, d, e));

    CHECK(sym_form(q, d, e) == sym_form(q, e, d));
    CHECK(antisym_form(q, d, e) == -antisym_form(q, e, d));
    CHECK(2 * euler_form(q, d, e) == sym_form(q, d, e) + antisym_form(q, d, e));
    CHECK(antisym_form(q, d, d) == 0);
  }
}

TEST_CASE("classification of the named quivers") {
  CHECK(classify_connected(qt::path_quiver(2)) == QuiverClass::Dynkin);
  CHECK(classify_connected(qt::path_quiver(3)) == QuiverClass::Dynkin);
  CHECK(classify_connected(qt::d4_quiver()) == QuiverClass::Dynkin);
  CHECK(classify_connected(qt::kronecker(2)) == QuiverClass::ExtendedDynkin);
  CHECK(classify_connected(qt::kronecker(3)) == QuiverClass::Wild);
  CHECK(classify_connected(qt::kronecker(4)) == QuiverClass::Wild);
  CHECK(classify_connected(qt::wild3_quiver()) == QuiverClass::Wild);
}

TEST_CASE("classification works per connected component") {
  // A2 next to a 3-Kronecker, no arrows between them.
  const Quiver q = Quiver::validate({"a", "b", "x", "y"}, {{"a", "b", 1}, {"x", "y", 3}});
  CHECK_FALSE(q.is_connected());
  const auto classes = classify(q);
  REQUIRE(classes.size() == 2);
  CHECK(classes[0].cls == QuiverClass::Dynkin);
  CHECK(classes[1].cls == QuiverClass::Wild);
  CHECK_THROWS_AS(classify_connected(q), Error);
}

TEST_CASE("rational inertia handles a zero diagonal exactly") {
  // Hyperbolic plane: signature (1, 1, 0).
  const Inertia sig = rational_inertia({{Rational(0), Rational(1)}, {Rational(1), Rational(0)}});
  CHECK(sig.positive == 1);
  CHECK(sig.negative == 1);
  CHECK(sig.zero == 0);
}

TEST_CASE("opposite quiver") {
  const Quiver k3 = qt::kronecker(3);
  const Quiver op = k3.opposite();
  CHECK(op.arrow_count(op.index_of("2"), op.index_of("1")) == 3);
  CHECK(op.opposite().to_json() == k3.to_json());

  Rng rng(77);
  for (int iter = 0; iter < 40; ++iter) {
    const Quiver q = qt::random_acyclic_quiver(rng);
    const Quiver qop = q.opposite();
    const IVec d = qt::random_vector(rng, q.size(), -4, 4);
    const IVec e = qt::random_vector(rng, q.size(), -4, 4);
    // Indices may be permuted by the canonical order; map through vertex ids.
    IVec dop(q.size()), eop(q.size());
    for (int i = 0; i < q.size(); ++i) {
      dop[qop.index_of(q.vertex_ids()[i])] = d[i];
      eop[qop.index_of(q.vertex_ids()[i])] = e[i];
    }
    CHECK(euler_form(qop, dop, eop) == euler_form(q, e, d));
    CHECK(sym_form(qop, dop, eop) == sym_form(q, d, e));
  }
}

TEST_CASE("opposite preserves the classification") {
  for (long long m : {2, 3, 4}) {
    const Quiver q = qt::kronecker(m);
    CHECK(classify_connected(q.opposite()) == classify_connected(q));
  }
  CHECK(classify_connected(qt::wild3_quiver().opposite()) == QuiverClass::Wild);
  CHECK(classify_connected(qt::d4_quiver().opposite()) == QuiverClass::Dynkin);
}
