#include <catch2/catch_amalgamated.hpp>

#include "lpa/element.hpp"
#include "lpa/fixtures.hpp"
#include "lpa/testing/generators.hpp"

using namespace lpa;
using QF = RationalField;
using Elt = LpaElement<QF>;

static Graph g = fixtures::example_graph();
static QF f;

TEST_CASE("expression parser builds elements", "[element][parser]") {
  auto x = element_parse(&g, f, "d1 d2");
  REQUIRE(x.terms().size() == 1);
  REQUIRE(element_str(x) == "d1 d2");

  auto y = element_parse(&g, f, "2 d1 d1* - s1");
  REQUIRE(element_str(y) == "-s1 + 2 d1 d1*");

  auto z = element_parse(&g, f, "1/2 (d1 + 2 b*) d2");
  // b* d2 has delta-zero CK1 product at s2? b and d2 share source s2 but
  // differ, so b* d2 = 0; only d1 d2 survives.
  REQUIRE(element_str(z) == "1/2 d1 d2");

  REQUIRE(element_parse(&g, f, "d1 d1* d1") == element_parse(&g, f, "d1"));
}

TEST_CASE("glued identifiers are segmented against the graph", "[element][parser]") {
  REQUIRE(element_parse(&g, f, "d1d2") == element_parse(&g, f, "d1 d2"));
  REQUIRE(element_parse(&g, f, "g'g'*") == element_parse(&g, f, "g' g'*"));
  // CK2 at t1 (out-edges g1, g', h)
  auto x = element_parse(&g, f, "t1 - g'g'* - g1 g1* - h h*");
  REQUIRE(normal_form(x).is_zero());
}

TEST_CASE("parser distinguishes zero products from non-composable ones", "[element][parser]") {
  // d2 after d2 does not compose (r(d2) = s3, s(d2) = s2)
  REQUIRE_THROWS_MATCHES(element_parse(&g, f, "d2 d2"), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                           return e.kind() == ErrKind::NotComposable;
                         }));
  // b* d2: same source, different edges -> legitimately zero
  REQUIRE(element_parse(&g, f, "b* d2").is_zero());
  REQUIRE_THROWS_MATCHES(element_parse(&g, f, "d1 w"), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                           return e.kind() == ErrKind::NotComposable;
                         }));
  REQUIRE_THROWS_MATCHES(element_parse(&g, f, "frobnicate"), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                           return e.kind() == ErrKind::UnknownId;
                         }));
  REQUIRE_THROWS_AS(element_parse(&g, f, "d1 +"), Error);
}

TEST_CASE("CK1 products", "[element]") {
  // e* e = r(e)
  auto p = element_parse(&g, f, "d1* d1");
  REQUIRE(p == Elt::vertex(&g, f, g.vertex("s2")));
  // e* f = 0 for distinct edges with the same source
  REQUIRE(element_parse(&g, f, "d1* d1").is_zero() == false);
  REQUIRE(multiply(element_parse(&g, f, "b*"), element_parse(&g, f, "d2")).is_zero());
  // vertices are idempotents
  auto v = Elt::vertex(&g, f, g.vertex("s1"));
  REQUIRE(multiply(v, v) == v);
  // orthogonal vertices
  REQUIRE(multiply(v, Elt::vertex(&g, f, g.vertex("s2"))).is_zero());
  // v e = e when v = s(e)
  REQUIRE(multiply(v, element_parse(&g, f, "d1")) == element_parse(&g, f, "d1"));
}

TEST_CASE("normal form rewrites special-edge junctions", "[element][normal-form]") {
  // at s2 the special edge is d2 (declared before b):
  // d2 d2* -> s2 - b b*
  auto x = element_parse(&g, f, "d2 d2*");
  auto nf = normal_form(x);
  REQUIRE(nf == element_parse(&g, f, "s2 - b b*"));
  // already-normal monomials are fixed
  auto y = element_parse(&g, f, "b b*");
  REQUIRE(normal_form(y) == y);
  // CK2 at s2: d2 d2* + b b* = s2
  auto ck2 = element_parse(&g, f, "d2 d2* + b b*");
  REQUIRE(normal_form(ck2) == Elt::vertex(&g, f, g.vertex("s2")));
  // idempotent
  REQUIRE(normal_form(nf) == nf);
  // nested: d1 d2 d2* d1* reduces in two steps
  auto deep = element_parse(&g, f, "d1 d2 d2* d1*");
  auto deep_nf = normal_form(deep);
  REQUIRE(deep_nf == normal_form(element_parse(&g, f, "d1 d1* - d1 b b* d1*")));
  REQUIRE(normal_form(deep_nf) == deep_nf);
}

TEST_CASE("normal form on a sink-free single loop is trivial", "[element][normal-form]") {
  Graph toe = fixtures::toeplitz_graph();
  // at v the special edge is e: e e* -> v - f f*
  auto x = element_parse(&toe, f, "e e*");
  REQUIRE(normal_form(x) == element_parse(&toe, f, "v - f f*"));
}

TEST_CASE("gauge automorphism scales by first-edge counts", "[element][gauge]") {
  Cycle d = fixtures::cycle_d(g);
  auto x = element_parse(&g, f, "d1 d2");
  auto y = gauge_apply(x, d, f.from_int(3));
  REQUIRE(y == x.scaled(f.from_int(3)));
  auto ghost = element_parse(&g, f, "d2* d1*");
  REQUIRE(gauge_apply(ghost, d, f.from_int(3)) == ghost.scaled(f.parse("1/3")));
  // edges not equal to the first edge are untouched
  auto z = element_parse(&g, f, "d2 d3");
  REQUIRE(gauge_apply(z, d, f.from_int(3)) == z);
  REQUIRE_THROWS_MATCHES(gauge_apply(x, d, f.zero()), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                           return e.kind() == ErrKind::NonInvertibleScale;
                         }));
}

TEST_CASE("polynomial evaluation at a cycle", "[element]") {
  Cycle l = fixtures::cycle_l(g);
  auto p = fixtures::poly_q();
  auto x = eval_poly_at_cycle(&g, f, p, l);
  REQUIRE(x == element_parse(&g, f, "l l l - 3 l - z"));
}

TEST_CASE("scalar terms on the same monomial collect", "[element][parser]") {
  auto x = element_parse(&g, f, "1/2 s1 + -1 s1");
  REQUIRE(element_str(x) == "-1/2 s1");
  REQUIRE(element_parse(&g, f, "s1 - s1").is_zero());
}

TEST_CASE("polynomial evaluation examples", "[element]") {
  Cycle a = fixtures::cycle_a(g);
  Cycle d = fixtures::cycle_d(g);
  // constant -1 evaluates to -s(e)
  REQUIRE(eval_poly_at_cycle(&g, f, poly_parse(f, "-1"), a) ==
          element_parse(&g, f, "-w"));
  // x - 1 at the loop a is a - w
  REQUIRE(eval_poly_at_cycle(&g, f, poly_parse(f, "x - 1"), a) ==
          element_parse(&g, f, "a - w"));
  // 1/2 x^2 - 1 at the 4-cycle d
  REQUIRE(eval_poly_at_cycle(&g, f, fixtures::poly_p(), d) ==
          element_parse(&g, f, "1/2 d1 d2 d3 d4 d1 d2 d3 d4 - s1"));
}

TEST_CASE("evaluation at a cycle is a ring homomorphism", "[element][property]") {
  Cycle d = fixtures::cycle_d(g);
  auto p = fixtures::poly_p();
  auto q = poly_parse(f, "x^2 + 3x - 2");
  auto lhs = eval_poly_at_cycle(&g, f, poly_mul(f, p, q), d);
  auto rhs = normal_form(multiply(eval_poly_at_cycle(&g, f, p, d),
                                  eval_poly_at_cycle(&g, f, q, d)));
  REQUIRE(normal_form(lhs) == rhs);
  auto sum = eval_poly_at_cycle(&g, f, poly_add(f, p, q), d);
  REQUIRE(sum == eval_poly_at_cycle(&g, f, p, d) + eval_poly_at_cycle(&g, f, q, d));
}

TEST_CASE("gauge automorphism is multiplicative and invertible", "[element][gauge][property]") {
  Cycle d = fixtures::cycle_d(g);
  auto u = f.from_int(3);
  testing::Rng rng(271828);
  for (int i = 0; i < 200; ++i) {
    auto x = testing::random_element(rng, g, f);
    auto y = testing::random_element(rng, g, f);
    // sigma(x y) = sigma(x) sigma(y)
    REQUIRE(gauge_apply(multiply(x, y), d, u) ==
            multiply(gauge_apply(x, d, u), gauge_apply(y, d, u)));
    // sigma_{e,u} o sigma_{e,u^-1} = id
    REQUIRE(gauge_apply(gauge_apply(x, d, u), d, f.inv(u)) == x);
    // normal form commutes with the gauge automorphism
    REQUIRE(normal_form(gauge_apply(x, d, u)) == gauge_apply(normal_form(x), d, u));
  }
}

TEST_CASE("cross-graph and cross-field operations are rejected", "[element][errors]") {
  Graph toe = fixtures::toeplitz_graph();
  auto x = element_parse(&g, f, "d1");
  auto y = element_parse(&toe, f, "e");
  REQUIRE_THROWS_MATCHES(x + y, Error, Catch::Matchers::Predicate<Error>([](const Error& e) {
                           return e.kind() == ErrKind::GraphMismatch;
                         }));
  REQUIRE_THROWS_MATCHES(Elt::monomial(&g, f, make_path(g, {g.edge_index("d1")}),
                                       make_path(g, {g.edge_index("m")}), f.one()),
                         Error, Catch::Matchers::Predicate<Error>([](const Error& e) {
                           return e.kind() == ErrKind::RangeMismatch;
                         }));
}
