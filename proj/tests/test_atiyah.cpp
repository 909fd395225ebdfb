#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "groupoidal/atiyah.hpp"
#include "groupoidal/errors.hpp"

using namespace groupoidal;
using fixtures::arrow;

namespace {

struct Example {
  AtiyahGroupoid at{three_point_example()};
  const PrincipaloidBundle& P = at.bundle();
  const FiniteGroupoid& G = P.fibre();
  int a = 0, b = 1, c = 2;
  Arrow e0 = arrow(G, "(e,0)"), e1 = arrow(G, "(e,1)"), r0 = arrow(G, "(r,0)"),
        r1 = arrow(G, "(r,1)");
};

}  // namespace

TEST_CASE("worked example structure maps") {
  Example x;
  auto e = x.at.element(x.a, x.r0, x.b, 0, 0);
  CHECK(x.at.source(e) == x.P.shadow_point(x.b, 0, 0));
  CHECK(x.at.target(e) == x.P.shadow_point(x.a, 0, 1));
  CHECK(x.at.invert(e) == x.at.element(x.b, x.r1, x.a, 0, 0));

  auto f = x.at.element(x.b, x.r1, x.c, 0, 1);
  CHECK(x.at.multiply(e, f) == x.at.element(x.a, x.e1, x.c, 0, 1));
  CHECK(x.at.describe(x.at.multiply(e, f)) == "[(a,(e,1),c,0,1)]");

  auto p = x.P.point(x.b, 0, x.e0);
  CHECK(x.at.act_on_bundle(e, p) == x.P.point(x.a, 0, x.r0));
  CHECK(x.at.division(x.P.point(x.a, 0, x.r0), p) == e);
  CHECK_THROWS_AS(x.at.multiply(f, e), CompositionError);
  CHECK_THROWS_AS(x.at.act_on_bundle(e, x.P.point(x.c, 1, x.e0)), DomainError);
}

TEST_CASE("chart change of representatives") {
  Example x;
  // b lies in both charts; beta_01(b) = beta_r swaps the representative.
  auto e = x.at.element(x.b, x.e0, x.b, 1, 1);
  CHECK(e.chart1 == 0);
  CHECK(e.g == x.e1);
  CHECK(x.at.local_arrow(e, 1, 1) == x.e0);
  CHECK(x.at.element(x.b, x.e0, x.b, 1, 0) == x.at.element(x.b, x.r0, x.b, 0, 0));
}

TEST_CASE("counts") {
  Example x;
  CHECK(x.at.num_elements() == 36);
  CHECK(x.at.groupoid().num_arrows() == 36);
  CHECK(x.at.groupoid().num_objects() == 6);
  CHECK(x.at.num_adjoint_elements() == 12);
  CHECK(count_atiyah_orbits(x.at) == 2);
  std::set<AtiyahElement> distinct;
  for (const auto& e : x.at.elements()) distinct.insert(e);
  CHECK(distinct.size() == 36);
}

TEST_CASE("atiyah sequence and trident") {
  Example x;
  auto seq = verify_atiyah_sequence(x.at);
  for (const auto& v : seq.violations()) MESSAGE(v.check << ": " << v.detail);
  CHECK(seq.ok());
  CHECK(seq.passed("exactness"));
  auto tri = verify_trident(x.at);
  for (const auto& v : tri.violations()) MESSAGE(v.check << ": " << v.detail);
  CHECK(tri.ok());
  for (const char* name : {"GlM1", "GlM2", "GlM3", "psi-inverts-lambda", "lambda-inverts-psi",
                           "actions-commute", "orbit-count"})
    CHECK(tri.passed(name));
}

TEST_CASE("adjoint embedding") {
  Example x;
  for (const auto& a : x.at.adjoint_elements()) {
    auto e = x.at.embed(a);
    CHECK(x.at.projection(e) == std::make_pair(a.sigma, a.sigma));
    CHECK(x.at.restrict_to_adjoint(e) == a);
  }
  // Conjugation gluing at b: (b, 1, (e,0)) is (b, 0, C_r(e,0)) = (b, 0, (e,1)).
  CHECK(x.at.adjoint_element(x.b, 1, x.e0) == AdjointElement{x.b, 0, x.e1});
  CHECK_THROWS_AS(x.at.restrict_to_adjoint(x.at.element(x.a, x.e0, x.b, 0, 0)), DomainError);
}

TEST_CASE("projectable bisections") {
  Example x;
  auto pb = enumerate_projectable_bisections(x.at, 1'000'000);
  CHECK(pb.all.size() == 48);
  CHECK(pb.vertical.size() == 8);
  std::set<std::vector<int>> bases(pb.base.begin(), pb.base.end());
  CHECK(bases.size() == 6);
  // Every bisection of At: the Pair groupoid on six objects has 6! of them.
  CHECK(enumerate_bisections(x.at.groupoid(), 1'000'000).size() == 720);
}
