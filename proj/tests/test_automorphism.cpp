#include <algorithm>
#include <numeric>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "groupoidal/automorphism.hpp"
#include "groupoidal/errors.hpp"

using namespace groupoidal;
using fixtures::arrow;

namespace {

struct Example {
  AtiyahGroupoid at{three_point_example()};
  const PrincipaloidBundle& P = at.bundle();
  const FiniteGroupoid& G = P.fibre();
  int a = 0, b = 1, c = 2;
  Arrow e0 = arrow(G, "(e,0)"), r0 = arrow(G, "(r,0)");
  Bisection beta_r{{arrow(G, "(r,0)"), arrow(G, "(r,1)")}};
  AutomorphismData swap = constant_gauge(P, beta_r);
};

// Vertical equivariant bijections counted fibre by fibre over all permutations.
std::size_t brute_force_gauge_count(const PrincipaloidBundle& P) {
  std::size_t total = 1;
  for (int s = 0; s < P.base().size(); ++s) {
    std::vector<BundlePoint> fibre;
    for (const auto& p : P.points())
      if (p.sigma == s) fibre.push_back(p);
    std::vector<int> perm(fibre.size());
    std::iota(perm.begin(), perm.end(), 0);
    auto slot = [&](const BundlePoint& q) {
      return static_cast<int>(std::find(fibre.begin(), fibre.end(), q) - fibre.begin());
    };
    std::size_t count = 0;
    do {
      bool ok = true;
      for (std::size_t k = 0; k < fibre.size() && ok; ++k) {
        if (P.moment(fibre[perm[k]]) != P.moment(fibre[k])) {
          ok = false;
          break;
        }
        for (Arrow h : P.fibre().arrows_to(P.moment(fibre[k]))) {
          int lhs = perm[slot(P.right_action(fibre[k], h))];
          if (fibre[lhs] != P.right_action(fibre[perm[k]], h)) {
            ok = false;
            break;
          }
        }
      }
      if (ok) ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    total *= count;
  }
  return total;
}

}  // namespace

TEST_CASE("validation of local data") {
  Example x;
  CHECK(validate_automorphism(x.P, x.swap).ok());
  CHECK(validate_automorphism(x.P, identity_automorphism(x.P)).ok());

  auto broken = x.swap;
  broken.gamma[{1, 1, x.b}] = identity_bisection(x.G);
  auto r = validate_automorphism(x.P, broken);
  REQUIRE_FALSE(r.ok());
  CHECK(r.failures("gluing") == 1);
  CHECK(r.violations().front().witness.back() == x.b);

  auto missing = x.swap;
  missing.gamma.erase({0, 0, x.a});
  CHECK(validate_automorphism(x.P, missing).failures("coverage") == 1);

  auto bad_f = x.swap;
  bad_f.f = {0, 0, 2};
  CHECK_THROWS_AS(validate_automorphism(x.P, bad_f), StructuralError);
  auto outside = x.swap;
  outside.gamma[{1, 1, x.a}] = x.beta_r;
  CHECK_THROWS_AS(validate_automorphism(x.P, outside), StructuralError);
}

TEST_CASE("apply, compose and invert") {
  Example x;
  CHECK(apply_automorphism(x.P, x.swap, x.P.point(x.b, 0, x.e0)) == x.P.point(x.b, 0, x.r0));
  auto id = identity_automorphism(x.P);
  for (const auto& p : x.P.points()) CHECK(apply_automorphism(x.P, id, p) == p);
  CHECK(extensionally_equal(x.P, compose_automorphisms(x.P, x.swap, x.swap), id));
  CHECK(extensionally_equal(x.P, compose_automorphisms(x.P, x.swap, id), x.swap));
  CHECK(extensionally_equal(x.P, invert_automorphism(x.P, x.swap), x.swap));
  // Data declared in chart 1 at b presents the same map.
  auto alt = complete_automorphism(x.P, x.swap);
  CHECK(extensionally_equal(x.P, alt, x.swap));
  CHECK(alt.gamma.size() == 6);
}

TEST_CASE("induced maps") {
  Example x;
  for (const auto& f : x.P.shadow_points()) {
    auto g = shadow_automorphism(x.P, x.swap, f);
    CHECK(g.sigma == f.sigma);
    CHECK(g.m == 1 - f.m);
    CHECK(shadow_automorphism(x.P, identity_automorphism(x.P), f) == f);
  }
  auto shifted = x.swap;
  shifted.f = shifted.f_inv = {1, 0, 2};
  CHECK_THROWS_AS(adjoint_automorphism(x.at, shifted, x.at.adjoint_elements().front()), DomainError);
}

TEST_CASE("bisection correspondence") {
  Example x;
  auto unit = automorphism_to_bisection(x.at, identity_automorphism(x.P));
  for (const auto& f : x.P.shadow_points()) CHECK(unit(x.P.index(f)) == x.at.index(x.at.unit(f)));
  auto b = automorphism_to_bisection(x.at, x.swap);
  for (const auto& f : x.P.shadow_points())
    CHECK(x.at.target(x.at.element_at(b(x.P.index(f)))) == shadow_automorphism(x.P, x.swap, f));
  auto report = verify_automorphism(x.at, x.swap);
  for (const auto& v : report.violations()) MESSAGE(v.check << ": " << v.detail);
  CHECK(report.ok());

  // A non-projectable bisection of At(P).
  auto all = enumerate_bisections(x.at.groupoid(), 1'000'000).elements();
  auto it = std::find_if(all.begin(), all.end(),
                         [&](const Bisection& s) { return !projectable_base_map(x.at, s); });
  REQUIRE(it != all.end());
  CHECK_THROWS_AS(bisection_to_automorphism(x.at, *it), DomainError);
}

TEST_CASE("gauge group of the three point example") {
  Example x;
  auto gauge = enumerate_gauge_group(x.P, 1'000'000);
  CHECK(gauge.size() == 8);
  CHECK(brute_force_gauge_count(x.P) == 8);
  auto pb = enumerate_projectable_bisections(x.at, 1'000'000);
  CHECK(pb.vertical.size() == gauge.size());
  std::set<Bisection> images, vertical(pb.vertical.begin(), pb.vertical.end());
  for (const auto& d : gauge) {
    auto r = verify_automorphism(x.at, d);
    for (const auto& v : r.violations()) MESSAGE(v.check << ": " << v.detail);
    CHECK(r.ok());
    images.insert(automorphism_to_bisection(x.at, d));
  }
  CHECK(images == vertical);
  auto group = verify_automorphism_group(x.at, gauge);
  for (const auto& v : group.violations()) MESSAGE(v.check << ": " << v.detail);
  CHECK(group.ok());
  CHECK_THROWS_AS(enumerate_gauge_group(x.P, 7), EnumerationBoundError);
}

TEST_CASE("all automorphisms against projectable bisections") {
  Example x;
  auto auts = enumerate_automorphisms(x.P, 1'000'000);
  auto pb = enumerate_projectable_bisections(x.at, 1'000'000);
  CHECK(auts.size() == 48);
  std::set<Bisection> images, projectable(pb.all.begin(), pb.all.end());
  for (const auto& d : auts) {
    CHECK(verify_automorphism(x.at, d).ok());
    images.insert(automorphism_to_bisection(x.at, d));
  }
  CHECK(images == projectable);
  CHECK(verify_automorphism_group(x.at, auts).ok());
}

TEST_CASE("single chart group bundle") {
  auto G = make_cyclic_group(3);
  PrincipaloidBundle P(CechBase({"p"}, {{0}}), Cocycle{}, G);
  auto gauge = enumerate_gauge_group(P, 1000);
  CHECK(gauge.size() == 3);
  CHECK(brute_force_gauge_count(P) == 3);
  AtiyahGroupoid at(P);
  CHECK(verify_automorphism_group(at, gauge).ok());
}
