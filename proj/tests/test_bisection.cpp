#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "fixtures.hpp"
#include "groupoidal/bisection.hpp"
#include "groupoidal/errors.hpp"

using namespace groupoidal;
using fixtures::arrow;

namespace {

Bisection beta_r(const FiniteGroupoid& g) {
  return Bisection{{arrow(g, "(r,0)"), arrow(g, "(r,1)")}};
}

// The bisection m -> (f(m), m) of Pair(n).
Bisection pair_bisection(int n, const std::vector<int>& f) {
  Bisection b;
  for (int m = 0; m < n; ++m) b.assign.push_back(f[m] * n + m);
  return b;
}

std::vector<std::vector<int>> permutations(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace

TEST_CASE("validate_bisection on z2 swap") {
  auto g = fixtures::z2_swap();
  CHECK(validate_bisection(g, beta_r(g)));
  CHECK(shadow(g, beta_r(g)) == ObjectMap{1, 0});
  CHECK_FALSE(validate_bisection(g, Bisection{{arrow(g, "(e,0)"), arrow(g, "(r,1)")}}));
  CHECK(validate_bisection(g, identity_bisection(g)));
  CHECK(shadow(g, identity_bisection(g)) == ObjectMap{0, 1});
}

TEST_CASE("product and inverse on z2 swap") {
  auto g = fixtures::z2_swap();
  auto b = beta_r(g);
  CHECK(bisection_product(g, b, b) == identity_bisection(g));
  CHECK(bisection_product(g, b, identity_bisection(g)) == b);
  CHECK(bisection_inverse(g, b) == b);
  CHECK(bisection_inverse(g, identity_bisection(g)) == identity_bisection(g));
}

TEST_CASE("left, right and conjugation actions on z2 swap") {
  auto g = fixtures::z2_swap();
  auto b = beta_r(g);
  Arrow e0 = arrow(g, "(e,0)");
  CHECK(left_mult(g, b, e0) == arrow(g, "(r,0)"));
  CHECK(right_mult(g, e0, b) == arrow(g, "(r,1)"));
  CHECK(conjugate(g, b, e0) == arrow(g, "(e,1)"));
  CHECK(conjugate(g, b, g.unit(0)) == g.unit(shadow(g, b)[0]));
}

TEST_CASE("pair groupoid bisections are the permutations") {
  const int n = 3;
  auto g = make_pair_groupoid(n);
  auto B = enumerate_bisections(g, 1000);
  CHECK(B.size() == 6);
  auto perms = permutations(n);
  for (const auto& f : perms) {
    auto bf = pair_bisection(n, f);
    REQUIRE(B.index_of(bf).has_value());
    CHECK(shadow(g, bf) == f);
    std::vector<int> finv(n);
    for (int m = 0; m < n; ++m) finv[f[m]] = m;
    CHECK(bisection_inverse(g, bf) == pair_bisection(n, finv));
    for (const auto& h : perms) {
      std::vector<int> fh(n);
      for (int m = 0; m < n; ++m) fh[m] = f[h[m]];
      CHECK(bisection_product(g, bf, pair_bisection(n, h)) == pair_bisection(n, fh));
    }
  }
}

TEST_CASE("enumeration counts") {
  CHECK(enumerate_bisections(fixtures::z2_swap(), 100).size() == 2);
  CHECK(enumerate_bisections(make_pair_groupoid(4), 1000).size() == 24);
  CHECK(enumerate_bisections(make_cyclic_group(5), 100).size() == 5);
  CHECK(enumerate_bisections(make_symmetric_group(3), 100).size() == 6);
  CHECK_THROWS_AS(enumerate_bisections(make_pair_groupoid(4), 1), EnumerationBoundError);
}

TEST_CASE("enumeration is in lexicographic order and closed") {
  auto g = make_product_groupoid(make_pair_groupoid(2), fixtures::z2_swap());
  auto B = enumerate_bisections(g, 100000);
  CHECK(std::is_sorted(B.elements().begin(), B.elements().end()));
  for (std::size_t i = 0; i < B.size(); ++i) {
    CHECK(B.product(i, B.inverse(i)) == B.identity_index());
    for (std::size_t j = 0; j < B.size(); ++j)
      CHECK(validate_bisection(g, B[B.product(i, j)]));
  }
}

TEST_CASE("bisection_through") {
  auto g = fixtures::z2_swap();
  Arrow r0 = arrow(g, "(r,0)");
  auto b = bisection_through(g, r0);
  REQUIRE(b.has_value());
  CHECK(*b == beta_r(g));
  std::vector<Bisection> only_id{identity_bisection(g)};
  CHECK(bisection_through(g, g.unit(1), &only_id) == identity_bisection(g));
  CHECK_FALSE(bisection_through(g, r0, &only_id).has_value());
}

TEST_CASE("id-reducibility") {
  auto g = fixtures::z2_swap();
  auto r = is_id_reducible(g);
  CHECK(r.reducible);
  CHECK(r.witness.size() == 4);
  for (Arrow a = 0; a < g.num_arrows(); ++a) {
    CHECK(validate_bisection(g, r.witness[a]));
    CHECK(r.witness[a](g.source(a)) == a);
  }
  CHECK(is_id_reducible(make_pair_groupoid(3)).reducible);
  std::vector<Bisection> only_id{identity_bisection(g)};
  auto rr = is_id_reducible(g, &only_id);
  CHECK_FALSE(rr.reducible);
  CHECK(rr.counterexample == arrow(g, "(r,0)"));
}

TEST_CASE("every shipped groupoid is id-reducible with exhaustive witnesses") {
  for (const auto& g :
       {make_pair_groupoid(4), fixtures::z2_swap(), make_symmetric_group(3),
        make_fibred_pair_groupoid({0, 1, 0, 2, 1, 0}),
        make_product_groupoid(make_pair_groupoid(3), fixtures::z2_swap())}) {
    auto r = is_id_reducible(g);
    REQUIRE(r.reducible);
    for (Arrow a = 0; a < g.num_arrows(); ++a) {
      CHECK(validate_bisection(g, r.witness[a]));
      CHECK(r.witness[a](g.source(a)) == a);
    }
  }
}

TEST_CASE("matching succeeds where greedy choice fails") {
  // Pair(3): through (1,0), object 1 greedily picks target 0 first; object 2 then
  // needs target 0 or 2 and must be rerouted by an augmenting path.
  auto g = make_pair_groupoid(3);
  auto b = bisection_through(g, arrow(g, "(1,0)"));
  REQUIRE(b.has_value());
  CHECK(validate_bisection(g, *b));
}

TEST_CASE("structure identities hold exhaustively") {
  for (const auto& g : {fixtures::z2_swap(), make_pair_groupoid(3), make_symmetric_group(3),
                        make_fibred_pair_groupoid({0, 0, 1, 1, 1})}) {
    auto r = check_structure_identities(g, 100000);
    CHECK(r.ok());
    for (const auto& [name, count] : r.evaluated()) CHECK_MESSAGE(count > 0, name);
  }
}

TEST_CASE("corrupted multiplication breaks the composition identity") {
  auto g = fixtures::z2_swap();
  Arrow e1 = arrow(g, "(e,1)"), r0 = arrow(g, "(r,0)"), r1 = arrow(g, "(r,1)");
  auto bad = fixtures::with_tables(g, [&](GroupoidTables& t) {
    for (auto& row : t.mul)
      if (row[0] == r1 && row[1] == e1) row[2] = r0;
  });
  auto r = check_structure_identities(bad, 1000);
  CHECK_FALSE(r.ok());
  CHECK(r.failures("left-mult-composition") > 0);
  bool witnessed = false;
  for (const auto& v : r.violations())
    if (v.check == "left-mult-composition" && !v.witness.empty()) witnessed = true;
  CHECK(witnessed);
}

TEST_CASE("r-equivariant commutant equals left multiplications") {
  auto z = fixtures::z2_swap();
  auto rz = r_equivariant_commutant(z, 100000);
  CHECK(rz.r_equivariant.size() == 2);
  CHECK(rz.equivariant_equals_left_mults);
  auto p = make_pair_groupoid(3);
  auto rp = r_equivariant_commutant(p, 100000);
  CHECK(rp.r_equivariant.size() == 6);
  CHECK(rp.equivariant_equals_left_mults);
}

TEST_CASE("commutant of a group is its left translations") {
  auto g = make_cyclic_group(2);
  auto r = r_equivariant_commutant(g, 1000);
  REQUIRE(r.r_equivariant.size() == 2);
  CHECK(r.equivariant_equals_left_mults);
  // Left translation by r swaps e and r.
  CHECK(r.r_equivariant[1] == ArrowMap{1, 0});
}

TEST_CASE("commutant oracle: brute force over all bijections of Pair(2)") {
  auto g = make_pair_groupoid(2);
  std::vector<int> phi(4);
  std::iota(phi.begin(), phi.end(), 0);
  auto B = enumerate_bisections(g, 100);
  std::vector<ArrowMap> eq, rc;
  do {
    bool equivariant = true, commutes = true;
    for (Arrow a = 0; a < 4; ++a)
      for (Arrow h : g.arrows_to(g.source(a))) {
        auto rhs = g.find_product(phi[a], h);
        if (!rhs || *rhs != phi[g.compose(a, h)]) equivariant = false;
      }
    for (const auto& b : B.elements())
      for (Arrow a = 0; a < 4; ++a)
        if (phi[right_mult(g, a, b)] != right_mult(g, phi[a], b)) commutes = false;
    if (equivariant) eq.push_back(phi);
    if (commutes) rc.push_back(phi);
  } while (std::next_permutation(phi.begin(), phi.end()));
  auto r = r_equivariant_commutant(g, 1000);
  CHECK(r.r_equivariant == eq);
  CHECK(r.r_bisection_commutant == rc);
  MESSAGE("R-commutant of Pair(2) has " << rc.size() << " elements, L has "
                                        << r.left_mults.size());
}

TEST_CASE("commutant search respects the node cap") {
  CHECK_THROWS_AS(r_equivariant_commutant(make_pair_groupoid(3), 2), EnumerationBoundError);
}
