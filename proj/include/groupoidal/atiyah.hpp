#ifndef GROUPOIDAL_ATIYAH_HPP
#define GROUPOIDAL_ATIYAH_HPP

#include <compare>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "groupoidal/bisection.hpp"
#include "groupoidal/bundle.hpp"
#include "groupoidal/report.hpp"

namespace groupoidal {

// Class of (sigma1, g, sigma2, chart1, chart2) with least charts.
struct AtiyahElement {
  int sigma1 = 0;
  Arrow g = 0;
  int sigma2 = 0;
  int chart1 = 0;
  int chart2 = 0;
  auto operator<=>(const AtiyahElement&) const = default;
};

// Class of (sigma, chart, g) glued by conjugation.
struct AdjointElement {
  int sigma = 0;
  int chart = 0;
  Arrow g = 0;
  auto operator<=>(const AdjointElement&) const = default;
};

class AtiyahGroupoid {
 public:
  explicit AtiyahGroupoid(PrincipaloidBundle bundle);

  const PrincipaloidBundle& bundle() const { return bundle_; }
  // The groupoid over F: objects are shadow-point indices, arrows element indices.
  const FiniteGroupoid& groupoid() const { return groupoid_; }

  // (s1, g, s2, k, l) -> (s1, beta_ik(s1) |> g <| beta_lj(s2), s2, i, j)
  Arrow rechart(int sigma1, Arrow g, int sigma2, int k, int l, int i, int j) const;
  AtiyahElement element(int sigma1, Arrow g, int sigma2, int chart1, int chart2) const;
  Arrow local_arrow(const AtiyahElement& e, int chart1, int chart2) const;

  int num_elements() const;
  int index(const AtiyahElement& e) const;
  AtiyahElement element_at(int index) const;
  std::vector<AtiyahElement> elements() const;

  ShadowPoint source(const AtiyahElement& e) const;
  ShadowPoint target(const AtiyahElement& e) const;
  AtiyahElement unit(const ShadowPoint& f) const;
  AtiyahElement invert(const AtiyahElement& e) const;
  // Throws CompositionError unless source(e1) = target(e2).
  AtiyahElement multiply(const AtiyahElement& e1, const AtiyahElement& e2) const;
  // [(s1,g,s2,i,j)] . [(s2,h,s3,k,l)] = [(s1, g.(beta_jk(s2) |> h), s3, i, l)]
  AtiyahElement multiply_local(int s1, Arrow g, int s2, int i, int j, Arrow h, int s3, int k,
                               int l) const;
  std::pair<int, int> projection(const AtiyahElement& e) const { return {e.sigma1, e.sigma2}; }

  // lambda_P, throws DomainError unless source(e) = D(p).
  BundlePoint act_on_bundle(const AtiyahElement& e, const BundlePoint& p) const;
  // lambda_F, throws DomainError unless source(e) = f.
  ShadowPoint act_on_shadow(const AtiyahElement& e, const ShadowPoint& f) const;
  // psi_P, throws DomainError unless the moments agree.
  AtiyahElement division(const BundlePoint& p1, const BundlePoint& p2) const;

  // Ad(P)
  AdjointElement adjoint_element(int sigma, int chart, Arrow g) const;
  int num_adjoint_elements() const { return bundle_.num_points(); }
  std::vector<AdjointElement> adjoint_elements() const;
  AtiyahElement embed(const AdjointElement& a) const;
  // Inverse of embed on the kernel of the projection; throws DomainError off it.
  AdjointElement restrict_to_adjoint(const AtiyahElement& e) const;

  std::string describe(const AtiyahElement& e) const;

 private:
  PrincipaloidBundle bundle_;
  FiniteGroupoid groupoid_;
};

// Groupoid axioms over F, chart independence of the structure maps, exactness of
// Ad(P) -> At(P) -> Pair(Sigma), fibre cardinalities.
ValidationReport verify_atiyah_sequence(const AtiyahGroupoid& at);
// Both actions, their commutation and moments, principality via both division maps,
// and the orbit count of P under At(P).
ValidationReport verify_trident(const AtiyahGroupoid& at);
int count_atiyah_orbits(const AtiyahGroupoid& at);

struct ProjectableBisections {
  std::vector<Bisection> all;          // pi-projectable bisections of At(P)
  std::vector<std::vector<int>> base;  // the base bijection f of each
  std::vector<Bisection> vertical;     // those covering Id(Sigma)
};

// Base bijection f with pi(b(x)) = (f(sigma(x)), sigma(x)), if b is pi-projectable.
std::optional<std::vector<int>> projectable_base_map(const AtiyahGroupoid& at, const Bisection& b);
ProjectableBisections enumerate_projectable_bisections(const AtiyahGroupoid& at, std::size_t cap);

}  // namespace groupoidal

#endif
