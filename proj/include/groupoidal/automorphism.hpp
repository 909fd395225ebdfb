#ifndef GROUPOIDAL_AUTOMORPHISM_HPP
#define GROUPOIDAL_AUTOMORPHISM_HPP

#include <map>
#include <tuple>
#include <vector>

#include "groupoidal/atiyah.hpp"
#include "groupoidal/bisection.hpp"
#include "groupoidal/bundle.hpp"
#include "groupoidal/report.hpp"

namespace groupoidal {

// Key (j, i, sigma): chart i around sigma, chart j around f(sigma).
using GammaKey = std::tuple<int, int, int>;

struct AutomorphismData {
  std::vector<int> f, f_inv;
  std::map<GammaKey, Bisection> gamma;

  bool vertical() const;
};

// f = id and gamma_(i,i)(sigma) = b wherever declared.
AutomorphismData constant_gauge(const PrincipaloidBundle& bundle, const Bisection& b);
AutomorphismData identity_automorphism(const PrincipaloidBundle& bundle);

// Checks f against f_inv (StructuralError), bisection validity and domains of
// the entries (StructuralError), then "coverage" and "gluing" with witness
// (i,j,k,l,sigma) for each pair of declared entries over one sigma.
ValidationReport validate_automorphism(const PrincipaloidBundle& bundle, const AutomorphismData& d);

// gamma_(j,i)(sigma) transported from the first declared entry over sigma.
Bisection gamma_at(const PrincipaloidBundle& bundle, const AutomorphismData& d, int j, int i,
                   int sigma);
// Declares every (j,i,sigma) in the refined cover.
AutomorphismData complete_automorphism(const PrincipaloidBundle& bundle, const AutomorphismData& d);

BundlePoint apply_automorphism(const PrincipaloidBundle& bundle, const AutomorphismData& d,
                               const BundlePoint& p);
// Image index of every point index.
std::vector<int> apply_table(const PrincipaloidBundle& bundle, const AutomorphismData& d);
bool extensionally_equal(const PrincipaloidBundle& bundle, const AutomorphismData& a,
                         const AutomorphismData& b);

AutomorphismData compose_automorphisms(const PrincipaloidBundle& bundle, const AutomorphismData& d2,
                                       const AutomorphismData& d1);
AutomorphismData invert_automorphism(const PrincipaloidBundle& bundle, const AutomorphismData& d);

ShadowPoint shadow_automorphism(const PrincipaloidBundle& bundle, const AutomorphismData& d,
                                const ShadowPoint& x);
// Throws DomainError for non-vertical data.
AdjointElement adjoint_automorphism(const AtiyahGroupoid& at, const AutomorphismData& d,
                                    const AdjointElement& a);

Bisection automorphism_to_bisection(const AtiyahGroupoid& at, const AutomorphismData& d);
// Throws DomainError when b is not projectable.
AutomorphismData bisection_to_automorphism(const AtiyahGroupoid& at, const Bisection& b);

// Vertical data up to extensional equality; EnumerationBoundError when
// |B|^|Sigma| exceeds cap.
std::vector<AutomorphismData> enumerate_gauge_group(const PrincipaloidBundle& bundle,
                                                    std::size_t cap);
// All base bijections times all gauge choices, deduplicated extensionally.
std::vector<AutomorphismData> enumerate_automorphisms(const PrincipaloidBundle& bundle,
                                                      std::size_t cap);

// Bijectivity, covering f, equivariance, duck intertwining, the bisection
// shadows, the geometric implementation and the round trip for one datum;
// the adjoint identities when it is vertical.
ValidationReport verify_automorphism(const AtiyahGroupoid& at, const AutomorphismData& d);
// Closure and homomorphism properties of the induced maps and of the
// bisection correspondence over a list closed under composition.
ValidationReport verify_automorphism_group(const AtiyahGroupoid& at,
                                           const std::vector<AutomorphismData>& group);

}  // namespace groupoidal

#endif
