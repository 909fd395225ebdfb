#include "groupoidal/automorphism.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "groupoidal/errors.hpp"
#include "groupoidal/parallel.hpp"

namespace groupoidal {

namespace {

const GammaKey* first_entry(const AutomorphismData& d, int sigma) {
  for (const auto& [key, b] : d.gamma)
    if (std::get<2>(key) == sigma) return &key;
  return nullptr;
}

Bisection triple(const FiniteGroupoid& G, const Bisection& a, const Bisection& b, const Bisection& c) {
  return bisection_product(G, bisection_product(G, a, b), c);
}

void check_bijection(const std::vector<int>& f, const std::vector<int>& f_inv, int n) {
  if (static_cast<int>(f.size()) != n || static_cast<int>(f_inv.size()) != n)
    throw StructuralError("base map has wrong length");
  for (int s = 0; s < n; ++s) {
    if (f[s] < 0 || f[s] >= n || f_inv[s] < 0 || f_inv[s] >= n)
      throw StructuralError("base map out of range");
    if (f_inv[f[s]] != s) throw StructuralError("f_inv is not the inverse of f");
  }
}

int canonical(const PrincipaloidBundle& P, int sigma) { return P.base().canonical_chart(sigma); }

AutomorphismData canonical_data(const PrincipaloidBundle& P, std::vector<int> f,
                                const std::vector<Bisection>& gamma) {
  AutomorphismData d;
  d.f_inv = invert_map(f);
  for (int s = 0; s < static_cast<int>(f.size()); ++s)
    d.gamma[{canonical(P, f[s]), canonical(P, s), s}] = gamma[s];
  d.f = std::move(f);
  return complete_automorphism(P, d);
}

std::vector<int> identity_map(int n) {
  std::vector<int> f(n);
  std::iota(f.begin(), f.end(), 0);
  return f;
}

std::vector<AutomorphismData> dedupe(const PrincipaloidBundle& P, std::vector<AutomorphismData> all) {
  std::vector<std::vector<int>> tables(all.size());
  parallel_for(all.size(), [&](std::size_t k) { tables[k] = apply_table(P, all[k]); });
  std::set<std::vector<int>> seen;
  std::vector<AutomorphismData> out;
  for (std::size_t k = 0; k < all.size(); ++k)
    if (seen.insert(tables[k]).second) out.push_back(std::move(all[k]));
  return out;
}

std::size_t checked_power(std::size_t base, int exponent, std::size_t factor, std::size_t cap) {
  std::size_t total = factor;
  if (total > cap) throw EnumerationBoundError("search space exceeds cap");
  for (int k = 0; k < exponent; ++k) {
    if (base != 0 && total > cap / base) throw EnumerationBoundError("search space exceeds cap");
    total *= base;
  }
  return total;
}

std::vector<AutomorphismData> enumerate_over(const PrincipaloidBundle& P,
                                             const std::vector<std::vector<int>>& base_maps,
                                             std::size_t cap) {
  const int S = P.base().size();
  auto B = enumerate_bisections(P.fibre(), cap).elements();
  const std::size_t per_map = checked_power(B.size(), S, 1, cap);
  checked_power(B.size(), S, base_maps.size(), cap);
  std::vector<AutomorphismData> all(per_map * base_maps.size());
  parallel_for(all.size(), [&](std::size_t k) {
    std::size_t code = k % per_map;
    std::vector<Bisection> gamma(S);
    for (int s = 0; s < S; ++s) {
      gamma[s] = B[code % B.size()];
      code /= B.size();
    }
    all[k] = canonical_data(P, base_maps[k / per_map], gamma);
  });
  return dedupe(P, std::move(all));
}

}  // namespace

bool AutomorphismData::vertical() const {
  for (int s = 0; s < static_cast<int>(f.size()); ++s)
    if (f[s] != s) return false;
  return true;
}

AutomorphismData constant_gauge(const PrincipaloidBundle& bundle, const Bisection& b) {
  const auto& base = bundle.base();
  AutomorphismData d;
  d.f = d.f_inv = identity_map(base.size());
  for (int s = 0; s < base.size(); ++s)
    for (int i : base.charts_at(s)) d.gamma[{i, i, s}] = b;
  return d;
}

AutomorphismData identity_automorphism(const PrincipaloidBundle& bundle) {
  return constant_gauge(bundle, identity_bisection(bundle.fibre()));
}

ValidationReport validate_automorphism(const PrincipaloidBundle& bundle, const AutomorphismData& d) {
  const auto& base = bundle.base();
  const auto& G = bundle.fibre();
  check_bijection(d.f, d.f_inv, base.size());
  for (const auto& [key, b] : d.gamma) {
    auto [j, i, s] = key;
    if (s < 0 || s >= base.size() || i < 0 || i >= base.num_charts() || j < 0 ||
        j >= base.num_charts() || !base.contains(i, s) || !base.contains(j, d.f[s]))
      throw StructuralError("gamma entry (" + std::to_string(j) + "," + std::to_string(i) + "," +
                            std::to_string(s) + ") outside the refined cover");
    if (!validate_bisection(G, b)) throw StructuralError("gamma entry is not a bisection");
  }
  ValidationReport r;
  for (int s = 0; s < base.size(); ++s) {
    r.record("coverage");
    if (!first_entry(d, s)) r.fail("coverage", "no gamma entry over base point", {s});
  }
  for (const auto& [k1, g1] : d.gamma)
    for (const auto& [k2, g2] : d.gamma) {
      auto [j, i, s] = k1;
      auto [l, k, s2] = k2;
      if (s != s2 || k1 >= k2) continue;
      r.record("gluing");
      const int fs = d.f[s];
      if (triple(G, bundle.transition(l, j, fs), g1, bundle.transition(i, k, s)) != g2)
        r.fail("gluing", "gamma_(l,k) != beta_lj(f) . gamma_(j,i) . beta_ik", {i, j, k, l, s});
    }
  return r;
}

Bisection gamma_at(const PrincipaloidBundle& bundle, const AutomorphismData& d, int j, int i,
                   int sigma) {
  if (auto it = d.gamma.find({j, i, sigma}); it != d.gamma.end()) return it->second;
  const GammaKey* key = first_entry(d, sigma);
  if (!key) throw DomainError("no gamma entry over base point " + std::to_string(sigma));
  auto [j0, i0, s] = *key;
  if (!bundle.base().contains(i, sigma) || !bundle.base().contains(j, d.f[sigma]))
    throw DomainError("chart pair outside the refined cover");
  return triple(bundle.fibre(), bundle.transition(j, j0, d.f[sigma]), d.gamma.at(*key),
                bundle.transition(i0, i, sigma));
}

AutomorphismData complete_automorphism(const PrincipaloidBundle& bundle, const AutomorphismData& d) {
  AutomorphismData out{d.f, d.f_inv, {}};
  const auto& base = bundle.base();
  for (int s = 0; s < base.size(); ++s)
    for (int i : base.charts_at(s))
      for (int j : base.charts_at(d.f[s])) out.gamma[{j, i, s}] = gamma_at(bundle, d, j, i, s);
  return out;
}

BundlePoint apply_automorphism(const PrincipaloidBundle& bundle, const AutomorphismData& d,
                               const BundlePoint& p) {
  const int fs = d.f[p.sigma];
  const int j = canonical(bundle, fs);
  return bundle.point(fs, j, left_mult(bundle.fibre(), gamma_at(bundle, d, j, p.chart, p.sigma), p.g));
}

std::vector<int> apply_table(const PrincipaloidBundle& bundle, const AutomorphismData& d) {
  std::vector<int> out;
  for (const auto& p : bundle.points()) out.push_back(bundle.index(apply_automorphism(bundle, d, p)));
  return out;
}

bool extensionally_equal(const PrincipaloidBundle& bundle, const AutomorphismData& a,
                         const AutomorphismData& b) {
  return apply_table(bundle, a) == apply_table(bundle, b);
}

AutomorphismData compose_automorphisms(const PrincipaloidBundle& bundle, const AutomorphismData& d2,
                                       const AutomorphismData& d1) {
  const int S = bundle.base().size();
  std::vector<int> f(S);
  std::vector<Bisection> gamma(S);
  for (int s = 0; s < S; ++s) {
    const int t = d1.f[s];
    f[s] = d2.f[t];
    gamma[s] = bisection_product(
        bundle.fibre(), gamma_at(bundle, d2, canonical(bundle, f[s]), canonical(bundle, t), t),
        gamma_at(bundle, d1, canonical(bundle, t), canonical(bundle, s), s));
  }
  return canonical_data(bundle, std::move(f), gamma);
}

AutomorphismData invert_automorphism(const PrincipaloidBundle& bundle, const AutomorphismData& d) {
  const int S = bundle.base().size();
  std::vector<Bisection> gamma(S);
  for (int t = 0; t < S; ++t) {
    const int s = d.f_inv[t];
    gamma[t] = bisection_inverse(bundle.fibre(),
                                 gamma_at(bundle, d, canonical(bundle, t), canonical(bundle, s), s));
  }
  return canonical_data(bundle, d.f_inv, gamma);
}

ShadowPoint shadow_automorphism(const PrincipaloidBundle& bundle, const AutomorphismData& d,
                                const ShadowPoint& x) {
  const int fs = d.f[x.sigma];
  const int j = canonical(bundle, fs);
  const auto& G = bundle.fibre();
  return bundle.shadow_point(fs, j, G.target(gamma_at(bundle, d, j, x.chart, x.sigma)(x.m)));
}

AdjointElement adjoint_automorphism(const AtiyahGroupoid& at, const AutomorphismData& d,
                                    const AdjointElement& a) {
  if (!d.vertical()) throw DomainError("adjoint map requires vertical data");
  const auto& P = at.bundle();
  return at.adjoint_element(a.sigma, a.chart,
                            conjugate(P.fibre(), gamma_at(P, d, a.chart, a.chart, a.sigma), a.g));
}

Bisection automorphism_to_bisection(const AtiyahGroupoid& at, const AutomorphismData& d) {
  const auto& P = at.bundle();
  Bisection b;
  for (const auto& x : P.shadow_points()) {
    const int fs = d.f[x.sigma];
    const int j = canonical(P, fs);
    Arrow g = gamma_at(P, d, j, x.chart, x.sigma)(x.m);
    b.assign.push_back(at.index(at.element(fs, g, x.sigma, j, x.chart)));
  }
  return b;
}

AutomorphismData bisection_to_automorphism(const AtiyahGroupoid& at, const Bisection& b) {
  const auto& P = at.bundle();
  if (!validate_bisection(at.groupoid(), b)) throw DomainError("not a bisection of At(P)");
  auto f = projectable_base_map(at, b);
  if (!f) throw DomainError("bisection is not projectable");
  const int S = P.base().size();
  std::vector<Bisection> gamma(S, Bisection{std::vector<Arrow>(P.fibre().num_objects())});
  for (const auto& x : P.shadow_points()) {
    AtiyahElement e = at.element_at(b(P.index(x)));
    gamma[x.sigma].assign[x.m] = at.local_arrow(e, canonical(P, e.sigma1), x.chart);
  }
  return canonical_data(P, *f, gamma);
}

std::vector<AutomorphismData> enumerate_gauge_group(const PrincipaloidBundle& bundle,
                                                    std::size_t cap) {
  return enumerate_over(bundle, {identity_map(bundle.base().size())}, cap);
}

std::vector<AutomorphismData> enumerate_automorphisms(const PrincipaloidBundle& bundle,
                                                      std::size_t cap) {
  std::vector<std::vector<int>> maps;
  std::vector<int> f = identity_map(bundle.base().size());
  do {
    maps.push_back(f);
    if (maps.size() > cap) throw EnumerationBoundError("search space exceeds cap");
  } while (std::next_permutation(f.begin(), f.end()));
  return enumerate_over(bundle, maps, cap);
}

ValidationReport verify_automorphism(const AtiyahGroupoid& at, const AutomorphismData& d) {
  const auto& P = at.bundle();
  const auto& G = P.fibre();
  ValidationReport r = validate_automorphism(P, d);
  if (!r.ok()) return r;

  auto table = apply_table(P, d);
  r.record("bijective");
  if (std::set<int>(table.begin(), table.end()).size() != table.size())
    r.fail("bijective", "apply map is not injective");

  for (const auto& p : P.points()) {
    const long long w = P.index(p);
    BundlePoint q = apply_automorphism(P, d, p);
    r.record("covers-base-map");
    if (q.sigma != d.f[p.sigma]) r.fail("covers-base-map", "pi(Phi(p)) != f(pi(p))", {w});
    r.record("moment-preserving");
    if (P.moment(q) != P.moment(p)) r.fail("moment-preserving", "mu(Phi(p)) != mu(p)", {w});
    r.record("duck-intertwining");
    if (P.sitting_duck(q) != shadow_automorphism(P, d, P.sitting_duck(p)))
      r.fail("duck-intertwining", "D(Phi(p)) != F_*(D(p))", {w});
    for (Arrow h : G.arrows_to(P.moment(p))) {
      r.record("equivariance");
      if (apply_automorphism(P, d, P.right_action(p, h)) != P.right_action(q, h))
        r.fail("equivariance", "Phi(p <| h) != Phi(p) <| h", {w, h});
    }
  }

  Bisection b = automorphism_to_bisection(at, d);
  r.record("bisection-valid");
  if (!validate_bisection(at.groupoid(), b)) {
    r.fail("bisection-valid", "beta_Phi is not a bisection of At(P)");
    return r;
  }
  r.record("bisection-projects-to-f");
  auto f = projectable_base_map(at, b);
  if (!f || *f != d.f) r.fail("bisection-projects-to-f", "beta_Phi does not cover f");
  for (const auto& x : P.shadow_points()) {
    AtiyahElement e = at.element_at(b(P.index(x)));
    r.record("bisection-source");
    if (at.source(e) != x) r.fail("bisection-source", "S(beta_Phi(x)) != x", {P.index(x)});
    r.record("bisection-target");
    if (at.target(e) != shadow_automorphism(P, d, x))
      r.fail("bisection-target", "T(beta_Phi(x)) != F_*(x)", {P.index(x)});
  }
  for (const auto& p : P.points()) {
    r.record("geometric-implementation");
    AtiyahElement e = at.element_at(b(P.index(P.sitting_duck(p))));
    if (at.act_on_bundle(e, p) != apply_automorphism(P, d, p))
      r.fail("geometric-implementation", "lambda(beta_Phi(D(p)), p) != Phi(p)", {P.index(p)});
  }
  AutomorphismData back = bisection_to_automorphism(at, b);
  r.record("round-trip");
  if (apply_table(P, back) != table || automorphism_to_bisection(at, back) != b)
    r.fail("round-trip", "bisection correspondence does not round trip");

  if (d.vertical()) {
    for (const auto& a : at.adjoint_elements()) {
      AdjointElement fa = adjoint_automorphism(at, d, a);
      const long long w = at.index(at.embed(a));
      r.record("adjoint-source");
      if (at.source(at.embed(fa)) != shadow_automorphism(P, d, at.source(at.embed(a))))
        r.fail("adjoint-source", "S(A_*(a)) != F_*(S(a))", {w});
      r.record("adjoint-target");
      if (at.target(at.embed(fa)) != shadow_automorphism(P, d, at.target(at.embed(a))))
        r.fail("adjoint-target", "T(A_*(a)) != F_*(T(a))", {w});
      r.record("adjoint-conjugation");
      if (conjugate(at.groupoid(), b, at.index(at.embed(a))) != at.index(at.embed(fa)))
        r.fail("adjoint-conjugation", "C_beta_Phi(j(a)) != j(A_*(a))", {w});
      for (const auto& c : at.adjoint_elements()) {
        if (c.sigma != a.sigma || G.source(a.g) != G.target(c.g)) continue;
        r.record("adjoint-fibrewise-morphism");
        AdjointElement ac{a.sigma, a.chart, G.compose(a.g, c.g)};
        AdjointElement fc = adjoint_automorphism(at, d, c);
        if (adjoint_automorphism(at, d, ac) != AdjointElement{a.sigma, a.chart, G.compose(fa.g, fc.g)})
          r.fail("adjoint-fibrewise-morphism", "A_*(a.c) != A_*(a).A_*(c)", {w, at.index(at.embed(c))});
      }
    }
  }
  return r;
}

ValidationReport verify_automorphism_group(const AtiyahGroupoid& at,
                                           const std::vector<AutomorphismData>& group) {
  const auto& P = at.bundle();
  ValidationReport r;
  std::map<std::vector<int>, std::size_t> index;
  std::vector<std::vector<int>> tables;
  std::vector<Bisection> bis;
  for (std::size_t k = 0; k < group.size(); ++k) {
    tables.push_back(apply_table(P, group[k]));
    index[tables.back()] = k;
    bis.push_back(automorphism_to_bisection(at, group[k]));
  }
  r.record("distinct");
  if (index.size() != group.size()) r.fail("distinct", "extensionally equal elements");
  r.record("bisections-distinct");
  if (std::set<Bisection>(bis.begin(), bis.end()).size() != bis.size())
    r.fail("bisections-distinct", "bisection map is not injective");
  r.record("identity");
  if (!index.count(apply_table(P, identity_automorphism(P))))
    r.fail("identity", "identity automorphism missing");

  for (std::size_t k1 = 0; k1 < group.size(); ++k1) {
    const auto& d1 = group[k1];
    AutomorphismData inv = invert_automorphism(P, d1);
    r.record("inverse");
    auto it = index.find(apply_table(P, inv));
    if (it == index.end() || !extensionally_equal(P, compose_automorphisms(P, inv, d1),
                                                  identity_automorphism(P)))
      r.fail("inverse", "inverse missing or not two-sided", {static_cast<long long>(k1)});
    for (std::size_t k2 = 0; k2 < group.size(); ++k2) {
      const auto& d2 = group[k2];
      const std::vector<long long> w{static_cast<long long>(k2), static_cast<long long>(k1)};
      AutomorphismData c = compose_automorphisms(P, d2, d1);
      auto ct = apply_table(P, c);
      r.record("closure");
      auto found = index.find(ct);
      if (found == index.end()) {
        r.fail("closure", "composite not in the group", w);
        continue;
      }
      r.record("composition-pointwise");
      bool pointwise = true;
      for (std::size_t p = 0; p < ct.size(); ++p) pointwise = pointwise && ct[p] == tables[k2][tables[k1][p]];
      if (!pointwise) r.fail("composition-pointwise", "apply(d2.d1) != apply(d2).apply(d1)", w);
      r.record("shadow-homomorphism");
      for (const auto& x : P.shadow_points())
        if (shadow_automorphism(P, c, x) != shadow_automorphism(P, d2, shadow_automorphism(P, d1, x))) {
          r.fail("shadow-homomorphism", "F_*(d2.d1) != F_*(d2).F_*(d1)", w);
          break;
        }
      if (d1.vertical() && d2.vertical()) {
        r.record("adjoint-homomorphism");
        for (const auto& a : at.adjoint_elements())
          if (adjoint_automorphism(at, c, a) !=
              adjoint_automorphism(at, d2, adjoint_automorphism(at, d1, a))) {
            r.fail("adjoint-homomorphism", "A_*(d2.d1) != A_*(d2).A_*(d1)", w);
            break;
          }
      }
      r.record("bisection-homomorphism");
      if (bisection_product(at.groupoid(), bis[k2], bis[k1]) != bis[found->second])
        r.fail("bisection-homomorphism", "beta_(d2.d1) != beta_d2 . beta_d1", w);
    }
  }
  return r;
}

}  // namespace groupoidal
