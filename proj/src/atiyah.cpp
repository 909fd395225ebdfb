#include "groupoidal/atiyah.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "groupoidal/errors.hpp"

namespace groupoidal {

AtiyahGroupoid::AtiyahGroupoid(PrincipaloidBundle bundle) : bundle_(std::move(bundle)) {
  GroupoidTables t;
  t.objects = bundle_.num_shadow_points();
  const int n = num_elements();
  for (int k = 0; k < n; ++k) {
    AtiyahElement e = element_at(k);
    t.src.push_back(bundle_.index(source(e)));
    t.tgt.push_back(bundle_.index(target(e)));
    t.inv.push_back(index(invert(e)));
    t.arrow_labels.push_back(describe(e));
  }
  std::vector<std::vector<int>> to(t.objects);
  for (int k = 0; k < n; ++k) to[t.tgt[k]].push_back(k);
  for (int k = 0; k < n; ++k)
    for (int l : to[t.src[k]]) t.mul.push_back({k, l, index(multiply(element_at(k), element_at(l)))});
  for (int f = 0; f < t.objects; ++f) {
    t.unit.push_back(index(unit(bundle_.shadow_point_at(f))));
    t.object_labels.push_back(bundle_.describe(bundle_.shadow_point_at(f)));
  }
  groupoid_ = FiniteGroupoid(std::move(t));
}

Arrow AtiyahGroupoid::rechart(int sigma1, Arrow g, int sigma2, int k, int l, int i, int j) const {
  const auto& G = bundle_.fibre();
  Arrow h = g;
  if (l != j) h = right_mult(G, h, bundle_.transition(l, j, sigma2));
  if (k != i) h = left_mult(G, bundle_.transition(i, k, sigma1), h);
  return h;
}

AtiyahElement AtiyahGroupoid::element(int sigma1, Arrow g, int sigma2, int chart1,
                                      int chart2) const {
  const auto& base = bundle_.base();
  if (!base.contains(chart1, sigma1) || !base.contains(chart2, sigma2))
    throw DomainError("base point not in chart");
  const int i = base.canonical_chart(sigma1), j = base.canonical_chart(sigma2);
  return {sigma1, rechart(sigma1, g, sigma2, chart1, chart2, i, j), sigma2, i, j};
}

Arrow AtiyahGroupoid::local_arrow(const AtiyahElement& e, int chart1, int chart2) const {
  const auto& base = bundle_.base();
  if (!base.contains(chart1, e.sigma1) || !base.contains(chart2, e.sigma2))
    throw DomainError("base point not in chart");
  return rechart(e.sigma1, e.g, e.sigma2, e.chart1, e.chart2, chart1, chart2);
}

int AtiyahGroupoid::num_elements() const {
  const int s = bundle_.base().size();
  return s * s * bundle_.fibre().num_arrows();
}

int AtiyahGroupoid::index(const AtiyahElement& e) const {
  return (e.sigma1 * bundle_.base().size() + e.sigma2) * bundle_.fibre().num_arrows() + e.g;
}

AtiyahElement AtiyahGroupoid::element_at(int index) const {
  const int A = bundle_.fibre().num_arrows();
  const int S = bundle_.base().size();
  const int pair = index / A;
  const int s1 = pair / S, s2 = pair % S;
  const auto& base = bundle_.base();
  return {s1, index % A, s2, base.canonical_chart(s1), base.canonical_chart(s2)};
}

std::vector<AtiyahElement> AtiyahGroupoid::elements() const {
  std::vector<AtiyahElement> out;
  for (int k = 0; k < num_elements(); ++k) out.push_back(element_at(k));
  return out;
}

ShadowPoint AtiyahGroupoid::source(const AtiyahElement& e) const {
  return bundle_.shadow_point(e.sigma2, e.chart2, bundle_.fibre().source(e.g));
}

ShadowPoint AtiyahGroupoid::target(const AtiyahElement& e) const {
  return bundle_.shadow_point(e.sigma1, e.chart1, bundle_.fibre().target(e.g));
}

AtiyahElement AtiyahGroupoid::unit(const ShadowPoint& f) const {
  return element(f.sigma, bundle_.fibre().unit(f.m), f.sigma, f.chart, f.chart);
}

AtiyahElement AtiyahGroupoid::invert(const AtiyahElement& e) const {
  return element(e.sigma2, bundle_.fibre().inverse(e.g), e.sigma1, e.chart2, e.chart1);
}

AtiyahElement AtiyahGroupoid::multiply_local(int s1, Arrow g, int s2, int i, int j, Arrow h,
                                             int s3, int k, int l) const {
  const auto& G = bundle_.fibre();
  Arrow moved = k == j ? h : left_mult(G, bundle_.transition(j, k, s2), h);
  return element(s1, G.compose(g, moved), s3, i, l);
}

AtiyahElement AtiyahGroupoid::multiply(const AtiyahElement& e1, const AtiyahElement& e2) const {
  if (e1.sigma2 != e2.sigma1) throw CompositionError(e1.sigma2, e2.sigma1);
  ShadowPoint s = source(e1), t = target(e2);
  if (s != t) throw CompositionError(bundle_.index(s), bundle_.index(t));
  return multiply_local(e1.sigma1, e1.g, e1.sigma2, e1.chart1, e1.chart2, e2.g, e2.sigma2,
                        e2.chart1, e2.chart2);
}

BundlePoint AtiyahGroupoid::act_on_bundle(const AtiyahElement& e, const BundlePoint& p) const {
  if (source(e) != bundle_.sitting_duck(p)) throw DomainError("moment mismatch: S(e) != D(p)");
  const auto& G = bundle_.fibre();
  Arrow moved = p.chart == e.chart2 ? p.g
                                    : left_mult(G, bundle_.transition(e.chart2, p.chart, p.sigma), p.g);
  return bundle_.point(e.sigma1, e.chart1, G.compose(e.g, moved));
}

ShadowPoint AtiyahGroupoid::act_on_shadow(const AtiyahElement& e, const ShadowPoint& f) const {
  if (source(e) != f) throw DomainError("moment mismatch: S(e) != f");
  return target(e);
}

AtiyahElement AtiyahGroupoid::division(const BundlePoint& p1, const BundlePoint& p2) const {
  const auto& G = bundle_.fibre();
  if (bundle_.moment(p1) != bundle_.moment(p2)) throw DomainError("moment mismatch: mu(p1) != mu(p2)");
  return element(p1.sigma, G.compose(p1.g, G.inverse(p2.g)), p2.sigma, p1.chart, p2.chart);
}

AdjointElement AtiyahGroupoid::adjoint_element(int sigma, int chart, Arrow g) const {
  const auto& base = bundle_.base();
  if (!base.contains(chart, sigma)) throw DomainError("base point not in chart");
  const int i = base.canonical_chart(sigma);
  if (chart == i) return {sigma, i, g};
  return {sigma, i, conjugate(bundle_.fibre(), bundle_.transition(i, chart, sigma), g)};
}

std::vector<AdjointElement> AtiyahGroupoid::adjoint_elements() const {
  std::vector<AdjointElement> out;
  for (const auto& p : bundle_.points()) out.push_back({p.sigma, p.chart, p.g});
  return out;
}

AtiyahElement AtiyahGroupoid::embed(const AdjointElement& a) const {
  return element(a.sigma, a.g, a.sigma, a.chart, a.chart);
}

AdjointElement AtiyahGroupoid::restrict_to_adjoint(const AtiyahElement& e) const {
  if (e.sigma1 != e.sigma2) throw DomainError("element does not project to the unit of Pair(Sigma)");
  Arrow g = e.chart1 == e.chart2
                ? e.g
                : right_mult(bundle_.fibre(), e.g, bundle_.transition(e.chart2, e.chart1, e.sigma2));
  return {e.sigma1, e.chart1, g};
}

std::string AtiyahGroupoid::describe(const AtiyahElement& e) const {
  const auto& base = bundle_.base();
  return "[(" + base.label(e.sigma1) + "," + bundle_.fibre().arrow_label(e.g) + "," +
         base.label(e.sigma2) + "," + std::to_string(e.chart1) + "," + std::to_string(e.chart2) + ")]";
}

ValidationReport verify_atiyah_sequence(const AtiyahGroupoid& at) {
  const auto& P = at.bundle();
  const auto& G = P.fibre();
  const auto& base = P.base();
  ValidationReport r = validate_groupoid(at.groupoid());
  const auto all = at.elements();

  for (const auto& e : all) {
    const long long w = at.index(e);
    for (int i : base.charts_at(e.sigma1))
      for (int j : base.charts_at(e.sigma2)) {
        Arrow g = at.local_arrow(e, i, j);
        r.record("structure-chart-independence");
        if (at.element(e.sigma1, g, e.sigma2, i, j) != e ||
            P.shadow_point(e.sigma2, j, G.source(g)) != at.source(e) ||
            P.shadow_point(e.sigma1, i, G.target(g)) != at.target(e) ||
            at.element(e.sigma2, G.inverse(g), e.sigma1, j, i) != at.invert(e))
          r.fail("structure-chart-independence", "structure map differs in charts", {w, i, j});
      }
    r.record("projection-morphism");
    auto [a, b] = at.projection(e);
    if (at.projection(at.invert(e)) != std::make_pair(b, a) || at.source(e).sigma != b ||
        at.target(e).sigma != a)
      r.fail("projection-morphism", "pi does not cover source, target or inverse", {w});
  }
  for (const auto& f : P.shadow_points()) {
    r.record("projection-morphism");
    auto u = at.unit(f);
    if (at.projection(u) != std::make_pair(f.sigma, f.sigma))
      r.fail("projection-morphism", "pi(I(f)) is not a unit", {P.index(f)});
  }
  for (const auto& e1 : all)
    for (const auto& e2 : all) {
      if (at.source(e1) != at.target(e2)) continue;
      AtiyahElement prod = at.multiply(e1, e2);
      r.record("projection-morphism");
      if (at.projection(prod) != std::make_pair(e1.sigma1, e2.sigma2))
        r.fail("projection-morphism", "pi(e1.e2) != pi(e1).pi(e2)", {at.index(e1), at.index(e2)});
      // Multiplication through arbitrary chart representatives.
      for (int j : base.charts_at(e1.sigma2))
        for (int k : base.charts_at(e2.sigma1)) {
          r.record("multiplication-chart-independence");
          auto local = at.multiply_local(e1.sigma1, at.local_arrow(e1, e1.chart1, j), e1.sigma2,
                                         e1.chart1, j, at.local_arrow(e2, k, e2.chart2),
                                         e2.sigma2, k, e2.chart2);
          if (local != prod)
            r.fail("multiplication-chart-independence", "product differs in charts",
                   {at.index(e1), at.index(e2), j, k});
        }
    }

  std::set<std::pair<int, int>> hit;
  std::vector<int> fibre_size(base.size() * base.size(), 0);
  for (const auto& e : all) {
    hit.insert(at.projection(e));
    ++fibre_size[e.sigma1 * base.size() + e.sigma2];
  }
  r.record("projection-surjective");
  if (hit.size() != static_cast<std::size_t>(base.size() * base.size()))
    r.fail("projection-surjective", "pi misses pairs of base points");
  for (std::size_t k = 0; k < fibre_size.size(); ++k) {
    r.record("fibre-cardinality");
    if (fibre_size[k] != G.num_arrows())
      r.fail("fibre-cardinality", "pi-fibre size differs from arrow count", {static_cast<long long>(k)});
  }

  // ker pi = j(Ad(P)) and j is an injective morphism of bundles of groupoids.
  std::set<AtiyahElement> kernel, image;
  for (const auto& e : all)
    if (e.sigma1 == e.sigma2) kernel.insert(e);
  const auto ad = at.adjoint_elements();
  for (const auto& a : ad) {
    AtiyahElement e = at.embed(a);
    image.insert(e);
    r.record("embedding-inverse");
    if (at.restrict_to_adjoint(e) != a)
      r.fail("embedding-inverse", "iota(j(a)) != a", {at.index(e)});
    for (int k : base.charts_at(a.sigma)) {
      // The conjugation-glued representative in chart k embeds to the same class.
      Arrow local = a.g;
      if (k != a.chart) local = conjugate(G, P.transition(k, a.chart, a.sigma), a.g);
      r.record("embedding-chart-independence");
      if (at.adjoint_element(a.sigma, k, local) != a ||
          at.element(a.sigma, local, a.sigma, k, k) != e)
        r.fail("embedding-chart-independence", "embedding differs in chart", {at.index(e), k});
    }
    for (const auto& b : ad) {
      if (b.sigma != a.sigma || G.source(a.g) != G.target(b.g)) continue;
      r.record("embedding-morphism");
      AdjointElement ab{a.sigma, a.chart, G.compose(a.g, b.g)};
      if (at.embed(ab) != at.multiply(e, at.embed(b)))
        r.fail("embedding-morphism", "j(a.b) != j(a).j(b)", {at.index(e), at.index(at.embed(b))});
    }
  }
  r.record("exactness");
  if (kernel != image || image.size() != ad.size())
    r.fail("exactness", "ker pi differs from j(Ad(P))",
           {static_cast<long long>(kernel.size()), static_cast<long long>(image.size())});
  return r;
}

int count_atiyah_orbits(const AtiyahGroupoid& at) {
  const auto& P = at.bundle();
  std::vector<int> parent(P.num_points());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& p : P.points())
    for (const auto& e : at.elements())
      if (at.source(e) == P.sitting_duck(p)) parent[find(P.index(p))] = find(P.index(at.act_on_bundle(e, p)));
  std::set<int> roots;
  for (int k = 0; k < P.num_points(); ++k) roots.insert(find(k));
  return static_cast<int>(roots.size());
}

ValidationReport verify_trident(const AtiyahGroupoid& at) {
  const auto& P = at.bundle();
  const auto& G = P.fibre();
  ValidationReport r;
  const auto pts = P.points();
  const auto all = at.elements();

  for (const auto& p : pts) {
    const long long w = P.index(p);
    for (Arrow h : G.arrows_to(P.moment(p))) {
      r.record("right-action-vertical");
      if (P.right_action(p, h).sigma != p.sigma)
        r.fail("right-action-vertical", "right action leaves the pi-fibre", {w, h});
    }
    r.record("GlM2");
    if (at.act_on_bundle(at.unit(P.sitting_duck(p)), p) != p) r.fail("GlM2", "I(D(p)) acts non-trivially", {w});
    for (const auto& e : all) {
      if (at.source(e) != P.sitting_duck(p)) continue;
      const long long we = at.index(e);
      BundlePoint q = at.act_on_bundle(e, p);
      r.record("GlM1");
      if (P.sitting_duck(q) != at.target(e)) r.fail("GlM1", "D(lambda(e,p)) != T(e)", {we, w});
      r.record("covers-base-action");
      if (q.sigma != e.sigma1 || p.sigma != e.sigma2)
        r.fail("covers-base-action", "lambda does not cover Pair(Sigma)", {we, w});
      r.record("moment-invariance");
      if (P.moment(q) != P.moment(p)) r.fail("moment-invariance", "mu(lambda(e,p)) != mu(p)", {we, w});
      r.record("shadow-intertwining");
      if (P.sitting_duck(q) != at.act_on_shadow(e, P.sitting_duck(p)))
        r.fail("shadow-intertwining", "D(lambda_P) != lambda_F(D)", {we, w});
      r.record("psi-inverts-lambda");
      if (at.division(q, p) != e) r.fail("psi-inverts-lambda", "psi(lambda(e,p), p) != e", {we, w});
      for (Arrow h : G.arrows_to(P.moment(p))) {
        r.record("actions-commute");
        if (at.act_on_bundle(e, P.right_action(p, h)) != P.right_action(q, h))
          r.fail("actions-commute", "lambda(e, p <| h) != lambda(e, p) <| h", {we, w, h});
      }
      for (const auto& e2 : all) {
        if (at.source(e2) != at.target(e)) continue;
        r.record("GlM3");
        if (at.act_on_bundle(e2, q) != at.act_on_bundle(at.multiply(e2, e), p))
          r.fail("GlM3", "lambda(e2, lambda(e, p)) != lambda(e2.e, p)", {at.index(e2), we, w});
      }
    }
    for (const auto& p2 : pts) {
      if (P.moment(p2) != P.moment(p)) continue;
      AtiyahElement e = at.division(p, p2);
      r.record("lambda-inverts-psi");
      if (at.act_on_bundle(e, p2) != p) r.fail("lambda-inverts-psi", "lambda(psi(p1,p2), p2) != p1", {w, P.index(p2)});
      for (int i : P.base().charts_at(p.sigma))
        for (int j : P.base().charts_at(p2.sigma)) {
          r.record("psi-chart-independence");
          Arrow g = P.local_arrow(p, i), h = P.local_arrow(p2, j);
          if (at.element(p.sigma, G.compose(g, G.inverse(h)), p2.sigma, i, j) != e)
            r.fail("psi-chart-independence", "psi differs in charts", {w, P.index(p2), i, j});
        }
      if (P.sitting_duck(p2) == P.sitting_duck(p)) {
        r.record("right-principal");
        if (P.right_action(p, P.division(p, p2)) != p2)
          r.fail("right-principal", "p1 <| phi(p1,p2) != p2", {w, P.index(p2)});
      }
    }
    r.record("psi-unit");
    if (at.division(p, p) != at.unit(P.sitting_duck(p))) r.fail("psi-unit", "psi(p,p) != I(D(p))", {w});
  }
  // (lambda, pr2) and (psi, pr2) are mutually inverse bijections.
  std::size_t lambda_domain = 0, psi_domain = 0;
  for (const auto& p : pts) {
    for (const auto& e : all)
      if (at.source(e) == P.sitting_duck(p)) ++lambda_domain;
    for (const auto& p2 : pts)
      if (P.moment(p2) == P.moment(p)) ++psi_domain;
  }
  r.record("trident-bijection");
  if (lambda_domain != psi_domain)
    r.fail("trident-bijection", "domains of (lambda,pr2) and (psi,pr2) differ",
           {static_cast<long long>(lambda_domain), static_cast<long long>(psi_domain)});
  r.record("orbit-count");
  int orbits = count_atiyah_orbits(at);
  if (orbits != G.num_objects())
    r.fail("orbit-count", "P/At(P) differs from the object set", {orbits, G.num_objects()});
  return r;
}

std::optional<std::vector<int>> projectable_base_map(const AtiyahGroupoid& at, const Bisection& b) {
  const auto& P = at.bundle();
  const int S = P.base().size();
  std::vector<int> f(S, -1);
  for (const auto& x : P.shadow_points()) {
    AtiyahElement e = at.element_at(b(P.index(x)));
    if (e.sigma2 != x.sigma) return std::nullopt;
    if (f[x.sigma] < 0) f[x.sigma] = e.sigma1;
    else if (f[x.sigma] != e.sigma1) return std::nullopt;
  }
  std::vector<char> hit(S, 0);
  for (int s = 0; s < S; ++s) {
    if (f[s] < 0 || hit[f[s]]) return std::nullopt;
    hit[f[s]] = 1;
  }
  return f;
}

ProjectableBisections enumerate_projectable_bisections(const AtiyahGroupoid& at, std::size_t cap) {
  ProjectableBisections out;
  BisectionGroup B = enumerate_bisections(at.groupoid(), cap);
  for (const auto& b : B.elements()) {
    auto f = projectable_base_map(at, b);
    if (!f) continue;
    bool vertical = true;
    for (int s = 0; s < static_cast<int>(f->size()); ++s) vertical = vertical && (*f)[s] == s;
    out.all.push_back(b);
    out.base.push_back(*f);
    if (vertical) out.vertical.push_back(b);
  }
  return out;
}

}  // namespace groupoidal
