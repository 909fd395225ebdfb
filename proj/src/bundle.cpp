#include "groupoidal/bundle.hpp"

#include <algorithm>
#include <set>

#include "groupoidal/errors.hpp"

namespace groupoidal {

CechBase::CechBase(std::vector<std::string> labels, std::vector<std::vector<int>> cover)
    : labels_(std::move(labels)), cover_(std::move(cover)) {
  const int n = size();
  member_.assign(cover_.size(), std::vector<char>(n, 0));
  charts_at_.assign(n, {});
  for (std::size_t i = 0; i < cover_.size(); ++i) {
    if (cover_[i].empty()) throw InputError("chart " + std::to_string(i) + " is empty");
    std::sort(cover_[i].begin(), cover_[i].end());
    cover_[i].erase(std::unique(cover_[i].begin(), cover_[i].end()), cover_[i].end());
    for (int s : cover_[i]) {
      if (s < 0 || s >= n) throw InputError("chart " + std::to_string(i) + " has a point out of range");
      member_[i][s] = 1;
      charts_at_[s].push_back(static_cast<int>(i));
    }
  }
  canonical_.resize(n);
  for (int s = 0; s < n; ++s) {
    if (charts_at_[s].empty()) throw InputError("cover misses base point " + labels_[s]);
    canonical_[s] = charts_at_[s].front();
  }
}

int CechBase::index_of(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw InputError("unknown base point " + label);
  return static_cast<int>(it - labels_.begin());
}

const Bisection& Cocycle::at(int i, int j, int sigma) const {
  auto it = beta_.find({i, j, sigma});
  if (it == beta_.end())
    throw StructuralError("missing transition beta_" + std::to_string(i) + std::to_string(j) +
                          " at " + std::to_string(sigma));
  return it->second;
}

Cocycle complete_cocycle(const CechBase& base, const FiniteGroupoid& g, Cocycle c) {
  for (int s = 0; s < base.size(); ++s)
    for (int i : base.charts_at(s))
      for (int j : base.charts_at(s)) {
        if (c.has(i, j, s)) continue;
        if (i == j) {
          c.set(i, j, s, identity_bisection(g));
        } else if (c.has(j, i, s)) {
          const Bisection& b = c.at(j, i, s);
          if (validate_bisection(g, b)) c.set(i, j, s, bisection_inverse(g, b));
        }
      }
  return c;
}

ValidationReport validate_cocycle(const CechBase& base, const FiniteGroupoid& g, const Cocycle& c) {
  for (const auto& [key, b] : c.entries()) {
    auto [i, j, s] = key;
    if (i < 0 || j < 0 || i >= base.num_charts() || j >= base.num_charts() || s < 0 ||
        s >= base.size() || !base.contains(i, s) || !base.contains(j, s))
      throw StructuralError("transition declared outside its overlap");
    if (!validate_bisection(g, b))
      throw StructuralError("transition beta_" + std::to_string(i) + std::to_string(j) + " at " +
                            base.label(s) + " is not a bisection");
  }
  ValidationReport r;
  const Bisection id = identity_bisection(g);
  for (int s = 0; s < base.size(); ++s) {
    const auto& charts = base.charts_at(s);
    for (int i : charts) {
      r.record("unit");
      if (c.at(i, i, s) != id) r.fail("unit", "beta_ii != Id", {i, i, i, s});
      for (int j : charts) {
        r.record("inverse");
        if (bisection_product(g, c.at(i, j, s), c.at(j, i, s)) != id)
          r.fail("inverse", "beta_ij . beta_ji != Id", {i, j, i, s});
        for (int k : charts) {
          r.record("cocycle");
          if (bisection_product(g, c.at(i, j, s), c.at(j, k, s)) != c.at(i, k, s))
            r.fail("cocycle", "beta_ij . beta_jk != beta_ik", {i, j, k, s});
        }
      }
    }
  }
  return r;
}

PrincipaloidBundle::PrincipaloidBundle(CechBase base, Cocycle cocycle, FiniteGroupoid fibre,
                                       bool skip_validation)
    : base_(std::move(base)), fibre_(std::move(fibre)) {
  cocycle_ = complete_cocycle(base_, fibre_, std::move(cocycle));
  if (skip_validation) return;
  auto r = validate_cocycle(base_, fibre_, cocycle_);
  if (!r.ok()) {
    const auto& v = r.violations().front();
    throw InputError("invalid cocycle: " + v.detail);
  }
}

BundlePoint PrincipaloidBundle::point(int sigma, int chart, Arrow g) const {
  if (sigma < 0 || sigma >= base_.size() || chart < 0 || chart >= base_.num_charts() ||
      !base_.contains(chart, sigma))
    throw DomainError("base point not in chart");
  if (g < 0 || g >= fibre_.num_arrows()) throw DomainError("arrow out of range");
  const int i = base_.canonical_chart(sigma);
  if (chart == i) return {sigma, i, g};
  return {sigma, i, left_mult(fibre_, cocycle_.at(i, chart, sigma), g)};
}

ShadowPoint PrincipaloidBundle::shadow_point(int sigma, int chart, Object m) const {
  if (sigma < 0 || sigma >= base_.size() || chart < 0 || chart >= base_.num_charts() ||
      !base_.contains(chart, sigma))
    throw DomainError("base point not in chart");
  if (m < 0 || m >= fibre_.num_objects()) throw DomainError("object out of range");
  const int i = base_.canonical_chart(sigma);
  if (chart == i) return {sigma, i, m};
  return {sigma, i, fibre_.target(cocycle_.at(i, chart, sigma)(m))};
}

Arrow PrincipaloidBundle::local_arrow(const BundlePoint& p, int chart) const {
  if (!base_.contains(chart, p.sigma)) throw DomainError("base point not in chart");
  if (chart == p.chart) return p.g;
  return left_mult(fibre_, cocycle_.at(chart, p.chart, p.sigma), p.g);
}

Object PrincipaloidBundle::local_object(const ShadowPoint& f, int chart) const {
  if (!base_.contains(chart, f.sigma)) throw DomainError("base point not in chart");
  if (chart == f.chart) return f.m;
  return fibre_.target(cocycle_.at(chart, f.chart, f.sigma)(f.m));
}

std::vector<BundlePoint> PrincipaloidBundle::points() const {
  std::vector<BundlePoint> out;
  out.reserve(num_points());
  for (int i = 0; i < num_points(); ++i) out.push_back(point_at(i));
  return out;
}

std::vector<ShadowPoint> PrincipaloidBundle::shadow_points() const {
  std::vector<ShadowPoint> out;
  out.reserve(num_shadow_points());
  for (int i = 0; i < num_shadow_points(); ++i) out.push_back(shadow_point_at(i));
  return out;
}

BundlePoint PrincipaloidBundle::point_at(int index) const {
  int s = index / fibre_.num_arrows();
  return {s, base_.canonical_chart(s), index % fibre_.num_arrows()};
}

ShadowPoint PrincipaloidBundle::shadow_point_at(int index) const {
  int s = index / fibre_.num_objects();
  return {s, base_.canonical_chart(s), index % fibre_.num_objects()};
}

BundlePoint PrincipaloidBundle::right_action(const BundlePoint& p, Arrow h) const {
  if (fibre_.target(h) != moment(p))
    throw DomainError("moment mismatch: t(h)=" + std::to_string(fibre_.target(h)) +
                      " but mu(p)=" + std::to_string(moment(p)));
  return {p.sigma, p.chart, fibre_.compose(p.g, h)};
}

ShadowPoint PrincipaloidBundle::sitting_duck(const BundlePoint& p) const {
  return {p.sigma, p.chart, fibre_.target(p.g)};
}

Arrow PrincipaloidBundle::division(const BundlePoint& p1, const BundlePoint& p2) const {
  if (sitting_duck(p1) != sitting_duck(p2)) throw DomainError("points lie in distinct D-fibres");
  return fibre_.compose(fibre_.inverse(p1.g), p2.g);
}

BundlePoint PrincipaloidBundle::b_action(const BundlePoint& p, const Bisection& b) const {
  return {p.sigma, p.chart, right_mult(fibre_, p.g, b)};
}

BundlePoint PrincipaloidBundle::induced_b_action(const BundlePoint& p, const Bisection& b) const {
  Bisection bi = bisection_inverse(fibre_, b);
  return right_action(p, fibre_.inverse(bi(moment(p))));
}

std::string PrincipaloidBundle::describe(const BundlePoint& p) const {
  return "(" + base_.label(p.sigma) + "," + std::to_string(p.chart) + "," +
         fibre_.arrow_label(p.g) + ")";
}

std::string PrincipaloidBundle::describe(const ShadowPoint& f) const {
  return "(" + base_.label(f.sigma) + "," + std::to_string(f.chart) + "," +
         fibre_.object_label(f.m) + ")";
}

ValidationReport verify_principal_axioms(const PrincipaloidBundle& P) {
  const auto& G = P.fibre();
  const auto& base = P.base();
  ValidationReport r;
  auto pid = [&](const BundlePoint& p) { return static_cast<long long>(P.index(p)); };

  std::vector<char> hit_base(base.size(), 0), hit_shadow(P.num_shadow_points(), 0);
  for (const auto& p : P.points()) {
    hit_base[p.sigma] = 1;
    hit_shadow[P.index(P.sitting_duck(p))] = 1;
    const Object mu = P.moment(p);

    r.record("GrM2");
    if (P.right_action(p, G.unit(mu)) != p) r.fail("GrM2", "p <| Id != p", {pid(p)});

    for (Arrow h : G.arrows_to(mu)) {
      BundlePoint ph = P.right_action(p, h);
      r.record("GrM1");
      if (P.moment(ph) != G.source(h)) r.fail("GrM1", "mu(p <| h) != s(h)", {pid(p), h});
      r.record("fibre-preservation");
      if (ph.sigma != p.sigma) r.fail("fibre-preservation", "right action leaves the pi-fibre", {pid(p), h});
      r.record("PGr2");
      if (P.sitting_duck(ph) != P.sitting_duck(p)) r.fail("PGr2", "D(p <| h) != D(p)", {pid(p), h});
      for (Arrow k : G.arrows_to(G.source(h))) {
        r.record("GrM3");
        if (P.right_action(ph, k) != P.right_action(p, G.compose(h, k)))
          r.fail("GrM3", "(p <| h) <| k != p <| (h.k)", {pid(p), h, k});
      }
      // The action computed in every chart agrees after canonicalisation.
      for (int c : base.charts_at(p.sigma)) {
        r.record("chart-consistency");
        Arrow local = P.local_arrow(p, c);
        if (P.point(p.sigma, c, local) != p ||
            P.point(p.sigma, c, G.compose(local, h)) != ph ||
            G.source(local) != mu ||
            P.shadow_point(p.sigma, c, G.target(local)) != P.sitting_duck(p))
          r.fail("chart-consistency", "local action differs in chart", {pid(p), h, c});
      }
    }
  }
  for (int s = 0; s < base.size(); ++s) {
    r.record("PGr1");
    if (!hit_base[s]) r.fail("PGr1", "projection misses base point", {s});
  }
  for (int f = 0; f < P.num_shadow_points(); ++f) {
    r.record("PGr1");
    if (!hit_shadow[f]) r.fail("PGr1", "sitting-duck map misses shadow point", {f});
  }

  // (pr1, rho): P x_mu G -> P x_F P and its inverse (pr1, phi), in every chart.
  std::set<std::pair<int, int>> image;
  std::size_t domain = 0;
  for (const auto& p : P.points())
    for (Arrow h : G.arrows_to(P.moment(p))) {
      ++domain;
      BundlePoint q = P.right_action(p, h);
      image.emplace(P.index(p), P.index(q));
      r.record("PGr3");
      if (P.division(p, q) != h) r.fail("PGr3", "phi(p, p <| h) != h", {pid(p), h});
    }
  std::size_t codomain = 0;
  for (const auto& p1 : P.points())
    for (const auto& p2 : P.points()) {
      if (P.sitting_duck(p1) != P.sitting_duck(p2)) continue;
      ++codomain;
      r.record("PGr3");
      Arrow phi = P.division(p1, p2);
      if (G.target(phi) != P.moment(p1) || P.right_action(p1, phi) != p2)
        r.fail("PGr3", "p1 <| phi(p1, p2) != p2", {pid(p1), pid(p2)});
      for (int c : base.charts_at(p1.sigma)) {
        r.record("PGr3");
        Arrow g1 = P.local_arrow(p1, c), g2 = P.local_arrow(p2, c);
        auto local_phi = G.find_product(G.inverse(g1), g2);
        if (!local_phi || *local_phi != phi ||
            P.point(p1.sigma, c, G.compose(g1, *local_phi)) != p2)
          r.fail("PGr3", "division differs in chart", {pid(p1), pid(p2), c});
      }
    }
  r.record("PGr3");
  if (image.size() != domain || domain != codomain)
    r.fail("PGr3", "(pr1, rho) is not a bijection onto P x_F P",
           {static_cast<long long>(domain), static_cast<long long>(image.size()),
            static_cast<long long>(codomain)});
  return r;
}

ValidationReport verify_duck_fibres(const PrincipaloidBundle& P) {
  const auto& G = P.fibre();
  ValidationReport r;
  const auto pts = P.points();
  for (const auto& p : pts) {
    std::set<int> orbit, fibre;
    for (Arrow h : G.arrows_to(P.moment(p))) orbit.insert(P.index(P.right_action(p, h)));
    for (const auto& q : pts)
      if (P.sitting_duck(q) == P.sitting_duck(p)) fibre.insert(P.index(q));
    r.record("fibres-are-orbits");
    if (orbit != fibre) r.fail("fibres-are-orbits", "D-fibre differs from orbit", {P.index(p)});
  }
  for (int s = 0; s < P.base().size(); ++s) {
    std::set<int> seen;
    std::size_t total = 0;
    for (Object m = 0; m < G.num_objects(); ++m) {
      ShadowPoint f = P.shadow_point(s, P.base().canonical_chart(s), m);
      for (const auto& q : pts)
        if (P.sitting_duck(q) == f) {
          ++total;
          seen.insert(P.index(q));
        }
    }
    r.record("fibre-partition");
    if (total != seen.size() || total != static_cast<std::size_t>(G.num_arrows()))
      r.fail("fibre-partition", "D-fibres do not partition the pi-fibre", {s});
  }
  return r;
}

ValidationReport verify_bisection_actions(const PrincipaloidBundle& P, const BisectionGroup& B) {
  const auto& G = P.fibre();
  ValidationReport r;
  const auto pts = P.points();
  const Bisection id = identity_bisection(G);
  for (const auto& p : pts) {
    const long long w = P.index(p);
    r.record("b-action-unit");
    if (P.b_action(p, id) != p) r.fail("b-action-unit", "p <| Id != p", {w});
    for (std::size_t i = 0; i < B.size(); ++i) {
      const Bisection& b = B[i];
      const long long wi = static_cast<long long>(i);
      BundlePoint pb = P.b_action(p, b);
      r.record("b-action-fibre");
      if (pb.sigma != p.sigma) r.fail("b-action-fibre", "b-action leaves the pi-fibre", {w, wi});
      r.record("b-action-induced");
      if (pb != P.induced_b_action(p, b))
        r.fail("b-action-induced", "b_action != induced_b_action", {w, wi});
      for (int c : P.base().charts_at(p.sigma)) {
        r.record("b-action-chart-independence");
        if (P.point(p.sigma, c, right_mult(G, P.local_arrow(p, c), b)) != pb)
          r.fail("b-action-chart-independence", "b-action differs in chart", {w, wi, c});
      }
      for (std::size_t j = 0; j < B.size(); ++j) {
        r.record("b-action-right-action");
        if (P.b_action(pb, B[j]) != P.b_action(p, B[B.product(i, j)]))
          r.fail("b-action-right-action", "(p <| b1) <| b2 != p <| (b1 . b2)",
                 {w, wi, static_cast<long long>(j)});
      }
    }
    // Right action by h through any bisection through h^{-1}.
    for (Arrow h : G.arrows_to(P.moment(p))) {
      const Arrow hi = G.inverse(h);
      for (std::size_t i = 0; i < B.size(); ++i) {
        if (B[i](G.source(hi)) != hi) continue;
        r.record("through-bisection-action");
        if (P.right_action(p, h) != P.b_action(p, B[B.inverse(i)]))
          r.fail("through-bisection-action", "p <| h != p <| beta^{-1}",
                 {w, h, static_cast<long long>(i)});
      }
    }
  }
  return r;
}

PrincipaloidBundle three_point_example() {
  FiniteGroupoid g = make_action_groupoid(z2_swap_action());
  CechBase base({"a", "b", "c"}, {{0, 1}, {1, 2}});
  Cocycle c;
  c.set(0, 1, 1, Bisection{{2, 3}});  // beta_r(m) = (r, m)
  return PrincipaloidBundle(std::move(base), std::move(c), std::move(g));
}

}  // namespace groupoidal
