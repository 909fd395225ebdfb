#ifndef GROUPOIDAL_BUNDLE_HPP
#define GROUPOIDAL_BUNDLE_HPP

#include <compare>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "groupoidal/bisection.hpp"
#include "groupoidal/groupoid.hpp"
#include "groupoidal/report.hpp"

namespace groupoidal {

// Finite base Sigma = {0..n-1} with an indexed cover.
class CechBase {
 public:
  CechBase() = default;
  // Throws InputError if a chart is empty, an id is out of range, or the cover
  // misses a point.
  CechBase(std::vector<std::string> labels, std::vector<std::vector<int>> cover);

  int size() const { return static_cast<int>(labels_.size()); }
  int num_charts() const { return static_cast<int>(cover_.size()); }
  bool contains(int chart, int sigma) const { return member_[chart][sigma]; }
  // Least index of a chart containing sigma.
  int canonical_chart(int sigma) const { return canonical_[sigma]; }
  const std::vector<int>& chart(int i) const { return cover_[i]; }
  const std::vector<int>& charts_at(int sigma) const { return charts_at_[sigma]; }
  const std::string& label(int sigma) const { return labels_[sigma]; }
  const std::vector<std::string>& labels() const { return labels_; }
  int index_of(const std::string& label) const;

 private:
  std::vector<std::string> labels_;
  std::vector<std::vector<int>> cover_;
  std::vector<std::vector<char>> member_;
  std::vector<std::vector<int>> charts_at_;
  std::vector<int> canonical_;
};

// beta_ij(sigma) on O_i cap O_j.
class Cocycle {
 public:
  void set(int i, int j, int sigma, Bisection b) { beta_[{i, j, sigma}] = std::move(b); }
  bool has(int i, int j, int sigma) const { return beta_.count({i, j, sigma}) > 0; }
  // Throws StructuralError when the entry is missing.
  const Bisection& at(int i, int j, int sigma) const;
  const std::map<std::tuple<int, int, int>, Bisection>& entries() const { return beta_; }

 private:
  std::map<std::tuple<int, int, int>, Bisection> beta_;
};

// Fills beta_ii = Id where absent and beta_ji = beta_ij^{-1} where only one
// direction was declared.
Cocycle complete_cocycle(const CechBase& base, const FiniteGroupoid& g, Cocycle c);

// Check names: "unit", "inverse", "cocycle". Throws StructuralError on a missing
// entry, an entry outside its overlap, or an invalid bisection.
ValidationReport validate_cocycle(const CechBase& base, const FiniteGroupoid& g, const Cocycle& c);

// A point (sigma, chart, g) of P, stored with the least chart containing sigma.
struct BundlePoint {
  int sigma = 0;
  int chart = 0;
  Arrow g = 0;
  auto operator<=>(const BundlePoint&) const = default;
};

// A point (sigma, chart, m) of the shadow bundle F.
struct ShadowPoint {
  int sigma = 0;
  int chart = 0;
  Object m = 0;
  auto operator<=>(const ShadowPoint&) const = default;
};

class PrincipaloidBundle {
 public:
  // Completes and validates the cocycle; throws InputError when it is invalid
  // unless validation is skipped.
  PrincipaloidBundle(CechBase base, Cocycle cocycle, FiniteGroupoid fibre,
                     bool skip_validation = false);

  const CechBase& base() const { return base_; }
  const Cocycle& cocycle() const { return cocycle_; }
  const FiniteGroupoid& fibre() const { return fibre_; }
  const Bisection& transition(int i, int j, int sigma) const { return cocycle_.at(i, j, sigma); }

  // (sigma, g, j) ~ (sigma, beta_ij(sigma) |> g, i) resolved to the canonical chart.
  BundlePoint point(int sigma, int chart, Arrow g) const;
  ShadowPoint shadow_point(int sigma, int chart, Object m) const;
  // Local fibre coordinate of p in another chart containing p.sigma.
  Arrow local_arrow(const BundlePoint& p, int chart) const;
  Object local_object(const ShadowPoint& f, int chart) const;

  int num_points() const { return base_.size() * fibre_.num_arrows(); }
  int num_shadow_points() const { return base_.size() * fibre_.num_objects(); }
  std::vector<BundlePoint> points() const;
  std::vector<ShadowPoint> shadow_points() const;
  int index(const BundlePoint& p) const { return p.sigma * fibre_.num_arrows() + p.g; }
  int index(const ShadowPoint& f) const { return f.sigma * fibre_.num_objects() + f.m; }
  BundlePoint point_at(int index) const;
  ShadowPoint shadow_point_at(int index) const;

  Object moment(const BundlePoint& p) const { return fibre_.source(p.g); }
  // Throws DomainError unless t(h) = moment(p).
  BundlePoint right_action(const BundlePoint& p, Arrow h) const;
  ShadowPoint sitting_duck(const BundlePoint& p) const;
  // Throws DomainError unless both points lie in one D-fibre.
  Arrow division(const BundlePoint& p1, const BundlePoint& p2) const;
  // Locally (sigma, R_b(g), i).
  BundlePoint b_action(const BundlePoint& p, const Bisection& b) const;
  // p <| (b^{-1}(mu(p)))^{-1}
  BundlePoint induced_b_action(const BundlePoint& p, const Bisection& b) const;

  std::string describe(const BundlePoint& p) const;
  std::string describe(const ShadowPoint& f) const;

 private:
  CechBase base_;
  Cocycle cocycle_;
  FiniteGroupoid fibre_;
};

// GrM1-3, chart consistency, PGr1-3, exhaustively.
ValidationReport verify_principal_axioms(const PrincipaloidBundle& bundle);
// D-fibres against right-action orbits and the partition of each pi-fibre.
ValidationReport verify_duck_fibres(const PrincipaloidBundle& bundle);
// Right action law of b_action, agreement with induced_b_action and with the
// action through a bisection through the inverse arrow, chart independence.
ValidationReport verify_bisection_actions(const PrincipaloidBundle& bundle,
                                          const BisectionGroup& group);

// The three-point base {a, b, c} with O_0 = {a, b}, O_1 = {b, c} and
// beta_01(b) = beta_r over the Z2 swap action groupoid.
PrincipaloidBundle three_point_example();

}  // namespace groupoidal

#endif
