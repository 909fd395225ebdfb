#ifndef GROUPOIDAL_SCENARIO_HPP
#define GROUPOIDAL_SCENARIO_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "groupoidal/families.hpp"
#include "groupoidal/lie.hpp"

namespace groupoidal {

struct Box {
  Vec lo, hi;
  bool contains(const Vec& sigma) const;
  // Distance from sigma to the boundary, negative outside.
  double margin(const Vec& sigma) const;
};

std::optional<Box> intersect(const Box& a, const Box& b);

// Chart frame k_i(sigma, m) = exp(phase(sigma, |m|^2) axis . t) of chart i.
struct ChartFrame {
  Vec axis;
  Phase phase;
};

struct NumericConfig {
  double fd_step = 1e-5;
  double ode_step = 1e-2;
  double tolerance = 1e-7;
  NewtonOptions newton;
};

struct ScenarioParams {
  std::string name;
  std::string group = "so2";
  int base_dim = 2;
  std::vector<Box> charts;
  std::vector<ChartFrame> frames;
  NumericConfig config;
};

// G x R^n over boxes in R^d, with cocycle beta_ij = k_i . k_j^{-1} built from the
// chart frames, so the cocycle conditions hold exactly in the bisection group.
class MatrixGroupScenario {
 public:
  explicit MatrixGroupScenario(ScenarioParams params);

  const ScenarioParams& params() const { return params_; }
  const MatrixGroup& group() const { return group_; }
  const NumericConfig& config() const { return params_.config; }
  int n() const { return group_.n; }
  int base_dim() const { return params_.base_dim; }
  int num_charts() const { return static_cast<int>(params_.charts.size()); }
  const Box& chart(int i) const { return params_.charts.at(i); }
  std::vector<int> charts_at(const Vec& sigma) const;
  bool in_overlap(int i, int j, const Vec& sigma) const;

  const FamilyPtr& frame(int i) const { return frames_.at(i); }
  const FamilyPtr& transition(int i, int j) const { return transitions_.at(i).at(j); }
  // Group part of beta_ij(sigma) at m.
  Mat transition_value(int i, int j, const Vec& sigma, const Vec& m) const;
  Vec act(const Mat& a, const Vec& m) const { return a * m; }
  // Per-chart gauge families gamma_i = k_i . gamma0 . k_i^{-1}; they obey the
  // gluing relations with the cocycle.
  std::vector<FamilyPtr> conjugated_gauge(const FamilyPtr& gamma0) const;

 private:
  ScenarioParams params_;
  MatrixGroup group_;
  std::vector<FamilyPtr> frames_;
  std::vector<std::vector<FamilyPtr>> transitions_;
};

MatrixGroup group_by_name(const std::string& name);

// Two charts on [-1,1]^2, abelian, constant in m.
ScenarioParams so2_params();
// Three charts on [-1,1]^2 with a triple overlap; frames depend on |m|^2.
ScenarioParams so3_params();
ScenarioParams single_chart_params(const std::string& group);
ScenarioParams scenario_params_by_name(const std::string& name);

struct Partition {
  std::vector<std::function<double(const Vec&)>> h;
};

// Normalised products of exp(-1/(t(1-t))) bumps on each chart box; positive on
// the open box.
Partition box_partition(const MatrixGroupScenario& scenario);

}  // namespace groupoidal

#endif
