#include "groupoidal/scenario.hpp"

#include <cmath>
#include <limits>

#include "groupoidal/errors.hpp"

namespace groupoidal {

bool Box::contains(const Vec& sigma) const { return margin(sigma) >= 0; }

double Box::margin(const Vec& sigma) const {
  double m = std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 0; k < sigma.size(); ++k)
    m = std::min({m, sigma(k) - lo(k), hi(k) - sigma(k)});
  return m;
}

std::optional<Box> intersect(const Box& a, const Box& b) {
  Box r{a.lo.cwiseMax(b.lo), a.hi.cwiseMin(b.hi)};
  if ((r.hi.array() < r.lo.array()).any()) return std::nullopt;
  return r;
}

MatrixGroup group_by_name(const std::string& name) {
  if (name == "so2") return so2_group();
  if (name == "so3") return so3_group();
  throw InputError("unknown group: " + name);
}

MatrixGroupScenario::MatrixGroupScenario(ScenarioParams params)
    : params_(std::move(params)), group_(group_by_name(params_.group)) {
  const int k = num_charts();
  if (k == 0) throw InputError("scenario has no charts");
  if (static_cast<int>(params_.frames.size()) != k) throw InputError("one frame per chart required");
  const auto dim = static_cast<Eigen::Index>(group_.basis.size());
  for (const auto& box : params_.charts)
    if (box.lo.size() != params_.base_dim || box.hi.size() != params_.base_dim)
      throw InputError("chart box has wrong dimension");
  for (const auto& fr : params_.frames) {
    if (fr.axis.size() != dim) throw InputError("frame axis has wrong dimension");
    auto family = std::make_shared<OneParameterFamily>(from_coefficients(group_.basis, fr.axis),
                                                       fr.phase, Mat::Identity(n(), n()));
    family->newton = params_.config.newton;
    frames_.push_back(family);
  }
  transitions_.assign(k, std::vector<FamilyPtr>(k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      transitions_[i][j] = i == j ? identity_family(n()) : product(frames_[i], inverse(frames_[j]));
}

std::vector<int> MatrixGroupScenario::charts_at(const Vec& sigma) const {
  std::vector<int> out;
  for (int i = 0; i < num_charts(); ++i)
    if (chart(i).contains(sigma)) out.push_back(i);
  return out;
}

bool MatrixGroupScenario::in_overlap(int i, int j, const Vec& sigma) const {
  return chart(i).contains(sigma) && chart(j).contains(sigma);
}

Mat MatrixGroupScenario::transition_value(int i, int j, const Vec& sigma, const Vec& m) const {
  return transition(i, j)->value(sigma, m);
}

std::vector<FamilyPtr> MatrixGroupScenario::conjugated_gauge(const FamilyPtr& gamma0) const {
  std::vector<FamilyPtr> out;
  for (int i = 0; i < num_charts(); ++i) out.push_back(product(frames_[i], product(gamma0, inverse(frames_[i]))));
  return out;
}

namespace {

Vec vec(std::initializer_list<double> v) {
  Vec out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index k = 0;
  for (double x : v) out(k++) = x;
  return out;
}

Phase phase(double offset, Vec slope, double amplitude, Vec frequency, double radial) {
  Phase p;
  p.offset = offset;
  p.slope = std::move(slope);
  p.amplitude = amplitude;
  p.frequency = std::move(frequency);
  p.radial = radial;
  return p;
}

}  // namespace

ScenarioParams so2_params() {
  ScenarioParams p;
  p.name = "so2";
  p.group = "so2";
  p.charts = {{vec({-1, -1}), vec({0.4, 1})}, {vec({-0.4, -1}), vec({1, 1})}};
  p.frames = {{vec({1}), phase(0.0, vec({0.3, 0.0}), 0.0, vec({0, 0}), 0.0)},
              {vec({1}), phase(0.7, vec({-0.2, 0.5}), 0.4, vec({1.3, 0.6}), 0.0)}};
  return p;
}

ScenarioParams so3_params() {
  ScenarioParams p;
  p.name = "so3";
  p.group = "so3";
  p.charts = {{vec({-1, -1}), vec({0.4, 1})},
              {vec({-0.4, -1}), vec({1, 0.4})},
              {vec({-0.4, -0.4}), vec({1, 1})}};
  p.frames = {{vec({0, 0, 1}), phase(0.2, vec({0.5, -0.3}), 0.3, vec({1.1, 0.7}), 0.15)},
              {vec({1, 0, 0}), phase(-0.4, vec({0.2, 0.6}), 0.5, vec({0.4, 1.7}), -0.1)},
              {vec({0.6, 0.8, 0}), phase(0.9, vec({-0.7, 0.1}), 0.2, vec({2.0, -0.5}), 0.25)}};
  return p;
}

ScenarioParams single_chart_params(const std::string& group) {
  ScenarioParams p;
  p.name = "single-" + group;
  p.group = group;
  const auto dim = static_cast<Eigen::Index>(group_by_name(group).basis.size());
  p.charts = {{vec({-1, -1}), vec({1, 1})}};
  p.frames = {{Vec::Unit(dim, 0), Phase{}}};
  return p;
}

ScenarioParams scenario_params_by_name(const std::string& name) {
  if (name == "so2") return so2_params();
  if (name == "so3") return so3_params();
  if (name == "single-so2") return single_chart_params("so2");
  if (name == "single-so3") return single_chart_params("so3");
  throw InputError("unknown scenario: " + name);
}

Partition box_partition(const MatrixGroupScenario& scenario) {
  // Log of the bump product; normalised by log-sum-exp so the ratio survives
  // where every bump underflows.
  auto log_bump = [](const Box& box, const Vec& sigma) {
    double v = 0;
    for (Eigen::Index k = 0; k < sigma.size(); ++k) {
      const double t = (sigma(k) - box.lo(k)) / (box.hi(k) - box.lo(k));
      if (t <= 0 || t >= 1) return -std::numeric_limits<double>::infinity();
      v -= 1.0 / (t * (1 - t));
    }
    return v;
  };
  std::vector<Box> boxes;
  for (int i = 0; i < scenario.num_charts(); ++i) boxes.push_back(scenario.chart(i));
  Partition p;
  for (int i = 0; i < scenario.num_charts(); ++i)
    p.h.push_back([boxes, log_bump, i](const Vec& sigma) {
      const double own = log_bump(boxes[i], sigma);
      if (std::isinf(own)) return 0.0;
      double total = 0;
      for (const auto& b : boxes) total += std::exp(log_bump(b, sigma) - own);
      return 1.0 / total;
    });
  return p;
}

}  // namespace groupoidal
