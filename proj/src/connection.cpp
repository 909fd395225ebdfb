#include "groupoidal/connection.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "groupoidal/errors.hpp"
#include "groupoidal/parallel.hpp"

namespace groupoidal {

LocalConnectionData zero_connection(const MatrixGroupScenario& scenario) {
  const int n = scenario.n();
  LocalConnectionData a;
  for (int i = 0; i < scenario.num_charts(); ++i)
    a.charts.push_back([n](const Vec&, const Vec&, const Vec&) { return Mat::Zero(n, n).eval(); });
  return a;
}

LocalConnectionData constant_connection(const MatrixGroupScenario& scenario, std::vector<Mat> x) {
  if (static_cast<int>(x.size()) != scenario.base_dim()) throw InputError("one matrix per base direction");
  LocalConnectionData a;
  for (int i = 0; i < scenario.num_charts(); ++i)
    a.charts.push_back([x](const Vec&, const Vec&, const Vec& u) {
      Mat out = Mat::Zero(x.front().rows(), x.front().cols());
      for (std::size_t k = 0; k < x.size(); ++k) out += u(static_cast<Eigen::Index>(k)) * x[k];
      return out;
    });
  return a;
}

Mat mc_right(const BisectionFamily& b, const Vec& sigma, const Vec& m, const Vec& u) {
  return b.d_sigma(sigma, m, u) * b.value(sigma, m).inverse();
}

Mat mc_right_fd(const BisectionFamily& b, const Vec& sigma, const Vec& m, const Vec& u, double h) {
  const Mat dg = (b.value(sigma + h * u, m) - b.value(sigma - h * u, m)) / (2 * h);
  return dg * b.value(sigma, m).inverse();
}

AlgebroidValue tangent_conjugation(const BisectionFamily& b, const Vec& sigma, const Vec& m,
                                   const Mat& x) {
  const Mat g = b.value(sigma, m);
  const Mat ginv = g.inverse();
  return {g * x * ginv + b.d_m(sigma, m, x * m) * ginv, g * m};
}

Mat tangent_conjugation_fd(const BisectionFamily& b, const Vec& sigma, const Vec& m, const Mat& x,
                           double h) {
  const Mat ginv = b.value(sigma, m).inverse();
  auto curve = [&](double t) {
    const Mat e = expm(t * x);
    return (b.value(sigma, e * m) * e * ginv).eval();
  };
  return (curve(h) - curve(-h)) / (2 * h);
}

Vec anchor(const Mat& x, const Vec& m) { return x * m; }

Vec anchor_fd(const Mat& x, const Vec& m, double h) {
  return (expm(h * x) * m - expm(-h * x) * m) / (2 * h);
}

Vec algebroid_bracket(const MatrixGroup& group, const AlgebroidSection& s1,
                      const AlgebroidSection& s2, const Vec& m, double h) {
  const auto& basis = group.basis;
  const auto c = structure_constants(basis);
  const Vec f1 = s1(m), f2 = s2(m);
  // K_B(f)(m) = Df(m)[-t_B m].
  auto k = [&](std::size_t b, const AlgebroidSection& s) {
    const Vec v = -(basis[b] * m);
    return ((s(m + h * v) - s(m - h * v)) / (2 * h)).eval();
  };
  Vec out = Vec::Zero(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t b = 0; b < basis.size(); ++b) {
    const auto bi = static_cast<Eigen::Index>(b);
    out += f2(bi) * k(b, s1) - f1(bi) * k(b, s2);
    for (std::size_t cc = 0; cc < basis.size(); ++cc)
      out -= f1(bi) * f2(static_cast<Eigen::Index>(cc)) * c[b][cc];
  }
  return out;
}

ConnectionField glue(const MatrixGroupScenario& scenario, int i, int j, ConnectionField a_j) {
  FamilyPtr b = scenario.transition(i, j);
  return [b, a_j = std::move(a_j)](const Vec& sigma, const Vec& x, const Vec& u) {
    const Vec m = b->shadow_inverse(sigma, x);
    return (tangent_conjugation(*b, sigma, m, a_j(sigma, m, u)).x - mc_right(*b, sigma, m, u)).eval();
  };
}

double gluing_residual(const MatrixGroupScenario& scenario, const LocalConnectionData& a, int i,
                       int j, const Vec& sigma, const Vec& m, const Vec& u) {
  if (!scenario.in_overlap(i, j, sigma)) throw DomainError("base point outside the chart overlap");
  const auto& b = *scenario.transition(i, j);
  const Mat lhs = a(i, sigma, b.shadow(sigma, m), u);
  const Mat rhs = tangent_conjugation(b, sigma, m, a(j, sigma, m, u)).x - mc_right(b, sigma, m, u);
  return algebra_coefficients(scenario.group().basis, lhs - rhs).norm();
}

namespace {

std::mt19937_64 sample_rng(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t k) {
  std::seed_seq seq{seed, a, b, k};
  return std::mt19937_64(seq);
}

Vec uniform(std::mt19937_64& rng, const Vec& lo, const Vec& hi) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Vec out(lo.size());
  for (Eigen::Index k = 0; k < lo.size(); ++k) out(k) = lo(k) + (hi(k) - lo(k)) * unit(rng);
  return out;
}

Vec normal(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> dist;
  Vec out(n);
  for (int k = 0; k < n; ++k) out(k) = dist(rng);
  return out;
}

struct Sample {
  Vec sigma, m, u;
};

Sample draw(const MatrixGroupScenario& sc, const Box& box, const SampleOptions& o, std::uint64_t a,
            std::uint64_t b, std::uint64_t k) {
  auto rng = sample_rng(o.seed, a, b, k);
  Sample s;
  s.sigma = uniform(rng, box.lo, box.hi);
  s.m = uniform(rng, Vec::Constant(sc.n(), -o.m_radius), Vec::Constant(sc.n(), o.m_radius));
  s.u = normal(rng, sc.base_dim());
  return s;
}

double parallel_max(std::size_t n, const std::function<double(std::size_t)>& f) {
  std::vector<double> out(n, 0.0);
  parallel_for(n, [&](std::size_t k) { out[k] = f(k); });
  return n ? *std::max_element(out.begin(), out.end()) : 0.0;
}

}  // namespace

Vec random_point_in(const Box& box, std::uint64_t seed) {
  auto rng = sample_rng(seed, 0, 0, 0);
  return uniform(rng, box.lo, box.hi);
}

double max_gluing_residual(const MatrixGroupScenario& scenario, const LocalConnectionData& a,
                           const SampleOptions& options) {
  std::vector<std::tuple<int, int, Box>> overlaps;
  for (int i = 0; i < scenario.num_charts(); ++i)
    for (int j = 0; j < scenario.num_charts(); ++j)
      if (i != j)
        if (auto box = intersect(scenario.chart(i), scenario.chart(j))) overlaps.emplace_back(i, j, *box);
  const auto per = static_cast<std::size_t>(options.samples);
  return parallel_max(overlaps.size() * per, [&](std::size_t k) {
    const auto& [i, j, box] = overlaps[k / per];
    Sample s = draw(scenario, box, options, i, j, k % per);
    return gluing_residual(scenario, a, i, j, s.sigma, s.m, s.u);
  });
}

double max_cocycle_coherence_residual(const MatrixGroupScenario& scenario, const ConnectionField& a_k,
                                      const SampleOptions& options) {
  std::vector<std::tuple<int, int, int, Box>> triples;
  const int c = scenario.num_charts();
  for (int i = 0; i < c; ++i)
    for (int j = 0; j < c; ++j)
      for (int k = 0; k < c; ++k) {
        if (i == j || j == k) continue;
        auto ij = intersect(scenario.chart(i), scenario.chart(j));
        if (!ij) continue;
        if (auto box = intersect(*ij, scenario.chart(k))) triples.emplace_back(i, j, k, *box);
      }
  const auto per = static_cast<std::size_t>(options.samples);
  return parallel_max(triples.size() * per, [&](std::size_t n) {
    const auto& [i, j, k, box] = triples[n / per];
    Sample s = draw(scenario, box, options, static_cast<std::uint64_t>(i * c + j), k, n % per);
    const Mat two_step = glue(scenario, i, j, glue(scenario, j, k, a_k))(s.sigma, s.m, s.u);
    const Mat direct = glue(scenario, i, k, a_k)(s.sigma, s.m, s.u);
    return algebra_coefficients(scenario.group().basis, two_step - direct).norm();
  });
}

LocalConnectionData construct_connection(const MatrixGroupScenario& scenario,
                                         const Partition& partition) {
  const int c = scenario.num_charts();
  if (static_cast<int>(partition.h.size()) != c) throw InputError("one partition function per chart");
  for (int i = 0; i < c; ++i)
    for (std::uint64_t k = 0; k < 200; ++k) {
      Vec sigma = random_point_in(scenario.chart(i), 7919 * k + static_cast<std::uint64_t>(i));
      double total = 0;
      bool any = false;
      for (int l = 0; l < c; ++l) {
        const double v = partition.h[l](sigma);
        if (v < 0 || (v != 0 && !scenario.chart(l).contains(sigma)))
          throw InputError("partition function is negative or leaks outside its chart");
        any = any || v > 0;
        total += v;
      }
      if (any && std::abs(total - 1) > 1e-9) throw InputError("partition does not sum to one");
    }
  const int n = scenario.n();
  LocalConnectionData a;
  for (int j = 0; j < c; ++j) {
    std::vector<std::pair<int, ConnectionField>> terms;
    for (int i = 0; i < c; ++i)
      if (i != j && intersect(scenario.chart(i), scenario.chart(j)))
        terms.emplace_back(i, glue(scenario, j, i, [n](const Vec&, const Vec&, const Vec&) {
                             return Mat::Zero(n, n).eval();
                           }));
    a.charts.push_back([n, terms, h = partition.h](const Vec& sigma, const Vec& x, const Vec& u) {
      Mat out = Mat::Zero(n, n);
      for (const auto& [i, field] : terms) {
        const double w = h[i](sigma);
        if (w != 0) out += w * field(sigma, x, u);
      }
      return out;
    });
  }
  return a;
}

BundleTangent apply_theta(const LocalConnectionData& a, int i, const Vec& sigma, const Mat& g,
                          const Vec& m, const BundleTangent& v) {
  return {Vec::Zero(v.u.size()), v.da + a(i, sigma, g * m, v.u) * g, v.dm};
}

BundleTangent christoffel(const LocalConnectionData& a, int i, const Vec& sigma, const Mat& g,
                          const Vec& m, const Vec& u) {
  return {Vec::Zero(u.size()), a(i, sigma, g * m, u) * g, Vec::Zero(m.size())};
}

ShadowTangent shadow_theta(const LocalConnectionData& a, int i, const Vec& sigma, const Vec& x,
                           const ShadowTangent& v) {
  return {Vec::Zero(v.u.size()), v.w + a(i, sigma, x, v.u) * x};
}

ShadowTangent duck_differential_fd(const Mat& g, const Vec& m, const BundleTangent& v, double h) {
  const Mat y = v.da * g.inverse();
  auto x = [&](double t) { return (expm(t * y) * g * (m + t * v.dm)).eval(); };
  return {v.u, (x(h) - x(-h)) / (2 * h)};
}

BasePath straight_path(const Vec& from, const Vec& to) {
  BasePath p;
  p.sigma = [from, to](double t) { return (from + t * (to - from)).eval(); };
  p.velocity = [from, to](double) { return (to - from).eval(); };
  return p;
}

Mat change_chart(const MatrixGroupScenario& scenario, int i, int j, const Vec& sigma, const Mat& a,
                 const Vec& m) {
  return scenario.transition_value(i, j, sigma, a * m) * a;
}

namespace {

int best_chart(const MatrixGroupScenario& sc, const std::vector<Vec>& points) {
  int best = -1;
  double best_margin = -1;
  for (int i = 0; i < sc.num_charts(); ++i) {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& p : points) m = std::min(m, sc.chart(i).margin(p));
    if (m >= 0 && m > best_margin) best = i, best_margin = m;
  }
  return best;
}

template <class State, class Rhs, class Switch>
TransportResult integrate(const MatrixGroupScenario& sc, const BasePath& path, double h, State s,
                          Rhs rhs, Switch change, State& out) {
  if (!(h > 0)) throw InputError("step must be positive");
  TransportResult r;
  std::vector<std::pair<double, int>> legs = path.itinerary;
  const bool automatic = legs.empty();
  int chart = automatic ? best_chart(sc, {path.sigma(0.0)}) : legs.front().second;
  if (chart < 0) throw DomainError("path starts outside every chart");
  r.start_chart = chart;
  auto require = [&](double t) {
    if (!sc.chart(chart).contains(path.sigma(t)))
      throw DomainError("path leaves chart " + std::to_string(chart) + " at t=" + std::to_string(t));
  };
  std::vector<double> breaks{0.0};
  if (!automatic)
    for (std::size_t k = 1; k < legs.size(); ++k) breaks.push_back(legs[k].first);
  breaks.push_back(1.0);
  for (std::size_t leg = 0; leg + 1 < breaks.size(); ++leg) {
    const double t0 = breaks[leg], t1 = breaks[leg + 1];
    if (!automatic && legs[leg].second != chart) {
      const int next = legs[leg].second;
      if (!sc.chart(next).contains(path.sigma(t0)) || !sc.chart(chart).contains(path.sigma(t0)))
        throw DomainError("chart switch outside the overlap");
      s = change(next, chart, path.sigma(t0), s);
      chart = next;
      ++r.switches;
    }
    const auto steps = static_cast<std::size_t>(std::ceil((t1 - t0) / h - 1e-12));
    const double dt = steps ? (t1 - t0) / static_cast<double>(steps) : 0.0;
    for (std::size_t k = 0; k < steps; ++k) {
      const double t = t0 + static_cast<double>(k) * dt;
      if (automatic) {
        const std::vector<Vec> pts{path.sigma(t), path.sigma(t + dt / 2), path.sigma(t + dt)};
        bool inside = true;
        for (const auto& p : pts) inside = inside && sc.chart(chart).contains(p);
        if (!inside) {
          const int next = best_chart(sc, pts);
          if (next < 0) throw DomainError("path exits all charts at t=" + std::to_string(t));
          s = change(next, chart, pts.front(), s);
          chart = next;
          ++r.switches;
        }
      } else {
        require(t);
        require(t + dt / 2);
        require(t + dt);
      }
      const State k1 = rhs(chart, t, s);
      const State k2 = rhs(chart, t + dt / 2, State(s + dt / 2 * k1));
      const State k3 = rhs(chart, t + dt / 2, State(s + dt / 2 * k2));
      const State k4 = rhs(chart, t + dt, State(s + dt * k3));
      s = s + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
      ++r.steps;
    }
  }
  r.chart = chart;
  out = s;
  return r;
}

}  // namespace

TransportResult parallel_transport(const MatrixGroupScenario& scenario, const LocalConnectionData& a,
                                   const BasePath& path, const Mat& a0, const Vec& m0, double h) {
  auto rhs = [&](int i, double t, const Mat& g) {
    return (-a(i, path.sigma(t), g * m0, path.velocity(t)) * g).eval();
  };
  auto change = [&](int i, int j, const Vec& sigma, const Mat& g) {
    return change_chart(scenario, i, j, sigma, g, m0);
  };
  Mat end;
  TransportResult r = integrate<Mat>(scenario, path, h, a0, rhs, change, end);
  r.a = end;
  r.m = m0;
  r.x = end * m0;
  return r;
}

TransportResult shadow_transport(const MatrixGroupScenario& scenario, const LocalConnectionData& a,
                                 const BasePath& path, const Vec& x0, double h) {
  auto rhs = [&](int i, double t, const Vec& x) {
    return (-a(i, path.sigma(t), x, path.velocity(t)) * x).eval();
  };
  auto change = [&](int i, int j, const Vec& sigma, const Vec& x) {
    return scenario.transition(i, j)->shadow(sigma, x);
  };
  Vec end;
  TransportResult r = integrate<Vec>(scenario, path, h, x0, rhs, change, end);
  r.x = end;
  return r;
}

LocalConnectionData gauge_transform_connection(const MatrixGroupScenario& scenario,
                                               const LocalConnectionData& a,
                                               std::vector<FamilyPtr> gauge,
                                               std::optional<BaseMap> base_map) {
  if (static_cast<int>(gauge.size()) != scenario.num_charts()) throw InputError("one gauge family per chart");
  LocalConnectionData out;
  for (int i = 0; i < scenario.num_charts(); ++i) {
    FamilyPtr g = gauge[i];
    ConnectionField ai = a.charts.at(i);
    out.charts.push_back([g, ai, base_map](const Vec& tau, const Vec& x, const Vec& v) {
      Vec sigma = tau, u = v;
      if (base_map) {
        sigma = base_map->f_inv(tau);
        u = base_map->jacobian(sigma).partialPivLu().solve(v);
      }
      const Vec m = g->shadow_inverse(sigma, x);
      return (tangent_conjugation(*g, sigma, m, ai(sigma, m, u)).x - mc_right(*g, sigma, m, u)).eval();
    });
  }
  return out;
}

LocalSection gauge_transform_section(const LocalSection& phi, std::vector<FamilyPtr> gauge) {
  LocalSection out;
  for (std::size_t i = 0; i < phi.charts.size(); ++i) {
    FamilyPtr g = gauge.at(i);
    auto mi = phi.charts[i];
    out.charts.push_back([g, mi](const Vec& sigma) { return g->shadow(sigma, mi(sigma)); });
  }
  return out;
}

Vec covariant_derivative(const MatrixGroupScenario& scenario, const LocalConnectionData& a,
                         const LocalSection& phi, int i, const Vec& sigma, const Vec& u) {
  if (!scenario.chart(i).contains(sigma)) throw DomainError("base point outside the chart");
  const Vec m = phi.charts.at(i)(sigma);
  for (int k : scenario.charts_at(sigma)) {
    if (k == i) continue;
    const Vec glued = scenario.transition(i, k)->shadow(sigma, phi.charts.at(k)(sigma));
    if ((glued - m).norm() > 1e-8 * std::max(1.0, m.norm()))
      throw InputError("section representatives disagree on a chart overlap");
  }
  const double h = scenario.config().fd_step;
  const Vec dm = (phi.charts[i](sigma + h * u) - phi.charts[i](sigma - h * u)) / (2 * h);
  return dm + anchor(a(i, sigma, m, u), m);
}

std::pair<Mat, Vec> compose_arrows(const Mat& a1, const Vec& m1, const Mat& a2, const Vec& m2,
                                   double tolerance) {
  if ((m1 - a2 * m2).norm() > tolerance * std::max(1.0, m1.norm()))
    throw DomainError("arrows are not composable");
  return {a1 * a2, m2};
}

std::pair<Mat, Vec> left_mult(const BisectionFamily& b, const Vec& sigma, const Mat& a, const Vec& m) {
  const Vec target = a * m;
  return compose_arrows(b.value(sigma, target), target, a, m);
}

}  // namespace groupoidal
