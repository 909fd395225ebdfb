// Acceptance run: one PASS/FAIL line per criterion, with runtime against its budget.
// Usage: acceptance [criterion...]; no arguments runs all nine.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "groupoidal/atiyah.hpp"
#include "groupoidal/automorphism.hpp"
#include "groupoidal/connection.hpp"

using namespace groupoidal;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
  void require(const ValidationReport& r, const std::string& what) {
    std::size_t evaluated = 0;
    for (const auto& [name, count] : r.evaluated()) evaluated += count;
    require(r.ok() && evaluated > 0, what + (r.ok() ? "" : " (" + r.violations().front().check + ")"));
  }
  void measure(const std::string& name, double value, double bound) {
    detail << ' ' << name << '=' << value;
    require(value < bound, name + " < " + std::to_string(bound));
  }
};

Vec v2(double a, double b) { return (Vec(2) << a, b).finished(); }
Vec v3(double a, double b, double c) { return (Vec(3) << a, b, c).finished(); }

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t seed) : gen(seed) {}
  Vec uniform(const Vec& lo, const Vec& hi) {
    std::uniform_real_distribution<double> d(0, 1);
    Vec out(lo.size());
    for (Eigen::Index k = 0; k < lo.size(); ++k) out(k) = lo(k) + (hi(k) - lo(k)) * d(gen);
    return out;
  }
  Vec cube(int n, double r) { return uniform(Vec::Constant(n, -r), Vec::Constant(n, r)); }
  Mat algebra(const MatrixGroup& g, double r) {
    return from_coefficients(g.basis, cube(static_cast<int>(g.basis.size()), r));
  }
  Mat rotation(const MatrixGroup& g) { return expm(algebra(g, 2.0)); }
};

// 1. Groupoid axioms and structure identities, exhaustively.
void groupoid_identities(Outcome& o) {
  const FiniteGroupoid z2 = make_action_groupoid(z2_swap_action()), pair3 = make_pair_groupoid(3);
  const std::pair<const FiniteGroupoid*, std::pair<int, std::size_t>> cases[] = {{&z2, {4, 2}}, {&pair3, {9, 6}}};
  for (const auto& [g, expect] : cases) {
    o.require(g->num_arrows() == expect.first, "arrow count");
    o.require(enumerate_bisections(*g, 1000).size() == expect.second, "bisection count");
    o.require(validate_groupoid(*g), "groupoid axioms");
    const auto ids = check_structure_identities(*g, 1'000'000);
    o.require(ids, "structure identities");
    o.detail << " identities=" << ids.evaluated().size();
  }
}

// 2. r-equivariant arrow bijections equal the left multiplications.
void commutant(Outcome& o) {
  const FiniteGroupoid z2 = make_action_groupoid(z2_swap_action()), pair3 = make_pair_groupoid(3);
  const std::pair<const FiniteGroupoid*, std::size_t> cases[] = {{&z2, 2}, {&pair3, 6}};
  for (const auto& [g, expect] : cases) {
    const auto r = r_equivariant_commutant(*g, 1'000'000);
    o.detail << " |commutant|=" << r.r_equivariant.size();
    o.require(r.r_equivariant.size() == expect && r.left_mults.size() == expect, "sizes");
    o.require(r.equivariant_equals_left_mults, "commutant equals L(B)");
  }
}

// 3. Bundle battery on the three-point example.
void bundle_battery(Outcome& o) {
  const auto P = three_point_example();
  o.require(P.num_points() == 12 && P.num_shadow_points() == 6, "|P| = 12, |F| = 6");
  o.require(verify_principal_axioms(P), "principal axioms");
  o.require(verify_duck_fibres(P), "duck fibres");
  o.require(verify_bisection_actions(P, enumerate_bisections(P.fibre(), 1000)), "bisection actions");
  // Pointwise agreement of the two bisection actions, independent of the battery.
  std::size_t agree = 0;
  const auto group = enumerate_bisections(P.fibre(), 1000);
  for (const auto& p : P.points())
    for (std::size_t k = 0; k < group.size(); ++k)
      agree += P.b_action(p, group[k]) == P.induced_b_action(p, group[k]);
  o.require(agree == 12 * group.size(), "b_action = induced_b_action");
  o.detail << " |P|=12 |F|=6 pointwise=" << agree;
}

// 4. Atiyah groupoid battery.
void atiyah_battery(Outcome& o) {
  const AtiyahGroupoid at(three_point_example());
  o.require(at.num_elements() == 36, "|At| = 36");
  o.require(validate_groupoid(at.groupoid()), "groupoid validation over F");
  o.require(verify_atiyah_sequence(at), "exact sequence");
  const auto trident = verify_trident(at);
  o.require(trident, "trident");
  o.require(trident.failures("lambda-inverts-psi") == 0 && trident.failures("psi-inverts-lambda") == 0,
            "division inverts the action");
  o.detail << " |At|=" << at.num_elements() << " orbits=" << count_atiyah_orbits(at);
}

// Fibrewise brute force over moment-preserving, right-equivariant permutations.
std::size_t brute_force_gauge_count(const PrincipaloidBundle& P) {
  std::size_t total = 1;
  for (int s = 0; s < P.base().size(); ++s) {
    std::vector<BundlePoint> fibre;
    for (const auto& p : P.points())
      if (p.sigma == s) fibre.push_back(p);
    std::vector<int> perm(fibre.size());
    std::iota(perm.begin(), perm.end(), 0);
    auto slot = [&](const BundlePoint& q) {
      return static_cast<int>(std::find(fibre.begin(), fibre.end(), q) - fibre.begin());
    };
    std::size_t count = 0;
    do {
      bool ok = true;
      for (std::size_t k = 0; k < fibre.size() && ok; ++k) {
        if (P.moment(fibre[perm[k]]) != P.moment(fibre[k])) {
          ok = false;
          break;
        }
        for (Arrow h : P.fibre().arrows_to(P.moment(fibre[k])))
          if (fibre[perm[slot(P.right_action(fibre[k], h))]] != P.right_action(fibre[perm[k]], h)) {
            ok = false;
            break;
          }
      }
      count += ok;
    } while (std::next_permutation(perm.begin(), perm.end()));
    total *= count;
  }
  return total;
}

// 5. Gauge group against vertical projectable bisections.
void gauge_group_battery(Outcome& o) {
  const auto P = three_point_example();
  const AtiyahGroupoid at(P);
  const std::size_t brute = brute_force_gauge_count(P);
  const auto gauge = enumerate_gauge_group(P, 1'000'000);
  o.require(brute == 8 && gauge.size() == 8, "|Gauge| = 8");
  const auto proj = enumerate_projectable_bisections(at, 1'000'000);
  std::set<Bisection> image;
  std::size_t round_trips = 0;
  for (const auto& d : gauge) {
    const Bisection b = automorphism_to_bisection(at, d);
    image.insert(b);
    round_trips += extensionally_equal(P, bisection_to_automorphism(at, b), d) &&
                   automorphism_to_bisection(at, bisection_to_automorphism(at, b)) == b;
    o.require(verify_automorphism(at, d), "induced-map equivariances");
  }
  o.require(round_trips == 8, "round trips");
  o.require(image == std::set<Bisection>(proj.vertical.begin(), proj.vertical.end()), "onto vertical bisections");
  o.require(verify_automorphism_group(at, gauge), "group isomorphism");
  o.detail << " brute=" << brute << " enumerated=" << gauge.size() << " vertical=" << proj.vertical.size()
           << " round_trips=" << round_trips;
}

// 6. Connection suite on the two-chart SO(2) scenario.
void connection_suite(Outcome& o) {
  const MatrixGroupScenario sc(so2_params());
  const auto a = construct_connection(sc, box_partition(sc));
  o.measure("gluing", max_gluing_residual(sc, a, {100, 101}), 1e-7);
  double coherence = 0;
  for (int k = 0; k < sc.num_charts(); ++k)
    coherence = std::max(coherence, max_cocycle_coherence_residual(sc, a.charts[k], {100, 202}));
  o.measure("coherence", coherence, 1e-6);

  Rng rng(303);
  const auto& G = sc.group();
  double projector = 0, intertwining = 0;
  for (int k = 0; k < 100; ++k) {
    const int i = k % sc.num_charts();
    Vec s = rng.uniform(sc.chart(i).lo, sc.chart(i).hi), m = rng.cube(2, 1.5), u = rng.cube(2, 1);
    Mat g = rng.rotation(G);
    BundleTangent v{u, rng.algebra(G, 1) * g, rng.cube(2, 1)};
    auto once = apply_theta(a, i, s, g, m, v);
    auto twice = apply_theta(a, i, s, g, m, once);
    BundleTangent h{u, -a(i, s, g * m, u) * g, Vec::Zero(2)};
    auto horizontal = apply_theta(a, i, s, g, m, h);
    projector = std::max({projector, (once.da - twice.da).norm() + (once.dm - twice.dm).norm() + once.u.norm(),
                          horizontal.da.norm() + horizontal.dm.norm()});
    auto lhs = shadow_theta(a, i, s, g * m, duck_differential_fd(g, m, v, sc.config().fd_step));
    auto rhs = duck_differential_fd(g, m, once, sc.config().fd_step);
    intertwining = std::max(intertwining, (lhs.w - rhs.w).norm() + (lhs.u - rhs.u).norm());
  }
  o.measure("projector", projector, 1e-9);
  o.measure("intertwining", intertwining, 1e-6);
}

// A(sigma, m)(u) = u_1 (L_x + m_2 L_y) + u_2 sin(sigma_1) |m|^2 L_z.
ConnectionField nonabelian_field() {
  const auto b = so3_basis();
  return [b](const Vec& s, const Vec& m, const Vec& u) {
    return (u(0) * (b[0] + m(1) * b[1]) + u(1) * std::sin(s(0)) * m.squaredNorm() * b[2]).eval();
  };
}

// 7. Parallel transport.
void transport(Outcome& o) {
  const MatrixGroupScenario single(single_chart_params("so2"));
  const auto j = constant_connection(single, {so2_generator(), Mat::Zero(2, 2)});
  const Mat a0 = rot2(0.4);
  const auto r = parallel_transport(single, j, straight_path(v2(0, 0), v2(1, 0)), a0, v2(0.3, -0.8), 1e-3);
  o.measure("closed_form", (r.a - expm(-so2_generator()) * a0).norm(), 1e-8);

  const MatrixGroupScenario s3(single_chart_params("so3"));
  const LocalConnectionData field{{nonabelian_field()}};
  BasePath curve;
  curve.sigma = [](double t) { return v2(std::sin(2 * t) - 0.5, t * t - 0.4); };
  curve.velocity = [](double t) { return v2(2 * std::cos(2 * t), 2 * t); };
  const Mat g0 = rodrigues(Eigen::Vector3d(0.2, 1, -0.4), 1.3);
  const Vec n0 = v3(0.5, -0.3, 0.9);
  const auto e1 = parallel_transport(s3, field, curve, g0, n0, 0.1);
  const auto e2 = parallel_transport(s3, field, curve, g0, n0, 0.05);
  const auto e3 = parallel_transport(s3, field, curve, g0, n0, 0.025);
  const double order = std::log2((e1.a - e2.a).norm() / (e2.a - e3.a).norm());
  o.detail << " order=" << order;
  o.require(order >= 3.7 && order <= 4.3, "order in [3.7, 4.3]");

  double equivariance = 0, shadow = 0;
  std::size_t switches = 0;
  for (const auto& params : {so2_params(), so3_params()}) {
    const MatrixGroupScenario sc(params);
    const int n = sc.n();
    const auto a = construct_connection(sc, box_partition(sc));
    const auto path = straight_path(v2(-0.8, -0.7), v2(0.8, 0.75));
    Rng rng(404);
    const Mat start = rng.rotation(sc.group()), c = rng.rotation(sc.group());
    const Vec m0 = rng.cube(n, 1.0);
    const double h = 1e-2;
    const auto base = parallel_transport(sc, a, path, start, m0, h);
    switches += base.switches;
    const auto moved = parallel_transport(sc, a, path, start * c, c.transpose() * m0, h);
    equivariance = std::max(equivariance, (moved.a - base.a * c).norm());
    const auto x = shadow_transport(sc, a, path, start * m0, h);
    const Vec x_end = x.chart == base.chart ? x.x : sc.transition(base.chart, x.chart)->shadow(path.sigma(1), x.x);
    shadow = std::max(shadow, (x_end - base.a * base.m).norm());
  }
  o.require(switches >= 2, "chart switches exercised");
  o.measure("equivariance", equivariance, 1e-6);
  o.measure("shadow", shadow, 1e-6);
}

// 8. Gauge covariance.
void gauge_covariance(Outcome& o) {
  double round = 0, covariance = 0;
  for (const auto& params : {so2_params(), so3_params()}) {
    const MatrixGroupScenario sc(params);
    const int n = sc.n();
    const auto a = construct_connection(sc, box_partition(sc));
    Phase psi;
    psi.offset = -0.2;
    psi.slope = v2(0.6, 0.4);
    psi.amplitude = 0.3;
    psi.frequency = v2(1, 2);
    psi.radial = n == 3 ? 0.2 : 0.0;
    const Mat axis = n == 2 ? so2_generator() : (so3_basis()[0] - 0.7 * so3_basis()[2]).eval();
    const auto gauge = sc.conjugated_gauge(std::make_shared<OneParameterFamily>(axis, psi, Mat::Identity(n, n)));
    std::vector<FamilyPtr> inv;
    for (const auto& g : gauge) inv.push_back(inverse(g));
    const auto ag = gauge_transform_connection(sc, a, gauge);
    const auto back = gauge_transform_connection(sc, ag, inv);

    LocalSection phi;
    for (int i = 0; i < sc.num_charts(); ++i)
      phi.charts.push_back([k = sc.frame(i), n](const Vec& s) {
        Vec m = Vec::Zero(n);
        m(0) = std::cos(s(0)) + 0.2;
        m(1) = s(1) * s(0) - 0.3;
        if (n == 3) m(2) = std::sin(2 * s(1));
        return k->shadow(s, m);
      });
    const auto phig = gauge_transform_section(phi, gauge);

    Rng rng(505);
    for (int k = 0; k < 100; ++k) {
      const int i = k % sc.num_charts();
      Vec s = rng.uniform(sc.chart(i).lo, sc.chart(i).hi), m = rng.cube(n, 1.5), u = rng.cube(2, 1);
      round = std::max(round, algebra_coefficients(sc.group().basis, back(i, s, m, u) - a(i, s, m, u)).norm());
      const Vec lhs = covariant_derivative(sc, ag, phig, i, s, u);
      const Vec rhs = gauge[i]->shadow_jacobian(s, phi.charts[i](s)) * covariant_derivative(sc, a, phi, i, s, u);
      covariance = std::max(covariance, (lhs - rhs).norm());
    }
  }
  o.measure("round_trip", round, 1e-7);
  o.measure("covariance", covariance, 1e-6);

  Phase psi;
  psi.offset = 0.5;
  psi.slope = v2(0.2, 0.1);
  psi.radial = 0.4;
  const OneParameterFamily b(so3_basis()[0] + 0.3 * so3_basis()[1] - 0.2 * so3_basis()[2], psi,
                             rodrigues(Eigen::Vector3d(0, 1, 1), 0.3));
  Rng rng(606);
  double closed = 0;
  for (int k = 0; k < 100; ++k) {
    Vec s = rng.cube(2, 1), r = rng.cube(3, 2);
    Mat rot = rng.rotation(so3_group());
    auto [g, m] = left_mult(b, s, rot, r);
    closed = std::max(closed, (g - b.value(s, rot * r) * rot).norm() + (m - r).norm());
  }
  o.measure("left_mult", closed, 1e-9);
}

double relative(const Mat& exact, const Mat& fd) {
  const double scale = exact.norm();
  return scale == 0 ? fd.norm() : (exact - fd).norm() / scale;
}

// 9. Finite-difference oracles.
void fd_oracles(Outcome& o) {
  for (const auto& params : {so2_params(), so3_params()}) {
    const MatrixGroupScenario sc(params);
    const int n = sc.n();
    const double h = sc.config().fd_step;
    std::vector<std::tuple<int, int, Box>> overlaps;
    for (int i = 0; i < sc.num_charts(); ++i)
      for (int j = 0; j < sc.num_charts(); ++j)
        if (auto box = intersect(sc.chart(i), sc.chart(j)); i != j && box) overlaps.emplace_back(i, j, *box);
    Rng rng(707 + static_cast<std::uint64_t>(n));
    double mc = 0, tc = 0, an = 0;
    for (int k = 0; k < 1000; ++k) {
      const auto& [i, j, box] = overlaps[static_cast<std::size_t>(k) % overlaps.size()];
      const auto& b = *sc.transition(i, j);
      Vec s = rng.uniform(box.lo, box.hi), m = rng.cube(n, 1.5), u = rng.cube(2, 1);
      const Mat x = rng.algebra(sc.group(), 1.0);
      mc = std::max(mc, relative(mc_right(b, s, m, u), mc_right_fd(b, s, m, u, h)));
      tc = std::max(tc, relative(tangent_conjugation(b, s, m, x).x, tangent_conjugation_fd(b, s, m, x, h)));
      an = std::max(an, relative(anchor(x, m), anchor_fd(x, m, h)));
    }
    o.detail << ' ' << params.name << ":";
    o.measure("mc_right", mc, 1e-7);
    o.measure("tangent_conjugation", tc, 1e-7);
    o.measure("anchor", an, 1e-7);
  }
}

struct Criterion {
  const char* name;
  double budget_seconds;
  std::function<void(Outcome&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {"groupoid and bisection identities", 1, groupoid_identities},
      {"commutant equals left multiplications", 1, commutant},
      {"bundle battery", 1, bundle_battery},
      {"atiyah battery", 2, atiyah_battery},
      {"gauge group and projectable bisections", 5, gauge_group_battery},
      {"numeric connection suite", 5, connection_suite},
      {"parallel transport", 5, transport},
      {"gauge covariance", 10, gauge_covariance},
      {"finite-difference oracles", 10, fd_oracles},
  };
  std::vector<int> selected;
  for (int k = 1; k < argc; ++k) selected.push_back(std::atoi(argv[k]));
  if (selected.empty())
    for (int k = 1; k <= 9; ++k) selected.push_back(k);

  int failures = 0;
  for (int k : selected) {
    if (k < 1 || k > 9) {
      std::printf("criterion %d: unknown\n", k);
      return 2;
    }
    const auto& c = criteria[static_cast<std::size_t>(k - 1)];
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.require(seconds < c.budget_seconds, "runtime budget");
    failures += !o.pass;
    std::printf("criterion %d %s: %s (%.3f s of %.0f s)%s\n", k, o.pass ? "PASS" : "FAIL", c.name, seconds,
                c.budget_seconds, o.detail.str().c_str());
  }
  return failures == 0 ? 0 : 1;
}
