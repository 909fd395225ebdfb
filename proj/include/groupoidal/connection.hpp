#ifndef GROUPOIDAL_CONNECTION_HPP
#define GROUPOIDAL_CONNECTION_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "groupoidal/families.hpp"
#include "groupoidal/scenario.hpp"

namespace groupoidal {

// Lie algebra element in the fibre over the base object m.
struct AlgebroidValue {
  Mat x;
  Vec at;
};

// A_i(sigma, m)(u), linear in u.
using ConnectionField = std::function<Mat(const Vec& sigma, const Vec& m, const Vec& u)>;

struct LocalConnectionData {
  std::vector<ConnectionField> charts;
  Mat operator()(int i, const Vec& sigma, const Vec& m, const Vec& u) const {
    return charts.at(i)(sigma, m, u);
  }
};

LocalConnectionData zero_connection(const MatrixGroupScenario& scenario);
// A(sigma, m)(u) = sum_k u_k X_k in every chart.
LocalConnectionData constant_connection(const MatrixGroupScenario& scenario, std::vector<Mat> x);

// (d_u g) g^{-1} at (sigma, m).
Mat mc_right(const BisectionFamily& b, const Vec& sigma, const Vec& m, const Vec& u);
Mat mc_right_fd(const BisectionFamily& b, const Vec& sigma, const Vec& m, const Vec& u, double h);

// Ad_g X + (d_{Xm} g) g^{-1}, tagged at g(m).m.
AlgebroidValue tangent_conjugation(const BisectionFamily& b, const Vec& sigma, const Vec& m,
                                   const Mat& x);
// Central difference of t -> group part of C_b(exp(tX), m).
Mat tangent_conjugation_fd(const BisectionFamily& b, const Vec& sigma, const Vec& m, const Mat& x,
                           double h);

Vec anchor(const Mat& x, const Vec& m);
Vec anchor_fd(const Mat& x, const Vec& m, double h);

// Coefficient fields m -> f(m) in the algebra basis.
using AlgebroidSection = std::function<Vec(const Vec& m)>;
// (f2^B K_B(f1^A) - f1^B K_B(f2^A) - f1^B f2^C c_BC^A) t_A with K_B = -anchor(t_B),
// derivatives by central differences.
Vec algebroid_bracket(const MatrixGroup& group, const AlgebroidSection& s1,
                      const AlgebroidSection& s2, const Vec& m, double h);

// Chart-j data pushed to chart i through the gluing law.
ConnectionField glue(const MatrixGroupScenario& scenario, int i, int j, ConnectionField a_j);
// Coefficient norm of A_i(s, b_ij |> m)(u) - TC_{b_ij}(A_j(s, m)(u)) + mc(b_ij, s, m, u);
// DomainError off the overlap.
double gluing_residual(const MatrixGroupScenario& scenario, const LocalConnectionData& a, int i,
                       int j, const Vec& sigma, const Vec& m, const Vec& u);

struct SampleOptions {
  int samples = 100;
  std::uint64_t seed = 1;
  double m_radius = 1.5;
};

Vec random_point_in(const Box& box, std::uint64_t seed);
// Maximum over random (sigma, m, u) on every ordered overlap.
double max_gluing_residual(const MatrixGroupScenario& scenario, const LocalConnectionData& a,
                           const SampleOptions& options = {});
// Composition i <- j <- k of the law against the direct i <- k law at triple
// overlaps, i = k included.
double max_cocycle_coherence_residual(const MatrixGroupScenario& scenario, const ConnectionField& a_k,
                                      const SampleOptions& options = {});

// A_j = sum_i h_i . (chart-i zero datum glued into chart j); InputError when the
// partition does not sum to one or leaks outside its chart.
LocalConnectionData construct_connection(const MatrixGroupScenario& scenario,
                                         const Partition& partition);

// Tangent (u, da, dm) at (sigma, (a, m)) in a chart of P.
struct BundleTangent {
  Vec u;
  Mat da;
  Vec dm;
};
// Tangent (u, w) at (sigma, x) in a chart of F.
struct ShadowTangent {
  Vec u;
  Vec w;
};

BundleTangent apply_theta(const LocalConnectionData& a, int i, const Vec& sigma, const Mat& g,
                          const Vec& m, const BundleTangent& v);
BundleTangent christoffel(const LocalConnectionData& a, int i, const Vec& sigma, const Mat& g,
                          const Vec& m, const Vec& u);
ShadowTangent shadow_theta(const LocalConnectionData& a, int i, const Vec& sigma, const Vec& x,
                           const ShadowTangent& v);
// Central difference of (sigma, (a, m)) -> (sigma, a.m) along (u, da, dm), moving
// the group part along exp(t da a^{-1}) a.
ShadowTangent duck_differential_fd(const Mat& g, const Vec& m, const BundleTangent& v, double h);

struct BasePath {
  std::function<Vec(double)> sigma;
  std::function<Vec(double)> velocity;
  // (start time, chart) legs; empty selects charts greedily by margin.
  std::vector<std::pair<double, int>> itinerary;
};

BasePath straight_path(const Vec& from, const Vec& to);

struct TransportResult {
  Mat a;
  Vec m;
  Vec x;
  int chart = 0;
  int start_chart = 0;
  std::size_t steps = 0;
  std::size_t switches = 0;
};

// RK4 on a' = -A_i(sigma, a.m)(sigma') a in [0, 1]; chart switches apply
// beta_ij. DomainError when the path leaves every chart.
TransportResult parallel_transport(const MatrixGroupScenario& scenario, const LocalConnectionData& a,
                                   const BasePath& path, const Mat& a0, const Vec& m0, double h);
// RK4 on x' = -A_i(sigma, x)(sigma') x with switches by the shadow of beta_ij.
TransportResult shadow_transport(const MatrixGroupScenario& scenario, const LocalConnectionData& a,
                                 const BasePath& path, const Vec& x0, double h);
// Group part in chart i of a point given in chart j.
Mat change_chart(const MatrixGroupScenario& scenario, int i, int j, const Vec& sigma, const Mat& a,
                 const Vec& m);

struct BaseMap {
  std::function<Vec(const Vec&)> f, f_inv;
  std::function<Mat(const Vec&)> jacobian;
};

// A^Phi_i(f(s), t_*gamma_i(s)(m))(Tf u) = TC_{gamma_i(s)}(A_i(s, m)(u)) - mc(gamma_i, s, m, u).
LocalConnectionData gauge_transform_connection(const MatrixGroupScenario& scenario,
                                               const LocalConnectionData& a,
                                               std::vector<FamilyPtr> gauge,
                                               std::optional<BaseMap> base_map = std::nullopt);

// Per-chart m_i(sigma), glued by the shadow of the cocycle.
struct LocalSection {
  std::vector<std::function<Vec(const Vec&)>> charts;
};

LocalSection gauge_transform_section(const LocalSection& phi, std::vector<FamilyPtr> gauge);
// d_u m_i + anchor(A_i(sigma, m_i)(u))(m_i); InputError when the chart
// representatives at sigma disagree.
Vec covariant_derivative(const MatrixGroupScenario& scenario, const LocalConnectionData& a,
                         const LocalSection& phi, int i, const Vec& sigma, const Vec& u);

// Arrow product (a1, m1).(a2, m2) of G x R^n; DomainError unless m1 = a2.m2.
std::pair<Mat, Vec> compose_arrows(const Mat& a1, const Vec& m1, const Mat& a2, const Vec& m2,
                                   double tolerance = 1e-9);
// L_b(a, m) = b(a.m).(a, m) through the arrow product.
std::pair<Mat, Vec> left_mult(const BisectionFamily& b, const Vec& sigma, const Mat& a, const Vec& m);

}  // namespace groupoidal

#endif
