#include <cmath>

#include "doctest.h"
#include "groupoidal/errors.hpp"
#include "groupoidal/families.hpp"

using namespace groupoidal;

namespace {

Vec v2(double a, double b) { return (Vec(2) << a, b).finished(); }
Vec v3(double a, double b, double c) { return (Vec(3) << a, b, c).finished(); }

Phase make_phase(double offset, Vec slope, double amplitude, Vec frequency, double radial) {
  Phase p;
  p.offset = offset;
  p.slope = std::move(slope);
  p.amplitude = amplitude;
  p.frequency = std::move(frequency);
  p.radial = radial;
  return p;
}

// Central differences of the group part.
Mat fd_sigma(const BisectionFamily& b, const Vec& s, const Vec& m, const Vec& u, double h = 1e-5) {
  return (b.value(s + h * u, m) - b.value(s - h * u, m)) / (2 * h);
}
Mat fd_m(const BisectionFamily& b, const Vec& s, const Vec& m, const Vec& w, double h = 1e-5) {
  return (b.value(s, m + h * w) - b.value(s, m - h * w)) / (2 * h);
}

class ZeroFamily : public BisectionFamily {
 public:
  Mat value(const Vec&, const Vec& m) const override { return Mat::Zero(m.size(), m.size()); }
  Mat d_sigma(const Vec&, const Vec& m, const Vec&) const override { return Mat::Zero(m.size(), m.size()); }
  Mat d_m(const Vec&, const Vec& m, const Vec&) const override { return Mat::Zero(m.size(), m.size()); }
};

}  // namespace

TEST_CASE("matrix exponential against closed forms") {
  for (double angle : {0.0, 0.3, -1.7, 5.0, 40.0}) {
    CHECK((expm(angle * so2_generator()) - rot2(angle)).norm() < 1e-12);
    Eigen::Vector3d axis(0.3, -0.5, 0.8);
    Mat x = angle * from_coefficients(so3_basis(), axis.normalized());
    CHECK((expm(x) - rodrigues(axis, angle)).norm() < 1e-12);
    CHECK((expm(x) * expm(-x) - Mat::Identity(3, 3)).norm() < 1e-12);
  }
  Mat nil = Mat::Zero(3, 3);
  nil(0, 1) = 2.0, nil(1, 2) = 3.0;
  Mat expected = Mat::Identity(3, 3) + nil + nil * nil / 2;
  CHECK((expm(nil) - expected).norm() < 1e-13);
}

TEST_CASE("so3 structure constants") {
  auto b = so3_basis();
  CHECK((bracket(b[0], b[1]) - b[2]).norm() < 1e-15);
  CHECK((bracket(b[1], b[2]) - b[0]).norm() < 1e-15);
  auto c = structure_constants(b);
  CHECK(c[0][1](2) == doctest::Approx(1.0));
  CHECK(c[1][0](2) == doctest::Approx(-1.0));
  CHECK(c[0][0].norm() < 1e-15);
  Vec coeff = algebra_coefficients(b, 0.5 * b[0] - 2 * b[2]);
  CHECK((coeff - v3(0.5, 0, -2)).norm() < 1e-13);
}

TEST_CASE("one parameter family derivatives and shadow inverse") {
  auto b3 = so3_basis();
  OneParameterFamily f(b3[0] + 0.5 * b3[2], make_phase(0.2, v2(0.7, -0.3), 0.4, v2(1.1, 2.0), 0.35),
                       rodrigues(Eigen::Vector3d(1, 1, 0), 0.6));
  Vec s = v2(0.3, -0.2), m = v3(0.4, -1.1, 0.7);
  for (const Vec& dir : {v2(1, 0), v2(0.3, -2.0)})
    CHECK((f.d_sigma(s, m, dir) - fd_sigma(f, s, m, dir)).norm() < 1e-8);
  for (const Vec& w : {v3(1, 0, 0), v3(-0.2, 0.5, 1.3)})
    CHECK((f.d_m(s, m, w) - fd_m(f, s, m, w)).norm() < 1e-8);
  Vec x = f.shadow(s, m);
  CHECK((f.shadow_inverse(s, x) - m).norm() < 1e-12);
  // The generic Newton solver agrees with the closed form.
  CHECK((f.BisectionFamily::shadow_inverse(s, x) - m).norm() < 1e-10);
}

TEST_CASE("product and inverse families") {
  auto b3 = so3_basis();
  auto f1 = std::make_shared<OneParameterFamily>(b3[2], make_phase(0.1, v2(0.5, 0.2), 0.3, v2(1, 1), 0.2),
                                                 Mat::Identity(3, 3));
  auto f2 = std::make_shared<OneParameterFamily>(b3[0], make_phase(-0.3, v2(0.1, 0.9), 0.2, v2(2, -1), -0.4),
                                                 Mat::Identity(3, 3));
  Vec s = v2(-0.4, 0.6), m = v3(0.9, 0.3, -0.5), u = v2(0.7, -1.2), w = v3(0.2, -0.4, 1.0);
  for (const FamilyPtr& f : {product(f2, f1), inverse(f1), inverse(product(f2, f1)),
                             product(f1, product(f2, inverse(f1)))}) {
    CHECK((f->d_sigma(s, m, u) - fd_sigma(*f, s, m, u)).norm() < 1e-8);
    CHECK((f->d_m(s, m, w) - fd_m(*f, s, m, w)).norm() < 1e-8);
    CHECK((f->shadow_inverse(s, f->shadow(s, m)) - m).norm() < 1e-12);
  }
  // Bisection product: (b2.b1)(m) = b2(b1 |> m) b1(m).
  Mat expected = f2->value(s, f1->shadow(s, m)) * f1->value(s, m);
  CHECK((product(f2, f1)->value(s, m) - expected).norm() < 1e-14);
  // b . b^{-1} is the identity bisection.
  CHECK((product(f1, inverse(f1))->value(s, m) - Mat::Identity(3, 3)).norm() < 1e-12);
}

TEST_CASE("newton failure is a numeric error") {
  ZeroFamily z;
  CHECK_THROWS_AS(z.shadow_inverse(v2(0, 0), v2(1, 0)), NumericError);
  ConstantFamily c(rot2(0.3));
  c.newton.max_iterations = 0;
  CHECK_THROWS_AS(c.BisectionFamily::shadow_inverse(v2(0, 0), v2(1, 0)), NumericError);
}
