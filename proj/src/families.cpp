#include "groupoidal/families.hpp"

#include <cmath>

#include "groupoidal/errors.hpp"

namespace groupoidal {

Mat BisectionFamily::shadow_jacobian(const Vec& sigma, const Vec& m) const {
  const Eigen::Index n = m.size();
  const Mat g = value(sigma, m);
  Mat jac(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    Vec e = Vec::Unit(n, k);
    jac.col(k) = d_m(sigma, m, e) * m + g * e;
  }
  return jac;
}

Vec BisectionFamily::shadow_inverse(const Vec& sigma, const Vec& x) const {
  Vec m = x;
  for (int it = 0; it < newton.max_iterations; ++it) {
    Vec r = shadow(sigma, m) - x;
    if (r.norm() <= newton.tolerance * std::max(1.0, x.norm())) return m;
    m -= shadow_jacobian(sigma, m).partialPivLu().solve(r);
    if (!m.allFinite()) break;
  }
  throw NumericError("shadow inversion did not converge");
}

double Phase::value(const Vec& sigma, double r) const {
  double v = offset + radial * r;
  if (slope.size()) v += slope.dot(sigma);
  if (frequency.size()) v += amplitude * std::sin(frequency.dot(sigma));
  return v;
}

Vec Phase::gradient(const Vec& sigma) const {
  Vec g = Vec::Zero(sigma.size());
  if (slope.size()) g += slope;
  if (frequency.size()) g += amplitude * std::cos(frequency.dot(sigma)) * frequency;
  return g;
}

OneParameterFamily::OneParameterFamily(Mat generator, Phase phase, Mat c)
    : x_(std::move(generator)), c_(std::move(c)), phase_(std::move(phase)) {}

Mat OneParameterFamily::value(const Vec& sigma, const Vec& m) const {
  return expm(phase_.value(sigma, m.squaredNorm()) * x_) * c_;
}

Mat OneParameterFamily::d_sigma(const Vec& sigma, const Vec& m, const Vec& u) const {
  return phase_.gradient(sigma).dot(u) * x_ * value(sigma, m);
}

Mat OneParameterFamily::d_m(const Vec& sigma, const Vec& m, const Vec& w) const {
  return phase_.radial * 2.0 * m.dot(w) * x_ * value(sigma, m);
}

Vec OneParameterFamily::shadow_inverse(const Vec& sigma, const Vec& x) const {
  return c_.transpose() * (expm(-phase_.value(sigma, x.squaredNorm()) * x_) * x);
}

Mat ProductFamily::value(const Vec& sigma, const Vec& m) const {
  return b2_->value(sigma, b1_->shadow(sigma, m)) * b1_->value(sigma, m);
}

Mat ProductFamily::d_sigma(const Vec& sigma, const Vec& m, const Vec& u) const {
  const Mat g1 = b1_->value(sigma, m);
  const Vec x1 = g1 * m;
  const Mat dg1 = b1_->d_sigma(sigma, m, u);
  const Vec dx1 = dg1 * m;
  return (b2_->d_sigma(sigma, x1, u) + b2_->d_m(sigma, x1, dx1)) * g1 + b2_->value(sigma, x1) * dg1;
}

Mat ProductFamily::d_m(const Vec& sigma, const Vec& m, const Vec& w) const {
  const Mat g1 = b1_->value(sigma, m);
  const Vec x1 = g1 * m;
  const Mat dg1 = b1_->d_m(sigma, m, w);
  const Vec dx1 = dg1 * m + g1 * w;
  return b2_->d_m(sigma, x1, dx1) * g1 + b2_->value(sigma, x1) * dg1;
}

Vec ProductFamily::shadow_inverse(const Vec& sigma, const Vec& x) const {
  return b1_->shadow_inverse(sigma, b2_->shadow_inverse(sigma, x));
}

Mat InverseFamily::value(const Vec& sigma, const Vec& x) const {
  return b_->value(sigma, b_->shadow_inverse(sigma, x)).inverse();
}

Mat InverseFamily::d_sigma(const Vec& sigma, const Vec& x, const Vec& u) const {
  const Vec m = b_->shadow_inverse(sigma, x);
  const Mat g = b_->value(sigma, m);
  const Mat gs = b_->d_sigma(sigma, m, u);
  const Vec dm = b_->shadow_jacobian(sigma, m).partialPivLu().solve(-(gs * m));
  const Mat ginv = g.inverse();
  return -ginv * (gs + b_->d_m(sigma, m, dm)) * ginv;
}

Mat InverseFamily::d_m(const Vec& sigma, const Vec& x, const Vec& w) const {
  const Vec m = b_->shadow_inverse(sigma, x);
  const Mat g = b_->value(sigma, m);
  const Vec dm = b_->shadow_jacobian(sigma, m).partialPivLu().solve(w);
  const Mat ginv = g.inverse();
  return -ginv * b_->d_m(sigma, m, dm) * ginv;
}

FamilyPtr identity_family(int n) { return std::make_shared<ConstantFamily>(Mat::Identity(n, n)); }
FamilyPtr product(FamilyPtr b2, FamilyPtr b1) {
  return std::make_shared<ProductFamily>(std::move(b2), std::move(b1));
}
FamilyPtr inverse(FamilyPtr b) { return std::make_shared<InverseFamily>(std::move(b)); }

}  // namespace groupoidal
