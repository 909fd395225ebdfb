#ifndef GROUPOIDAL_FAMILIES_HPP
#define GROUPOIDAL_FAMILIES_HPP

#include <memory>

#include "groupoidal/lie.hpp"

namespace groupoidal {

struct NewtonOptions {
  double tolerance = 1e-12;
  int max_iterations = 50;
};

// A smooth family sigma -> bisection of G x R^n, m -> (g(sigma, m), m).
class BisectionFamily {
 public:
  virtual ~BisectionFamily() = default;
  virtual Mat value(const Vec& sigma, const Vec& m) const = 0;
  // Directional derivatives of g in sigma along u and in m along w.
  virtual Mat d_sigma(const Vec& sigma, const Vec& m, const Vec& u) const = 0;
  virtual Mat d_m(const Vec& sigma, const Vec& m, const Vec& w) const = 0;

  Vec shadow(const Vec& sigma, const Vec& m) const { return value(sigma, m) * m; }
  // Jacobian of the shadow m -> g(sigma, m).m.
  Mat shadow_jacobian(const Vec& sigma, const Vec& m) const;
  // Newton iteration from x; NumericError when it does not converge.
  virtual Vec shadow_inverse(const Vec& sigma, const Vec& x) const;

  NewtonOptions newton;
};

using FamilyPtr = std::shared_ptr<const BisectionFamily>;

class ConstantFamily : public BisectionFamily {
 public:
  explicit ConstantFamily(Mat g) : g_(std::move(g)), inv_(g_.inverse()) {}
  Mat value(const Vec&, const Vec&) const override { return g_; }
  Mat d_sigma(const Vec&, const Vec&, const Vec&) const override { return Mat::Zero(g_.rows(), g_.cols()); }
  Mat d_m(const Vec&, const Vec&, const Vec&) const override { return Mat::Zero(g_.rows(), g_.cols()); }
  Vec shadow_inverse(const Vec&, const Vec& x) const override { return inv_ * x; }

 private:
  Mat g_, inv_;
};

// theta(sigma, r) = offset + slope.sigma + amplitude sin(frequency.sigma) + radial r.
struct Phase {
  double offset = 0, amplitude = 0, radial = 0;
  Vec slope, frequency;

  double value(const Vec& sigma, double r) const;
  Vec gradient(const Vec& sigma) const;
};

// g(sigma, m) = exp(theta(sigma, |m|^2) X) C with X antisymmetric and C orthogonal,
// so the shadow preserves |m| and inverts in closed form.
class OneParameterFamily : public BisectionFamily {
 public:
  OneParameterFamily(Mat generator, Phase phase, Mat c);
  Mat value(const Vec& sigma, const Vec& m) const override;
  Mat d_sigma(const Vec& sigma, const Vec& m, const Vec& u) const override;
  Mat d_m(const Vec& sigma, const Vec& m, const Vec& w) const override;
  Vec shadow_inverse(const Vec& sigma, const Vec& x) const override;

 private:
  Mat x_, c_;
  Phase phase_;
};

// (b2 . b1)(m) = b2(shadow(b1)(m)) b1(m).
class ProductFamily : public BisectionFamily {
 public:
  ProductFamily(FamilyPtr b2, FamilyPtr b1) : b2_(std::move(b2)), b1_(std::move(b1)) {}
  Mat value(const Vec& sigma, const Vec& m) const override;
  Mat d_sigma(const Vec& sigma, const Vec& m, const Vec& u) const override;
  Mat d_m(const Vec& sigma, const Vec& m, const Vec& w) const override;
  Vec shadow_inverse(const Vec& sigma, const Vec& x) const override;

 private:
  FamilyPtr b2_, b1_;
};

// b^{-1}(x) = g(sigma, m)^{-1} with x = g(sigma, m).m; derivatives by implicit differentiation.
class InverseFamily : public BisectionFamily {
 public:
  explicit InverseFamily(FamilyPtr b) : b_(std::move(b)) {}
  Mat value(const Vec& sigma, const Vec& x) const override;
  Mat d_sigma(const Vec& sigma, const Vec& x, const Vec& u) const override;
  Mat d_m(const Vec& sigma, const Vec& x, const Vec& w) const override;
  Vec shadow_inverse(const Vec& sigma, const Vec& m) const override { return b_->shadow(sigma, m); }

 private:
  FamilyPtr b_;
};

FamilyPtr identity_family(int n);
FamilyPtr product(FamilyPtr b2, FamilyPtr b1);
FamilyPtr inverse(FamilyPtr b);

}  // namespace groupoidal

#endif
