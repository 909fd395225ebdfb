#include "groupoidal/lie.hpp"

#include <cmath>

namespace groupoidal {

Mat expm(const Mat& x) {
  const int n = static_cast<int>(x.rows());
  const double norm = x.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const Mat a = x / std::ldexp(1.0, squarings);
  // Pade [6/6] coefficients c_k = (12-k)! 6! / (12! k! (6-k)!).
  static const double c[] = {1.0,
                             1.0 / 2,
                             5.0 / 44,
                             1.0 / 66,
                             1.0 / 792,
                             1.0 / 15840,
                             1.0 / 665280};
  const Mat id = Mat::Identity(n, n);
  const Mat a2 = a * a, a4 = a2 * a2, a6 = a4 * a2;
  const Mat even = c[0] * id + c[2] * a2 + c[4] * a4 + c[6] * a6;
  const Mat odd = a * (c[1] * id + c[3] * a2 + c[5] * a4);
  Mat r = (even - odd).partialPivLu().solve(even + odd);
  for (int k = 0; k < squarings; ++k) r = r * r;
  return r;
}

Mat so2_generator() {
  Mat j(2, 2);
  j << 0, -1, 1, 0;
  return j;
}

std::vector<Mat> so2_basis() { return {so2_generator()}; }

std::vector<Mat> so3_basis() {
  std::vector<Mat> b(3, Mat::Zero(3, 3));
  b[0](2, 1) = 1, b[0](1, 2) = -1;
  b[1](0, 2) = 1, b[1](2, 0) = -1;
  b[2](1, 0) = 1, b[2](0, 1) = -1;
  return b;
}

Mat rot2(double angle) {
  Mat r(2, 2);
  r << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  return r;
}

Mat rodrigues(const Eigen::Vector3d& axis, double angle) {
  return Eigen::AngleAxisd(angle, axis.normalized()).toRotationMatrix();
}

Mat bracket(const Mat& x, const Mat& y) { return x * y - y * x; }

Vec algebra_coefficients(const std::vector<Mat>& basis, const Mat& x) {
  const Eigen::Index n2 = x.size();
  Mat design(n2, static_cast<Eigen::Index>(basis.size()));
  for (std::size_t k = 0; k < basis.size(); ++k)
    design.col(static_cast<Eigen::Index>(k)) = basis[k].reshaped();
  return design.colPivHouseholderQr().solve(x.reshaped().eval());
}

Mat from_coefficients(const std::vector<Mat>& basis, const Vec& c) {
  Mat x = Mat::Zero(basis.front().rows(), basis.front().cols());
  for (std::size_t k = 0; k < basis.size(); ++k) x += c(static_cast<Eigen::Index>(k)) * basis[k];
  return x;
}

std::vector<std::vector<Vec>> structure_constants(const std::vector<Mat>& basis) {
  std::vector<std::vector<Vec>> c(basis.size(), std::vector<Vec>(basis.size()));
  for (std::size_t a = 0; a < basis.size(); ++a)
    for (std::size_t b = 0; b < basis.size(); ++b)
      c[a][b] = algebra_coefficients(basis, bracket(basis[a], basis[b]));
  return c;
}

MatrixGroup so2_group() { return {"so2", 2, so2_basis()}; }
MatrixGroup so3_group() { return {"so3", 3, so3_basis()}; }

}  // namespace groupoidal
