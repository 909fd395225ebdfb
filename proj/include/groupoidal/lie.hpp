#ifndef GROUPOIDAL_LIE_HPP
#define GROUPOIDAL_LIE_HPP

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace groupoidal {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

// Scaling and squaring with a diagonal Pade approximant of order 6.
Mat expm(const Mat& x);

Mat so2_generator();
std::vector<Mat> so2_basis();
// L_x, L_y, L_z with [L_x, L_y] = L_z.
std::vector<Mat> so3_basis();
Mat rot2(double angle);
Mat rodrigues(const Eigen::Vector3d& axis, double angle);

Mat bracket(const Mat& x, const Mat& y);
// Least-squares coefficients of x in the basis.
Vec algebra_coefficients(const std::vector<Mat>& basis, const Mat& x);
Mat from_coefficients(const std::vector<Mat>& basis, const Vec& c);
// c[a][b][k]: [t_a, t_b] = c[a][b][k] t_k.
std::vector<std::vector<Vec>> structure_constants(const std::vector<Mat>& basis);

struct MatrixGroup {
  std::string name;
  int n = 0;
  std::vector<Mat> basis;
};

MatrixGroup so2_group();
MatrixGroup so3_group();

}  // namespace groupoidal

#endif
