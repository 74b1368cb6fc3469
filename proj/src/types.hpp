// Core numeric types. Matrices are dense complex, row-major.
#pragma once

#include <Eigen/Dense>
#include <complex>

namespace lchs {

using Complex = std::complex<double>;

using Matrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;
using RealVector = Eigen::VectorXd;

constexpr double kHermitianTol = 1e-12;

}  // namespace lchs
