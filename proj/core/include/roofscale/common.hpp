#pragma once

#include <complex>

#include <Eigen/Dense>

namespace roofscale {

using cplx = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

}  // namespace roofscale
