#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace rcork {

using Complex = std::complex<double>;
using Index = Eigen::Index;

using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using SpMat = Eigen::SparseMatrix<Complex, Eigen::ColMajor>;

/// Default size cap for explicitly assembled (dense) test-scale objects.
/// Overridden by the RCORK_DENSE_CAP environment variable.
Index dense_cap();

}  // namespace rcork
