#pragma once

#include <Eigen/Dense>

namespace steklov {

struct EigenPairs {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // columns match values
};

/// All eigenpairs of the symmetric matrix A: Householder tridiagonalization
/// followed by implicit-shift QL with accumulated transforms.
EigenPairs selfadjoint_eigen(const Eigen::MatrixXd& A);

/// All eigenpairs of S x = lambda B x with S symmetric and B symmetric
/// positive definite, reduced through the Cholesky factor of B. Returned
/// vectors are B-orthonormal. Throws FactorizationFailure when B is not
/// positive definite.
EigenPairs generalized_selfadjoint_eigen(const Eigen::MatrixXd& S, const Eigen::MatrixXd& B);

}  // namespace steklov
