#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <random>

#include "steklov/dense_eig.hpp"
#include "steklov/common.hpp"

using namespace steklov;

namespace {

Eigen::MatrixXd random_symmetric(std::mt19937& rng, int n, double scale = 1.0) {
  std::normal_distribution<double> dist(0.0, scale);
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = dist(rng);
  }
  return 0.5 * (a + a.transpose());
}

Eigen::MatrixXd random_spd(std::mt19937& rng, int n) {
  const Eigen::MatrixXd a = random_symmetric(rng, n);
  return a * a.transpose() + 0.5 * static_cast<double>(n) * Eigen::MatrixXd::Identity(n, n);
}

}  // namespace

TEST_CASE("standard symmetric eigensolve matches the reference") {
  std::mt19937 rng(1234);
  for (int n : {1, 2, 3, 10, 40}) {
    const Eigen::MatrixXd a = random_symmetric(rng, n);
    const auto ours = selfadjoint_eigen(a);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ref(a);
    REQUIRE(ref.info() == Eigen::Success);
    const double scale = std::max(1.0, ref.eigenvalues().cwiseAbs().maxCoeff());
    for (int i = 0; i < n; ++i) {
      CHECK(std::abs(ours.values(i) - ref.eigenvalues()(i)) <= 1e-12 * scale);
      const Eigen::VectorXd res = a * ours.vectors.col(i) - ours.values(i) * ours.vectors.col(i);
      CHECK(res.norm() <= 1e-11 * scale);
    }
    // Orthonormal vectors.
    const Eigen::MatrixXd gram =
        ours.vectors.transpose() * ours.vectors - Eigen::MatrixXd::Identity(n, n);
    CHECK(gram.cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("eigenvalues of known matrices") {
  Eigen::MatrixXd a(2, 2);
  a << 2.0, 1.0, 1.0, 2.0;
  const auto pairs = selfadjoint_eigen(a);
  CHECK(pairs.values(0) == doctest::Approx(1.0));
  CHECK(pairs.values(1) == doctest::Approx(3.0));
}

TEST_CASE("generalized pencil matches the reference solver") {
  std::mt19937 rng(987);
  for (int n : {2, 5, 25, 60}) {
    const Eigen::MatrixXd s = random_symmetric(rng, n);
    const Eigen::MatrixXd b = random_spd(rng, n);
    const auto ours = generalized_selfadjoint_eigen(s, b);
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ref(s, b);
    REQUIRE(ref.info() == Eigen::Success);
    const double scale = std::max(1.0, ref.eigenvalues().cwiseAbs().maxCoeff());
    for (int i = 0; i < n; ++i) {
      CHECK(std::abs(ours.values(i) - ref.eigenvalues()(i)) <= 1e-11 * scale);
      const Eigen::VectorXd res =
          s * ours.vectors.col(i) - ours.values(i) * (b * ours.vectors.col(i));
      CHECK(res.norm() <= 1e-9 * scale * std::max(1.0, b.norm()));
    }
    // B-orthonormality.
    const Eigen::MatrixXd gram =
        ours.vectors.transpose() * b * ours.vectors - Eigen::MatrixXd::Identity(n, n);
    CHECK(gram.cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("positive semidefinite pencil keeps the zero mode") {
  // S has the constant vector in its kernel, as the boundary reduction does.
  std::mt19937 rng(555);
  const int n = 20;
  Eigen::MatrixXd g = random_symmetric(rng, n);
  Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
  // Project constants out of a random SPD matrix to build a PSD S with S 1 = 0.
  Eigen::MatrixXd p = Eigen::MatrixXd::Identity(n, n) - ones * ones.transpose() / n;
  Eigen::MatrixXd s = p * (g * g.transpose()) * p;
  const Eigen::MatrixXd b = random_spd(rng, n);
  const auto pairs = generalized_selfadjoint_eigen(s, b);
  CHECK(std::abs(pairs.values(0)) <= 1e-10 * pairs.values.cwiseAbs().maxCoeff());
  for (int i = 1; i < n; ++i) CHECK(pairs.values(i) > -1e-10);
}

TEST_CASE("indefinite mass matrix is rejected") {
  Eigen::MatrixXd s = Eigen::MatrixXd::Identity(3, 3);
  Eigen::MatrixXd b = Eigen::MatrixXd::Identity(3, 3);
  b(2, 2) = -1.0;
  CHECK_THROWS_AS(generalized_selfadjoint_eigen(s, b), Error);
}
