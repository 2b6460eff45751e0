#include "steklov/dense_eig.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "steklov/common.hpp"

namespace steklov {

namespace {

/// Householder reduction of a symmetric matrix to tridiagonal form with
/// accumulated transformations (EISPACK tred2 lineage). On exit V holds the
/// orthogonal accumulation, d the diagonal, e the subdiagonal (e[0] = 0).
void tridiagonalize(Eigen::MatrixXd& V, Eigen::VectorXd& d, Eigen::VectorXd& e) {
  const int n = static_cast<int>(V.rows());
  for (int j = 0; j < n; ++j) d(j) = V(n - 1, j);

  for (int i = n - 1; i > 0; --i) {
    double scale = 0.0, h = 0.0;
    for (int k = 0; k < i; ++k) scale += std::abs(d(k));
    if (scale == 0.0) {
      e(i) = d(i - 1);
      for (int j = 0; j < i; ++j) {
        d(j) = V(i - 1, j);
        V(i, j) = 0.0;
        V(j, i) = 0.0;
      }
    } else {
      for (int k = 0; k < i; ++k) {
        d(k) /= scale;
        h += d(k) * d(k);
      }
      double f = d(i - 1);
      double g = std::sqrt(h);
      if (f > 0.0) g = -g;
      e(i) = scale * g;
      h -= f * g;
      d(i - 1) = f - g;
      for (int j = 0; j < i; ++j) e(j) = 0.0;

      for (int j = 0; j < i; ++j) {
        f = d(j);
        V(j, i) = f;
        g = e(j) + V(j, j) * f;
        for (int k = j + 1; k <= i - 1; ++k) {
          g += V(k, j) * d(k);
          e(k) += V(k, j) * f;
        }
        e(j) = g;
      }
      f = 0.0;
      for (int j = 0; j < i; ++j) {
        e(j) /= h;
        f += e(j) * d(j);
      }
      const double hh = f / (h + h);
      for (int j = 0; j < i; ++j) e(j) -= hh * d(j);
      for (int j = 0; j < i; ++j) {
        f = d(j);
        g = e(j);
        for (int k = j; k <= i - 1; ++k) V(k, j) -= f * e(k) + g * d(k);
        d(j) = V(i - 1, j);
        V(i, j) = 0.0;
      }
    }
    d(i) = h;
  }

  for (int i = 0; i < n - 1; ++i) {
    V(n - 1, i) = V(i, i);
    V(i, i) = 1.0;
    const double h = d(i + 1);
    if (h != 0.0) {
      for (int k = 0; k <= i; ++k) d(k) = V(k, i + 1) / h;
      for (int j = 0; j <= i; ++j) {
        double g = 0.0;
        for (int k = 0; k <= i; ++k) g += V(k, i + 1) * V(k, j);
        for (int k = 0; k <= i; ++k) V(k, j) -= g * d(k);
      }
    }
    for (int k = 0; k <= i; ++k) V(k, i + 1) = 0.0;
  }
  for (int j = 0; j < n; ++j) {
    d(j) = V(n - 1, j);
    V(n - 1, j) = 0.0;
  }
  V(n - 1, n - 1) = 1.0;
  e(0) = 0.0;
}

/// Implicit-shift QL on the tridiagonal (d, e) updating the accumulated
/// transforms in V (EISPACK tql2 lineage). Eigenvalues land in d, ascending
/// after the final sort done by the caller.
void tridiagonal_ql(Eigen::VectorXd& d, Eigen::VectorXd& e, Eigen::MatrixXd& V) {
  const int n = static_cast<int>(d.size());
  for (int i = 1; i < n; ++i) e(i - 1) = e(i);
  e(n - 1) = 0.0;

  double f = 0.0, tst1 = 0.0;
  const double eps = std::numeric_limits<double>::epsilon();
  for (int l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::abs(d(l)) + std::abs(e(l)));
    int m = l;
    while (m < n && std::abs(e(m)) > eps * tst1) ++m;
    if (m > l) {
      int iter = 0;
      do {
        if (++iter > 64) fail(errc::factorization_failure, "QL iteration did not converge");
        double g = d(l);
        double p = (d(l + 1) - g) / (2.0 * e(l));
        double r = std::hypot(p, 1.0);
        if (p < 0.0) r = -r;
        d(l) = e(l) / (p + r);
        d(l + 1) = e(l) * (p + r);
        const double dl1 = d(l + 1);
        double h = g - d(l);
        for (int i = l + 2; i < n; ++i) d(i) -= h;
        f += h;

        p = d(m);
        double c = 1.0, c2 = c, c3 = c;
        const double el1 = e(l + 1);
        double s = 0.0, s2 = 0.0;
        for (int i = m - 1; i >= l; --i) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e(i);
          h = c * p;
          r = std::hypot(p, e(i));
          e(i + 1) = s * r;
          s = e(i) / r;
          c = p / r;
          p = c * d(i) - s * g;
          d(i + 1) = h + s * (c * g + s * d(i));
          for (int k = 0; k < n; ++k) {
            h = V(k, i + 1);
            V(k, i + 1) = s * V(k, i) + c * h;
            V(k, i) = c * V(k, i) - s * h;
          }
        }
        p = -s * s2 * c3 * el1 * e(l) / dl1;
        e(l) = s * p;
        d(l) = c * p;
      } while (std::abs(e(l)) > eps * tst1);
    }
    d(l) += f;
    e(l) = 0.0;
  }
}

void sort_pairs(EigenPairs& pairs) {
  const int n = static_cast<int>(pairs.values.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return pairs.values(a) < pairs.values(b); });
  Eigen::VectorXd values(n);
  Eigen::MatrixXd vectors(pairs.vectors.rows(), n);
  for (int i = 0; i < n; ++i) {
    values(i) = pairs.values(order[i]);
    vectors.col(i) = pairs.vectors.col(order[i]);
  }
  pairs.values = std::move(values);
  pairs.vectors = std::move(vectors);
}

/// In-place lower Cholesky factor of a symmetric positive definite matrix.
Eigen::MatrixXd cholesky_lower(const Eigen::MatrixXd& B) {
  const int n = static_cast<int>(B.rows());
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    double diag = B(j, j);
    for (int k = 0; k < j; ++k) diag -= L(j, k) * L(j, k);
    if (!(diag > 0.0)) {
      fail(errc::factorization_failure, "matrix is not positive definite");
    }
    L(j, j) = std::sqrt(diag);
    for (int i = j + 1; i < n; ++i) {
      double v = B(i, j);
      for (int k = 0; k < j; ++k) v -= L(i, k) * L(j, k);
      L(i, j) = v / L(j, j);
    }
  }
  return L;
}

/// Solve L X = Y (forward) column-wise, in place.
void forward_solve(const Eigen::MatrixXd& L, Eigen::MatrixXd& X) {
  const int n = static_cast<int>(L.rows());
  for (int col = 0; col < X.cols(); ++col) {
    for (int i = 0; i < n; ++i) {
      double v = X(i, col);
      for (int k = 0; k < i; ++k) v -= L(i, k) * X(k, col);
      X(i, col) = v / L(i, i);
    }
  }
}

/// Solve L^T X = Y (backward) column-wise, in place.
void backward_solve(const Eigen::MatrixXd& L, Eigen::MatrixXd& X) {
  const int n = static_cast<int>(L.rows());
  for (int col = 0; col < X.cols(); ++col) {
    for (int i = n - 1; i >= 0; --i) {
      double v = X(i, col);
      for (int k = i + 1; k < n; ++k) v -= L(k, i) * X(k, col);
      X(i, col) = v / L(i, i);
    }
  }
}

}  // namespace

EigenPairs selfadjoint_eigen(const Eigen::MatrixXd& A) {
  require(A.rows() == A.cols() && A.rows() > 0, errc::factorization_failure,
          "matrix must be square");
  const int n = static_cast<int>(A.rows());
  EigenPairs pairs;
  pairs.vectors = 0.5 * (A + A.transpose());
  pairs.values.resize(n);
  Eigen::VectorXd e(n);
  tridiagonalize(pairs.vectors, pairs.values, e);
  tridiagonal_ql(pairs.values, e, pairs.vectors);
  sort_pairs(pairs);
  return pairs;
}

EigenPairs generalized_selfadjoint_eigen(const Eigen::MatrixXd& S, const Eigen::MatrixXd& B) {
  require(S.rows() == S.cols() && B.rows() == B.cols() && S.rows() == B.rows(),
          errc::factorization_failure, "pencil matrices must be square and conforming");
  const Eigen::MatrixXd L = cholesky_lower(0.5 * (B + B.transpose()));

  // C = L^-1 S L^-T, computed by two triangular solves.
  Eigen::MatrixXd C = 0.5 * (S + S.transpose());
  forward_solve(L, C);             // C <- L^-1 S
  C.transposeInPlace();            // C <- S^T L^-T
  forward_solve(L, C);             // C <- L^-1 S^T L^-T
  C = 0.5 * (C + C.transpose());

  EigenPairs pairs = selfadjoint_eigen(C);
  backward_solve(L, pairs.vectors);  // x = L^-T y
  for (int j = 0; j < pairs.vectors.cols(); ++j) {
    const double nb = std::sqrt(pairs.vectors.col(j).dot(B * pairs.vectors.col(j)));
    if (nb > 0.0) pairs.vectors.col(j) /= nb;
  }
  return pairs;
}

}  // namespace steklov
