/*
 * Copyright 2026 The icakit Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <Eigen/Core>
#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "ica/errors.hpp"

namespace ica {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// n samples (rows) by d dimensions (columns). Column-major, so each
/// dimension's samples are contiguous.
using DataMatrix = Eigen::MatrixXd;

/// Orthonormal eigenvectors (as columns) and eigenvalues sorted descending.
template <typename Scalar>
struct EigenDecomposition {
  Matrix<Scalar> eigenvectors;
  Vector<Scalar> eigenvalues;

  Eigen::Index dim() const { return eigenvalues.size(); }

  /// E * diag(lambda) * E^T
  Matrix<Scalar> reconstruct() const {
    return eigenvectors * eigenvalues.asDiagonal() * eigenvectors.transpose();
  }
};

template <typename Derived>
void require_finite(const Eigen::MatrixBase<Derived>& m, const char* what) {
  if (m.size() == 0) throw DimensionError(std::string(what) + ": empty matrix");
  if (!m.allFinite()) throw DataError(std::string(what) + ": non-finite entry");
}

template <typename Derived>
void require_square(const Eigen::MatrixBase<Derived>& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw DimensionError(std::string(what) + ": expected a square matrix, got " +
                         std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

/// Checked product; Eigen only asserts on mismatched shapes in debug builds.
template <typename DerivedA, typename DerivedB>
auto mat_mul(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b)
    -> Matrix<typename DerivedA::Scalar> {
  if (a.cols() != b.rows()) {
    throw DimensionError("mat_mul: " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " times " + std::to_string(b.rows()) +
                         "x" + std::to_string(b.cols()));
  }
  return a * b;
}

/// max_ij |(m^T m - I)_ij| <= tol
template <typename Derived>
bool is_orthogonal(const Eigen::MatrixBase<Derived>& m, typename Derived::Scalar tol) {
  require_square(m, "is_orthogonal");
  using Scalar = typename Derived::Scalar;
  const Matrix<Scalar> gram = m.transpose() * m;
  const Matrix<Scalar> eye = Matrix<Scalar>::Identity(m.rows(), m.cols());
  return (gram - eye).cwiseAbs().maxCoeff() <= tol;
}

namespace detail {

template <typename Scalar>
void sort_and_canonicalize(Matrix<Scalar>& vectors, Vector<Scalar>& values) {
  const Eigen::Index d = values.size();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(d));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return values(i) > values(j); });

  Matrix<Scalar> sorted_vectors(d, d);
  Vector<Scalar> sorted_values(d);
  for (Eigen::Index c = 0; c < d; ++c) {
    const Eigen::Index src = order[static_cast<std::size_t>(c)];
    sorted_values(c) = values(src);
    sorted_vectors.col(c) = vectors.col(src);
    Eigen::Index peak = 0;
    sorted_vectors.col(c).cwiseAbs().maxCoeff(&peak);
    if (sorted_vectors(peak, c) < Scalar(0)) sorted_vectors.col(c) *= Scalar(-1);
  }
  vectors = std::move(sorted_vectors);
  values = std::move(sorted_values);
}

}  // namespace detail

/// Eigendecomposition of a real symmetric matrix by cyclic Jacobi rotations.
///
/// Iterates until the off-diagonal Frobenius mass drops below
/// 1e-12 * ||m||_F or 100 sweeps have run. Eigenvalues come back sorted
/// descending and every eigenvector is flipped so that its largest-magnitude
/// entry is positive, so identical inputs always give identical outputs.
template <typename Derived>
auto sym_eig(const Eigen::MatrixBase<Derived>& m) -> EigenDecomposition<typename Derived::Scalar> {
  using Scalar = typename Derived::Scalar;
  using std::abs;
  using std::sqrt;

  require_square(m, "sym_eig");
  require_finite(m, "sym_eig");
  const Scalar scale = Scalar(1) + m.cwiseAbs().maxCoeff();
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > Scalar(1e-9) * scale) {
    throw SymmetryError("sym_eig: matrix is not symmetric");
  }

  const Eigen::Index d = m.rows();
  Matrix<Scalar> a = (m + m.transpose()) / Scalar(2);
  Matrix<Scalar> v = Matrix<Scalar>::Identity(d, d);
  const Scalar target = Scalar(1e-12) * a.norm();

  for (int sweep = 0; sweep < 100; ++sweep) {
    Scalar off = 0;
    for (Eigen::Index p = 0; p < d; ++p)
      for (Eigen::Index q = 0; q < d; ++q)
        if (p != q) off += a(p, q) * a(p, q);
    if (sqrt(off) <= target) break;

    for (Eigen::Index p = 0; p + 1 < d; ++p) {
      for (Eigen::Index q = p + 1; q < d; ++q) {
        const Scalar apq = a(p, q);
        if (apq == Scalar(0)) continue;
        const Scalar theta = (a(q, q) - a(p, p)) / (Scalar(2) * apq);
        // t = tan of the rotation angle, smaller root of t^2 + 2 t theta - 1 = 0
        Scalar t;
        if (abs(theta) > Scalar(1e150)) {
          t = Scalar(1) / (Scalar(2) * theta);
        } else {
          t = (theta >= Scalar(0) ? Scalar(1) : Scalar(-1)) /
              (abs(theta) + sqrt(theta * theta + Scalar(1)));
        }
        const Scalar c = Scalar(1) / sqrt(t * t + Scalar(1));
        const Scalar s = t * c;

        for (Eigen::Index k = 0; k < d; ++k) {
          const Scalar akp = a(k, p);
          const Scalar akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < d; ++k) {
          const Scalar apk = a(p, k);
          const Scalar aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = a(q, p) = Scalar(0);
        for (Eigen::Index k = 0; k < d; ++k) {
          const Scalar vkp = v(k, p);
          const Scalar vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  EigenDecomposition<Scalar> out{std::move(v), a.diagonal()};
  detail::sort_and_canonicalize(out.eigenvectors, out.eigenvalues);
  return out;
}

/// sym_eig for covariance matrices: eigenvalues in [-1e-10, 0) are rounding
/// noise and are clamped to zero; anything more negative is rejected.
template <typename Derived>
auto covariance_eig(const Eigen::MatrixBase<Derived>& cov)
    -> EigenDecomposition<typename Derived::Scalar> {
  using Scalar = typename Derived::Scalar;
  auto eig = sym_eig(cov);
  const Scalar floor = Scalar(-1e-10) * std::max(Scalar(1), eig.eigenvalues(0));
  for (Eigen::Index i = 0; i < eig.dim(); ++i) {
    if (eig.eigenvalues(i) < floor) {
      throw NotCovarianceError("covariance_eig: negative eigenvalue " +
                                   std::to_string(eig.eigenvalues(i)) + " at index " +
                                   std::to_string(i),
                               static_cast<double>(eig.eigenvalues(i)));
    }
    if (eig.eigenvalues(i) < Scalar(0)) eig.eigenvalues(i) = Scalar(0);
  }
  return eig;
}

/// Inverse via partially pivoted LU. Rejects matrices whose reciprocal
/// condition estimate is below 1e-12.
template <typename Derived>
auto invert(const Eigen::MatrixBase<Derived>& m) -> Matrix<typename Derived::Scalar> {
  using Scalar = typename Derived::Scalar;
  require_square(m, "invert");
  require_finite(m, "invert");

  const Eigen::PartialPivLU<Matrix<Scalar>> lu(m.eval());
  const Scalar min_pivot = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
  const Scalar rcond = min_pivot == Scalar(0) ? Scalar(0) : lu.rcond();
  if (!(rcond >= Scalar(1e-12))) {
    throw SingularMatrixError("invert: matrix is singular or ill-conditioned (smallest pivot " +
                                  std::to_string(static_cast<double>(min_pivot)) +
                                  ", rcond " + std::to_string(static_cast<double>(rcond)) + ")",
                              static_cast<double>(min_pivot));
  }
  return lu.inverse();
}

/// 2-norm condition number from the eigenvalues of m^T m.
template <typename Derived>
auto condition_number(const Eigen::MatrixBase<Derived>& m) -> typename Derived::Scalar {
  using Scalar = typename Derived::Scalar;
  require_square(m, "condition_number");
  const auto eig = sym_eig((m.transpose() * m).eval());
  const Scalar lo = std::max(eig.eigenvalues(eig.dim() - 1), Scalar(0));
  if (lo == Scalar(0)) return std::numeric_limits<Scalar>::infinity();
  return std::sqrt(eig.eigenvalues(0) / lo);
}

}  // namespace ica
