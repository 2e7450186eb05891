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

#include <doctest.h>

#include "ica/optimize.hpp"
#include "ica/whitening.hpp"
#include "support.hpp"

TEST_CASE("center") {
  const auto zero = ica::center(Eigen::MatrixXd::Zero(5, 2));
  CHECK(zero.data == Eigen::MatrixXd::Zero(5, 2));
  CHECK(zero.mean == Eigen::Vector2d::Zero());

  Eigen::MatrixXd c = Eigen::MatrixXd::Constant(4, 1, 3.5);
  const auto constant = ica::center(c);
  CHECK(testing::max_abs(constant.data) == 0.0);
  CHECK(constant.mean(0) == 3.5);

  Eigen::MatrixXd x = testing::normal_matrix(1000, 2, 11);
  x.col(0).array() += 5.0;
  const auto out = ica::center(x);
  CHECK(out.data.colwise().mean().cwiseAbs().maxCoeff() < 1e-12);
  CHECK(out.mean(0) == doctest::Approx(x.col(0).mean()));

  CHECK_THROWS_AS(ica::center(Eigen::MatrixXd(0, 2)), ica::DimensionError);
}

TEST_CASE("covariance uses divisor n") {
  Eigen::MatrixXd x(2, 1);
  x << -1, 1;
  const Eigen::MatrixXd c = ica::covariance(x);
  CHECK(c(0, 0) == 1.0);
}

TEST_CASE("covariance of perfectly correlated columns is rank one") {
  const Eigen::MatrixXd z = ica::center(testing::normal_matrix(500, 1, 2)).data;
  Eigen::MatrixXd x(500, 2);
  x.col(0) = z.col(0);
  x.col(1) = 3.0 * z.col(0);
  const Eigen::MatrixXd c = ica::covariance(x);
  CHECK(c(0, 1) == doctest::Approx(std::sqrt(c(0, 0) * c(1, 1))).epsilon(1e-12));
  CHECK(c.determinant() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("covariance converges to the generating covariance") {
  Eigen::MatrixXd x = testing::normal_matrix(100000, 2, 3);
  x.col(0) *= std::sqrt(2.0);
  x.col(1) *= std::sqrt(0.5);
  const Eigen::MatrixXd c = ica::covariance(ica::center(x).data);
  Eigen::MatrixXd expected(2, 2);
  expected << 2, 0, 0, 0.5;
  CHECK(testing::max_abs(c - expected) < 0.05);
}

TEST_CASE("covariance rejects uncentered or tiny input") {
  Eigen::MatrixXd x = testing::normal_matrix(100, 2, 4);
  x.array() += 1.0;
  CHECK_THROWS_AS(ica::covariance(x), ica::DataError);
  CHECK_THROWS_AS(ica::covariance(Eigen::MatrixXd::Zero(1, 2)), ica::DataError);
}

TEST_CASE("whitening_transform on simple covariances") {
  const auto id = ica::whitening_transform(Eigen::MatrixXd::Identity(2, 2));
  CHECK(ica::is_orthogonal(id.matrix(), 1e-12));

  Eigen::MatrixXd d(2, 2);
  d << 4, 0, 0, 1;
  const auto t = ica::whitening_transform(d);
  const Eigen::MatrixXd m = t.matrix().cwiseAbs();
  // rows follow descending eigenvalue order: 4 then 1
  CHECK(m(0, 0) == doctest::Approx(0.5));
  CHECK(m(1, 1) == doctest::Approx(1.0));
  CHECK(m(0, 1) == 0.0);
  CHECK(m(1, 0) == 0.0);
}

TEST_CASE("whitening matrix satisfies W^T W = cov^-1") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Eigen::MatrixXd cov = testing::random_spd(3, seed);
    const auto t = ica::whitening_transform(cov);
    const Eigen::MatrixXd wtw = t.matrix().transpose() * t.matrix();
    CHECK(testing::max_abs(wtw * cov - Eigen::MatrixXd::Identity(3, 3)) < 1e-8);
    const Eigen::MatrixXd inv = ica::invert(cov);
    CHECK(testing::max_abs(wtw - inv) <= 1e-6 * testing::max_abs(inv));
    // rows are eigenvectors scaled by lambda^-1/2
    for (Eigen::Index i = 0; i < 3; ++i) {
      const Eigen::VectorXd row = t.matrix().row(i).transpose();
      const Eigen::VectorXd e = t.eigen().eigenvectors.col(i);
      CHECK(testing::max_abs(row - e / std::sqrt(t.eigen().eigenvalues(i))) < 1e-12);
    }
  }
}

TEST_CASE("rank-deficient covariance names the eigenvalue index") {
  Eigen::MatrixXd cov(3, 3);
  cov << 2, 0, 0, 0, 1, 0, 0, 0, 1e-13;
  try {
    ica::whitening_transform(cov);
    FAIL("expected RankDeficientError");
  } catch (const ica::RankDeficientError& e) {
    CHECK(e.index() == 2);
    CHECK(e.eigenvalue() == doctest::Approx(1e-13));
  }
}

TEST_CASE("apply_whitening on the fitting data gives identity covariance") {
  const Eigen::MatrixXd a = testing::random_spd(3, 8);
  const Eigen::MatrixXd x = testing::normal_matrix(5000, 3, 9) * a.transpose();
  const auto t = ica::fit_whitening(x);
  const Eigen::MatrixXd xw = ica::apply_whitening(t, x);
  CHECK(testing::max_abs(testing::sample_cov(xw) - Eigen::MatrixXd::Identity(3, 3)) < 1e-8);
  CHECK(xw.colwise().mean().cwiseAbs().maxCoeff() < 1e-12);
  CHECK_THROWS_AS(ica::apply_whitening(t, Eigen::MatrixXd::Zero(10, 2)), ica::DimensionError);
}

TEST_CASE("held-out data is whitened to sampling tolerance") {
  Eigen::MatrixXd a(2, 2);
  a << 2, 1, 0.5, 1;
  const auto t = ica::fit_whitening(testing::normal_matrix(100000, 2, 10) * a.transpose());
  const Eigen::MatrixXd fresh = testing::normal_matrix(100000, 2, 20) * a.transpose();
  const Eigen::MatrixXd xw = ica::apply_whitening(t, fresh);
  CHECK(testing::max_abs(testing::sample_cov(xw) - Eigen::MatrixXd::Identity(2, 2)) < 0.05);
}

TEST_CASE("zero-variance direction fails at construction") {
  Eigen::MatrixXd x = testing::normal_matrix(200, 2, 12);
  x.col(1) = 2.0 * x.col(0);
  CHECK_THROWS_AS(ica::fit_whitening(x), ica::RankDeficientError);
}

TEST_CASE("any rotation of a whitening matrix also whitens") {
  const Eigen::MatrixXd a = testing::random_spd(3, 13);
  const Eigen::MatrixXd x = testing::normal_matrix(4000, 3, 14) * a.transpose();
  const auto t = ica::fit_whitening(x);
  const Eigen::MatrixXd xc = x.rowwise() - t.mean().transpose();
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Eigen::MatrixXd r = testing::random_rotation(3, seed + 100);
    const Eigen::MatrixXd y = xc * (r * t.matrix()).transpose();
    CHECK(testing::max_abs(testing::sample_cov(y) - Eigen::MatrixXd::Identity(3, 3)) < 1e-8);
  }
  const Eigen::MatrixXd sym = xc * t.symmetric_matrix().transpose();
  CHECK(testing::max_abs(testing::sample_cov(sym) - Eigen::MatrixXd::Identity(3, 3)) < 1e-8);
}

TEST_CASE("decorrelation alone gives the diagonal eigenvalue covariance") {
  const Eigen::MatrixXd a = testing::random_spd(3, 15);
  const Eigen::MatrixXd x = testing::normal_matrix(4000, 3, 16) * a.transpose();
  const auto t = ica::fit_whitening(x);
  const Eigen::MatrixXd rot = (x.rowwise() - t.mean().transpose()) * t.eigen().eigenvectors;
  const Eigen::MatrixXd expected = t.eigen().eigenvalues.asDiagonal();
  CHECK(testing::max_abs(testing::sample_cov(rot) - expected) < 1e-8 * t.eigen().eigenvalues(0));
}
