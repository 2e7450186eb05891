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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ica {

/// Root of every error thrown by icakit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shapes do not agree (mismatched products, wrong dimension count, ...).
class DimensionError : public Error {
 public:
  using Error::Error;
};

class SymmetryError : public Error {
 public:
  using Error::Error;
};

/// Bad input data: empty, non-finite, uncentered, too few samples.
class DataError : public Error {
 public:
  using Error::Error;
};

/// Input to an entropy-based objective is not whitened.
class NotWhitenedError : public DataError {
 public:
  using DataError::DataError;
};

/// Eigenvalues of a supposed covariance are negative beyond rounding.
class NotCovarianceError : public Error {
 public:
  NotCovarianceError(const std::string& what, double eigenvalue)
      : Error(what), eigenvalue_(eigenvalue) {}
  double eigenvalue() const noexcept { return eigenvalue_; }

 private:
  double eigenvalue_;
};

/// Base for conditions where the numbers are valid but the problem has no
/// unique answer. The CLI maps these to exit code 3.
class SolverError : public Error {
 public:
  using Error::Error;
};

class SingularMatrixError : public SolverError {
 public:
  SingularMatrixError(const std::string& what, double pivot)
      : SolverError(what), pivot_(pivot) {}
  /// Magnitude of the smallest pivot met during factorization.
  double pivot() const noexcept { return pivot_; }

 private:
  double pivot_;
};

class RankDeficientError : public SolverError {
 public:
  RankDeficientError(const std::string& what, std::size_t index, double eigenvalue)
      : SolverError(what), index_(index), eigenvalue_(eigenvalue) {}
  std::size_t index() const noexcept { return index_; }
  double eigenvalue() const noexcept { return eigenvalue_; }

 private:
  std::size_t index_;
  double eigenvalue_;
};

/// Two quantities that must be distinct are tied (FOBI eigenvalues, or too
/// many coincident samples in a nearest-neighbour estimate).
class DegeneracyError : public SolverError {
 public:
  DegeneracyError(const std::string& what, std::size_t first, std::size_t second)
      : SolverError(what), first_(first), second_(second) {}
  std::size_t first() const noexcept { return first_; }
  std::size_t second() const noexcept { return second_; }

 private:
  std::size_t first_;
  std::size_t second_;
};

}  // namespace ica
