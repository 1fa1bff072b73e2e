// Copyright 2026 The gIoM Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GIOM_RANDOMNESS_H_
#define GIOM_RANDOMNESS_H_

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "giom/types.h"

namespace giom {

// Seeded sampler whose output is identical on every conforming platform.
//
// The engine is std::mt19937_64 seeded through std::seed_seq, both of which
// the standard specifies bit-for-bit. The standard library distributions are
// not specified that tightly, so uniforms and normals use fixed transforms:
// 53-bit mantissa uniforms and the Marsaglia polar method for normals.
class Rng {
 public:
  // Distinct (seed, stream) pairs give independent sequences.
  Rng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t NextU64() { return engine_(); }
  // Uniform on [0, 1).
  double Uniform();
  // Standard normal.
  double Normal();
  // Uniform integer in [lo, hi].
  int UniformInt(int lo, int hi);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Fills a rows x cols standard-normal matrix from the (seed, index)
// sub-stream, column by column. Because the fill is column-major, the leading
// k columns do not depend on `cols`.
Eigen::MatrixXd DeriveGaussianMatrix(std::uint64_t seed, int index, int rows,
                                     int cols);

// m matrices of shape d x q with standard-normal entries.
//
// A derived bank is lazy: matrix i is regenerated from its own sub-stream on
// each access, so a 700 x 1536 x 300 bank never has to sit in memory. Banks
// built from explicit matrices (the worked examples, test fixtures) store
// them.
class GaussianBank {
 public:
  // derive_bank. Throws ArgumentError on invalid key dimensions.
  static GaussianBank Derive(const HashKey& key);

  explicit GaussianBank(std::vector<Eigen::MatrixXd> matrices);

  int m() const { return m_; }
  int q() const { return q_; }
  int d() const { return d_; }

  // The d x q matrix W^i, 0-based i.
  Eigen::MatrixXd Matrix(int i) const;

  const std::optional<HashKey>& key() const { return key_; }
  bool materialized() const { return !stored_.empty(); }
  GaussianBank Materialize() const;

  // Key fingerprint for derived banks; content digest otherwise.
  std::string Fingerprint() const;

 private:
  GaussianBank() = default;

  std::optional<HashKey> key_;
  std::vector<Eigen::MatrixXd> stored_;
  int m_ = 0;
  int q_ = 0;
  int d_ = 0;
};

// n x m matrix with orthonormal columns.
class OrthoMatrix {
 public:
  const Eigen::MatrixXd& matrix() const { return matrix_; }
  int rows() const { return static_cast<int>(matrix_.rows()); }
  int cols() const { return static_cast<int>(matrix_.cols()); }

 private:
  friend OrthoMatrix GramSchmidt(const Eigen::MatrixXd& matrix);
  explicit OrthoMatrix(Eigen::MatrixXd matrix) : matrix_(std::move(matrix)) {}

  Eigen::MatrixXd matrix_;
};

inline constexpr double kGramSchmidtPivotTolerance = 1e-10;

// Modified Gram-Schmidt with one reorthogonalization pass. Throws
// ArgumentError naming the first column whose residual norm falls below
// kGramSchmidtPivotTolerance, or if there are more columns than rows.
OrthoMatrix GramSchmidt(const Eigen::MatrixXd& matrix);

// Orthonormalized n x m Gaussian matrix from the (seed, 0) sub-stream.
OrthoMatrix RandomOrthoMatrix(std::uint64_t seed, int n, int m);

// y = sqrt(n / m) * R^T x.
Eigen::VectorXd RandomProjection(const Eigen::VectorXd& x, const OrthoMatrix& r);

}  // namespace giom

#endif  // GIOM_RANDOMNESS_H_
