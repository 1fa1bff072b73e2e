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

#ifndef GIOM_HASHING_H_
#define GIOM_HASHING_H_

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "giom/randomness.h"
#include "giom/types.h"

namespace giom {

// Index-of-max codes for every row of `points` under the leading q columns of
// each bank matrix, for each q in `q_values` (each must lie in [2, bank.q()]).
// Result k holds the N x m code matrix for q_values[k], 1-based.
//
// Work is split over bank matrices, so each matrix is generated once per call
// and the codes do not depend on `threads`. Argmax ties go to the smallest
// index. Throws ArgumentError on a dimension mismatch or non-finite input.
std::vector<CodeMatrix> ArgmaxCodes(const Eigen::MatrixXd& points,
                                    const GaussianBank& bank,
                                    std::span<const int> q_values,
                                    int threads = 1);

// gIoM: one IoM code per point of a variable-size set.
HashedTemplate GiomHash(const CylinderSet& cylinders, const GaussianBank& bank,
                        int threads = 1);
// Same transform over arbitrary real point sets (rows are points).
HashedTemplate GiomHash(const Eigen::MatrixXd& points, const GaussianBank& bank,
                        int threads = 1);

// Hashes many point sets in one pass over the bank.
std::vector<HashedTemplate> GiomHashBatch(
    std::span<const Eigen::MatrixXd> point_sets, const GaussianBank& bank,
    int threads = 1);

// Fixed-length IoM: the m argmax indices (1-based) of a single vector.
std::vector<int> IomHash(const Eigen::VectorXd& x, const GaussianBank& bank);

struct RmfVector {
  Eigen::VectorXd values;
};

// Random maxout features: Phi(x) = [max_j <w_j^i, x>]_i / sqrt(m).
RmfVector RmfFeatures(const Eigen::VectorXd& x, const GaussianBank& bank);

struct BioHashCode {
  std::vector<std::uint8_t> bits;
  double tau = 0.0;
};

// Bit i is 1 iff <x, b_i> - tau > 0, so the boundary maps to 0.
BioHashCode BioHash(const Eigen::VectorXd& x, const OrthoMatrix& basis,
                    double tau = 0.0);

}  // namespace giom

#endif  // GIOM_HASHING_H_
