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

#ifndef GIOM_MATCHING_H_
#define GIOM_MATCHING_H_

#include <span>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "giom/hashing.h"
#include "giom/types.h"

namespace giom {

// Local greedy similarity parameters. n_p, the number of point pairs that are
// averaged, follows a sigmoid of the smaller template size.
struct LgsParams {
  int min_np = 4;
  int max_np = 12;
  double mu_p = 20.0;
  double tau_p = 0.4;
  // true: each point is used at most once (greedy assignment);
  // false: plain top-n_p entries of the similarity matrix.
  bool greedy_unique = true;

  void Validate() const;

  friend bool operator==(const LgsParams&, const LgsParams&) = default;
};

// n_p = min_np + round(Z(min(nA, nB)) * (max_np - min_np)), where
// Z(v) = 1 / (1 + exp(-tau_p * (v - mu_p))), then clamped to
// [min_np, min(max_np, nA, nB)]. When min(nA, nB) < min_np the upper bound
// wins, so every pair of non-empty templates stays matchable.
int NpSelect(int n_a, int n_b, const LgsParams& p);

// 1 - |a - b|_2 / ((q - 1) * sqrt(m)).
double PointSimilarity(std::span<const int> a, std::span<const int> b, int q);

// N_A x N_B matrix of PointSimilarity values, computed through the Gram
// identity |a-b|^2 = |a|^2 + |b|^2 - 2 a.b. All terms are integers well below
// 2^53, so the result is exact and equals the direct formula bit-for-bit.
Eigen::MatrixXd SimilarityMatrix(const HashedTemplate& a,
                                 const HashedTemplate& b);

struct SelectedPair {
  int row;
  int col;
  double similarity;

  friend bool operator==(const SelectedPair&, const SelectedPair&) = default;
};

// Repeatedly takes the largest remaining entry and retires its row and
// column. Ties go to the smallest (row, col).
std::vector<SelectedPair> GreedySelect(const Eigen::MatrixXd& sim, int count);
// The `count` largest entries, rows and columns may repeat.
std::vector<SelectedPair> TopSelect(const Eigen::MatrixXd& sim, int count);

struct LgsResult {
  double score = 0.0;
  int np = 0;
  std::vector<SelectedPair> pairs;  // in the frame of the (a, b) arguments
};

// Throws ArgumentError on key fingerprint mismatch or differing (m, q).
LgsResult LgsMatchDetailed(const HashedTemplate& a, const HashedTemplate& b,
                           const LgsParams& p);
MatchScore LgsMatch(const HashedTemplate& a, const HashedTemplate& b,
                    const LgsParams& p);

// Matches templates hashed under different keys (same m, q). Only the
// linkability and revocability experiments should need this.
MatchScore LgsMatchAcrossKeys(const HashedTemplate& a, const HashedTemplate& b,
                              const LgsParams& p);

// 1 - hamming(a, b) / n.
double HammingSimilarity(const BioHashCode& a, const BioHashCode& b);

}  // namespace giom

#endif  // GIOM_MATCHING_H_
