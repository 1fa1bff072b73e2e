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

#include "giom/hashing.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "giom/parallel.h"

namespace giom {

namespace {

void CheckInput(const Eigen::MatrixXd& points, const GaussianBank& bank) {
  if (points.cols() != bank.d()) {
    throw ArgumentError("input dimension " + std::to_string(points.cols()) +
                        " does not match bank dimension " +
                        std::to_string(bank.d()));
  }
  if (!points.allFinite()) {
    throw ArgumentError("hash input contains a non-finite entry");
  }
}

// 1-based argmax over the first `count` entries of a row; first maximum wins.
template <typename Row>
std::int32_t ArgmaxPrefix(const Row& row, int count) {
  int best = 0;
  double best_value = row(0);
  for (int j = 1; j < count; ++j) {
    if (row(j) > best_value) {
      best_value = row(j);
      best = j;
    }
  }
  return best + 1;
}

}  // namespace

std::vector<CodeMatrix> ArgmaxCodes(const Eigen::MatrixXd& points,
                                    const GaussianBank& bank,
                                    std::span<const int> q_values,
                                    int threads) {
  CheckInput(points, bank);
  if (q_values.empty()) throw ArgumentError("no q values requested");
  int q_max = 0;
  for (int q : q_values) {
    if (q < 2 || q > bank.q()) {
      throw ArgumentError("requested q outside [2, bank q]");
    }
    q_max = std::max(q_max, q);
  }
  const Eigen::Index n = points.rows();
  std::vector<CodeMatrix> codes(q_values.size(), CodeMatrix(n, bank.m()));
  if (n == 0) return codes;

  ParallelFor(static_cast<std::size_t>(bank.m()), threads, [&](std::size_t i) {
    const Eigen::MatrixXd w = bank.Matrix(static_cast<int>(i));
    const Eigen::MatrixXd projections = points * w.leftCols(q_max);
    for (std::size_t k = 0; k < q_values.size(); ++k) {
      for (Eigen::Index r = 0; r < n; ++r) {
        codes[k](r, static_cast<Eigen::Index>(i)) =
            ArgmaxPrefix(projections.row(r), q_values[k]);
      }
    }
  });
  return codes;
}

HashedTemplate GiomHash(const Eigen::MatrixXd& points, const GaussianBank& bank,
                        int threads) {
  const int q = bank.q();
  auto codes = ArgmaxCodes(points, bank, std::span<const int>(&q, 1), threads);
  return HashedTemplate(std::move(codes.front()), q, bank.Fingerprint());
}

HashedTemplate GiomHash(const CylinderSet& cylinders, const GaussianBank& bank,
                        int threads) {
  return GiomHash(cylinders.vectors(), bank, threads);
}

std::vector<HashedTemplate> GiomHashBatch(
    std::span<const Eigen::MatrixXd> point_sets, const GaussianBank& bank,
    int threads) {
  Eigen::Index total = 0;
  for (const auto& set : point_sets) {
    if (set.cols() != bank.d()) {
      throw ArgumentError("point set dimension does not match bank");
    }
    total += set.rows();
  }
  Eigen::MatrixXd stacked(total, bank.d());
  Eigen::Index row = 0;
  for (const auto& set : point_sets) {
    stacked.middleRows(row, set.rows()) = set;
    row += set.rows();
  }
  const int q = bank.q();
  auto codes = ArgmaxCodes(stacked, bank, std::span<const int>(&q, 1), threads);
  const std::string fingerprint = bank.Fingerprint();
  std::vector<HashedTemplate> out;
  out.reserve(point_sets.size());
  row = 0;
  for (const auto& set : point_sets) {
    out.emplace_back(codes.front().middleRows(row, set.rows()), q, fingerprint);
    row += set.rows();
  }
  return out;
}

std::vector<int> IomHash(const Eigen::VectorXd& x, const GaussianBank& bank) {
  const HashedTemplate h = GiomHash(Eigen::MatrixXd(x.transpose()), bank);
  std::vector<int> code(static_cast<std::size_t>(h.m()));
  for (int i = 0; i < h.m(); ++i) code[static_cast<std::size_t>(i)] = h.codes()(0, i);
  return code;
}

RmfVector RmfFeatures(const Eigen::VectorXd& x, const GaussianBank& bank) {
  if (x.size() != bank.d()) {
    throw ArgumentError("RMF input dimension does not match bank");
  }
  if (!x.allFinite()) throw ArgumentError("RMF input contains a non-finite entry");
  RmfVector out{Eigen::VectorXd(bank.m())};
  for (int i = 0; i < bank.m(); ++i) {
    out.values(i) = (bank.Matrix(i).transpose() * x).maxCoeff();
  }
  out.values /= std::sqrt(static_cast<double>(bank.m()));
  return out;
}

BioHashCode BioHash(const Eigen::VectorXd& x, const OrthoMatrix& basis,
                    double tau) {
  if (x.size() != basis.rows()) {
    throw ArgumentError("BioHash input dimension does not match basis");
  }
  const Eigen::VectorXd inner = basis.matrix().transpose() * x;
  BioHashCode code;
  code.tau = tau;
  code.bits.resize(static_cast<std::size_t>(inner.size()));
  for (Eigen::Index i = 0; i < inner.size(); ++i) {
    code.bits[static_cast<std::size_t>(i)] = inner(i) - tau > 0.0 ? 1 : 0;
  }
  return code;
}

}  // namespace giom
