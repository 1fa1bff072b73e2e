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

#include "giom/matching.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

namespace giom {

void LgsParams::Validate() const {
  if (min_np < 1 || min_np > max_np) {
    throw ArgumentError("LGS parameters need 1 <= min_np <= max_np");
  }
  if (!std::isfinite(mu_p) || !std::isfinite(tau_p)) {
    throw ArgumentError("LGS mu_p and tau_p must be finite");
  }
}

int NpSelect(int n_a, int n_b, const LgsParams& p) {
  p.Validate();
  if (n_a < 1 || n_b < 1) throw ArgumentError("template sizes must be >= 1");
  const int smaller = std::min(n_a, n_b);
  const double z = 1.0 / (1.0 + std::exp(-p.tau_p * (smaller - p.mu_p)));
  int np = p.min_np + static_cast<int>(std::lround(z * (p.max_np - p.min_np)));
  np = std::max(np, p.min_np);
  return std::min({np, p.max_np, smaller});
}

namespace {

double SimilarityFromSquaredDistance(double d2, int q, int m) {
  const double s =
      1.0 - std::sqrt(d2) / ((q - 1) * std::sqrt(static_cast<double>(m)));
  return std::clamp(s, 0.0, 1.0);
}

struct Entry {
  double value;
  int row;
  int col;
};

std::vector<Entry> SortedEntries(const Eigen::MatrixXd& sim) {
  std::vector<Entry> entries;
  entries.reserve(static_cast<std::size_t>(sim.size()));
  for (int r = 0; r < sim.rows(); ++r) {
    for (int c = 0; c < sim.cols(); ++c) entries.push_back({sim(r, c), r, c});
  }
  // Row-major insertion plus a stable sort leaves ties in (row, col) order.
  std::stable_sort(entries.begin(), entries.end(),
                   [](const Entry& x, const Entry& y) { return x.value > y.value; });
  return entries;
}

bool CodesLess(const HashedTemplate& a, const HashedTemplate& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  const auto* pa = a.codes().data();
  const auto* pb = b.codes().data();
  return std::lexicographical_compare(pa, pa + a.codes().size(), pb,
                                      pb + b.codes().size());
}

LgsResult MatchImpl(const HashedTemplate& a, const HashedTemplate& b,
                    const LgsParams& p) {
  p.Validate();
  if (a.m() != b.m() || a.q() != b.q()) {
    throw ArgumentError("templates differ in m or q");
  }
  if (a.size() < 1 || b.size() < 1) {
    throw ArgumentError("cannot match an empty hashed template");
  }
  // Matching in a canonical argument order makes the score exactly symmetric
  // even when greedy tie-breaking would depend on the orientation.
  if (CodesLess(b, a)) {
    LgsResult swapped = MatchImpl(b, a, p);
    for (auto& pair : swapped.pairs) std::swap(pair.row, pair.col);
    return swapped;
  }
  LgsResult result;
  result.np = NpSelect(a.size(), b.size(), p);
  const Eigen::MatrixXd sim = SimilarityMatrix(a, b);
  result.pairs = p.greedy_unique ? GreedySelect(sim, result.np)
                                 : TopSelect(sim, result.np);
  double total = 0.0;
  for (const auto& pair : result.pairs) total += pair.similarity;
  result.score = std::clamp(total / static_cast<double>(result.pairs.size()), 0.0, 1.0);
  return result;
}

}  // namespace

double PointSimilarity(std::span<const int> a, std::span<const int> b, int q) {
  if (a.size() != b.size()) {
    throw ArgumentError("point codes differ in length");
  }
  if (a.empty()) throw ArgumentError("point codes are empty");
  if (q < 2) throw ArgumentError("q must be >= 2");
  std::int64_t d2 = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < 1 || a[i] > q || b[i] < 1 || b[i] > q) {
      throw ArgumentError("point code entry outside [1, q]");
    }
    const std::int64_t diff = a[i] - b[i];
    d2 += diff * diff;
  }
  return SimilarityFromSquaredDistance(static_cast<double>(d2), q,
                                       static_cast<int>(a.size()));
}

Eigen::MatrixXd SimilarityMatrix(const HashedTemplate& a,
                                 const HashedTemplate& b) {
  if (a.m() != b.m() || a.q() != b.q()) {
    throw ArgumentError("templates differ in m or q");
  }
  const Eigen::MatrixXd ca = a.codes().cast<double>();
  const Eigen::MatrixXd cb = b.codes().cast<double>();
  const Eigen::VectorXd na = ca.rowwise().squaredNorm();
  const Eigen::VectorXd nb = cb.rowwise().squaredNorm();
  const Eigen::MatrixXd gram = ca * cb.transpose();
  Eigen::MatrixXd sim(ca.rows(), cb.rows());
  for (Eigen::Index r = 0; r < sim.rows(); ++r) {
    for (Eigen::Index c = 0; c < sim.cols(); ++c) {
      const double d2 = na(r) + nb(c) - 2.0 * gram(r, c);
      sim(r, c) = SimilarityFromSquaredDistance(d2, a.q(), a.m());
    }
  }
  return sim;
}

std::vector<SelectedPair> GreedySelect(const Eigen::MatrixXd& sim, int count) {
  const int limit = static_cast<int>(std::min(sim.rows(), sim.cols()));
  if (count < 0 || count > limit) {
    throw ArgumentError("greedy selection count exceeds min(rows, cols)");
  }
  std::vector<char> row_used(static_cast<std::size_t>(sim.rows()), 0);
  std::vector<char> col_used(static_cast<std::size_t>(sim.cols()), 0);
  std::vector<SelectedPair> out;
  out.reserve(static_cast<std::size_t>(count));
  for (const Entry& e : SortedEntries(sim)) {
    if (static_cast<int>(out.size()) == count) break;
    if (row_used[static_cast<std::size_t>(e.row)] ||
        col_used[static_cast<std::size_t>(e.col)]) {
      continue;
    }
    row_used[static_cast<std::size_t>(e.row)] = 1;
    col_used[static_cast<std::size_t>(e.col)] = 1;
    out.push_back({e.row, e.col, e.value});
  }
  return out;
}

std::vector<SelectedPair> TopSelect(const Eigen::MatrixXd& sim, int count) {
  if (count < 0 || count > sim.size()) {
    throw ArgumentError("top selection count exceeds matrix size");
  }
  std::vector<SelectedPair> out;
  out.reserve(static_cast<std::size_t>(count));
  const auto entries = SortedEntries(sim);
  for (int k = 0; k < count; ++k) {
    const Entry& e = entries[static_cast<std::size_t>(k)];
    out.push_back({e.row, e.col, e.value});
  }
  return out;
}

LgsResult LgsMatchDetailed(const HashedTemplate& a, const HashedTemplate& b,
                           const LgsParams& p) {
  if (a.key_fingerprint() != b.key_fingerprint()) {
    throw ArgumentError("key fingerprint mismatch: " + a.key_fingerprint() +
                        " vs " + b.key_fingerprint());
  }
  return MatchImpl(a, b, p);
}

MatchScore LgsMatch(const HashedTemplate& a, const HashedTemplate& b,
                    const LgsParams& p) {
  return MatchScore(LgsMatchDetailed(a, b, p).score);
}

MatchScore LgsMatchAcrossKeys(const HashedTemplate& a, const HashedTemplate& b,
                              const LgsParams& p) {
  return MatchScore(MatchImpl(a, b, p).score);
}

double HammingSimilarity(const BioHashCode& a, const BioHashCode& b) {
  if (a.bits.size() != b.bits.size()) {
    throw ArgumentError("BioHash codes differ in length");
  }
  if (a.bits.empty()) throw ArgumentError("BioHash codes are empty");
  std::size_t differing = 0;
  for (std::size_t i = 0; i < a.bits.size(); ++i) {
    differing += a.bits[i] != b.bits[i] ? 1 : 0;
  }
  return 1.0 - static_cast<double>(differing) / static_cast<double>(a.bits.size());
}

}  // namespace giom
