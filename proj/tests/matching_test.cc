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

#include <algorithm>
#include <cmath>
#include <functional>

#include "doctest.h"
#include "giom/hashing.h"
#include "giom/matching.h"
#include "test_util.h"

namespace giom {
namespace {

HashedTemplate Make(std::initializer_list<std::initializer_list<int>> rows, int q,
                    const std::string& fp = "k") {
  CodeMatrix codes(static_cast<Eigen::Index>(rows.size()),
                   static_cast<Eigen::Index>(rows.begin()->size()));
  int r = 0;
  for (const auto& row : rows) {
    int c = 0;
    for (int v : row) codes(r, c++) = v;
    ++r;
  }
  return HashedTemplate(codes, q, fp);
}

TEST_CASE("n_p follows the sigmoid") {
  const LgsParams p;
  CHECK(NpSelect(20, 30, p) == 4 + static_cast<int>(std::lround(0.5 * 8)));
  CHECK(NpSelect(static_cast<int>(20 + 1000 / 0.4), 3000, p) == 12);
  CHECK(1.0 / (1.0 + std::exp(4.0)) == doctest::Approx(0.01799).epsilon(1e-3));
  CHECK(NpSelect(10, 10, p) == 4);
  CHECK(NpSelect(25, 40, p) == 4 + static_cast<int>(std::lround(8.0 / (1.0 + std::exp(-2.0)))));
}

TEST_CASE("n_p never exceeds the smaller template") {
  const LgsParams p;
  CHECK(NpSelect(2, 50, p) == 2);
  CHECK(NpSelect(1, 1, p) == 1);
  CHECK_THROWS_AS(NpSelect(0, 5, p), ArgumentError);
  LgsParams bad;
  bad.min_np = 13;
  CHECK_THROWS_AS(NpSelect(5, 5, bad), ArgumentError);
}

TEST_CASE("point similarity examples") {
  const std::vector<int> a = {1, 1}, b = {2, 3};
  CHECK(std::abs(PointSimilarity(a, b, 3) - (1.0 - std::sqrt(5.0) / (2.0 * std::sqrt(2.0)))) < 1e-15);
  CHECK(PointSimilarity(a, b, 3) == doctest::Approx(0.2094).epsilon(1e-3));
  CHECK(PointSimilarity(b, b, 3) == 1.0);
  const std::vector<int> ones(7, 1), tops(7, 9);
  CHECK(PointSimilarity(ones, tops, 9) == 0.0);
}

TEST_CASE("property: similarity matrix equals the direct formula bit-for-bit") {
  testing::Gen gen(3);
  for (int trial = 0; trial < 50; ++trial) {
    const int q = gen.Int(2, 300), m = gen.Int(1, 700);
    const HashedTemplate a(gen.Codes(gen.Int(1, 6), m, q), q, "k");
    const HashedTemplate b(gen.Codes(gen.Int(1, 6), m, q), q, "k");
    const Eigen::MatrixXd sim = SimilarityMatrix(a, b);
    for (int r = 0; r < a.size(); ++r) {
      for (int c = 0; c < b.size(); ++c) {
        const std::vector<int> ra(a.codes().row(r).begin(), a.codes().row(r).end());
        const std::vector<int> rb(b.codes().row(c).begin(), b.codes().row(c).end());
        CHECK(sim(r, c) == PointSimilarity(ra, rb, q));
        CHECK(sim(r, c) >= 0.0);
        CHECK(sim(r, c) <= 1.0);
      }
    }
  }
}

TEST_CASE("greedy selection retires rows and columns") {
  Eigen::MatrixXd sim(3, 3);
  sim << 0.9, 0.8, 0.1,
         0.85, 0.2, 0.3,
         0.1, 0.7, 0.6;
  const auto pairs = GreedySelect(sim, 3);
  REQUIRE(pairs.size() == 3);
  CHECK(pairs[0] == SelectedPair{0, 0, 0.9});
  CHECK(pairs[1] == SelectedPair{2, 1, 0.7});
  CHECK(pairs[2] == SelectedPair{1, 2, 0.3});
  const auto top = TopSelect(sim, 3);
  CHECK(top[0] == SelectedPair{0, 0, 0.9});
  CHECK(top[1] == SelectedPair{1, 0, 0.85});
  CHECK(top[2] == SelectedPair{0, 1, 0.8});
}

TEST_CASE("greedy ties go to the smallest row, then column") {
  const Eigen::MatrixXd sim = Eigen::MatrixXd::Constant(2, 2, 0.5);
  const auto pairs = GreedySelect(sim, 2);
  CHECK(pairs[0] == SelectedPair{0, 0, 0.5});
  CHECK(pairs[1] == SelectedPair{1, 1, 0.5});
}

// Over every ordered sequence of `count` disjoint cells, the greedy rule picks
// the one whose similarity sequence is lexicographically largest.
std::vector<double> BestSequence(const Eigen::MatrixXd& sim, int count) {
  std::vector<double> best, current;
  std::vector<bool> row_used(static_cast<std::size_t>(sim.rows())),
      col_used(static_cast<std::size_t>(sim.cols()));
  std::function<void()> recurse = [&]() {
    if (static_cast<int>(current.size()) == count) {
      if (best.empty() || current > best) best = current;
      return;
    }
    for (int r = 0; r < sim.rows(); ++r) {
      if (row_used[static_cast<std::size_t>(r)]) continue;
      for (int c = 0; c < sim.cols(); ++c) {
        if (col_used[static_cast<std::size_t>(c)]) continue;
        row_used[static_cast<std::size_t>(r)] = col_used[static_cast<std::size_t>(c)] = true;
        current.push_back(sim(r, c));
        recurse();
        current.pop_back();
        row_used[static_cast<std::size_t>(r)] = col_used[static_cast<std::size_t>(c)] = false;
      }
    }
  };
  recurse();
  return best;
}

TEST_CASE("property: greedy LGS equals the exhaustive selection oracle") {
  testing::Gen gen(19);
  LgsParams p;
  p.min_np = 1;
  p.max_np = 5;
  for (int trial = 0; trial < 60; ++trial) {
    const int q = gen.Int(2, 6), m = gen.Int(1, 4);
    const HashedTemplate a(gen.Codes(gen.Int(1, 5), m, q), q, "k");
    const HashedTemplate b(gen.Codes(gen.Int(1, 5), m, q), q, "k");
    const LgsResult result = LgsMatchDetailed(a, b, p);
    const auto best = BestSequence(SimilarityMatrix(a, b), result.np);
    double mean = 0.0;
    for (double v : best) mean += v;
    mean /= static_cast<double>(best.size());
    CHECK(result.score == doctest::Approx(mean).epsilon(1e-12));
    REQUIRE(result.pairs.size() == best.size());
    for (std::size_t k = 0; k < best.size(); ++k) CHECK(result.pairs[k].similarity == best[k]);
  }
}

TEST_CASE("lgs identity and extremes") {
  const auto a = Make({{1, 2, 3}, {3, 1, 2}, {2, 2, 2}, {1, 1, 1}, {3, 3, 3}}, 3);
  CHECK(LgsMatch(a, a, LgsParams{}).value() == 1.0);
  CHECK(LgsMatch(Make({{4, 1}}, 5), Make({{4, 1}}, 5), LgsParams{}).value() == 1.0);
  CHECK(LgsMatch(Make({{1, 1}}, 5), Make({{5, 5}}, 5), LgsParams{}).value() == 0.0);
}

TEST_CASE("lgs refuses templates from different keys") {
  const auto a = Make({{1, 2}}, 3, "key-a");
  const auto b = Make({{1, 2}}, 3, "key-b");
  CHECK_THROWS_WITH_AS(LgsMatch(a, b, LgsParams{}), doctest::Contains("fingerprint"),
                       ArgumentError);
  CHECK(LgsMatchAcrossKeys(a, b, LgsParams{}).value() == 1.0);
  CHECK_THROWS_AS(LgsMatchAcrossKeys(a, Make({{1, 2, 3}}, 3), LgsParams{}), ArgumentError);
  CHECK_THROWS_AS(LgsMatchAcrossKeys(a, Make({{1, 2}}, 4), LgsParams{}), ArgumentError);
}

TEST_CASE("property: lgs is symmetric, bounded and reflexive") {
  testing::Gen gen(29);
  for (int trial = 0; trial < 300; ++trial) {
    LgsParams p;
    p.greedy_unique = gen.Int(0, 1) == 1;
    // Small q makes ties common, which is where asymmetry would show up.
    const int q = gen.Int(2, 4), m = gen.Int(1, 5);
    const HashedTemplate a(gen.Codes(gen.Int(1, 15), m, q), q, "k");
    const HashedTemplate b(gen.Codes(gen.Int(1, 15), m, q), q, "k");
    const double ab = LgsMatch(a, b, p).value();
    CHECK(ab == LgsMatch(b, a, p).value());
    CHECK(ab >= 0.0);
    CHECK(ab <= 1.0);
    CHECK(LgsMatch(a, a, p).value() == 1.0);
  }
}

TEST_CASE("property: scaling one template's points leaves its scores unchanged") {
  testing::Gen gen(30);
  const auto bank = GaussianBank::Derive({12, 40, 16, 20});
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::MatrixXd pa = gen.UniformMatrix(gen.Int(1, 10), 20);
    const Eigen::MatrixXd pb = gen.UniformMatrix(gen.Int(1, 10), 20);
    const double alpha = gen.Real(0.01, 10.0);
    const double base = LgsMatch(GiomHash(pa, bank), GiomHash(pb, bank), LgsParams{}).value();
    const double scaled =
        LgsMatch(GiomHash(Eigen::MatrixXd(alpha * pa), bank), GiomHash(pb, bank), LgsParams{}).value();
    CHECK(base == scaled);
  }
}

TEST_CASE("top-n_p mode averages the largest entries") {
  const auto a = Make({{1}, {1}}, 2);
  const auto b = Make({{1}, {2}}, 2);
  LgsParams p;
  p.min_np = p.max_np = 2;
  CHECK(LgsMatch(a, b, p).value() == 0.5);
  p.greedy_unique = false;
  CHECK(LgsMatch(a, b, p).value() == 1.0);
}

TEST_CASE("hamming similarity") {
  const BioHashCode a{{1, 0, 1, 1}, 0.0};
  CHECK(HammingSimilarity(a, a) == 1.0);
  CHECK(HammingSimilarity(a, BioHashCode{{0, 1, 0, 0}, 0.0}) == 0.0);
  CHECK(HammingSimilarity(a, BioHashCode{{1, 0, 1, 0}, 0.0}) == 0.75);
  CHECK_THROWS_AS(HammingSimilarity(a, BioHashCode{{1}, 0.0}), ArgumentError);
}

}  // namespace
}  // namespace giom
