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
#include <limits>

#include "doctest.h"
#include "giom/evaluation.h"
#include "giom/hashing.h"
#include "giom/matching.h"
#include "test_util.h"

namespace giom {
namespace {

Dataset Shape(int fingers, int samples) {
  Dataset ds;
  for (int f = 0; f < fingers; ++f) {
    Finger finger{"f" + std::to_string(f), {}};
    for (int s = 0; s < samples; ++s) {
      finger.samples.emplace_back(finger.id, s + 1, std::vector<Minutia>{Minutia(1, 1, 0)});
    }
    ds.fingers.push_back(std::move(finger));
  }
  return ds;
}

TEST_CASE("FVC pair counts") {
  CHECK(GenuinePairs(Shape(100, 8)).size() == 2800);
  CHECK(ImpostorPairs(Shape(100, 8)).size() == 4950);
  CHECK(GenuinePairs(Shape(1, 2)).size() == 1);
  CHECK(ImpostorPairs(Shape(2, 3)).size() == 1);
  CHECK(ImpostorPairs(Shape(1, 3)).empty());
  CHECK_THROWS_AS(GenuinePairs(Shape(3, 1)), ArgumentError);
}

TEST_CASE("property: pair lists are complete and duplicate-free") {
  testing::Gen gen(7);
  for (int trial = 0; trial < 20; ++trial) {
    const int f = gen.Int(1, 12), s = gen.Int(2, 9);
    const Dataset ds = Shape(f, s);
    auto genuine = GenuinePairs(ds);
    auto impostor = ImpostorPairs(ds);
    CHECK(genuine.size() == static_cast<std::size_t>(f * s * (s - 1) / 2));
    CHECK(impostor.size() == static_cast<std::size_t>(f * (f - 1) / 2));
    for (const auto& p : genuine) {
      CHECK(p.a.finger == p.b.finger);
      CHECK(p.a.sample < p.b.sample);
    }
    for (const auto& p : impostor) {
      CHECK(p.a.finger < p.b.finger);
      CHECK(p.a.sample == 0);
      CHECK(p.b.sample == 0);
    }
    std::sort(genuine.begin(), genuine.end());
    CHECK(std::adjacent_find(genuine.begin(), genuine.end()) == genuine.end());
  }
}

TEST_CASE("grouping orders fingers and samples") {
  std::vector<MinutiaeTemplate> ts = {{"b", 2, {Minutia(1, 1, 0)}},
                                      {"a", 1, {Minutia(1, 1, 0)}},
                                      {"b", 1, {Minutia(1, 1, 0)}}};
  const Dataset ds = GroupDataset(ts);
  REQUIRE(ds.fingers.size() == 2);
  CHECK(ds.fingers[1].id == "b");
  CHECK(ds.fingers[1].samples[0].sample_id == 1);
  ts.push_back(ts[0]);
  CHECK_THROWS_AS(GroupDataset(ts), ArgumentError);
}

TEST_CASE("eer on small score sets") {
  const std::vector<double> g1 = {0.9, 0.9, 0.9}, i1 = {0.1, 0.1};
  CHECK(ComputeEer(g1, i1).eer == 0.0);
  const std::vector<double> same = {0.2, 0.4, 0.6, 0.8};
  CHECK(ComputeEer(same, same).eer == 0.5);
  const std::vector<double> g2 = {0.8, 0.6}, i2 = {0.7, 0.5};
  // FMR counts impostors >= t and FNMR genuines < t. The balanced thresholds
  // are 0.7 (FMR = FNMR = 1/2) and 0.6 / 0.8 leave an imbalance of 1/2.
  const auto r = ComputeEer(g2, i2);
  CHECK(r.eer == 0.5);
  CHECK(r.threshold == 0.7);
  const std::vector<double> empty;
  CHECK_THROWS_AS(ComputeEer(empty, i2), ArgumentError);
}

// Literal reading of the definition: try every observed score as threshold.
double EerOracle(const std::vector<double>& genuine, const std::vector<double>& impostor) {
  std::vector<double> thresholds = genuine;
  thresholds.insert(thresholds.end(), impostor.begin(), impostor.end());
  double best_gap = std::numeric_limits<double>::infinity(), best_mean = 0.0, best_t = 0.0;
  for (double t : thresholds) {
    double fm = 0, fnm = 0;
    for (double s : impostor) fm += s >= t;
    for (double s : genuine) fnm += s < t;
    const double fmr = fm / impostor.size(), fnmr = fnm / genuine.size();
    const double gap = std::abs(fmr - fnmr), mean = (fmr + fnmr) / 2;
    const bool better = gap < best_gap - 1e-12 ||
                        (std::abs(gap - best_gap) <= 1e-12 &&
                         (mean < best_mean - 1e-12 ||
                          (std::abs(mean - best_mean) <= 1e-12 && t < best_t)));
    if (better) {
      best_gap = gap;
      best_mean = mean;
      best_t = t;
    }
  }
  return best_mean;
}

TEST_CASE("property: eer matches the exhaustive threshold oracle") {
  testing::Gen gen(41);
  for (int trial = 0; trial < 2000; ++trial) {
    const int levels = gen.Int(0, 1) ? 0 : gen.Int(1, 6);
    const auto genuine = gen.Scores(gen.Int(1, 10), levels);
    const auto impostor = gen.Scores(gen.Int(1, 10), levels);
    CHECK(ComputeEer(genuine, impostor).eer == doctest::Approx(EerOracle(genuine, impostor)).epsilon(1e-12));
  }
}

TEST_CASE("property: roc is monotone and eer is rank-invariant") {
  testing::Gen gen(42);
  for (int trial = 0; trial < 200; ++trial) {
    auto genuine = gen.Scores(gen.Int(1, 30), 10);
    auto impostor = gen.Scores(gen.Int(1, 30), 10);
    const auto r = ComputeEer(genuine, impostor);
    CHECK(r.eer >= 0.0);
    CHECK(r.eer <= 1.0);
    for (std::size_t k = 1; k < r.roc.size(); ++k) {
      CHECK(r.roc[k].threshold > r.roc[k - 1].threshold);
      CHECK(r.roc[k].fmr <= r.roc[k - 1].fmr);
      CHECK(r.roc[k].fnmr >= r.roc[k - 1].fnmr);
    }
    for (auto& s : genuine) s = std::pow(s, 3) * 0.5 + 0.1;
    for (auto& s : impostor) s = std::pow(s, 3) * 0.5 + 0.1;
    CHECK(ComputeEer(genuine, impostor).eer == r.eer);
  }
}

TEST_CASE("rank statistics") {
  const std::vector<double> lo = {1, 2, 3, 4, 6}, hi = {5, 7, 8, 9, 10};
  CHECK(MannWhitneyLessP(lo, hi) == doctest::Approx(2.0 / 252.0));
  const std::vector<double> lo_t = {1, 2, 3, 3, 6}, hi_t = {3, 7, 8, 9, 10};
  CHECK(MannWhitneyLessP(lo_t, hi_t) == doctest::Approx(4.0 / 252.0));
  CHECK(MannWhitneyLessP(hi, lo) > 0.99);
  const std::vector<double> a = {1, 2, 3, 4, 5}, b = {2, 4, 6, 8, 10};
  CHECK(WelchTwoSidedP(a, b) == doctest::Approx(0.10753119493062718).epsilon(1e-9));
  const std::vector<double> flat = {0.2, 0.2};
  CHECK(WelchTwoSidedP(flat, flat) == 1.0);
}

TEST_CASE("histogram intersection") {
  const std::vector<double> a = {0.1, 0.2, 0.3}, b = {0.9, 0.95};
  CHECK(HistogramIntersection(a, a) == doctest::Approx(1.0));
  CHECK(HistogramIntersection(a, b) == 0.0);
  const std::vector<double> c = {0.105, 0.905};
  CHECK(HistogramIntersection(a, c) == doctest::Approx(1.0 / 3.0));
  const auto h = Histogram(std::vector<double>{0.0, 1.0, 0.5}, 2);
  CHECK(h == std::vector<double>{1.0 / 3.0, 2.0 / 3.0});
}

Dataset SmallSynthetic() {
  SynthParams p;
  p.fingers = 5;
  p.samples_per_finger = 3;
  p.min_minutiae = 8;
  p.max_minutiae = 14;
  p.field = 150.0;
  return GroupDataset(SynthDataset(4, p));
}

MccParams SmallMcc() {
  MccParams mcc = MccParams::ForRadius(70);
  mcc.ns = 6;
  mcc.nd = 3;
  return mcc;
}

TEST_CASE("evaluator reports are reproducible and thread independent") {
  const Evaluator ev(SmallSynthetic(), SmallMcc());
  const HashKey key{3, 30, 12, ev.dim()};
  const EvalReport a = ev.Evaluate(key, LgsParams{}, 1);
  const EvalReport b = ev.Evaluate(key, LgsParams{}, 4);
  CHECK(a.genuine.size() == 15);
  CHECK(a.impostor.size() == 10);
  CHECK(a.GenuineScores() == b.GenuineScores());
  CHECK(a.ImpostorScores() == b.ImpostorScores());
  CHECK(a.eer == b.eer);
  CHECK(a.roc == b.roc);
  CHECK_THROWS_AS(ev.Evaluate({3, 30, 12, ev.dim() + 1}, LgsParams{}), ArgumentError);
}

TEST_CASE("evaluator hashes agree with direct hashing") {
  const Evaluator ev(SmallSynthetic(), SmallMcc());
  const HashKey key{8, 20, 9, ev.dim()};
  const auto all = ev.HashAll(key);
  const auto bank = GaussianBank::Derive(key);
  const TemplateRef ref{2, 1};
  const auto direct = GiomHash(EncodeCylinders(ev.dataset().fingers[2].samples[1], ev.mcc()), bank);
  CHECK(all[static_cast<std::size_t>(ev.FlatIndex(ref))] == direct);
  const std::vector<TemplateRef> refs = {ref, {0, 0}};
  const auto some = ev.HashSome(refs, key);
  CHECK(some[0] == direct);
  CHECK(some[1] == all[0]);
}

TEST_CASE("single-cell sweep equals a direct evaluation") {
  const Evaluator ev(SmallSynthetic(), SmallMcc());
  const std::vector<int> ms = {25}, qs = {7};
  const auto rows = ev.Sweep(ms, qs, 1, 50, LgsParams{});
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].seeds == std::vector<std::uint64_t>{50});
  CHECK(rows[0].eers[0] == ev.Evaluate({50, 25, 7, ev.dim()}, LgsParams{}).eer);
}

TEST_CASE("sweep cells equal direct evaluations under prefix keys") {
  const Evaluator ev(SmallSynthetic(), SmallMcc());
  const std::vector<int> ms = {3, 40}, qs = {4, 10};
  const auto rows = ev.Sweep(ms, qs, 2, 9, LgsParams{}, 2);
  REQUIRE(rows.size() == 4);
  for (const auto& row : rows) {
    REQUIRE(row.eers.size() == 2);
    for (int t = 0; t < 2; ++t) {
      const HashKey key{TrialSeed(9, t), row.m, row.q, ev.dim()};
      CHECK(row.eers[static_cast<std::size_t>(t)] == ev.Evaluate(key, LgsParams{}).eer);
    }
    CHECK(row.MeanEer() == doctest::Approx((row.eers[0] + row.eers[1]) / 2));
  }
  CHECK(rows[0].m == 3);
  CHECK(rows[1].q == 10);
}

}  // namespace
}  // namespace giom
