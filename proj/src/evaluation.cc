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

#include "giom/evaluation.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include <boost/math/distributions/students_t.hpp>

#include "giom/hashing.h"
#include "giom/parallel.h"
#include "giom/randomness.h"

namespace giom {

int Dataset::template_count() const {
  int total = 0;
  for (const auto& f : fingers) total += static_cast<int>(f.samples.size());
  return total;
}

Dataset GroupDataset(std::vector<MinutiaeTemplate> templates) {
  std::map<std::string, std::vector<MinutiaeTemplate>> by_finger;
  for (auto& t : templates) by_finger[t.finger_id].push_back(std::move(t));
  Dataset dataset;
  for (auto& [id, samples] : by_finger) {
    std::sort(samples.begin(), samples.end(),
              [](const MinutiaeTemplate& a, const MinutiaeTemplate& b) {
                return a.sample_id < b.sample_id;
              });
    for (std::size_t i = 1; i < samples.size(); ++i) {
      if (samples[i].sample_id == samples[i - 1].sample_id) {
        throw ArgumentError("duplicate template finger=" + id +
                            " sample=" + std::to_string(samples[i].sample_id));
      }
    }
    dataset.fingers.push_back({id, std::move(samples)});
  }
  return dataset;
}

std::vector<TemplatePair> GenuinePairs(const Dataset& dataset) {
  std::vector<TemplatePair> pairs;
  for (int f = 0; f < static_cast<int>(dataset.fingers.size()); ++f) {
    const int s = static_cast<int>(dataset.fingers[static_cast<std::size_t>(f)].samples.size());
    if (s < 2) {
      throw ArgumentError("finger " + dataset.fingers[static_cast<std::size_t>(f)].id +
                          " has fewer than two samples");
    }
    for (int i = 0; i < s; ++i) {
      for (int j = i + 1; j < s; ++j) pairs.push_back({{f, i}, {f, j}});
    }
  }
  return pairs;
}

std::vector<TemplatePair> ImpostorPairs(const Dataset& dataset) {
  std::vector<TemplatePair> pairs;
  const int count = static_cast<int>(dataset.fingers.size());
  for (int f = 0; f < count; ++f) {
    for (int g = f + 1; g < count; ++g) pairs.push_back({{f, 0}, {g, 0}});
  }
  return pairs;
}

EerResult ComputeEer(std::span<const double> genuine,
                     std::span<const double> impostor) {
  if (genuine.empty() || impostor.empty()) {
    throw ArgumentError("EER needs non-empty genuine and impostor scores");
  }
  std::vector<double> gen(genuine.begin(), genuine.end());
  std::vector<double> imp(impostor.begin(), impostor.end());
  for (double v : gen) {
    if (!std::isfinite(v)) throw ArgumentError("non-finite genuine score");
  }
  for (double v : imp) {
    if (!std::isfinite(v)) throw ArgumentError("non-finite impostor score");
  }
  std::sort(gen.begin(), gen.end());
  std::sort(imp.begin(), imp.end());
  std::vector<double> thresholds;
  thresholds.reserve(gen.size() + imp.size());
  std::merge(gen.begin(), gen.end(), imp.begin(), imp.end(),
             std::back_inserter(thresholds));
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()),
                   thresholds.end());

  const auto n_gen = static_cast<std::int64_t>(gen.size());
  const auto n_imp = static_cast<std::int64_t>(imp.size());
  EerResult result;
  result.roc.reserve(thresholds.size());
  std::int64_t best_balance = INT64_MAX;
  std::int64_t best_total = INT64_MAX;
  for (double t : thresholds) {
    const auto false_matches = static_cast<std::int64_t>(
        imp.end() - std::lower_bound(imp.begin(), imp.end(), t));
    const auto false_non_matches = static_cast<std::int64_t>(
        std::lower_bound(gen.begin(), gen.end(), t) - gen.begin());
    const double fmr = static_cast<double>(false_matches) / static_cast<double>(n_imp);
    const double fnmr =
        static_cast<double>(false_non_matches) / static_cast<double>(n_gen);
    result.roc.push_back({t, fmr, fnmr});
    // Rates scaled by n_gen * n_imp are integers.
    const std::int64_t fm_scaled = false_matches * n_gen;
    const std::int64_t fnm_scaled = false_non_matches * n_imp;
    const std::int64_t balance = std::llabs(fm_scaled - fnm_scaled);
    const std::int64_t total = fm_scaled + fnm_scaled;
    if (balance < best_balance || (balance == best_balance && total < best_total)) {
      best_balance = balance;
      best_total = total;
      result.threshold = t;
      result.eer = (fmr + fnmr) / 2.0;
    }
  }
  return result;
}

std::vector<double> EvalReport::GenuineScores() const {
  std::vector<double> out;
  out.reserve(genuine.size());
  for (const auto& p : genuine) out.push_back(p.score);
  return out;
}

std::vector<double> EvalReport::ImpostorScores() const {
  std::vector<double> out;
  out.reserve(impostor.size());
  for (const auto& p : impostor) out.push_back(p.score);
  return out;
}

double SweepRow::MeanEer() const {
  if (eers.empty()) return 0.0;
  return std::accumulate(eers.begin(), eers.end(), 0.0) /
         static_cast<double>(eers.size());
}

double SweepRow::StddevEer() const {
  if (eers.size() < 2) return 0.0;
  const double mean = MeanEer();
  double ss = 0.0;
  for (double e : eers) ss += (e - mean) * (e - mean);
  return std::sqrt(ss / static_cast<double>(eers.size() - 1));
}

Evaluator::Evaluator(Dataset dataset, MccParams mcc)
    : dataset_(std::move(dataset)), mcc_(mcc) {
  mcc_.Validate();
  if (dataset_.fingers.empty()) throw ArgumentError("dataset is empty");
  std::vector<Eigen::MatrixXd> encoded;
  Eigen::Index rows = 0;
  for (const auto& finger : dataset_.fingers) {
    finger_offset_.push_back(static_cast<int>(encoded.size()));
    for (const auto& sample : finger.samples) {
      encoded.push_back(EncodeCylinders(sample, mcc_).vectors());
      row_offset_.push_back(rows);
      rows += encoded.back().rows();
    }
  }
  row_offset_.push_back(rows);
  stacked_.resize(rows, mcc_.dim());
  for (std::size_t i = 0; i < encoded.size(); ++i) {
    stacked_.middleRows(row_offset_[i], encoded[i].rows()) = encoded[i];
  }
}

int Evaluator::FlatIndex(TemplateRef ref) const {
  if (ref.finger < 0 || ref.finger >= static_cast<int>(dataset_.fingers.size())) {
    throw ArgumentError("finger index out of range");
  }
  const auto& finger = dataset_.fingers[static_cast<std::size_t>(ref.finger)];
  if (ref.sample < 0 || ref.sample >= static_cast<int>(finger.samples.size())) {
    throw ArgumentError("sample index out of range");
  }
  return finger_offset_[static_cast<std::size_t>(ref.finger)] + ref.sample;
}

Eigen::MatrixXd Evaluator::Cylinders(TemplateRef ref) const {
  const auto flat = static_cast<std::size_t>(FlatIndex(ref));
  return stacked_.middleRows(row_offset_[flat],
                             row_offset_[flat + 1] - row_offset_[flat]);
}

std::vector<HashedTemplate> Evaluator::Split(const std::vector<int>& flat,
                                             const CodeMatrix& codes, int q,
                                             const std::string& fingerprint) const {
  std::vector<HashedTemplate> out;
  out.reserve(flat.size());
  Eigen::Index row = 0;
  for (int index : flat) {
    const auto i = static_cast<std::size_t>(index);
    const Eigen::Index n = row_offset_[i + 1] - row_offset_[i];
    out.emplace_back(codes.middleRows(row, n), q, fingerprint);
    row += n;
  }
  return out;
}

std::vector<HashedTemplate> Evaluator::HashAll(const HashKey& key,
                                               int threads) const {
  if (key.d != dim()) {
    throw ArgumentError("key dimension " + std::to_string(key.d) +
                        " does not match cylinder dimension " +
                        std::to_string(dim()));
  }
  const GaussianBank bank = GaussianBank::Derive(key);
  const int q = key.q;
  auto codes = ArgmaxCodes(stacked_, bank, std::span<const int>(&q, 1), threads);
  std::vector<int> flat(row_offset_.size() - 1);
  std::iota(flat.begin(), flat.end(), 0);
  return Split(flat, codes.front(), q, key.Fingerprint());
}

std::vector<HashedTemplate> Evaluator::HashSome(std::span<const TemplateRef> refs,
                                                const HashKey& key,
                                                int threads) const {
  if (key.d != dim()) throw ArgumentError("key dimension does not match cylinders");
  std::vector<int> flat;
  Eigen::Index rows = 0;
  for (const auto& ref : refs) {
    flat.push_back(FlatIndex(ref));
    const auto i = static_cast<std::size_t>(flat.back());
    rows += row_offset_[i + 1] - row_offset_[i];
  }
  Eigen::MatrixXd subset(rows, dim());
  Eigen::Index row = 0;
  for (int index : flat) {
    const auto i = static_cast<std::size_t>(index);
    const Eigen::Index n = row_offset_[i + 1] - row_offset_[i];
    subset.middleRows(row, n) = stacked_.middleRows(row_offset_[i], n);
    row += n;
  }
  const GaussianBank bank = GaussianBank::Derive(key);
  const int q = key.q;
  auto codes = ArgmaxCodes(subset, bank, std::span<const int>(&q, 1), threads);
  return Split(flat, codes.front(), q, key.Fingerprint());
}

std::vector<double> ScorePairs(const Evaluator& evaluator,
                               std::span<const TemplatePair> pairs,
                               const std::vector<HashedTemplate>& left,
                               const std::vector<HashedTemplate>& right,
                               const LgsParams& lgs, bool across_keys,
                               int threads) {
  std::vector<double> scores(pairs.size());
  ParallelFor(pairs.size(), threads, [&](std::size_t k) {
    const auto& a = left.at(static_cast<std::size_t>(evaluator.FlatIndex(pairs[k].a)));
    const auto& b = right.at(static_cast<std::size_t>(evaluator.FlatIndex(pairs[k].b)));
    scores[k] = across_keys ? LgsMatchAcrossKeys(a, b, lgs).value()
                            : LgsMatch(a, b, lgs).value();
  });
  return scores;
}

namespace {

std::vector<ScoredPair> Attach(std::span<const TemplatePair> pairs,
                               const std::vector<double>& scores) {
  std::vector<ScoredPair> out;
  out.reserve(pairs.size());
  for (std::size_t k = 0; k < pairs.size(); ++k) out.push_back({pairs[k], scores[k]});
  return out;
}

}  // namespace

EvalReport Evaluator::Evaluate(const HashKey& key, const LgsParams& lgs,
                               int threads) const {
  lgs.Validate();
  const auto genuine_pairs = GenuinePairs(dataset_);
  const auto impostor_pairs = ImpostorPairs(dataset_);
  if (impostor_pairs.empty()) {
    throw ArgumentError("evaluation needs at least two fingers");
  }
  const auto hashed = HashAll(key, threads);
  EvalReport report;
  report.key = key;
  report.lgs = lgs;
  report.mcc = mcc_;
  report.genuine = Attach(genuine_pairs, ScorePairs(*this, genuine_pairs, hashed,
                                                    hashed, lgs, false, threads));
  report.impostor = Attach(impostor_pairs, ScorePairs(*this, impostor_pairs, hashed,
                                                      hashed, lgs, false, threads));
  const auto eer = ComputeEer(report.GenuineScores(), report.ImpostorScores());
  report.eer = eer.eer;
  report.eer_threshold = eer.threshold;
  report.roc = eer.roc;
  return report;
}

std::vector<SweepRow> Evaluator::Sweep(std::span<const int> m_values,
                                       std::span<const int> q_values, int trials,
                                       std::uint64_t base_seed,
                                       const LgsParams& lgs, int threads) const {
  if (m_values.empty() || q_values.empty()) {
    throw ArgumentError("sweep needs non-empty m and q lists");
  }
  if (trials < 1) throw ArgumentError("sweep needs at least one trial");
  lgs.Validate();
  const int m_max = *std::max_element(m_values.begin(), m_values.end());
  const int q_max = *std::max_element(q_values.begin(), q_values.end());
  for (int m : m_values) {
    if (m < 1) throw ArgumentError("m must be >= 1");
  }
  for (int q : q_values) {
    if (q < 2) throw ArgumentError("argmax over fewer than two candidates is degenerate");
  }
  const auto genuine_pairs = GenuinePairs(dataset_);
  const auto impostor_pairs = ImpostorPairs(dataset_);
  if (impostor_pairs.empty()) throw ArgumentError("sweep needs at least two fingers");

  std::vector<SweepRow> rows;
  for (int m : m_values) {
    for (int q : q_values) rows.push_back({m, q, {}, {}});
  }
  std::vector<int> flat(row_offset_.size() - 1);
  std::iota(flat.begin(), flat.end(), 0);

  for (int t = 0; t < trials; ++t) {
    const std::uint64_t seed = TrialSeed(base_seed, t);
    const GaussianBank bank = GaussianBank::Derive({seed, m_max, q_max, dim()});
    const auto codes = ArgmaxCodes(stacked_, bank, q_values, threads);
    for (std::size_t qi = 0; qi < q_values.size(); ++qi) {
      for (std::size_t mi = 0; mi < m_values.size(); ++mi) {
        const HashKey key{seed, m_values[mi], q_values[qi], dim()};
        const auto hashed = Split(flat, codes[qi].leftCols(key.m), key.q,
                                  key.Fingerprint());
        const auto gen = ScorePairs(*this, genuine_pairs, hashed, hashed, lgs,
                                    false, threads);
        const auto imp = ScorePairs(*this, impostor_pairs, hashed, hashed, lgs,
                                    false, threads);
        SweepRow& row = rows[mi * q_values.size() + qi];
        row.seeds.push_back(seed);
        row.eers.push_back(ComputeEer(gen, imp).eer);
      }
    }
  }
  return rows;
}

double MannWhitneyLessP(std::span<const double> x, std::span<const double> y) {
  const std::size_t nx = x.size();
  const std::size_t ny = y.size();
  if (nx == 0 || ny == 0) throw ArgumentError("Mann-Whitney needs two samples");
  if (nx + ny > 24) throw ArgumentError("exact Mann-Whitney limited to 24 values");
  std::vector<double> pooled(x.begin(), x.end());
  pooled.insert(pooled.end(), y.begin(), y.end());

  auto u_stat = [&](const std::vector<char>& in_x) {
    double u = 0.0;
    for (std::size_t i = 0; i < pooled.size(); ++i) {
      if (!in_x[i]) continue;
      for (std::size_t j = 0; j < pooled.size(); ++j) {
        if (in_x[j]) continue;
        if (pooled[i] > pooled[j]) u += 1.0;
        else if (pooled[i] == pooled[j]) u += 0.5;
      }
    }
    return u;
  };

  std::vector<char> mask(pooled.size(), 0);
  std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(nx), 1);
  const double observed = u_stat(mask);
  // Enumerate every placement of nx "x" labels in lexicographic order.
  std::vector<char> labels(pooled.size(), 0);
  std::fill(labels.end() - static_cast<std::ptrdiff_t>(nx), labels.end(), 1);
  std::size_t total = 0;
  std::size_t at_most = 0;
  do {
    ++total;
    if (u_stat(labels) <= observed + 1e-9) ++at_most;
  } while (std::next_permutation(labels.begin(), labels.end()));
  return static_cast<double>(at_most) / static_cast<double>(total);
}

double WelchTwoSidedP(std::span<const double> x, std::span<const double> y) {
  if (x.size() < 2 || y.size() < 2) {
    throw ArgumentError("Welch test needs at least two values per sample");
  }
  auto moments = [](std::span<const double> v) {
    const double n = static_cast<double>(v.size());
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
    double ss = 0.0;
    for (double e : v) ss += (e - mean) * (e - mean);
    return std::pair{mean, ss / (n - 1.0)};
  };
  const auto [mx, vx] = moments(x);
  const auto [my, vy] = moments(y);
  const double nx = static_cast<double>(x.size());
  const double ny = static_cast<double>(y.size());
  const double ax = vx / nx;
  const double ay = vy / ny;
  if (ax + ay == 0.0) return mx == my ? 1.0 : 0.0;
  const double t = (mx - my) / std::sqrt(ax + ay);
  const double df = (ax + ay) * (ax + ay) /
                    (ax * ax / (nx - 1.0) + ay * ay / (ny - 1.0));
  const boost::math::students_t dist(df);
  return 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
}

std::vector<double> Histogram(std::span<const double> values, int bins,
                              double lo, double hi) {
  if (values.empty()) throw ArgumentError("histogram of an empty sample");
  if (bins < 1 || !(hi > lo)) throw ArgumentError("invalid histogram range");
  std::vector<double> counts(static_cast<std::size_t>(bins), 0.0);
  for (double v : values) {
    auto bin = static_cast<long>(std::floor((v - lo) / (hi - lo) * bins));
    bin = std::clamp<long>(bin, 0, bins - 1);
    counts[static_cast<std::size_t>(bin)] += 1.0;
  }
  for (double& c : counts) c /= static_cast<double>(values.size());
  return counts;
}

double HistogramIntersection(std::span<const double> a,
                             std::span<const double> b, int bins, double lo,
                             double hi) {
  const auto ha = Histogram(a, bins, lo, hi);
  const auto hb = Histogram(b, bins, lo, hi);
  double total = 0.0;
  for (std::size_t i = 0; i < ha.size(); ++i) total += std::min(ha[i], hb[i]);
  return total;
}

}  // namespace giom
