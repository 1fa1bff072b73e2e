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

#ifndef GIOM_EVALUATION_H_
#define GIOM_EVALUATION_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "giom/matching.h"
#include "giom/mcc.h"
#include "giom/types.h"

namespace giom {

struct Finger {
  std::string id;
  std::vector<MinutiaeTemplate> samples;  // ascending sample_id
};

struct Dataset {
  std::vector<Finger> fingers;  // ascending finger id

  int template_count() const;
};

// Groups templates by finger id and orders samples by sample id. Throws
// ArgumentError on a duplicate (finger_id, sample_id).
Dataset GroupDataset(std::vector<MinutiaeTemplate> templates);

// Indices into Dataset::fingers and Finger::samples.
struct TemplateRef {
  int finger = 0;
  int sample = 0;

  friend auto operator<=>(const TemplateRef&, const TemplateRef&) = default;
};

struct TemplatePair {
  TemplateRef a;
  TemplateRef b;

  friend auto operator<=>(const TemplatePair&, const TemplatePair&) = default;
};

// Every unordered same-finger sample pair, F * S * (S - 1) / 2 in total.
// Throws ArgumentError if some finger has fewer than two samples.
std::vector<TemplatePair> GenuinePairs(const Dataset& dataset);

// First samples of distinct fingers, F * (F - 1) / 2 pairs.
std::vector<TemplatePair> ImpostorPairs(const Dataset& dataset);

struct RocPoint {
  double threshold = 0.0;
  double fmr = 0.0;   // impostor scores >= threshold
  double fnmr = 0.0;  // genuine scores < threshold

  friend bool operator==(const RocPoint&, const RocPoint&) = default;
};

struct EerResult {
  double eer = 0.0;
  double threshold = 0.0;
  std::vector<RocPoint> roc;  // one point per distinct observed score
};

// Exact EER over the thresholds given by the observed scores. The EER is
// (FMR + FNMR) / 2 at the threshold minimizing |FMR - FNMR|; among equally
// balanced thresholds the one with the smaller mean error wins, then the
// lower threshold. Comparisons are done on integer counts, so the result is
// independent of floating-point rounding in the rates. Throws ArgumentError
// if either set is empty.
EerResult ComputeEer(std::span<const double> genuine,
                     std::span<const double> impostor);

struct ScoredPair {
  TemplatePair pair;
  double score = 0.0;
};

struct EvalReport {
  HashKey key;
  LgsParams lgs;
  MccParams mcc;
  std::vector<ScoredPair> genuine;
  std::vector<ScoredPair> impostor;
  double eer = 0.0;
  double eer_threshold = 0.0;
  std::vector<RocPoint> roc;

  std::vector<double> GenuineScores() const;
  std::vector<double> ImpostorScores() const;
};

struct SweepRow {
  int m = 0;
  int q = 0;
  std::vector<std::uint64_t> seeds;
  std::vector<double> eers;

  double MeanEer() const;
  double StddevEer() const;
};

// Seed of trial t in a sweep starting from `base_seed`.
inline std::uint64_t TrialSeed(std::uint64_t base_seed, int trial) {
  return base_seed + static_cast<std::uint64_t>(trial);
}

// Holds a dataset with its cylinders encoded once, so repeated evaluations
// under different keys only pay for hashing and matching.
class Evaluator {
 public:
  Evaluator(Dataset dataset, MccParams mcc);

  const Dataset& dataset() const { return dataset_; }
  const MccParams& mcc() const { return mcc_; }
  int dim() const { return mcc_.dim(); }

  // Position of a template in the finger-major flat order.
  int FlatIndex(TemplateRef ref) const;
  // Cylinder vectors of one template (rows are minutiae).
  Eigen::MatrixXd Cylinders(TemplateRef ref) const;

  // Hashes every template under `key` (key.d must equal dim()).
  std::vector<HashedTemplate> HashAll(const HashKey& key, int threads = 1) const;
  // Hashes a subset of templates, returned in the order of `refs`.
  std::vector<HashedTemplate> HashSome(std::span<const TemplateRef> refs,
                                       const HashKey& key, int threads = 1) const;

  EvalReport Evaluate(const HashKey& key, const LgsParams& lgs,
                      int threads = 1) const;

  // Mean EER per (m, q) over `trials` seeds TrialSeed(base_seed, t). For each
  // trial the bank is drawn once at (max m, max q); smaller m use the leading
  // matrices and smaller q the leading columns, which is exactly the bank
  // DeriveBank would produce for that (seed, m, q, d).
  std::vector<SweepRow> Sweep(std::span<const int> m_values,
                              std::span<const int> q_values, int trials,
                              std::uint64_t base_seed, const LgsParams& lgs,
                              int threads = 1) const;

 private:
  std::vector<HashedTemplate> Split(const std::vector<int>& flat,
                                    const CodeMatrix& codes, int q,
                                    const std::string& fingerprint) const;

  Dataset dataset_;
  MccParams mcc_;
  std::vector<int> finger_offset_;
  std::vector<Eigen::Index> row_offset_;  // per flat template, plus end
  Eigen::MatrixXd stacked_;                // all cylinders, template-major
};

// Scores pairs drawn from two hashed collections indexed by flat template
// position: pair.a looks up `left`, pair.b looks up `right`. `across_keys`
// skips the key fingerprint check. Scores come back in pair order.
std::vector<double> ScorePairs(const Evaluator& evaluator,
                               std::span<const TemplatePair> pairs,
                               const std::vector<HashedTemplate>& left,
                               const std::vector<HashedTemplate>& right,
                               const LgsParams& lgs, bool across_keys,
                               int threads = 1);

// Exact one-sided Mann-Whitney p-value for "x tends to be smaller than y":
// the probability under exchangeability that U = #{x_i > y_j} + ties / 2 is
// at most the observed value. Enumerates every split of the pooled sample,
// so n + m is limited to 24.
double MannWhitneyLessP(std::span<const double> x, std::span<const double> y);

// Two-sided Welch t-test p-value. Zero-variance samples give 1 for equal
// means and 0 otherwise.
double WelchTwoSidedP(std::span<const double> x, std::span<const double> y);

// Sum over `bins` equal-width bins on [lo, hi] of min(p_b, q_b), where p and
// q are the normalized histograms of the two samples.
double HistogramIntersection(std::span<const double> a,
                             std::span<const double> b, int bins = 100,
                             double lo = 0.0, double hi = 1.0);

// Normalized histogram counts (fractions) over equal-width bins.
std::vector<double> Histogram(std::span<const double> values, int bins = 100,
                              double lo = 0.0, double hi = 1.0);

}  // namespace giom

#endif  // GIOM_EVALUATION_H_
