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

#include "giom/security.h"

#include <string>

#include "giom/hashing.h"

namespace giom {

bool InequalitySystem::Satisfies(const Eigen::VectorXd& x,
                                 bool require_strict) const {
  if (x.size() != dim) throw ArgumentError("vector dimension does not match system");
  for (const auto& c : constraints) {
    const double value = c.normal.dot(x);
    if (c.strict || require_strict) {
      if (!(value > 0.0)) return false;
    } else if (!(value >= 0.0)) {
      return false;
    }
  }
  return true;
}

InequalitySystem BuildInequalities(const GaussianBank& bank,
                                   std::span<const int> code) {
  if (static_cast<int>(code.size()) != bank.m()) {
    throw ArgumentError("code length does not match bank m");
  }
  InequalitySystem system;
  system.dim = bank.d();
  system.constraints.reserve(code.size() * static_cast<std::size_t>(bank.q() - 1));
  for (int i = 0; i < bank.m(); ++i) {
    const int winner = code[static_cast<std::size_t>(i)];
    if (winner < 1 || winner > bank.q()) {
      throw ArgumentError("code entry outside [1, q]");
    }
    const Eigen::MatrixXd w = bank.Matrix(i);
    for (int j = 1; j <= bank.q(); ++j) {
      if (j == winner) continue;
      system.constraints.push_back(
          {w.col(winner - 1) - w.col(j - 1), /*strict=*/j < winner});
    }
  }
  return system;
}

PreimageResult SamplePreimage(const InequalitySystem& system,
                              std::int64_t attempts, std::uint64_t seed) {
  if (attempts < 1) throw ArgumentError("attempts must be >= 1");
  Rng rng(seed, 0);
  Eigen::VectorXd candidate(system.dim);
  PreimageResult result;
  for (std::int64_t a = 0; a < attempts; ++a) {
    const CandidateDomain domain =
        a % 2 == 0 ? CandidateDomain::kNormal : CandidateDomain::kUnitCube;
    for (int k = 0; k < system.dim; ++k) {
      candidate(k) = domain == CandidateDomain::kNormal ? rng.Normal() : rng.Uniform();
    }
    result.attempts_used = a + 1;
    if (system.Satisfies(candidate, /*require_strict=*/true)) {
      result.vector = candidate;
      result.domain = domain;
      return result;
    }
  }
  return result;
}

double PreimageVolumeEstimate(const InequalitySystem& system,
                              std::int64_t samples, std::uint64_t seed) {
  if (samples < 1) throw ArgumentError("samples must be >= 1");
  if (system.constraints.empty()) return 1.0;
  Rng rng(seed, 1);
  Eigen::VectorXd candidate(system.dim);
  std::int64_t inside = 0;
  for (std::int64_t s = 0; s < samples; ++s) {
    for (int k = 0; k < system.dim; ++k) candidate(k) = rng.Uniform();
    if (system.Satisfies(candidate)) ++inside;
  }
  return static_cast<double>(inside) / static_cast<double>(samples);
}

namespace {

Eigen::MatrixXd Rows(std::initializer_list<std::initializer_list<double>> rows) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index r = 0;
  for (const auto& row : rows) {
    Eigen::Index c = 0;
    for (double v : row) m(r, c++) = v;
    ++r;
  }
  return m;
}

}  // namespace

CaseStudy CaseStudyOne() {
  Eigen::VectorXd x(3);
  x << 0.8, 0.1, 0.7;
  std::vector<Eigen::MatrixXd> w = {
      Rows({{0.2, -0.4}, {-0.6, -0.1}, {0.4, 0.9}}),
      Rows({{0.3, 0.7}, {0.3, -0.3}, {-0.1, 0.5}}),
      Rows({{0.1, -0.4}, {0.2, -0.6}, {0.7, 0.1}}),
  };
  return {"case1", x, GaussianBank(std::move(w)), {1, 2, 1}};
}

CaseStudy CaseStudyTwo() {
  Eigen::VectorXd x(4);
  x << 0.8, 0.1, 0.7, 0.5;
  std::vector<Eigen::MatrixXd> w = {
      Rows({{0.2, -0.4}, {-0.6, -0.1}, {0.4, 0.9}, {0.9, 0.5}}),
      Rows({{0.3, 0.7}, {0.3, -0.3}, {-0.1, 0.5}, {0.4, 0.1}}),
  };
  return {"case2", x, GaussianBank(std::move(w)), {1, 2}};
}

bool InCaseOneClosedForm(const Eigen::VectorXd& x) {
  if (x.size() != 3) throw ArgumentError("case one lives in three dimensions");
  const double x1 = x(0), x2 = x(1), x3 = x(2);
  return x1 > 0.0 && -x1 / 14.0 < x2 && x2 <= 14.0 * x1 / 15.0 &&
         (3.0 * x2 - 2.0 * x1) / 3.0 < x3 && x3 < (6.0 * x1 - 5.0 * x2) / 5.0;
}

GuessingSpace BruteForceGuessingSpace(int decimals, int dim) {
  if (decimals < 0 || dim < 1) throw ArgumentError("invalid guessing space");
  GuessingSpace space;
  space.decimals = decimals;
  space.dim = dim;
  space.exponent = static_cast<long long>(decimals) * dim;
  space.symbolic = "10^" + std::to_string(space.exponent);
  return space;
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

UnlinkabilityResult UnlinkabilityExperiment(const Evaluator& evaluator,
                                            const HashKey& key_a,
                                            const HashKey& key_b,
                                            const LgsParams& lgs, int threads) {
  if (key_a.seed == key_b.seed) {
    throw ArgumentError("unlinkability needs two different keys");
  }
  if (key_a.m != key_b.m || key_a.q != key_b.q || key_a.d != key_b.d) {
    throw ArgumentError("unlinkability keys must share m, q and d");
  }
  const auto hashed_a = evaluator.HashAll(key_a, threads);
  const auto hashed_b = evaluator.HashAll(key_b, threads);
  const auto mated = GenuinePairs(evaluator.dataset());
  const auto non_mated = ImpostorPairs(evaluator.dataset());
  UnlinkabilityResult result;
  result.mated_genuine = Attach(
      mated, ScorePairs(evaluator, mated, hashed_a, hashed_b, lgs, true, threads));
  result.non_mated_impostor =
      Attach(non_mated,
             ScorePairs(evaluator, non_mated, hashed_a, hashed_b, lgs, true, threads));
  if (non_mated.empty()) {
    result.warnings.push_back(
        "dataset has a single finger; no non-mated impostor scores");
  }
  return result;
}

RevocabilityResult RevocabilityExperiment(const Evaluator& evaluator,
                                          const HashKey& base_key, int n_keys,
                                          std::uint64_t key_seed,
                                          const LgsParams& lgs, int threads) {
  if (n_keys < 1) throw ArgumentError("n_keys must be >= 1");
  const Dataset& dataset = evaluator.dataset();
  const int fingers = static_cast<int>(dataset.fingers.size());
  std::vector<TemplateRef> firsts;
  for (int f = 0; f < fingers; ++f) firsts.push_back({f, 0});

  RevocabilityResult result;
  const auto base_firsts = evaluator.HashSome(firsts, base_key, threads);
  result.mated_genuine.assign(
      static_cast<std::size_t>(fingers) * static_cast<std::size_t>(n_keys), 0.0);
  for (int k = 0; k < n_keys; ++k) {
    HashKey renewed = base_key;
    renewed.seed = key_seed + static_cast<std::uint64_t>(k);
    result.renewed_seeds.push_back(renewed.seed);
    const auto renewed_firsts = evaluator.HashSome(firsts, renewed, threads);
    for (int f = 0; f < fingers; ++f) {
      const auto fi = static_cast<std::size_t>(f);
      result.mated_genuine[fi * static_cast<std::size_t>(n_keys) +
                           static_cast<std::size_t>(k)] =
          LgsMatchAcrossKeys(renewed_firsts[fi], base_firsts[fi], lgs).value();
    }
  }

  const auto hashed = evaluator.HashAll(base_key, threads);
  const auto genuine_pairs = GenuinePairs(dataset);
  const auto impostor_pairs = ImpostorPairs(dataset);
  result.genuine = ScorePairs(evaluator, genuine_pairs, hashed, hashed, lgs,
                              false, threads);
  result.impostor = ScorePairs(evaluator, impostor_pairs, hashed, hashed, lgs,
                               false, threads);
  return result;
}

}  // namespace giom
