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

#ifndef GIOM_SECURITY_H_
#define GIOM_SECURITY_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "giom/evaluation.h"
#include "giom/randomness.h"
#include "giom/types.h"

namespace giom {

// <normal, x> > 0 when strict, >= 0 otherwise.
struct Constraint {
  Eigen::VectorXd normal;
  bool strict = true;
};

// Half-spaces through the origin whose intersection is the set of inputs
// that hash to a given code.
struct InequalitySystem {
  std::vector<Constraint> constraints;
  int dim = 0;

  // With `require_strict`, every constraint must hold strictly.
  bool Satisfies(const Eigen::VectorXd& x, bool require_strict = false) const;
};

// For position i with winning column j*, one constraint w_{j*} - w_j per
// losing column j: strict for j < j* and non-strict for j > j*, mirroring the
// smallest-index tie-break. Exactly m * (q - 1) constraints.
InequalitySystem BuildInequalities(const GaussianBank& bank,
                                   std::span<const int> code);

enum class CandidateDomain { kNormal, kUnitCube };

struct PreimageResult {
  std::optional<Eigen::VectorXd> vector;
  std::int64_t attempts_used = 0;
  CandidateDomain domain = CandidateDomain::kNormal;
};

// Rejection sampling: candidates alternate between a standard normal vector
// and a uniform draw from [0, 1]^d until one satisfies every constraint
// strictly. Returns an empty result when `attempts` run out.
PreimageResult SamplePreimage(const InequalitySystem& system,
                              std::int64_t attempts, std::uint64_t seed);

// Fraction of uniform [0, 1]^d samples that satisfy the system (non-strict).
double PreimageVolumeEstimate(const InequalitySystem& system,
                              std::int64_t samples, std::uint64_t seed);

// A worked example: input vector, explicit bank and the code it hashes to.
struct CaseStudy {
  std::string name;
  Eigen::VectorXd x;
  GaussianBank bank;
  std::vector<int> code;
};

// m = d = 3, q = 2; x = [0.8, 0.1, 0.7] hashes to [1, 2, 1].
CaseStudy CaseStudyOne();
// m = 2 < d = 4, q = 2; x = [0.8, 0.1, 0.7, 0.5] hashes to [1, 2].
CaseStudy CaseStudyTwo();

// Closed-form region for the case-one code:
//   x1 > 0, -x1/14 < x2 <= 14 x1 / 15, (3 x2 - 2 x1) / 3 < x3 < (6 x1 - 5 x2) / 5.
// It coincides with the preimage cone on the non-negative orthant. Below
// x2 = -x1/14 the third constraint becomes the binding lower bound on x3 and
// the cone extends down to x2 > -61 x1 / 70, outside this region.
bool InCaseOneClosedForm(const Eigen::VectorXd& x);

// Size of the brute-force guessing space when each of `dim` cells is guessed
// to `decimals` decimal places: 10^(decimals * dim).
struct GuessingSpace {
  int decimals = 4;
  int dim = 1536;
  long long exponent = 0;  // log10 of the count
  std::string symbolic;    // "10^6144"
};
GuessingSpace BruteForceGuessingSpace(int decimals, int dim);

struct UnlinkabilityResult {
  std::vector<ScoredPair> mated_genuine;       // same finger, keys a / b
  std::vector<ScoredPair> non_mated_impostor;  // different fingers, keys a / b
  std::vector<std::string> warnings;
};

// Mated pairs follow the genuine protocol and non-mated pairs the impostor
// protocol; the first template of each pair is hashed under key_a and the
// second under key_b. Throws ArgumentError when the keys share a seed or
// differ in (m, q, d).
UnlinkabilityResult UnlinkabilityExperiment(const Evaluator& evaluator,
                                            const HashKey& key_a,
                                            const HashKey& key_b,
                                            const LgsParams& lgs,
                                            int threads = 1);

struct RevocabilityResult {
  // Finger-major: finger f, renewed key k at index f * n_keys + k.
  std::vector<double> mated_genuine;
  std::vector<std::uint64_t> renewed_seeds;
  std::vector<double> genuine;
  std::vector<double> impostor;
};

// Every finger's first sample is re-hashed under n_keys renewed keys with
// seeds key_seed, key_seed + 1, ... (same m, q, d as base_key) and matched
// against its base-key code. Genuine and impostor scores use base_key under
// the usual protocol.
RevocabilityResult RevocabilityExperiment(const Evaluator& evaluator,
                                          const HashKey& base_key, int n_keys,
                                          std::uint64_t key_seed,
                                          const LgsParams& lgs, int threads = 1);

}  // namespace giom

#endif  // GIOM_SECURITY_H_
