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

#include "giom/types.h"

#include <cmath>
#include <cstdio>

namespace giom {

namespace detail {

std::uint64_t Mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::string Hex64(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(value));
  return buf;
}

}  // namespace detail

using detail::Mix64;

double WrapAngle(double radians) {
  double wrapped = std::fmod(radians, kTwoPi);
  if (wrapped < 0.0) wrapped += kTwoPi;
  // fmod of a tiny negative value can round up to exactly 2pi.
  if (wrapped >= kTwoPi) wrapped = 0.0;
  return wrapped;
}

Minutia::Minutia(double x_in, double y_in, double theta_in)
    : x(x_in), y(y_in), theta(WrapAngle(theta_in)) {
  if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(theta_in)) {
    throw ArgumentError("minutia fields must be finite");
  }
  if (x < 0.0 || y < 0.0) {
    throw ArgumentError("minutia coordinates must be non-negative");
  }
}

MinutiaeTemplate::MinutiaeTemplate(std::string finger, int sample,
                                   std::vector<Minutia> pts)
    : finger_id(std::move(finger)), sample_id(sample), points(std::move(pts)) {
  if (points.empty()) {
    throw ArgumentError("template must contain ≥1 minutia");
  }
}

CylinderSet::CylinderSet(Eigen::MatrixXd vectors) : vectors_(std::move(vectors)) {
  if (vectors_.size() > 0 &&
      (!vectors_.allFinite() || vectors_.minCoeff() < 0.0 ||
       vectors_.maxCoeff() > 1.0)) {
    throw ArgumentError("cylinder values must lie in [0, 1]");
  }
}

void HashKey::Validate() const {
  if (m < 1) throw ArgumentError("m must be >= 1");
  if (q < 2) {
    throw ArgumentError("argmax over fewer than two candidates is degenerate");
  }
  if (d < 1) throw ArgumentError("d must be >= 1");
}

std::string HashKey::Fingerprint() const {
  std::uint64_t h = Mix64(seed);
  h = Mix64(h ^ static_cast<std::uint64_t>(m));
  h = Mix64(h ^ static_cast<std::uint64_t>(q));
  h = Mix64(h ^ static_cast<std::uint64_t>(d));
  return detail::Hex64(h);
}

HashedTemplate::HashedTemplate(CodeMatrix codes, int q,
                               std::string key_fingerprint)
    : codes_(std::move(codes)), q_(q), key_fingerprint_(std::move(key_fingerprint)) {
  if (q_ < 2) throw IntegrityError("hashed template q must be >= 2");
  if (codes_.size() > 0 && (codes_.minCoeff() < 1 || codes_.maxCoeff() > q_)) {
    throw IntegrityError("hashed index outside [1, " + std::to_string(q_) + "]");
  }
}

HashedTemplate HashedTemplate::Prefix(int m, std::string key_fingerprint) const {
  if (m < 1 || m > this->m()) {
    throw ArgumentError("prefix length outside [1, m]");
  }
  return HashedTemplate(codes_.leftCols(m), q_, std::move(key_fingerprint));
}

MatchScore::MatchScore(double value) : value_(value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw ArgumentError("match score outside [0, 1]");
  }
}

}  // namespace giom
