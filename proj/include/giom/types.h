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

#ifndef GIOM_TYPES_H_
#define GIOM_TYPES_H_

#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace giom {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text or JSON.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Persisted data that violates a type invariant (e.g. an index outside [1, q]).
class IntegrityError : public Error {
 public:
  using Error::Error;
};

// Bad parameters or mismatched dimensions passed to an operation.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// Row-major so a single point's m indices are contiguous.
using CodeMatrix =
    Eigen::Matrix<std::int32_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

namespace detail {
// splitmix64 finalizer; used for digests and seed derivation.
std::uint64_t Mix64(std::uint64_t z);
std::string Hex64(std::uint64_t value);
}  // namespace detail

// Wraps an angle into [0, 2pi).
double WrapAngle(double radians);

struct Minutia {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;

  Minutia() = default;
  // Coordinates must be non-negative; theta is wrapped into [0, 2pi).
  Minutia(double x, double y, double theta);

  friend bool operator==(const Minutia&, const Minutia&) = default;
};

struct MinutiaeTemplate {
  std::string finger_id;
  int sample_id = 0;
  std::vector<Minutia> points;

  MinutiaeTemplate() = default;
  // Throws ArgumentError when `points` is empty.
  MinutiaeTemplate(std::string finger_id, int sample_id,
                   std::vector<Minutia> points);

  int size() const { return static_cast<int>(points.size()); }

  friend bool operator==(const MinutiaeTemplate&,
                         const MinutiaeTemplate&) = default;
};

// One cylinder vector per minutia, stored row-wise (N x d), entries in [0, 1].
class CylinderSet {
 public:
  explicit CylinderSet(Eigen::MatrixXd vectors);

  const Eigen::MatrixXd& vectors() const { return vectors_; }
  int size() const { return static_cast<int>(vectors_.rows()); }
  int dim() const { return static_cast<int>(vectors_.cols()); }

 private:
  Eigen::MatrixXd vectors_;
};

// Revocable key material. The bank it materializes is a pure function of
// these four fields.
struct HashKey {
  std::uint64_t seed = 0;
  int m = 700;
  int q = 100;
  int d = 1536;

  void Validate() const;
  // 16 hex digits identifying (seed, m, q, d).
  std::string Fingerprint() const;

  friend bool operator==(const HashKey&, const HashKey&) = default;
};

// The protected template: N x m argmax indices, each in [1, q].
class HashedTemplate {
 public:
  HashedTemplate() = default;
  // Throws IntegrityError if any index falls outside [1, q].
  HashedTemplate(CodeMatrix codes, int q, std::string key_fingerprint);

  const CodeMatrix& codes() const { return codes_; }
  int q() const { return q_; }
  int m() const { return static_cast<int>(codes_.cols()); }
  int size() const { return static_cast<int>(codes_.rows()); }
  const std::string& key_fingerprint() const { return key_fingerprint_; }

  // Keeps the first `m` hash positions. Matrices derived from a seed do not
  // depend on the total count, so this equals hashing with a key of size m.
  HashedTemplate Prefix(int m, std::string key_fingerprint) const;

  friend bool operator==(const HashedTemplate& a, const HashedTemplate& b) {
    return a.q_ == b.q_ && a.key_fingerprint_ == b.key_fingerprint_ &&
           a.codes_.rows() == b.codes_.rows() &&
           a.codes_.cols() == b.codes_.cols() && a.codes_ == b.codes_;
  }

 private:
  CodeMatrix codes_;
  int q_ = 0;
  std::string key_fingerprint_;
};

// Similarity in [0, 1]; higher is more similar.
class MatchScore {
 public:
  explicit MatchScore(double value);
  double value() const { return value_; }

 private:
  double value_;
};

}  // namespace giom

#endif  // GIOM_TYPES_H_
