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

#include "giom/randomness.h"

#include <cmath>
#include <cstring>
#include <string>

namespace giom {

namespace {

std::seed_seq MakeSeedSeq(std::uint64_t seed, std::uint64_t stream) {
  return std::seed_seq{
      static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
      static_cast<std::uint32_t>(stream),
      static_cast<std::uint32_t>(stream >> 32)};
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq = MakeSeedSeq(seed, stream);
  engine_.seed(seq);
}

double Rng::Uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::Normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * Uniform() - 1.0;
    v = 2.0 * Uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double scale = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * scale;
  has_spare_ = true;
  return u * scale;
}

int Rng::UniformInt(int lo, int hi) {
  if (hi < lo) throw ArgumentError("UniformInt: empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi) -
                             static_cast<std::uint64_t>(lo) + 1;
  // Rejection keeps the result exactly uniform.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t draw;
  do {
    draw = engine_();
  } while (draw >= limit);
  return lo + static_cast<int>(draw % span);
}

Eigen::MatrixXd DeriveGaussianMatrix(std::uint64_t seed, int index, int rows,
                                     int cols) {
  Rng rng(seed, static_cast<std::uint64_t>(index));
  Eigen::MatrixXd w(rows, cols);
  double* data = w.data();  // column-major
  const Eigen::Index total = w.size();
  for (Eigen::Index k = 0; k < total; ++k) data[k] = rng.Normal();
  return w;
}

GaussianBank GaussianBank::Derive(const HashKey& key) {
  key.Validate();
  GaussianBank bank;
  bank.key_ = key;
  bank.m_ = key.m;
  bank.q_ = key.q;
  bank.d_ = key.d;
  return bank;
}

GaussianBank::GaussianBank(std::vector<Eigen::MatrixXd> matrices)
    : stored_(std::move(matrices)) {
  if (stored_.empty()) throw ArgumentError("bank needs at least one matrix");
  m_ = static_cast<int>(stored_.size());
  d_ = static_cast<int>(stored_.front().rows());
  q_ = static_cast<int>(stored_.front().cols());
  if (q_ < 2) {
    throw ArgumentError("argmax over fewer than two candidates is degenerate");
  }
  if (d_ < 1) throw ArgumentError("bank matrices need at least one row");
  for (const auto& w : stored_) {
    if (w.rows() != d_ || w.cols() != q_) {
      throw ArgumentError("bank matrices must share one shape");
    }
    if (!w.allFinite()) throw ArgumentError("bank entries must be finite");
  }
}

Eigen::MatrixXd GaussianBank::Matrix(int i) const {
  if (i < 0 || i >= m_) throw ArgumentError("bank matrix index out of range");
  if (!stored_.empty()) return stored_[static_cast<std::size_t>(i)];
  return DeriveGaussianMatrix(key_->seed, i, d_, q_);
}

GaussianBank GaussianBank::Materialize() const {
  if (materialized()) return *this;
  std::vector<Eigen::MatrixXd> matrices;
  matrices.reserve(static_cast<std::size_t>(m_));
  for (int i = 0; i < m_; ++i) matrices.push_back(Matrix(i));
  GaussianBank bank(std::move(matrices));
  bank.key_ = key_;
  return bank;
}

std::string GaussianBank::Fingerprint() const {
  if (key_) return key_->Fingerprint();
  std::uint64_t h = detail::Mix64(static_cast<std::uint64_t>(m_));
  h = detail::Mix64(h ^ static_cast<std::uint64_t>(q_));
  h = detail::Mix64(h ^ static_cast<std::uint64_t>(d_));
  for (const auto& w : stored_) {
    for (Eigen::Index k = 0; k < w.size(); ++k) {
      std::uint64_t bits;
      const double value = w.data()[k];
      std::memcpy(&bits, &value, sizeof(bits));
      h = detail::Mix64(h ^ bits);
    }
  }
  return detail::Hex64(h);
}

OrthoMatrix GramSchmidt(const Eigen::MatrixXd& matrix) {
  const Eigen::Index n = matrix.rows();
  const Eigen::Index m = matrix.cols();
  if (m > n) {
    throw ArgumentError("Gram-Schmidt needs at most as many columns as rows");
  }
  if (!matrix.allFinite()) throw ArgumentError("Gram-Schmidt input not finite");
  Eigen::MatrixXd q = matrix;
  for (Eigen::Index k = 0; k < m; ++k) {
    auto v = q.col(k);
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index j = 0; j < k; ++j) {
        v -= q.col(j).dot(v) * q.col(j);
      }
      if (pass == 0 && v.norm() < kGramSchmidtPivotTolerance) {
        throw ArgumentError("rank deficiency at column " + std::to_string(k) +
                            ": residual norm below pivot tolerance");
      }
    }
    v /= v.norm();
  }
  return OrthoMatrix(std::move(q));
}

OrthoMatrix RandomOrthoMatrix(std::uint64_t seed, int n, int m) {
  return GramSchmidt(DeriveGaussianMatrix(seed, 0, n, m));
}

Eigen::VectorXd RandomProjection(const Eigen::VectorXd& x,
                                 const OrthoMatrix& r) {
  if (x.size() != r.rows()) {
    throw ArgumentError("projection input length " + std::to_string(x.size()) +
                        " does not match matrix rows " +
                        std::to_string(r.rows()));
  }
  const double scale =
      std::sqrt(static_cast<double>(r.rows()) / static_cast<double>(r.cols()));
  return scale * (r.matrix().transpose() * x);
}

}  // namespace giom
