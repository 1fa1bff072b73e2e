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

#include "giom/mcc.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "giom/randomness.h"

namespace giom {

MccParams MccParams::ForRadius(double radius) {
  MccParams p;
  p.radius = radius;
  p.sigma_s = radius / 7.5;
  return p;
}

void MccParams::Validate() const {
  if (!(radius > 0.0)) throw ArgumentError("cylinder radius must be positive");
  if (ns < 2) throw ArgumentError("ns must be >= 2");
  if (nd < 1) throw ArgumentError("nd must be >= 1");
  if (!(sigma_s > 0.0) || !(sigma_d > 0.0)) {
    throw ArgumentError("kernel spreads must be positive");
  }
}

CylinderSet EncodeCylinders(const MinutiaeTemplate& t, const MccParams& p) {
  p.Validate();
  if (t.points.empty()) throw ArgumentError("template must contain ≥1 minutia");

  const int n = t.size();
  const double cell = 2.0 * p.radius / p.ns;
  const double radius_sq = p.radius * p.radius;
  const double inv_2ss = 1.0 / (2.0 * p.sigma_s * p.sigma_s);
  const double inv_2sd = 1.0 / (2.0 * p.sigma_d * p.sigma_d);

  std::vector<double> centres(static_cast<std::size_t>(p.ns));
  for (int i = 0; i < p.ns; ++i) {
    centres[static_cast<std::size_t>(i)] = (i + 0.5) * cell - p.radius;
  }
  std::vector<double> phis(static_cast<std::size_t>(p.nd));
  for (int k = 0; k < p.nd; ++k) {
    phis[static_cast<std::size_t>(k)] = (2.0 * k + 1.0) * std::numbers::pi / p.nd;
  }

  struct Neighbour {
    double lx, ly, dtheta;
  };

  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, p.dim());
  std::vector<Neighbour> neighbours;
  std::vector<double> directional(static_cast<std::size_t>(p.nd));
  for (int a = 0; a < n; ++a) {
    const Minutia& centre = t.points[static_cast<std::size_t>(a)];
    const double c = std::cos(centre.theta);
    const double s = std::sin(centre.theta);

    neighbours.clear();
    for (int b = 0; b < n; ++b) {
      if (b == a) continue;
      const Minutia& other = t.points[static_cast<std::size_t>(b)];
      const double dx = other.x - centre.x;
      const double dy = other.y - centre.y;
      if (dx * dx + dy * dy > radius_sq) continue;
      neighbours.push_back({c * dx + s * dy, -s * dx + c * dy,
                            WrapAngle(other.theta - centre.theta)});
    }
    if (neighbours.empty()) continue;

    for (const Neighbour& nb : neighbours) {
      for (int k = 0; k < p.nd; ++k) {
        double delta = std::abs(nb.dtheta - phis[static_cast<std::size_t>(k)]);
        delta = std::min(delta, kTwoPi - delta);
        directional[static_cast<std::size_t>(k)] = std::exp(-delta * delta * inv_2sd);
      }
      for (int i = 0; i < p.ns; ++i) {
        const double cx = centres[static_cast<std::size_t>(i)];
        for (int j = 0; j < p.ns; ++j) {
          const double cy = centres[static_cast<std::size_t>(j)];
          if (cx * cx + cy * cy > radius_sq) continue;
          const double ex = nb.lx - cx;
          const double ey = nb.ly - cy;
          const double spatial = std::exp(-(ex * ex + ey * ey) * inv_2ss);
          for (int k = 0; k < p.nd; ++k) {
            out(a, CellIndex(p, i, j, k)) +=
                spatial * directional[static_cast<std::size_t>(k)];
          }
        }
      }
    }
  }
  out = out.cwiseMin(1.0);
  return CylinderSet(std::move(out));
}

void SynthParams::Validate() const {
  if (fingers < 1 || samples_per_finger < 1) {
    throw ArgumentError("finger and sample counts must be >= 1");
  }
  if (samples_per_finger > 1000) {
    throw ArgumentError("at most 1000 samples per finger");
  }
  if (min_minutiae < 1) throw ArgumentError("minutiae count must be >= 1");
  if (min_minutiae > max_minutiae) {
    throw ArgumentError("minutiae_range min exceeds max");
  }
  if (!(drop_rate >= 0.0 && drop_rate <= 1.0)) {
    throw ArgumentError("drop_rate must lie in [0, 1]");
  }
  if (!(jitter_pos >= 0.0) || !(jitter_theta >= 0.0)) {
    throw ArgumentError("jitter must be non-negative");
  }
  if (!(field > 0.0)) throw ArgumentError("field must be positive");
}

namespace {

constexpr int kMaxRedraws = 100;

std::string FingerName(int finger) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "f%04d", finger + 1);
  return buf;
}

}  // namespace

std::vector<MinutiaeTemplate> SynthDataset(std::uint64_t seed,
                                           const SynthParams& p) {
  p.Validate();
  std::vector<MinutiaeTemplate> out;
  out.reserve(static_cast<std::size_t>(p.fingers) *
              static_cast<std::size_t>(p.samples_per_finger));
  for (int f = 0; f < p.fingers; ++f) {
    const std::uint64_t base = static_cast<std::uint64_t>(f) * 1024;
    Rng master_rng(seed, base);
    const int count = master_rng.UniformInt(p.min_minutiae, p.max_minutiae);
    std::vector<Minutia> master;
    master.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
      const double x = master_rng.Uniform() * p.field;
      const double y = master_rng.Uniform() * p.field;
      master.emplace_back(x, y, master_rng.Uniform() * kTwoPi);
    }

    for (int s = 0; s < p.samples_per_finger; ++s) {
      Rng rng(seed, base + static_cast<std::uint64_t>(s) + 1);
      std::vector<Minutia> points;
      for (int attempt = 0; attempt < kMaxRedraws && points.empty(); ++attempt) {
        for (const Minutia& mm : master) {
          const bool dropped = rng.Uniform() < p.drop_rate;
          const double nx = rng.Normal();
          const double ny = rng.Normal();
          const double nt = rng.Normal();
          if (dropped) continue;
          const double x = std::clamp(mm.x + p.jitter_pos * nx, 0.0, p.field);
          const double y = std::clamp(mm.y + p.jitter_pos * ny, 0.0, p.field);
          points.emplace_back(x, y, mm.theta + p.jitter_theta * nt);
        }
      }
      if (points.empty()) {
        throw ArgumentError("every minutia of a sample was dropped; lower "
                            "drop_rate or raise the minutiae count");
      }
      out.emplace_back(FingerName(f), s + 1, std::move(points));
    }
  }
  return out;
}

}  // namespace giom
