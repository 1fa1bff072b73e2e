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

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "giom/mcc.h"
#include "test_util.h"

namespace giom {
namespace {

TEST_CASE("default geometry gives 1536 cells") {
  const MccParams p;
  CHECK(p.dim() == 16 * 16 * 6);
  CHECK(p.sigma_s == doctest::Approx(70.0 / 7.5));
  CHECK(MccParams::ForRadius(35).sigma_s == doctest::Approx(35.0 / 7.5));
  MccParams bad;
  bad.ns = 0;
  CHECK_THROWS_AS(bad.Validate(), ArgumentError);
  bad = MccParams{};
  bad.sigma_d = 0;
  CHECK_THROWS_AS(bad.Validate(), ArgumentError);
}

TEST_CASE("an isolated minutia has an all-zero cylinder") {
  const MinutiaeTemplate t("f", 1, {Minutia(10, 10, 0.3), Minutia(300, 300, 1.0)});
  const CylinderSet c = EncodeCylinders(t, MccParams{});
  CHECK(c.size() == 2);
  CHECK(c.vectors().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("single-neighbour cells match a direct kernel evaluation") {
  const MccParams p;
  const double turn = 0.5;
  // Centre points along +y; the neighbour sits 30 px ahead of it.
  const MinutiaeTemplate t("f", 1, {Minutia(200, 200, std::numbers::pi / 2),
                                    Minutia(200, 230, std::numbers::pi / 2 + turn)});
  const Eigen::MatrixXd v = EncodeCylinders(t, p).vectors();
  const double cell = 2.0 * p.radius / p.ns;
  double worst = 0.0;
  for (int i = 0; i < p.ns; ++i) {
    for (int j = 0; j < p.ns; ++j) {
      const double cx = -p.radius + cell * (i + 0.5);
      const double cy = -p.radius + cell * (j + 0.5);
      for (int k = 0; k < p.nd; ++k) {
        double expected = 0.0;
        if (std::hypot(cx, cy) <= p.radius) {
          const double phi = std::numbers::pi * (2 * k + 1) / p.nd;
          const double dphi = std::min(std::abs(turn - phi), 2 * std::numbers::pi - std::abs(turn - phi));
          expected = std::exp(-(std::pow(30.0 - cx, 2) + cy * cy) / (2 * p.sigma_s * p.sigma_s)) *
                     std::exp(-dphi * dphi / (2 * p.sigma_d * p.sigma_d));
        }
        worst = std::max(worst, std::abs(v(0, CellIndex(p, i, j, k)) - expected));
      }
    }
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("cells saturate at 1") {
  std::vector<Minutia> pts = {Minutia(100, 100, 0)};
  for (int i = 0; i < 10; ++i) pts.emplace_back(110, 100, 0.5);
  const CylinderSet c = EncodeCylinders(MinutiaeTemplate("f", 1, pts), MccParams{});
  CHECK(c.vectors().maxCoeff() == 1.0);
  CHECK(c.vectors().minCoeff() >= 0.0);
}

TEST_CASE("property: rigid motions leave cylinders unchanged") {
  testing::Gen gen(23);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Minutia> pts, moved;
    const double rot = gen.Real(0, 2 * std::numbers::pi);
    const double tx = gen.Real(0, 50), ty = gen.Real(0, 50);
    const int n = gen.Int(2, 25);
    for (int i = 0; i < n; ++i) {
      const double x = gen.Real(0, 200), y = gen.Real(0, 200), th = gen.Real(0, 6.28);
      pts.emplace_back(x + 400, y + 400, th);
      // Rotate about (500, 500), which keeps every point inside the positive quadrant.
      const double rx = x + 400 - 500, ry = y + 400 - 500;
      moved.emplace_back(500 + std::cos(rot) * rx - std::sin(rot) * ry + tx,
                         500 + std::sin(rot) * rx + std::cos(rot) * ry + ty, th + rot);
    }
    const MccParams p;
    const Eigen::MatrixXd a = EncodeCylinders(MinutiaeTemplate("f", 1, pts), p).vectors();
    const Eigen::MatrixXd b = EncodeCylinders(MinutiaeTemplate("f", 1, moved), p).vectors();
    CHECK((a - b).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("property: cylinder values stay in [0, 1]") {
  const auto templates = SynthDataset(3, {5, 2, 25, 40, 2.0, 0.08, 0.1, 250.0});
  for (const auto& t : templates) {
    const CylinderSet c = EncodeCylinders(t, MccParams{});
    CHECK(c.size() == t.size());
    CHECK(c.vectors().minCoeff() >= 0.0);
    CHECK(c.vectors().maxCoeff() <= 1.0);
    CHECK(c.vectors() == EncodeCylinders(t, MccParams{}).vectors());
  }
}

TEST_CASE("synthetic datasets") {
  SynthParams p;
  p.fingers = 4;
  p.samples_per_finger = 3;
  const auto a = SynthDataset(9, p);
  CHECK(a == SynthDataset(9, p));
  CHECK(a != SynthDataset(10, p));
  REQUIRE(a.size() == 12);
  CHECK(a[0].finger_id == "f0001");
  CHECK(a[11].finger_id == "f0004");
  CHECK(a[4].sample_id == 2);
  for (const auto& t : a) {
    CHECK(t.size() >= 1);
    CHECK(t.size() <= p.max_minutiae);
    for (const auto& m : t.points) {
      CHECK(m.x <= p.field);
      CHECK(m.y <= p.field);
    }
  }
}

TEST_CASE("without jitter or drops every sample equals its master") {
  SynthParams p;
  p.fingers = 3;
  p.samples_per_finger = 4;
  p.jitter_pos = 0;
  p.jitter_theta = 0;
  p.drop_rate = 0;
  const auto ts = SynthDataset(5, p);
  for (int f = 0; f < 3; ++f) {
    for (int s = 1; s < 4; ++s) CHECK(ts[f * 4 + s].points == ts[f * 4].points);
    CHECK(ts[f * 4].size() >= p.min_minutiae);
  }
}

TEST_CASE("dropping every minutia cannot produce a template") {
  SynthParams p;
  p.fingers = 1;
  p.samples_per_finger = 1;
  p.min_minutiae = 1;
  p.max_minutiae = 1;
  p.drop_rate = 1.0;
  CHECK_THROWS_AS(SynthDataset(1, p), ArgumentError);
  p.drop_rate = 0.1;
  p.min_minutiae = 5;
  p.max_minutiae = 4;
  CHECK_THROWS_AS(SynthDataset(1, p), ArgumentError);
}

double Cosine(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const double n = a.norm() * b.norm();
  return n > 0 ? a.dot(b) / n : 0.0;
}

TEST_CASE("property: corresponding cylinders are closer within a finger") {
  SynthParams p;
  p.fingers = 6;
  p.samples_per_finger = 2;
  p.drop_rate = 0.0;
  p.min_minutiae = p.max_minutiae = 30;
  const auto ts = SynthDataset(77, p);
  const MccParams mcc;
  std::vector<Eigen::MatrixXd> cyl;
  for (const auto& t : ts) cyl.push_back(EncodeCylinders(t, mcc).vectors());
  double same = 0.0, diff = 0.0;
  int n_same = 0, n_diff = 0;
  for (int f = 0; f < p.fingers; ++f) {
    for (int k = 0; k < 30; ++k) {
      same += Cosine(cyl[f * 2].row(k), cyl[f * 2 + 1].row(k));
      ++n_same;
      const int g = (f + 1) % p.fingers;
      diff += Cosine(cyl[f * 2].row(k), cyl[g * 2].row(k));
      ++n_diff;
    }
  }
  CHECK(same / n_same > diff / n_diff + 0.3);
}

}  // namespace
}  // namespace giom
