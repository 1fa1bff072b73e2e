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

#ifndef GIOM_MCC_H_
#define GIOM_MCC_H_

#include <cstdint>
#include <numbers>
#include <vector>

#include "giom/types.h"

namespace giom {

// Geometry of a real-valued minutia cylinder. The cylinder around each
// minutia is split into ns x ns spatial cells (oriented along the minutia's
// direction) times nd directional cells, giving d = ns * ns * nd values.
struct MccParams {
  double radius = 70.0;
  int ns = 16;
  int nd = 6;
  double sigma_s = 70.0 / 7.5;
  double sigma_d = std::numbers::pi / 9.0;

  // Defaults scaled to a given radius (sigma_s = radius / 7.5).
  static MccParams ForRadius(double radius);

  int dim() const { return ns * ns * nd; }
  void Validate() const;

  friend bool operator==(const MccParams&, const MccParams&) = default;
};

// Linear index of cell (i, j, k): i, j spatial (0-based), k directional.
inline int CellIndex(const MccParams& p, int i, int j, int k) {
  return (k * p.ns + i) * p.ns + j;
}

// Encodes one cylinder per minutia. A cell's value is
//   min(1, sum_n Gs(|p_n - c|) * Gd(dphi(dtheta_n, phi_k)))
// over the other minutiae n within `radius` of the centre minutia, where c is
// the cell centre in the minutia's local frame, Gs and Gd are unnormalized
// Gaussians and dphi is the wrapped angular distance. Cells whose centre lies
// outside the cylinder radius stay 0.
CylinderSet EncodeCylinders(const MinutiaeTemplate& t, const MccParams& p);

struct SynthParams {
  int fingers = 100;
  int samples_per_finger = 8;
  int min_minutiae = 60;
  int max_minutiae = 90;
  double jitter_pos = 2.0;     // pixels, std-dev
  double jitter_theta = 0.08;  // radians, std-dev
  double drop_rate = 0.1;
  double field = 500.0;        // square field side, pixels

  void Validate() const;
};

// Synthetic stand-in for an FVC subset: for each finger a master template is
// drawn uniformly over the field and every sample drops and jitters its
// minutiae. Samples are returned finger-major with sample ids 1..S. A sample
// that loses every minutia is redrawn a bounded number of times before
// ArgumentError is thrown.
std::vector<MinutiaeTemplate> SynthDataset(std::uint64_t seed,
                                           const SynthParams& p);

}  // namespace giom

#endif  // GIOM_MCC_H_
