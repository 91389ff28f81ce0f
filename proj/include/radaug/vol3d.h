// Copyright 2026 The radaug Authors.
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

// Geometry of 3D visual inputs for a vision-language model: ViT patch token
// lattices, any-resolution crop tiling, and the token flow through MLP,
// spatial-pooling and TokenPacker-style projectors.
//
// Projectors run with synthetic weights drawn from a seeded mt19937_64, so a
// forward pass is a pure function of (input, seed). Token lattices are stored
// row-major with depth outermost: row = (z * height + y) * width + x.

#ifndef RADAUG_VOL3D_H_
#define RADAUG_VOL3D_H_

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "radaug/errors.h"

namespace radaug::vol3d {

enum class Axis { kDepth, kHeight, kWidth };

std::string_view AxisName(Axis axis);

// Three positive extents. The tag keeps voxel volumes, patch sizes and
// kernels from being mixed up.
template <class Tag>
struct Extent3 {
  int64_t depth = 1;
  int64_t height = 1;
  int64_t width = 1;

  int64_t operator[](Axis a) const {
    return a == Axis::kDepth ? depth : a == Axis::kHeight ? height : width;
  }
  int64_t Volume() const { return depth * height * width; }
  bool operator==(const Extent3 &other) const = default;
};

using VolumeDims = Extent3<struct VolumeTag>;
using PatchDims = Extent3<struct PatchTag>;
using KernelDims = Extent3<struct KernelTag>;
using GridDims = Extent3<struct GridTag>;

inline constexpr Axis kAxes[] = {Axis::kDepth, Axis::kHeight, Axis::kWidth};

template <class Tag>
void ValidateExtent(const Extent3<Tag> &e, std::string_view what) {
  for (Axis a : kAxes) {
    if (e[a] <= 0) {
      throw Error(ErrorCode::kInvalidArgument,
                  std::string(what) + " " + std::string(AxisName(a)) +
                      " must be positive, got " + std::to_string(e[a]));
    }
  }
}

std::string NonDivisibleMessage(Axis axis, int64_t size, int64_t step,
                                std::string_view what);

// Throws kNonDivisible naming the first offending axis and the nearest sizes
// along it that would divide.
template <class A, class B>
void RequireDivisible(const Extent3<A> &whole, const Extent3<B> &part,
                      std::string_view what) {
  ValidateExtent(whole, what);
  ValidateExtent(part, what);
  for (Axis a : kAxes) {
    if (whole[a] % part[a] != 0) {
      throw Error(ErrorCode::kNonDivisible,
                  NonDivisibleMessage(a, whole[a], part[a], what));
    }
  }
}

GridDims PatchGrid(const VolumeDims &vol, const PatchDims &patch);
int64_t TokenCount(const VolumeDims &vol, const PatchDims &patch);

struct Offset3 {
  int64_t depth = 0;
  int64_t height = 0;
  int64_t width = 0;
  bool operator==(const Offset3 &other) const = default;
};

struct CropBox {
  Offset3 offset;
  VolumeDims extent;
};

struct CropPlan {
  VolumeDims volume;
  VolumeDims crop;
  std::vector<CropBox> crops;
  VolumeDims global_view;
};

// Regular tiling in depth, height, width order.
CropPlan AnyresPlan(const VolumeDims &vol, const VolumeDims &crop,
                    const VolumeDims &global);

// Throws kInvalidPlan unless the crops are non-empty, sized as configured,
// inside the volume, pairwise disjoint, and together cover every voxel.
void ValidateCropPlan(const CropPlan &plan);

// (crops + 1) * per-view tokens: every crop plus the resized global view.
int64_t AnyresTokenBudget(const CropPlan &plan, const PatchDims &patch,
                          int64_t per_view_tokens);

class TokenGrid {
 public:
  // Throws kInvalidArgument unless data has grid.Volume() * dim finite
  // entries and the grid holds at least one token.
  TokenGrid(GridDims grid, int64_t dim, std::vector<double> data,
            bool sequence = false);

  static TokenGrid Zeros(GridDims grid, int64_t dim);

  const GridDims &grid() const { return grid_; }
  int64_t dim() const { return dim_; }
  int64_t count() const { return grid_.Volume(); }
  // True once the lattice structure is gone, e.g. after concatenation.
  bool is_sequence() const { return sequence_; }
  const std::vector<double> &data() const { return data_; }

  int64_t Index(int64_t z, int64_t y, int64_t x) const {
    return (z * grid_.height + y) * grid_.width + x;
  }
  std::span<const double> row(int64_t i) const {
    return {data_.data() + i * dim_, static_cast<size_t>(dim_)};
  }
  std::span<double> mutable_row(int64_t i) {
    return {data_.data() + i * dim_, static_cast<size_t>(dim_)};
  }

  bool operator==(const TokenGrid &other) const = default;

 private:
  GridDims grid_;
  int64_t dim_;
  std::vector<double> data_;
  bool sequence_;
};

// Uniform doubles from mt19937_64 with an explicit 53-bit mapping, so values
// are identical across standard libraries.
class WeightStream {
 public:
  explicit WeightStream(uint64_t seed) : engine_(seed) {}
  double Uniform(double lo, double hi);

 private:
  std::mt19937_64 engine_;
};

struct Affine {
  int64_t in = 0;
  int64_t out = 0;
  std::vector<double> weight;  // out x in, row-major
  std::vector<double> bias;    // out

  // Weights and bias uniform in [-1/sqrt(in), 1/sqrt(in)].
  static Affine Random(int64_t in, int64_t out, WeightStream &rng,
                       bool zero_bias = false);
  static Affine Identity(int64_t dim);

  void Apply(std::span<const double> x, std::span<double> y) const;
};

double Gelu(double x);

struct MlpOptions {
  int64_t hidden_dim = 0;  // 0 means out_dim
  bool zero_bias = false;
};

// Linear -> GELU -> Linear.
struct Mlp {
  Affine first;
  Affine second;

  static Mlp Random(int64_t in, int64_t out, WeightStream &rng,
                    const MlpOptions &options = {});
  TokenGrid Forward(const TokenGrid &tokens) const;
};

TokenGrid MlpProject(const TokenGrid &tokens, int64_t out_dim, uint64_t seed,
                     const MlpOptions &options = {});

// Mean over non-overlapping pool blocks of the token lattice.
TokenGrid MeanPool3d(const TokenGrid &tokens, const KernelDims &pool);

TokenGrid SppProject(const TokenGrid &tokens, const KernelDims &pool,
                     int64_t out_dim, uint64_t seed,
                     const MlpOptions &options = {});

// Resamples the lattice to grid / down with half-pixel-centred trilinear
// interpolation, clamped at the borders.
TokenGrid TrilinearDownsample(const TokenGrid &tokens, const KernelDims &down);

struct TokenPackerOptions {
  // Query, key and value maps become the identity.
  bool identity_attention = false;
  MlpOptions mlp;
};

struct TokenPackerTrace {
  TokenGrid queries;
  // Softmax weights of each query over the tokens of its own block, in
  // block-local (z, y, x) order.
  std::vector<std::vector<double>> attention;
  TokenGrid packed;  // attention output before the projection MLP
  TokenGrid output;
};

TokenPackerTrace TokenPacker3dTrace(const TokenGrid &tokens,
                                    const KernelDims &down, int64_t out_dim,
                                    uint64_t seed,
                                    const TokenPackerOptions &options = {});

TokenGrid TokenPacker3dProject(const TokenGrid &tokens, const KernelDims &down,
                               int64_t out_dim, uint64_t seed,
                               const TokenPackerOptions &options = {});

// Rows of a followed by rows of b, as a flat sequence.
TokenGrid ConcatStreams(const TokenGrid &a, const TokenGrid &b);

}  // namespace radaug::vol3d

#endif  // RADAUG_VOL3D_H_
