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

#include "radaug/vol3d.h"

#include <algorithm>
#include <cmath>

namespace radaug::vol3d {
namespace {

int64_t Coord(const Offset3 &o, Axis a) {
  return a == Axis::kDepth ? o.depth : a == Axis::kHeight ? o.height : o.width;
}

bool BoxesOverlap(const CropBox &a, const CropBox &b) {
  for (Axis ax : kAxes) {
    int64_t a0 = Coord(a.offset, ax), a1 = a0 + a.extent[ax];
    int64_t b0 = Coord(b.offset, ax), b1 = b0 + b.extent[ax];
    if (a1 <= b0 || b1 <= a0) return false;
  }
  return true;
}

GridDims Divide(const GridDims &grid, const KernelDims &k) {
  RequireDivisible(grid, k, "token grid");
  return {grid.depth / k.depth, grid.height / k.height, grid.width / k.width};
}

// Interpolation taps along one axis for output index `o`.
struct Tap {
  int64_t lo;
  int64_t hi;
  double frac;
};

Tap AxisTap(int64_t o, int64_t factor, int64_t size) {
  double src = (static_cast<double>(o) + 0.5) * static_cast<double>(factor) - 0.5;
  src = std::clamp(src, 0.0, static_cast<double>(size - 1));
  auto lo = static_cast<int64_t>(std::floor(src));
  int64_t hi = std::min(lo + 1, size - 1);
  return {lo, hi, src - static_cast<double>(lo)};
}

}  // namespace

std::string_view AxisName(Axis axis) {
  switch (axis) {
    case Axis::kDepth: return "depth";
    case Axis::kHeight: return "height";
    case Axis::kWidth: return "width";
  }
  return "";
}

std::string NonDivisibleMessage(Axis axis, int64_t size, int64_t step,
                                std::string_view what) {
  int64_t below = (size / step) * step;
  int64_t above = below + step;
  std::string nearest =
      below > 0 ? std::to_string(below) + " or " + std::to_string(above)
                : std::to_string(above);
  return std::string(what) + " " + std::string(AxisName(axis)) + " " +
         std::to_string(size) + " is not divisible by " +
         std::to_string(step) + " (nearest valid sizes: " + nearest + ")";
}

GridDims PatchGrid(const VolumeDims &vol, const PatchDims &patch) {
  RequireDivisible(vol, patch, "volume");
  return {vol.depth / patch.depth, vol.height / patch.height,
          vol.width / patch.width};
}

int64_t TokenCount(const VolumeDims &vol, const PatchDims &patch) {
  return PatchGrid(vol, patch).Volume();
}

CropPlan AnyresPlan(const VolumeDims &vol, const VolumeDims &crop,
                    const VolumeDims &global) {
  RequireDivisible(vol, crop, "volume");
  ValidateExtent(global, "global view");
  CropPlan plan{vol, crop, {}, global};
  for (int64_t z = 0; z < vol.depth; z += crop.depth) {
    for (int64_t y = 0; y < vol.height; y += crop.height) {
      for (int64_t x = 0; x < vol.width; x += crop.width) {
        plan.crops.push_back({{z, y, x}, crop});
      }
    }
  }
  return plan;
}

void ValidateCropPlan(const CropPlan &plan) {
  auto fail = [](const std::string &why) {
    return Error(ErrorCode::kInvalidPlan, why);
  };
  ValidateExtent(plan.volume, "volume");
  ValidateExtent(plan.global_view, "global view");
  if (plan.crops.empty()) throw fail("crop plan has no crops");
  int64_t covered = 0;
  for (size_t i = 0; i < plan.crops.size(); ++i) {
    const CropBox &box = plan.crops[i];
    if (!(box.extent == plan.crop)) throw fail("crop extent differs from plan");
    for (Axis a : kAxes) {
      int64_t o = Coord(box.offset, a);
      if (o < 0 || o + box.extent[a] > plan.volume[a]) {
        throw fail("crop " + std::to_string(i) + " leaves the volume along " +
                   std::string(AxisName(a)));
      }
    }
    for (size_t j = 0; j < i; ++j) {
      if (BoxesOverlap(box, plan.crops[j])) {
        throw fail("crops " + std::to_string(j) + " and " + std::to_string(i) +
                   " overlap");
      }
    }
    covered += box.extent.Volume();
  }
  // Disjoint boxes inside the volume cover it iff their volumes add up.
  if (covered != plan.volume.Volume()) throw fail("crops do not cover the volume");
}

int64_t AnyresTokenBudget(const CropPlan &plan, const PatchDims &patch,
                          int64_t per_view_tokens) {
  ValidateCropPlan(plan);
  RequireDivisible(plan.crop, patch, "crop");
  RequireDivisible(plan.global_view, patch, "global view");
  if (per_view_tokens <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "per-view token count must be positive");
  }
  return (static_cast<int64_t>(plan.crops.size()) + 1) * per_view_tokens;
}

TokenGrid::TokenGrid(GridDims grid, int64_t dim, std::vector<double> data,
                     bool sequence)
    : grid_(grid), dim_(dim), data_(std::move(data)), sequence_(sequence) {
  ValidateExtent(grid_, "token grid");
  if (dim_ <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "embedding dim must be positive");
  }
  if (static_cast<int64_t>(data_.size()) != grid_.Volume() * dim_) {
    throw Error(ErrorCode::kInvalidArgument,
                "token data has " + std::to_string(data_.size()) +
                    " values, expected " +
                    std::to_string(grid_.Volume() * dim_));
  }
  for (double v : data_) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kInvalidArgument, "token data is not finite");
    }
  }
}

TokenGrid TokenGrid::Zeros(GridDims grid, int64_t dim) {
  ValidateExtent(grid, "token grid");
  return TokenGrid(grid, dim,
                   std::vector<double>(static_cast<size_t>(grid.Volume() * dim)));
}

double WeightStream::Uniform(double lo, double hi) {
  double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

Affine Affine::Random(int64_t in, int64_t out, WeightStream &rng,
                      bool zero_bias) {
  Affine a{in, out, std::vector<double>(in * out), std::vector<double>(out)};
  const double bound = 1.0 / std::sqrt(static_cast<double>(in));
  for (double &w : a.weight) w = rng.Uniform(-bound, bound);
  for (double &b : a.bias) b = zero_bias ? 0.0 : rng.Uniform(-bound, bound);
  return a;
}

Affine Affine::Identity(int64_t dim) {
  Affine a{dim, dim, std::vector<double>(dim * dim), std::vector<double>(dim)};
  for (int64_t i = 0; i < dim; ++i) a.weight[i * dim + i] = 1.0;
  return a;
}

void Affine::Apply(std::span<const double> x, std::span<double> y) const {
  for (int64_t o = 0; o < out; ++o) {
    double acc = bias[o];
    const double *w = weight.data() + o * in;
    for (int64_t i = 0; i < in; ++i) acc += w[i] * x[i];
    y[o] = acc;
  }
}

double Gelu(double x) { return 0.5 * x * (1.0 + std::erf(x / std::sqrt(2.0))); }

Mlp Mlp::Random(int64_t in, int64_t out, WeightStream &rng,
                const MlpOptions &options) {
  if (in <= 0 || out <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "MLP dims must be positive");
  }
  int64_t hidden = options.hidden_dim > 0 ? options.hidden_dim : out;
  Mlp mlp;
  mlp.first = Affine::Random(in, hidden, rng, options.zero_bias);
  mlp.second = Affine::Random(hidden, out, rng, options.zero_bias);
  return mlp;
}

TokenGrid Mlp::Forward(const TokenGrid &tokens) const {
  if (tokens.dim() != first.in) {
    throw Error(ErrorCode::kDimMismatch,
                "MLP expects dim " + std::to_string(first.in) + ", got " +
                    std::to_string(tokens.dim()));
  }
  std::vector<double> out(tokens.count() * second.out);
  std::vector<double> hidden(first.out);
  for (int64_t t = 0; t < tokens.count(); ++t) {
    first.Apply(tokens.row(t), hidden);
    for (double &h : hidden) h = Gelu(h);
    second.Apply(hidden, {out.data() + t * second.out,
                          static_cast<size_t>(second.out)});
  }
  return TokenGrid(tokens.grid(), second.out, std::move(out),
                   tokens.is_sequence());
}

TokenGrid MlpProject(const TokenGrid &tokens, int64_t out_dim, uint64_t seed,
                     const MlpOptions &options) {
  WeightStream rng(seed);
  return Mlp::Random(tokens.dim(), out_dim, rng, options).Forward(tokens);
}

TokenGrid MeanPool3d(const TokenGrid &tokens, const KernelDims &pool) {
  const GridDims in = tokens.grid();
  const GridDims out = Divide(in, pool);
  const int64_t dim = tokens.dim();
  TokenGrid pooled = TokenGrid::Zeros(out, dim);
  const double scale = 1.0 / static_cast<double>(pool.Volume());
  for (int64_t z = 0; z < in.depth; ++z) {
    for (int64_t y = 0; y < in.height; ++y) {
      for (int64_t x = 0; x < in.width; ++x) {
        auto src = tokens.row(tokens.Index(z, y, x));
        auto dst = pooled.mutable_row(
            pooled.Index(z / pool.depth, y / pool.height, x / pool.width));
        for (int64_t c = 0; c < dim; ++c) dst[c] += src[c];
      }
    }
  }
  std::vector<double> data = pooled.data();
  for (double &v : data) v *= scale;
  return TokenGrid(out, dim, std::move(data));
}

TokenGrid SppProject(const TokenGrid &tokens, const KernelDims &pool,
                     int64_t out_dim, uint64_t seed,
                     const MlpOptions &options) {
  return MlpProject(MeanPool3d(tokens, pool), out_dim, seed, options);
}

TokenGrid TrilinearDownsample(const TokenGrid &tokens, const KernelDims &down) {
  const GridDims in = tokens.grid();
  const GridDims out = Divide(in, down);
  const int64_t dim = tokens.dim();
  std::vector<double> data(out.Volume() * dim, 0.0);
  int64_t row = 0;
  for (int64_t z = 0; z < out.depth; ++z) {
    Tap tz = AxisTap(z, down.depth, in.depth);
    for (int64_t y = 0; y < out.height; ++y) {
      Tap ty = AxisTap(y, down.height, in.height);
      for (int64_t x = 0; x < out.width; ++x, ++row) {
        Tap tx = AxisTap(x, down.width, in.width);
        double *dst = data.data() + row * dim;
        for (int corner = 0; corner < 8; ++corner) {
          bool hz = corner & 4, hy = corner & 2, hx = corner & 1;
          double w = (hz ? tz.frac : 1.0 - tz.frac) *
                     (hy ? ty.frac : 1.0 - ty.frac) *
                     (hx ? tx.frac : 1.0 - tx.frac);
          if (w == 0.0) continue;
          auto src = tokens.row(tokens.Index(hz ? tz.hi : tz.lo,
                                             hy ? ty.hi : ty.lo,
                                             hx ? tx.hi : tx.lo));
          for (int64_t c = 0; c < dim; ++c) dst[c] += w * src[c];
        }
      }
    }
  }
  return TokenGrid(out, dim, std::move(data));
}

TokenPackerTrace TokenPacker3dTrace(const TokenGrid &tokens,
                                    const KernelDims &down, int64_t out_dim,
                                    uint64_t seed,
                                    const TokenPackerOptions &options) {
  const int64_t dim = tokens.dim();
  TokenGrid queries = TrilinearDownsample(tokens, down);
  const GridDims out = queries.grid();

  WeightStream rng(seed);
  Affine wq, wk, wv;
  if (options.identity_attention) {
    wq = wk = wv = Affine::Identity(dim);
  } else {
    wq = Affine::Random(dim, dim, rng, true);
    wk = Affine::Random(dim, dim, rng, true);
    wv = Affine::Random(dim, dim, rng, true);
  }
  Mlp projection = Mlp::Random(dim, out_dim, rng, options.mlp);

  const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
  const int64_t block = down.Volume();
  std::vector<double> packed(out.Volume() * dim, 0.0);
  std::vector<std::vector<double>> attention(out.Volume());
  std::vector<double> q(dim), k(dim), v(dim);
  std::vector<std::vector<double>> values(block, std::vector<double>(dim));

  for (int64_t z = 0; z < out.depth; ++z) {
    for (int64_t y = 0; y < out.height; ++y) {
      for (int64_t x = 0; x < out.width; ++x) {
        const int64_t qi = queries.Index(z, y, x);
        wq.Apply(queries.row(qi), q);
        std::vector<double> &logits = attention[qi];
        logits.assign(block, 0.0);
        int64_t j = 0;
        for (int64_t dz = 0; dz < down.depth; ++dz) {
          for (int64_t dy = 0; dy < down.height; ++dy) {
            for (int64_t dx = 0; dx < down.width; ++dx, ++j) {
              auto key = tokens.row(tokens.Index(z * down.depth + dz,
                                                 y * down.height + dy,
                                                 x * down.width + dx));
              wk.Apply(key, k);
              wv.Apply(key, values[j]);
              double dot = 0.0;
              for (int64_t c = 0; c < dim; ++c) dot += q[c] * k[c];
              logits[j] = dot * scale;
            }
          }
        }
        const double peak = *std::max_element(logits.begin(), logits.end());
        double total = 0.0;
        for (double &l : logits) {
          l = std::exp(l - peak);
          total += l;
        }
        double *dst = packed.data() + qi * dim;
        for (int64_t jj = 0; jj < block; ++jj) {
          logits[jj] /= total;
          for (int64_t c = 0; c < dim; ++c) dst[c] += logits[jj] * values[jj][c];
        }
      }
    }
  }
  TokenGrid packed_grid(out, dim, std::move(packed));
  TokenGrid projected = projection.Forward(packed_grid);
  return {std::move(queries), std::move(attention), std::move(packed_grid),
          std::move(projected)};
}

TokenGrid TokenPacker3dProject(const TokenGrid &tokens, const KernelDims &down,
                               int64_t out_dim, uint64_t seed,
                               const TokenPackerOptions &options) {
  return TokenPacker3dTrace(tokens, down, out_dim, seed, options).output;
}

TokenGrid ConcatStreams(const TokenGrid &a, const TokenGrid &b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorCode::kDimMismatch,
                "cannot concatenate streams of dim " + std::to_string(a.dim()) +
                    " and " + std::to_string(b.dim()));
  }
  std::vector<double> data = a.data();
  data.insert(data.end(), b.data().begin(), b.data().end());
  return TokenGrid({a.count() + b.count(), 1, 1}, a.dim(), std::move(data),
                   true);
}

}  // namespace radaug::vol3d
