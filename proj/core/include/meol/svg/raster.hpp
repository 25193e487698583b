// Copyright 2026 The meol Authors
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

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "meol/svg/document.hpp"

namespace meol::svg {

/// Default canvas edge in pixels for every render in the pipeline.
inline constexpr int kDefaultRasterSize = 256;
/// Maximum RMSE (0-255 scale, all four channels) for two renders to count as
/// visually identical.
inline constexpr double kVisualTolerance = 2.0;

/// Row-major, straight-alpha RGBA8. `pixels.size() == width * height * 4`.
struct RasterImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;

  static RasterImage blank(int width, int height);
  std::array<std::uint8_t, 4> at(int x, int y) const;
  bool operator==(const RasterImage&) const = default;
};

struct RenderOptions {
  /// Strict renders throw RenderUnsupported on features the renderer cannot
  /// draw (text, images, filters, masks, clip paths, markers, patterns, CSS
  /// style sheets). Lenient renders skip them.
  bool strict = true;
};

/// Renders with a uniform viewBox-preserving fit (preserveAspectRatio honoured)
/// onto a transparent canvas. Deterministic for a given document and size.
RasterImage rasterize(const SvgDocument& doc, int width = kDefaultRasterSize,
                      int height = kDefaultRasterSize, const RenderOptions& options = {});

/// Root-mean-square error over every channel of every pixel, 0-255 scale.
/// Throws DimensionMismatch when sizes differ.
double visual_distance(const RasterImage& a, const RasterImage& b);

std::vector<std::uint8_t> encode_png(const RasterImage& image);
RasterImage decode_png(std::span<const std::uint8_t> bytes);
void write_png(const RasterImage& image, const std::filesystem::path& path);
RasterImage read_png(const std::filesystem::path& path);

}  // namespace meol::svg
