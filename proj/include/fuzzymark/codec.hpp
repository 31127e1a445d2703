#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "fuzzymark/dwt.hpp"
#include "fuzzymark/fuzzy.hpp"
#include "fuzzymark/image_io.hpp"

namespace fuzzymark {

inline constexpr std::size_t kEmbedLevels = 3;

struct AlphaBounds {
  double min = 0.0;
  double max = 0.0;
  friend bool operator==(const AlphaBounds&, const AlphaBounds&) = default;
};

struct EmbedParams {
  double q = 16.0;
  std::uint64_t key = 0;
  DetailOrientation band = DetailOrientation::kHL;  // at level 3
  std::size_t window = 8;
  std::int64_t key_offset = 0;  // additive offset inside the texture count
  std::optional<AlphaBounds> alpha_bounds;  // defaults to [q/8, 0.45 q]
};

std::string_view band_name(DetailOrientation o);
DetailOrientation parse_band(std::string_view name);  // "lh3" | "hl3" | "hh3"

// The fuzzy system implied by params alone (standard partition over the
// configured or default strength bounds).
FuzzySystem default_fuzzy(const EmbedParams& params);

// Throws ParameterError unless q > 0, window >= 1 and every strength the
// system can produce lies strictly inside (0, q/2).
void check_decodable(const EmbedParams& params, const FuzzySystem& fs);

struct Position {
  std::size_t row = 0;
  std::size_t col = 0;
  friend bool operator==(const Position&, const Position&) = default;
};

// Keyed permutation of all 64x64 band positions. Entry j carries watermark
// bit j. Fisher-Yates from the last index down, j = SplitMix64(key).below(i+1),
// starting from row-major order.
using CoefficientSelection = std::vector<Position>;

CoefficientSelection select_positions(const EmbedParams& params, std::size_t band_width,
                                      std::size_t band_height);

// T' = q * round(T / q) + alpha * bit
double lattice_embed(double coeff, double q, double alpha, int bit);

// Sign of the residual T - q * round(T / q); zero decodes as +1.
int lattice_decode(double coeff, double q);

// Strength for every selected position. The texture window for position p is
// p itself plus the window-1 coefficients preceding it in row-major band
// order, wrapping at the start of the band. Reads only `band`, so the result
// is independent of embedding order.
std::vector<double> embedding_strengths(const Plane& band, const CoefficientSelection& sel,
                                        const EmbedParams& params, const FuzzySystem& fs);

SubbandPyramid embed(const SubbandPyramid& pyr, const WatermarkBits& wm,
                     const EmbedParams& params, const FuzzySystem& fs);

struct ExtractionResult {
  WatermarkBits bits;
  std::optional<double> ncc_vs_original;  // normalized correlation of bits mapped to {0, 1}
  std::optional<double> ber;
};

ExtractionResult extract(const SubbandPyramid& pyr, const EmbedParams& params,
                         const FuzzySystem& fs,
                         const std::optional<WatermarkBits>& reference = std::nullopt);

// Rounds `plane` to integers in [0, 255] while keeping every level-3
// coefficient of `band` within 1/16 of its real value. Plain rounding shifts
// all pixels of an 8x8 block by the same amount and can move the coefficient
// by up to 4; here, after plain rounding, the pixels closest to their other
// integer neighbour are flipped until the block's coefficient error is at
// most half a pixel step (1/8 per flip).
Plane round_preserving_band(const Plane& plane, DetailOrientation band);

// prepare_host -> blue plane -> 3-level DWT -> embed -> inverse ->
// round_preserving_band -> replace_blue.
RgbImage embed_image(const RgbImage& host, const WatermarkBits& wm, const EmbedParams& params,
                     const FuzzySystem& fs);

// Requires a 512x512 image; nothing is resized on the way in.
ExtractionResult extract_image(const RgbImage& img, const EmbedParams& params,
                               const FuzzySystem& fs,
                               const std::optional<WatermarkBits>& reference = std::nullopt);

}  // namespace fuzzymark
