#include "fuzzymark/codec.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>

#include "fuzzymark/error.hpp"
#include "fuzzymark/metrics.hpp"
#include "fuzzymark/prng.hpp"

namespace fuzzymark {

std::string_view band_name(DetailOrientation o) {
  switch (o) {
    case DetailOrientation::kLH: return "lh3";
    case DetailOrientation::kHL: return "hl3";
    case DetailOrientation::kHH: return "hh3";
  }
  return "?";
}

DetailOrientation parse_band(std::string_view name) {
  if (name == "lh3") return DetailOrientation::kLH;
  if (name == "hl3") return DetailOrientation::kHL;
  if (name == "hh3") return DetailOrientation::kHH;
  throw ParameterError("unknown band '" + std::string(name) + "' (expected lh3, hl3 or hh3)");
}

FuzzySystem default_fuzzy(const EmbedParams& params) {
  if (params.alpha_bounds) {
    return FuzzySystem::standard(params.alpha_bounds->min, params.alpha_bounds->max);
  }
  return FuzzySystem::for_step(params.q);
}

void check_decodable(const EmbedParams& params, const FuzzySystem& fs) {
  if (!(params.q > 0.0) || !std::isfinite(params.q)) {
    throw ParameterError("quantization step q must be positive, got " + std::to_string(params.q));
  }
  if (params.window < 1) throw ParameterError("texture window must hold at least one coefficient");
  if (!(fs.alpha_min() > 0.0)) {
    throw ParameterError("smallest embedding strength " + std::to_string(fs.alpha_min()) +
                         " must be positive or -1 bits cannot be told apart");
  }
  if (!(fs.alpha_max() < params.q / 2.0)) {
    throw ParameterError("largest embedding strength " + std::to_string(fs.alpha_max()) +
                         " must stay below q/2 = " + std::to_string(params.q / 2.0));
  }
}

CoefficientSelection select_positions(const EmbedParams& params, std::size_t band_width,
                                      std::size_t band_height) {
  if (band_width != kMarkSide || band_height != kMarkSide) {
    throw DimensionError("embedding band must be 64x64, got " + std::to_string(band_width) + "x" +
                         std::to_string(band_height));
  }
  CoefficientSelection sel(band_width * band_height);
  for (std::size_t i = 0; i < sel.size(); ++i) sel[i] = {i / band_width, i % band_width};
  SplitMix64 rng(params.key);
  for (std::size_t i = sel.size() - 1; i > 0; --i) {
    std::swap(sel[i], sel[rng.below(i + 1)]);
  }
  return sel;
}

double lattice_embed(double coeff, double q, double alpha, int bit) {
  return q * std::round(coeff / q) + alpha * static_cast<double>(bit);
}

int lattice_decode(double coeff, double q) {
  const double residual = coeff - q * std::round(coeff / q);
  return residual >= 0.0 ? 1 : -1;
}

std::vector<double> embedding_strengths(const Plane& band, const CoefficientSelection& sel,
                                        const EmbedParams& params, const FuzzySystem& fs) {
  const std::size_t n = band.size();
  const std::size_t window = std::min(params.window, n);
  const auto samples = band.samples();
  std::vector<double> strengths(sel.size());
  std::vector<double> buffer(window);
  for (std::size_t j = 0; j < sel.size(); ++j) {
    const std::size_t flat = sel[j].row * band.width() + sel[j].col;
    for (std::size_t k = 0; k < window; ++k) buffer[k] = samples[(flat + n - k) % n];
    const TextureSensitivity s = texture_sensitivity(buffer, params.q, params.key_offset);
    strengths[j] = infer(fs, s.normalized);
  }
  return strengths;
}

SubbandPyramid embed(const SubbandPyramid& pyr, const WatermarkBits& wm, const EmbedParams& params,
                     const FuzzySystem& fs) {
  check_decodable(params, fs);
  if (pyr.levels() != kEmbedLevels) {
    throw StructureError("embedding needs a 3-level pyramid, got " + std::to_string(pyr.levels()));
  }
  const Plane& original = pyr.band(kEmbedLevels, params.band);
  const CoefficientSelection sel = select_positions(params, original.width(), original.height());
  const std::vector<double> alpha = embedding_strengths(original, sel, params, fs);

  SubbandPyramid out = pyr;
  Plane& band = out.band(kEmbedLevels, params.band);
  for (std::size_t j = 0; j < sel.size(); ++j) {
    const Position p = sel[j];
    band.at(p.row, p.col) = lattice_embed(original.at(p.row, p.col), params.q, alpha[j], wm[j]);
  }
  return out;
}

ExtractionResult extract(const SubbandPyramid& pyr, const EmbedParams& params, const FuzzySystem& fs,
                         const std::optional<WatermarkBits>& reference) {
  (void)fs;  // strengths are not needed: the residual sign alone carries the bit
  if (!(params.q > 0.0)) throw ParameterError("quantization step q must be positive");
  const Plane& band = pyr.band(kEmbedLevels, params.band);
  const CoefficientSelection sel = select_positions(params, band.width(), band.height());
  std::vector<int> bits(sel.size());
  for (std::size_t j = 0; j < sel.size(); ++j) {
    bits[j] = lattice_decode(band.at(sel[j].row, sel[j].col), params.q);
  }
  ExtractionResult result{WatermarkBits(std::move(bits)), std::nullopt, std::nullopt};
  if (reference) {
    result.ber = ber(*reference, result.bits);
    result.ncc_vs_original = watermark_ncc(*reference, result.bits);
  }
  return result;
}

Plane round_preserving_band(const Plane& plane, DetailOrientation band) {
  constexpr std::size_t kBlock = std::size_t{1} << kEmbedLevels;
  if (plane.width() % kBlock != 0 || plane.height() % kBlock != 0) {
    throw DimensionError("band-preserving rounding needs dimensions divisible by 8");
  }
  // Sign of each pixel's contribution to the level-3 coefficient of its block.
  std::array<int, kBlock * kBlock> sign{};
  for (std::size_t y = 0; y < kBlock; ++y) {
    for (std::size_t x = 0; x < kBlock; ++x) {
      const bool top = y < kBlock / 2;
      const bool left = x < kBlock / 2;
      int s = 1;
      switch (band) {
        case DetailOrientation::kLH: s = top ? 1 : -1; break;
        case DetailOrientation::kHL: s = left ? 1 : -1; break;
        case DetailOrientation::kHH: s = top == left ? 1 : -1; break;
      }
      sign[y * kBlock + x] = s;
    }
  }
  const double scale = 1.0 / static_cast<double>(kBlock);

  Plane out(plane.width(), plane.height());
  struct Candidate {
    double cost;
    std::size_t index;
  };
  std::vector<Candidate> candidates;
  candidates.reserve(kBlock * kBlock);
  for (std::size_t by = 0; by < plane.height(); by += kBlock) {
    for (std::size_t bx = 0; bx < plane.width(); bx += kBlock) {
      double error = 0.0;
      for (std::size_t i = 0; i < kBlock * kBlock; ++i) {
        const std::size_t y = by + i / kBlock;
        const std::size_t x = bx + i % kBlock;
        const double v = std::clamp(std::round(plane.at(y, x)), 0.0, 255.0);
        out.at(y, x) = v;
        error += sign[i] * (v - plane.at(y, x)) * scale;
      }
      const auto flips = static_cast<std::size_t>(std::llround(std::abs(error) / scale));
      if (flips == 0) continue;
      const int direction = error > 0.0 ? -1 : 1;
      candidates.clear();
      for (std::size_t i = 0; i < kBlock * kBlock; ++i) {
        const std::size_t y = by + i / kBlock;
        const std::size_t x = bx + i % kBlock;
        const double moved = out.at(y, x) + direction * sign[i];
        if (moved < 0.0 || moved > 255.0) continue;
        const double before = out.at(y, x) - plane.at(y, x);
        const double after = moved - plane.at(y, x);
        candidates.push_back({after * after - before * before, i});
      }
      const std::size_t n = std::min(flips, candidates.size());
      std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(n),
                        candidates.end(), [](const Candidate& a, const Candidate& b) {
                          return a.cost < b.cost || (a.cost == b.cost && a.index < b.index);
                        });
      for (std::size_t k = 0; k < n; ++k) {
        const std::size_t i = candidates[k].index;
        out.at(by + i / kBlock, bx + i % kBlock) += direction * sign[i];
      }
    }
  }
  return out;
}

RgbImage embed_image(const RgbImage& host, const WatermarkBits& wm, const EmbedParams& params,
                     const FuzzySystem& fs) {
  check_decodable(params, fs);
  const RgbImage prepared = prepare_host(host);
  const SubbandPyramid pyr = analyze(extract_blue(prepared), kEmbedLevels);
  const Plane marked = reconstruct(embed(pyr, wm, params, fs));
  return replace_blue(prepared, round_preserving_band(marked, params.band));
}

ExtractionResult extract_image(const RgbImage& img, const EmbedParams& params, const FuzzySystem& fs,
                               const std::optional<WatermarkBits>& reference) {
  if (img.width() != kHostSize || img.height() != kHostSize) {
    throw DimensionError("extraction needs a 512x512 image, got " + std::to_string(img.width()) +
                         "x" + std::to_string(img.height()) +
                         "; resize or letterbox it to 512x512 first");
  }
  return extract(analyze(extract_blue(img), kEmbedLevels), params, fs, reference);
}

}  // namespace fuzzymark
