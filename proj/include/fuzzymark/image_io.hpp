#pragma once

#include <cstddef>
#include <filesystem>
#include <vector>

#include "fuzzymark/plane.hpp"

namespace fuzzymark {

inline constexpr std::size_t kHostSize = 512;
inline constexpr std::size_t kMarkSide = 64;
inline constexpr std::size_t kMarkBits = kMarkSide * kMarkSide;

// Bipolar 64x64 payload, row-major, every element -1 or +1.
class WatermarkBits {
 public:
  WatermarkBits() : bits_(kMarkBits, 1) {}
  explicit WatermarkBits(std::vector<int> bits);

  std::size_t size() const { return bits_.size(); }
  int operator[](std::size_t i) const { return bits_[i]; }
  const std::vector<int>& bits() const { return bits_; }

  // Bits mapped -1 -> 0, +1 -> 1.
  std::vector<double> as_binary() const;

  friend bool operator==(const WatermarkBits&, const WatermarkBits&) = default;

 private:
  std::vector<int> bits_;
};

// Accepts 8-bit RGB PNG (palette expanded) and 24-bit BMP. Grayscale, RGBA and
// 16-bit inputs raise ChannelError naming the layout found.
RgbImage load_image(const std::filesystem::path& path);

// Format chosen by extension: .png or .bmp. Samples are rounded and clamped.
void save_image(const std::filesystem::path& path, const RgbImage& img);

// Writes a single-channel 8-bit PNG or BMP (BMP stores it as gray RGB).
void save_gray(const std::filesystem::path& path, const Plane& plane);

// Bilinear resize with pixel-centre alignment; results are rounded to integers.
Plane resize_bilinear(const Plane& src, std::size_t width, std::size_t height);

// Resizes every channel to 512x512. Already-512 inputs pass through unchanged.
RgbImage prepare_host(const RgbImage& img);

Plane extract_blue(const RgbImage& img);

// Blue channel replaced by `blue`, rounded to the nearest integer and clamped
// to [0, 255]. Red and green are untouched.
RgbImage replace_blue(const RgbImage& img, const Plane& blue);

// Loads a 64x64 PNG/BMP/PGM bitmap (gray, or RGB averaged to gray) and
// binarizes at 128. Other sizes raise DimensionError; nothing is resized.
WatermarkBits load_watermark(const std::filesystem::path& path);

// Same binarization applied to an in-memory gray plane.
WatermarkBits binarize_watermark(const Plane& gray);

// -1 -> 0, +1 -> 255 as a 64x64 plane.
Plane watermark_to_plane(const WatermarkBits& bits);

}  // namespace fuzzymark
