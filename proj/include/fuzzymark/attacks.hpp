#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "fuzzymark/plane.hpp"

namespace fuzzymark {

enum class AttackKind { kNone, kJpeg, kMedian, kCrop, kSaltPepper, kRotation };

enum class CropAnchor { kTopLeft, kTopRight, kBottomLeft, kBottomRight, kCenter };

// One cell of an attack grid. Intensity meaning depends on kind: JPEG quality
// 1-100, median window (odd), crop area fraction [0, 1), salt & pepper density
// [0, 1], rotation in degrees.
struct AttackSpec {
  AttackKind kind = AttackKind::kNone;
  double intensity = 0.0;
  std::uint64_t seed = 0;
  CropAnchor anchor = CropAnchor::kTopLeft;

  friend bool operator==(const AttackSpec&, const AttackSpec&) = default;
};

// Grammar: none | jpeg:Q | median:W | crop:F[:anchor=NAME] | sp:D[:seed=N]
//          | rot:DEG
// Throws ParameterError with the grammar in the message on failure.
AttackSpec parse_attack(std::string_view text);
std::string format_attack(const AttackSpec& spec);  // inverse of parse_attack
std::string_view attack_family(AttackKind kind);     // report label
std::string intensity_label(const AttackSpec& spec); // "Q=10", "5%", "4deg", ...

void validate(const AttackSpec& spec);

// Every attack keeps the image size and returns integer samples in [0, 255].
RgbImage apply_attack(const RgbImage& img, const AttackSpec& spec);

// Baseline 8x8 DCT-II codec without entropy coding: level shift by 128, the
// standard luminance table scaled by the libjpeg quality rule (floor, min 1),
// round, dequantize, inverse DCT, round and clamp. Every channel uses the
// luminance table. Partial edge blocks are padded by replication.
RgbImage jpeg_attack(const RgbImage& img, int quality);

// Median over a window x window neighbourhood with replicated borders.
RgbImage median_attack(const RgbImage& img, int window = 3);

// Zeroes a rectangle with the image's aspect ratio covering `fraction` of its
// area (side lengths rounded), placed at `anchor`.
RgbImage crop_attack(const RgbImage& img, double fraction,
                     CropAnchor anchor = CropAnchor::kTopLeft);

// Exactly round(density * pixels) sites, picked by a partial Fisher-Yates on
// SplitMix64(seed); after each pick the next draw's top bit selects 255 (1) or
// 0 (0). A site is set in all three channels.
RgbImage salt_pepper_attack(const RgbImage& img, double density, std::uint64_t seed);

// Counter-clockwise rotation about the image centre, bilinear sampling,
// zeros outside the source.
RgbImage rotation_attack(const RgbImage& img, double degrees);

}  // namespace fuzzymark
