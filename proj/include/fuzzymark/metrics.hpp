#pragma once

#include <span>

#include "fuzzymark/image_io.hpp"
#include "fuzzymark/plane.hpp"

namespace fuzzymark {

inline constexpr double kPeak8Bit = 255.0;
inline constexpr double kPeakLegacy = 511.0;  // compatibility mode for legacy reports

double mse(const Plane& a, const Plane& b);
double mse(const RgbImage& a, const RgbImage& b);  // pooled over channels

// 10 log10(peak^2 / m); +infinity when m == 0.
double psnr(double m, double peak = kPeak8Bit);

// sum(a*b) / sum(a*a). Deliberately asymmetric: normalized by the first
// argument, so ncc(a, 2a) == 2.
double ncc(std::span<const double> a, std::span<const double> b);
double ncc(const Plane& a, const Plane& b);
double ncc(const RgbImage& a, const RgbImage& b);

double ber(const WatermarkBits& x, const WatermarkBits& y);

// ncc of two watermarks after mapping bits to {0, 1}.
double watermark_ncc(const WatermarkBits& reference, const WatermarkBits& extracted);

struct QualityReport {
  double mse = 0.0;
  double psnr_db = 0.0;
  double r_peak = kPeak8Bit;
  double ncc = 0.0;
};

QualityReport compare_images(const RgbImage& reference, const RgbImage& test,
                             double peak = kPeak8Bit);

}  // namespace fuzzymark
