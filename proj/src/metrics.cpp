#include "fuzzymark/metrics.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "fuzzymark/error.hpp"

namespace fuzzymark {
namespace {

void require_same(const Plane& a, const Plane& b) {
  if (!a.same_shape(b)) {
    throw DimensionError("shape mismatch: " + std::to_string(a.width()) + "x" +
                         std::to_string(a.height()) + " vs " + std::to_string(b.width()) + "x" +
                         std::to_string(b.height()));
  }
}

double squared_error(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return sum;
}

}  // namespace

double mse(const Plane& a, const Plane& b) {
  require_same(a, b);
  if (a.empty()) throw DimensionError("mse of empty planes");
  return squared_error(a.samples(), b.samples()) / static_cast<double>(a.size());
}

double mse(const RgbImage& a, const RgbImage& b) {
  double sum = 0.0;
  for (std::size_t c = 0; c < 3; ++c) {
    require_same(a.planes[c], b.planes[c]);
    sum += squared_error(a.planes[c].samples(), b.planes[c].samples());
  }
  const double n = 3.0 * static_cast<double>(a.planes[0].size());
  if (n == 0.0) throw DimensionError("mse of empty images");
  return sum / n;
}

double psnr(double m, double peak) {
  if (m < 0.0 || std::isnan(m)) throw ParameterError("mse must be non-negative");
  if (!(peak > 0.0)) throw ParameterError("peak value must be positive");
  if (m == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(peak * peak / m);
}

double ncc(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw DimensionError("ncc operands differ in length: " + std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()));
  }
  double cross = 0.0;
  double energy = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    cross += a[i] * b[i];
    energy += a[i] * a[i];
  }
  if (energy == 0.0) throw DegenerateInputError("ncc reference has zero energy");
  return cross / energy;
}

double ncc(const Plane& a, const Plane& b) {
  require_same(a, b);
  return ncc(a.samples(), b.samples());
}

double ncc(const RgbImage& a, const RgbImage& b) {
  double cross = 0.0;
  double energy = 0.0;
  for (std::size_t c = 0; c < 3; ++c) {
    require_same(a.planes[c], b.planes[c]);
    const auto x = a.planes[c].samples();
    const auto y = b.planes[c].samples();
    for (std::size_t i = 0; i < x.size(); ++i) {
      cross += x[i] * y[i];
      energy += x[i] * x[i];
    }
  }
  if (energy == 0.0) throw DegenerateInputError("ncc reference image is all zero");
  return cross / energy;
}

double ber(const WatermarkBits& x, const WatermarkBits& y) {
  if (x.size() != y.size()) throw DimensionError("bit sequences differ in length");
  std::size_t wrong = 0;
  for (std::size_t i = 0; i < x.size(); ++i) wrong += x[i] != y[i] ? 1 : 0;
  return static_cast<double>(wrong) / static_cast<double>(x.size());
}

double watermark_ncc(const WatermarkBits& reference, const WatermarkBits& extracted) {
  const auto a = reference.as_binary();
  const auto b = extracted.as_binary();
  return ncc(a, b);
}

QualityReport compare_images(const RgbImage& reference, const RgbImage& test, double peak) {
  QualityReport r;
  r.mse = mse(reference, test);
  r.psnr_db = psnr(r.mse, peak);
  r.r_peak = peak;
  r.ncc = ncc(reference, test);
  return r;
}

}  // namespace fuzzymark
