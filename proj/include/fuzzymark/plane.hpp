#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace fuzzymark {

// Row-major grid of real samples: one colour channel or one wavelet subband.
class Plane {
 public:
  Plane() = default;
  Plane(std::size_t width, std::size_t height, double fill = 0.0)
      : width_(width), height_(height), data_(width * height, fill) {}
  Plane(std::size_t width, std::size_t height, std::vector<double> data);

  std::size_t width() const { return width_; }
  std::size_t height() const { return height_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double& at(std::size_t row, std::size_t col) { return data_[row * width_ + col]; }
  double at(std::size_t row, std::size_t col) const { return data_[row * width_ + col]; }

  std::span<double> samples() { return data_; }
  std::span<const double> samples() const { return data_; }

  bool same_shape(const Plane& other) const {
    return width_ == other.width_ && height_ == other.height_;
  }

  friend bool operator==(const Plane&, const Plane&) = default;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<double> data_;
};

enum class Channel : std::size_t { kRed = 0, kGreen = 1, kBlue = 2 };

// Three equally sized planes in RGB order. Samples are 8-bit intensities held
// as doubles; they are clamped to [0, 255] only when written to disk.
struct RgbImage {
  std::array<Plane, 3> planes;

  RgbImage() = default;
  RgbImage(std::size_t width, std::size_t height, double fill = 0.0)
      : planes{Plane(width, height, fill), Plane(width, height, fill),
               Plane(width, height, fill)} {}

  std::size_t width() const { return planes[0].width(); }
  std::size_t height() const { return planes[0].height(); }

  Plane& channel(Channel c) { return planes[static_cast<std::size_t>(c)]; }
  const Plane& channel(Channel c) const { return planes[static_cast<std::size_t>(c)]; }

  friend bool operator==(const RgbImage&, const RgbImage&) = default;
};

}  // namespace fuzzymark
