#include "fuzzymark/plane.hpp"

#include <string>

#include "fuzzymark/error.hpp"

namespace fuzzymark {

Plane::Plane(std::size_t width, std::size_t height, std::vector<double> data)
    : width_(width), height_(height), data_(std::move(data)) {
  if (data_.size() != width * height) {
    throw DimensionError("plane data length " + std::to_string(data_.size()) + " does not match " +
                         std::to_string(width) + "x" + std::to_string(height));
  }
}

}  // namespace fuzzymark
