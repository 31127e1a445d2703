#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

#include "fuzzymark/image_io.hpp"
#include "fuzzymark/plane.hpp"

namespace fuzzymark::testing {

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::uint64_t counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("fuzzymark_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline void write_bytes(const std::filesystem::path& p, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(p, std::ios::binary);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

inline std::vector<std::uint8_t> read_bytes(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline Plane random_plane(std::size_t w, std::size_t h, std::mt19937_64& rng, double lo = 0.0,
                          double hi = 255.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Plane p(w, h);
  for (double& v : p.samples()) v = dist(rng);
  return p;
}

inline RgbImage random_image(std::size_t w, std::size_t h, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dist(0, 255);
  RgbImage img(w, h);
  for (auto& p : img.planes) {
    for (double& v : p.samples()) v = dist(rng);
  }
  return img;
}

inline WatermarkBits random_mark(std::mt19937_64& rng) {
  std::bernoulli_distribution coin(0.5);
  std::vector<int> bits(kMarkBits);
  for (int& b : bits) b = coin(rng) ? 1 : -1;
  return WatermarkBits(std::move(bits));
}

inline std::filesystem::path asset(const std::string& name) {
  return std::filesystem::path(FUZZYMARK_ASSET_DIR) / name;
}

}  // namespace fuzzymark::testing
