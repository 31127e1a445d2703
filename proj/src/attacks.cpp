#include "fuzzymark/attacks.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "fuzzymark/error.hpp"
#include "fuzzymark/prng.hpp"

namespace fuzzymark {
namespace {

constexpr std::string_view kGrammar =
    "attack grammar: none | jpeg:<quality 1-100> | median:<odd window >= 3> | "
    "crop:<fraction 0-1>[:anchor=top-left|top-right|bottom-left|bottom-right|center] | "
    "sp:<density 0-1>[:seed=<n>] | rot:<degrees>";

[[noreturn]] void bad_spec(std::string_view text, std::string_view why) {
  throw ParameterError("cannot parse attack '" + std::string(text) + "': " + std::string(why) +
                       "\n" + std::string(kGrammar));
}

std::string number(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t end = s.find(sep, start);
    parts.push_back(s.substr(start, end == std::string_view::npos ? end : end - start));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return parts;
}

std::string_view anchor_name(CropAnchor a) {
  switch (a) {
    case CropAnchor::kTopLeft: return "top-left";
    case CropAnchor::kTopRight: return "top-right";
    case CropAnchor::kBottomLeft: return "bottom-left";
    case CropAnchor::kBottomRight: return "bottom-right";
    case CropAnchor::kCenter: return "center";
  }
  return "?";
}

std::uint8_t clamp_byte(double v) { return static_cast<std::uint8_t>(std::clamp(std::round(v), 0.0, 255.0)); }

RgbImage quantized(RgbImage img) {
  for (auto& p : img.planes) {
    for (double& v : p.samples()) v = clamp_byte(v);
  }
  return img;
}

// Annex K luminance quantization table, row-major.
constexpr std::array<int, 64> kLuminanceTable = {
    16, 11, 10, 16, 24,  40,  51,  61,  12, 12, 14, 19, 26,  58,  60,  55,
    14, 13, 16, 24, 40,  57,  69,  56,  14, 17, 22, 29, 51,  87,  80,  62,
    18, 22, 37, 56, 68,  109, 103, 77,  24, 35, 55, 64, 81,  104, 113, 92,
    49, 64, 78, 87, 103, 121, 120, 101, 72, 92, 95, 98, 112, 100, 103, 99};

std::array<double, 64> scaled_table(int quality) {
  const int scale = quality < 50 ? 5000 / quality : 200 - 2 * quality;
  std::array<double, 64> t{};
  for (std::size_t i = 0; i < 64; ++i) {
    t[i] = std::clamp((kLuminanceTable[i] * scale + 50) / 100, 1, 255);
  }
  return t;
}

// basis[u][x] = c(u) / 2 * cos((2x + 1) u pi / 16), c(0) = 1/sqrt(2)
std::array<std::array<double, 8>, 8> dct_basis() {
  std::array<std::array<double, 8>, 8> m{};
  for (int u = 0; u < 8; ++u) {
    const double cu = u == 0 ? std::numbers::sqrt2 / 2.0 : 1.0;
    for (int x = 0; x < 8; ++x) {
      m[u][x] = 0.5 * cu * std::cos((2.0 * x + 1.0) * u * std::numbers::pi / 16.0);
    }
  }
  return m;
}

Plane jpeg_plane(const Plane& src, const std::array<double, 64>& table) {
  static const auto basis = dct_basis();
  const std::size_t w = src.width();
  const std::size_t h = src.height();
  Plane out(w, h);
  std::array<double, 64> block{};
  std::array<double, 64> tmp{};
  std::array<double, 64> coef{};
  for (std::size_t by = 0; by < h; by += 8) {
    for (std::size_t bx = 0; bx < w; bx += 8) {
      for (std::size_t y = 0; y < 8; ++y) {
        for (std::size_t x = 0; x < 8; ++x) {
          const std::size_t sy = std::min(by + y, h - 1);
          const std::size_t sx = std::min(bx + x, w - 1);
          block[y * 8 + x] = src.at(sy, sx) - 128.0;
        }
      }
      // rows then columns: coef = B * block * B^T
      for (std::size_t y = 0; y < 8; ++y) {
        for (std::size_t v = 0; v < 8; ++v) {
          double s = 0.0;
          for (std::size_t x = 0; x < 8; ++x) s += basis[v][x] * block[y * 8 + x];
          tmp[y * 8 + v] = s;
        }
      }
      for (std::size_t u = 0; u < 8; ++u) {
        for (std::size_t v = 0; v < 8; ++v) {
          double s = 0.0;
          for (std::size_t y = 0; y < 8; ++y) s += basis[u][y] * tmp[y * 8 + v];
          coef[u * 8 + v] = std::round(s / table[u * 8 + v]) * table[u * 8 + v];
        }
      }
      for (std::size_t u = 0; u < 8; ++u) {
        for (std::size_t x = 0; x < 8; ++x) {
          double s = 0.0;
          for (std::size_t v = 0; v < 8; ++v) s += basis[v][x] * coef[u * 8 + v];
          tmp[u * 8 + x] = s;
        }
      }
      for (std::size_t y = 0; y < 8; ++y) {
        for (std::size_t x = 0; x < 8; ++x) {
          if (by + y >= h || bx + x >= w) continue;
          double s = 0.0;
          for (std::size_t u = 0; u < 8; ++u) s += basis[u][y] * tmp[u * 8 + x];
          out.at(by + y, bx + x) = clamp_byte(s + 128.0);
        }
      }
    }
  }
  return out;
}

Plane median_plane(const Plane& src, int window) {
  const auto radius = static_cast<std::ptrdiff_t>(window / 2);
  const auto w = static_cast<std::ptrdiff_t>(src.width());
  const auto h = static_cast<std::ptrdiff_t>(src.height());
  Plane out(src.width(), src.height());
  std::vector<double> neighbourhood(static_cast<std::size_t>(window * window));
  const std::size_t mid = neighbourhood.size() / 2;
  for (std::ptrdiff_t y = 0; y < h; ++y) {
    for (std::ptrdiff_t x = 0; x < w; ++x) {
      std::size_t k = 0;
      for (std::ptrdiff_t dy = -radius; dy <= radius; ++dy) {
        const auto sy = static_cast<std::size_t>(std::clamp(y + dy, std::ptrdiff_t{0}, h - 1));
        for (std::ptrdiff_t dx = -radius; dx <= radius; ++dx) {
          const auto sx = static_cast<std::size_t>(std::clamp(x + dx, std::ptrdiff_t{0}, w - 1));
          neighbourhood[k++] = src.at(sy, sx);
        }
      }
      std::nth_element(neighbourhood.begin(), neighbourhood.begin() + static_cast<std::ptrdiff_t>(mid),
                       neighbourhood.end());
      out.at(static_cast<std::size_t>(y), static_cast<std::size_t>(x)) = neighbourhood[mid];
    }
  }
  return out;
}

double sample_bilinear(const Plane& p, double x, double y) {
  constexpr double kEdge = 1e-9;
  const double max_x = static_cast<double>(p.width() - 1);
  const double max_y = static_cast<double>(p.height() - 1);
  if (x < -kEdge || y < -kEdge || x > max_x + kEdge || y > max_y + kEdge) return 0.0;
  x = std::clamp(x, 0.0, max_x);
  y = std::clamp(y, 0.0, max_y);
  const auto x0 = static_cast<std::size_t>(x);
  const auto y0 = static_cast<std::size_t>(y);
  const std::size_t x1 = std::min(x0 + 1, p.width() - 1);
  const std::size_t y1 = std::min(y0 + 1, p.height() - 1);
  const double fx = x - static_cast<double>(x0);
  const double fy = y - static_cast<double>(y0);
  const double top = p.at(y0, x0) * (1.0 - fx) + p.at(y0, x1) * fx;
  const double bottom = p.at(y1, x0) * (1.0 - fx) + p.at(y1, x1) * fx;
  return top * (1.0 - fy) + bottom * fy;
}

}  // namespace

AttackSpec parse_attack(std::string_view text) {
  const auto parts = split(text, ':');
  const std::string_view kind = parts[0];
  AttackSpec spec;
  if (kind == "none") {
    if (parts.size() != 1) bad_spec(text, "'none' takes no intensity");
    return spec;
  }
  if (kind == "jpeg") {
    spec.kind = AttackKind::kJpeg;
  } else if (kind == "median") {
    spec.kind = AttackKind::kMedian;
  } else if (kind == "crop") {
    spec.kind = AttackKind::kCrop;
  } else if (kind == "sp" || kind == "salt_pepper") {
    spec.kind = AttackKind::kSaltPepper;
  } else if (kind == "rot" || kind == "rotation") {
    spec.kind = AttackKind::kRotation;
  } else {
    bad_spec(text, "unknown attack kind");
  }
  if (parts.size() < 2 || parts[1].empty()) bad_spec(text, "missing intensity");

  const std::string intensity(parts[1]);
  std::size_t used = 0;
  try {
    spec.intensity = std::stod(intensity, &used);
  } catch (const std::logic_error&) {
    bad_spec(text, "intensity is not a number");
  }
  if (used != intensity.size() || !std::isfinite(spec.intensity)) bad_spec(text, "intensity is not a number");

  for (std::size_t i = 2; i < parts.size(); ++i) {
    const auto eq = parts[i].find('=');
    if (eq == std::string_view::npos) bad_spec(text, "options must be key=value");
    const std::string_view key = parts[i].substr(0, eq);
    const std::string_view value = parts[i].substr(eq + 1);
    if (key == "seed" && spec.kind == AttackKind::kSaltPepper) {
      const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), spec.seed);
      if (ec != std::errc() || ptr != value.data() + value.size()) bad_spec(text, "seed must be an unsigned integer");
    } else if (key == "anchor" && spec.kind == AttackKind::kCrop) {
      bool found = false;
      for (CropAnchor a : {CropAnchor::kTopLeft, CropAnchor::kTopRight, CropAnchor::kBottomLeft,
                           CropAnchor::kBottomRight, CropAnchor::kCenter}) {
        if (anchor_name(a) == value) {
          spec.anchor = a;
          found = true;
        }
      }
      if (!found) bad_spec(text, "unknown crop anchor");
    } else {
      bad_spec(text, "unsupported option '" + std::string(key) + "'");
    }
  }
  try {
    validate(spec);
  } catch (const ParameterError& e) {
    bad_spec(text, e.what());
  }
  return spec;
}

std::string format_attack(const AttackSpec& spec) {
  switch (spec.kind) {
    case AttackKind::kNone: return "none";
    case AttackKind::kJpeg: return "jpeg:" + number(spec.intensity);
    case AttackKind::kMedian: return "median:" + number(spec.intensity);
    case AttackKind::kCrop: {
      std::string s = "crop:" + number(spec.intensity);
      if (spec.anchor != CropAnchor::kTopLeft) s += ":anchor=" + std::string(anchor_name(spec.anchor));
      return s;
    }
    case AttackKind::kSaltPepper:
      return "sp:" + number(spec.intensity) + ":seed=" + std::to_string(spec.seed);
    case AttackKind::kRotation: return "rot:" + number(spec.intensity);
  }
  return "?";
}

std::string_view attack_family(AttackKind kind) {
  switch (kind) {
    case AttackKind::kNone: return "Watermarked Image";
    case AttackKind::kJpeg: return "JPEG Compression";
    case AttackKind::kMedian: return "Median Filtering";
    case AttackKind::kCrop: return "Cropping";
    case AttackKind::kSaltPepper: return "Salt&Pepper Noise";
    case AttackKind::kRotation: return "Rotation";
  }
  return "?";
}

std::string intensity_label(const AttackSpec& spec) {
  switch (spec.kind) {
    case AttackKind::kNone: return "--";
    case AttackKind::kJpeg: return "Q=" + number(spec.intensity);
    case AttackKind::kMedian: return number(spec.intensity) + "x" + number(spec.intensity);
    case AttackKind::kCrop:
    case AttackKind::kSaltPepper: return number(spec.intensity * 100.0) + "%";
    case AttackKind::kRotation: return number(spec.intensity) + "deg";
  }
  return "?";
}

void validate(const AttackSpec& spec) {
  const double v = spec.intensity;
  switch (spec.kind) {
    case AttackKind::kNone: return;
    case AttackKind::kJpeg:
      if (v != std::floor(v) || v < 1 || v > 100) throw ParameterError("JPEG quality must be an integer in 1..100");
      return;
    case AttackKind::kMedian:
      if (v != std::floor(v) || v < 3 || static_cast<long long>(v) % 2 == 0 || v > 99) {
        throw ParameterError("median window must be an odd integer >= 3");
      }
      return;
    case AttackKind::kCrop:
      if (!(v >= 0.0 && v < 1.0)) throw ParameterError("crop fraction must lie in [0, 1)");
      return;
    case AttackKind::kSaltPepper:
      if (!(v >= 0.0 && v <= 1.0)) throw ParameterError("salt & pepper density must lie in [0, 1]");
      return;
    case AttackKind::kRotation:
      if (!std::isfinite(v)) throw ParameterError("rotation angle must be finite");
      return;
  }
}

RgbImage apply_attack(const RgbImage& img, const AttackSpec& spec) {
  validate(spec);
  switch (spec.kind) {
    case AttackKind::kNone: return img;
    case AttackKind::kJpeg: return jpeg_attack(img, static_cast<int>(spec.intensity));
    case AttackKind::kMedian: return median_attack(img, static_cast<int>(spec.intensity));
    case AttackKind::kCrop: return crop_attack(img, spec.intensity, spec.anchor);
    case AttackKind::kSaltPepper: return salt_pepper_attack(img, spec.intensity, spec.seed);
    case AttackKind::kRotation: return rotation_attack(img, spec.intensity);
  }
  throw ParameterError("unknown attack kind");
}

RgbImage jpeg_attack(const RgbImage& img, int quality) {
  if (quality < 1 || quality > 100) throw ParameterError("JPEG quality must be in 1..100");
  const auto table = scaled_table(quality);
  RgbImage out;
  for (std::size_t c = 0; c < 3; ++c) out.planes[c] = jpeg_plane(img.planes[c], table);
  return out;
}

RgbImage median_attack(const RgbImage& img, int window) {
  if (window < 3 || window % 2 == 0) throw ParameterError("median window must be an odd integer >= 3");
  RgbImage out;
  for (std::size_t c = 0; c < 3; ++c) out.planes[c] = median_plane(img.planes[c], window);
  return quantized(std::move(out));
}

RgbImage crop_attack(const RgbImage& img, double fraction, CropAnchor anchor) {
  if (!(fraction >= 0.0 && fraction < 1.0)) throw ParameterError("crop fraction must lie in [0, 1)");
  RgbImage out = quantized(img);
  const std::size_t w = img.width();
  const std::size_t h = img.height();
  const double side = std::sqrt(fraction);
  const auto rw = static_cast<std::size_t>(std::round(static_cast<double>(w) * side));
  const auto rh = static_cast<std::size_t>(std::round(static_cast<double>(h) * side));
  std::size_t x0 = 0;
  std::size_t y0 = 0;
  switch (anchor) {
    case CropAnchor::kTopLeft: break;
    case CropAnchor::kTopRight: x0 = w - rw; break;
    case CropAnchor::kBottomLeft: y0 = h - rh; break;
    case CropAnchor::kBottomRight: x0 = w - rw; y0 = h - rh; break;
    case CropAnchor::kCenter: x0 = (w - rw) / 2; y0 = (h - rh) / 2; break;
  }
  for (auto& p : out.planes) {
    for (std::size_t y = y0; y < y0 + rh; ++y) {
      for (std::size_t x = x0; x < x0 + rw; ++x) p.at(y, x) = 0.0;
    }
  }
  return out;
}

RgbImage salt_pepper_attack(const RgbImage& img, double density, std::uint64_t seed) {
  if (!(density >= 0.0 && density <= 1.0)) throw ParameterError("salt & pepper density must lie in [0, 1]");
  RgbImage out = quantized(img);
  const std::size_t n = img.width() * img.height();
  const auto count = static_cast<std::size_t>(std::llround(density * static_cast<double>(n)));
  std::vector<std::size_t> sites(n);
  std::iota(sites.begin(), sites.end(), std::size_t{0});
  SplitMix64 rng(seed);
  for (std::size_t k = 0; k < count; ++k) {
    std::swap(sites[k], sites[k + rng.below(n - k)]);
    const double value = (rng.next() >> 63) != 0 ? 255.0 : 0.0;
    for (auto& p : out.planes) p.samples()[sites[k]] = value;
  }
  return out;
}

RgbImage rotation_attack(const RgbImage& img, double degrees) {
  if (!std::isfinite(degrees)) throw ParameterError("rotation angle must be finite");
  const double theta = degrees * std::numbers::pi / 180.0;
  const double cs = std::cos(theta);
  const double sn = std::sin(theta);
  const double cx = (static_cast<double>(img.width()) - 1.0) / 2.0;
  const double cy = (static_cast<double>(img.height()) - 1.0) / 2.0;
  RgbImage out(img.width(), img.height());
  for (std::size_t y = 0; y < img.height(); ++y) {
    for (std::size_t x = 0; x < img.width(); ++x) {
      const double dx = static_cast<double>(x) - cx;
      const double dy = static_cast<double>(y) - cy;
      const double sx = cx + dx * cs - dy * sn;
      const double sy = cy + dx * sn + dy * cs;
      for (std::size_t c = 0; c < 3; ++c) out.planes[c].at(y, x) = sample_bilinear(img.planes[c], sx, sy);
    }
  }
  return quantized(std::move(out));
}

}  // namespace fuzzymark
