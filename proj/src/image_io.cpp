#include "fuzzymark/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <memory>
#include <sstream>
#include <string>

#include "fuzzymark/error.hpp"

namespace fuzzymark {
namespace {

// Interleaved 8-bit pixels straight out of a decoder.
struct RawImage {
  std::size_t width = 0;
  std::size_t height = 0;
  std::size_t channels = 0;
  std::string layout;
  std::vector<std::uint8_t> data;
};

std::string lower_ext(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext;
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

std::uint8_t to_byte(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::round(v), 0.0, 255.0));
}

// ---- PNG -----------------------------------------------------------------

struct PngReader {
  const std::vector<std::uint8_t>* bytes;
  std::size_t offset = 8;
};

void png_read_bytes(png_structp png, png_bytep out, png_size_t n) {
  auto* reader = static_cast<PngReader*>(png_get_io_ptr(png));
  if (reader->offset + n > reader->bytes->size()) png_error(png, "truncated PNG stream");
  std::memcpy(out, reader->bytes->data() + reader->offset, n);
  reader->offset += n;
}

[[noreturn]] void png_fail(png_structp png, png_const_charp msg) {
  throw DecodeError(std::string("PNG decode failed: ") + msg);
  png_longjmp(png, 1);  // unreachable
}

void png_warn(png_structp, png_const_charp) {}

RawImage decode_png(const std::vector<std::uint8_t>& bytes, const std::string& name) {
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, png_fail, png_warn);
  if (!png) throw DecodeError("libpng init failed");
  png_infop info = png_create_info_struct(png);
  struct Cleanup {
    png_structp* p;
    png_infop* i;
    ~Cleanup() { png_destroy_read_struct(p, i, nullptr); }
  } cleanup{&png, &info};

  PngReader reader{&bytes};
  png_set_read_fn(png, &reader, png_read_bytes);
  png_set_sig_bytes(png, 8);

  RawImage raw;
  try {
    png_read_info(png, info);
    const png_byte color = png_get_color_type(png, info);
    const png_byte depth = png_get_bit_depth(png, info);
    if (depth == 16) throw ChannelError(name + ": 16-bit PNG is not supported");
    switch (color) {
      case PNG_COLOR_TYPE_RGB: raw.layout = "RGB"; raw.channels = 3; break;
      case PNG_COLOR_TYPE_PALETTE:
        raw.layout = "palette";
        raw.channels = 3;
        png_set_palette_to_rgb(png);
        if (png_get_valid(png, info, PNG_INFO_tRNS)) {
          throw ChannelError(name + ": palette PNG with transparency (RGBA) is not supported");
        }
        break;
      case PNG_COLOR_TYPE_GRAY:
        raw.layout = "grayscale";
        raw.channels = 1;
        if (depth < 8) png_set_expand_gray_1_2_4_to_8(png);
        break;
      case PNG_COLOR_TYPE_GRAY_ALPHA: raw.layout = "grayscale+alpha"; raw.channels = 2; break;
      case PNG_COLOR_TYPE_RGB_ALPHA: raw.layout = "RGBA"; raw.channels = 4; break;
      default: throw DecodeError(name + ": unknown PNG colour type");
    }
    png_read_update_info(png, info);
    raw.width = png_get_image_width(png, info);
    raw.height = png_get_image_height(png, info);
    if (png_get_rowbytes(png, info) != raw.width * raw.channels) {
      throw DecodeError(name + ": unexpected PNG row layout");
    }
    raw.data.resize(raw.width * raw.height * raw.channels);
    std::vector<png_bytep> rows(raw.height);
    for (std::size_t y = 0; y < raw.height; ++y) rows[y] = raw.data.data() + y * raw.width * raw.channels;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
  } catch (const DecodeError& e) {
    throw DecodeError(name + ": " + e.what());
  }
  return raw;
}

void png_write_bytes(png_structp png, png_bytep data, png_size_t n) {
  auto* out = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(png));
  out->insert(out->end(), data, data + n);
}

void png_flush_noop(png_structp) {}

std::vector<std::uint8_t> encode_png(std::size_t width, std::size_t height, std::size_t channels,
                                     const std::vector<std::uint8_t>& data) {
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, png_fail, png_warn);
  if (!png) throw IoError("libpng init failed");
  png_infop info = png_create_info_struct(png);
  struct Cleanup {
    png_structp* p;
    png_infop* i;
    ~Cleanup() { png_destroy_write_struct(p, i); }
  } cleanup{&png, &info};

  std::vector<std::uint8_t> out;
  png_set_write_fn(png, &out, png_write_bytes, png_flush_noop);
  png_set_IHDR(png, info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height), 8,
               channels == 3 ? PNG_COLOR_TYPE_RGB : PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (std::size_t y = 0; y < height; ++y) {
    png_write_row(png, const_cast<png_bytep>(data.data() + y * width * channels));
  }
  png_write_end(png, nullptr);
  return out;
}

// ---- BMP -----------------------------------------------------------------

std::uint32_t le32(const std::vector<std::uint8_t>& b, std::size_t at) {
  return static_cast<std::uint32_t>(b[at]) | (static_cast<std::uint32_t>(b[at + 1]) << 8) |
         (static_cast<std::uint32_t>(b[at + 2]) << 16) | (static_cast<std::uint32_t>(b[at + 3]) << 24);
}

std::uint16_t le16(const std::vector<std::uint8_t>& b, std::size_t at) {
  return static_cast<std::uint16_t>(b[at] | (b[at + 1] << 8));
}

void put32(std::vector<std::uint8_t>& b, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) b.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put16(std::vector<std::uint8_t>& b, std::uint16_t v) {
  b.push_back(static_cast<std::uint8_t>(v));
  b.push_back(static_cast<std::uint8_t>(v >> 8));
}

RawImage decode_bmp(const std::vector<std::uint8_t>& b, const std::string& name) {
  if (b.size() < 54) throw DecodeError(name + ": truncated BMP header");
  const std::uint32_t pixel_offset = le32(b, 10);
  const std::uint32_t header_size = le32(b, 14);
  if (header_size < 40) throw DecodeError(name + ": unsupported BMP header");
  const auto width = static_cast<std::int32_t>(le32(b, 18));
  const auto raw_height = static_cast<std::int32_t>(le32(b, 22));
  const std::uint16_t bpp = le16(b, 28);
  const std::uint32_t compression = le32(b, 30);
  if (compression != 0) throw DecodeError(name + ": compressed BMP is not supported");
  if (width <= 0 || raw_height == 0) throw DecodeError(name + ": invalid BMP dimensions");

  RawImage raw;
  raw.width = static_cast<std::size_t>(width);
  raw.height = static_cast<std::size_t>(raw_height < 0 ? -raw_height : raw_height);
  const bool bottom_up = raw_height > 0;

  std::vector<std::array<std::uint8_t, 3>> palette;
  if (bpp == 24) {
    raw.layout = "RGB";
    raw.channels = 3;
  } else if (bpp == 8) {
    std::uint32_t colors = le32(b, 46);
    if (colors == 0) colors = 256;
    const std::size_t table = 14 + header_size;
    if (table + colors * 4 > b.size()) throw DecodeError(name + ": truncated BMP palette");
    bool gray = true;
    for (std::uint32_t i = 0; i < colors; ++i) {
      const std::size_t at = table + i * 4;
      palette.push_back({b[at + 2], b[at + 1], b[at]});
      gray = gray && b[at] == b[at + 1] && b[at + 1] == b[at + 2];
    }
    raw.layout = gray ? "grayscale" : "palette";
    raw.channels = gray ? 1 : 3;
  } else if (bpp == 32) {
    raw.layout = "RGBA";
    raw.channels = 4;
  } else {
    throw ChannelError(name + ": " + std::to_string(bpp) + "-bit BMP is not supported");
  }

  const std::size_t stride = ((raw.width * bpp / 8) + 3) & ~std::size_t{3};
  if (pixel_offset + stride * raw.height > b.size()) throw DecodeError(name + ": truncated BMP pixels");
  raw.data.resize(raw.width * raw.height * raw.channels);
  for (std::size_t y = 0; y < raw.height; ++y) {
    const std::size_t src_row = bottom_up ? raw.height - 1 - y : y;
    const std::uint8_t* row = b.data() + pixel_offset + src_row * stride;
    for (std::size_t x = 0; x < raw.width; ++x) {
      std::uint8_t* dst = raw.data.data() + (y * raw.width + x) * raw.channels;
      if (bpp == 24 || bpp == 32) {
        const std::uint8_t* px = row + x * (bpp / 8);
        dst[0] = px[2];
        dst[1] = px[1];
        dst[2] = px[0];
        if (bpp == 32) dst[3] = px[3];
      } else {
        const std::uint8_t idx = row[x];
        if (idx >= palette.size()) throw DecodeError(name + ": BMP palette index out of range");
        if (raw.channels == 1) {
          dst[0] = palette[idx][0];
        } else {
          std::copy(palette[idx].begin(), palette[idx].end(), dst);
        }
      }
    }
  }
  return raw;
}

std::vector<std::uint8_t> encode_bmp(std::size_t width, std::size_t height,
                                     const std::vector<std::uint8_t>& rgb) {
  const std::size_t stride = (width * 3 + 3) & ~std::size_t{3};
  const std::size_t image_size = stride * height;
  std::vector<std::uint8_t> b;
  b.reserve(54 + image_size);
  b.push_back('B');
  b.push_back('M');
  put32(b, static_cast<std::uint32_t>(54 + image_size));
  put32(b, 0);
  put32(b, 54);
  put32(b, 40);
  put32(b, static_cast<std::uint32_t>(width));
  put32(b, static_cast<std::uint32_t>(height));
  put16(b, 1);
  put16(b, 24);
  put32(b, 0);
  put32(b, static_cast<std::uint32_t>(image_size));
  put32(b, 2835);  // 72 dpi
  put32(b, 2835);
  put32(b, 0);
  put32(b, 0);
  for (std::size_t y = height; y-- > 0;) {
    for (std::size_t x = 0; x < width; ++x) {
      const std::uint8_t* px = rgb.data() + (y * width + x) * 3;
      b.push_back(px[2]);
      b.push_back(px[1]);
      b.push_back(px[0]);
    }
    for (std::size_t pad = width * 3; pad < stride; ++pad) b.push_back(0);
  }
  return b;
}

// ---- PGM -----------------------------------------------------------------

RawImage decode_pgm(const std::vector<std::uint8_t>& b, const std::string& name) {
  std::size_t pos = 2;
  auto next_token = [&]() -> std::string {
    while (pos < b.size()) {
      if (b[pos] == '#') {
        while (pos < b.size() && b[pos] != '\n') ++pos;
      } else if (std::isspace(b[pos])) {
        ++pos;
      } else {
        break;
      }
    }
    std::string tok;
    while (pos < b.size() && !std::isspace(b[pos])) tok.push_back(static_cast<char>(b[pos++]));
    if (tok.empty()) throw DecodeError(name + ": truncated PGM header");
    return tok;
  };
  const bool ascii = b[1] == '2';
  RawImage raw;
  raw.layout = "grayscale";
  raw.channels = 1;
  int maxval = 0;
  try {
    raw.width = std::stoul(next_token());
    raw.height = std::stoul(next_token());
    maxval = std::stoi(next_token());
  } catch (const std::logic_error&) {
    throw DecodeError(name + ": malformed PGM header");
  }
  if (maxval <= 0 || maxval > 255) throw ChannelError(name + ": only 8-bit PGM is supported");
  raw.data.resize(raw.width * raw.height);
  if (ascii) {
    for (auto& v : raw.data) {
      const int value = std::stoi(next_token());
      v = static_cast<std::uint8_t>(std::clamp(value * 255 / maxval, 0, 255));
    }
  } else {
    ++pos;  // single whitespace after maxval
    if (pos + raw.data.size() > b.size()) throw DecodeError(name + ": truncated PGM pixels");
    for (std::size_t i = 0; i < raw.data.size(); ++i) {
      raw.data[i] = static_cast<std::uint8_t>(b[pos + i] * 255 / maxval);
    }
  }
  return raw;
}

RawImage decode_any(const std::filesystem::path& path) {
  const std::vector<std::uint8_t> bytes = read_file(path);
  const std::string name = path.string();
  static constexpr std::uint8_t kPngSig[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1A, '\n'};
  RawImage raw;
  if (bytes.size() >= 8 && std::equal(kPngSig, kPngSig + 8, bytes.begin())) {
    raw = decode_png(bytes, name);
  } else if (bytes.size() >= 2 && bytes[0] == 'B' && bytes[1] == 'M') {
    raw = decode_bmp(bytes, name);
  } else if (bytes.size() >= 2 && bytes[0] == 'P' && (bytes[1] == '5' || bytes[1] == '2')) {
    raw = decode_pgm(bytes, name);
  } else {
    throw DecodeError(name + ": not a PNG, BMP or PGM file");
  }
  if (raw.width == 0 || raw.height == 0) throw DecodeError(name + ": empty image");
  return raw;
}

std::vector<std::uint8_t> interleave(const RgbImage& img) {
  std::vector<std::uint8_t> out(img.width() * img.height() * 3);
  for (std::size_t i = 0; i < img.width() * img.height(); ++i) {
    for (std::size_t c = 0; c < 3; ++c) out[i * 3 + c] = to_byte(img.planes[c].samples()[i]);
  }
  return out;
}

void write_encoded(const std::filesystem::path& path, std::size_t width, std::size_t height,
                   std::size_t channels, const std::vector<std::uint8_t>& data) {
  const std::string ext = lower_ext(path);
  if (ext == ".png") {
    write_file(path, encode_png(width, height, channels, data));
  } else if (ext == ".bmp") {
    if (channels == 3) {
      write_file(path, encode_bmp(width, height, data));
    } else {
      std::vector<std::uint8_t> rgb;
      rgb.reserve(data.size() * 3);
      for (std::uint8_t v : data) rgb.insert(rgb.end(), {v, v, v});
      write_file(path, encode_bmp(width, height, rgb));
    }
  } else {
    throw IoError(path.string() + ": unsupported output extension (use .png or .bmp)");
  }
}

}  // namespace

WatermarkBits::WatermarkBits(std::vector<int> bits) : bits_(std::move(bits)) {
  if (bits_.size() != kMarkBits) {
    throw DimensionError("watermark must hold " + std::to_string(kMarkBits) + " bits, got " +
                         std::to_string(bits_.size()));
  }
  if (!std::all_of(bits_.begin(), bits_.end(), [](int b) { return b == 1 || b == -1; })) {
    throw ParameterError("watermark bits must be -1 or +1");
  }
}

std::vector<double> WatermarkBits::as_binary() const {
  std::vector<double> out(bits_.size());
  std::transform(bits_.begin(), bits_.end(), out.begin(), [](int b) { return b > 0 ? 1.0 : 0.0; });
  return out;
}

RgbImage load_image(const std::filesystem::path& path) {
  const RawImage raw = decode_any(path);
  if (raw.channels != 3) {
    throw ChannelError(path.string() + ": expected an RGB image, found " + raw.layout);
  }
  RgbImage img(raw.width, raw.height);
  for (std::size_t i = 0; i < raw.width * raw.height; ++i) {
    for (std::size_t c = 0; c < 3; ++c) img.planes[c].samples()[i] = raw.data[i * 3 + c];
  }
  return img;
}

void save_image(const std::filesystem::path& path, const RgbImage& img) {
  write_encoded(path, img.width(), img.height(), 3, interleave(img));
}

void save_gray(const std::filesystem::path& path, const Plane& plane) {
  std::vector<std::uint8_t> data(plane.size());
  std::transform(plane.samples().begin(), plane.samples().end(), data.begin(), to_byte);
  write_encoded(path, plane.width(), plane.height(), 1, data);
}

Plane resize_bilinear(const Plane& src, std::size_t width, std::size_t height) {
  if (src.empty() || width == 0 || height == 0) throw DimensionError("cannot resize an empty plane");
  Plane out(width, height);
  const double sx = static_cast<double>(src.width()) / static_cast<double>(width);
  const double sy = static_cast<double>(src.height()) / static_cast<double>(height);
  const double max_x = static_cast<double>(src.width() - 1);
  const double max_y = static_cast<double>(src.height() - 1);
  for (std::size_t y = 0; y < height; ++y) {
    const double fy = std::clamp((static_cast<double>(y) + 0.5) * sy - 0.5, 0.0, max_y);
    const auto y0 = static_cast<std::size_t>(fy);
    const std::size_t y1 = std::min(y0 + 1, src.height() - 1);
    const double wy = fy - static_cast<double>(y0);
    for (std::size_t x = 0; x < width; ++x) {
      const double fx = std::clamp((static_cast<double>(x) + 0.5) * sx - 0.5, 0.0, max_x);
      const auto x0 = static_cast<std::size_t>(fx);
      const std::size_t x1 = std::min(x0 + 1, src.width() - 1);
      const double wx = fx - static_cast<double>(x0);
      const double top = src.at(y0, x0) * (1.0 - wx) + src.at(y0, x1) * wx;
      const double bottom = src.at(y1, x0) * (1.0 - wx) + src.at(y1, x1) * wx;
      out.at(y, x) = std::round(top * (1.0 - wy) + bottom * wy);
    }
  }
  return out;
}

RgbImage prepare_host(const RgbImage& img) {
  if (img.width() < 2 || img.height() < 2) {
    throw DimensionError("host image must be at least 2x2, got " + std::to_string(img.width()) +
                         "x" + std::to_string(img.height()));
  }
  if (img.width() == kHostSize && img.height() == kHostSize) return img;
  RgbImage out;
  for (std::size_t c = 0; c < 3; ++c) out.planes[c] = resize_bilinear(img.planes[c], kHostSize, kHostSize);
  return out;
}

Plane extract_blue(const RgbImage& img) { return img.channel(Channel::kBlue); }

RgbImage replace_blue(const RgbImage& img, const Plane& blue) {
  if (!blue.same_shape(img.channel(Channel::kBlue))) {
    throw DimensionError("blue plane is " + std::to_string(blue.width()) + "x" +
                         std::to_string(blue.height()) + " but image is " +
                         std::to_string(img.width()) + "x" + std::to_string(img.height()));
  }
  RgbImage out = img;
  auto dst = out.channel(Channel::kBlue).samples();
  auto src = blue.samples();
  std::transform(src.begin(), src.end(), dst.begin(),
                 [](double v) { return std::clamp(std::round(v), 0.0, 255.0); });
  return out;
}

WatermarkBits binarize_watermark(const Plane& gray) {
  if (gray.width() != kMarkSide || gray.height() != kMarkSide) {
    throw DimensionError("watermark must be 64x64, got " + std::to_string(gray.width()) + "x" +
                         std::to_string(gray.height()));
  }
  std::vector<int> bits(kMarkBits);
  std::transform(gray.samples().begin(), gray.samples().end(), bits.begin(),
                 [](double g) { return g >= 128.0 ? 1 : -1; });
  return WatermarkBits(std::move(bits));
}

WatermarkBits load_watermark(const std::filesystem::path& path) {
  const RawImage raw = decode_any(path);
  if (raw.width != kMarkSide || raw.height != kMarkSide) {
    throw DimensionError(path.string() + ": watermark must be 64x64, got " +
                         std::to_string(raw.width) + "x" + std::to_string(raw.height));
  }
  if (raw.channels != 1 && raw.channels != 3) {
    throw ChannelError(path.string() + ": watermark must be grayscale or RGB, found " + raw.layout);
  }
  Plane gray(raw.width, raw.height);
  for (std::size_t i = 0; i < gray.size(); ++i) {
    if (raw.channels == 1) {
      gray.samples()[i] = raw.data[i];
    } else {
      const double sum = raw.data[i * 3] + raw.data[i * 3 + 1] + raw.data[i * 3 + 2];
      gray.samples()[i] = sum / 3.0;
    }
  }
  return binarize_watermark(gray);
}

Plane watermark_to_plane(const WatermarkBits& bits) {
  Plane out(kMarkSide, kMarkSide);
  for (std::size_t i = 0; i < bits.size(); ++i) out.samples()[i] = bits[i] > 0 ? 255.0 : 0.0;
  return out;
}

}  // namespace fuzzymark
