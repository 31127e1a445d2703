#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "fuzzymark/error.hpp"
#include "fuzzymark/image_io.hpp"
#include "test_support.hpp"

using namespace fuzzymark;
using namespace fuzzymark::testing;

namespace {

// 1x1 RGB PNG holding (10, 20, 30), encoded by an independent tool.
const std::vector<std::uint8_t> kOnePixelPng = {
    0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a, 0x00, 0x00, 0x00, 0x0d, 0x49, 0x48,
    0x44, 0x52, 0x00, 0x00, 0x00, 0x01, 0x00, 0x00, 0x00, 0x01, 0x08, 0x02, 0x00, 0x00,
    0x00, 0x90, 0x77, 0x53, 0xde, 0x00, 0x00, 0x00, 0x0c, 0x49, 0x44, 0x41, 0x54, 0x78,
    0x9c, 0x63, 0xe0, 0x12, 0x91, 0x03, 0x00, 0x00, 0x68, 0x00, 0x3d, 0x54, 0x08, 0xa3,
    0xf7, 0x00, 0x00, 0x00, 0x00, 0x49, 0x45, 0x4e, 0x44, 0xae, 0x42, 0x60, 0x82};

// 2x2 grayscale PNG, every sample 77.
const std::vector<std::uint8_t> kGrayPng = {
    0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a, 0x00, 0x00, 0x00, 0x0d, 0x49, 0x48,
    0x44, 0x52, 0x00, 0x00, 0x00, 0x02, 0x00, 0x00, 0x00, 0x02, 0x08, 0x00, 0x00, 0x00,
    0x00, 0x57, 0xdd, 0x52, 0xf8, 0x00, 0x00, 0x00, 0x0e, 0x49, 0x44, 0x41, 0x54, 0x78,
    0x9c, 0x63, 0xf4, 0x65, 0x60, 0x62, 0x60, 0x00, 0x00, 0x01, 0x93, 0x00, 0x51, 0x97,
    0x4f, 0x9b, 0x8f, 0x00, 0x00, 0x00, 0x00, 0x49, 0x45, 0x4e, 0x44, 0xae, 0x42, 0x60,
    0x82};

RgbImage fixture_3x2() {
  RgbImage img(3, 2);
  double v = 0;
  for (auto& p : img.planes) {
    for (double& s : p.samples()) {
      s = v;
      v += 14;  // 18 samples, all within 0..255
    }
  }
  return img;
}

}  // namespace

TEST(ImageIo, LoadsOnePixelPng) {
  TempDir dir("io");
  write_bytes(dir / "one.png", kOnePixelPng);
  const RgbImage img = load_image(dir / "one.png");
  ASSERT_EQ(img.width(), 1u);
  ASSERT_EQ(img.height(), 1u);
  EXPECT_EQ(img.channel(Channel::kRed).at(0, 0), 10);
  EXPECT_EQ(img.channel(Channel::kGreen).at(0, 0), 20);
  EXPECT_EQ(extract_blue(img).at(0, 0), 30);
}

TEST(ImageIo, CorruptFileIsDecodeError) {
  TempDir dir("io");
  auto bytes = kOnePixelPng;
  bytes.resize(40);
  write_bytes(dir / "bad.png", bytes);
  EXPECT_THROW(load_image(dir / "bad.png"), DecodeError);
  write_bytes(dir / "junk.png", {1, 2, 3, 4, 5});
  EXPECT_THROW(load_image(dir / "junk.png"), DecodeError);
  EXPECT_THROW(load_image(dir / "missing.png"), IoError);
}

TEST(ImageIo, GrayscaleHostIsChannelErrorNamingLayout) {
  TempDir dir("io");
  write_bytes(dir / "gray.png", kGrayPng);
  try {
    load_image(dir / "gray.png");
    FAIL() << "expected ChannelError";
  } catch (const ChannelError& e) {
    EXPECT_NE(std::string(e.what()).find("grayscale"), std::string::npos);
  }
}

TEST(ImageIo, BmpRoundTripIsByteAndSampleExact) {
  TempDir dir("io");
  const RgbImage img = fixture_3x2();
  save_image(dir / "a.bmp", img);
  const RgbImage back = load_image(dir / "a.bmp");
  EXPECT_EQ(back, img);
  save_image(dir / "b.bmp", back);
  EXPECT_EQ(read_bytes(dir / "a.bmp"), read_bytes(dir / "b.bmp"));

  // Independent check of the on-disk layout: 54-byte header, bottom-up BGR
  // rows padded to 12 bytes.
  const auto bytes = read_bytes(dir / "a.bmp");
  ASSERT_EQ(bytes.size(), 54u + 2 * 12);
  const std::size_t bottom_row = 54;  // image row 1
  EXPECT_EQ(bytes[bottom_row + 0], img.channel(Channel::kBlue).at(1, 0));
  EXPECT_EQ(bytes[bottom_row + 1], img.channel(Channel::kGreen).at(1, 0));
  EXPECT_EQ(bytes[bottom_row + 2], img.channel(Channel::kRed).at(1, 0));
}

TEST(ImageIo, PngRoundTripIsSampleExact) {
  TempDir dir("io");
  std::mt19937_64 rng(3);
  const RgbImage img = random_image(17, 9, rng);
  save_image(dir / "r.png", img);
  EXPECT_EQ(load_image(dir / "r.png"), img);
}

TEST(ImageIo, SaveClampsAndRounds) {
  TempDir dir("io");
  RgbImage img(2, 1);
  img.channel(Channel::kRed).at(0, 0) = 300.0;
  img.channel(Channel::kRed).at(0, 1) = -4.2;
  img.channel(Channel::kGreen).at(0, 0) = 12.6;
  save_image(dir / "c.png", img);
  const RgbImage back = load_image(dir / "c.png");
  EXPECT_EQ(back.channel(Channel::kRed).at(0, 0), 255);
  EXPECT_EQ(back.channel(Channel::kRed).at(0, 1), 0);
  EXPECT_EQ(back.channel(Channel::kGreen).at(0, 0), 13);
}

TEST(ImageIo, UnsupportedOutputExtension) {
  TempDir dir("io");
  EXPECT_THROW(save_image(dir / "x.jpg", RgbImage(2, 2)), IoError);
}

TEST(PrepareHost, IdentityAtTargetSize) {
  std::mt19937_64 rng(1);
  const RgbImage img = random_image(512, 512, rng);
  EXPECT_EQ(prepare_host(img), img);
}

TEST(PrepareHost, ConstantStaysConstant) {
  const RgbImage img(1024, 1024, 93.0);
  const RgbImage out = prepare_host(img);
  ASSERT_EQ(out.width(), 512u);
  ASSERT_EQ(out.height(), 512u);
  for (const auto& p : out.planes) {
    for (double v : p.samples()) ASSERT_EQ(v, 93.0);
  }
}

TEST(PrepareHost, NonSquareResizes) {
  const RgbImage out = prepare_host(RgbImage(300, 451, 5.0));
  EXPECT_EQ(out.width(), 512u);
  EXPECT_EQ(out.height(), 512u);
}

TEST(PrepareHost, DegenerateInputRejected) {
  EXPECT_THROW(prepare_host(RgbImage(0, 0)), DimensionError);
  EXPECT_THROW(prepare_host(RgbImage(1, 5)), DimensionError);
}

TEST(ResizeBilinear, UpscaledColumnsPlaneHasEqualRows) {
  const Plane p(2, 2, std::vector<double>{0, 100, 0, 100});
  const Plane up = resize_bilinear(p, 4, 4);
  for (std::size_t r = 1; r < 4; ++r) {
    for (std::size_t c = 0; c < 4; ++c) EXPECT_EQ(up.at(r, c), up.at(0, c));
  }
  // Pixel-centre weights: source x = (c + 0.5) / 2 - 0.5 -> 0, 0.25, 0.75, 1.
  EXPECT_EQ(up.at(0, 0), 0);
  EXPECT_EQ(up.at(0, 1), 25);
  EXPECT_EQ(up.at(0, 2), 75);
  EXPECT_EQ(up.at(0, 3), 100);
}

TEST(BluePlane, ExtractIsACopy) {
  RgbImage img(1, 1);
  img.channel(Channel::kBlue).at(0, 0) = 30;
  Plane b = extract_blue(img);
  EXPECT_EQ(b.at(0, 0), 30);
  b.at(0, 0) = 99;
  EXPECT_EQ(img.channel(Channel::kBlue).at(0, 0), 30);
  EXPECT_EQ(extract_blue(RgbImage(4, 4)), Plane(4, 4, 0.0));
}

TEST(BluePlane, MeanMatchesDirectReduction) {
  std::mt19937_64 rng(11);
  const RgbImage img = random_image(31, 7, rng);
  const Plane b = extract_blue(img);
  double direct = 0;
  for (std::size_t r = 0; r < 7; ++r) {
    for (std::size_t c = 0; c < 31; ++c) direct += img.planes[2].at(r, c);
  }
  const double mean = std::accumulate(b.samples().begin(), b.samples().end(), 0.0) / b.size();
  EXPECT_DOUBLE_EQ(mean, direct / (31 * 7));
}

TEST(BluePlane, ReplaceRoundTripAndClamp) {
  std::mt19937_64 rng(5);
  const RgbImage img = random_image(8, 8, rng);
  EXPECT_EQ(replace_blue(img, extract_blue(img)), img);

  Plane p(8, 8, 300.0);
  p.at(0, 1) = -4.2;
  p.at(0, 2) = 7.5;
  const RgbImage out = replace_blue(img, p);
  EXPECT_EQ(out.channel(Channel::kBlue).at(0, 0), 255);
  EXPECT_EQ(out.channel(Channel::kBlue).at(0, 1), 0);
  EXPECT_EQ(out.channel(Channel::kBlue).at(0, 2), 8);
  EXPECT_EQ(out.channel(Channel::kRed), img.channel(Channel::kRed));
  EXPECT_EQ(out.channel(Channel::kGreen), img.channel(Channel::kGreen));
  EXPECT_THROW(replace_blue(img, Plane(4, 8)), DimensionError);
}

TEST(Watermark, AllWhiteAndAllBlack) {
  TempDir dir("wm");
  save_gray(dir / "w.png", Plane(64, 64, 255.0));
  save_gray(dir / "b.bmp", Plane(64, 64, 0.0));
  const auto white = load_watermark(dir / "w.png");
  const auto black = load_watermark(dir / "b.bmp");
  ASSERT_EQ(white.size(), 4096u);
  for (std::size_t i = 0; i < 4096; ++i) {
    ASSERT_EQ(white[i], 1);
    ASSERT_EQ(black[i], -1);
  }
}

TEST(Watermark, CheckerboardSumsToZero) {
  TempDir dir("wm");
  Plane checker(64, 64);
  for (std::size_t r = 0; r < 64; ++r) {
    for (std::size_t c = 0; c < 64; ++c) checker.at(r, c) = (r + c) % 2 == 0 ? 255 : 0;
  }
  save_gray(dir / "c.png", checker);
  const auto bits = load_watermark(dir / "c.png");
  int sum = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    sum += bits[i];
    EXPECT_EQ(bits[i], ((i / 64) + (i % 64)) % 2 == 0 ? 1 : -1);
  }
  EXPECT_EQ(sum, 0);
}

TEST(Watermark, ThresholdIs128AndRgbIsAveraged) {
  TempDir dir("wm");
  RgbImage img(64, 64, 0.0);
  img.channel(Channel::kRed).at(0, 0) = 255;
  img.channel(Channel::kGreen).at(0, 0) = 129;
  img.channel(Channel::kBlue).at(0, 0) = 0;    // mean 128 -> +1
  img.channel(Channel::kRed).at(0, 1) = 127;
  img.channel(Channel::kGreen).at(0, 1) = 127;
  img.channel(Channel::kBlue).at(0, 1) = 127;  // mean 127 -> -1
  save_image(dir / "rgb.png", img);
  const auto bits = load_watermark(dir / "rgb.png");
  EXPECT_EQ(bits[0], 1);
  EXPECT_EQ(bits[1], -1);
}

TEST(Watermark, PgmAccepted) {
  TempDir dir("wm");
  std::string header = "P5\n# comment\n64 64\n255\n";
  std::vector<std::uint8_t> bytes(header.begin(), header.end());
  for (int i = 0; i < 4096; ++i) bytes.push_back(i < 2048 ? 200 : 10);
  write_bytes(dir / "m.pgm", bytes);
  const auto bits = load_watermark(dir / "m.pgm");
  EXPECT_EQ(bits[0], 1);
  EXPECT_EQ(bits[4095], -1);
}

TEST(Watermark, WrongSizeIsDimensionError) {
  TempDir dir("wm");
  save_gray(dir / "small.png", Plane(32, 32, 255.0));
  EXPECT_THROW(load_watermark(dir / "small.png"), DimensionError);
}

TEST(Watermark, InvariantsOnConstruction) {
  EXPECT_THROW(WatermarkBits(std::vector<int>(10, 1)), DimensionError);
  std::vector<int> bad(4096, 1);
  bad[7] = 0;
  EXPECT_THROW(WatermarkBits(std::move(bad)), ParameterError);
}

TEST(Watermark, BundledMarkIsBalanced) {
  const auto bits = load_watermark(asset("watermark.png"));
  int ones = 0;
  for (int b : bits.bits()) ones += b > 0;
  EXPECT_NEAR(ones / 4096.0, 0.5, 0.02);
}
