#include "fmr/error.hpp"
#include "fmr/eval.hpp"
#include "fmr/image.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

namespace fs = std::filesystem;
using namespace fmr;

namespace {

fs::path temp_path(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "fmr_test_geometry";
  fs::create_directories(dir);
  return dir / name;
}

void write_pgm_p5(const fs::path& path, std::size_t w, std::size_t h, const std::vector<unsigned char>& px) {
  std::ofstream out(path, std::ios::binary);
  out << "P5\n" << w << " " << h << "\n255\n";
  out.write(reinterpret_cast<const char*>(px.data()), static_cast<std::streamsize>(px.size()));
}

GrayImage mid_gray(std::size_t n, double v = 0.5) {
  return GrayImage(n, n, std::vector<double>(n * n, v));
}

double rms_in_disk(const GrayImage& a, const GrayImage& b, double rfrac) {
  const auto d = disk_mask(a);
  double s = 0.0;
  std::size_t cnt = 0;
  for (std::size_t r = 0; r < a.height(); ++r)
    for (std::size_t c = 0; c < a.width(); ++c) {
      const double x = (c - d.cx) / d.radius, y = (d.cy - r) / d.radius;
      if (x * x + y * y > rfrac * rfrac) continue;
      const double e = a.at(r, c) - b.at(r, c);
      s += e * e;
      ++cnt;
    }
  return std::sqrt(s / cnt);
}

}  // namespace

TEST(LoadGray, WhitePgmIsOne) {
  const auto p = temp_path("white.pgm");
  write_pgm_p5(p, 16, 12, std::vector<unsigned char>(16 * 12, 255));
  const auto img = load_gray(p);
  EXPECT_EQ(img.width(), 16u);
  EXPECT_EQ(img.height(), 12u);
  for (double v : img.pixels()) EXPECT_EQ(v, 1.0);
}

TEST(LoadGray, BlackPgmIsZero) {
  const auto p = temp_path("black.pgm");
  write_pgm_p5(p, 8, 8, std::vector<unsigned char>(64, 0));
  const auto img = load_gray(p);
  for (double v : img.pixels()) EXPECT_EQ(v, 0.0);
}

// The four levels {0, 85, 170, 255} tiled over the smallest legal raster.
TEST(LoadGray, LinearRescale) {
  const auto p = temp_path("levels.pgm");
  std::vector<unsigned char> px(64);
  const unsigned char lv[4] = {0, 85, 170, 255};
  for (std::size_t i = 0; i < 64; ++i) px[i] = lv[i % 4];
  write_pgm_p5(p, 8, 8, px);
  const auto img = load_gray(p);
  for (std::size_t i = 0; i < 64; ++i) EXPECT_NEAR(img.pixels()[i], (i % 4) / 3.0, 1e-6);
}

TEST(LoadGray, AsciiPgm) {
  const auto p = temp_path("ascii.pgm");
  {
    std::ofstream out(p);
    out << "P2\n# comment\n8 8\n3\n";
    for (int i = 0; i < 64; ++i) out << (i % 4) << (i % 8 == 7 ? "\n" : " ");
  }
  const auto img = load_gray(p);
  EXPECT_NEAR(img.pixels()[2], 2.0 / 3.0, 1e-12);
}

TEST(LoadGray, PngRoundTrip) {
  auto img = synthetic_portrait(32, 0);
  const auto p = temp_path("portrait.png");
  save_gray(img, p);
  const auto back = load_gray(p);
  ASSERT_EQ(back.width(), 32u);
  for (std::size_t i = 0; i < img.size(); ++i) EXPECT_NEAR(back.pixels()[i], img.pixels()[i], 0.5 / 255 + 1e-9);
}

TEST(LoadGray, Errors) {
  try {
    load_gray(temp_path("missing.pgm"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnreadableFile);
  }
  const auto p = temp_path("junk.pgm");
  {
    std::ofstream out(p);
    out << "hello";
  }
  try {
    load_gray(p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnsupportedFormat);
  }
}

TEST(GrayImage, RejectsTinyAndOutOfRange) {
  EXPECT_THROW(GrayImage(4, 16), Error);
  EXPECT_THROW(GrayImage(8, 8, std::vector<double>(64, 1.5)), Error);
}

TEST(Noise, ZeroVarianceIsIdentity) {
  const auto img = synthetic_portrait(64, 1);
  EXPECT_EQ(add_gaussian_noise(img, 0.0, 3), img);
}

TEST(Noise, SampleVarianceBeforeClamping) {
  const std::size_t P = 256 * 256;
  const auto field = gaussian_noise_field(P, 0.1, 42);
  double m = 0.0, s = 0.0;
  for (double v : field) m += v;
  m /= P;
  for (double v : field) s += (v - m) * (v - m);
  s /= P - 1;
  EXPECT_NEAR(s, 0.1, 0.005);
  EXPECT_LT(std::abs(m), 3.0 * std::sqrt(0.1 / P));
}

TEST(Noise, Deterministic) {
  const auto img = mid_gray(64);
  EXPECT_EQ(add_gaussian_noise(img, 0.1, 9), add_gaussian_noise(img, 0.1, 9));
  EXPECT_NE(add_gaussian_noise(img, 0.1, 9), add_gaussian_noise(img, 0.1, 10));
}

TEST(Noise, ClampedToUnitRange) {
  const auto out = add_gaussian_noise(mid_gray(64), 0.3, 1);
  for (double v : out.pixels()) {
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
}

TEST(Noise, NegativeVariance) {
  try {
    add_gaussian_noise(mid_gray(16), -0.1, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NegativeVariance);
  }
}

TEST(Rotate, ZeroIsIdentity) {
  const auto img = synthetic_portrait(48, 0);
  EXPECT_EQ(rotate(img, 0.0), img);
  EXPECT_EQ(rotate(img, 360.0), img);
}

TEST(Rotate, NinetyThenTwoSeventy) {
  const auto img = synthetic_portrait(64, 1);
  EXPECT_EQ(rotate(rotate(img, 90.0), 270.0), img);
  EXPECT_EQ(rotate(rotate(img, 180.0), 180.0), img);
}

TEST(Rotate, NinetyIsCounterClockwise) {
  GrayImage img(8, 8);
  img.at(0, 7) = 1.0;  // top right
  const auto r = rotate(img, 90.0);
  EXPECT_EQ(r.at(0, 0), 1.0);  // top left
}

TEST(Rotate, TwoFortyFivesApproximateNinety) {
  const auto img = smooth_blob(128);
  const auto twice = rotate(rotate(img, 45.0), 45.0);
  EXPECT_LT(rms_in_disk(twice, rotate(img, 90.0), 0.95), 0.05);
}

TEST(Rotate, ForwardBackInsideDisk) {
  const auto img = smooth_blob(128);
  for (double a : {17.0, 33.0, 200.0}) EXPECT_LT(rms_in_disk(rotate(rotate(img, a), -a), img, 0.95), 0.05) << a;
}

TEST(DiskMask, Square) {
  const auto d = disk_mask(GrayImage(128, 128));
  EXPECT_DOUBLE_EQ(d.cx, 63.5);
  EXPECT_DOUBLE_EQ(d.cy, 63.5);
  EXPECT_DOUBLE_EQ(d.radius, 64.0);
}

TEST(DiskMask, Rectangle) {
  const auto d = disk_mask(GrayImage(100, 60));
  EXPECT_DOUBLE_EQ(d.radius, 30.0);
  EXPECT_DOUBLE_EQ(d.cx, 49.5);
  EXPECT_DOUBLE_EQ(d.cy, 29.5);
}

TEST(DiskMask, ContainedPixelsMapInsideUnitDisk) {
  const GrayImage img(40, 24);
  const auto d = disk_mask(img);
  std::size_t inside = 0;
  for (std::size_t r = 0; r < img.height(); ++r)
    for (std::size_t c = 0; c < img.width(); ++c)
      if (d.contains_pixel(r, c)) {
        const double x = (c - d.cx) / d.radius, y = (d.cy - r) / d.radius;
        EXPECT_LE(x * x + y * y, 1.0 + 1e-12);
        ++inside;
      }
  EXPECT_GT(inside, 0u);
  const auto masked = mask_to_disk(mid_gray(24, 1.0), disk_mask(mid_gray(24)));
  EXPECT_EQ(masked.at(0, 0), 0.0);
  EXPECT_EQ(masked.at(12, 12), 1.0);
}
