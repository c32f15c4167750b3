#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace fmr {

/// Grayscale raster with intensities in [0,1], stored row-major.
class GrayImage {
 public:
  static constexpr std::size_t kMinSide = 8;

  GrayImage() = default;
  /// Zero-filled image. Throws DimMismatch when a side is below kMinSide.
  GrayImage(std::size_t width, std::size_t height);
  /// Takes ownership of pixels; values are validated against [0,1].
  GrayImage(std::size_t width, std::size_t height, std::vector<double> pixels);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t size() const noexcept { return pixels_.size(); }
  bool empty() const noexcept { return pixels_.empty(); }

  double& at(std::size_t row, std::size_t col) { return pixels_[row * width_ + col]; }
  double at(std::size_t row, std::size_t col) const { return pixels_[row * width_ + col]; }

  std::span<double> pixels() noexcept { return pixels_; }
  std::span<const double> pixels() const noexcept { return pixels_; }

  bool operator==(const GrayImage&) const = default;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<double> pixels_;
};

/// Inscribed disk mapped to the unit disk. Pixel centre (col,row) maps to
/// x = (col - cx) / radius, y = (cy - row) / radius (y points up).
struct DiskDomain {
  double cx = 0.0;
  double cy = 0.0;
  double radius = 1.0;

  bool contains_pixel(std::size_t row, std::size_t col) const;
};

DiskDomain disk_mask(const GrayImage& img);

/// Bilinear interpolation at fractional pixel coordinates; samples outside
/// the raster read as 0.
double sample_bilinear(const GrayImage& img, double col, double row);

/// Copy of img with every pixel outside the inscribed disk set to 0.
GrayImage mask_to_disk(const GrayImage& img, const DiskDomain& domain);

/// PNG (8/16-bit, any colour type) or PGM (P2/P5). Colour is reduced by the
/// unweighted channel mean; intensities are scaled by the format maximum.
GrayImage load_gray(const std::filesystem::path& path);
/// Writes 8-bit PGM (P5) or PNG depending on the extension.
void save_gray(const GrayImage& img, const std::filesystem::path& path);

/// Unclamped N(0, variance) field; the generator is seeded with `seed`.
std::vector<double> gaussian_noise_field(std::size_t count, double variance, std::uint64_t seed);

/// clamp(img + N(0, variance), [0,1]).
GrayImage add_gaussian_noise(const GrayImage& img, double variance, std::uint64_t seed);

/// Counter-clockwise rotation about the image centre. Multiples of 90 degrees
/// on square images are exact index permutations; everything else is
/// bilinear with zero fill.
GrayImage rotate(const GrayImage& img, double angle_deg);

}  // namespace fmr
