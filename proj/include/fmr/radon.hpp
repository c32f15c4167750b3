#pragma once

#include "fmr/image.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace fmr {

/// Radon coefficients on a normalized polar grid. Rows are radial samples,
/// columns are angles over the full turn; values are line integrals in pixel
/// units of the source image.
struct Sinogram {
  std::size_t U = 0;
  std::size_t V = 0;
  std::vector<double> r;      // size U, strictly increasing in [0,1]
  std::vector<double> theta;  // size V, theta_v = 2*pi*v/V
  std::vector<double> values; // row-major [u*V + v]
  /// 0 for the cell-centred uniform grid, otherwise the alpha of the warped
  /// grid r_u = (u/U)^(1/alpha).
  double warp_alpha = 0.0;
  /// Disk radius in pixels of the source image.
  double radius = 1.0;

  double& at(std::size_t u, std::size_t v) { return values[u * V + v]; }
  double at(std::size_t u, std::size_t v) const { return values[u * V + v]; }

  bool warped() const noexcept { return warp_alpha > 0.0; }
  /// Native quadrature coordinate of row u: r for uniform grids, r^alpha for warped ones.
  double gamma(std::size_t u) const;
};

/// r_u = (u + 0.5) / U.
std::vector<double> uniform_radii(std::size_t U);
/// r_u = (u / U)^(1/alpha), u = 0..U-1.
std::vector<double> warped_radii(std::size_t U, double alpha);

/// Zero sinogram on the requested grid. warp_alpha = 0 selects the uniform grid.
Sinogram make_sinogram(std::size_t U, std::size_t V, double warp_alpha, double radius);

/// Line integral along x cos(theta) + y sin(theta) = rho (pixel units, y up),
/// sampled at unit steps with bilinear taps. Pixels outside the disk are
/// ignored.
double line_integral(const GrayImage& masked, const DiskDomain& domain, double rho, double theta,
                     std::size_t* samples_in_disk = nullptr);

Sinogram radon_forward(const GrayImage& img, const DiskDomain& domain, std::size_t U, std::size_t V);
/// Same transform sampled on the warped radial grid for the given alpha.
Sinogram radon_forward_warped(const GrayImage& img, const DiskDomain& domain, std::size_t U,
                              std::size_t V, double alpha);

/// Optional apodisation of the ramp filter. None is the plain ramp (Ram-Lak).
enum class RampWindow { None, SheppLogan, Cosine, Hann };
std::string to_string(RampWindow w);
RampWindow parse_ramp_window(const std::string& s);

/// Filtered back-projection onto an out_size x out_size image whose inscribed
/// disk is the sinogram's unit disk. The ramp is band-limited at the Nyquist
/// rate of the output pixel grid. Output is clamped to [0,1] and zero outside
/// the disk.
GrayImage radon_inverse(const Sinogram& sino, std::size_t out_size, RampWindow window = RampWindow::None);

/// mu^2 (c - 1) / sigma^2.
double snr_increment_theory(double mu, double variance, double c);

struct SnrGainReport {
  double image_snr = 0.0;                 // mean^2 / noise variance over disk pixels
  double image_mean = 0.0;
  double noise_variance = 0.0;            // empirical, of the additive field
  std::vector<double> c;                  // mean in-disk samples per line, per angle
  std::vector<double> measured_increment; // per angle
  std::vector<double> theory_increment;   // per angle, from the empirical mean/variance
  double mean_measured() const;
  double mean_theory() const;
};

/// Report values saturate at this cap when the variance tends to 0.
inline constexpr double kSnrCap = 1e12;

SnrGainReport snr_gain(const GrayImage& img, double variance, std::uint64_t seed, std::size_t V);

void save_sinogram(const Sinogram& sino, const std::filesystem::path& path);
Sinogram load_sinogram(const std::filesystem::path& path);
void save_sinogram_csv(const Sinogram& sino, const std::filesystem::path& path);

}  // namespace fmr
