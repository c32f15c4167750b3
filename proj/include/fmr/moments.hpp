#pragma once

#include "fmr/basis.hpp"
#include "fmr/image.hpp"
#include "fmr/radon.hpp"

#include <complex>
#include <filesystem>
#include <iosfwd>
#include <utility>
#include <vector>

namespace fmr {

enum class DomainTag { Radon, Image };

/// Coefficients over S(K): m in [-K,K]; n in [-K,K] (harmonic) or [0,K]
/// (polynomial). Stored n-major.
struct MomentSet {
  BasisSpec spec;  // n and m are unused
  int K = 0;
  DomainTag tag = DomainTag::Radon;
  std::vector<std::complex<double>> coeffs;

  static MomentSet zeros(const BasisSpec& spec, int K, DomainTag tag);

  int n_min() const { return spec.family == Family::Harmonic ? -K : 0; }
  int n_max() const { return K; }
  std::size_t n_count() const { return static_cast<std::size_t>(n_max() - n_min() + 1); }
  std::size_t m_count() const { return static_cast<std::size_t>(2 * K + 1); }
  bool contains(int n, int m) const { return n >= n_min() && n <= n_max() && m >= -K && m <= K; }
  std::size_t index(int n, int m) const {
    return static_cast<std::size_t>(n - n_min()) * m_count() + static_cast<std::size_t>(m + K);
  }
  std::complex<double>& at(int n, int m) { return coeffs[index(n, m)]; }
  const std::complex<double>& at(int n, int m) const { return coeffs[index(n, m)]; }

  /// Throws IncompleteMomentSet when the coefficient count does not match S(K).
  void check_complete() const;
  double max_abs() const;
};

/// Real field on a polar grid over the unit disk, values[u*V+v]. The native
/// radial coordinate is gamma = r^warp (warp = 1 for uniform grids).
struct PolarField {
  std::size_t U = 0;
  std::size_t V = 0;
  std::vector<double> r;
  std::vector<double> gamma;
  double warp = 1.0;
  bool origin_node = false;  // gamma_0 == 0
  bool rim_zero = true;      // field vanishes at r = 1 (sinograms)
  std::vector<double> values;
};

/// Normalised line integrals (values / radius) on the sinogram grid.
PolarField field_from_sinogram(const Sinogram& sino);
/// Bilinear polar resampling of the disk-masked image on the uniform grid.
PolarField field_from_image(const GrayImage& img, const DiskDomain& domain, std::size_t U, std::size_t V);

/// Smallest multiple of 4 that is >= max(N, 4K).
std::size_t default_grid_size(std::size_t N, int K);
/// Grid for sampling a moment series before back-projection: at least 2N
/// views so the filtered back-projection is not angularly undersampled.
std::size_t reconstruction_grid_size(std::size_t N, int K);

/// Trapezoid quadrature of <F, V_nm> on the field's native grid.
/// Polynomial radial functions come from the explicit sum (n <= 20).
MomentSet fmr_direct(const Sinogram& sino, const BasisSpec& spec, int K);
/// FFT path. The sinogram must sit on the warped grid for alpha
/// with U == V == M >= 4K.
MomentSet fmr_harmonic_fft(const Sinogram& sino, double alpha, int K);
/// Polynomial moments with radial tables from the three-term recursion.
MomentSet fmr_polynomial(const Sinogram& sino, const BasisSpec& spec, int K, OpCounter* counter = nullptr);
/// Image-domain counterpart on a U x V polar resampling (U = V = 0 picks the default size).
MomentSet fm_image(const GrayImage& img, const DiskDomain& domain, const BasisSpec& spec, int K,
                   std::size_t U = 0, std::size_t V = 0);

/// Generic entry for both families on an arbitrary polar field.
enum class RadialSource { Direct, Recursive };
MomentSet moments_of_field(const PolarField& field, const BasisSpec& spec, int K, DomainTag tag,
                           RadialSource src);

/// One coefficient <F, V_nm> with spec.n and spec.m, same quadrature as moments_of_field.
std::complex<double> moment_single(const PolarField& field, const BasisSpec& spec);

/// Weighted L2 energy of the field, integral of |F|^2 r dr dtheta with the same quadrature.
double field_energy(const PolarField& field);

/// Evaluates sum M_nm V_nm on a uniform U x V grid, rescales to pixel units of
/// an out_size image and inverts it.
std::pair<Sinogram, GrayImage> reconstruct(const MomentSet& ms, std::size_t U, std::size_t V,
                                           std::size_t out_size, RampWindow window = RampWindow::None);
/// Image-domain series evaluated at pixel centres, clamped to [0,1].
GrayImage reconstruct_image(const MomentSet& ms, std::size_t out_size);

/// Versioned text format; coefficients below 1e-12 * max are written as zero.
void write_moments(const MomentSet& ms, std::ostream& out);
void save_moments(const MomentSet& ms, const std::filesystem::path& path);
MomentSet read_moments(std::istream& in);
MomentSet load_moments(const std::filesystem::path& path);

}  // namespace fmr
