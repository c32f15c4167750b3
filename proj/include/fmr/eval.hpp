#pragma once

#include "fmr/image.hpp"
#include "fmr/invariants.hpp"
#include "fmr/moments.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace fmr {

/// Mean squared difference over the inscribed disk.
double mse_reconstruction_error(const GrayImage& a, const GrayImage& b);
/// 11x11 Gaussian window (sigma 1.5), C1 = 0.01^2, C2 = 0.03^2, averaged over
/// windows fully inside the image whose centre lies in the disk.
double ssim(const GrayImage& a, const GrayImage& b);
/// 10 log10(1 / MSE) over the whole image, capped at 99 dB.
double psnr(const GrayImage& a, const GrayImage& b);
inline constexpr double kPsnrCap = 99.0;

/// Bilinear resize used to standardise dataset images.
GrayImage resize(const GrayImage& img, std::size_t width, std::size_t height);

// Synthetic images -----------------------------------------------------------

GrayImage disk_indicator(std::size_t N);
/// Smooth Gaussian blob off-centre; useful for oracle comparisons.
GrayImage smooth_blob(std::size_t N);
/// Head-and-shoulders test picture. variant 0 and 1 give two distinct sitters.
GrayImage synthetic_portrait(std::size_t N, int variant);
/// count distinct smooth random images (shaded mid-tone backdrop, blobs, bars,
/// a ring) from seed.
std::vector<GrayImage> synthetic_suite(std::size_t count, std::size_t N, std::uint64_t seed);

struct NamedImage {
  std::string name;
  GrayImage image;
};
/// PNG/PGM files of a folder in name order, resized to side x side.
std::vector<NamedImage> load_dataset(const std::filesystem::path& folder, std::size_t side = 128);

// Methods --------------------------------------------------------------------

enum class Representation { FMR, FM };

struct Method {
  std::string name;
  Representation rep = Representation::FMR;
  Family family = Family::Harmonic;
  double alpha = 1.0;
  double p = 3.0;
  double q = 2.0;
  int K = 10;
  Weighting weighting = Weighting::None;
  std::size_t grid = 0;  // 0 = default_grid_size(N, K)

  BasisSpec spec() const;
};

/// Moments of img with the method's default path: FFT on a warped sinogram
/// for harmonic FMR, recursive tables on a uniform sinogram for polynomial
/// FMR, polar resampling for FM.
MomentSet method_moments(const GrayImage& img, const Method& method);
FeatureVector method_features(const GrayImage& img, const Method& method);

// Studies --------------------------------------------------------------------

struct HistogramReport {
  std::vector<std::string> names;
  std::vector<double> variances;
  std::vector<std::vector<double>> values;  // [image][variance]
  std::vector<double> within_spread;        // max - min per image
  double max_within = 0.0;
  double min_between = 0.0;                 // smallest gap between image means
};

HistogramReport run_histogram_study(const std::vector<NamedImage>& images, const std::vector<double>& variances,
                                    const Method& method, int n, int m, std::uint64_t seed);
void write_histogram_csv(const HistogramReport& rep, std::ostream& out);

struct ReconstructionRow {
  int K = 0;
  double msre_fm = 0.0, ssim_fm = 0.0;
  double msre_fmr = 0.0, ssim_fmr = 0.0;
};

/// Reconstructs the noisy image from FM and FMR of the given family at each K
/// and scores both against the clean image.
std::vector<ReconstructionRow> run_reconstruction_study(const GrayImage& img, double noise_var,
                                                        std::uint64_t seed, const Method& base,
                                                        const std::vector<int>& Ks);
void write_reconstruction_csv(const std::vector<ReconstructionRow>& rows, std::ostream& out);

struct BenchmarkConfig {
  std::vector<Method> methods;
  std::vector<double> variances{0.0, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3};
  std::vector<double> angles;  // degrees
  std::uint64_t seed = 1;

  void validate() const;
};

struct AccuracyTable {
  std::vector<std::string> methods;
  std::vector<double> variances;
  std::vector<std::vector<std::size_t>> correct;  // [method][variance]
  std::size_t trials_per_cell = 0;

  double percent(std::size_t method, std::size_t variance) const;
  double mean_percent(std::size_t method, const std::vector<double>& which) const;
};

/// Trains on the clean images (label = index) and classifies every
/// rotation + noise degradation.
AccuracyTable run_recognition_benchmark(const BenchmarkConfig& cfg, const std::vector<NamedImage>& images);
void write_accuracy_csv(const AccuracyTable& t, std::ostream& out);

/// Per-trial seed derived from the run seed and the trial coordinates.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c);

}  // namespace fmr
