#pragma once

#include "fmr/basis.hpp"
#include "fmr/image.hpp"

#include <complex>
#include <map>
#include <utility>
#include <vector>

namespace fmr {

struct SeriesTruncation {
  int k_max = 20;
  int s_max = 64;
  double tail_tol = 1e-3;
};

/// The series integrates the basis over the whole line through each pixel,
/// i.e. over negative r as well. Folding theta -> theta + pi gives
/// series = (1 + (-1)^(m+e)) * moment, e being the (fixed) parity of the
/// radial exponents. So half the m values come out as twice the moment and
/// the other half vanish identically.
struct ExplicitResult {
  /// Moment in the r >= 0 convention of the implicit path; 0 when !determined.
  std::complex<double> value;
  /// The truncated series exactly as summed.
  std::complex<double> series;
  /// False when m has the parity the series cannot see.
  bool determined = true;
  /// Bound on the dropped part of the series: 2 pi sum|f| dA times the tail of
  /// the coefficient magnitudes.
  double tail_estimate = 0.0;
  /// Distinct (xi1, xi2) geometric-moment exponents consumed, sorted.
  std::vector<std::pair<int, int>> exponents;
};

/// Riemann sum of f x^xi1 y^xi2 over disk pixels in unit-disk coordinates.
/// Non-integer exponents are rejected unless nonneg_support is set.
double geometric_moment(const GrayImage& img, const DiskDomain& domain, double xi1, double xi2,
                        bool nonneg_support = false);

/// Integral over [0,2pi) of exp(-j m theta) cos^xi1 sin^xi2, 2048-point rule.
std::complex<double> theta_integral(int m, double xi1, double xi2);

std::complex<double> w1(double alpha, int n, int k);
double w2(double alpha, double p, double q, int n, int k);
double w3(double p, double q, int s);

/// Generalised binomial coefficient via log-gamma with sign tracking.
double gen_binomial(double x, int t);

/// Holds the separable geometric-moment table and per-m angular tables so
/// several coefficients of one image can share the work.
class ExplicitEvaluator {
 public:
  ExplicitEvaluator(const GrayImage& img, const DiskDomain& domain);

  double geometric(int a, int b);
  std::complex<double> theta(int m, int a, int b);

  ExplicitResult harmonic(double alpha, int n, int m, const SeriesTruncation& trunc);
  ExplicitResult polynomial(const BasisSpec& spec, int n, int m, const SeriesTruncation& trunc);

 private:
  void ensure_degree(int degree);

  std::vector<double> xs_, ys_;   // per-column x, per-row y
  std::vector<double> px_;        // masked pixels scaled by the pixel area
  std::size_t w_ = 0, h_ = 0;
  int degree_ = -1;
  std::vector<double> g_;         // g_[a * (degree_+1) + b]
  double mass_ = 0.0;             // sum |f| dA
  std::map<int, std::vector<std::complex<double>>> theta_;
  int theta_degree_ = -1;
};

ExplicitResult fmr_explicit_harmonic(const GrayImage& img, const DiskDomain& domain, double alpha, int n, int m,
                                     const SeriesTruncation& trunc = {});
ExplicitResult fmr_explicit_polynomial(const GrayImage& img, const DiskDomain& domain, const BasisSpec& spec,
                                       int n, int m, const SeriesTruncation& trunc = {});

}  // namespace fmr
