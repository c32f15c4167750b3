#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace fmr {

enum class Family { Harmonic, Polynomial };

std::string to_string(Family f);
Family parse_family(const std::string& s);

struct BasisSpec {
  Family family = Family::Harmonic;
  double alpha = 1.0;
  int n = 0;
  int m = 0;
  double p = 3.0;  // polynomial family only
  double q = 2.0;

  /// Throws ParamError on alpha <= 0 or on violated Jacobi constraints.
  void validate() const;
};

/// Throws ParamError unless alpha > 0, p - q > -1, q > 0 and p > 0.
void check_poly_params(double alpha, double p, double q);

/// Counts floating-point additions inside the radial table builders.
struct OpCounter {
  std::uint64_t additions = 0;
};

std::complex<double> angular(int m, double theta);

/// sqrt(alpha r^(alpha-2) / 2pi) exp(j 2 n pi r^alpha). r = 0 is only allowed
/// for alpha >= 2.
std::complex<double> radial_harmonic(double alpha, int n, double r);

/// Explicit-sum polynomial radial function, log-gamma coefficients. Limited to
/// n <= 20.
double radial_poly_direct(double alpha, double p, double q, int n, double r);
inline constexpr int kPolyDirectMaxOrder = 20;

/// Normalisation recursion initial values.
double poly_C0(double p, double q);
double poly_P0(double p, double q);

/// tables[n][i] = R_n(r[i]) for n = 0..n_max, built with the three-term
/// recursion on C_n * P_n.
std::vector<std::vector<double>> radial_poly_recursive(double alpha, double p, double q, int n_max,
                                                       std::span<const double> r,
                                                       OpCounter* counter = nullptr);

/// Same tables from the explicit sum, n_max <= 20. Used for validation and
/// operation counting.
std::vector<std::vector<double>> radial_poly_direct_table(double alpha, double p, double q, int n_max,
                                                          std::span<const double> r,
                                                          OpCounter* counter = nullptr);

/// Small-r behaviour R_n(r) ~ lead * r^(power). power is alpha/2 - 1 for the
/// harmonic family and alpha q / 2 - 1 for the polynomial one.
struct OriginBehaviour {
  double lead = 0.0;
  double power = 0.0;
};
OriginBehaviour radial_origin(const BasisSpec& spec, int n);

/// Radial zeros in (0,1), sorted. Harmonic: zeros of Re exp(j 2 n pi r^alpha).
/// Polynomial: sign changes of the polynomial factor, bisected to 1e-10.
std::vector<double> zero_locations(const BasisSpec& spec, int n);

/// Gauss-Legendre nodes and weights on [0,1].
struct Quadrature {
  std::vector<double> x;
  std::vector<double> w;
};
Quadrature gauss_legendre_unit(std::size_t points);

}  // namespace fmr
