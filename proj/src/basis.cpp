#include "fmr/basis.hpp"

#include "fmr/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace fmr {

namespace {
constexpr double kPi = std::numbers::pi;

double lfact(int k) { return std::lgamma(static_cast<double>(k) + 1.0); }
}  // namespace

std::string to_string(Family f) { return f == Family::Harmonic ? "harmonic" : "polynomial"; }

Family parse_family(const std::string& s) {
  if (s == "harmonic") return Family::Harmonic;
  if (s == "polynomial" || s == "poly") return Family::Polynomial;
  throw Error(ErrorKind::ParamError, "unknown family '" + s + "'");
}

void check_poly_params(double alpha, double p, double q) {
  if (!(alpha > 0.0)) throw Error(ErrorKind::ParamError, "alpha must be positive");
  if (!(q > 0.0)) throw Error(ErrorKind::ParamError, "polynomial family needs q > 0");
  if (!(p - q > -1.0)) throw Error(ErrorKind::ParamError, "polynomial family needs p - q > -1");
  if (!(p > 0.0)) throw Error(ErrorKind::ParamError, "polynomial family needs p > 0");
}

void BasisSpec::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw Error(ErrorKind::ParamError, "alpha must be positive");
  if (family == Family::Polynomial) {
    check_poly_params(alpha, p, q);
    if (n < 0) throw Error(ErrorKind::ParamError, "polynomial order n must be >= 0");
  }
}

std::complex<double> angular(int m, double theta) {
  return std::polar(1.0, static_cast<double>(m) * theta);
}

std::complex<double> radial_harmonic(double alpha, int n, double r) {
  if (!(alpha > 0.0)) throw Error(ErrorKind::ParamError, "alpha must be positive");
  if (r < 0.0 || r > 1.0) throw Error(ErrorKind::DomainError, "r outside [0,1]");
  if (r == 0.0) {
    if (alpha < 2.0) throw Error(ErrorKind::DomainError, "harmonic radial function unbounded at r=0 for alpha<2");
    return alpha == 2.0 ? std::sqrt(1.0 / kPi) : 0.0;
  }
  const double ra = std::pow(r, alpha);
  const double mag = std::sqrt(alpha * std::pow(r, alpha - 2.0) / (2.0 * kPi));
  // Reduce the phase argument before calling polar to keep large n accurate.
  const double turns = static_cast<double>(n) * ra;
  const double frac = turns - std::round(turns);
  return std::polar(mag, 2.0 * kPi * frac);
}

namespace {

// r^(alpha q/2 - 1) (1 - r^alpha)^((p-q)/2) * sqrt(alpha / 2pi): the part of
// R_n shared by every order.
double poly_weight(double alpha, double p, double q, double r) {
  if (r == 0.0) {
    const double e = alpha * q / 2.0 - 1.0;
    if (e < 0.0) return std::numeric_limits<double>::infinity();
    return e == 0.0 ? std::sqrt(alpha / (2.0 * kPi)) : 0.0;
  }
  const double x = std::pow(r, alpha);
  if (x >= 1.0 && p < q) return std::numeric_limits<double>::infinity();
  return std::sqrt(alpha / (2.0 * kPi)) * std::pow(r, alpha * q / 2.0 - 1.0) * std::pow(1.0 - x, (p - q) / 2.0);
}

// log of sqrt(n! Gamma(q+n) / (Gamma(p+n) Gamma(p-q+n+1))), i.e. log C_n.
double log_Cn(double p, double q, int n) {
  const double nd = static_cast<double>(n);
  return 0.5 * (lfact(n) + std::lgamma(q + nd) - std::lgamma(p + nd) - std::lgamma(p - q + nd + 1.0));
}

}  // namespace

double poly_C0(double p, double q) {
  check_poly_params(1.0, p, q);
  return std::exp(log_Cn(p, q, 0));
}

double poly_P0(double p, double q) {
  check_poly_params(1.0, p, q);
  return std::exp(std::lgamma(p) - std::lgamma(q));
}

double radial_poly_direct(double alpha, double p, double q, int n, double r) {
  check_poly_params(alpha, p, q);
  if (n < 0) throw Error(ErrorKind::ParamError, "polynomial order n must be >= 0");
  if (n > kPolyDirectMaxOrder) throw Error(ErrorKind::StabilityError, "direct polynomial evaluation limited to n <= 20");
  if (r < 0.0 || r > 1.0) throw Error(ErrorKind::DomainError, "r outside [0,1]");
  const double nd = static_cast<double>(n);
  // The alternating sum cancels by ~12 digits at n = 15 near r = 1, so it is
  // accumulated in quad precision with terms scaled by Gamma(q) n! / Gamma(p+n).
  using quad = __float128;
  const quad x = static_cast<quad>(std::pow(r, alpha));
  quad term = 1, xk = 1, sum = 1;
  for (int k = 0; k < n; ++k) {
    term *= -static_cast<quad>(p + nd + k) * static_cast<quad>(n - k) / (static_cast<quad>(k + 1) * static_cast<quad>(q + k));
    xk *= x;
    sum += term * xk;
  }
  const double lead = std::lgamma(p + nd) - lfact(n) - std::lgamma(q);
  const double w = poly_weight(alpha, p, q, r);
  return w * std::sqrt(p + 2.0 * nd) * std::exp(log_Cn(p, q, n) + lead) * static_cast<double>(sum);
}

std::vector<std::vector<double>> radial_poly_direct_table(double alpha, double p, double q, int n_max,
                                                          std::span<const double> r, OpCounter* counter) {
  check_poly_params(alpha, p, q);
  if (n_max > kPolyDirectMaxOrder) throw Error(ErrorKind::StabilityError, "direct polynomial evaluation limited to n <= 20");
  std::vector<std::vector<double>> out(static_cast<std::size_t>(std::max(n_max, -1) + 1),
                                       std::vector<double>(r.size()));
  for (int n = 0; n <= n_max; ++n) {
    for (std::size_t i = 0; i < r.size(); ++i) out[n][i] = radial_poly_direct(alpha, p, q, n, r[i]);
    if (counter) counter->additions += static_cast<std::uint64_t>(n) * r.size();
  }
  return out;
}

std::vector<std::vector<double>> radial_poly_recursive(double alpha, double p, double q, int n_max,
                                                       std::span<const double> r, OpCounter* counter) {
  check_poly_params(alpha, p, q);
  if (n_max < 0) return {};
  const std::size_t G = r.size();
  // Q_n = C_n * P_n; rho_n = C_n / C_{n-1}.
  std::vector<double> rho(static_cast<std::size_t>(n_max) + 1, 1.0);
  for (int n = 1; n <= n_max; ++n) {
    const double nd = static_cast<double>(n);
    rho[n] = std::sqrt(nd * (q + nd - 1.0) / ((p + nd - 1.0) * (p - q + nd)));
  }
  std::vector<std::vector<double>> Q(static_cast<std::size_t>(n_max) + 1, std::vector<double>(G));
  const double q0 = std::exp(0.5 * (std::lgamma(p) - std::lgamma(q) - std::lgamma(p - q + 1.0)));
  std::vector<double> x(G);
  for (std::size_t i = 0; i < G; ++i) {
    x[i] = std::pow(r[i], alpha);
    Q[0][i] = q0;
  }
  if (n_max >= 1) {
    for (std::size_t i = 0; i < G; ++i) Q[1][i] = rho[1] * p * q0 * (1.0 - x[i] * (p + 1.0) / q);
    if (counter) counter->additions += G;
  }
  for (int n = 2; n <= n_max; ++n) {
    const double nd = static_cast<double>(n);
    const double L1 = -(2 * nd + p - 1.0) * (2 * nd + p - 2.0) / (nd * (q + nd - 1.0));
    const double L2 = (p + 2 * nd - 2.0) + L1 * (nd - 1.0) * (q + nd - 2.0) / (p + 2 * nd - 3.0);
    const double L3 = (p + 2 * nd - 4.0) * (p + 2 * nd - 3.0) / 2.0 + L1 * (q + nd - 3.0) * (nd - 2.0) / 2.0 -
                      (p + 2 * nd - 4.0) * L2;
    const double a = rho[n];
    const double b = rho[n] * rho[n - 1] * L3;
    for (std::size_t i = 0; i < G; ++i) Q[n][i] = a * (L1 * x[i] + L2) * Q[n - 1][i] + b * Q[n - 2][i];
    if (counter) counter->additions += 2 * G;
  }
  std::vector<double> w(G);
  for (std::size_t i = 0; i < G; ++i) w[i] = poly_weight(alpha, p, q, r[i]);
  for (int n = 0; n <= n_max; ++n) {
    const double s = std::sqrt(p + 2.0 * static_cast<double>(n));
    for (std::size_t i = 0; i < G; ++i) Q[n][i] *= s * w[i];
  }
  return Q;
}

OriginBehaviour radial_origin(const BasisSpec& spec, int n) {
  OriginBehaviour ob;
  if (spec.family == Family::Harmonic) {
    ob.lead = std::sqrt(spec.alpha / (2.0 * kPi));
    ob.power = spec.alpha / 2.0 - 1.0;
    return ob;
  }
  const double nd = static_cast<double>(n);
  // P_n(0) = Gamma(p+n) / (n! Gamma(q)).
  const double pn0 = std::exp(std::lgamma(spec.p + nd) - lfact(n) - std::lgamma(spec.q));
  ob.lead = std::sqrt(spec.alpha * (spec.p + 2.0 * nd) / (2.0 * kPi)) * std::exp(log_Cn(spec.p, spec.q, n)) * pn0;
  ob.power = spec.alpha * spec.q / 2.0 - 1.0;
  return ob;
}

std::vector<double> zero_locations(const BasisSpec& spec, int n) {
  std::vector<double> zeros;
  if (spec.family == Family::Harmonic) {
    const int an = std::abs(n);
    if (an == 0) return zeros;
    for (int k = 0;; ++k) {
      const double g = (2.0 * k + 1.0) / (4.0 * an);
      if (g >= 1.0) break;
      zeros.push_back(std::pow(g, 1.0 / spec.alpha));
    }
    return zeros;
  }
  spec.validate();
  if (n <= 0) return zeros;
  // Sign of the polynomial factor only; the weight is positive on (0,1).
  auto poly = [&](double r) {
    const double rr[1] = {r};
    const auto t = radial_poly_recursive(spec.alpha, spec.p, spec.q, n, rr);
    const double w = poly_weight(spec.alpha, spec.p, spec.q, r);
    return t[n][0] / w;
  };
  constexpr int kScan = 10000;
  double prev_r = 1e-12;
  double prev = poly(prev_r);
  for (int i = 1; i < kScan; ++i) {
    const double cur_r = static_cast<double>(i) / kScan;
    const double cur = poly(cur_r);
    if (cur == 0.0) {
      zeros.push_back(cur_r);
    } else if ((prev < 0.0) != (cur < 0.0) && prev != 0.0) {
      double lo = prev_r, hi = cur_r, flo = prev;
      while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        const double fm = poly(mid);
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      zeros.push_back(0.5 * (lo + hi));
    }
    prev_r = cur_r;
    prev = cur;
  }
  return zeros;
}

Quadrature gauss_legendre_unit(std::size_t points) {
  Quadrature qd;
  qd.x.resize(points);
  qd.w.resize(points);
  const std::size_t half = (points + 1) / 2;
  const double nd = static_cast<double>(points);
  for (std::size_t i = 0; i < half; ++i) {
    double z = std::cos(kPi * (static_cast<double>(i) + 0.75) / (nd + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 30; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (std::size_t j = 1; j <= points; ++j) {
        const double p2 = p1;
        p1 = p0;
        const double jd = static_cast<double>(j);
        p0 = ((2.0 * jd - 1.0) * z * p1 - (jd - 1.0) * p2) / jd;
      }
      dp = nd * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 3e-16) break;
    }
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    qd.x[i] = 0.5 * (1.0 - z);
    qd.x[points - 1 - i] = 0.5 * (1.0 + z);
    qd.w[i] = 0.5 * w;
    qd.w[points - 1 - i] = 0.5 * w;
  }
  return qd;
}

}  // namespace fmr
