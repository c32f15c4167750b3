#include "fmr/explicit_path.hpp"

#include "fmr/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>

namespace fmr {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kThetaPoints = 2048;

bool is_int(double x) { return std::abs(x - std::round(x)) < 1e-12; }

void require_integer_exponent(double xi, const char* what) {
  if (!is_int(xi))
    throw Error(ErrorKind::FractionalPowerOfNegative,
                std::string(what) + " exponent is not an integer; x^xi is complex where the coordinate is negative");
  if (xi < -1e-12) throw Error(ErrorKind::DomainError, std::string(what) + " exponent must be >= 0");
}

// log|Gamma(z)| and its sign, poles excluded by the caller.
double lgamma_signed(double z, int& sign) {
  sign = 1;
  if (z < 0.0 && static_cast<long long>(std::floor(z)) % 2 != 0) sign = -1;
  return std::lgamma(z);
}

}  // namespace

double gen_binomial(double x, int t) {
  if (t < 0) return 0.0;
  if (t == 0) return 1.0;
  if (is_int(x) && x >= 0.0) {
    const long xi = std::lround(x);
    if (t > xi) return 0.0;
  }
  if (is_int(x + 1.0) && x + 1.0 <= 0.0) {
    // Negative integer x: Gamma(x+1) has a pole, use the falling product.
    double v = 1.0;
    for (int i = 0; i < t; ++i) v *= (x - i) / (i + 1.0);
    return v;
  }
  int s1, s2, s3;
  const double l = lgamma_signed(x + 1.0, s1) - lgamma_signed(t + 1.0, s2) - lgamma_signed(x - t + 1.0, s3);
  return s1 * s2 * s3 * std::exp(l);
}

double geometric_moment(const GrayImage& img, const DiskDomain& domain, double xi1, double xi2, bool nonneg_support) {
  if (!nonneg_support) {
    require_integer_exponent(xi1, "xi1");
    require_integer_exponent(xi2, "xi2");
  } else if (xi1 < 0.0 || xi2 < 0.0) {
    throw Error(ErrorKind::DomainError, "geometric moment exponents must be >= 0");
  }
  const double R = domain.radius;
  const double area = 1.0 / (R * R);
  double sum = 0.0;
  for (std::size_t r = 0; r < img.height(); ++r) {
    const double y = (domain.cy - static_cast<double>(r)) / R;
    for (std::size_t c = 0; c < img.width(); ++c) {
      if (!domain.contains_pixel(r, c)) continue;
      const double f = img.at(r, c);
      if (f == 0.0) continue;
      const double x = (static_cast<double>(c) - domain.cx) / R;
      if (nonneg_support && (x < 0.0 || y < 0.0) && (!is_int(xi1) || !is_int(xi2)))
        throw Error(ErrorKind::FractionalPowerOfNegative, "image has support where x or y is negative");
      sum += f * std::pow(x, xi1) * std::pow(y, xi2);
    }
  }
  return sum * area;
}

std::complex<double> theta_integral(int m, double xi1, double xi2) {
  require_integer_exponent(xi1, "xi1");
  require_integer_exponent(xi2, "xi2");
  const int a = static_cast<int>(std::lround(xi1));
  const int b = static_cast<int>(std::lround(xi2));
  std::complex<double> acc{};
  for (int i = 0; i < kThetaPoints; ++i) {
    const double th = 2.0 * kPi * i / kThetaPoints;
    acc += std::polar(1.0, -m * th) * (std::pow(std::cos(th), a) * std::pow(std::sin(th), b));
  }
  return acc * (2.0 * kPi / kThetaPoints);
}

std::complex<double> w1(double alpha, int n, int k) {
  if (k < 0) throw Error(ErrorKind::ParamError, "k must be >= 0");
  const double base = std::sqrt(alpha / (2.0 * kPi));
  if (k == 0) return base;
  if (n == 0) return 0.0;
  const double mag = base * std::exp(k * std::log(2.0 * std::abs(n) * kPi) - std::lgamma(k + 1.0));
  // (j * sign(n))^k
  const int quarter = ((n > 0 ? k : -k) % 4 + 4) % 4;
  static constexpr std::complex<double> unit[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return mag * unit[quarter];
}

double w2(double alpha, double p, double q, int n, int k) {
  check_poly_params(alpha, p, q);
  if (k < 0 || k > n) throw Error(ErrorKind::ParamError, "W2 needs 0 <= k <= n");
  const double nd = n, kd = k;
  const double lnorm = 0.5 * (std::log(alpha * (p + 2 * nd)) + std::lgamma(q + nd) + std::lgamma(nd + 1.0) -
                              std::log(2.0 * kPi) - std::lgamma(p + nd) - std::lgamma(p - q + nd + 1.0));
  const double lterm = std::lgamma(p + nd + kd) - std::lgamma(kd + 1.0) - std::lgamma(nd - kd + 1.0) - std::lgamma(q + kd);
  const double v = std::exp(lnorm + lterm);
  return k % 2 == 0 ? v : -v;
}

double w3(double p, double q, int s) {
  if (s < 0) throw Error(ErrorKind::ParamError, "s must be >= 0");
  const double b = gen_binomial((p - q) / 2.0, s);
  return s % 2 == 0 ? b : -b;
}

ExplicitEvaluator::ExplicitEvaluator(const GrayImage& img, const DiskDomain& domain)
    : w_(img.width()), h_(img.height()) {
  const double R = domain.radius;
  xs_.resize(w_);
  ys_.resize(h_);
  for (std::size_t c = 0; c < w_; ++c) xs_[c] = (static_cast<double>(c) - domain.cx) / R;
  for (std::size_t r = 0; r < h_; ++r) ys_[r] = (domain.cy - static_cast<double>(r)) / R;
  px_.assign(w_ * h_, 0.0);
  const double area = 1.0 / (R * R);
  for (std::size_t r = 0; r < h_; ++r)
    for (std::size_t c = 0; c < w_; ++c)
      if (domain.contains_pixel(r, c)) {
        px_[r * w_ + c] = img.at(r, c) * area;
        mass_ += std::abs(px_[r * w_ + c]);
      }
}

void ExplicitEvaluator::ensure_degree(int degree) {
  if (degree <= degree_) return;
  const int D = degree;
  const std::size_t stride = static_cast<std::size_t>(D + 1);
  // Row sums of f x^a, then weighted by y^b.
  std::vector<double> rows(h_ * stride, 0.0);
  for (std::size_t r = 0; r < h_; ++r) {
    double* acc = &rows[r * stride];
    for (std::size_t c = 0; c < w_; ++c) {
      const double f = px_[r * w_ + c];
      if (f == 0.0) continue;
      double xp = f;
      for (int a = 0; a <= D; ++a) {
        acc[a] += xp;
        xp *= xs_[c];
      }
    }
  }
  g_.assign(stride * stride, 0.0);
  for (std::size_t r = 0; r < h_; ++r) {
    const double* acc = &rows[r * stride];
    for (int a = 0; a <= D; ++a) {
      double yp = acc[a];
      for (int b = 0; a + b <= D; ++b) {
        g_[static_cast<std::size_t>(a) * stride + static_cast<std::size_t>(b)] += yp;
        yp *= ys_[r];
      }
    }
  }
  degree_ = D;
}

double ExplicitEvaluator::geometric(int a, int b) {
  if (a < 0 || b < 0) throw Error(ErrorKind::DomainError, "geometric moment exponents must be >= 0");
  ensure_degree(a + b);
  return g_[static_cast<std::size_t>(a) * static_cast<std::size_t>(degree_ + 1) + static_cast<std::size_t>(b)];
}

std::complex<double> ExplicitEvaluator::theta(int m, int a, int b) {
  const int need = std::max(a + b, degree_);
  if (need > theta_degree_) {
    theta_.clear();
    theta_degree_ = need;
  }
  auto it = theta_.find(m);
  const int D = theta_degree_;
  const std::size_t stride = static_cast<std::size_t>(D + 1);
  if (it == theta_.end()) {
    std::vector<std::complex<double>> tab(stride * stride);
    std::vector<double> cpow(stride), spow(stride);
    const double dth = 2.0 * kPi / kThetaPoints;
    for (int i = 0; i < kThetaPoints; ++i) {
      const double th = dth * i;
      const double c = std::cos(th), s = std::sin(th);
      cpow[0] = spow[0] = 1.0;
      for (std::size_t d = 1; d < stride; ++d) {
        cpow[d] = cpow[d - 1] * c;
        spow[d] = spow[d - 1] * s;
      }
      const std::complex<double> e = std::polar(dth, -m * th);
      for (int aa = 0; aa <= D; ++aa)
        for (int bb = 0; aa + bb <= D; ++bb)
          tab[static_cast<std::size_t>(aa) * stride + static_cast<std::size_t>(bb)] += e * (cpow[aa] * spow[bb]);
    }
    it = theta_.emplace(m, std::move(tab)).first;
  }
  return it->second[static_cast<std::size_t>(a) * stride + static_cast<std::size_t>(b)];
}

namespace {

// sum_{k > k_max} x^k / k!, evaluated in log space.
double poisson_tail(double x, int k_max) {
  if (x == 0.0) return 0.0;
  double total = 0.0;
  const double lx = std::log(x);
  for (int k = k_max + 1; k < k_max + 100000; ++k) {
    const double term = std::exp(k * lx - std::lgamma(k + 1.0));
    total += term;
    if (k > x && term < 1e-18 * std::max(total, 1e-300)) break;
  }
  return total;
}

void finish(ExplicitResult& res, std::complex<double> series) {
  res.series = series;
  res.value = res.determined ? series / 2.0 : std::complex<double>{};
}

}  // namespace

ExplicitResult ExplicitEvaluator::harmonic(double alpha, int n, int m, const SeriesTruncation& trunc) {
  if (!(alpha > 0.0)) throw Error(ErrorKind::ParamError, "alpha must be positive");
  if (!is_int(alpha / 2.0))
    throw Error(ErrorKind::FractionalPowerOfNegative,
                "exponents alpha*k + alpha/2 are not all integers for alpha=" + std::to_string(alpha) +
                    "; (x cos + y sin)^e is undefined where the projection is negative");
  if (trunc.k_max < 0 || !(trunc.tail_tol > 0.0)) throw Error(ErrorKind::ParamError, "bad truncation");
  ExplicitResult res;
  res.tail_estimate = 2.0 * kPi * mass_ * std::sqrt(alpha / (2.0 * kPi)) * poisson_tail(2.0 * std::abs(n) * kPi, trunc.k_max);
  if (res.tail_estimate > trunc.tail_tol)
    throw Error(ErrorKind::TruncationNotConverged,
                "tail bound " + std::to_string(res.tail_estimate) + " exceeds " + std::to_string(trunc.tail_tol) +
                    " at k_max=" + std::to_string(trunc.k_max));
  const int a2 = static_cast<int>(std::lround(alpha / 2.0));
  const int ia = static_cast<int>(std::lround(alpha));
  res.determined = (m + a2) % 2 == 0;
  if (mass_ == 0.0) return res;
  const int k_end = n == 0 ? 0 : trunc.k_max;
  ensure_degree(ia * k_end + a2);
  std::set<std::pair<int, int>> used;
  std::complex<double> total{};
  for (int k = 0; k <= k_end; ++k) {
    const int e = ia * k + a2;
    std::complex<double> inner{};
    for (int t = 0; t <= e; ++t) {
      inner += gen_binomial(e, t) * theta(m, e - t, t) * geometric(e - t, t);
      used.insert({e - t, t});
    }
    total += std::conj(w1(alpha, n, k)) * inner;
  }
  finish(res, total);
  res.exponents.assign(used.begin(), used.end());
  return res;
}

ExplicitResult ExplicitEvaluator::polynomial(const BasisSpec& spec, int n, int m, const SeriesTruncation& trunc) {
  BasisSpec s = spec;
  s.family = Family::Polynomial;
  s.validate();
  if (n < 0) throw Error(ErrorKind::ParamError, "polynomial order n must be >= 0");
  const double alpha = s.alpha;
  if (!is_int(alpha) || !is_int(alpha * s.q / 2.0))
    throw Error(ErrorKind::FractionalPowerOfNegative,
                "exponents alpha*(s + k + q/2) are not all integers; (x cos + y sin)^e is undefined where the "
                "projection is negative");
  if (trunc.s_max < 0 || !(trunc.tail_tol > 0.0)) throw Error(ErrorKind::ParamError, "bad truncation");
  const double x = (s.p - s.q) / 2.0;
  int s_end = trunc.s_max;
  ExplicitResult res;
  if (is_int(x) && x >= 0.0) {
    s_end = std::min<int>(trunc.s_max, static_cast<int>(std::lround(x)));
    if (s_end < std::lround(x)) {
      for (int j = s_end + 1; j <= std::lround(x); ++j) res.tail_estimate += std::abs(w3(s.p, s.q, j));
    }
  } else {
    constexpr int kExtra = 200000;
    for (int j = trunc.s_max + 1; j <= trunc.s_max + kExtra; ++j) res.tail_estimate += std::abs(w3(s.p, s.q, j));
    // Remaining terms behave like c * j^(-x-1).
    const int last = trunc.s_max + kExtra;
    const double c = std::abs(w3(s.p, s.q, last)) * std::pow(last, x + 1.0);
    res.tail_estimate += x > 0.0 ? c * std::pow(last, -x) / x : std::numeric_limits<double>::infinity();
  }
  if (res.tail_estimate > trunc.tail_tol)
    throw Error(ErrorKind::TruncationNotConverged,
                "s-series tail bound " + std::to_string(res.tail_estimate) + " exceeds " + std::to_string(trunc.tail_tol));
  const int ia = static_cast<int>(std::lround(alpha));
  const int aq2 = static_cast<int>(std::lround(alpha * s.q / 2.0));
  res.determined = (m + aq2) % 2 == 0;
  if (mass_ == 0.0) return res;
  ensure_degree(ia * (s_end + n) + aq2);
  std::set<std::pair<int, int>> used;
  std::complex<double> total{};
  for (int k = 0; k <= n; ++k) {
    const double c2 = w2(alpha, s.p, s.q, n, k);
    for (int si = 0; si <= s_end; ++si) {
      const double c3 = w3(s.p, s.q, si);
      if (c3 == 0.0) continue;
      const int e = ia * (si + k) + aq2;
      std::complex<double> inner{};
      for (int t = 0; t <= e; ++t) {
        inner += gen_binomial(e, t) * theta(m, e - t, t) * geometric(e - t, t);
        used.insert({e - t, t});
      }
      total += c2 * c3 * inner;
    }
  }
  finish(res, total);
  res.exponents.assign(used.begin(), used.end());
  return res;
}

ExplicitResult fmr_explicit_harmonic(const GrayImage& img, const DiskDomain& domain, double alpha, int n, int m,
                                     const SeriesTruncation& trunc) {
  ExplicitEvaluator ev(img, domain);
  return ev.harmonic(alpha, n, m, trunc);
}

ExplicitResult fmr_explicit_polynomial(const GrayImage& img, const DiskDomain& domain, const BasisSpec& spec,
                                       int n, int m, const SeriesTruncation& trunc) {
  ExplicitEvaluator ev(img, domain);
  return ev.polynomial(spec, n, m, trunc);
}

}  // namespace fmr
