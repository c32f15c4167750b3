#include "fmr/radon.hpp"

#include "fmr/error.hpp"
#include "fmr/parallel.hpp"

#include <fftw3.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <numeric>

namespace fmr {

namespace {

constexpr double kPi = std::numbers::pi;

void check_grid(std::size_t U, std::size_t V) {
  if (U < 2 || V < 2) throw Error(ErrorKind::DegenerateGrid, "sinogram grid needs U,V >= 2");
}

std::vector<double> full_turn_angles(std::size_t V) {
  std::vector<double> th(V);
  for (std::size_t v = 0; v < V; ++v) th[v] = 2.0 * kPi * static_cast<double>(v) / static_cast<double>(V);
  return th;
}

Sinogram forward_on_radii(const GrayImage& img, const DiskDomain& domain, std::vector<double> radii,
                          std::size_t V, double warp_alpha) {
  const std::size_t U = radii.size();
  check_grid(U, V);
  Sinogram s = make_sinogram(U, V, warp_alpha, domain.radius);
  s.r = std::move(radii);
  const GrayImage masked = mask_to_disk(img, domain);
  parallel_for(V, [&](std::size_t v) {
    for (std::size_t u = 0; u < U; ++u)
      s.at(u, v) = line_integral(masked, domain, s.r[u] * domain.radius, s.theta[v]);
  });
  return s;
}

}  // namespace

double Sinogram::gamma(std::size_t u) const {
  return warped() ? std::pow(r[u], warp_alpha) : r[u];
}

std::vector<double> uniform_radii(std::size_t U) {
  std::vector<double> r(U);
  for (std::size_t u = 0; u < U; ++u) r[u] = (static_cast<double>(u) + 0.5) / static_cast<double>(U);
  return r;
}

std::vector<double> warped_radii(std::size_t U, double alpha) {
  if (!(alpha > 0.0)) throw Error(ErrorKind::ParamError, "warp alpha must be positive");
  std::vector<double> r(U);
  for (std::size_t u = 0; u < U; ++u)
    r[u] = std::pow(static_cast<double>(u) / static_cast<double>(U), 1.0 / alpha);
  return r;
}

Sinogram make_sinogram(std::size_t U, std::size_t V, double warp_alpha, double radius) {
  check_grid(U, V);
  Sinogram s;
  s.U = U;
  s.V = V;
  s.warp_alpha = warp_alpha;
  s.radius = radius;
  s.r = warp_alpha > 0.0 ? warped_radii(U, warp_alpha) : uniform_radii(U);
  s.theta = full_turn_angles(V);
  s.values.assign(U * V, 0.0);
  return s;
}

std::string to_string(RampWindow w) {
  switch (w) {
    case RampWindow::None: return "ramlak";
    case RampWindow::SheppLogan: return "shepp-logan";
    case RampWindow::Cosine: return "cosine";
    case RampWindow::Hann: return "hann";
  }
  return "ramlak";
}

RampWindow parse_ramp_window(const std::string& s) {
  for (RampWindow w : {RampWindow::None, RampWindow::SheppLogan, RampWindow::Cosine, RampWindow::Hann})
    if (s == to_string(w)) return w;
  throw Error(ErrorKind::ParamError, "unknown filter '" + s + "'");
}

namespace {

template <typename Sampler>
double line_sum(Sampler&& sample, const DiskDomain& domain, double rho, double theta, std::size_t* samples_in_disk) {
  const double ct = std::cos(theta);
  const double st = std::sin(theta);
  const double R = domain.radius;
  const double reach = (R + 1.0) * (R + 1.0) - rho * rho;
  if (samples_in_disk) *samples_in_disk = 0;
  if (reach <= 0.0) return 0.0;
  const long T = static_cast<long>(std::ceil(std::sqrt(reach)));
  double sum = 0.0;
  std::size_t inside = 0;
  for (long t = -T; t <= T; ++t) {
    const double td = static_cast<double>(t);
    const double x = rho * ct - td * st;
    const double y = rho * st + td * ct;
    if (x * x + y * y <= R * R) ++inside;
    sum += sample(domain.cx + x, domain.cy - y);
  }
  if (samples_in_disk) *samples_in_disk = inside;
  return sum;
}

// Bilinear read of a raw row-major field, zero outside.
double sample_field(const std::vector<double>& f, long w, long h, double col, double row) {
  const double c0 = std::floor(col), r0 = std::floor(row);
  const double fc = col - c0, fr = row - r0;
  const long ic = static_cast<long>(c0), ir = static_cast<long>(r0);
  auto px = [&](long r, long c) -> double {
    if (r < 0 || c < 0 || r >= h || c >= w) return 0.0;
    return f[static_cast<std::size_t>(r * w + c)];
  };
  return (1.0 - fr) * ((1.0 - fc) * px(ir, ic) + fc * px(ir, ic + 1)) +
         fr * ((1.0 - fc) * px(ir + 1, ic) + fc * px(ir + 1, ic + 1));
}

}  // namespace

double line_integral(const GrayImage& masked, const DiskDomain& domain, double rho, double theta,
                     std::size_t* samples_in_disk) {
  return line_sum([&](double c, double r) { return sample_bilinear(masked, c, r); }, domain, rho, theta,
                  samples_in_disk);
}

Sinogram radon_forward(const GrayImage& img, const DiskDomain& domain, std::size_t U, std::size_t V) {
  check_grid(U, V);
  return forward_on_radii(img, domain, uniform_radii(U), V, 0.0);
}

Sinogram radon_forward_warped(const GrayImage& img, const DiskDomain& domain, std::size_t U,
                              std::size_t V, double alpha) {
  check_grid(U, V);
  return forward_on_radii(img, domain, warped_radii(U, alpha), V, alpha);
}

namespace {

// Column v of the sinogram as a function of the signed distance s in [-1,1]:
// s >= 0 reads angle theta_v, s < 0 reads theta_v + pi at |s|.
struct SignedProfile {
  std::vector<double> s;
  std::vector<double> p;

  double operator()(double x) const {
    if (x <= s.front() || x >= s.back()) return 0.0;
    const auto it = std::upper_bound(s.begin(), s.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - s.begin());
    const double t = (x - s[i - 1]) / (s[i] - s[i - 1]);
    return (1.0 - t) * p[i - 1] + t * p[i];
  }
};

std::vector<double> opposite_column(const Sinogram& sino, std::size_t v) {
  std::vector<double> col(sino.U);
  const double pos = static_cast<double>(v) + static_cast<double>(sino.V) / 2.0;
  const double fl = std::floor(pos);
  const double frac = pos - fl;
  const std::size_t v0 = static_cast<std::size_t>(fl) % sino.V;
  const std::size_t v1 = (v0 + 1) % sino.V;
  for (std::size_t u = 0; u < sino.U; ++u)
    col[u] = (1.0 - frac) * sino.at(u, v0) + frac * sino.at(u, v1);
  return col;
}

SignedProfile signed_profile(const Sinogram& sino, std::size_t v) {
  const std::vector<double> opp = opposite_column(sino, v);
  const double scale = 1.0 / sino.radius;
  SignedProfile prof;
  prof.s.reserve(2 * sino.U + 2);
  prof.p.reserve(2 * sino.U + 2);
  prof.s.push_back(-1.0);
  prof.p.push_back(0.0);
  const bool has_origin = sino.r[0] == 0.0;
  for (std::size_t k = sino.U; k-- > (has_origin ? 1 : 0);) {
    prof.s.push_back(-sino.r[k]);
    prof.p.push_back(opp[k] * scale);
  }
  if (has_origin) {
    prof.s.push_back(0.0);
    prof.p.push_back(0.5 * (opp[0] + sino.at(0, v)) * scale);
  }
  for (std::size_t u = has_origin ? 1 : 0; u < sino.U; ++u) {
    prof.s.push_back(sino.r[u]);
    prof.p.push_back(sino.at(u, v) * scale);
  }
  if (prof.s.back() < 1.0) {
    prof.s.push_back(1.0);
    prof.p.push_back(0.0);
  }
  return prof;
}

}  // namespace

GrayImage radon_inverse(const Sinogram& sino, std::size_t out_size, RampWindow window) {
  check_grid(sino.U, sino.V);
  if (out_size < GrayImage::kMinSide) throw Error(ErrorKind::DegenerateGrid, "output image too small");
  for (double x : sino.values)
    if (!std::isfinite(x)) throw Error(ErrorKind::DomainError, "sinogram holds non-finite values");

  const std::size_t V = sino.V;
  const long J = static_cast<long>(sino.U);
  const double tau = 1.0 / static_cast<double>(J);
  const std::size_t L = static_cast<std::size_t>(2 * J + 1);
  std::size_t P = 1;
  while (P < 2 * L) P <<= 1;
  const std::size_t NC = P / 2 + 1;

  // Ramp kernel band-limited at wc, wrapped for circular convolution:
  // h(x) = wc^2 (2 sinc(2 wc x) - sinc(wc x)^2). wc is the Nyquist rate of the
  // output pixel grid, or of the profile sampling when that is coarser; at
  // wc = 1/(2 tau) this is the Ram-Lak kernel.
  const double wc = std::min(0.5 / tau, static_cast<double>(out_size) / 4.0);
  auto sinc = [](double x) { return x == 0.0 ? 1.0 : std::sin(kPi * x) / (kPi * x); };
  std::vector<double> kern(P, 0.0);
  kern[0] = wc * wc;
  for (std::size_t k = 1; k < L; ++k) {
    const double x = static_cast<double>(k) * tau;
    const double sc = sinc(wc * x);
    const double val = wc * wc * (2.0 * sinc(2.0 * wc * x) - sc * sc);
    kern[k] = val;
    kern[P - k] = val;
  }
  double* rbuf = fftw_alloc_real(P);
  fftw_complex* cbuf = fftw_alloc_complex(NC);
  fftw_plan fwd = fftw_plan_dft_r2c_1d(static_cast<int>(P), rbuf, cbuf, FFTW_ESTIMATE);
  fftw_plan bwd = fftw_plan_dft_c2r_1d(static_cast<int>(P), cbuf, rbuf, FFTW_ESTIMATE);

  std::copy(kern.begin(), kern.end(), rbuf);
  fftw_execute(fwd);
  std::vector<std::complex<double>> kspec(NC);
  for (std::size_t i = 0; i < NC; ++i) {
    const double x = std::min(1.0, static_cast<double>(i) / (static_cast<double>(P) * tau * wc));
    double w = 1.0;
    switch (window) {
      case RampWindow::None: break;
      case RampWindow::SheppLogan: w = x == 0.0 ? 1.0 : std::sin(kPi * x / 2.0) / (kPi * x / 2.0); break;
      case RampWindow::Cosine: w = std::cos(kPi * x / 2.0); break;
      case RampWindow::Hann: w = 0.5 * (1.0 + std::cos(kPi * x)); break;
    }
    kspec[i] = w * std::complex<double>(cbuf[i][0], cbuf[i][1]);
  }

  std::vector<double> filtered(V * L);
  for (std::size_t v = 0; v < V; ++v) {
    const SignedProfile prof = signed_profile(sino, v);
    std::fill(rbuf, rbuf + P, 0.0);
    for (std::size_t j = 0; j < L; ++j)
      rbuf[j] = prof((static_cast<double>(j) - static_cast<double>(J)) * tau);
    fftw_execute(fwd);
    for (std::size_t i = 0; i < NC; ++i) {
      const std::complex<double> z = std::complex<double>(cbuf[i][0], cbuf[i][1]) * kspec[i];
      cbuf[i][0] = z.real();
      cbuf[i][1] = z.imag();
    }
    fftw_execute(bwd);
    // Unnormalized inverse FFT; tau is the convolution's sample spacing.
    for (std::size_t j = 0; j < L; ++j) filtered[v * L + j] = rbuf[j] * tau / static_cast<double>(P);
  }
  fftw_destroy_plan(fwd);
  fftw_destroy_plan(bwd);
  fftw_free(rbuf);
  fftw_free(cbuf);

  std::vector<double> ct(V), st(V);
  for (std::size_t v = 0; v < V; ++v) {
    ct[v] = std::cos(sino.theta[v]);
    st[v] = std::sin(sino.theta[v]);
  }
  GrayImage out(out_size, out_size);
  const double c = (static_cast<double>(out_size) - 1.0) / 2.0;
  const double half = static_cast<double>(out_size) / 2.0;
  const double factor = 0.5 * 2.0 * kPi / static_cast<double>(V);
  parallel_for(out_size, [&](std::size_t row) {
    for (std::size_t col = 0; col < out_size; ++col) {
      const double x = (static_cast<double>(col) - c) / half;
      const double y = (c - static_cast<double>(row)) / half;
      if (x * x + y * y > 1.0) continue;
      double acc = 0.0;
      for (std::size_t v = 0; v < V; ++v) {
        const double pos = (x * ct[v] + y * st[v]) / tau + static_cast<double>(J);
        const double fl = std::floor(pos);
        const long i = static_cast<long>(fl);
        if (i < 0 || i + 1 >= static_cast<long>(L)) continue;
        const double t = pos - fl;
        const double* q = &filtered[v * L];
        acc += (1.0 - t) * q[i] + t * q[i + 1];
      }
      out.at(row, col) = std::clamp(acc * factor, 0.0, 1.0);
    }
  });
  return out;
}

double snr_increment_theory(double mu, double variance, double c) {
  if (variance < 0.0) throw Error(ErrorKind::NegativeVariance, "variance must be >= 0");
  if (variance == 0.0) return kSnrCap;
  return std::min(kSnrCap, mu * mu * (c - 1.0) / variance);
}

double SnrGainReport::mean_measured() const {
  if (measured_increment.empty()) return 0.0;
  return std::accumulate(measured_increment.begin(), measured_increment.end(), 0.0) /
         static_cast<double>(measured_increment.size());
}

double SnrGainReport::mean_theory() const {
  if (theory_increment.empty()) return 0.0;
  return std::accumulate(theory_increment.begin(), theory_increment.end(), 0.0) /
         static_cast<double>(theory_increment.size());
}

SnrGainReport snr_gain(const GrayImage& img, double variance, std::uint64_t seed, std::size_t V) {
  if (variance < 0.0) throw Error(ErrorKind::NegativeVariance, "variance must be >= 0");
  if (V < 2) throw Error(ErrorKind::DegenerateGrid, "need at least 2 angles");
  const DiskDomain dom = disk_mask(img);
  // Additive zero-mean noise, unclamped, restricted to the disk.
  std::vector<double> noise = gaussian_noise_field(img.size(), variance, seed);
  const long w = static_cast<long>(img.width()), h = static_cast<long>(img.height());

  SnrGainReport rep;
  double sum = 0.0, sq = 0.0;
  std::size_t count = 0;
  for (std::size_t r = 0; r < img.height(); ++r) {
    for (std::size_t c = 0; c < img.width(); ++c) {
      double& d = noise[r * img.width() + c];
      if (!dom.contains_pixel(r, c)) {
        d = 0.0;
        continue;
      }
      sum += img.at(r, c);
      sq += d * d;
      ++count;
    }
  }
  rep.image_mean = count ? sum / static_cast<double>(count) : 0.0;
  rep.noise_variance = count ? sq / static_cast<double>(count) : 0.0;
  rep.image_snr = rep.noise_variance > 0.0
                      ? std::min(kSnrCap, rep.image_mean * rep.image_mean / rep.noise_variance)
                      : kSnrCap;

  // One line per pixel offset across the disk.
  const long half = static_cast<long>(std::floor(dom.radius));
  const GrayImage clean_m = mask_to_disk(img, dom);
  auto noise_at = [&](double c, double r) { return sample_field(noise, w, h, c, r); };
  rep.c.assign(V, 0.0);
  rep.measured_increment.assign(V, 0.0);
  rep.theory_increment.assign(V, 0.0);
  parallel_for(V, [&](std::size_t v) {
    const double th = 2.0 * kPi * static_cast<double>(v) / static_cast<double>(V);
    double s_clean = 0.0, s_noise = 0.0, s_count = 0.0;
    std::size_t lines = 0;
    for (long k = -half; k <= half; ++k) {
      std::size_t n_in = 0;
      const double a = line_integral(clean_m, dom, static_cast<double>(k), th, &n_in);
      if (n_in == 0) continue;
      const double e = line_sum(noise_at, dom, static_cast<double>(k), th, nullptr);
      s_clean += a;
      s_noise += e * e;
      s_count += static_cast<double>(n_in);
      ++lines;
    }
    const double ln = static_cast<double>(lines);
    const double mean_p = s_clean / ln;
    const double var_p = s_noise / ln;
    const double proj_snr = var_p > 0.0 ? std::min(kSnrCap, mean_p * mean_p / var_p) : kSnrCap;
    rep.c[v] = s_count / ln;
    rep.measured_increment[v] = std::min(kSnrCap, proj_snr - rep.image_snr);
    rep.theory_increment[v] = snr_increment_theory(rep.image_mean, rep.noise_variance, rep.c[v]);
  });
  return rep;
}

namespace {

constexpr char kSinoMagic[8] = {'F', 'M', 'R', 'S', 'I', 'N', 'O', '1'};

template <typename T>
void put_le(std::ostream& out, T value) {
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  out.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <typename T>
T get_le(std::istream& in) {
  unsigned char bytes[sizeof(T)];
  in.read(reinterpret_cast<char*>(bytes), sizeof(T));
  if (!in) throw Error(ErrorKind::UnreadableFile, "truncated sinogram file");
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  T value;
  std::memcpy(&value, bytes, sizeof(T));
  return value;
}

}  // namespace

void save_sinogram(const Sinogram& sino, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::UnreadableFile, "cannot write " + path.string());
  out.write(kSinoMagic, 8);
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(sino.U));
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(sino.V));
  put_le<double>(out, sino.warp_alpha);
  put_le<double>(out, sino.radius);
  for (double x : sino.values) put_le<double>(out, x);
}

Sinogram load_sinogram(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::UnreadableFile, path.string());
  char magic[8];
  in.read(magic, 8);
  if (!in || std::memcmp(magic, kSinoMagic, 8) != 0)
    throw Error(ErrorKind::UnsupportedFormat, "not an FMRSINO1 file: " + path.string());
  const auto U = get_le<std::uint32_t>(in);
  const auto V = get_le<std::uint32_t>(in);
  const double alpha = get_le<double>(in);
  const double radius = get_le<double>(in);
  Sinogram s = make_sinogram(U, V, alpha, radius);
  for (double& x : s.values) x = get_le<double>(in);
  return s;
}

void save_sinogram_csv(const Sinogram& sino, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::UnreadableFile, "cannot write " + path.string());
  out << "r,theta,value\n" << std::setprecision(17);
  for (std::size_t u = 0; u < sino.U; ++u)
    for (std::size_t v = 0; v < sino.V; ++v)
      out << sino.r[u] << ',' << sino.theta[v] << ',' << sino.at(u, v) << '\n';
}

}  // namespace fmr
