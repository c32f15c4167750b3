#include "fmr/moments.hpp"

#include "fmr/error.hpp"
#include "fmr/parallel.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <mutex>
#include <numbers>
#include <ostream>
#include <sstream>

namespace fmr {

namespace {

constexpr double kPi = std::numbers::pi;
using cplx = std::complex<double>;

std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

// One radial quadrature node in the native coordinate gamma.
struct RadialNode {
  long u = 0;          // source row, or -1 for the virtual rim point
  double r = 0.0;
  double gamma = 0.0;
  double weight = 0.0; // trapezoid weight in gamma
  bool origin = false; // r == 0, evaluated as a limit
};

std::vector<RadialNode> radial_nodes(const PolarField& f) {
  std::vector<RadialNode> nodes;
  const double h = 1.0 / static_cast<double>(f.U);
  for (std::size_t u = 0; u < f.U; ++u) {
    RadialNode nd;
    nd.u = static_cast<long>(u);
    nd.r = f.r[u];
    nd.gamma = f.gamma[u];
    if (f.origin_node) {
      nd.weight = u == 0 ? h / 2.0 : h;
      nd.origin = u == 0;
    } else {
      // Cell-centred nodes; the virtual origin contributes nothing because
      // r * R_n(r) vanishes there on a uniform grid.
      nd.weight = (u == 0 || u + 1 == f.U) ? 0.75 * h : h;
    }
    nodes.push_back(nd);
  }
  RadialNode rim;
  rim.u = -1;
  rim.r = 1.0;
  rim.gamma = 1.0;
  rim.weight = f.origin_node ? h / 2.0 : h / 4.0;
  nodes.push_back(rim);
  return nodes;
}

// Angular spectrum A_m[node] = (2pi/V) sum_v F[u,v] exp(-j m theta_v) for
// m in [-K,K]; the rim node takes zero or the last row.
std::vector<cplx> angular_spectrum(const PolarField& f, const std::vector<RadialNode>& nodes, int K) {
  const std::size_t mc = static_cast<std::size_t>(2 * K + 1);
  std::vector<cplx> twiddle(f.V * mc);
  for (std::size_t v = 0; v < f.V; ++v) {
    for (int m = -K; m <= K; ++m) {
      // Reduce m*v mod V exactly so that grids with V = M match the FFT bins.
      const long long idx = ((static_cast<long long>(m) * static_cast<long long>(v)) % static_cast<long long>(f.V) +
                             static_cast<long long>(f.V)) % static_cast<long long>(f.V);
      twiddle[v * mc + static_cast<std::size_t>(m + K)] =
          std::polar(1.0, -2.0 * kPi * static_cast<double>(idx) / static_cast<double>(f.V));
    }
  }
  std::vector<cplx> A(nodes.size() * mc, cplx{});
  const double dth = 2.0 * kPi / static_cast<double>(f.V);
  parallel_for(nodes.size(), [&](std::size_t i) {
    long src = nodes[i].u;
    if (src < 0) {
      if (f.rim_zero) return;
      src = static_cast<long>(f.U) - 1;
    }
    const double* row = &f.values[static_cast<std::size_t>(src) * f.V];
    cplx* out = &A[i * mc];
    for (std::size_t v = 0; v < f.V; ++v) {
      const double x = row[v];
      if (x == 0.0) continue;
      const cplx* tw = &twiddle[v * mc];
      for (std::size_t k = 0; k < mc; ++k) out[k] += x * tw[k];
    }
    for (std::size_t k = 0; k < mc; ++k) out[k] *= dth;
  });
  return A;
}

// Measure factor r * dr/dgamma at a node with r > 0.
double measure(const PolarField& f, const RadialNode& nd) {
  if (f.warp == 1.0) return nd.r;
  return nd.r * nd.r / (f.warp * nd.gamma);
}

// kern[n - n_min][node] = conj(R_n(r)) * r * dr/dgamma, origin nodes taken
// as limits (zero weight when the limit diverges).
std::vector<std::vector<cplx>> radial_kernels(const PolarField& f, const std::vector<RadialNode>& nodes,
                                              const BasisSpec& spec, int K, RadialSource src) {
  const int n_min = spec.family == Family::Harmonic ? -K : 0;
  const std::size_t nn = static_cast<std::size_t>(K - n_min + 1);
  std::vector<std::vector<cplx>> kern(nn, std::vector<cplx>(nodes.size(), cplx{}));

  std::vector<std::vector<double>> poly;
  if (spec.family == Family::Polynomial) {
    std::vector<double> rr;
    for (const auto& nd : nodes) rr.push_back(nd.origin ? 0.5 : nd.r);  // origin handled below
    poly = src == RadialSource::Recursive ? radial_poly_recursive(spec.alpha, spec.p, spec.q, K, rr)
                                          : radial_poly_direct_table(spec.alpha, spec.p, spec.q, K, rr);
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const RadialNode& nd = nodes[i];
    if (nd.origin) {
      for (int n = n_min; n <= K; ++n) {
        const OriginBehaviour ob = radial_origin(spec, n);
        const double eps = ob.power + 2.0 - f.warp;
        if (std::abs(eps) < 1e-12) kern[static_cast<std::size_t>(n - n_min)][i] = ob.lead / f.warp;
      }
      continue;
    }
    if (spec.family == Family::Harmonic) {
      double mag;
      if (f.warp == spec.alpha && f.warp != 1.0) {
        mag = std::pow(nd.gamma, 1.0 / spec.alpha - 0.5) / std::sqrt(2.0 * kPi * spec.alpha);
      } else {
        mag = std::abs(radial_harmonic(spec.alpha, 0, nd.r)) * measure(f, nd);
      }
      const double ra = f.warp == spec.alpha ? nd.gamma : std::pow(nd.r, spec.alpha);
      for (int n = n_min; n <= K; ++n) {
        const double turns = static_cast<double>(n) * ra;
        const double frac = turns - std::round(turns);
        kern[static_cast<std::size_t>(n - n_min)][i] = std::polar(mag, -2.0 * kPi * frac);
      }
    } else {
      const double meas = measure(f, nd);
      for (int n = 0; n <= K; ++n) kern[static_cast<std::size_t>(n)][i] = poly[n][i] * meas;
    }
  }
  return kern;
}

void check_resolution(std::size_t U, std::size_t V, int K) {
  if (K < 0) throw Error(ErrorKind::ParamError, "K must be >= 0");
  const std::size_t need = static_cast<std::size_t>(4 * std::max(K, 1));
  if (U < need || V < need)
    throw Error(ErrorKind::UnderResolved, "grid " + std::to_string(U) + "x" + std::to_string(V) +
                                              " too coarse for K=" + std::to_string(K) + " (need >= 4K per axis)");
}

}  // namespace

MomentSet MomentSet::zeros(const BasisSpec& spec, int K, DomainTag tag) {
  MomentSet ms;
  ms.spec = spec;
  ms.spec.n = 0;
  ms.spec.m = 0;
  ms.K = K;
  ms.tag = tag;
  ms.coeffs.assign(ms.n_count() * ms.m_count(), cplx{});
  return ms;
}

void MomentSet::check_complete() const {
  if (K < 0 || coeffs.size() != n_count() * m_count())
    throw Error(ErrorKind::IncompleteMomentSet, "coefficient count does not cover S(K)");
  for (const auto& c : coeffs)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw Error(ErrorKind::IncompleteMomentSet, "non-finite coefficient");
}

double MomentSet::max_abs() const {
  double mx = 0.0;
  for (const auto& c : coeffs) mx = std::max(mx, std::abs(c));
  return mx;
}

PolarField field_from_sinogram(const Sinogram& sino) {
  PolarField f;
  f.U = sino.U;
  f.V = sino.V;
  f.r = sino.r;
  f.warp = sino.warped() ? sino.warp_alpha : 1.0;
  f.gamma.resize(f.U);
  for (std::size_t u = 0; u < f.U; ++u)
    f.gamma[u] = sino.warped() ? static_cast<double>(u) / static_cast<double>(f.U) : f.r[u];
  f.origin_node = sino.warped();
  f.rim_zero = true;
  f.values.resize(sino.values.size());
  const double s = 1.0 / sino.radius;
  for (std::size_t i = 0; i < f.values.size(); ++i) f.values[i] = sino.values[i] * s;
  return f;
}

PolarField field_from_image(const GrayImage& img, const DiskDomain& domain, std::size_t U, std::size_t V) {
  if (U < 2 || V < 2) throw Error(ErrorKind::DegenerateGrid, "polar grid needs U,V >= 2");
  const GrayImage masked = mask_to_disk(img, domain);
  PolarField f;
  f.U = U;
  f.V = V;
  f.r = uniform_radii(U);
  f.gamma = f.r;
  f.warp = 1.0;
  f.origin_node = false;
  f.rim_zero = false;
  f.values.assign(U * V, 0.0);
  parallel_for(V, [&](std::size_t v) {
    const double th = 2.0 * kPi * static_cast<double>(v) / static_cast<double>(V);
    const double c = std::cos(th), s = std::sin(th);
    for (std::size_t u = 0; u < U; ++u) {
      const double rr = f.r[u] * domain.radius;
      f.values[u * V + v] = sample_bilinear(masked, domain.cx + rr * c, domain.cy - rr * s);
    }
  });
  return f;
}

std::size_t default_grid_size(std::size_t N, int K) {
  std::size_t g = std::max<std::size_t>(N, static_cast<std::size_t>(4 * std::max(K, 1)));
  return (g + 3) / 4 * 4;
}

std::size_t reconstruction_grid_size(std::size_t N, int K) { return std::max(default_grid_size(N, K), 2 * N); }

MomentSet moments_of_field(const PolarField& field, const BasisSpec& spec, int K, DomainTag tag,
                           RadialSource src) {
  spec.validate();
  check_resolution(field.U, field.V, K);
  const auto nodes = radial_nodes(field);
  const auto A = angular_spectrum(field, nodes, K);
  const auto kern = radial_kernels(field, nodes, spec, K, src);
  MomentSet ms = MomentSet::zeros(spec, K, tag);
  const std::size_t mc = ms.m_count();
  parallel_for(mc, [&](std::size_t mi) {
    for (int n = ms.n_min(); n <= K; ++n) {
      const auto& kn = kern[static_cast<std::size_t>(n - ms.n_min())];
      cplx acc{};
      for (std::size_t i = 0; i < nodes.size(); ++i) acc += nodes[i].weight * kn[i] * A[i * mc + mi];
      ms.coeffs[ms.index(n, static_cast<int>(mi) - K)] = acc;
    }
  });
  return ms;
}

std::complex<double> moment_single(const PolarField& field, const BasisSpec& spec) {
  spec.validate();
  const int K = std::max(std::abs(spec.n), std::abs(spec.m));
  const auto nodes = radial_nodes(field);
  const auto kern = radial_kernels(field, nodes, spec, std::max(K, spec.n), RadialSource::Recursive);
  const int n_min = spec.family == Family::Harmonic ? -std::max(K, spec.n) : 0;
  const auto& kn = kern[static_cast<std::size_t>(spec.n - n_min)];
  std::vector<cplx> tw(field.V);
  for (std::size_t v = 0; v < field.V; ++v) {
    const long long idx = ((static_cast<long long>(spec.m) * static_cast<long long>(v)) % static_cast<long long>(field.V) +
                           static_cast<long long>(field.V)) % static_cast<long long>(field.V);
    tw[v] = std::polar(2.0 * kPi / static_cast<double>(field.V), -2.0 * kPi * static_cast<double>(idx) / static_cast<double>(field.V));
  }
  cplx acc{};
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    long src = nodes[i].u;
    if (src < 0) {
      if (field.rim_zero) continue;
      src = static_cast<long>(field.U) - 1;
    }
    const double* row = &field.values[static_cast<std::size_t>(src) * field.V];
    cplx a{};
    for (std::size_t v = 0; v < field.V; ++v) a += row[v] * tw[v];
    acc += nodes[i].weight * kn[i] * a;
  }
  return acc;
}

double field_energy(const PolarField& field) {
  const auto nodes = radial_nodes(field);
  double total = 0.0;
  for (const auto& nd : nodes) {
    long src = nd.u;
    if (src < 0) {
      if (field.rim_zero) continue;
      src = static_cast<long>(field.U) - 1;
    }
    double meas;
    if (nd.origin) {
      // r dr/dgamma ~ r^(2 - w) / w near the origin.
      const double eps = 2.0 - field.warp;
      if (eps > 1e-12 || eps < -1e-12) continue;
      meas = 1.0 / field.warp;
    } else {
      meas = measure(field, nd);
    }
    double s = 0.0;
    for (std::size_t v = 0; v < field.V; ++v) {
      const double x = field.values[static_cast<std::size_t>(src) * field.V + v];
      s += x * x;
    }
    total += nd.weight * meas * s * 2.0 * kPi / static_cast<double>(field.V);
  }
  return total;
}

MomentSet fmr_direct(const Sinogram& sino, const BasisSpec& spec, int K) {
  return moments_of_field(field_from_sinogram(sino), spec, K, DomainTag::Radon, RadialSource::Direct);
}

MomentSet fmr_polynomial(const Sinogram& sino, const BasisSpec& spec, int K, OpCounter* counter) {
  if (spec.family != Family::Polynomial) throw Error(ErrorKind::ParamError, "fmr_polynomial needs the polynomial family");
  spec.validate();
  if (counter) {
    const PolarField f = field_from_sinogram(sino);
    std::vector<double> rr(f.r.begin(), f.r.end());
    radial_poly_recursive(spec.alpha, spec.p, spec.q, K, rr, counter);
  }
  return moments_of_field(field_from_sinogram(sino), spec, K, DomainTag::Radon, RadialSource::Recursive);
}

MomentSet fm_image(const GrayImage& img, const DiskDomain& domain, const BasisSpec& spec, int K,
                   std::size_t U, std::size_t V) {
  const std::size_t N = std::min(img.width(), img.height());
  if (U == 0) U = default_grid_size(N, K);
  if (V == 0) V = default_grid_size(N, K);
  check_resolution(U, V, K);
  return moments_of_field(field_from_image(img, domain, U, V), spec, K, DomainTag::Image,
                          RadialSource::Recursive);
}

MomentSet fmr_harmonic_fft(const Sinogram& sino, double alpha, int K) {
  if (!(alpha > 0.0)) throw Error(ErrorKind::ParamError, "alpha must be positive");
  if (!sino.warped() || std::abs(sino.warp_alpha - alpha) > 1e-12)
    throw Error(ErrorKind::GridMismatch, "sinogram is not on the warped grid for this alpha");
  if (sino.U != sino.V) throw Error(ErrorKind::GridMismatch, "FFT path needs U == V == M");
  const std::size_t M = sino.U;
  check_resolution(M, M, K);

  fftw_complex* buf = fftw_alloc_complex(M * M);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    plan = fftw_plan_dft_2d(static_cast<int>(M), static_cast<int>(M), buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
  }
  const double inv_r = 1.0 / sino.radius;
  const double norm = 1.0 / std::sqrt(2.0 * kPi * alpha);
  for (std::size_t u = 0; u < M; ++u) {
    double w;
    if (u == 0) {
      // gamma^(1/alpha - 1/2) at gamma = 0: zero below alpha = 2, one at 2,
      // divergent (row dropped) above.
      w = alpha == 2.0 ? 0.5 * norm : 0.0;
    } else {
      w = std::pow(static_cast<double>(u) / static_cast<double>(M), 1.0 / alpha - 0.5) * norm;
    }
    for (std::size_t v = 0; v < M; ++v) {
      buf[u * M + v][0] = w * sino.at(u, v) * inv_r;
      buf[u * M + v][1] = 0.0;
    }
  }
  fftw_execute(plan);
  MomentSet ms = MomentSet::zeros(BasisSpec{Family::Harmonic, alpha, 0, 0, 3.0, 2.0}, K, DomainTag::Radon);
  const double scale = 2.0 * kPi / static_cast<double>(M * M);
  const long Ml = static_cast<long>(M);
  for (int n = -K; n <= K; ++n) {
    const std::size_t ni = static_cast<std::size_t>(((n % Ml) + Ml) % Ml);
    for (int m = -K; m <= K; ++m) {
      const std::size_t mi = static_cast<std::size_t>(((m % Ml) + Ml) % Ml);
      ms.at(n, m) = scale * cplx(buf[ni * M + mi][0], buf[ni * M + mi][1]);
    }
  }
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
  fftw_free(buf);
  return ms;
}

namespace {

// table[n - n_min][i] = R_n(r[i]); r = 0 with a divergent limit evaluates to 0.
std::vector<std::vector<cplx>> radial_values(const BasisSpec& spec, int K, const std::vector<double>& r) {
  const int n_min = spec.family == Family::Harmonic ? -K : 0;
  std::vector<std::vector<cplx>> t(static_cast<std::size_t>(K - n_min + 1), std::vector<cplx>(r.size()));
  if (spec.family == Family::Harmonic) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (r[i] == 0.0 && spec.alpha < 2.0) continue;
      for (int n = n_min; n <= K; ++n) t[static_cast<std::size_t>(n - n_min)][i] = radial_harmonic(spec.alpha, n, r[i]);
    }
  } else {
    const auto p = radial_poly_recursive(spec.alpha, spec.p, spec.q, K, r);
    for (int n = 0; n <= K; ++n)
      for (std::size_t i = 0; i < r.size(); ++i)
        t[static_cast<std::size_t>(n)][i] = std::isfinite(p[n][i]) ? p[n][i] : 0.0;
  }
  return t;
}

}  // namespace

std::pair<Sinogram, GrayImage> reconstruct(const MomentSet& ms, std::size_t U, std::size_t V,
                                           std::size_t out_size, RampWindow window) {
  ms.check_complete();
  if (ms.tag != DomainTag::Radon) throw Error(ErrorKind::ParamError, "reconstruct expects radon-domain moments");
  Sinogram sino = make_sinogram(U, V, 0.0, static_cast<double>(out_size) / 2.0);
  const int K = ms.K;
  const auto R = radial_values(ms.spec, K, sino.r);
  const std::size_t mc = ms.m_count();
  parallel_for(U, [&](std::size_t u) {
    std::vector<cplx> B(mc, cplx{});
    for (int m = -K; m <= K; ++m)
      for (int n = ms.n_min(); n <= K; ++n)
        B[static_cast<std::size_t>(m + K)] += ms.at(n, m) * R[static_cast<std::size_t>(n - ms.n_min())][u];
    for (std::size_t v = 0; v < V; ++v) {
      cplx acc{};
      for (int m = -K; m <= K; ++m) acc += B[static_cast<std::size_t>(m + K)] * angular(m, sino.theta[v]);
      sino.at(u, v) = acc.real() * sino.radius;
    }
  });
  GrayImage img = radon_inverse(sino, out_size, window);
  return {std::move(sino), std::move(img)};
}

GrayImage reconstruct_image(const MomentSet& ms, std::size_t out_size) {
  ms.check_complete();
  GrayImage out(out_size, out_size);
  const double c = (static_cast<double>(out_size) - 1.0) / 2.0;
  const double half = static_cast<double>(out_size) / 2.0;
  std::vector<double> rr;
  std::vector<std::size_t> where;
  std::vector<double> th;
  for (std::size_t row = 0; row < out_size; ++row) {
    for (std::size_t col = 0; col < out_size; ++col) {
      const double x = (static_cast<double>(col) - c) / half;
      const double y = (c - static_cast<double>(row)) / half;
      const double r = std::sqrt(x * x + y * y);
      if (r > 1.0) continue;
      rr.push_back(r);
      th.push_back(std::atan2(y, x));
      where.push_back(row * out_size + col);
    }
  }
  const int K = ms.K;
  const auto R = radial_values(ms.spec, K, rr);
  auto px = out.pixels();
  parallel_for(rr.size(), [&](std::size_t i) {
    cplx acc{};
    const cplx step = std::polar(1.0, th[i]);
    cplx e = std::polar(1.0, -static_cast<double>(K) * th[i]);
    for (int m = -K; m <= K; ++m) {
      cplx b{};
      for (int n = ms.n_min(); n <= K; ++n) b += ms.at(n, m) * R[static_cast<std::size_t>(n - ms.n_min())][i];
      acc += b * e;
      e *= step;
    }
    px[where[i]] = std::clamp(acc.real(), 0.0, 1.0);
  });
  return out;
}

namespace {
constexpr const char* kMomentMagic = "FMRMOM1";

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}
}  // namespace

void write_moments(const MomentSet& ms, std::ostream& out) {
  ms.check_complete();
  const double floor = 1e-12 * ms.max_abs();
  out << kMomentMagic << '\n';
  out << "family " << to_string(ms.spec.family) << '\n';
  out << "alpha " << fmt17(ms.spec.alpha) << '\n';
  out << "p " << fmt17(ms.spec.p) << '\n';
  out << "q " << fmt17(ms.spec.q) << '\n';
  out << "K " << ms.K << '\n';
  out << "domain " << (ms.tag == DomainTag::Radon ? "radon" : "image") << '\n';
  out << "coefficients " << ms.coeffs.size() << '\n';
  for (int n = ms.n_min(); n <= ms.n_max(); ++n) {
    for (int m = -ms.K; m <= ms.K; ++m) {
      cplx z = ms.at(n, m);
      double re = std::abs(z.real()) < floor ? 0.0 : z.real();
      double im = std::abs(z.imag()) < floor ? 0.0 : z.imag();
      // Normalise -0 so equal sets produce equal bytes.
      re += 0.0;
      im += 0.0;
      out << n << ' ' << m << ' ' << fmt17(re) << ' ' << fmt17(im) << '\n';
    }
  }
}

void save_moments(const MomentSet& ms, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::UnreadableFile, "cannot write " + path.string());
  write_moments(ms, out);
}

MomentSet read_moments(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kMomentMagic) throw Error(ErrorKind::ParseError, "missing FMRMOM1 header");
  BasisSpec spec;
  int K = -1;
  DomainTag tag = DomainTag::Radon;
  std::size_t count = 0;
  auto expect = [&](const std::string& key) {
    if (!std::getline(in, line)) throw Error(ErrorKind::ParseError, "truncated header");
    std::istringstream ss(line);
    std::string k, v;
    ss >> k >> v;
    if (k != key) throw Error(ErrorKind::ParseError, "expected '" + key + "' got '" + k + "'");
    return v;
  };
  try {
    spec.family = parse_family(expect("family"));
    spec.alpha = std::stod(expect("alpha"));
    spec.p = std::stod(expect("p"));
    spec.q = std::stod(expect("q"));
    K = std::stoi(expect("K"));
    const std::string d = expect("domain");
    if (d != "radon" && d != "image") throw Error(ErrorKind::ParseError, "bad domain tag");
    tag = d == "radon" ? DomainTag::Radon : DomainTag::Image;
    count = static_cast<std::size_t>(std::stoul(expect("coefficients")));
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::ParseError, "malformed header value");
  }
  if (K < 0) throw Error(ErrorKind::ParseError, "negative K");
  MomentSet ms = MomentSet::zeros(spec, K, tag);
  if (count != ms.coeffs.size()) throw Error(ErrorKind::IncompleteMomentSet, "coefficient count does not cover S(K)");
  std::vector<bool> seen(count, false);
  for (std::size_t i = 0; i < count; ++i) {
    int n, m;
    double re, im;
    if (!(in >> n >> m >> re >> im)) throw Error(ErrorKind::IncompleteMomentSet, "truncated coefficient list");
    if (!ms.contains(n, m)) throw Error(ErrorKind::ParseError, "index outside S(K)");
    ms.at(n, m) = {re, im};
    seen[ms.index(n, m)] = true;
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end())
    throw Error(ErrorKind::IncompleteMomentSet, "duplicate or missing (n,m)");
  return ms;
}

MomentSet load_moments(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::UnreadableFile, path.string());
  return read_moments(in);
}

}  // namespace fmr
