#include "fmr/eval.hpp"

#include "fmr/error.hpp"
#include "fmr/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <thread>

namespace fmr {

namespace {

constexpr double kPi = std::numbers::pi;

void same_dims(const GrayImage& a, const GrayImage& b) {
  if (a.width() != b.width() || a.height() != b.height())
    throw Error(ErrorKind::DimMismatch, "images differ in size");
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::uint64_t splitmix(std::uint64_t& s) {
  std::uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

GrayImage from_field(std::size_t N, const std::vector<double>& f) {
  std::vector<double> px(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) px[i] = std::clamp(f[i], 0.0, 1.0);
  return GrayImage(N, N, std::move(px));
}

}  // namespace

double mse_reconstruction_error(const GrayImage& a, const GrayImage& b) {
  same_dims(a, b);
  const DiskDomain d = disk_mask(a);
  double s = 0.0;
  std::size_t n = 0;
  for (std::size_t r = 0; r < a.height(); ++r)
    for (std::size_t c = 0; c < a.width(); ++c) {
      if (!d.contains_pixel(r, c)) continue;
      const double e = a.at(r, c) - b.at(r, c);
      s += e * e;
      ++n;
    }
  return n ? s / static_cast<double>(n) : 0.0;
}

double ssim(const GrayImage& a, const GrayImage& b) {
  same_dims(a, b);
  constexpr int kWin = 11;
  constexpr double kSigma = 1.5;
  constexpr double C1 = 0.01 * 0.01, C2 = 0.03 * 0.03;
  if (a.width() < kWin || a.height() < kWin) throw Error(ErrorKind::TooSmall, "ssim needs sides >= 11");
  double g[kWin * kWin];
  double gs = 0.0;
  for (int i = 0; i < kWin; ++i)
    for (int j = 0; j < kWin; ++j) {
      const double di = i - kWin / 2, dj = j - kWin / 2;
      g[i * kWin + j] = std::exp(-(di * di + dj * dj) / (2.0 * kSigma * kSigma));
      gs += g[i * kWin + j];
    }
  for (double& x : g) x /= gs;

  const DiskDomain d = disk_mask(a);
  const std::size_t rows = a.height() - kWin + 1, cols = a.width() - kWin + 1;
  double total = 0.0;
  std::size_t count = 0;
  for (std::size_t r0 = 0; r0 < rows; ++r0) {
    for (std::size_t c0 = 0; c0 < cols; ++c0) {
      if (!d.contains_pixel(r0 + kWin / 2, c0 + kWin / 2)) continue;
      double ma = 0, mb = 0, aa = 0, bb = 0, ab = 0;
      for (int i = 0; i < kWin; ++i)
        for (int j = 0; j < kWin; ++j) {
          const double w = g[i * kWin + j];
          const double x = a.at(r0 + i, c0 + j), y = b.at(r0 + i, c0 + j);
          ma += w * x;
          mb += w * y;
          aa += w * x * x;
          bb += w * y * y;
          ab += w * x * y;
        }
      const double va = std::max(0.0, aa - ma * ma), vb = std::max(0.0, bb - mb * mb);
      const double cov = ab - ma * mb;
      total += ((2 * ma * mb + C1) * (2 * cov + C2)) / ((ma * ma + mb * mb + C1) * (va + vb + C2));
      ++count;
    }
  }
  if (count == 0) throw Error(ErrorKind::TooSmall, "no ssim window inside the disk");
  return total / static_cast<double>(count);
}

double psnr(const GrayImage& a, const GrayImage& b) {
  same_dims(a, b);
  double s = 0.0;
  const auto pa = a.pixels(), pb = b.pixels();
  for (std::size_t i = 0; i < pa.size(); ++i) s += (pa[i] - pb[i]) * (pa[i] - pb[i]);
  const double mse = s / static_cast<double>(pa.size());
  if (mse <= 0.0) return kPsnrCap;
  return std::min(kPsnrCap, 10.0 * std::log10(1.0 / mse));
}

GrayImage resize(const GrayImage& img, std::size_t width, std::size_t height) {
  if (img.width() == width && img.height() == height) return img;
  GrayImage out(width, height);
  const double sx = static_cast<double>(img.width()) / static_cast<double>(width);
  const double sy = static_cast<double>(img.height()) / static_cast<double>(height);
  const double maxc = static_cast<double>(img.width() - 1), maxr = static_cast<double>(img.height() - 1);
  for (std::size_t r = 0; r < height; ++r)
    for (std::size_t c = 0; c < width; ++c) {
      const double x = std::clamp((static_cast<double>(c) + 0.5) * sx - 0.5, 0.0, maxc);
      const double y = std::clamp((static_cast<double>(r) + 0.5) * sy - 0.5, 0.0, maxr);
      out.at(r, c) = std::clamp(sample_bilinear(img, x, y), 0.0, 1.0);
    }
  return out;
}

GrayImage disk_indicator(std::size_t N) {
  GrayImage img(N, N);
  const DiskDomain d = disk_mask(img);
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t c = 0; c < N; ++c) img.at(r, c) = d.contains_pixel(r, c) ? 1.0 : 0.0;
  return img;
}

GrayImage smooth_blob(std::size_t N) {
  GrayImage img(N, N);
  const double h = static_cast<double>(N) / 2.0, c = (static_cast<double>(N) - 1.0) / 2.0;
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t col = 0; col < N; ++col) {
      const double x = (static_cast<double>(col) - c) / h - 0.2;
      const double y = (c - static_cast<double>(r)) / h - 0.1;
      img.at(r, col) = 0.9 * std::exp(-(x * x + 1.5 * y * y) / 0.12);
    }
  return img;
}

GrayImage synthetic_portrait(std::size_t N, int variant) {
  const double h = static_cast<double>(N) / 2.0, c = (static_cast<double>(N) - 1.0) / 2.0;
  const bool alt = variant % 2 != 0;
  const double head_w = alt ? 0.30 : 0.36, head_h = alt ? 0.42 : 0.40;
  const double head_y = alt ? 0.22 : 0.18;
  const double skin = alt ? 0.62 : 0.75, hair = alt ? 0.12 : 0.35, cloth = alt ? 0.45 : 0.25;
  std::vector<double> f(N * N);
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t col = 0; col < N; ++col) {
      const double x = (static_cast<double>(col) - c) / h;
      const double y = (c - static_cast<double>(r)) / h;
      double v = 0.15 + 0.1 * (y + 1.0) / 2.0;  // backdrop gradient
      // Shoulders.
      const double sy = y + 0.95;
      if (sy < 0.55 && (x * x) / 0.64 + (sy * sy) / 0.30 < 1.0) v = cloth;
      // Neck.
      if (std::abs(x) < 0.1 && y < head_y - head_h + 0.05 && y > -0.55) v = skin * 0.9;
      // Head.
      const double hx = x / head_w, hy = (y - head_y) / head_h;
      const double rh = hx * hx + hy * hy;
      if (rh < 1.0) {
        v = skin;
        if (hy > 0.35 || (rh > 0.8 && hy > -0.1)) v = hair;
        for (double ex : {-0.38, 0.38}) {
          const double dx = (hx - ex) / 0.16, dy = (hy - 0.12) / 0.08;
          if (dx * dx + dy * dy < 1.0) v = 0.05;
        }
        const double mx = hx / 0.35, my = (hy + 0.45) / 0.06;
        if (mx * mx + my * my < 1.0) v = alt ? 0.3 : 0.4;
      }
      f[r * N + col] = v;
    }
  return from_field(N, f);
}

std::vector<GrayImage> synthetic_suite(std::size_t count, std::size_t N, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U01(0.0, 1.0);
  std::vector<GrayImage> out;
  const double h = static_cast<double>(N) / 2.0, c = (static_cast<double>(N) - 1.0) / 2.0;
  struct Blob {
    double x, y, sx, sy, amp;
  };
  struct Bar {
    double nx, ny, off, width, amp;
  };
  for (std::size_t k = 0; k < count; ++k) {
    // Mid-tone backdrop with a linear shading, bright and dark blobs, one
    // ring and a few soft bars.
    const double base = 0.25 + 0.4 * U01(rng);
    const double ga = 2.0 * kPi * U01(rng), gs = 0.15 * U01(rng);
    std::vector<Blob> blobs;
    const int nb = 3 + static_cast<int>(U01(rng) * 4.0);
    for (int i = 0; i < nb; ++i) {
      const double rad = 0.75 * std::sqrt(U01(rng)), ang = 2.0 * kPi * U01(rng);
      const double sign = U01(rng) < 0.35 ? -1.0 : 1.0;
      blobs.push_back({rad * std::cos(ang), rad * std::sin(ang), 0.06 + 0.22 * U01(rng), 0.06 + 0.22 * U01(rng),
                       sign * (0.2 + 0.35 * U01(rng))});
    }
    std::vector<Bar> bars;
    const int nbar = static_cast<int>(U01(rng) * 3.0);
    for (int i = 0; i < nbar; ++i) {
      const double a = kPi * U01(rng);
      bars.push_back({std::cos(a), std::sin(a), 1.2 * U01(rng) - 0.6, 0.03 + 0.08 * U01(rng),
                      (U01(rng) < 0.5 ? -1.0 : 1.0) * (0.15 + 0.2 * U01(rng))});
    }
    const double ring_r = 0.25 + 0.55 * U01(rng), ring_amp = 0.3 * U01(rng) - 0.1;
    std::vector<double> f(N * N);
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t col = 0; col < N; ++col) {
        const double x = (static_cast<double>(col) - c) / h, y = (c - static_cast<double>(r)) / h;
        double v = base + gs * (x * std::cos(ga) + y * std::sin(ga));
        v += ring_amp * std::exp(-std::pow((std::hypot(x, y) - ring_r) / 0.05, 2.0));
        for (const Blob& b : blobs) {
          const double dx = (x - b.x) / b.sx, dy = (y - b.y) / b.sy;
          v += b.amp * std::exp(-0.5 * (dx * dx + dy * dy));
        }
        for (const Bar& b : bars) {
          const double d = (x * b.nx + y * b.ny - b.off) / b.width;
          v += b.amp * std::exp(-0.5 * d * d);
        }
        f[r * N + col] = std::clamp(v, 0.02, 0.98);
      }
    out.push_back(from_field(N, f));
  }
  return out;
}

std::vector<NamedImage> load_dataset(const std::filesystem::path& folder, std::size_t side) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(folder)) throw Error(ErrorKind::UnreadableFile, "not a folder: " + folder.string());
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(folder)) {
    if (!e.is_regular_file()) continue;
    std::string ext = e.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char ch) { return std::tolower(ch); });
    if (ext == ".png" || ext == ".pgm") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw Error(ErrorKind::EmptyDataset, "no PNG/PGM images in " + folder.string());
  std::vector<NamedImage> out;
  for (const auto& f : files) out.push_back({f.stem().string(), resize(load_gray(f), side, side)});
  return out;
}

BasisSpec Method::spec() const {
  BasisSpec s;
  s.family = family;
  s.alpha = alpha;
  s.p = p;
  s.q = q;
  return s;
}

MomentSet method_moments(const GrayImage& img, const Method& method) {
  if (method.K < 1) throw Error(ErrorKind::ParamError, "K must be >= 1");
  const BasisSpec spec = method.spec();
  spec.validate();
  const DiskDomain domain = disk_mask(img);
  const std::size_t N = std::min(img.width(), img.height());
  const std::size_t M = method.grid ? method.grid : default_grid_size(N, method.K);
  if (method.rep == Representation::FM) return fm_image(img, domain, spec, method.K, M, M);
  if (method.family == Family::Harmonic)
    return fmr_harmonic_fft(radon_forward_warped(img, domain, M, M, method.alpha), method.alpha, method.K);
  return fmr_polynomial(radon_forward(img, domain, M, M), spec, method.K);
}

FeatureVector method_features(const GrayImage& img, const Method& method) {
  return magnitude_features(method_moments(img, method), method.weighting);
}

HistogramReport run_histogram_study(const std::vector<NamedImage>& images, const std::vector<double>& variances,
                                    const Method& method, int n, int m, std::uint64_t seed) {
  if (images.size() < 2) throw Error(ErrorKind::EmptyDataset, "histogram study needs at least two images");
  if (variances.empty()) throw Error(ErrorKind::ParamError, "no noise variances");
  Method meth = method;
  meth.K = std::max({meth.K, std::abs(n), std::abs(m)});
  HistogramReport rep;
  rep.variances = variances;
  rep.values.assign(images.size(), std::vector<double>(variances.size()));
  for (std::size_t i = 0; i < images.size(); ++i) rep.names.push_back(images[i].name);
  for (std::size_t i = 0; i < images.size(); ++i) {
    for (std::size_t j = 0; j < variances.size(); ++j) {
      const GrayImage noisy = variances[j] > 0.0
                                  ? add_gaussian_noise(images[i].image, variances[j], trial_seed(seed, 0, j, 0))
                                  : images[i].image;
      const MomentSet ms = method_moments(noisy, meth);
      if (!ms.contains(n, m)) throw Error(ErrorKind::ParamError, "(n,m) outside the moment set");
      rep.values[i][j] = std::abs(ms.at(n, m));
    }
  }
  std::vector<double> means;
  for (const auto& row : rep.values) {
    const auto [lo, hi] = std::minmax_element(row.begin(), row.end());
    rep.within_spread.push_back(*hi - *lo);
    rep.max_within = std::max(rep.max_within, *hi - *lo);
    double s = 0.0;
    for (double v : row) s += v;
    means.push_back(s / static_cast<double>(row.size()));
  }
  rep.min_between = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < means.size(); ++a)
    for (std::size_t b = a + 1; b < means.size(); ++b)
      rep.min_between = std::min(rep.min_between, std::abs(means[a] - means[b]));
  return rep;
}

void write_histogram_csv(const HistogramReport& rep, std::ostream& out) {
  out << "image";
  for (double v : rep.variances) out << ",var_" << fmt(v);
  out << ",within_spread\n";
  for (std::size_t i = 0; i < rep.names.size(); ++i) {
    out << rep.names[i];
    for (double v : rep.values[i]) out << ',' << fmt(v);
    out << ',' << fmt(rep.within_spread[i]) << '\n';
  }
  out << "# max_within " << fmt(rep.max_within) << " min_between " << fmt(rep.min_between) << '\n';
}

std::vector<ReconstructionRow> run_reconstruction_study(const GrayImage& img, double noise_var,
                                                        std::uint64_t seed, const Method& base,
                                                        const std::vector<int>& Ks) {
  if (noise_var < 0.0) throw Error(ErrorKind::NegativeVariance, "noise variance must be >= 0");
  if (img.width() != img.height()) throw Error(ErrorKind::DimMismatch, "reconstruction study needs a square image");
  const std::size_t N = img.width();
  const GrayImage noisy = noise_var > 0.0 ? add_gaussian_noise(img, noise_var, seed) : img;
  std::vector<ReconstructionRow> rows;
  for (int K : Ks) {
    Method fm = base, fmr = base;
    fm.rep = Representation::FM;
    fmr.rep = Representation::FMR;
    fm.K = fmr.K = K;
    const GrayImage rec_fm = reconstruct_image(method_moments(noisy, fm), N);
    const std::size_t R = base.grid ? std::max(base.grid, 2 * N) : reconstruction_grid_size(N, K);
    const GrayImage rec_fmr = reconstruct(method_moments(noisy, fmr), R, R, N).second;
    ReconstructionRow row;
    row.K = K;
    row.msre_fm = mse_reconstruction_error(img, rec_fm);
    row.ssim_fm = ssim(img, rec_fm);
    row.msre_fmr = mse_reconstruction_error(img, rec_fmr);
    row.ssim_fmr = ssim(img, rec_fmr);
    rows.push_back(row);
  }
  return rows;
}

void write_reconstruction_csv(const std::vector<ReconstructionRow>& rows, std::ostream& out) {
  out << "K,msre_fm,ssim_fm,msre_fmr,ssim_fmr\n";
  for (const auto& r : rows)
    out << r.K << ',' << fmt(r.msre_fm) << ',' << fmt(r.ssim_fm) << ',' << fmt(r.msre_fmr) << ',' << fmt(r.ssim_fmr)
        << '\n';
}

void BenchmarkConfig::validate() const {
  if (methods.empty()) throw Error(ErrorKind::ParamError, "no methods configured");
  for (const auto& m : methods) {
    if (m.K < 1) throw Error(ErrorKind::ParamError, "K must be >= 1");
    m.spec().validate();
  }
  if (variances.empty()) throw Error(ErrorKind::ParamError, "no variances configured");
  for (double v : variances)
    if (v < 0.0 || v > 1.0) throw Error(ErrorKind::ParamError, "variance outside [0,1]");
  if (angles.empty()) throw Error(ErrorKind::ParamError, "no angles configured");
  for (double a : angles)
    if (a < 0.0 || a >= 360.0) throw Error(ErrorKind::ParamError, "angle outside [0,360)");
}

double AccuracyTable::percent(std::size_t method, std::size_t variance) const {
  if (trials_per_cell == 0) return 0.0;
  return 100.0 * static_cast<double>(correct[method][variance]) / static_cast<double>(trials_per_cell);
}

double AccuracyTable::mean_percent(std::size_t method, const std::vector<double>& which) const {
  std::size_t hits = 0, cells = 0;
  for (double w : which)
    for (std::size_t j = 0; j < variances.size(); ++j)
      if (std::abs(variances[j] - w) < 1e-12) {
        hits += correct[method][j];
        ++cells;
      }
  if (cells == 0 || trials_per_cell == 0) return 0.0;
  return 100.0 * static_cast<double>(hits) / static_cast<double>(cells * trials_per_cell);
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  std::uint64_t s = seed;
  std::uint64_t h = splitmix(s);
  for (std::uint64_t x : {a, b, c}) {
    s = h ^ x;
    h = splitmix(s);
  }
  return h;
}

AccuracyTable run_recognition_benchmark(const BenchmarkConfig& cfg, const std::vector<NamedImage>& images) {
  cfg.validate();
  if (images.size() < 2) throw Error(ErrorKind::EmptyDataset, "recognition needs at least two classes");
  const std::size_t nm = cfg.methods.size(), nv = cfg.variances.size(), na = cfg.angles.size();
  const std::size_t ni = images.size();

  std::vector<std::vector<LabeledFeatures>> train(nm);
  for (std::size_t k = 0; k < nm; ++k)
    for (std::size_t i = 0; i < ni; ++i)
      train[k].push_back({static_cast<int>(i), method_features(images[i].image, cfg.methods[k])});

  // hit[trial][method], trial = (i, j, a) flattened; each worker writes its own slot.
  const std::size_t trials = ni * nv * na;
  std::vector<std::uint8_t> hit(trials * nm, 0);
  const std::size_t saved = thread_count();
  const std::size_t outer = saved;
  set_thread_count(1);
  {
    // Trials run in parallel; the transforms inside stay serial.
    const std::size_t workers = std::min(outer, trials);
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    auto work = [&] {
      for (std::size_t t; (t = next.fetch_add(1)) < trials;) {
        const std::size_t i = t / (nv * na), j = (t / na) % nv, a = t % na;
        GrayImage deg = rotate(images[i].image, cfg.angles[a]);
        if (cfg.variances[j] > 0.0) deg = add_gaussian_noise(deg, cfg.variances[j], trial_seed(cfg.seed, i, j, a));
        for (std::size_t k = 0; k < nm; ++k) {
          const int label = min_distance_classify(train[k], method_features(deg, cfg.methods[k]));
          hit[t * nm + k] = label == static_cast<int>(i) ? 1 : 0;
        }
      }
    };
    if (workers <= 1) {
      work();
    } else {
      for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
      for (auto& th : pool) th.join();
    }
  }
  set_thread_count(saved);

  AccuracyTable table;
  for (const auto& m : cfg.methods) table.methods.push_back(m.name);
  table.variances = cfg.variances;
  table.trials_per_cell = ni * na;
  table.correct.assign(nm, std::vector<std::size_t>(nv, 0));
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t j = (t / na) % nv;
    for (std::size_t k = 0; k < nm; ++k) table.correct[k][j] += hit[t * nm + k];
  }
  return table;
}

void write_accuracy_csv(const AccuracyTable& t, std::ostream& out) {
  out << "method";
  for (double v : t.variances) out << ",var_" << fmt(v);
  out << ",trials_per_cell\n";
  for (std::size_t k = 0; k < t.methods.size(); ++k) {
    out << t.methods[k];
    for (std::size_t j = 0; j < t.variances.size(); ++j) out << ',' << fmt(t.percent(k, j));
    out << ',' << t.trials_per_cell << '\n';
  }
}

}  // namespace fmr
