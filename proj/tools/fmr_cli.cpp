#include "fmr/basis.hpp"
#include "fmr/error.hpp"
#include "fmr/eval.hpp"
#include "fmr/explicit_path.hpp"
#include "fmr/image.hpp"
#include "fmr/invariants.hpp"
#include "fmr/moments.hpp"
#include "fmr/parallel.hpp"
#include "fmr/radon.hpp"
#include "fmr/watermark.hpp"

#include <CLI11.hpp>

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace fmr;

namespace {

struct Global {
  std::size_t threads = 1;
  std::uint64_t seed = 1;
  double noise_var = 0.0;
  double angle = 0.0;
};

struct BasisOpts {
  std::string family = "harmonic";
  double alpha = 1.0;
  double p = 3.0;
  double q = 2.0;
  int K = 10;
  std::size_t grid = 0;

  BasisSpec spec() const { return BasisSpec{parse_family(family), alpha, 0, 0, p, q}; }
};

void add_basis(CLI::App* app, BasisOpts& b, bool with_k = true) {
  app->add_option("--family", b.family, "harmonic | polynomial")->capture_default_str();
  app->add_option("--alpha", b.alpha, "fractional order")->capture_default_str();
  app->add_option("--p", b.p, "polynomial parameter p (p - q > -1, p > 0)")->capture_default_str();
  app->add_option("--q", b.q, "polynomial parameter q (q > 0)")->capture_default_str();
  if (with_k) {
    app->add_option("-k,--k", b.K, "maximum order K of S(K)")->capture_default_str();
    app->add_option("--grid,-M", b.grid, "polar grid size M (0: smallest multiple of 4 >= max(N, 4K))")
        ->capture_default_str();
  }
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// FNV-1a over the resolved configuration.
std::string fingerprint(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

std::string config_line(CLI::App& app, const CLI::App* sub) {
  std::string cfg = app.config_to_str(true, false);
  std::string flat;
  for (char c : cfg) flat += c == '\n' ? ' ' : c;
  while (!flat.empty() && flat.back() == ' ') flat.pop_back();
  std::string name = sub->get_name();
  for (const auto* s : sub->get_subcommands()) name += " " + s->get_name();
  return "config cmd=" + name + " fingerprint=" + fingerprint(flat) + " " + flat;
}

GrayImage degrade(GrayImage img, const Global& g) {
  if (g.angle != 0.0) img = rotate(img, g.angle);
  if (g.noise_var > 0.0) img = add_gaussian_noise(img, g.noise_var, g.seed);
  return img;
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream out(p);
  if (!out) throw Error(ErrorKind::UnreadableFile, "cannot write " + p.string());
  return out;
}

std::vector<NamedImage> dataset_or_suite(const std::string& folder, std::size_t count, std::size_t side,
                                         std::uint64_t seed) {
  if (!folder.empty()) return load_dataset(folder, side);
  std::vector<NamedImage> out;
  const auto imgs = synthetic_suite(count, side, seed);
  for (std::size_t i = 0; i < imgs.size(); ++i) out.push_back({"synthetic" + std::to_string(i), imgs[i]});
  return out;
}

Method make_method(const BasisOpts& b, Representation rep, Weighting w) {
  Method m;
  m.rep = rep;
  m.family = parse_family(b.family);
  m.alpha = b.alpha;
  m.p = b.p;
  m.q = b.q;
  m.K = b.K;
  m.grid = b.grid;
  m.weighting = w;
  m.name = std::string(rep == Representation::FMR ? "FMR" : "FM") + "-" + b.family;
  return m;
}

Weighting parse_weighting(const std::string& s) {
  if (s == "none") return Weighting::None;
  if (s == "n+1") return Weighting::NPlus1;
  throw Error(ErrorKind::ParamError, "unknown weighting '" + s + "'");
}

Representation parse_domain(const std::string& s) {
  if (s == "radon") return Representation::FMR;
  if (s == "image") return Representation::FM;
  throw Error(ErrorKind::ParamError, "unknown domain '" + s + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fractional-order moments in Radon space (FMR) and their image-domain counterpart (FM)."};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_config("--config", "", "key = value file; [subcommand] sections; command-line flags take precedence");
  Global g;
  app.add_option("--threads", g.threads, "worker threads; results do not depend on it")->capture_default_str();
  app.add_option("--seed", g.seed, "seed for noise and synthetic data")->capture_default_str();
  app.add_option("--noise-var", g.noise_var, "Gaussian noise variance applied to loaded images")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  app.add_option("--angle", g.angle, "CCW rotation in degrees applied to loaded images")->capture_default_str();

  // radon ---------------------------------------------------------------------
  auto* radon = app.add_subcommand("radon", "forward Radon transform of an image");
  std::string r_in, r_out, r_csv;
  std::size_t r_U = 128, r_V = 128;
  double r_warp = 0.0;
  radon->add_option("-i,--input", r_in, "PNG/PGM image")->required();
  radon->add_option("-o,--output", r_out, "sinogram file (FMRSINO1)")->required();
  radon->add_option("--csv", r_csv, "also write r,theta,value CSV");
  radon->add_option("-U", r_U, "radial samples")->capture_default_str();
  radon->add_option("-V", r_V, "angular samples over the full turn")->capture_default_str();
  radon->add_option("--warp", r_warp, "alpha of the warped radial grid (0: uniform)")->capture_default_str();

  // moments -------------------------------------------------------------------
  auto* mom = app.add_subcommand("moments", "FMR / FM coefficients over S(K)");
  std::string m_in, m_out, m_method = "direct", m_domain = "radon";
  bool m_fast = false;
  BasisOpts mb;
  mom->add_option("-i,--input", m_in, "PNG/PGM image or .sino sinogram")->required();
  mom->add_option("-o,--output", m_out, "moment file (FMRMOM1)")->required();
  mom->add_option("--method", m_method, "direct | fft | poly")->capture_default_str();
  mom->add_flag("--fast", m_fast, "fft for harmonic, poly for polynomial");
  mom->add_option("--domain", m_domain, "radon (FMR) | image (FM)")->capture_default_str();
  add_basis(mom, mb);

  // reconstruct ---------------------------------------------------------------
  auto* rec = app.add_subcommand("reconstruct", "image from a moment file");
  std::string c_in, c_out, c_sino, c_filter = "ramlak";
  std::size_t c_size = 128, c_grid = 0;
  rec->add_option("-i,--input", c_in, "moment file")->required();
  rec->add_option("-o,--output", c_out, "PNG/PGM image")->required();
  rec->add_option("--size", c_size, "output side in pixels")->capture_default_str();
  rec->add_option("--grid,-M", c_grid, "sinogram grid (0: max(2 size, 4K), multiple of 4)")->capture_default_str();
  rec->add_option("--filter", c_filter, "ramlak | shepp-logan | cosine | hann")->capture_default_str();
  rec->add_option("--sinogram", c_sino, "also write the series sinogram");

  // features ------------------------------------------------------------------
  auto* feat = app.add_subcommand("features", "rotation-invariant magnitude features");
  std::string f_in, f_out, f_blob, f_domain = "radon", f_weight = "none";
  BasisOpts fb;
  feat->add_option("-i,--input", f_in, "PNG/PGM image")->required();
  feat->add_option("-o,--output", f_out, "CSV (header = n/m layout)")->required();
  feat->add_option("--blob", f_blob, "also write the binary blob");
  feat->add_option("--domain", f_domain, "radon | image")->capture_default_str();
  feat->add_option("--weighting", f_weight, "none | n+1 (radon domain only)")->capture_default_str();
  add_basis(feat, fb);

  // xval-explicit -------------------------------------------------------------
  auto* xval = app.add_subcommand("xval-explicit", "explicit series vs implicit quadrature");
  std::string x_in, x_out;
  BasisOpts xb;
  xb.alpha = 2.0;
  xb.p = 4.0;
  int x_nmax = 3, x_mmax = 3;
  SeriesTruncation xt;
  xt.k_max = 80;
  xval->add_option("-i,--input", x_in, "PNG/PGM image (default: synthetic blob, 128 px)");
  xval->add_option("-o,--output", x_out, "CSV report (default: stdout)");
  xval->add_option("--family", xb.family, "harmonic | polynomial")->capture_default_str();
  xval->add_option("--alpha", xb.alpha, "must be an even integer")->capture_default_str();
  xval->add_option("--p", xb.p)->capture_default_str();
  xval->add_option("--q", xb.q)->capture_default_str();
  xval->add_option("--n-max", x_nmax)->capture_default_str();
  xval->add_option("--m-max", x_mmax)->capture_default_str();
  xval->add_option("--k-max", xt.k_max, "harmonic series truncation")->capture_default_str();
  xval->add_option("--s-max", xt.s_max, "polynomial s-series truncation")->capture_default_str();
  xval->add_option("--tail-tol", xt.tail_tol)->capture_default_str();
  xval->add_option("--grid,-M", xb.grid, "implicit-path grid (0: 256)")->capture_default_str();

  // bench-histogram -----------------------------------------------------------
  auto* bh = app.add_subcommand("bench-histogram", "single-feature stability across noise levels");
  std::string h_data, h_out;
  std::vector<double> h_vars{0.0, 0.05, 0.1, 0.15, 0.2};
  int h_n = 1, h_m = 2;
  std::size_t h_count = 2;
  BasisOpts hb;
  bh->add_option("--dataset", h_data, "image folder (default: synthetic suite)");
  bh->add_option("--count", h_count, "synthetic images when no dataset is given")->capture_default_str();
  bh->add_option("--variances", h_vars)->delimiter(',')->capture_default_str();
  bh->add_option("--n", h_n)->capture_default_str();
  bh->add_option("--m", h_m)->capture_default_str();
  bh->add_option("-o,--output", h_out, "CSV (default: stdout)");
  add_basis(bh, hb);

  // bench-reconstruct ---------------------------------------------------------
  auto* br = app.add_subcommand("bench-reconstruct", "MSRE/SSIM of FM and FMR reconstructions vs K");
  std::string b_in, b_out;
  std::vector<int> b_ks{5, 10, 20, 30, 40, 50};
  double b_var = 0.2;
  BasisOpts bb;
  br->add_option("-i,--input", b_in, "PNG/PGM image (default: synthetic portrait, 128 px)");
  br->add_option("--variance", b_var, "noise variance of the study")->capture_default_str();
  br->add_option("--ks", b_ks)->delimiter(',')->capture_default_str();
  br->add_option("-o,--output", b_out, "CSV (default: stdout)");
  add_basis(br, bb, false);

  // bench-recognize -----------------------------------------------------------
  auto* bz = app.add_subcommand("bench-recognize", "rotation + noise recognition, FMR vs FM");
  std::string z_data, z_out;
  std::size_t z_classes = 10;
  std::vector<double> z_vars{0.0, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3};
  std::vector<double> z_angles;
  for (int a = 0; a < 360; a += 10) z_angles.push_back(a);
  BasisOpts zb;
  zb.K = 20;
  bz->add_option("--dataset", z_data, "one image per class (default: synthetic suite)");
  bz->add_option("--classes", z_classes, "synthetic classes when no dataset is given")->capture_default_str();
  bz->add_option("--variances", z_vars)->delimiter(',')->capture_default_str();
  bz->add_option("--angles", z_angles)->delimiter(',')->capture_default_str();
  bz->add_option("-o,--output", z_out, "CSV (default: stdout)");
  add_basis(bz, zb);

  // zw ------------------------------------------------------------------------
  auto* zw = app.add_subcommand("zw", "zero-watermarking");
  zw->require_subcommand(1);
  auto* zr = zw->add_subcommand("register", "hash XOR code -> record");
  auto* zv = zw->add_subcommand("verify", "recover the code and report BER");
  std::string w_in, w_rec, w_code, w_family = "harmonic", w_domain = "radon";
  std::uint64_t w_key = 1;
  HashParams wp;
  zr->add_option("-i,--input", w_in, "PNG/PGM image")->required();
  zr->add_option("-r,--record", w_rec, "record file to write")->required();
  zr->add_option("--code", w_code, "copyright code: 0/1 string or 0x hex")->required();
  zr->add_option("--key", w_key, "key seed of the parameter draw")->capture_default_str();
  zr->add_option("--family", w_family)->capture_default_str();
  zr->add_option("--domain", w_domain, "radon (FMR hash) | image (FM hash)")->capture_default_str();
  zr->add_option("--n-max", wp.ranges.n_max, "largest |n| drawn (<= 20)")->capture_default_str();
  zr->add_option("--m-max", wp.ranges.m_max, "largest |m| drawn (<= 20)")->capture_default_str();
  zr->add_option("--hash-grid", wp.grid, "polar grid of every coefficient")->capture_default_str();
  zv->add_option("-i,--input", w_in, "PNG/PGM image")->required();
  zv->add_option("-r,--record", w_rec, "record file")->required();
  zv->add_option("--code", w_code, "reference code");

  // plot-basis ----------------------------------------------------------------
  auto* pb = app.add_subcommand("plot-basis", "radial basis tables and zero locations");
  std::string p_out;
  std::vector<int> p_orders{0, 1, 2, 3};
  std::size_t p_points = 200;
  BasisOpts pbb;
  pb->add_option("--orders", p_orders)->delimiter(',')->capture_default_str();
  pb->add_option("--points", p_points)->capture_default_str();
  pb->add_option("-o,--output", p_out, "CSV (default: stdout)");
  add_basis(pb, pbb, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return 1;
  }

  const CLI::App* sub = app.get_subcommands().front();
  const std::string header = config_line(app, sub);
  std::cout << header << '\n';

  try {
    set_thread_count(std::max<std::size_t>(1, g.threads));

    auto csv_stream = [&](const std::string& path, std::ofstream& file) -> std::ostream& {
      if (path.empty()) return std::cout;
      file = open_out(path);
      file << "# " << header << '\n';
      return file;
    };

    if (sub == radon) {
      const auto img = degrade(load_gray(r_in), g);
      const auto d = disk_mask(img);
      const auto s = r_warp > 0.0 ? radon_forward_warped(img, d, r_U, r_V, r_warp) : radon_forward(img, d, r_U, r_V);
      save_sinogram(s, r_out);
      if (!r_csv.empty()) save_sinogram_csv(s, r_csv);
      std::cout << "sinogram " << s.U << "x" << s.V << " written to " << r_out << '\n';
    } else if (sub == mom) {
      const BasisSpec spec = mb.spec();
      spec.validate();
      std::string method = m_method;
      if (m_fast) method = spec.family == Family::Harmonic ? "fft" : "poly";
      if (method != "direct" && method != "fft" && method != "poly")
        throw Error(ErrorKind::ParamError, "unknown method '" + method + "'");
      MomentSet ms;
      if (fs::path(m_in).extension() == ".sino") {
        const auto s = load_sinogram(m_in);
        ms = method == "fft" ? fmr_harmonic_fft(s, spec.alpha, mb.K)
             : method == "poly" ? fmr_polynomial(s, spec, mb.K)
                                : fmr_direct(s, spec, mb.K);
      } else {
        const auto img = degrade(load_gray(m_in), g);
        const auto d = disk_mask(img);
        const std::size_t N = std::min(img.width(), img.height());
        const std::size_t M = mb.grid ? mb.grid : default_grid_size(N, mb.K);
        if (parse_domain(m_domain) == Representation::FM) {
          ms = fm_image(img, d, spec, mb.K, M, M);
        } else if (method == "fft") {
          if (spec.family != Family::Harmonic) throw Error(ErrorKind::ParamError, "the FFT path is harmonic only");
          ms = fmr_harmonic_fft(radon_forward_warped(img, d, M, M, spec.alpha), spec.alpha, mb.K);
        } else if (method == "poly") {
          if (spec.family != Family::Polynomial) throw Error(ErrorKind::ParamError, "poly needs --family polynomial");
          ms = fmr_polynomial(radon_forward(img, d, M, M), spec, mb.K);
        } else {
          const auto s = spec.family == Family::Harmonic ? radon_forward_warped(img, d, M, M, spec.alpha)
                                                         : radon_forward(img, d, M, M);
          ms = fmr_direct(s, spec, mb.K);
        }
      }
      save_moments(ms, m_out);
      std::cout << ms.coeffs.size() << " coefficients, max |M| = " << fmt(ms.max_abs()) << ", written to " << m_out
                << '\n';
    } else if (sub == rec) {
      const auto ms = load_moments(c_in);
      GrayImage out;
      if (ms.tag == DomainTag::Image) {
        out = reconstruct_image(ms, c_size);
      } else {
        const std::size_t M = c_grid ? c_grid : reconstruction_grid_size(c_size, ms.K);
        auto [s, img] = reconstruct(ms, M, M, c_size, parse_ramp_window(c_filter));
        if (!c_sino.empty()) save_sinogram(s, c_sino);
        out = std::move(img);
      }
      save_gray(out, c_out);
      std::cout << "image " << c_size << "x" << c_size << " written to " << c_out << '\n';
    } else if (sub == feat) {
      const auto img = degrade(load_gray(f_in), g);
      const auto fv = method_features(img, make_method(fb, parse_domain(f_domain), parse_weighting(f_weight)));
      save_features_csv(fv, f_out);
      if (!f_blob.empty()) {
        const auto blob = features_blob(fv);
        std::ofstream b(f_blob, std::ios::binary);
        b.write(reinterpret_cast<const char*>(blob.data()), static_cast<std::streamsize>(blob.size()));
      }
      std::cout << fv.values.size() << " features written to " << f_out << '\n';
    } else if (sub == xval) {
      const BasisSpec spec = xb.spec();
      const GrayImage img = x_in.empty() ? smooth_blob(128) : degrade(load_gray(x_in), g);
      const auto d = disk_mask(img);
      ExplicitEvaluator ev(img, d);
      // Validate the exponent island before paying for the implicit path.
      if (spec.family == Family::Harmonic) ev.harmonic(spec.alpha, 0, 0, xt);
      else ev.polynomial(spec, 0, 0, xt);
      const std::size_t M = xb.grid ? xb.grid : 256;
      const int K = std::max(x_nmax, x_mmax);
      const MomentSet implicit = spec.family == Family::Harmonic
                                     ? fmr_direct(radon_forward_warped(img, d, M, M, spec.alpha), spec, K)
                                     : fmr_polynomial(radon_forward(img, d, M, M), spec, K);
      std::ofstream file;
      std::ostream& out = csv_stream(x_out, file);
      out << "n,m,implicit_re,implicit_im,explicit_re,explicit_im,rel_diff,tail_estimate,determined\n";
      const int n_lo = spec.family == Family::Harmonic ? -x_nmax : 0;
      double worst = 0.0, worst_det = 0.0;
      const double floor = 1e-3 * implicit.max_abs();
      for (int n = n_lo; n <= x_nmax; ++n)
        for (int m = -x_mmax; m <= x_mmax; ++m) {
          const auto r = spec.family == Family::Harmonic ? ev.harmonic(spec.alpha, n, m, xt) : ev.polynomial(spec, n, m, xt);
          const auto ref = implicit.at(n, m);
          const double rel = std::abs(ref) > 0.0 ? std::abs(r.value - ref) / std::abs(ref) : std::abs(r.value);
          if (std::abs(ref) > floor) {
            worst = std::max(worst, rel);
            if (r.determined) worst_det = std::max(worst_det, rel);
          }
          out << n << ',' << m << ',' << fmt(ref.real()) << ',' << fmt(ref.imag()) << ',' << fmt(r.value.real()) << ','
              << fmt(r.value.imag()) << ',' << fmt(rel) << ',' << fmt(r.tail_estimate) << ',' << (r.determined ? 1 : 0)
              << '\n';
        }
      std::cerr << "max relative difference on significant coefficients: " << fmt(worst)
                << " (determined parity only: " << fmt(worst_det) << ")\n";
    } else if (sub == bh) {
      const auto imgs = dataset_or_suite(h_data, h_count, 128, g.seed);
      const auto rep = run_histogram_study(imgs, h_vars, make_method(hb, Representation::FMR, Weighting::None), h_n,
                                           h_m, g.seed);
      std::ofstream file;
      write_histogram_csv(rep, csv_stream(h_out, file));
      std::cerr << "max within-series spread " << fmt(rep.max_within) << ", min between-image gap "
                << fmt(rep.min_between) << '\n';
    } else if (sub == br) {
      const GrayImage img = b_in.empty() ? synthetic_portrait(128, 0) : load_gray(b_in);
      const auto rows = run_reconstruction_study(img, b_var, g.seed,
                                                 make_method(bb, Representation::FMR, Weighting::None), b_ks);
      std::ofstream file;
      write_reconstruction_csv(rows, csv_stream(b_out, file));
    } else if (sub == bz) {
      BenchmarkConfig cfg;
      cfg.methods = {make_method(zb, Representation::FMR, Weighting::NPlus1),
                     make_method(zb, Representation::FM, Weighting::None)};
      cfg.variances = z_vars;
      cfg.angles = z_angles;
      cfg.seed = g.seed;
      cfg.validate();
      const auto imgs = dataset_or_suite(z_data, z_classes, 128, g.seed);
      const auto t = run_recognition_benchmark(cfg, imgs);
      std::ofstream file;
      write_accuracy_csv(t, csv_stream(z_out, file));
    } else if (sub == zw) {
      const auto img = degrade(load_gray(w_in), g);
      if (zw->got_subcommand(zr)) {
        wp.family = parse_family(w_family);
        wp.domain = parse_domain(w_domain) == Representation::FMR ? HashDomain::Radon : HashDomain::Image;
        const Bits code = parse_bits(w_code);
        wp.bits = code.size();
        const auto r = register_watermark(img, code, w_key, wp);
        save_record(r, w_rec);
        std::cout << "zero-watermark " << bits_to_string(r.zero_watermark) << " written to " << w_rec << '\n';
      } else {
        const auto r = load_record(w_rec);
        const Bits ref = w_code.empty() ? Bits(r.zero_watermark.size(), 0) : parse_bits(w_code);
        const auto v = verify_watermark(img, r, ref);
        std::cout << "recovered " << bits_to_string(v.recovered) << '\n';
        if (!w_code.empty()) std::cout << "BER " << fmt(v.ber) << '\n';
      }
    } else if (sub == pb) {
      const BasisSpec spec = pbb.spec();
      spec.validate();
      std::ofstream file;
      std::ostream& out = csv_stream(p_out, file);
      out << "r";
      for (int n : p_orders) {
        if (spec.family == Family::Harmonic) out << ",re_n" << n << ",im_n" << n;
        else out << ",n" << n;
      }
      out << '\n';
      std::vector<double> r(p_points);
      for (std::size_t i = 0; i < p_points; ++i) r[i] = (i + 1.0) / static_cast<double>(p_points);
      int n_top = 0;
      for (int n : p_orders) n_top = std::max(n_top, n);
      std::vector<std::vector<double>> poly;
      if (spec.family == Family::Polynomial) poly = radial_poly_recursive(spec.alpha, spec.p, spec.q, n_top, r);
      for (std::size_t i = 0; i < p_points; ++i) {
        out << fmt(r[i]);
        for (int n : p_orders) {
          if (spec.family == Family::Harmonic) {
            const auto v = radial_harmonic(spec.alpha, n, r[i]);
            out << ',' << fmt(v.real()) << ',' << fmt(v.imag());
          } else {
            if (n < 0) throw Error(ErrorKind::ParamError, "polynomial orders must be >= 0");
            out << ',' << fmt(poly[static_cast<std::size_t>(n)][i]);
          }
        }
        out << '\n';
      }
      for (int n : p_orders) {
        std::cerr << "zeros n=" << n << ":";
        for (double z : zero_locations(spec, n)) std::cerr << ' ' << fmt(z);
        std::cerr << '\n';
      }
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
