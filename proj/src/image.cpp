#include "fmr/image.hpp"

#include "fmr/error.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <fstream>
#include <memory>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

namespace fmr {

GrayImage::GrayImage(std::size_t width, std::size_t height)
    : width_(width), height_(height) {
  if (width < kMinSide || height < kMinSide)
    throw Error(ErrorKind::DimMismatch, "image sides must be at least " + std::to_string(kMinSide));
  pixels_.assign(width * height, 0.0);
}

GrayImage::GrayImage(std::size_t width, std::size_t height, std::vector<double> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  if (width < kMinSide || height < kMinSide)
    throw Error(ErrorKind::DimMismatch, "image sides must be at least " + std::to_string(kMinSide));
  if (pixels_.size() != width * height)
    throw Error(ErrorKind::DimMismatch, "pixel count does not match width*height");
  for (double v : pixels_) {
    if (!(v >= 0.0 && v <= 1.0))
      throw Error(ErrorKind::DomainError, "intensity outside [0,1]");
  }
}

bool DiskDomain::contains_pixel(std::size_t row, std::size_t col) const {
  const double dx = static_cast<double>(col) - cx;
  const double dy = cy - static_cast<double>(row);
  return dx * dx + dy * dy <= radius * radius;
}

DiskDomain disk_mask(const GrayImage& img) {
  DiskDomain d;
  d.cx = (static_cast<double>(img.width()) - 1.0) / 2.0;
  d.cy = (static_cast<double>(img.height()) - 1.0) / 2.0;
  d.radius = static_cast<double>(std::min(img.width(), img.height())) / 2.0;
  return d;
}

double sample_bilinear(const GrayImage& img, double col, double row) {
  const double c0 = std::floor(col);
  const double r0 = std::floor(row);
  const double fc = col - c0;
  const double fr = row - r0;
  const auto w = static_cast<long>(img.width());
  const auto h = static_cast<long>(img.height());
  const long ic = static_cast<long>(c0);
  const long ir = static_cast<long>(r0);
  auto px = [&](long r, long c) -> double {
    if (r < 0 || c < 0 || r >= h || c >= w) return 0.0;
    return img.at(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
  };
  return (1.0 - fr) * ((1.0 - fc) * px(ir, ic) + fc * px(ir, ic + 1)) +
         fr * ((1.0 - fc) * px(ir + 1, ic) + fc * px(ir + 1, ic + 1));
}

GrayImage mask_to_disk(const GrayImage& img, const DiskDomain& domain) {
  GrayImage out = img;
  for (std::size_t r = 0; r < img.height(); ++r)
    for (std::size_t c = 0; c < img.width(); ++c)
      if (!domain.contains_pixel(r, c)) out.at(r, c) = 0.0;
  return out;
}

namespace {

std::string lower_ext(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  return ext;
}

// Skips whitespace and '#' comments in a PNM header.
void pnm_skip(std::istream& in) {
  for (;;) {
    int ch = in.peek();
    if (ch == '#') {
      std::string line;
      std::getline(in, line);
    } else if (std::isspace(ch)) {
      in.get();
    } else {
      return;
    }
  }
}

long pnm_int(std::istream& in, const std::string& what) {
  pnm_skip(in);
  long v = -1;
  if (!(in >> v) || v <= 0) throw Error(ErrorKind::UnsupportedFormat, "bad PGM " + what);
  return v;
}

GrayImage load_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::UnreadableFile, path.string());
  char magic[2] = {0, 0};
  in.read(magic, 2);
  if (!in || magic[0] != 'P' || (magic[1] != '2' && magic[1] != '5'))
    throw Error(ErrorKind::UnsupportedFormat, "not a P2/P5 PGM: " + path.string());
  const long w = pnm_int(in, "width");
  const long h = pnm_int(in, "height");
  const long maxval = pnm_int(in, "maxval");
  if (maxval > 65535) throw Error(ErrorKind::UnsupportedFormat, "PGM maxval > 65535");
  const std::size_t n = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
  std::vector<double> px(n);
  const double scale = 1.0 / static_cast<double>(maxval);
  if (magic[1] == '2') {
    for (std::size_t i = 0; i < n; ++i) {
      long v = 0;
      if (!(in >> v) || v < 0 || v > maxval)
        throw Error(ErrorKind::UnreadableFile, "truncated PGM data");
      px[i] = static_cast<double>(v) * scale;
    }
  } else {
    in.get();  // single whitespace after maxval
    const std::size_t bpp = maxval > 255 ? 2 : 1;
    std::vector<unsigned char> raw(n * bpp);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (static_cast<std::size_t>(in.gcount()) != raw.size())
      throw Error(ErrorKind::UnreadableFile, "truncated PGM data");
    for (std::size_t i = 0; i < n; ++i) {
      const unsigned v = bpp == 1 ? raw[i] : (static_cast<unsigned>(raw[2 * i]) << 8) | raw[2 * i + 1];
      px[i] = std::min(1.0, static_cast<double>(v) * scale);
    }
  }
  return GrayImage(static_cast<std::size_t>(w), static_cast<std::size_t>(h), std::move(px));
}

struct FileCloser {
  void operator()(std::FILE* f) const { if (f) std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

GrayImage load_png(const std::filesystem::path& path) {
  FilePtr fp(std::fopen(path.c_str(), "rb"));
  if (!fp) throw Error(ErrorKind::UnreadableFile, path.string());
  unsigned char sig[8];
  if (std::fread(sig, 1, 8, fp.get()) != 8 || png_sig_cmp(sig, 0, 8) != 0)
    throw Error(ErrorKind::UnsupportedFormat, "not a PNG: " + path.string());

  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw Error(ErrorKind::UnreadableFile, "libpng init failed");
  }
  std::vector<unsigned char> data;
  std::vector<png_bytep> rows;
  png_uint_32 w = 0, h = 0;
  int depth = 0, channels = 0;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw Error(ErrorKind::UnreadableFile, "corrupt PNG: " + path.string());
  }
  png_init_io(png, fp.get());
  png_set_sig_bytes(png, 8);
  png_read_info(png, info);
  const int color = png_get_color_type(png, info);
  if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color == PNG_COLOR_TYPE_GRAY && png_get_bit_depth(png, info) < 8)
    png_set_expand_gray_1_2_4_to_8(png);
  if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
  png_set_strip_alpha(png);
  if (png_get_bit_depth(png, info) == 16) png_set_swap(png);
  png_read_update_info(png, info);
  w = png_get_image_width(png, info);
  h = png_get_image_height(png, info);
  depth = png_get_bit_depth(png, info);
  channels = png_get_channels(png, info);
  const std::size_t stride = png_get_rowbytes(png, info);
  data.resize(stride * h);
  rows.resize(h);
  for (png_uint_32 r = 0; r < h; ++r) rows[r] = data.data() + r * stride;
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);

  const double maxv = depth == 16 ? 65535.0 : 255.0;
  std::vector<double> px(static_cast<std::size_t>(w) * h);
  for (png_uint_32 r = 0; r < h; ++r) {
    for (png_uint_32 c = 0; c < w; ++c) {
      double sum = 0.0;
      for (int k = 0; k < channels; ++k) {
        const std::size_t idx = static_cast<std::size_t>(c) * channels + k;
        if (depth == 16) {
          const auto* p16 = reinterpret_cast<const std::uint16_t*>(rows[r]);
          sum += p16[idx];
        } else {
          sum += rows[r][idx];
        }
      }
      px[static_cast<std::size_t>(r) * w + c] = std::min(1.0, sum / (channels * maxv));
    }
  }
  return GrayImage(w, h, std::move(px));
}

unsigned char quantize8(double v) {
  return static_cast<unsigned char>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
}

void save_png(const GrayImage& img, const std::filesystem::path& path) {
  FilePtr fp(std::fopen(path.c_str(), "wb"));
  if (!fp) throw Error(ErrorKind::UnreadableFile, "cannot write " + path.string());
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw Error(ErrorKind::UnreadableFile, "libpng init failed");
  }
  std::vector<unsigned char> data(img.size());
  for (std::size_t i = 0; i < img.size(); ++i) data[i] = quantize8(img.pixels()[i]);
  std::vector<png_bytep> rows(img.height());
  for (std::size_t r = 0; r < img.height(); ++r) rows[r] = data.data() + r * img.width();
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw Error(ErrorKind::UnreadableFile, "PNG write failed: " + path.string());
  }
  png_init_io(png, fp.get());
  png_set_IHDR(png, info, static_cast<png_uint_32>(img.width()), static_cast<png_uint_32>(img.height()),
               8, PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

}  // namespace

GrayImage load_gray(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) throw Error(ErrorKind::UnreadableFile, "no such file: " + path.string());
  const std::string ext = lower_ext(path);
  if (ext == ".png") return load_png(path);
  if (ext == ".pgm" || ext == ".pnm") return load_pgm(path);
  throw Error(ErrorKind::UnsupportedFormat, "unsupported extension '" + ext + "'");
}

void save_gray(const GrayImage& img, const std::filesystem::path& path) {
  const std::string ext = lower_ext(path);
  if (ext == ".png") {
    save_png(img, path);
    return;
  }
  if (ext != ".pgm" && ext != ".pnm")
    throw Error(ErrorKind::UnsupportedFormat, "unsupported extension '" + ext + "'");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::UnreadableFile, "cannot write " + path.string());
  out << "P5\n" << img.width() << ' ' << img.height() << "\n255\n";
  std::vector<unsigned char> data(img.size());
  for (std::size_t i = 0; i < img.size(); ++i) data[i] = quantize8(img.pixels()[i]);
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
}

std::vector<double> gaussian_noise_field(std::size_t count, double variance, std::uint64_t seed) {
  if (variance < 0.0) throw Error(ErrorKind::NegativeVariance, "variance must be >= 0");
  std::vector<double> out(count, 0.0);
  if (variance == 0.0) return out;
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> dist(0.0, std::sqrt(variance));
  for (auto& v : out) v = dist(gen);
  return out;
}

GrayImage add_gaussian_noise(const GrayImage& img, double variance, std::uint64_t seed) {
  const auto noise = gaussian_noise_field(img.size(), variance, seed);
  GrayImage out = img;
  auto px = out.pixels();
  for (std::size_t i = 0; i < px.size(); ++i) px[i] = std::clamp(px[i] + noise[i], 0.0, 1.0);
  return out;
}

GrayImage rotate(const GrayImage& img, double angle_deg) {
  double a = std::fmod(angle_deg, 360.0);
  if (a < 0.0) a += 360.0;
  const std::size_t w = img.width();
  const std::size_t h = img.height();
  if (a == 0.0) return img;
  if (a == 180.0) {
    GrayImage out(w, h);
    for (std::size_t r = 0; r < h; ++r)
      for (std::size_t c = 0; c < w; ++c) out.at(r, c) = img.at(h - 1 - r, w - 1 - c);
    return out;
  }
  if (w == h && (a == 90.0 || a == 270.0)) {
    const std::size_t n = w;
    GrayImage out(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        out.at(r, c) = a == 90.0 ? img.at(c, n - 1 - r) : img.at(n - 1 - c, r);
    return out;
  }
  const double t = a * std::numbers::pi / 180.0;
  const double ct = std::cos(t);
  const double st = std::sin(t);
  const double cx = (static_cast<double>(w) - 1.0) / 2.0;
  const double cy = (static_cast<double>(h) - 1.0) / 2.0;
  GrayImage out(w, h);
  for (std::size_t r = 0; r < h; ++r) {
    for (std::size_t c = 0; c < w; ++c) {
      const double x = static_cast<double>(c) - cx;
      const double y = cy - static_cast<double>(r);
      const double xs = x * ct + y * st;
      const double ys = -x * st + y * ct;
      out.at(r, c) = std::clamp(sample_bilinear(img, cx + xs, cy - ys), 0.0, 1.0);
    }
  }
  return out;
}

}  // namespace fmr
