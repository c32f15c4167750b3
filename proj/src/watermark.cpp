#include "fmr/watermark.hpp"

#include "fmr/error.hpp"
#include "fmr/eval.hpp"
#include "fmr/moments.hpp"
#include "fmr/parallel.hpp"
#include "fmr/radon.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <random>
#include <sstream>

namespace fmr {

namespace {

constexpr const char* kRecordMagic = "FMRZW1";
constexpr double kLogFloor = 1e-300;
constexpr char kB64[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

void check_length(std::size_t B) {
  if (B < 8) throw Error(ErrorKind::BadLength, "hash needs at least 8 bits");
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<std::uint8_t> pack(const Bits& b) {
  std::vector<std::uint8_t> out((b.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < b.size(); ++i)
    if (b[i]) out[i / 8] |= static_cast<std::uint8_t>(0x80u >> (i % 8));
  return out;
}

Bits unpack(const std::vector<std::uint8_t>& bytes, std::size_t count) {
  if (bytes.size() * 8 < count) throw Error(ErrorKind::LengthMismatch, "record holds fewer bits than declared");
  Bits b(count);
  for (std::size_t i = 0; i < count; ++i) b[i] = (bytes[i / 8] >> (7 - i % 8)) & 1u;
  return b;
}

}  // namespace

std::vector<BasisSpec> draw_hash_specs(std::uint64_t key_seed, const HashParams& params) {
  check_length(params.bits);
  const DrawRanges& g = params.ranges;
  std::mt19937_64 rng(key_seed);
  const int n_lo = params.family == Family::Harmonic ? -g.n_max : 0;
  std::uniform_int_distribution<int> dn(n_lo, g.n_max), dm(-g.m_max, g.m_max);
  std::uniform_real_distribution<double> da(g.alpha_lo, g.alpha_hi), dq(g.q_lo, g.q_hi), dpq(g.pq_lo, g.pq_hi);
  std::vector<BasisSpec> specs;
  for (std::size_t i = 0; i < params.bits; ++i) {
    BasisSpec s;
    s.family = params.family;
    s.n = dn(rng);
    s.m = dm(rng);
    s.alpha = da(rng);
    const double q = dq(rng);
    const double pq = dpq(rng);
    if (params.family == Family::Polynomial) {
      s.q = q;
      s.p = q + pq;
    }
    specs.push_back(s);
  }
  return specs;
}

std::vector<double> hash_features(const GrayImage& img, std::uint64_t key_seed, const HashParams& params) {
  const auto specs = draw_hash_specs(key_seed, params);
  if (params.grid < 16) throw Error(ErrorKind::DegenerateGrid, "hash grid too small");
  const int order = std::max(params.ranges.n_max, params.ranges.m_max);
  if (params.ranges.n_max < 0 || params.ranges.m_max < 0 || order > 20)
    throw Error(ErrorKind::ParamError, "hash orders must lie in [0,20]");
  if (4 * static_cast<std::size_t>(order) > params.grid)
    throw Error(ErrorKind::UnderResolved, "hash grid too coarse for the drawn orders");
  const DiskDomain domain = disk_mask(img);
  const PolarField field =
      params.domain == HashDomain::Radon
          ? field_from_sinogram(radon_forward(img, domain, params.grid, params.grid))
          : field_from_image(img, domain, params.grid, params.grid);
  std::vector<double> out(specs.size());
  parallel_for(specs.size(), [&](std::size_t i) { out[i] = std::abs(moment_single(field, specs[i])); });
  return out;
}

std::vector<double> reference_profile(std::uint64_t key_seed, const HashParams& params) {
  static std::mutex mu;
  static std::map<std::string, std::vector<double>> cache;
  std::ostringstream key;
  write_record(WatermarkRecord{params, key_seed, Bits(params.bits, 0)}, key);
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(key.str()); it != cache.end()) return it->second;
  }
  if (params.reference_images == 0) throw Error(ErrorKind::ParamError, "reference bank is empty");
  const auto bank = synthetic_suite(params.reference_images, 128, key_seed ^ 0x5a17c0de5eedULL);
  std::vector<double> ref(params.bits, 0.0);
  for (const auto& img : bank) {
    const auto f = hash_features(img, key_seed, params);
    for (std::size_t i = 0; i < f.size(); ++i) ref[i] += std::log(f[i] + kLogFloor);
  }
  for (double& x : ref) x /= static_cast<double>(bank.size());
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(key.str(), ref);
  return ref;
}

Bits perceptual_hash(const GrayImage& img, std::uint64_t key_seed, const HashParams& params) {
  check_length(params.bits);
  auto f = hash_features(img, key_seed, params);
  const auto ref = reference_profile(key_seed, params);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = std::log(f[i] + kLogFloor) - ref[i];
  std::vector<double> sorted = f;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t B = sorted.size();
  const double median = B % 2 ? sorted[B / 2] : 0.5 * (sorted[B / 2 - 1] + sorted[B / 2]);
  Bits bits(B);
  for (std::size_t i = 0; i < B; ++i) bits[i] = f[i] > median ? 1 : 0;
  return bits;
}

double bit_error_ratio(const Bits& a, const Bits& b) {
  if (a.size() != b.size() || a.empty()) throw Error(ErrorKind::LengthMismatch, "bit sequences differ in length");
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += (a[i] != b[i]);
  return static_cast<double>(d) / static_cast<double>(a.size());
}

WatermarkRecord register_watermark(const GrayImage& img, const Bits& code, std::uint64_t key_seed,
                                   const HashParams& params) {
  if (code.size() != params.bits) throw Error(ErrorKind::LengthMismatch, "code length differs from hash length");
  const Bits h = perceptual_hash(img, key_seed, params);
  WatermarkRecord rec;
  rec.params = params;
  rec.key_seed = key_seed;
  rec.zero_watermark.resize(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) rec.zero_watermark[i] = (h[i] ^ code[i]) & 1u;
  return rec;
}

Verification verify_watermark(const GrayImage& img, const WatermarkRecord& record, const Bits& reference) {
  if (record.zero_watermark.size() != record.params.bits || reference.size() != record.params.bits)
    throw Error(ErrorKind::LengthMismatch, "record and reference lengths differ");
  const Bits h = perceptual_hash(img, record.key_seed, record.params);
  Verification v;
  v.recovered.resize(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) v.recovered[i] = (h[i] ^ record.zero_watermark[i]) & 1u;
  v.ber = bit_error_ratio(v.recovered, reference);
  return v;
}

Bits parse_bits(const std::string& text) {
  Bits b;
  if (text.rfind("0x", 0) == 0 || text.rfind("0X", 0) == 0) {
    for (std::size_t i = 2; i < text.size(); ++i) {
      const char c = text[i];
      int v;
      if (c >= '0' && c <= '9') v = c - '0';
      else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
      else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
      else throw Error(ErrorKind::ParseError, "bad hex digit in code");
      for (int k = 3; k >= 0; --k) b.push_back(static_cast<std::uint8_t>((v >> k) & 1));
    }
  } else {
    for (char c : text) {
      if (c != '0' && c != '1') throw Error(ErrorKind::ParseError, "code must be a 0/1 string or 0x hex");
      b.push_back(static_cast<std::uint8_t>(c - '0'));
    }
  }
  if (b.empty()) throw Error(ErrorKind::ParseError, "empty code");
  return b;
}

std::string bits_to_string(const Bits& b) {
  std::string s;
  for (auto x : b) s.push_back(x ? '1' : '0');
  return s;
}

std::string base64_encode(const std::vector<std::uint8_t>& bytes) {
  std::string out;
  std::size_t i = 0;
  for (; i + 2 < bytes.size(); i += 3) {
    const std::uint32_t v = (bytes[i] << 16) | (bytes[i + 1] << 8) | bytes[i + 2];
    for (int k = 3; k >= 0; --k) out.push_back(kB64[(v >> (6 * k)) & 63]);
  }
  const std::size_t rest = bytes.size() - i;
  if (rest) {
    std::uint32_t v = bytes[i] << 16;
    if (rest == 2) v |= bytes[i + 1] << 8;
    out.push_back(kB64[(v >> 18) & 63]);
    out.push_back(kB64[(v >> 12) & 63]);
    out.push_back(rest == 2 ? kB64[(v >> 6) & 63] : '=');
    out.push_back('=');
  }
  return out;
}

std::vector<std::uint8_t> base64_decode(const std::string& text) {
  std::array<int, 256> lut;
  lut.fill(-1);
  for (int i = 0; i < 64; ++i) lut[static_cast<unsigned char>(kB64[i])] = i;
  if (text.size() % 4) throw Error(ErrorKind::ParseError, "base64 length not a multiple of 4");
  std::vector<std::uint8_t> out;
  for (std::size_t i = 0; i < text.size(); i += 4) {
    std::uint32_t v = 0;
    int pad = 0;
    for (std::size_t k = 0; k < 4; ++k) {
      const char c = text[i + k];
      int d;
      if (c == '=' && i + 4 == text.size() && k >= 2) {
        d = 0;
        ++pad;
      } else {
        if (pad) throw Error(ErrorKind::ParseError, "base64 padding in the middle");
        d = lut[static_cast<unsigned char>(c)];
      }
      if (d < 0) throw Error(ErrorKind::ParseError, "bad base64 character");
      v = (v << 6) | static_cast<std::uint32_t>(d);
    }
    out.push_back(static_cast<std::uint8_t>(v >> 16));
    if (pad < 2) out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xff));
    if (pad < 1) out.push_back(static_cast<std::uint8_t>(v & 0xff));
  }
  return out;
}

void write_record(const WatermarkRecord& rec, std::ostream& out) {
  const auto& p = rec.params;
  const auto& g = p.ranges;
  out << kRecordMagic << '\n';
  out << "family " << to_string(p.family) << '\n';
  out << "domain " << (p.domain == HashDomain::Radon ? "radon" : "image") << '\n';
  out << "bits " << p.bits << '\n';
  out << "grid " << p.grid << '\n';
  out << "reference_images " << p.reference_images << '\n';
  out << "key_seed " << rec.key_seed << '\n';
  out << "n_max " << g.n_max << '\n';
  out << "m_max " << g.m_max << '\n';
  out << "alpha " << fmt(g.alpha_lo) << ' ' << fmt(g.alpha_hi) << '\n';
  out << "q " << fmt(g.q_lo) << ' ' << fmt(g.q_hi) << '\n';
  out << "p_minus_q " << fmt(g.pq_lo) << ' ' << fmt(g.pq_hi) << '\n';
  out << "zero_watermark " << base64_encode(pack(rec.zero_watermark)) << '\n';
}

WatermarkRecord read_record(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kRecordMagic) throw Error(ErrorKind::ParseError, "missing FMRZW1 header");
  WatermarkRecord rec;
  auto& p = rec.params;
  auto& g = p.ranges;
  std::string wm;
  auto field = [&](const std::string& key) {
    if (!std::getline(in, line)) throw Error(ErrorKind::ParseError, "truncated record");
    std::istringstream ss(line);
    std::string k;
    ss >> k;
    if (k != key) throw Error(ErrorKind::ParseError, "expected '" + key + "' got '" + k + "'");
    std::string rest;
    std::getline(ss >> std::ws, rest);
    return rest;
  };
  try {
    p.family = parse_family(field("family"));
    const std::string d = field("domain");
    if (d != "radon" && d != "image") throw Error(ErrorKind::ParseError, "bad hash domain");
    p.domain = d == "radon" ? HashDomain::Radon : HashDomain::Image;
    p.bits = std::stoul(field("bits"));
    p.grid = std::stoul(field("grid"));
    p.reference_images = std::stoul(field("reference_images"));
    rec.key_seed = std::stoull(field("key_seed"));
    g.n_max = std::stoi(field("n_max"));
    g.m_max = std::stoi(field("m_max"));
    auto pair = [&](const std::string& key, double& lo, double& hi) {
      std::istringstream ss(field(key));
      if (!(ss >> lo >> hi)) throw Error(ErrorKind::ParseError, "bad range for " + key);
    };
    pair("alpha", g.alpha_lo, g.alpha_hi);
    pair("q", g.q_lo, g.q_hi);
    pair("p_minus_q", g.pq_lo, g.pq_hi);
    wm = field("zero_watermark");
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::ParseError, "malformed record value");
  }
  check_length(p.bits);
  rec.zero_watermark = unpack(base64_decode(wm), p.bits);
  return rec;
}

void save_record(const WatermarkRecord& rec, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::UnreadableFile, "cannot write " + path.string());
  write_record(rec, out);
}

WatermarkRecord load_record(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::UnreadableFile, path.string());
  return read_record(in);
}

}  // namespace fmr
