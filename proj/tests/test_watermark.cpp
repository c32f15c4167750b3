#include "fmr/error.hpp"
#include "fmr/eval.hpp"
#include "fmr/watermark.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <sstream>

using namespace fmr;

namespace {

double hamming_ratio(const Bits& a, const Bits& b) { return bit_error_ratio(a, b); }

Bits code64(std::uint64_t seed) {
  Bits b(64);
  for (std::size_t i = 0; i < 64; ++i) b[i] = static_cast<std::uint8_t>((seed >> (i % 64)) & 1u);
  return b;
}

const HashParams kFmr{};

HashParams fm_params() {
  HashParams p;
  p.domain = HashDomain::Image;
  return p;
}

}  // namespace

TEST(Hash, Deterministic) {
  const auto img = synthetic_portrait(128, 0);
  EXPECT_EQ(perceptual_hash(img, 11, kFmr), perceptual_hash(img, 11, kFmr));
  EXPECT_EQ(draw_hash_specs(11, kFmr).size(), 64u);
}

TEST(Hash, Balanced) {
  for (std::uint64_t key : {1u, 2u, 3u}) {
    const auto h = perceptual_hash(synthetic_portrait(128, 1), key, kFmr);
    const auto ones = std::accumulate(h.begin(), h.end(), 0);
    EXPECT_GE(ones, 26);
    EXPECT_LE(ones, 38);
  }
}

TEST(Hash, DrawRanges) {
  HashParams p;
  p.family = Family::Polynomial;
  p.ranges.n_max = 20;
  p.ranges.m_max = 20;
  p.grid = 128;
  for (const auto& s : draw_hash_specs(5, p)) {
    EXPECT_LE(std::abs(s.n), 20);
    EXPECT_LE(std::abs(s.m), 20);
    EXPECT_GE(s.n, 0);
    EXPECT_GE(s.alpha, 0.5);
    EXPECT_LE(s.alpha, 2.0);
    EXPECT_GT(s.q, 0.0);
    EXPECT_GT(s.p - s.q, -1.0);
    EXPECT_NO_THROW(s.validate());
  }
}

TEST(Hash, QuarterTurn) {
  const auto img = synthetic_portrait(128, 0);
  EXPECT_LT(hamming_ratio(perceptual_hash(img, 3, kFmr), perceptual_hash(rotate(img, 90.0), 3, kFmr)), 0.15);
}

TEST(Hash, BadLength) {
  HashParams p;
  p.bits = 4;
  try {
    perceptual_hash(smooth_blob(64), 1, p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BadLength);
  }
}

TEST(Register, ZeroCodeGivesHash) {
  const auto img = synthetic_portrait(128, 1);
  const auto rec = register_watermark(img, Bits(64, 0), 8, kFmr);
  EXPECT_EQ(rec.zero_watermark, perceptual_hash(img, 8, kFmr));
}

TEST(Register, RoundTrip) {
  for (std::uint64_t key : {4u, 99u}) {
    const auto img = synthetic_suite(1, 128, key)[0];
    const auto code = code64(0x9e3779b97f4a7c15ull * key);
    const auto rec = register_watermark(img, code, key, kFmr);
    const auto v = verify_watermark(img, rec, code);
    EXPECT_EQ(v.recovered, code);
    EXPECT_EQ(v.ber, 0.0);
  }
}

TEST(Register, KeysGiveIndependentRecords) {
  const auto img = synthetic_portrait(128, 0);
  const auto code = code64(0xabcdef);
  const auto a = register_watermark(img, code, 1, kFmr);
  const auto b = register_watermark(img, code, 2, kFmr);
  const double d = hamming_ratio(a.zero_watermark, b.zero_watermark);
  EXPECT_GE(d, 0.3);
  EXPECT_LE(d, 0.7);
}

TEST(Register, LengthMismatch) {
  try {
    register_watermark(smooth_blob(64), Bits(10, 1), 1, kFmr);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::LengthMismatch);
  }
  const auto rec = register_watermark(smooth_blob(64), Bits(64, 1), 1, kFmr);
  EXPECT_THROW(verify_watermark(smooth_blob(64), rec, Bits(63, 1)), Error);
}

TEST(Verify, UnrelatedImages) {
  const auto img = synthetic_portrait(128, 0);
  const auto code = code64(0x5555);
  const auto rec = register_watermark(img, code, 21, kFmr);
  double mean = 0.0;
  for (const auto& other : synthetic_suite(20, 128, 777)) mean += verify_watermark(other, rec, code).ber;
  mean /= 20.0;
  EXPECT_GE(mean, 0.35);
  EXPECT_LE(mean, 0.65);
}

TEST(Verify, NoisyDuplicate) {
  const auto img = synthetic_portrait(128, 1);
  const auto code = code64(0x1234);
  const auto rec = register_watermark(img, code, 13, kFmr);
  EXPECT_LT(verify_watermark(add_gaussian_noise(img, 0.05, 2), rec, code).ber, 0.2);
}

TEST(Verify, FmrHashNoWorseThanFm) {
  const auto suite = synthetic_suite(10, 128, 31);
  const auto code = code64(0x77);
  double ber_fmr = 0.0, ber_fm = 0.0;
  for (std::size_t i = 0; i < suite.size(); ++i) {
    const auto rf = register_watermark(suite[i], code, 40 + i, kFmr);
    const auto ri = register_watermark(suite[i], code, 40 + i, fm_params());
    for (double var : {0.02, 0.05, 0.1}) {
      const auto noisy = add_gaussian_noise(suite[i], var, 1000 + i);
      ber_fmr += verify_watermark(noisy, rf, code).ber;
      ber_fm += verify_watermark(noisy, ri, code).ber;
    }
  }
  EXPECT_LE(ber_fmr, ber_fm);
}

TEST(Bits, ParseAndFormat) {
  EXPECT_EQ(parse_bits("0110"), (Bits{0, 1, 1, 0}));
  EXPECT_EQ(parse_bits("0xA1"), (Bits{1, 0, 1, 0, 0, 0, 0, 1}));
  EXPECT_EQ(bits_to_string(Bits{1, 0, 0}), "100");
  try {
    parse_bits("01x2");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ParseError);
  }
  EXPECT_DOUBLE_EQ(bit_error_ratio(Bits{0, 1, 1, 1}, Bits{0, 0, 1, 0}), 0.5);
}

TEST(Bits, Base64) {
  const std::vector<std::uint8_t> raw{'M', 'a', 'n', 'y', 0, 255};
  EXPECT_EQ(base64_encode({'M', 'a', 'n'}), "TWFu");
  EXPECT_EQ(base64_encode({'M', 'a'}), "TWE=");
  EXPECT_EQ(base64_decode(base64_encode(raw)), raw);
  EXPECT_THROW(base64_decode("T$=="), Error);
}

TEST(Record, RoundTrip) {
  HashParams p;
  p.family = Family::Polynomial;
  p.bits = 40;
  p.ranges.n_max = 7;
  const auto rec = register_watermark(synthetic_portrait(128, 0), Bits(40, 1), 77, p);
  std::ostringstream out;
  write_record(rec, out);
  EXPECT_EQ(out.str().rfind("FMRZW1", 0), 0u);
  std::istringstream in(out.str());
  const auto back = read_record(in);
  EXPECT_EQ(back.zero_watermark, rec.zero_watermark);
  EXPECT_EQ(back.key_seed, 77u);
  EXPECT_EQ(back.params.family, Family::Polynomial);
  EXPECT_EQ(back.params.bits, 40u);
  EXPECT_EQ(back.params.ranges.n_max, 7);
  std::ostringstream again;
  write_record(back, again);
  EXPECT_EQ(again.str(), out.str());
  EXPECT_EQ(verify_watermark(synthetic_portrait(128, 0), back, Bits(40, 1)).ber, 0.0);
  std::istringstream bad("FMRZW9\n");
  EXPECT_THROW(read_record(bad), Error);
}
