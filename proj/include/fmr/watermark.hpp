#pragma once

#include "fmr/basis.hpp"
#include "fmr/image.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace fmr {

/// Sequence of 0/1 bits.
using Bits = std::vector<std::uint8_t>;

enum class HashDomain { Radon, Image };

/// Ranges of the keyed parameter draw. Stored in every record. Orders are
/// kept low by default; |n|,|m| up to 20 is accepted.
struct DrawRanges {
  int n_max = 4;
  int m_max = 4;
  double alpha_lo = 0.5, alpha_hi = 2.0;
  double q_lo = 1.0, q_hi = 3.0;
  double pq_lo = -0.5, pq_hi = 2.0;  // p - q
};

struct HashParams {
  Family family = Family::Harmonic;
  HashDomain domain = HashDomain::Radon;
  std::size_t bits = 64;
  std::size_t grid = 128;  // polar grid U = V used for every coefficient
  std::size_t reference_images = 12;
  DrawRanges ranges;
};

/// One keyed draw per bit. Identical for both domains.
std::vector<BasisSpec> draw_hash_specs(std::uint64_t key_seed, const HashParams& params);

/// Raw magnitudes behind the hash, one per drawn spec.
std::vector<double> hash_features(const GrayImage& img, std::uint64_t key_seed, const HashParams& params);

/// Mean log magnitude of every draw over a bank of synthetic images seeded by
/// the key. Subtracted before binarisation so that the common decay of
/// magnitudes with order does not fix the bit pattern. Cached per key.
std::vector<double> reference_profile(std::uint64_t key_seed, const HashParams& params);

/// log magnitude minus the reference profile, split at the median.
/// Throws BadLength for fewer than 8 bits.
Bits perceptual_hash(const GrayImage& img, std::uint64_t key_seed, const HashParams& params);

struct WatermarkRecord {
  HashParams params;
  std::uint64_t key_seed = 0;
  Bits zero_watermark;
};

WatermarkRecord register_watermark(const GrayImage& img, const Bits& code, std::uint64_t key_seed,
                                   const HashParams& params);

struct Verification {
  Bits recovered;
  double ber = 0.0;
};
Verification verify_watermark(const GrayImage& img, const WatermarkRecord& record, const Bits& reference);

double bit_error_ratio(const Bits& a, const Bits& b);

/// "0101..." strings, or 0x-prefixed hex (4 bits per digit, most significant first).
Bits parse_bits(const std::string& text);
std::string bits_to_string(const Bits& b);

std::string base64_encode(const std::vector<std::uint8_t>& bytes);
std::vector<std::uint8_t> base64_decode(const std::string& text);

void write_record(const WatermarkRecord& rec, std::ostream& out);
WatermarkRecord read_record(std::istream& in);
void save_record(const WatermarkRecord& rec, const std::filesystem::path& path);
WatermarkRecord load_record(const std::filesystem::path& path);

}  // namespace fmr
