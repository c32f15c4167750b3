#pragma once

#include "fmr/moments.hpp"

#include <complex>
#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace fmr {

enum class Weighting { None, NPlus1 };

struct FeatureVector {
  std::vector<double> values;
  std::vector<std::pair<int, int>> layout;  // (n, m), lexicographic
  Weighting weighting = Weighting::None;
};

/// |M_nm| over S(K). NPlus1 multiplies by (|n| + 1), and only for radon-domain sets.
FeatureVector magnitude_features(const MomentSet& ms, Weighting weighting = Weighting::None);

struct PhaseCancelSpec {
  std::vector<std::pair<int, int>> terms;  // (m_i, k_i), sum m_i k_i must be 0
};

inline constexpr double kNearZero = 1e-9;

/// prod_i M_{n_i m_i}^{k_i}. n_choices holds one n per term. Sets *degenerate
/// when every k_i is zero (the product is empty).
std::complex<double> phase_cancel_invariant(const MomentSet& ms, const PhaseCancelSpec& spec,
                                            const std::vector<int>& n_choices, bool* degenerate = nullptr);

struct LabeledFeatures {
  int label = 0;
  FeatureVector features;
};

/// Euclidean nearest neighbour; ties go to the smaller label.
int min_distance_classify(const std::vector<LabeledFeatures>& train, const FeatureVector& query);

double euclidean_distance(const FeatureVector& a, const FeatureVector& b);

void save_features_csv(const FeatureVector& fv, const std::filesystem::path& path);
/// Little-endian blob: u32 count, then (i32 n, i32 m, f64 value) per entry.
std::vector<std::uint8_t> features_blob(const FeatureVector& fv);

}  // namespace fmr
