#include "fmr/invariants.hpp"

#include "fmr/error.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <cstdio>
#include <cstring>
#include <fstream>

namespace fmr {

FeatureVector magnitude_features(const MomentSet& ms, Weighting weighting) {
  ms.check_complete();
  FeatureVector fv;
  fv.weighting = weighting;
  const bool weigh = weighting == Weighting::NPlus1 && ms.tag == DomainTag::Radon;
  for (int n = ms.n_min(); n <= ms.n_max(); ++n) {
    for (int m = -ms.K; m <= ms.K; ++m) {
      double v = std::abs(ms.at(n, m));
      if (weigh) v *= static_cast<double>(std::abs(n) + 1);
      fv.layout.emplace_back(n, m);
      fv.values.push_back(v);
    }
  }
  return fv;
}

std::complex<double> phase_cancel_invariant(const MomentSet& ms, const PhaseCancelSpec& spec,
                                            const std::vector<int>& n_choices, bool* degenerate) {
  if (spec.terms.empty()) throw Error(ErrorKind::ConstraintViolated, "phase cancellation needs at least one term");
  if (n_choices.size() != spec.terms.size())
    throw Error(ErrorKind::ConstraintViolated, "one n per (m,k) term is required");
  long long balance = 0;
  bool all_zero = true;
  for (const auto& [m, k] : spec.terms) {
    balance += static_cast<long long>(m) * k;
    if (k != 0) all_zero = false;
  }
  if (balance != 0) throw Error(ErrorKind::ConstraintViolated, "sum of m_i k_i must be zero");
  if (degenerate) *degenerate = all_zero;
  std::complex<double> prod{1.0, 0.0};
  for (std::size_t i = 0; i < spec.terms.size(); ++i) {
    const auto [m, k] = spec.terms[i];
    if (k == 0) continue;
    const int n = n_choices[i];
    if (!ms.contains(n, m)) throw Error(ErrorKind::ConstraintViolated, "moment (n,m) not present in the set");
    const std::complex<double> z = ms.at(n, m);
    if (k < 0 && std::abs(z) < kNearZero)
      throw Error(ErrorKind::NearZeroFactor, "negative power of a near-zero moment");
    std::complex<double> f{1.0, 0.0};
    const std::complex<double> base = k > 0 ? z : 1.0 / z;
    for (int j = 0; j < std::abs(k); ++j) f *= base;
    prod *= f;
  }
  return prod;
}

double euclidean_distance(const FeatureVector& a, const FeatureVector& b) {
  if (a.layout != b.layout) throw Error(ErrorKind::LayoutMismatch, "feature layouts differ");
  double s = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    const double d = a.values[i] - b.values[i];
    s += d * d;
  }
  return std::sqrt(s);
}

int min_distance_classify(const std::vector<LabeledFeatures>& train, const FeatureVector& query) {
  if (train.empty()) throw Error(ErrorKind::EmptyTrainingSet, "no training vectors");
  int best_label = 0;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& t : train) {
    const double d = euclidean_distance(t.features, query);
    if (d < best || (d == best && t.label < best_label)) {
      best = d;
      best_label = t.label;
    }
  }
  return best_label;
}

void save_features_csv(const FeatureVector& fv, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::UnreadableFile, "cannot write " + path.string());
  for (std::size_t i = 0; i < fv.layout.size(); ++i)
    out << (i ? "," : "") << "n" << fv.layout[i].first << "_m" << fv.layout[i].second;
  out << '\n';
  char buf[40];
  for (std::size_t i = 0; i < fv.values.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", fv.values[i]);
    out << (i ? "," : "") << buf;
  }
  out << '\n';
}

std::vector<std::uint8_t> features_blob(const FeatureVector& fv) {
  std::vector<std::uint8_t> blob;
  auto put = [&](const void* p, std::size_t n) {
    const auto* b = static_cast<const std::uint8_t*>(p);
    // Byte order is fixed to little-endian.
    std::uint8_t tmp[8];
    std::memcpy(tmp, b, n);
    if constexpr (std::endian::native == std::endian::big) std::reverse(tmp, tmp + n);
    blob.insert(blob.end(), tmp, tmp + n);
  };
  const auto count = static_cast<std::uint32_t>(fv.values.size());
  put(&count, 4);
  for (std::size_t i = 0; i < fv.values.size(); ++i) {
    const auto n = static_cast<std::int32_t>(fv.layout[i].first);
    const auto m = static_cast<std::int32_t>(fv.layout[i].second);
    put(&n, 4);
    put(&m, 4);
    put(&fv.values[i], 8);
  }
  return blob;
}

}  // namespace fmr
