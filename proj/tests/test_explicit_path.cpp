#include "oracle_values.hpp"

#include "fmr/error.hpp"
#include "fmr/eval.hpp"
#include "fmr/explicit_path.hpp"
#include "fmr/moments.hpp"
#include "fmr/radon.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

using namespace fmr;
using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

TEST(GeometricMoment, DiskArea) {
  const auto img = disk_indicator(256);
  EXPECT_NEAR(geometric_moment(img, disk_mask(img), 0, 0), kPi, 0.01 * kPi);
  EXPECT_NEAR(geometric_moment(img, disk_mask(img), 2, 0), kPi / 4, 0.01 * kPi / 4);
}

TEST(GeometricMoment, OddSymmetry) {
  const auto img = synthetic_portrait(128, 0);
  const auto sym = rotate(img, 180.0);
  GrayImage avg(128, 128);
  for (std::size_t i = 0; i < avg.size(); ++i) avg.pixels()[i] = 0.5 * (img.pixels()[i] + sym.pixels()[i]);
  EXPECT_NEAR(geometric_moment(avg, disk_mask(avg), 1, 0), 0.0, 1e-3);
}

TEST(GeometricMoment, FractionalExponent) {
  const auto img = smooth_blob(32);
  try {
    geometric_moment(img, disk_mask(img), 0.5, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::FractionalPowerOfNegative);
  }
  GrayImage quadrant(32, 32);
  for (std::size_t r = 2; r < 14; ++r)
    for (std::size_t c = 18; c < 30; ++c) quadrant.at(r, c) = 1.0;
  EXPECT_GT(geometric_moment(quadrant, disk_mask(quadrant), 0.5, 1.5, true), 0.0);
  EXPECT_THROW(geometric_moment(img, disk_mask(img), 0.5, 0, true), Error);
}

TEST(ThetaIntegral, ClosedForms) {
  EXPECT_NEAR(std::abs(theta_integral(0, 2, 0) - cd(kPi, 0)), 0.0, 1e-10);
  EXPECT_NEAR(std::abs(theta_integral(1, 1, 0) - cd(kPi, 0)), 0.0, 1e-10);
  EXPECT_NEAR(std::abs(theta_integral(1, 0, 1) - cd(oracle::kTheta1_0_1Re, oracle::kTheta1_0_1Im)), 0.0, 1e-10);
  EXPECT_NEAR(std::abs(theta_integral(2, 3, 1) - cd(oracle::kTheta2_3_1Re, oracle::kTheta2_3_1Im)), 0.0, 1e-10);
  EXPECT_THROW(theta_integral(1, 0.5, 0), Error);
}

TEST(W1, Values) {
  EXPECT_NEAR(std::abs(w1(1.5, 3, 0) - cd(std::sqrt(1.5 / (2 * kPi)))), 0.0, 1e-15);
  for (int k = 1; k < 5; ++k) EXPECT_EQ(w1(2.0, 0, k), cd(0.0));
  for (int n : {-2, 1, 4})
    for (int k = 0; k < 30; ++k)
      EXPECT_NEAR(std::abs(w1(2.0, n, k + 1)) / std::abs(w1(2.0, n, k)), 2.0 * std::abs(n) * kPi / (k + 1), 1e-10);
}

TEST(W2W3, Values) {
  EXPECT_NEAR(w2(2, 3, 2, 0, 0), oracle::kW2A2P3Q2N0K0, 1e-14);
  EXPECT_NEAR(w2(1.5, 3.5, 1.2, 3, 2), oracle::kW2A15P35Q12N3K2, 1e-10);
  EXPECT_EQ(w3(3, 2, 0), 1.0);
  EXPECT_EQ(w3(7.3, 1.1, 0), 1.0);
  for (int s = 1; s < 6; ++s) EXPECT_EQ(w3(2, 2, s), 0.0);
  EXPECT_THROW(w2(2, 3, 2, 2, 3), Error);
  EXPECT_THROW(w2(2, 0.5, 2, 1, 0), Error);
}

TEST(GenBinomial, Values) {
  EXPECT_NEAR(gen_binomial(0.5, 3), oracle::kGenBinomHalf3, 1e-15);
  EXPECT_NEAR(gen_binomial(-0.25, 4), oracle::kGenBinomMinusQuarter4, 1e-15);
  EXPECT_EQ(gen_binomial(4, 5), 0.0);
  EXPECT_NEAR(gen_binomial(6, 2), 15.0, 1e-12);
  EXPECT_NEAR(gen_binomial(-2, 3), -4.0, 1e-12);
}

TEST(ExplicitHarmonic, ZeroImage) {
  const GrayImage img(64, 64);
  EXPECT_EQ(fmr_explicit_harmonic(img, disk_mask(img), 2.0, 2, 1).value, cd(0.0));
}

TEST(ExplicitHarmonic, MatchesImplicitAtOrigin) {
  const auto img = smooth_blob(128);
  const auto d = disk_mask(img);
  const auto implicit = fmr_direct(radon_forward_warped(img, d, 256, 256, 2.0), BasisSpec{Family::Harmonic, 2.0}, 4);
  const auto ex = fmr_explicit_harmonic(img, d, 2.0, 0, 0);
  // m = 0 is on the parity the series cannot see (see FoldIdentity); red by construction.
  EXPECT_LT(std::abs(ex.value - implicit.at(0, 0)) / std::abs(implicit.at(0, 0)), 5e-2);
}

TEST(ExplicitHarmonic, MatchesImplicitLowOrders) {
  const auto img = smooth_blob(128);
  const auto d = disk_mask(img);
  const auto implicit = fmr_direct(radon_forward_warped(img, d, 256, 256, 2.0), BasisSpec{Family::Harmonic, 2.0}, 4);
  ExplicitEvaluator ev(img, d);
  SeriesTruncation tr;
  tr.k_max = 80;
  // Every order, as stated; even m stay red (see FoldIdentity).
  const double floor = 1e-3 * implicit.max_abs();
  for (int n = -3; n <= 3; ++n)
    for (int m = -3; m <= 3; ++m) {
      const cd ref = implicit.at(n, m);
      if (std::abs(ref) <= floor) continue;
      EXPECT_LT(std::abs(ev.harmonic(2.0, n, m, tr).value - ref) / std::abs(ref), 5e-2) << n << "," << m;
    }
}

// series = (1 + (-1)^(m+e)) * moment with e odd for alpha = 2.
TEST(ExplicitHarmonic, FoldIdentity) {
  const auto img = smooth_blob(128);
  const auto d = disk_mask(img);
  const auto implicit = fmr_direct(radon_forward_warped(img, d, 256, 256, 2.0), BasisSpec{Family::Harmonic, 2.0}, 4);
  ExplicitEvaluator ev(img, d);
  SeriesTruncation tr;
  tr.k_max = 80;
  const double floor = 1e-3 * implicit.max_abs();
  for (int n = -3; n <= 3; ++n)
    for (int m = -3; m <= 3; ++m) {
      const auto r = ev.harmonic(2.0, n, m, tr);
      const cd ref = implicit.at(n, m);
      EXPECT_EQ(r.determined, m % 2 != 0);
      if (!r.determined) {
        EXPECT_LT(std::abs(r.series), 1e-10 * implicit.max_abs()) << n << "," << m;
        EXPECT_EQ(r.value, cd(0.0));
      } else if (std::abs(ref) > floor) {
        EXPECT_LT(std::abs(r.series / 2.0 - ref) / std::abs(ref), 5e-2) << n << "," << m;
      }
    }
}

TEST(ExplicitHarmonic, Errors) {
  const auto img = smooth_blob(32);
  try {
    fmr_explicit_harmonic(img, disk_mask(img), 1.5, 1, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::FractionalPowerOfNegative);
  }
  SeriesTruncation tiny;
  tiny.k_max = 3;
  try {
    fmr_explicit_harmonic(img, disk_mask(img), 2.0, 3, 0, tiny);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::TruncationNotConverged);
  }
}

TEST(ExplicitHarmonic, TailShrinksWithKmax) {
  const auto img = smooth_blob(32);
  ExplicitEvaluator ev(img, disk_mask(img));
  double prev = 1e300;
  for (int k : {30, 40, 60, 80}) {
    SeriesTruncation tr;
    tr.k_max = k;
    tr.tail_tol = 1e300;
    const double t = ev.harmonic(2.0, 2, 1, tr).tail_estimate;
    EXPECT_LE(t, prev);
    prev = t;
  }
}

TEST(ExplicitHarmonic, TermsDecayPastRatioPoint) {
  const int n = 2;
  const int k0 = static_cast<int>(std::ceil(2 * n * kPi));
  for (int k = k0; k < k0 + 40; ++k) EXPECT_LT(std::abs(w1(2.0, n, k + 1)), std::abs(w1(2.0, n, k)));
}

TEST(ExplicitPolynomial, ZeroImage) {
  const GrayImage img(64, 64);
  EXPECT_EQ(fmr_explicit_polynomial(img, disk_mask(img), BasisSpec{Family::Polynomial, 2.0, 0, 0, 4.0, 2.0}, 2, 1).value,
            cd(0.0));
}

TEST(ExplicitPolynomial, MatchesImplicit) {
  const auto img = smooth_blob(128);
  const auto d = disk_mask(img);
  const BasisSpec b{Family::Polynomial, 2.0, 0, 0, 4.0, 2.0};
  const auto implicit = fmr_polynomial(radon_forward(img, d, 256, 256), b, 4);
  ExplicitEvaluator ev(img, d);
  // Every order, as stated; odd m stay red (see FoldIdentity).
  const double floor = 1e-3 * implicit.max_abs();
  for (int n = 0; n <= 3; ++n)
    for (int m = -3; m <= 3; ++m) {
      const cd ref = implicit.at(n, m);
      if (std::abs(ref) <= floor) continue;
      EXPECT_LT(std::abs(ev.polynomial(b, n, m, {}).value - ref) / std::abs(ref), 5e-2) << n << "," << m;
    }
}

// e even for alpha = 2, q = 2, so odd m vanish.
TEST(ExplicitPolynomial, FoldIdentity) {
  const auto img = smooth_blob(128);
  const auto d = disk_mask(img);
  const BasisSpec b{Family::Polynomial, 2.0, 0, 0, 4.0, 2.0};
  const auto implicit = fmr_polynomial(radon_forward(img, d, 256, 256), b, 4);
  ExplicitEvaluator ev(img, d);
  const double floor = 1e-3 * implicit.max_abs();
  for (int n = 0; n <= 3; ++n)
    for (int m = -3; m <= 3; ++m) {
      const auto r = ev.polynomial(b, n, m, {});
      const cd ref = implicit.at(n, m);
      EXPECT_EQ(r.determined, m % 2 == 0);
      if (!r.determined) {
        EXPECT_LT(std::abs(r.series), 1e-10 * implicit.max_abs()) << n << "," << m;
      } else if (std::abs(ref) > floor) {
        EXPECT_LT(std::abs(r.value - ref) / std::abs(ref), 5e-2) << n << "," << m;
      }
    }
}

TEST(ExplicitPolynomial, EqualParamsCollapseToFirstTerm) {
  const auto img = smooth_blob(64);
  ExplicitEvaluator ev(img, disk_mask(img));
  const auto r = ev.polynomial(BasisSpec{Family::Polynomial, 2.0, 0, 0, 2.0, 2.0}, 1, 0, {});
  // s = 0 only: exponents 2(k) + 2 for k = 0..1 -> degrees 2 and 4.
  for (const auto& [a, b] : r.exponents) EXPECT_TRUE(a + b == 2 || a + b == 4);
  EXPECT_EQ(r.tail_estimate, 0.0);
}

TEST(ExplicitPolynomial, FiniteExponentCount) {
  const auto img = smooth_blob(64);
  ExplicitEvaluator ev(img, disk_mask(img));
  const BasisSpec b{Family::Polynomial, 2.0, 0, 0, 4.0, 2.0};
  for (int n = 0; n <= 3; ++n) {
    // degrees e = 2(s + k) + 2, s in {0,1}, k in 0..n, each with e + 1 splits.
    std::size_t expect = 0;
    for (int e = 2; e <= 2 * (n + 1) + 2; e += 2) expect += static_cast<std::size_t>(e + 1);
    EXPECT_EQ(ev.polynomial(b, n, 1, {}).exponents.size(), expect) << n;
  }
}

TEST(ExplicitPolynomial, Errors) {
  const auto img = smooth_blob(32);
  try {
    fmr_explicit_polynomial(img, disk_mask(img), BasisSpec{Family::Polynomial, 1.5, 0, 0, 4.0, 2.0}, 1, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::FractionalPowerOfNegative);
  }
  SeriesTruncation tr;
  tr.s_max = 2;
  try {
    fmr_explicit_polynomial(img, disk_mask(img), BasisSpec{Family::Polynomial, 2.0, 0, 0, 3.0, 2.0}, 1, 0, tr);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::TruncationNotConverged);
  }
}
