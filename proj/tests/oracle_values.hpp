#pragma once

// Generated by tests/oracles/reference_values.py (mpmath, 50 digits). Do not edit.

namespace oracle {
inline constexpr double kHarmonicA05N3R07Re = -0.36788927479080743150;
inline constexpr double kHarmonicA05N3R07Im = -0.023099403082453290785;
inline constexpr double kHarmonicA15Nm2R035Re = -0.54499398968167927806;
inline constexpr double kHarmonicA15Nm2R035Im = -0.32636326869979788175;
inline constexpr double kPolyA2P3Q2N0R05 = 0.59841342060214901691;
inline constexpr double kPolyA2P3Q2N5R06 = 0.63139766900481696437;
inline constexpr double kPolyA07P25Q15N4R03 = 0.77397683507200653411;
inline constexpr double kW2A2P3Q2N0K0 = 1.3819765978853419171;
inline constexpr double kW2A15P35Q12N3K2 = 123.39125576884358753;
inline constexpr double kSsimConst02vs08 = 0.47066607851786501985;
inline constexpr double kTheta1_0_1Re = -6.3723676445298091081e-58;
inline constexpr double kTheta1_0_1Im = -3.1415926535897932385;
inline constexpr double kTheta2_3_1Re = 3.1861838222649045541e-58;
inline constexpr double kTheta2_3_1Im = -0.78539816339744830962;
inline constexpr double kGenBinomHalf3 = 0.062500000000000000000;
inline constexpr double kGenBinomMinusQuarter4 = 0.095214843750000000000;
inline constexpr double kSnrExample = 637.50000000000000000;
}  // namespace oracle
