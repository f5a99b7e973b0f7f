#pragma once

// Worked-example data for the built-in self check.

#include <array>

#include "conicpen/kinematics.hpp"

namespace conicpen::reference {

inline constexpr std::array<std::array<int, 2>, 5> kConicPoints{{{2, 3}, {3, 5}, {7, 7}, {13, 6}, {11, 2}}};
// x0^2, x0x1, x0x2, x1^2, x1x2, x2^2
inline constexpr std::array<long, 6> kConicMonomials{-238868, 57912, 83676, -5092, 5092, -15352};
inline constexpr std::array<long, 2> kConicMultipliers{494, 1064};

// Third vertex is (9,8,3); (9,3,8) is not on the reference quadric.
inline constexpr std::array<std::array<int, 3>, 9> kQuadricPoints{
    {{4, 3, 0}, {4, 10, 4}, {9, 8, 3}, {-1, 7, 2}, {2, 3, 5}, {-3, 9, 7}, {12, 0, 0}, {0, 10, 0}, {0, 0, 5}}};
inline constexpr std::array<const char*, 4> kQuadricWeights{"-9842336242680", "39532196597640", "19311493179280",
                                                            "14198910257520"};
// x0^2, x0x1, x0x2, x0x3, x1^2, x1x2, x1x3, x2^2, x2x3, x3^2
inline constexpr std::array<const char*, 10> kQuadricMonomials{
    "-27426081179298420", "4710658547758491", "4323601509519942", "9186924265547229", "-202095981901413",
    "22422685213194",     "-1191822696049068", "-158099339159010", "-558476852988570", "-740341605937509"};

inline constexpr std::array<Point3, 5> kPentagon{{{0, 0, 0}, {5, 0, 0}, {1, -1, 0}, {0, -3, 0}, {4, -2, 0}}};

// First vector uses 0.1380 and 0.8324; 0.1389 and 0.08324 break the unit norm.
inline constexpr std::array<double, 8> kDisplacementFirst{0.1380, 0.8324, -0.2391, 0.4806,
                                                          1.8555, -0.5330, -0.4972, 0.1428};
inline constexpr std::array<double, 8> kDisplacementSecond{0.6333, 0.3411, -0.3656, 0.5907,
                                                           0.7005, -0.7510, 0.1877, -0.2012};
inline constexpr std::array<Point3, 5> kImagesFirst{{{-2.8265, 0, -2.8265},
                                                     {-0.7076, -1.3267, 1.5036},
                                                     {-1.8720, 0.5822, -1.9605},
                                                     {-1.2344, 2.5427, -2.8265},
                                                     {-0.0700, 0.6337, 0.6376}}};
inline constexpr std::array<Point3, 5> kImagesSecond{{{-1.5036, 0, -1.5036},
                                                      {-1.3301, 2.4940, 2.8265},
                                                      {-0.4713, 0.4294, -0.6376},
                                                      {1.4891, -0.2082, -1.5036},
                                                      {0.6304, 1.8564, 1.9605}}};

inline constexpr std::array<double, 8> kRootTable{0.1380, 0.3411, 0.3656, 0.4806, 0.2391, 0.5907, 0.6333, 0.8324};
inline constexpr Point3 kTranslation{-1.9418, 1.2160, -1.3227};

}  // namespace conicpen::reference
