#pragma once

// Published coefficient tables for the 2x2x2 and 2x2x3 boxes.

#include <vector>

namespace wulff::reference {

inline const std::vector<long long> kPedestal222 = {1, 0, 2, 2, 3, 3, 5, 4, 8, 4, 5, 3, 3, 2, 2, 0, 1};

inline const std::vector<long long> kPedestal223 = {
    1,   0,   2,   3,   5,   6,   12,  14,  25,  29,  41,  46,  60,  68, 86, 96, 117, 123, 141, 137, 144, 140,
    144, 137, 141, 123, 117, 96,  86,  68,  60,  46,  41,  29,  25,  14, 12, 6,  5,   3,   2,   0,   1};

inline const std::vector<long long> kSpatial222 = {1, 1, 4, 7, 14, 23, 41, 63, 104, 152, 230};
inline const std::vector<long long> kSpatial223 = {1, 1, 4, 8, 17, 30, 58, 97, 171, 276, 450};

}  // namespace wulff::reference
