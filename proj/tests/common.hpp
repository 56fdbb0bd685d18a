#pragma once

#include <string>

#include "zetafluct/zero_search.hpp"
#include "zetafluct/zero_table.hpp"

namespace testutil {

// One modest zero table shared across the unit suite (heights <= 2000,
// ~1830 zeros); computed once per process.
inline const zetafluct::ZeroTable& small_table() {
    static const zetafluct::ZeroTable table = zetafluct::compute_zero_table(2000.0);
    return table;
}

inline std::string data_path(const std::string& name) {
    return std::string(ZETAFLUCT_TEST_DATA_DIR) + "/" + name;
}

// gamma_1, gamma_2, gamma_3, gamma_5, gamma_100 reference ordinates
inline constexpr double kGamma1 = 14.134725141734693790;
inline constexpr double kGamma2 = 21.022039638771554993;
inline constexpr double kGamma3 = 25.010857580145688763;
inline constexpr double kGamma5 = 32.935061587739189691;
inline constexpr double kGamma100 = 236.52422966581620580;

}  // namespace testutil
