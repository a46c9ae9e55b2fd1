#pragma once

// Published ranking of 38 stock indices (January 2000 - August 2011): the
// (H, D, ApEn) estimates, the printed Efficiency Index, and the per-component
// ranks. Rows are in published EI order, so row position + 1 is the EI rank.
// The printed EI equals the un-rooted sum of squared scaled deviations.

#include <array>
#include <cstddef>
#include <string_view>

namespace effidx::fixture {

struct PublishedRow {
    std::string_view ticker;
    std::string_view country;
    double hurst;
    double fractal;
    double entropy;
    double ei;
    std::size_t hurst_rank;
    std::size_t fractal_rank;
    std::size_t entropy_rank;
};

inline constexpr std::array<PublishedRow, 38> kPublishedRanking{{
    {"AEX", "Netherlands", 0.5358, 1.4356, 0.5246, 0.0619, 12, 22, 1},
    {"CAC", "France", 0.5118, 1.4592, 0.5059, 0.0628, 4, 10, 2},
    {"DAX", "Germany", 0.5334, 1.4646, 0.4807, 0.0698, 9, 8, 4},
    {"XU100", "Turkey", 0.5493, 1.4350, 0.4870, 0.0724, 15, 23, 3},
    {"FTSE", "UK", 0.4470, 1.5171, 0.4500, 0.0787, 18, 2, 5},
    {"NYA", "USA", 0.5348, 1.4457, 0.4418, 0.0821, 11, 16, 7},
    {"NIKKEI", "Japan", 0.5063, 1.4716, 0.4285, 0.0825, 3, 5, 8},
    {"KS11", "South Korea", 0.5137, 1.4204, 0.4473, 0.0829, 5, 26, 6},
    {"SSMI", "Switzerland", 0.5297, 1.4617, 0.3983, 0.0929, 8, 9, 10},
    {"BEL20", "Belgium", 0.5481, 1.4574, 0.3869, 0.0981, 13, 12, 11},
    {"MIBTEL", "Italy", 0.5267, 1.4728, 0.3525, 0.1063, 7, 4, 15},
    {"NASD", "USA", 0.5340, 1.4526, 0.3428, 0.1114, 10, 14, 18},
    {"SPX", "USA", 0.5026, 1.4437, 0.3405, 0.1119, 2, 18, 19},
    {"KFX", "Denmark", 0.5927, 1.4665, 0.3516, 0.1148, 25, 7, 16},
    {"DJI", "USA", 0.4477, 1.4685, 0.3284, 0.1165, 16, 6, 20},
    {"BUX", "Hungary", 0.6448, 1.4844, 0.3811, 0.1170, 33, 1, 12},
    {"TSE", "Canada", 0.5626, 1.4375, 0.3272, 0.1210, 22, 21, 21},
    {"TA100", "Israel", 0.6536, 1.4739, 0.3648, 0.1251, 35, 3, 14},
    {"BUSP", "Brazil", 0.6055, 1.4142, 0.3435, 0.1262, 28, 27, 17},
    {"JKSE", "Indonesia", 0.6505, 1.3657, 0.3986, 0.1311, 34, 33, 9},
    {"WIG20", "Poland", 0.5232, 1.4545, 0.2790, 0.1326, 6, 13, 26},
    {"ATX", "Austria", 0.6744, 1.4455, 0.3669, 0.1336, 37, 17, 13},
    {"HSI", "Hong-Kong", 0.5945, 1.4033, 0.3033, 0.1396, 27, 28, 22},
    {"IPC", "Mexico", 0.5550, 1.3817, 0.2991, 0.1398, 19, 30, 24},
    {"ASE", "Greece", 0.6210, 1.3926, 0.2911, 0.1518, 32, 29, 25},
    {"SSEC", "China", 0.6205, 1.3698, 0.3019, 0.1533, 31, 32, 23},
    {"IGBM", "Spain", 0.5615, 1.4581, 0.1912, 0.1691, 21, 11, 31},
    {"STRAITS", "Singapore", 0.5937, 1.4500, 0.2027, 0.1702, 26, 15, 30},
    {"PX", "Czech Rep", 0.6124, 1.4386, 0.2053, 0.1743, 29, 19, 29},
    {"MERVAL", "Argentina", 0.5850, 1.3729, 0.2225, 0.1745, 23, 31, 27},
    {"HEX", "Finland", 0.5524, 1.4385, 0.1747, 0.1768, 17, 20, 34},
    {"BSE", "India", 0.6139, 1.4313, 0.1842, 0.1841, 30, 24, 32},
    {"SET", "Thailand", 0.5591, 1.4311, 0.1590, 0.1851, 20, 25, 35},
    {"KLSE", "Malaysia", 0.5489, 1.3620, 0.1773, 0.1906, 14, 34, 33},
    {"IGRA", "Peru", 0.6806, 1.3435, 0.2160, 0.2108, 38, 35, 28},
    {"SAX", "Slovakia", 0.6673, 1.3132, 0.1534, 0.2421, 36, 38, 36},
    {"IBC", "Venezuela", 0.5881, 1.3308, 0.0890, 0.2439, 24, 36, 37},
    {"IPSA", "Chile", 0.4997, 1.3187, 0.0239, 0.2711, 1, 37, 38},
}};

/// Published rank correlations of the EI ranking with the entropy, fractal and Hurst component rankings.
inline constexpr double kSpearmanEntropy = 0.94;
inline constexpr double kSpearmanFractal = 0.65;
inline constexpr double kSpearmanHurst = 0.49;

}  // namespace effidx::fixture
