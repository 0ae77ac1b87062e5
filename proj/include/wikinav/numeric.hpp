#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace wikinav {

// Neumaier compensated sum. Probability vectors here reach 10^5+ entries;
// naive accumulation error (~n*eps) would eat into the 1e-12 mass tolerances.
inline double compensated_sum(std::span<const double> xs) {
    double sum = 0.0;
    double comp = 0.0;
    for (double x : xs) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x)) {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    return sum + comp;
}

inline double l1_distance(std::span<const double> a, std::span<const double> b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d += std::abs(a[i] - b[i]);
    return d;
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

}  // namespace wikinav
