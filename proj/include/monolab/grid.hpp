#ifndef MONOLAB_GRID_HPP
#define MONOLAB_GRID_HPP

#include <cmath>
#include <vector>

#include "monolab/errors.hpp"

namespace monolab {

inline std::vector<double> linear_grid(double lo, double hi, int count) {
    if (count < 2) throw ArgumentError("linear_grid: need at least 2 points");
    if (!(hi > lo)) throw ArgumentError("linear_grid: need hi > lo");
    std::vector<double> g(count);
    for (int i = 0; i < count; ++i) {
        g[i] = lo + (hi - lo) * static_cast<double>(i) / (count - 1);
    }
    g.back() = hi;
    return g;
}

// [0, tmax] with points crowding toward 0: t_i = expm1(s_i * log1p(tmax)).
inline std::vector<double> log_dense_grid(double tmax, int count) {
    if (count < 2) throw ArgumentError("log_dense_grid: need at least 2 points");
    if (!(tmax > 0.0)) throw ArgumentError("log_dense_grid: need tmax > 0");
    const double span = std::log1p(tmax);
    std::vector<double> g(count);
    for (int i = 0; i < count; ++i) {
        g[i] = std::expm1(span * static_cast<double>(i) / (count - 1));
    }
    g.front() = 0.0;
    g.back() = tmax;
    return g;
}

inline std::vector<double> default_alpha_grid() { return linear_grid(0.01, 0.99, 99); }
inline std::vector<double> default_kappa_grid() { return log_dense_grid(5.0, 256); }

}  // namespace monolab

#endif
