#pragma once

#include <cmath>
#include <stdexcept>

namespace ypde {

// Uniform time grid on [t0, t1] with n_points samples (both endpoints included).
struct Grid {
    double t0 = 0.0;
    double t1 = 1.0;
    int n_points = 2;

    Grid() = default;
    Grid(double a, double b, int n) : t0(a), t1(b), n_points(n) {
        if (!(t0 < t1)) throw std::invalid_argument("Grid: t0 must be < t1");
        if (n_points < 2) throw std::invalid_argument("Grid: need at least 2 points");
    }

    double step() const { return (t1 - t0) / (n_points - 1); }

    double time(int i) const { return t0 + step() * i; }

    // Exact inverse of time() for on-grid times; rounds for near-grid inputs.
    int index_of(double t) const {
        int i = static_cast<int>(std::lround((t - t0) / step()));
        if (i < 0) i = 0;
        if (i >= n_points) i = n_points - 1;
        return i;
    }

    double length() const { return t1 - t0; }

    bool operator==(const Grid& o) const {
        return t0 == o.t0 && t1 == o.t1 && n_points == o.n_points;
    }
};

}  // namespace ypde
