#pragma once

#include <span>
#include <string>
#include <vector>

#include "ypde/grid.hpp"
#include "ypde/linalg.hpp"

namespace ypde {

// Vector-valued path sampled on a uniform grid. Values are stored flat,
// point i occupying entries [i*dim, (i+1)*dim).
class DiscretePath {
  public:
    DiscretePath() = default;
    DiscretePath(Grid g, int dim);
    DiscretePath(Grid g, std::vector<double> flat_values, int dim);

    const Grid& grid() const { return grid_; }
    int dim() const { return dim_; }
    int n_points() const { return grid_.n_points; }

    std::span<const double> value(int i) const {
        return {data_.data() + static_cast<size_t>(i) * dim_, static_cast<size_t>(dim_)};
    }
    std::span<double> value(int i) {
        return {data_.data() + static_cast<size_t>(i) * dim_, static_cast<size_t>(dim_)};
    }
    Vec value_vec(int i) const {
        auto s = value(i);
        return Vec(s.begin(), s.end());
    }
    void set_value(int i, const Vec& v);

    // Scalar convenience accessors (dim must be 1).
    double at(int i) const { return data_[static_cast<size_t>(i) * dim_]; }

    const std::vector<double>& raw() const { return data_; }
    std::vector<double>& raw() { return data_; }

    bool all_finite() const;
    void check_finite() const;  // throws on NaN/Inf

    // Euclidean distance between the values at i and j.
    double increment_norm(int i, int j) const;

    DiscretePath operator+(const DiscretePath& o) const;
    DiscretePath operator-(const DiscretePath& o) const;

  private:
    Grid grid_;
    int dim_ = 1;
    std::vector<double> data_;
};

// The lift of a path frozen at a grid index: evaluation at x returns the
// base value at min(freeze_index, x).
struct LiftedPath {
    const DiscretePath* base = nullptr;
    int freeze_index = 0;

    std::span<const double> value(int x) const {
        return base->value(x < freeze_index ? x : freeze_index);
    }
    DiscretePath materialize() const;
};

LiftedPath lift(const DiscretePath& path, int t_index);

// Shared CSV path format: header t,v1,...,vm, %.17g reals, LF endings.
void save_path_csv(const DiscretePath& path, const std::string& filename);
DiscretePath load_path_csv(const std::string& filename);

}  // namespace ypde
