#include "ypde/path.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ypde {

DiscretePath::DiscretePath(Grid g, int dim) : grid_(g), dim_(dim) {
    if (dim < 1) throw std::invalid_argument("DiscretePath: dim must be >= 1");
    data_.assign(static_cast<size_t>(grid_.n_points) * dim_, 0.0);
}

DiscretePath::DiscretePath(Grid g, std::vector<double> flat_values, int dim)
    : grid_(g), dim_(dim), data_(std::move(flat_values)) {
    if (dim < 1) throw std::invalid_argument("DiscretePath: dim must be >= 1");
    if (data_.size() != static_cast<size_t>(grid_.n_points) * dim_)
        throw std::invalid_argument("DiscretePath: values length does not match grid");
}

void DiscretePath::set_value(int i, const Vec& v) {
    if (static_cast<int>(v.size()) != dim_)
        throw std::invalid_argument("DiscretePath::set_value: dimension mismatch");
    auto dst = value(i);
    for (int k = 0; k < dim_; ++k) dst[k] = v[k];
}

bool DiscretePath::all_finite() const {
    for (double x : data_)
        if (!std::isfinite(x)) return false;
    return true;
}

void DiscretePath::check_finite() const {
    if (!all_finite()) throw std::runtime_error("DiscretePath: non-finite value");
}

double DiscretePath::increment_norm(int i, int j) const {
    double s = 0.0;
    auto a = value(i), b = value(j);
    for (int k = 0; k < dim_; ++k) {
        const double d = b[k] - a[k];
        s += d * d;
    }
    return std::sqrt(s);
}

DiscretePath DiscretePath::operator+(const DiscretePath& o) const {
    if (!(grid_ == o.grid_) || dim_ != o.dim_)
        throw std::invalid_argument("DiscretePath: grid/dim mismatch");
    DiscretePath r = *this;
    for (size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
    return r;
}

DiscretePath DiscretePath::operator-(const DiscretePath& o) const {
    if (!(grid_ == o.grid_) || dim_ != o.dim_)
        throw std::invalid_argument("DiscretePath: grid/dim mismatch");
    DiscretePath r = *this;
    for (size_t i = 0; i < data_.size(); ++i) r.data_[i] -= o.data_[i];
    return r;
}

DiscretePath LiftedPath::materialize() const {
    DiscretePath out(base->grid(), base->dim());
    for (int i = 0; i < base->n_points(); ++i) {
        auto src = value(i);
        auto dst = out.value(i);
        for (int k = 0; k < base->dim(); ++k) dst[k] = src[k];
    }
    return out;
}

LiftedPath lift(const DiscretePath& path, int t_index) {
    if (t_index < 0 || t_index >= path.n_points())
        throw std::out_of_range("lift: index out of bounds");
    return LiftedPath{&path, t_index};
}

void save_path_csv(const DiscretePath& path, const std::string& filename) {
    std::ofstream out(filename, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + filename);
    out << "t";
    for (int k = 1; k <= path.dim(); ++k) out << ",v" << k;
    out << "\n";
    char buf[64];
    for (int i = 0; i < path.n_points(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g", path.grid().time(i));
        out << buf;
        auto v = path.value(i);
        for (int k = 0; k < path.dim(); ++k) {
            std::snprintf(buf, sizeof(buf), "%.17g", v[k]);
            out << ',' << buf;
        }
        out << "\n";
    }
}

DiscretePath load_path_csv(const std::string& filename) {
    std::ifstream in(filename, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + filename);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty path file: " + filename);
    int dim = 0;
    {
        std::stringstream hs(line);
        std::string tok;
        bool first = true;
        while (std::getline(hs, tok, ',')) {
            if (first) {
                if (tok != "t") throw std::runtime_error("bad path header in " + filename);
                first = false;
            } else {
                ++dim;
            }
        }
    }
    if (dim < 1) throw std::runtime_error("path file has no value columns: " + filename);

    std::vector<double> times;
    std::vector<double> flat;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ls(line);
        std::string tok;
        if (!std::getline(ls, tok, ',')) break;
        times.push_back(std::stod(tok));
        for (int k = 0; k < dim; ++k) {
            if (!std::getline(ls, tok, ','))
                throw std::runtime_error("short row in " + filename);
            flat.push_back(std::stod(tok));
        }
    }
    const int n = static_cast<int>(times.size());
    if (n < 2) throw std::runtime_error("path file needs at least 2 rows: " + filename);

    // Verify strictly increasing, uniform spacing (relative tolerance 1e-9).
    const double h = (times.back() - times.front()) / (n - 1);
    if (!(h > 0)) throw std::runtime_error("path times not increasing in " + filename);
    for (int i = 0; i + 1 < n; ++i) {
        const double d = times[i + 1] - times[i];
        if (!(d > 0) || std::abs(d - h) > 1e-9 * std::abs(h))
            throw std::runtime_error("non-uniform spacing in " + filename);
    }

    Grid g(times.front(), times.back(), n);
    return DiscretePath(g, std::move(flat), dim);
}

}  // namespace ypde
