#include "ypde/young.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ypde {

IntegrandPath::IntegrandPath(Grid g, int out_dim, int in_dim)
    : grid_(g), out_dim_(out_dim), in_dim_(in_dim),
      values_(g.n_points, Mat(out_dim, in_dim)) {
    if (out_dim < 1 || in_dim < 1) throw std::invalid_argument("IntegrandPath: bad dimensions");
}

double IntegrandPath::holder_norm(double gamma, int i0, int i1) const {
    if (!(gamma > 0.0) || gamma > 1.0)
        throw std::domain_error("IntegrandPath::holder_norm: gamma must be in (0, 1]");
    if (i0 < 0 || i1 >= n_points() || i0 >= i1)
        throw std::invalid_argument("IntegrandPath::holder_norm: invalid interval");
    const double h = grid_.step();
    std::vector<double> dt_pow(i1 - i0 + 1, 1.0);
    for (int d = 1; d <= i1 - i0; ++d) dt_pow[d] = std::pow(h * d, gamma);
    double best = 0.0;
    for (int p = i0; p < i1; ++p)
        for (int q = p + 1; q <= i1; ++q)
            best = std::max(best, mat_dist(values_[q], values_[p]) / dt_pow[q - p]);
    return best;
}

double IntegrandPath::sup_norm(int i0, int i1) const {
    double best = 0.0;
    for (int i = i0; i <= i1; ++i) best = std::max(best, mat_norm(values_[i]));
    return best;
}

DiscretePath IntegrandPath::as_path() const {
    const int d = out_dim_ * in_dim_;
    DiscretePath p(grid_, d);
    for (int i = 0; i < n_points(); ++i) {
        auto dst = p.value(i);
        for (int k = 0; k < d; ++k) dst[k] = values_[i].a[k];
    }
    return p;
}

double sewing_constant(double mu) {
    if (!(mu > 1.0 + 1e-9))
        throw std::domain_error("sewing_constant: mu must exceed 1 (Young theory breaks down)");
    return 1.0 / (1.0 - std::pow(2.0, 1.0 - mu));
}

static void check_compat(const IntegrandPath& w, const DiscretePath& x) {
    if (!(w.grid() == x.grid())) throw std::invalid_argument("young: grid mismatch");
    if (w.in_dim() != x.dim())
        throw std::invalid_argument("young: integrand domain does not match driver dimension");
}

Vec young_sum(const IntegrandPath& w, const DiscretePath& x, int i0, int i1) {
    check_compat(w, x);
    if (i0 < 0 || i1 >= x.n_points() || i0 >= i1)
        throw std::invalid_argument("young_sum: invalid interval");
    Vec acc(w.out_dim(), 0.0);
    Vec dx(x.dim());
    for (int p = i0; p < i1; ++p) {
        auto a = x.value(p);
        auto b = x.value(p + 1);
        for (int k = 0; k < x.dim(); ++k) dx[k] = b[k] - a[k];
        mat_vec_accum(w.value(p), dx, acc);
    }
    return acc;
}

YoungResult young_integrate(const IntegrandPath& w, const DiscretePath& x, const Vec& a,
                            int i0, int i1, double mu) {
    check_compat(w, x);
    if (i0 < 0 || i1 >= x.n_points() || i0 >= i1)
        throw std::invalid_argument("young_integrate: invalid interval");
    if (static_cast<int>(a.size()) != w.out_dim())
        throw std::invalid_argument("young_integrate: initial value dimension mismatch");

    DiscretePath out(x.grid(), w.out_dim());
    Vec acc = a;
    for (int j = 0; j <= i0; ++j) out.set_value(j, acc);
    Vec dx(x.dim());
    for (int p = i0; p < i1; ++p) {
        auto u = x.value(p);
        auto v = x.value(p + 1);
        for (int k = 0; k < x.dim(); ++k) dx[k] = v[k] - u[k];
        mat_vec_accum(w.value(p), dx, acc);
        out.set_value(p + 1, acc);
    }
    for (int j = i1 + 1; j < x.n_points(); ++j) out.set_value(j, acc);

    YoungResult r;
    r.integral_path = std::move(out);
    r.level = static_cast<int>(std::lround(std::log2(x.n_points() - 1)));
    r.k_constant = sewing_constant(mu);
    return r;
}

CertificateResult young_loeve_certificate(const IntegrandPath& w, const DiscretePath& x,
                                          double alpha, double gamma, int s, int t) {
    if (!(alpha + gamma > 1.0))
        throw std::domain_error("young_loeve_certificate: alpha + gamma must exceed 1");
    check_compat(w, x);
    if (s < 0 || t >= x.n_points() || s >= t)
        throw std::invalid_argument("young_loeve_certificate: invalid interval");

    Vec sum = young_sum(w, x, s, t);
    Vec dx(x.dim());
    auto xa = x.value(s);
    auto xb = x.value(t);
    for (int k = 0; k < x.dim(); ++k) dx[k] = xb[k] - xa[k];
    Vec first(w.out_dim(), 0.0);
    mat_vec_accum(w.value(s), dx, first);
    for (int k = 0; k < w.out_dim(); ++k) sum[k] -= first[k];

    const double dt = x.grid().step() * (t - s);
    CertificateResult r;
    r.lhs = vec_norm(sum);
    r.rhs = sewing_constant(alpha + gamma) * w.holder_norm(gamma, s, t) *
            holder_norm(x, alpha, s, t).norm * std::pow(dt, alpha + gamma);
    r.pass = cert_leq(r.lhs, r.rhs);
    return r;
}

CertificateResult operator_norm_certificate(const IntegrandPath& w, const DiscretePath& x,
                                            double alpha, double gamma, int i0, int i1) {
    if (!(alpha + gamma > 1.0))
        throw std::domain_error("operator_norm_certificate: alpha + gamma must exceed 1");
    check_compat(w, x);
    if (i0 < 0 || i1 >= x.n_points() || i0 >= i1)
        throw std::invalid_argument("operator_norm_certificate: invalid interval");
    const double tau = x.grid().step() * (i1 - i0);
    if (tau > 1.0 + 1e-15)
        throw std::invalid_argument("operator_norm_certificate: window length must be <= 1");

    Vec a(w.out_dim(), 0.0);
    YoungResult yr = young_integrate(w, x, a, i0, i1, alpha + gamma);

    CertificateResult r;
    r.lhs = holder_norm(yr.integral_path, alpha, i0, i1).norm;
    r.rhs = (sewing_constant(alpha + gamma) + 1.0) * holder_norm(x, alpha, i0, i1).norm *
            (w.holder_norm(gamma, i0, i1) + mat_norm(w.value(i0)));
    r.pass = cert_leq(r.lhs, r.rhs);
    return r;
}

ConvergenceTable convergence_study(const IntegrandPath& w, const DiscretePath& x,
                                   int level_min, int level_max) {
    check_compat(w, x);
    if (level_max - level_min < 2)
        throw std::invalid_argument("convergence_study: need at least 3 levels");
    const int n = x.n_points();
    const int finest = level_max;
    if (n != (1 << finest) + 1)
        throw std::invalid_argument("convergence_study: driver must have 2^level_max + 1 points");
    if (level_min < 1) throw std::invalid_argument("convergence_study: level_min must be >= 1");

    ConvergenceTable table;
    std::vector<Vec> values;
    for (int lvl = level_min; lvl <= level_max; ++lvl) {
        const int stride = 1 << (finest - lvl);
        Vec acc(w.out_dim(), 0.0);
        Vec dx(x.dim());
        for (int p = 0; p + stride < n; p += stride) {
            auto a = x.value(p);
            auto b = x.value(p + stride);
            for (int k = 0; k < x.dim(); ++k) dx[k] = b[k] - a[k];
            mat_vec_accum(w.value(p), dx, acc);
        }
        values.push_back(acc);
        ConvergenceRow row;
        row.level = lvl;
        row.n_points = (1 << lvl) + 1;
        row.value = acc;
        table.rows.push_back(row);
    }
    for (size_t i = 0; i + 1 < values.size(); ++i)
        table.rows[i].successive_diff = vec_dist(values[i], values[i + 1]);

    // Least-squares fit of log2(diff) ~ c - rate * level, skipping underflows.
    std::vector<double> xs, ys;
    for (size_t i = 0; i + 1 < table.rows.size(); ++i) {
        const double d = table.rows[i].successive_diff;
        if (d > 1e-14) {
            xs.push_back(static_cast<double>(table.rows[i].level));
            ys.push_back(std::log2(d));
        }
    }
    for (size_t i = 0; i + 2 < table.rows.size(); ++i) {
        const double d0 = table.rows[i].successive_diff;
        const double d1 = table.rows[i + 1].successive_diff;
        if (d0 > 1e-14 && d1 > 1e-14) table.rows[i].local_rate = std::log2(d0) - std::log2(d1);
    }

    if (xs.size() < 2) {
        table.all_diffs_zero = true;
        table.fitted_rate = 0.0;
        return table;
    }
    double mx = 0.0, my = 0.0;
    for (size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= xs.size();
    my /= ys.size();
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < xs.size(); ++i) {
        num += (xs[i] - mx) * (ys[i] - my);
        den += (xs[i] - mx) * (xs[i] - mx);
    }
    table.fitted_rate = -num / den;
    return table;
}

}  // namespace ypde
