#include "ypde/holder.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ypde {

static void check_interval(const DiscretePath& path, int i0, int i1) {
    if (i0 < 0 || i1 >= path.n_points() || i0 >= i1)
        throw std::invalid_argument("holder: invalid interval [i0, i1]");
}

HolderCertificate holder_norm(const DiscretePath& path, double alpha, int i0, int i1) {
    if (!(alpha > 0.0) || alpha > 1.0)
        throw std::domain_error("holder_norm: alpha must be in (0, 1]");
    check_interval(path, i0, i1);

    HolderCertificate cert;
    cert.alpha = alpha;
    cert.i0 = i0;
    cert.i1 = i1;
    cert.argmax_i = i0;
    cert.argmax_j = i0 + 1;

    const double h = path.grid().step();
    std::vector<double> dt_pow(i1 - i0 + 1, 1.0);
    for (int d = 1; d <= i1 - i0; ++d) dt_pow[d] = std::pow(h * d, alpha);
    double best = -1.0;
    for (int p = i0; p < i1; ++p) {
        for (int q = p + 1; q <= i1; ++q) {
            const double r = path.increment_norm(p, q) / dt_pow[q - p];
            if (r > best) {
                best = r;
                cert.argmax_i = p;
                cert.argmax_j = q;
            }
        }
    }
    cert.norm = std::max(best, 0.0);
    return cert;
}

HolderCertificate holder_norm(const DiscretePath& path, double alpha) {
    return holder_norm(path, alpha, 0, path.n_points() - 1);
}

double sup_norm(const DiscretePath& path, int i0, int i1) {
    check_interval(path, i0, i1);
    double best = 0.0;
    for (int i = i0; i <= i1; ++i) best = std::max(best, vec_norm(path.value_vec(i)));
    return best;
}

double sup_norm(const DiscretePath& path) { return sup_norm(path, 0, path.n_points() - 1); }

double oscillation(const DiscretePath& path, int i0, int i1) {
    check_interval(path, i0, i1);
    double best = 0.0;
    for (int p = i0; p < i1; ++p)
        for (int q = p + 1; q <= i1; ++q) best = std::max(best, path.increment_norm(p, q));
    return best;
}

double holder_metric(const DiscretePath& z, const DiscretePath& y, double alpha, int i0, int i1) {
    DiscretePath d = z - y;
    return holder_norm(d, alpha, i0, i1).norm + vec_dist(z.value_vec(i0), y.value_vec(i0));
}

BoundCheck lift_norm_check(const DiscretePath& path, double alpha, int a, int b) {
    check_interval(path, a, b);
    const double h = path.grid().step();

    // d(lift_t, lift_s) in the sup metric equals max_{x in [s,t]} |Y_x - Y_s|.
    std::vector<double> dt_pow(b - a + 1, 1.0);
    for (int d = 1; d <= b - a; ++d) dt_pow[d] = std::pow(h * d, alpha);
    double lift_norm = 0.0;
    for (int s = a; s < b; ++s) {
        double running = 0.0;
        for (int t = s + 1; t <= b; ++t) {
            running = std::max(running, path.increment_norm(s, t));
            lift_norm = std::max(lift_norm, running / dt_pow[t - s]);
        }
    }

    BoundCheck r;
    r.lhs = lift_norm;
    r.rhs = holder_norm(path, alpha).norm;
    r.pass = cert_leq(r.lhs, r.rhs);
    return r;
}

BoundCheck glue_norm_bound(const DiscretePath& path, double alpha, int split) {
    const int last = path.n_points() - 1;
    if (split <= 0 || split >= last)
        throw std::invalid_argument("glue_norm_bound: split out of range");
    BoundCheck r;
    r.lhs = holder_norm(path, alpha, 0, last).norm;
    r.rhs = 2.0 * (holder_norm(path, alpha, 0, split).norm +
                   holder_norm(path, alpha, split, last).norm);
    r.pass = cert_leq(r.lhs, r.rhs);
    return r;
}

BoundCheck multi_glue_norm_bound(const DiscretePath& path, double alpha, int tau_idx) {
    const int last = path.n_points() - 1;
    if (tau_idx <= 0 || last % tau_idx != 0)
        throw std::invalid_argument("multi_glue_norm_bound: window count must partition the grid");
    const double tau = path.grid().step() * tau_idx;
    const double T = path.grid().length();

    double R = 0.0;
    for (int start = 0; start < last; start += tau_idx)
        R = std::max(R, holder_norm(path, alpha, start, start + tau_idx).norm);

    BoundCheck r;
    r.lhs = holder_norm(path, alpha, 0, last).norm;
    r.rhs = 4.0 * R * std::max(1.0, std::pow(T, 1.0 - alpha) * std::pow(tau, alpha - 1.0));
    r.pass = cert_leq(r.lhs, r.rhs);
    return r;
}

InterpolationBound interpolation_bound(const DiscretePath& path, double alpha, double theta) {
    if (!(theta > 0.0 && theta < 1.0))
        throw std::domain_error("interpolation_bound: theta must be in (0, 1)");
    const int last = path.n_points() - 1;
    const double norm_alpha = holder_norm(path, alpha).norm;
    const double norm_osc = oscillation(path, 0, last);
    const double norm_sup = sup_norm(path);

    InterpolationBound r;
    r.lhs = holder_norm(path, alpha * theta).norm;
    r.rhs_osc = std::pow(norm_osc, 1.0 - theta) * std::pow(norm_alpha, theta);
    r.rhs_sup = std::pow(2.0, 1.0 - theta) * std::pow(norm_sup, 1.0 - theta) *
                std::pow(norm_alpha, theta);
    r.pass = cert_leq(r.lhs, r.rhs_osc) && cert_leq(r.lhs, r.rhs_sup);
    return r;
}

}  // namespace ypde
