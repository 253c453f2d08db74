#pragma once

#include <vector>

#include "ypde/holder.hpp"
#include "ypde/path.hpp"

namespace ypde {

// Path of linear maps R^n -> R^m sampled on a grid (the Young integrand W).
class IntegrandPath {
  public:
    IntegrandPath() = default;
    IntegrandPath(Grid g, int out_dim, int in_dim);

    const Grid& grid() const { return grid_; }
    int out_dim() const { return out_dim_; }
    int in_dim() const { return in_dim_; }
    int n_points() const { return grid_.n_points; }

    const Mat& value(int i) const { return values_[i]; }
    Mat& value(int i) { return values_[i]; }

    // Frobenius-metric Holder norm over [i0, i1]; exact pair scan.
    double holder_norm(double gamma, int i0, int i1) const;
    double sup_norm(int i0, int i1) const;

    // Flatten to a DiscretePath of dimension m*n (for reuse of path tooling).
    DiscretePath as_path() const;

  private:
    Grid grid_;
    int out_dim_ = 1;
    int in_dim_ = 1;
    std::vector<Mat> values_;
};

// k_mu = 1 / (1 - 2^{1-mu}); requires mu > 1.
double sewing_constant(double mu);

struct YoungResult {
    DiscretePath integral_path;  // running left-point sum, starts at a
    int level = 0;
    double k_constant = 0.0;
};

// Running left-point Young sum I_j = a + sum_{p=i0}^{j-1} W_p (X_{p+1} - X_p)
// on the shared grid of W and X. Outside [i0, i1] the result is held constant
// at the nearest endpoint value.
YoungResult young_integrate(const IntegrandPath& w, const DiscretePath& x, const Vec& a,
                            int i0, int i1, double mu = 2.0);

// Increment of the left-point sum over [i0, i1], as a vector in R^m.
Vec young_sum(const IntegrandPath& w, const DiscretePath& x, int i0, int i1);

struct CertificateResult {
    double lhs = 0.0;
    double rhs = 0.0;
    bool pass = true;
};

// |sum_{[s,t]} - W_s (X_t - X_s)|
//   <= k_{alpha+gamma} |W|_{gamma;[s,t]} |X|_{alpha;[s,t]} (t-s)^{alpha+gamma}
CertificateResult young_loeve_certificate(const IntegrandPath& w, const DiscretePath& x,
                                          double alpha, double gamma, int s, int t);

// |I(W)|_{alpha;[i0,i1]}
//   <= (k_{alpha+gamma}+1) |X|_{alpha;[i0,i1]} (|W|_{gamma;[i0,i1]} + |W_{i0}|),
// valid for window length <= 1.
CertificateResult operator_norm_certificate(const IntegrandPath& w, const DiscretePath& x,
                                            double alpha, double gamma, int i0, int i1);

struct ConvergenceRow {
    int level = 0;
    int n_points = 0;
    Vec value;
    double successive_diff = 0.0;  // |value(level+1) - value(level)|, 0 on last row
    double local_rate = 0.0;       // log2 diff(level) - log2 diff(level+1)
};

struct ConvergenceTable {
    std::vector<ConvergenceRow> rows;
    double fitted_rate = 0.0;
    bool all_diffs_zero = false;
};

// Full-interval Young sums on nested dyadic subgrids of the finest sample.
// W and X must be sampled at n = 2^level_max + 1 points. The fitted rate is
// the least-squares slope of log2(successive_diff) against -level, discarding
// diffs below 1e-14.
ConvergenceTable convergence_study(const IntegrandPath& w, const DiscretePath& x,
                                   int level_min, int level_max);

}  // namespace ypde
