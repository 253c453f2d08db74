#pragma once

#include <utility>

#include "ypde/path.hpp"

namespace ypde {

// Project-wide relative slack for floating-point comparison of certified
// inequalities. The inequalities are strict mathematically; the slack only
// absorbs rounding.
inline constexpr double kCertSlack = 1e-12;

inline bool cert_leq(double lhs, double rhs) { return lhs <= rhs * (1.0 + kCertSlack) + 1e-300; }

// Exact interval Holder norm with the attaining pair of grid indices.
struct HolderCertificate {
    double alpha = 1.0;
    int i0 = 0;
    int i1 = 0;
    double norm = 0.0;
    int argmax_i = 0;
    int argmax_j = 0;
};

// Exact discrete supremum of |Y_q - Y_p| / (t_q - t_p)^alpha over all grid
// pairs in [i0, i1]; O(n^2) pair scan, ties broken to the lexicographically
// smallest pair.
HolderCertificate holder_norm(const DiscretePath& path, double alpha, int i0, int i1);
HolderCertificate holder_norm(const DiscretePath& path, double alpha);

double sup_norm(const DiscretePath& path, int i0, int i1);
double sup_norm(const DiscretePath& path);

// Oscillation sup_{s,t} |Y_t - Y_s| over [i0, i1].
double oscillation(const DiscretePath& path, int i0, int i1);

// Convenience metric |||Z - Y||| = |Z - Y|_{alpha;I} + |Z_{i0} - Y_{i0}|.
double holder_metric(const DiscretePath& z, const DiscretePath& y, double alpha, int i0, int i1);

struct BoundCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    bool pass = true;
};

// Checks |lift(Y)|_{alpha;[a,b]} <= |Y|_{alpha;[0,T]} where the lift carries
// the sup-norm codomain metric.
BoundCheck lift_norm_check(const DiscretePath& path, double alpha, int a, int b);

// Gluing over two intervals sharing the split point:
// lhs = |Y|_{alpha;full}, rhs = 2 (|Y|_{alpha;[0,split]} + |Y|_{alpha;[split,end]}).
BoundCheck glue_norm_bound(const DiscretePath& path, double alpha, int split);

// Uniform-partition gluing: R = max per-window norm over windows of tau_idx
// steps, rhs = 4 R max(1, T^{1-alpha} tau^{alpha-1}).
BoundCheck multi_glue_norm_bound(const DiscretePath& path, double alpha, int tau_idx);

struct InterpolationBound {
    double lhs = 0.0;       // |W|_{alpha*theta}
    double rhs_osc = 0.0;   // |W|_0^{1-theta} |W|_alpha^theta
    double rhs_sup = 0.0;   // 2^{1-theta} |W|_inf^{1-theta} |W|_alpha^theta
    bool pass = true;
};

InterpolationBound interpolation_bound(const DiscretePath& path, double alpha, double theta);

}  // namespace ypde
