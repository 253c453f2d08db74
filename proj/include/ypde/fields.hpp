#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ypde/drivers.hpp"
#include "ypde/path.hpp"
#include "ypde/young.hpp"

namespace ypde {

// Path-dependent vector field F : [0,T] x C^alpha -> L(V,U), evaluated on
// discrete paths. eval(t_index, Y) returns the m x n matrix F(t, Y); when the
// functional claims non-anticipation, eval must read only values at indices
// <= t_index (verified by probe, not by construction).
struct PathFunctional {
    std::function<Mat(int t_index, const DiscretePath&)> eval;
    double declared_beta = 1.0;
    double declared_alpha_prime = 0.75;
    int out_rows = 1;
    int out_cols = 1;
    std::string name;
    std::string description;

    // Declared non-anticipation gap in time units (0 = plain non-anticipating).
    double delta_time = 0.0;

    // Analytic (alpha,beta)-Holder constants when a worked formula exists.
    bool has_analytic_constants = false;
    double analytic_c_time = 0.0;
    double analytic_c_space = 0.0;

    Mat operator()(int t_index, const DiscretePath& y) const { return eval(t_index, y); }
};

// Empirical lower bounds for the smallest admissible constants of the
// (alpha,beta)-Holder moduli.
struct FieldConstants {
    double c_time = 0.0;
    double c_space = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    int n_samples = 0;
    bool degenerate = false;  // sampler produced no usable space-modulus pair
};

// Dupire-style functional: evaluates f on the restriction Y|_{[0,t]},
// realized as the frozen lift (indices > t clamped to Y_t).
PathFunctional make_dupire(std::function<Mat(const DiscretePath& restricted, int t_index)> f,
                           double holder_beta, std::string name = "dupire");

// F_g(t, Y) = int_0^t g_u dY_u by left-point sums; (alpha,1)-Holder with the
// analytic constant k_{alpha+gamma} |g|_gamma T^gamma + |g|_inf.
PathFunctional make_young_functional(DiscretePath g, double gamma,
                                     std::optional<double> alpha_prime = std::nullopt);

// F(t, Y) = h(t, int_0^t g^1 dY, ..., int_0^t g^N dY) with caller-asserted
// modulus constant K_h.
PathFunctional make_composed(std::function<Mat(double t, const Vec& integrals)> h,
                             std::vector<std::pair<DiscretePath, double>> kernels, double k_h,
                             double beta);

// Analytic Example constant for F_g at exponents (alpha, gamma) on [0,T].
double young_functional_time_constant(const DiscretePath& g, double gamma, double alpha);

FieldConstants estimate_constants(const PathFunctional& f, double alpha, double beta,
                                  const DriverSpec& sampler, int n_samples, uint64_t seed);

struct ProbeReport {
    bool pass = true;
    int n_mutations = 0;
    double max_relative_deviation = 0.0;
    bool vacuous = false;
};

// Random perturbations of Y strictly after t must leave F(t, .) unchanged.
ProbeReport anticipation_probe(const PathFunctional& f, int t_index, const DiscretePath& path,
                               int n_mutations, uint64_t seed);

// Same, with perturbations strictly after (t - delta)_+.
ProbeReport delta_anticipation_probe(const PathFunctional& f, int delta_idx, int t_index,
                                     const DiscretePath& path, int n_mutations, uint64_t seed);

// |F(.,Y)|_{alpha beta;[i0,i1]} <= c (1 + |Y|_{alpha;[i0,i1]}^beta).
CertificateResult composition_bound_certificate(const PathFunctional& f, const DiscretePath& y,
                                                double alpha, double beta, int i0, int i1,
                                                double c);

// Two-path companion: with |Y|_alpha, |Z|_alpha <= R on the window and
// theta in (0,1),
// |F(.,Y)-F(.,Z)|_{alpha beta theta;[i0,i1]}
//   <= 2 c~^{1-theta} c^theta (1+R^beta)^theta (|Y-Z|_{alpha;[0,i1]}+|Y_0-Z_0|)^{beta(1-theta)}.
CertificateResult composition_pair_certificate(const PathFunctional& f, const DiscretePath& y,
                                               const DiscretePath& z, double alpha, double beta,
                                               double theta, int i0, int i1, double c,
                                               double c_tilde);

// Materialize the matrix path t -> F(t, Y) on [i0, i1] (helper for the
// certificates and for solver integrands).
IntegrandPath field_along_path(const PathFunctional& f, const DiscretePath& y, int i0, int i1);

// Functional registry addressable by name from the CLI:
//   zero | constant:<c> | identity | anticipating-terminal |
//   dupire-max | dupire-terminal | delayed-terminal:<delta> |
//   delayed-max:<delta> | young-kernel:<pathfile or driver spec> |
//   composed:<spec-file>
PathFunctional make_functional(const std::string& spec);

}  // namespace ypde
