#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ypde/path.hpp"
#include "ypde/rng.hpp"

namespace ypde {

enum class DriverKind { fbm, weierstrass, linear, polynomial, sine, constant };

struct DriverSpec {
    DriverKind kind = DriverKind::linear;
    Grid grid{0.0, 1.0, 2};
    int dimension = 1;
    uint64_t seed = 0;        // fbm only
    double hurst = 0.75;      // fbm: H in (0,1)
    double w_a = 0.5;         // weierstrass: 0 < a < 1
    int w_b = 7;              // weierstrass: odd integer >= 3
    std::vector<double> coeffs{0.0, 1.0};  // polynomial c0 + c1 t + ...
    double amplitude = 1.0;   // sine
    double frequency = 1.0;   // sine: X_t = A sin(2 pi f t)
    double constant = 0.0;    // constant kind

    // Hurst exponent of the truncated Weierstrass series, -ln a / ln b.
    double weierstrass_exponent() const;
};

// Parse a CLI-facing spec string, e.g.
//   fbm:H=0.75,seed=42,n=4097
//   weierstrass:a=0.5,b=7,n=4097
//   linear:n=1025
// Optional keys for all kinds: n, t0, t1 (defaults 0 and 1), dim.
DriverSpec parse_driver_spec(const std::string& text);
std::string format_driver_spec(const DriverSpec& spec);

// Deterministic generation: identical spec (including seed) gives a bitwise
// identical path. fbm uses exact Cholesky of the covariance
// (s^{2H} + t^{2H} - |t-s|^{2H})/2 and is capped at 2^13 points.
DiscretePath generate(const DriverSpec& spec);

// Lower-triangular Cholesky factor of the fBm covariance on the strictly
// positive grid times (X_0 = 0 is pinned). Row-major, row i holds entries
// [i*(i+1)/2, ...]. Exposed so that ensemble studies factorize once.
std::vector<double> fbm_cholesky_factor(const DriverSpec& spec);
DiscretePath fbm_sample_from_factor(const DriverSpec& spec, const std::vector<double>& chol,
                                    uint64_t stream);

double fbm_covariance(double s, double t, double hurst);

struct CovarianceProbe {
    double s = 0.0, t = 0.0;
    double empirical = 0.0;
    double analytic = 0.0;
    double band = 0.0;  // 5-sigma Monte-Carlo band
    bool within_band = true;
};

struct CovarianceReport {
    std::vector<CovarianceProbe> probes;
    double max_deviation = 0.0;
    bool all_within_band = true;
};

// Empirical E[X_s X_t] over n_samples independent trajectories against the
// analytic fBm covariance, at the given probe time pairs.
CovarianceReport covariance_check(const DriverSpec& spec, int n_samples,
                                  const std::vector<std::pair<double, double>>& probe_times);

}  // namespace ypde
