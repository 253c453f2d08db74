#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ypde/fields.hpp"
#include "ypde/path.hpp"

namespace ypde {

// Window bookkeeping for the fixed-point construction: K, epsilon, tau, R.
struct WindowPlan {
    double K = 0.0;
    double epsilon = 0.0;
    double tau = 0.0;
    double R = 0.0;
    double alpha = 0.0;
    double alpha_prime = 0.0;
    double beta = 0.0;
    bool trivial = false;        // K = 0: the constant path solves the equation
    bool bounded_mode = false;   // bounded-field variant, R fixed to 1
    bool r_at_lower_bound = false;
    std::string constants_source;
};

// K = (k_{a'b+a'}+1) |X|_alpha 2 c_F (1 + T^{a'b}), or in bounded mode
// K = (k_{a'b+a'}+1) |X|_alpha (2 c_F + |F|_inf) with R fixed to 1.
// tau = (eps/K)^{1/(alpha-alpha')}; in unbounded mode R is found by bisection
// of eps (1 + 5 (1 v T^{1-a'} tau^{a'-1})^b R^b) <= R over [max(1,|y0|), 2^60].
WindowPlan plan_window(double x_norm_alpha, double c_f, double alpha, double alpha_prime,
                       double beta, double total_time, double y0_norm,
                       std::optional<double> epsilon = std::nullopt, bool bounded_mode = false,
                       std::optional<double> f_sup = std::nullopt);

struct WindowInfo {
    int start_index = 0;
    int n_steps = 0;
    int iterations = 0;
    double final_delta = 0.0;
    double holder_norm_alpha_prime = 0.0;
    bool ball_ok = true;  // |Z|_{alpha';window} <= plan.R (reported, not enforced)
};

struct SolveReport {
    DiscretePath solution;
    double residual_sup = 0.0;
    double residual_holder = 0.0;
    std::vector<WindowInfo> windows;
    bool converged = false;
    // Max over windows of the geometric per-iteration contraction estimate.
    double decay_ratio = 0.0;
    // delta solver only (when requested): the iterates Y^1, ..., Y^N.
    std::vector<DiscretePath> iterates;
    std::optional<WindowPlan> plan;
};

struct SolveError : std::runtime_error {
    int window_index;
    double last_delta;
    SolveError(const std::string& what, int window, double delta)
        : std::runtime_error(what), window_index(window), last_delta(delta) {}
};

// Method of steps for delta-non-anticipating fields:
//   Y^n_t = y0 + int_0^{t ^ n delta} F(u, Y^{n-1}) dX_u,
// Y^0 constant at y0, N = (n_points-1)/delta_idx steps. Deterministic, no
// tolerance. Y^n agrees with Y^{n-1} bitwise on [0, (n-1) delta].
SolveReport delta_delay_solve(const PathFunctional& f, int delta_idx, const DiscretePath& x,
                              const Vec& y0, bool keep_iterates = false,
                              double residual_alpha = 0.75);

struct PicardOptions {
    double tol = 1e-10;
    int max_iter = 200;
    bool paper_windows = false;  // use the plan's tau exactly, no adaptivity
    double residual_alpha = 0.75;
};

// Windowed Picard iteration of the solution map
//   S_eta(Z)_t = eta_{t0} + int_{t0}^t F(u, Z^eta) dX_u,
// starting each window from the constant extension of eta_{t0}. Adaptive by
// default: initial window min(tau_plan, T/8), halved on non-convergence,
// doubled after three consecutive fast windows (window length capped at 1).
SolveReport picard_window_solve(const PathFunctional& f, const DiscretePath& x, const Vec& y0,
                                std::optional<WindowPlan> plan, const PicardOptions& opts);

// residual_sup and alpha-Holder norm of t -> Y_t - y0 - int_0^t F(u,Y) dX_u.
std::pair<double, double> residual(const PathFunctional& f, const DiscretePath& x,
                                   const DiscretePath& y, const Vec& y0, double alpha);

}  // namespace ypde
