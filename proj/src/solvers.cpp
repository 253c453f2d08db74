#include "ypde/solvers.hpp"

#include <algorithm>
#include <cmath>

#include "ypde/holder.hpp"
#include "ypde/young.hpp"

namespace ypde {

WindowPlan plan_window(double x_norm_alpha, double c_f, double alpha, double alpha_prime,
                       double beta, double total_time, double y0_norm,
                       std::optional<double> epsilon, bool bounded_mode,
                       std::optional<double> f_sup) {
    if (!(alpha_prime < alpha))
        throw std::invalid_argument("plan_window: requires alpha' < alpha");
    if (!(alpha_prime * beta + alpha_prime > 1.0))
        throw std::invalid_argument("plan_window: requires alpha'(1 + beta) > 1");
    if (bounded_mode && !f_sup)
        throw std::invalid_argument("plan_window: bounded mode requires F_sup");

    WindowPlan plan;
    plan.alpha = alpha;
    plan.alpha_prime = alpha_prime;
    plan.beta = beta;
    plan.bounded_mode = bounded_mode;

    const double k = sewing_constant(alpha_prime * beta + alpha_prime);
    if (bounded_mode)
        plan.K = (k + 1.0) * x_norm_alpha * (2.0 * c_f + *f_sup);
    else
        plan.K = (k + 1.0) * x_norm_alpha * 2.0 * c_f *
                 (1.0 + std::pow(total_time, alpha_prime * beta));

    if (plan.K == 0.0) {
        // |X|_alpha = 0 or F = 0: the constant path Y = y0 solves the equation.
        plan.trivial = true;
        plan.tau = std::min(1.0, total_time);
        plan.R = std::max(1.0, y0_norm);
        plan.epsilon = 0.0;
        return plan;
    }

    plan.epsilon = epsilon.value_or(std::min(plan.K / 2.0, 1.0) / 2.0);
    if (!(plan.epsilon > 0.0 && plan.epsilon < plan.K / 2.0))
        throw std::invalid_argument("plan_window: epsilon must lie in (0, K/2)");
    if (bounded_mode && plan.epsilon > 1.0)
        throw std::invalid_argument("plan_window: bounded mode requires epsilon <= 1");

    plan.tau = std::pow(plan.epsilon / plan.K, 1.0 / (alpha - alpha_prime));

    if (bounded_mode) {
        plan.R = 1.0;
        return plan;
    }

    // Bisect g(R) = eps (1 + 5 (1 v T^{1-a'} tau^{a'-1})^b R^b) - R.
    const double glue = std::max(1.0, std::pow(total_time, 1.0 - alpha_prime) *
                                          std::pow(plan.tau, alpha_prime - 1.0));
    const double d = 5.0 * plan.epsilon * std::pow(glue, beta);
    auto g = [&](double r) { return plan.epsilon + d * std::pow(r, beta) - r; };

    double lo = std::max(1.0, y0_norm);
    if (g(lo) <= 0.0) {
        plan.R = lo;
        plan.r_at_lower_bound = true;
        return plan;
    }
    double hi = 2.0 * std::max(lo, plan.epsilon);
    while (g(hi) > 0.0 && hi < 1e290) hi *= 2.0;
    if (g(hi) > 0.0)
        throw std::runtime_error(
            "plan_window: no admissible radius R; the ball condition "
            "eps (1 + 5 glue^beta R^beta) <= R has no solution (beta = 1 with a "
            "contraction factor >= 1?)");
    for (int it = 0; it < 200 && (hi - lo) > 1e-13 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) > 0.0 ? lo : hi) = mid;
    }
    plan.R = hi;  // g(R) <= 0, within 1e-13 relative of the equality point
    return plan;
}

static Vec increment(const DiscretePath& x, int p) {
    Vec dx(x.dim());
    auto a = x.value(p);
    auto b = x.value(p + 1);
    for (int k = 0; k < x.dim(); ++k) dx[k] = b[k] - a[k];
    return dx;
}

std::pair<double, double> residual(const PathFunctional& f, const DiscretePath& x,
                                   const DiscretePath& y, const Vec& y0, double alpha) {
    if (!(x.grid() == y.grid())) throw std::invalid_argument("residual: grid mismatch");
    const int n = x.n_points();

    DiscretePath r(x.grid(), y.dim());
    Vec acc = y0;
    {
        Vec v = y.value_vec(0);
        for (int k = 0; k < y.dim(); ++k) v[k] -= acc[k];
        r.set_value(0, v);
    }
    for (int j = 1; j < n; ++j) {
        const Mat w = f(j - 1, y);
        mat_vec_accum(w, increment(x, j - 1), acc);
        Vec v = y.value_vec(j);
        for (int k = 0; k < y.dim(); ++k) v[k] -= acc[k];
        r.set_value(j, v);
    }
    return {sup_norm(r, 0, n - 1), holder_norm(r, alpha).norm};
}

SolveReport delta_delay_solve(const PathFunctional& f, int delta_idx, const DiscretePath& x,
                              const Vec& y0, bool keep_iterates, double residual_alpha) {
    const int last = x.n_points() - 1;
    if (delta_idx <= 0) throw std::invalid_argument("delta_delay_solve: delta_idx must be > 0");
    if (last % delta_idx != 0)
        throw std::invalid_argument(
            "delta_delay_solve: grid steps must be divisible by delta_idx (T = N delta)");
    const int n_stages = last / delta_idx;
    const int dim = static_cast<int>(y0.size());

    DiscretePath prev(x.grid(), dim);
    for (int j = 0; j <= last; ++j) prev.set_value(j, y0);

    SolveReport report;
    for (int stage = 1; stage <= n_stages; ++stage) {
        const int cut = stage * delta_idx;
        DiscretePath cur(x.grid(), dim);
        Vec acc = y0;
        cur.set_value(0, acc);
        for (int p = 0; p < cut; ++p) {
            mat_vec_accum(f(p, prev), increment(x, p), acc);
            cur.set_value(p + 1, acc);
        }
        for (int j = cut + 1; j <= last; ++j) cur.set_value(j, acc);
        if (!cur.all_finite())
            throw SolveError("delta_delay_solve: non-finite values at stage " +
                                 std::to_string(stage) +
                                 " (driver too rough for the declared exponents?)",
                             stage, 0.0);
        if (keep_iterates) report.iterates.push_back(cur);
        prev = std::move(cur);

        WindowInfo info;
        info.start_index = (stage - 1) * delta_idx;
        info.n_steps = delta_idx;
        info.iterations = 1;
        report.windows.push_back(info);
    }

    report.solution = std::move(prev);
    report.converged = true;
    auto [rs, rh] = residual(f, x, report.solution, y0, residual_alpha);
    report.residual_sup = rs;
    report.residual_holder = rh;
    return report;
}

SolveReport picard_window_solve(const PathFunctional& f, const DiscretePath& x, const Vec& y0,
                                std::optional<WindowPlan> plan, const PicardOptions& opts) {
    if (!(opts.tol > 0.0)) throw std::invalid_argument("picard_window_solve: tol must be > 0");
    const int last = x.n_points() - 1;
    const double h = x.grid().step();
    const double total_time = x.grid().length();
    const int dim = static_cast<int>(y0.size());

    SolveReport report;
    report.plan = plan;

    if (plan && plan->trivial) {
        DiscretePath y(x.grid(), dim);
        for (int j = 0; j <= last; ++j) y.set_value(j, y0);
        report.solution = std::move(y);
        report.converged = true;
        auto [rs, rh] = residual(f, x, report.solution, y0, opts.residual_alpha);
        report.residual_sup = rs;
        report.residual_holder = rh;
        return report;
    }

    auto steps_for = [&](double tau) {
        return std::max(1, static_cast<int>(std::floor(tau / h)));
    };
    int cur_steps;
    if (opts.paper_windows) {
        if (!plan) throw std::invalid_argument("picard_window_solve: paper windows need a plan");
        cur_steps = steps_for(plan->tau);
    } else {
        double tau0 = total_time / 8.0;
        if (plan) tau0 = std::min(plan->tau, tau0);
        cur_steps = steps_for(tau0);
    }
    const int cap_steps = steps_for(std::min(1.0, total_time));

    // Y holds eta on [0, t0] and the constant extension beyond; F is
    // non-anticipating, so values past the current window are inert.
    DiscretePath y(x.grid(), dim);
    for (int j = 0; j <= last; ++j) y.set_value(j, y0);

    int t0 = 0;
    int fast_streak = 0;
    int window_index = 0;
    while (t0 < last) {
        const int win = std::min(cur_steps, last - t0);
        const int end = t0 + win;
        const Vec eta0 = y.value_vec(t0);

        // Constant initial iterate Z = eta_{t0} on the window.
        for (int j = t0 + 1; j <= last; ++j) y.set_value(j, eta0);

        bool window_converged = false;
        int iterations = 0;
        double first_delta = 0.0, delta = 0.0;
        std::vector<Vec> znew(win + 1, Vec(dim, 0.0));
        for (int iter = 1; iter <= opts.max_iter; ++iter) {
            Vec acc = eta0;
            znew[0] = acc;
            delta = 0.0;
            for (int p = t0; p < end; ++p) {
                mat_vec_accum(f(p, y), increment(x, p), acc);
                znew[p - t0 + 1] = acc;
                double dist = 0.0;
                auto old = y.value(p + 1);
                for (int k = 0; k < dim; ++k) {
                    const double d = acc[k] - old[k];
                    dist += d * d;
                }
                delta = std::max(delta, std::sqrt(dist));
            }
            for (int j = t0 + 1; j <= end; ++j) y.set_value(j, znew[j - t0]);
            for (int j = end + 1; j <= last; ++j) y.set_value(j, znew[win]);
            if (!y.all_finite())
                throw SolveError("picard_window_solve: non-finite iterate in window " +
                                     std::to_string(window_index),
                                 window_index, delta);
            iterations = iter;
            if (iter == 1) first_delta = delta;
            if (delta < opts.tol) {
                window_converged = true;
                break;
            }
        }

        if (!window_converged) {
            if (!opts.paper_windows && cur_steps > 1) {
                cur_steps = std::max(1, cur_steps / 2);
                fast_streak = 0;
                for (int j = t0 + 1; j <= last; ++j) y.set_value(j, eta0);
                continue;  // retry the window shorter
            }
            throw SolveError("picard_window_solve: window " + std::to_string(window_index) +
                                 " did not converge within max_iter (last delta " +
                                 std::to_string(delta) + ")",
                             window_index, delta);
        }

        WindowInfo info;
        info.start_index = t0;
        info.n_steps = win;
        info.iterations = iterations;
        info.final_delta = delta;
        if (plan && win >= 1) {
            info.holder_norm_alpha_prime = holder_norm(y, plan->alpha_prime, t0, end).norm;
            info.ball_ok = cert_leq(info.holder_norm_alpha_prime, plan->R);
        }
        report.windows.push_back(info);

        if (iterations >= 2 && first_delta > 0.0) {
            const double ratio =
                std::pow(delta / first_delta, 1.0 / static_cast<double>(iterations - 1));
            report.decay_ratio = std::max(report.decay_ratio, ratio);
        }

        t0 = end;
        ++window_index;
        if (!opts.paper_windows) {
            if (iterations <= 4) {
                if (++fast_streak >= 3) {
                    cur_steps = std::min(cur_steps * 2, cap_steps);
                    fast_streak = 0;
                }
            } else {
                fast_streak = 0;
            }
        }
    }

    report.solution = std::move(y);
    report.converged = true;
    auto [rs, rh] = residual(f, x, report.solution, y0, opts.residual_alpha);
    report.residual_sup = rs;
    report.residual_holder = rh;
    return report;
}

}  // namespace ypde
