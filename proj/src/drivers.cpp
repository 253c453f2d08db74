#include "ypde/drivers.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace ypde {

double DriverSpec::weierstrass_exponent() const { return -std::log(w_a) / std::log(double(w_b)); }

static std::map<std::string, std::string> parse_kv(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        auto eq = tok.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("driver spec: expected key=value, got '" + tok + "'");
        kv[tok.substr(0, eq)] = tok.substr(eq + 1);
    }
    return kv;
}

DriverSpec parse_driver_spec(const std::string& text) {
    auto colon = text.find(':');
    const std::string kind = text.substr(0, colon);
    std::map<std::string, std::string> kv;
    if (colon != std::string::npos) kv = parse_kv(text.substr(colon + 1));

    DriverSpec spec;
    if (kind == "fbm")
        spec.kind = DriverKind::fbm;
    else if (kind == "weierstrass")
        spec.kind = DriverKind::weierstrass;
    else if (kind == "linear")
        spec.kind = DriverKind::linear;
    else if (kind == "polynomial")
        spec.kind = DriverKind::polynomial;
    else if (kind == "sine")
        spec.kind = DriverKind::sine;
    else if (kind == "constant")
        spec.kind = DriverKind::constant;
    else
        throw std::invalid_argument("driver spec: unknown kind '" + kind + "'");

    int n = 1025;
    double t0 = 0.0, t1 = 1.0;
    spec.coeffs = {0.0, 1.0};
    for (auto& [k, v] : kv) {
        if (k == "n")
            n = std::stoi(v);
        else if (k == "t0")
            t0 = std::stod(v);
        else if (k == "t1" || k == "T")
            t1 = std::stod(v);
        else if (k == "dim")
            spec.dimension = std::stoi(v);
        else if (k == "H")
            spec.hurst = std::stod(v);
        else if (k == "seed")
            spec.seed = std::stoull(v);
        else if (k == "a")
            spec.w_a = std::stod(v);
        else if (k == "b")
            spec.w_b = std::stoi(v);
        else if (k == "c")
            spec.constant = std::stod(v);
        else if (k == "amp")
            spec.amplitude = std::stod(v);
        else if (k == "freq")
            spec.frequency = std::stod(v);
        else if (k.rfind("c", 0) == 0 && k.size() > 1 && std::isdigit(k[1])) {
            const size_t idx = std::stoul(k.substr(1));
            if (spec.coeffs.size() <= idx) spec.coeffs.resize(idx + 1, 0.0);
            spec.coeffs[idx] = std::stod(v);
        } else {
            throw std::invalid_argument("driver spec: unknown key '" + k + "'");
        }
    }
    spec.grid = Grid(t0, t1, n);

    if (spec.kind == DriverKind::fbm) {
        if (!(spec.hurst > 0.0 && spec.hurst < 1.0))
            throw std::invalid_argument("driver spec: fbm requires H in (0,1), got H=" +
                                        std::to_string(spec.hurst));
        if (t0 != 0.0) throw std::invalid_argument("driver spec: fbm requires t0 = 0");
    }
    if (spec.kind == DriverKind::weierstrass) {
        if (!(spec.w_a > 0.0 && spec.w_a < 1.0))
            throw std::invalid_argument("driver spec: weierstrass requires a in (0,1)");
        if (spec.w_b < 3 || spec.w_b % 2 == 0)
            throw std::invalid_argument("driver spec: weierstrass requires odd b >= 3");
    }
    return spec;
}

std::string format_driver_spec(const DriverSpec& spec) {
    char buf[256];
    std::string head;
    switch (spec.kind) {
        case DriverKind::fbm:
            std::snprintf(buf, sizeof(buf), "fbm:H=%.17g,seed=%llu", spec.hurst,
                          static_cast<unsigned long long>(spec.seed));
            head = buf;
            break;
        case DriverKind::weierstrass:
            std::snprintf(buf, sizeof(buf), "weierstrass:a=%.17g,b=%d", spec.w_a, spec.w_b);
            head = buf;
            break;
        case DriverKind::linear:
            head = "linear";
            break;
        case DriverKind::polynomial: {
            head = "polynomial";
            char sep = ':';
            for (size_t i = 0; i < spec.coeffs.size(); ++i) {
                std::snprintf(buf, sizeof(buf), "%cc%zu=%.17g", sep, i, spec.coeffs[i]);
                head += buf;
                sep = ',';
            }
            break;
        }
        case DriverKind::sine:
            std::snprintf(buf, sizeof(buf), "sine:amp=%.17g,freq=%.17g", spec.amplitude,
                          spec.frequency);
            head = buf;
            break;
        case DriverKind::constant:
            std::snprintf(buf, sizeof(buf), "constant:c=%.17g", spec.constant);
            head = buf;
            break;
    }
    std::snprintf(buf, sizeof(buf), "%cn=%d,t0=%.17g,t1=%.17g,dim=%d",
                  head.find(':') == std::string::npos ? ':' : ',', spec.grid.n_points,
                  spec.grid.t0, spec.grid.t1, spec.dimension);
    return head + buf;
}

double fbm_covariance(double s, double t, double hurst) {
    const double h2 = 2.0 * hurst;
    return 0.5 * (std::pow(s, h2) + std::pow(t, h2) - std::pow(std::abs(t - s), h2));
}

std::vector<double> fbm_cholesky_factor(const DriverSpec& spec) {
    const int n = spec.grid.n_points;
    if (n > (1 << 13) + 1)
        throw std::invalid_argument("fbm: n_points exceeds the 2^13 Cholesky cap");
    const int m = n - 1;  // strictly positive times, X_0 pinned to 0

    // Packed lower triangle, L[i][j] at i*(i+1)/2 + j.
    std::vector<double> L(static_cast<size_t>(m) * (m + 1) / 2, 0.0);
    auto at = [&L](int i, int j) -> double& {
        return L[static_cast<size_t>(i) * (i + 1) / 2 + j];
    };
    for (int i = 0; i < m; ++i) {
        const double ti = spec.grid.time(i + 1);
        for (int j = 0; j <= i; ++j) {
            const double tj = spec.grid.time(j + 1);
            double sum = fbm_covariance(ti, tj, spec.hurst);
            for (int k = 0; k < j; ++k) sum -= at(i, k) * at(j, k);
            if (i == j) {
                if (!(sum > 0.0))
                    throw std::runtime_error("fbm: covariance not numerically positive definite");
                at(i, j) = std::sqrt(sum);
            } else {
                at(i, j) = sum / at(j, j);
            }
        }
    }
    return L;
}

DiscretePath fbm_sample_from_factor(const DriverSpec& spec, const std::vector<double>& chol,
                                    uint64_t stream) {
    const int n = spec.grid.n_points;
    const int m = n - 1;
    const int d = spec.dimension;
    CounterRng rng(spec.seed, stream);

    DiscretePath path(spec.grid, d);
    std::vector<double> z(m);
    for (int comp = 0; comp < d; ++comp) {
        for (int i = 0; i < m; ++i) z[i] = rng.next_gaussian();
        for (int i = 0; i < m; ++i) {
            const double* row = chol.data() + static_cast<size_t>(i) * (i + 1) / 2;
            double s = 0.0;
            for (int k = 0; k <= i; ++k) s += row[k] * z[k];
            path.value(i + 1)[comp] = s;
        }
    }
    return path;
}

DiscretePath generate(const DriverSpec& spec) {
    const Grid& g = spec.grid;
    const int n = g.n_points;
    const int d = spec.dimension;
    if (d < 1) throw std::invalid_argument("generate: dimension must be >= 1");

    switch (spec.kind) {
        case DriverKind::fbm: {
            auto chol = fbm_cholesky_factor(spec);
            return fbm_sample_from_factor(spec, chol, 0);
        }
        case DriverKind::weierstrass: {
            DiscretePath path(g, d);
            for (int i = 0; i < n; ++i) {
                const double t = g.time(i);
                double s = 0.0;
                double ak = 1.0;
                double bk = 1.0;
                while (ak >= 1e-16) {
                    s += ak * std::cos(bk * 3.14159265358979323846 * t);
                    ak *= spec.w_a;
                    bk *= spec.w_b;
                }
                for (int k = 0; k < d; ++k) path.value(i)[k] = s;
            }
            return path;
        }
        case DriverKind::linear: {
            DiscretePath path(g, d);
            for (int i = 0; i < n; ++i)
                for (int k = 0; k < d; ++k) path.value(i)[k] = g.time(i);
            return path;
        }
        case DriverKind::polynomial: {
            DiscretePath path(g, d);
            for (int i = 0; i < n; ++i) {
                const double t = g.time(i);
                double s = 0.0;
                for (size_t j = spec.coeffs.size(); j-- > 0;) s = s * t + spec.coeffs[j];
                for (int k = 0; k < d; ++k) path.value(i)[k] = s;
            }
            return path;
        }
        case DriverKind::sine: {
            DiscretePath path(g, d);
            for (int i = 0; i < n; ++i) {
                const double v = spec.amplitude *
                                 std::sin(2.0 * 3.14159265358979323846 * spec.frequency * g.time(i));
                for (int k = 0; k < d; ++k) path.value(i)[k] = v;
            }
            return path;
        }
        case DriverKind::constant: {
            DiscretePath path(g, d);
            for (int i = 0; i < n; ++i)
                for (int k = 0; k < d; ++k) path.value(i)[k] = spec.constant;
            return path;
        }
    }
    throw std::logic_error("generate: unreachable");
}

CovarianceReport covariance_check(const DriverSpec& spec, int n_samples,
                                  const std::vector<std::pair<double, double>>& probe_times) {
    if (spec.kind != DriverKind::fbm)
        throw std::invalid_argument("covariance_check: spec must be fbm");
    if (n_samples < 100) throw std::invalid_argument("covariance_check: need n_samples >= 100");

    auto chol = fbm_cholesky_factor(spec);
    std::vector<double> sums(probe_times.size(), 0.0);
    std::vector<int> is(probe_times.size()), js(probe_times.size());
    for (size_t p = 0; p < probe_times.size(); ++p) {
        is[p] = spec.grid.index_of(probe_times[p].first);
        js[p] = spec.grid.index_of(probe_times[p].second);
    }
    for (int sample = 0; sample < n_samples; ++sample) {
        DiscretePath x = fbm_sample_from_factor(spec, chol, static_cast<uint64_t>(sample));
        for (size_t p = 0; p < probe_times.size(); ++p)
            sums[p] += x.at(is[p]) * x.at(js[p]);
    }

    CovarianceReport report;
    for (size_t p = 0; p < probe_times.size(); ++p) {
        CovarianceProbe probe;
        probe.s = spec.grid.time(is[p]);
        probe.t = spec.grid.time(js[p]);
        probe.empirical = sums[p] / n_samples;
        probe.analytic = fbm_covariance(probe.s, probe.t, spec.hurst);
        // Var(X_s X_t) = C_ss C_tt + C_st^2 for centered Gaussians.
        const double vss = fbm_covariance(probe.s, probe.s, spec.hurst);
        const double vtt = fbm_covariance(probe.t, probe.t, spec.hurst);
        probe.band = 5.0 * std::sqrt((vss * vtt + probe.analytic * probe.analytic) / n_samples);
        probe.within_band = std::abs(probe.empirical - probe.analytic) <= probe.band;
        report.max_deviation = std::max(report.max_deviation,
                                        std::abs(probe.empirical - probe.analytic));
        report.all_within_band = report.all_within_band && probe.within_band;
        report.probes.push_back(probe);
    }
    return report;
}

}  // namespace ypde
