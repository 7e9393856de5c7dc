#ifndef DOWKERLAB_STATS_HPP
#define DOWKERLAB_STATS_HPP

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "model.hpp"  // adaptive_simpson
#include "rng.hpp"

namespace dowkerlab {

// ---------------------------------------------------------------------------
// Power-law tail fitting
// ---------------------------------------------------------------------------

constexpr double kDefaultPowerLawXmin = 10.0;

struct PowerLawFit {
    double x_min;
    double exponent;  // pdf exponent alpha-hat > 1
    std::size_t n_tail;

    nlohmann::json to_json() const {
        return {{"x_min", x_min}, {"exponent", exponent}, {"n_tail", n_tail}};
    }
};

/// Continuous maximum-likelihood (Hill-type) fit on the tail {x >= x_min}:
/// alpha-hat = 1 + n / sum ln(x_i / x_min).
inline PowerLawFit fit_power_law(const std::vector<double>& samples,
                                 double x_min = kDefaultPowerLawXmin) {
    if (!(x_min > 0.0)) throw std::invalid_argument("fit_power_law: x_min must be > 0");
    double log_sum = 0.0;
    std::size_t n = 0;
    for (double x : samples) {
        if (x >= x_min) {
            log_sum += std::log(x / x_min);
            ++n;
        }
    }
    if (n < 2) throw std::invalid_argument("fit_power_law: fewer than 2 tail samples");
    if (log_sum <= 0.0)
        throw std::invalid_argument("fit_power_law: degenerate tail (all samples at x_min)");
    return {x_min, 1.0 + static_cast<double>(n) / log_sum, n};
}

// ---------------------------------------------------------------------------
// Alpha-stable distribution (S1 parameterization, alpha != 1)
// ---------------------------------------------------------------------------

struct StableFit {
    double alpha;     // stability index in (0, 2], != 1
    double skew;      // in [-1, 1]
    double location;  // S1 location
    double scale;     // S1 scale, > 0

    nlohmann::json to_json() const {
        return {{"alpha", alpha}, {"skew", skew}, {"location", location}, {"scale", scale}};
    }
};

namespace detail {

// Standard S1(alpha, skew) CDF at z via Gil-Pelaez inversion:
// F(z) = 1/2 - (1/pi) int_0^inf e^{-t^alpha} sin(eta t^alpha - t z) / t dt,
// eta = skew * tan(pi alpha / 2).
inline double stable_cdf_quadrature(double z, double alpha, double eta) {
    const double T = std::pow(38.0, 1.0 / alpha);  // e^{-38} ~ 3e-17
    auto integrand = [&](double t) {
        if (t <= 0.0) return -z;  // limit of sin(eta t^a - t z)/t for alpha > 1
        double ta = std::pow(t, alpha);
        return std::exp(-ta) * std::sin(eta * ta - t * z) / t;
    };
    // Resolve the oscillation: tolerance fixed, generous depth.
    double integral = adaptive_simpson(integrand, 0.0, 1.0, 1e-10, 48) +
                      adaptive_simpson(integrand, 1.0, T, 1e-10, 48);
    double F = 0.5 - integral / M_PI;
    return std::clamp(F, 0.0, 1.0);
}

// Asymptotic upper-tail series for standard S1(alpha, skew), z -> +inf:
// 1 - F(z) = -(1/pi) sum_k Im[ (-(1+i eta))^k Gamma(alpha k) e^{i pi alpha k / 2} ] / k!
//            * z^{-alpha k}.
// Truncated at the smallest term. Returns false when the series is unreliable.
inline bool stable_tail_series(double z, double alpha, double eta, double& sf) {
    double re = 1.0, im = 0.0;           // (-(1+i eta))^k accumulator
    const double br = -1.0, bi = -eta;   // base
    double kfact = 1.0;
    double sum = 0.0;
    double prev_mag = HUGE_VAL;
    for (int k = 1; k <= 10; ++k) {
        double nre = re * br - im * bi;
        double nim = re * bi + im * br;
        re = nre; im = nim;
        kfact *= k;
        double g = std::tgamma(alpha * k);
        double phase = 0.5 * M_PI * alpha * k;
        double term_im = (im * std::cos(phase) + re * std::sin(phase)) * g / kfact *
                         std::pow(z, -alpha * k);
        double mag = std::fabs(term_im);
        if (mag >= prev_mag) {  // series started diverging
            if (prev_mag > 1e-9 * std::max(std::fabs(sum), 1e-12)) return false;
            break;
        }
        sum += term_im;
        prev_mag = mag;
        if (mag < 1e-12) break;
    }
    sf = -sum / M_PI;
    if (sf < 0.0) sf = 0.0;
    if (sf > 1.0) sf = 1.0;
    return true;
}

inline double stable_cdf_standard(double z, double alpha, double skew) {
    double eta = skew * std::tan(0.5 * M_PI * alpha);
    const double z_switch = 30.0;
    if (z > z_switch) {
        double sf;
        if (stable_tail_series(z, alpha, eta, sf)) return 1.0 - sf;
    } else if (z < -z_switch) {
        // left tail via the reflection -Z ~ S1(alpha, -skew)
        double sf;
        if (stable_tail_series(-z, alpha, -eta, sf)) return sf;
    }
    return stable_cdf_quadrature(z, alpha, eta);
}

// Standard S1 density by the companion inversion integral
// f(z) = (1/pi) int_0^inf e^{-t^alpha} cos(t z - eta t^alpha) dt.
inline double stable_pdf_standard(double z, double alpha, double skew) {
    double eta = skew * std::tan(0.5 * M_PI * alpha);
    if (std::fabs(z) > 30.0) {
        // derivative of the tail series, leading terms
        double zz = std::fabs(z);
        double e = (z > 0.0) ? eta : -eta;
        double re = 1.0, im = 0.0;
        double kfact = 1.0, sum = 0.0;
        for (int k = 1; k <= 6; ++k) {
            double nre = re * (-1.0) - im * (-e);
            double nim = re * (-e) + im * (-1.0);
            re = nre; im = nim;
            kfact *= k;
            double g = std::tgamma(alpha * k + 1.0);
            double phase = 0.5 * M_PI * alpha * k;
            sum += (im * std::cos(phase) + re * std::sin(phase)) * g / kfact *
                   std::pow(zz, -alpha * k - 1.0);
        }
        double f = sum / M_PI;
        return f > 0.0 ? f : 0.0;
    }
    const double T = std::pow(38.0, 1.0 / alpha);
    auto integrand = [&](double t) {
        double ta = std::pow(t, alpha);
        return std::exp(-ta) * std::cos(t * z - eta * ta);
    };
    double f = (adaptive_simpson(integrand, 0.0, 1.0, 1e-11, 48) +
                adaptive_simpson(integrand, 1.0, T, 1e-11, 48)) / M_PI;
    return f > 0.0 ? f : 0.0;
}

}  // namespace detail

/// CDF of the fitted alpha-stable law (S1 parameterization). Exact Gaussian at
/// alpha = 2 (variance 2 scale^2); otherwise characteristic-function inversion
/// with an asymptotic tail series. Absolute accuracy <= 1e-6.
inline double stable_cdf(double x, const StableFit& fit) {
    if (!(fit.scale > 0.0)) throw std::invalid_argument("stable_cdf: scale must be > 0");
    if (!(fit.alpha > 0.0 && fit.alpha <= 2.0) || fit.alpha == 1.0)
        throw std::invalid_argument("stable_cdf: alpha must be in (0, 2], alpha != 1");
    double z = (x - fit.location) / fit.scale;
    if (fit.alpha == 2.0) return normal_cdf(z / std::sqrt(2.0));
    return detail::stable_cdf_standard(z, fit.alpha, fit.skew);
}

inline double stable_pdf(double x, const StableFit& fit) {
    double z = (x - fit.location) / fit.scale;
    if (fit.alpha == 2.0) {
        double sd = std::sqrt(2.0);
        return std::exp(-0.5 * z * z / 2.0) / (sd * std::sqrt(2.0 * M_PI) * fit.scale);
    }
    return detail::stable_pdf_standard(z, fit.alpha, fit.skew) / fit.scale;
}

/// Quantile of the standard S1(alpha, skew) law by bisection.
inline double stable_quantile_standard(double p, double alpha, double skew) {
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("stable_quantile_standard: p must be in (0, 1)");
    double lo = -1.0, hi = 1.0;
    StableFit std_fit{alpha, skew, 0.0, 1.0};
    while (stable_cdf(lo, std_fit) > p) lo *= 2.0;
    while (stable_cdf(hi, std_fit) < p) hi *= 2.0;
    for (int i = 0; i < 80; ++i) {
        double mid = 0.5 * (lo + hi);
        if (stable_cdf(mid, std_fit) < p) lo = mid; else hi = mid;
        if (hi - lo < 1e-12 * std::max(1.0, std::fabs(lo))) break;
    }
    return 0.5 * (lo + hi);
}

/// Fit location and scale with alpha and skew held fixed: quantile matching
/// (quartiles against the standard law) followed by a maximum-likelihood
/// refinement on a subsample, with the density evaluated numerically.
inline StableFit fit_stable(const std::vector<double>& samples, double alpha_fixed,
                            double skew_fixed) {
    if (samples.size() < 30)
        throw std::invalid_argument("fit_stable: need at least 30 samples");
    std::vector<double> x = samples;
    std::sort(x.begin(), x.end());
    auto quantile = [&](double p) {
        double idx = p * (x.size() - 1);
        std::size_t i = static_cast<std::size_t>(idx);
        double frac = idx - i;
        return (i + 1 < x.size()) ? x[i] * (1.0 - frac) + x[i + 1] * frac : x.back();
    };
    double q25 = quantile(0.25), q50 = quantile(0.50), q75 = quantile(0.75);
    if (!(q75 > q25)) throw std::invalid_argument("fit_stable: degenerate sample (zero spread)");
    double z25 = stable_quantile_standard(0.25, alpha_fixed, skew_fixed);
    double z50 = stable_quantile_standard(0.50, alpha_fixed, skew_fixed);
    double z75 = stable_quantile_standard(0.75, alpha_fixed, skew_fixed);
    double scale = (q75 - q25) / (z75 - z25);
    double loc = q50 - scale * z50;

    // ML refinement on a subsample, coordinate-wise golden-section style.
    std::vector<double> sub;
    std::size_t stride = std::max<std::size_t>(1, x.size() / 500);
    for (std::size_t i = 0; i < x.size(); i += stride) sub.push_back(x[i]);
    auto nll = [&](double l, double s) {
        if (s <= 0.0) return HUGE_VAL;
        StableFit f{alpha_fixed, skew_fixed, l, s};
        double acc = 0.0;
        for (double xi : sub) {
            double d = stable_pdf(xi, f);
            acc -= std::log(d > 1e-300 ? d : 1e-300);
        }
        return acc;
    };
    double best = nll(loc, scale);
    double step_l = 0.1 * scale, step_s = 0.1 * scale;
    for (int iter = 0; iter < 24; ++iter) {
        bool improved = false;
        for (double dl : {-step_l, step_l}) {
            double v = nll(loc + dl, scale);
            if (v < best) { best = v; loc += dl; improved = true; }
        }
        for (double ds : {-step_s, step_s}) {
            double v = nll(loc, scale + ds);
            if (v < best) { best = v; scale += ds; improved = true; }
        }
        if (!improved) { step_l *= 0.5; step_s *= 0.5; }
        if (step_l < 1e-4 * scale) break;
    }
    return {alpha_fixed, skew_fixed, loc, scale};
}

/// Two-sided tail probability 2 min(F(x), 1 - F(x)) under the fitted law.
inline double stable_p_value(double observed, const StableFit& fit) {
    double F = stable_cdf(observed, fit);
    double p = 2.0 * std::min(F, 1.0 - F);
    return std::clamp(p, 0.0, 1.0);
}

/// Chambers-Mallows-Stuck sampler for the fitted S1 law (used for synthetic
/// round-trip checks and null calibration).
inline double sample_stable(const StableFit& fit, RngStream& rng) {
    double alpha = fit.alpha;
    double V = M_PI * (rng.uniform01() - 0.5);
    double W = rng.exponential();
    if (alpha == 2.0) {
        // Gaussian: Box-Muller from the same primitives.
        double z = std::sqrt(2.0 * W) * std::sin(V);
        return fit.location + fit.scale * std::sqrt(2.0) * z;
    }
    double eta = fit.skew * std::tan(0.5 * M_PI * alpha);
    double B = std::atan(eta) / alpha;
    double S = std::pow(1.0 + eta * eta, 0.5 / alpha);
    double z = S * std::sin(alpha * (V + B)) / std::pow(std::cos(V), 1.0 / alpha) *
               std::pow(std::cos(V - alpha * (V + B)) / W, (1.0 - alpha) / alpha);
    return fit.location + fit.scale * z;
}

// ---------------------------------------------------------------------------
// Normality diagnostics
// ---------------------------------------------------------------------------

struct DistributionSummary {
    std::size_t n = 0;
    double mean = 0.0;
    double variance = 0.0;
    double skewness = 0.0;
    double excess_kurtosis = 0.0;
    bool degenerate = false;
    // Q-Q data: fitted-normal theoretical quantiles vs sorted sample.
    std::vector<std::pair<double, double>> qq;
};

inline DistributionSummary distribution_diagnostics(const std::vector<double>& samples) {
    if (samples.size() < 10)
        throw std::invalid_argument("distribution_diagnostics: need at least 10 samples");
    DistributionSummary s;
    s.n = samples.size();
    for (double x : samples) s.mean += x;
    s.mean /= s.n;
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double x : samples) {
        double d = x - s.mean;
        m2 += d * d; m3 += d * d * d; m4 += d * d * d * d;
    }
    m2 /= s.n; m3 /= s.n; m4 /= s.n;
    s.variance = m2 * s.n / (s.n - 1.0);
    if (m2 <= 0.0) {
        s.degenerate = true;
        return s;
    }
    s.skewness = m3 / std::pow(m2, 1.5);
    s.excess_kurtosis = m4 / (m2 * m2) - 3.0;
    double sd = std::sqrt(s.variance);
    std::vector<double> sorted = samples;
    std::sort(sorted.begin(), sorted.end());
    s.qq.reserve(s.n);
    for (std::size_t i = 0; i < s.n; ++i) {
        double p = (i + 0.5) / s.n;
        s.qq.emplace_back(s.mean + sd * normal_quantile(p), sorted[i]);
    }
    return s;
}

/// Two-column `theoretical,empirical` Q-Q table.
inline void write_qq(const DistributionSummary& s, std::ostream& os) {
    os << "theoretical,empirical\n";
    for (const auto& [t, e] : s.qq) os << t << "," << e << "\n";
}

}  // namespace dowkerlab

#endif
