#ifndef DOWKERLAB_SPECIAL_HPP
#define DOWKERLAB_SPECIAL_HPP

#include <cmath>
#include <stdexcept>

namespace dowkerlab {

namespace detail {

// Regularized lower incomplete gamma P(a, x) by series, a > 0, x < a + 1.
inline double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int n = 0; n < 500; ++n) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * 1e-16)
            return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
    throw std::runtime_error("gamma_p_series: no convergence");
}

// Regularized upper incomplete gamma Q(a, x) by continued fraction,
// a > 0, x >= a + 1 (Lentz's method).
inline double gamma_q_contfrac(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16)
            return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
    }
    throw std::runtime_error("gamma_q_contfrac: no convergence");
}

// Exponential integral E1(x) = Gamma(0, x), x > 0. Power series for small x,
// Lentz continued fraction otherwise.
inline double exp_int_e1(double x) {
    const double euler = 0.57721566490153286060651209;
    if (x <= 1.0) {
        double sum = -euler - std::log(x);
        double term = 1.0;
        for (int k = 1; k <= 60; ++k) {
            term *= -x / k;
            double add = -term / k;
            sum += add;
            if (std::fabs(add) < 1e-17 * std::fabs(sum)) break;
        }
        return sum;
    }
    const double tiny = 1e-300;
    double b = x + 1.0;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        double an = -static_cast<double>(i) * i;
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16) break;
    }
    return std::exp(-x) * h;
}

}  // namespace detail

/// Upper incomplete gamma Gamma(a, x) = int_x^inf t^{a-1} e^{-t} dt,
/// unnormalized, valid for any real a (including negative non-integer)
/// and x > 0. Negative a is lifted to positive first argument via
/// Gamma(a, x) = (Gamma(a+1, x) - x^a e^{-x}) / a.
inline double upper_incomplete_gamma(double a, double x) {
    if (!(x > 0.0)) throw std::invalid_argument("upper_incomplete_gamma: x must be > 0");
    if (a == 0.0) return detail::exp_int_e1(x);
    if (a > 0.0) {
        double q = (x < a + 1.0) ? 1.0 - detail::gamma_p_series(a, x)
                                 : detail::gamma_q_contfrac(a, x);
        return q * std::exp(std::lgamma(a));
    }
    // Recurse upward until the first argument is positive.
    double a1 = a + 1.0;
    double g1 = upper_incomplete_gamma(a1, x);
    return (g1 - std::pow(x, a) * std::exp(-x)) / a;
}

/// Regularized upper incomplete gamma Q(a, x) for a > 0 (chi-square tails etc.).
inline double gamma_q(double a, double x) {
    if (!(a > 0.0)) throw std::invalid_argument("gamma_q: a must be > 0");
    if (x <= 0.0) return 1.0;
    return (x < a + 1.0) ? 1.0 - detail::gamma_p_series(a, x)
                         : detail::gamma_q_contfrac(a, x);
}

/// Survival function of the chi-square distribution with k degrees of freedom.
inline double chi_square_sf(double x, double k) { return gamma_q(0.5 * k, 0.5 * x); }

/// Standard normal CDF.
inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

/// Standard normal quantile (Acklam's rational approximation plus one
/// Halley refinement; absolute error well below 1e-12).
inline double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("normal_quantile: p must be in (0, 1)");
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;
    double x;
    if (p < plow) {
        double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - plow) {
        double q = p - 0.5;
        double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    // Halley refinement.
    double e = normal_cdf(x) - p;
    double u = e * std::sqrt(2.0 * M_PI) * std::exp(0.5 * x * x);
    x = x - u / (1.0 + 0.5 * x * u);
    return x;
}

/// Asymptotic Kolmogorov distribution tail Q(lambda) = 2 sum (-1)^{k-1} e^{-2k^2 lambda^2}.
inline double kolmogorov_sf(double lam) {
    if (lam <= 0.0) return 1.0;
    double sum = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 100; ++k) {
        double term = std::exp(-2.0 * k * k * lam * lam);
        sum += sign * term;
        if (term < 1e-16) break;
        sign = -sign;
    }
    double q = 2.0 * sum;
    return q < 0.0 ? 0.0 : (q > 1.0 ? 1.0 : q);
}

}  // namespace dowkerlab

#endif
