#ifndef DOWKERLAB_MODEL_HPP
#define DOWKERLAB_MODEL_HPP

#include <cmath>
#include <stdexcept>
#include <utility>

#include "params.hpp"
#include "special.hpp"

namespace dowkerlab {

/// Distance on the circle of circumference L; plain |x - z| when L is infinite.
inline double torus_distance(double x, double z, double L) {
    double d = std::fabs(x - z);
    if (std::isinf(L)) return d;
    return std::min(d, L - d);
}

/// Connection score F(p, p') = dist(x, z) * u^gamma * w^gamma'.
inline double connection_score(const MarkedPoint& p, const MarkedPoint& p_prime,
                               const ModelParams& params) {
    return torus_distance(p.position, p_prime.position, params.torus_length) *
           std::pow(p.mark, params.gamma) *
           std::pow(p_prime.mark, params.gamma_prime);
}

/// Hard connection rule: F <= beta, equality counts as connected.
inline bool connects(const MarkedPoint& p, const MarkedPoint& p_prime,
                     const ModelParams& params) {
    return connection_score(p, p_prime, params) <= params.beta;
}

namespace detail {

// Adaptive Simpson on [a, b] for a smooth integrand.
template <typename F>
double simpson_step(F&& f, double a, double fa, double b, double fb, double m,
                    double fm, double whole, double tol, int depth) {
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return simpson_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           simpson_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

template <typename F>
double adaptive_simpson(F&& f, double a, double b, double tol, int depth = 40) {
    double m = 0.5 * (a + b);
    double fa = f(a), fb = f(b), fm = f(m);
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_step(f, a, fa, b, fb, m, fm, whole, tol, depth);
}

}  // namespace detail

/// Lebesgue measure of the neighborhood B((0, u)) of a single point.
/// On the line (L = inf) this is the closed form 2 beta u^{-gamma} / (1 - gamma').
/// On a finite torus the per-mark interval width 2 beta u^{-gamma} w^{-gamma'}
/// is clipped at L before integrating over the mark.
inline double singleton_neighborhood_measure(double u, const ModelParams& params) {
    if (!(u > 0.0)) throw std::invalid_argument("singleton_neighborhood_measure: u must be > 0");
    const double A = 2.0 * params.beta * std::pow(u, -params.gamma);
    const double gp = params.gamma_prime;
    if (params.infinite()) return A / (1.0 - gp);
    const double L = params.torus_length;
    if (A >= L) return L;  // clipped for every mark
    // Width exceeds L exactly for w <= w_star.
    double w_star = std::pow(A / L, 1.0 / gp);
    auto f = [&](double w) { return A * std::pow(w, -gp); };
    return L * w_star + detail::adaptive_simpson(f, w_star, 1.0, 1e-12);
}

/// Integral over m free points of |B({(0,u), p_1, ..., p_m})| on the line:
/// u^{-gamma} / (1 - (m+1) gamma') * (2 beta)^{m+1} / (1 - gamma)^m.
/// Diverges unless gamma' < 1/(m+1).
inline double simplex_neighborhood_integral(int m, double u, const ModelParams& params) {
    if (m < 0) throw std::invalid_argument("simplex_neighborhood_integral: m must be >= 0");
    if (!(u > 0.0)) throw std::invalid_argument("simplex_neighborhood_integral: u must be > 0");
    if (!((m + 1) * params.gamma_prime < 1.0))
        throw std::invalid_argument(
            "simplex_neighborhood_integral: requires gamma' < 1/(m+1), integral diverges");
    return std::pow(u, -params.gamma) / (1.0 - (m + 1) * params.gamma_prime) *
           std::pow(2.0 * params.beta, m + 1) / std::pow(1.0 - params.gamma, m);
}

/// Expected bipartite degree of a typical P-vertex:
/// 2 beta lambda' / ((1 - gamma)(1 - gamma')).
inline double expected_typical_degree(const ModelParams& params) {
    return 2.0 * params.beta * params.lambda_prime /
           ((1.0 - params.gamma) * (1.0 - params.gamma_prime));
}

/// beta that yields a target mean P-vertex degree with the other parameters fixed.
inline double beta_for_mean_degree(double target, const ModelParams& params) {
    return target * (1.0 - params.gamma) * (1.0 - params.gamma_prime) /
           (2.0 * params.lambda_prime);
}

/// Expected number of bipartite edges per unit torus length:
/// 2 beta lambda lambda' / ((1 - gamma)(1 - gamma')). Scale by L at call sites.
inline double expected_edge_count(const ModelParams& params) {
    return 2.0 * params.beta * params.lambda * params.lambda_prime /
           ((1.0 - params.gamma) * (1.0 - params.gamma_prime));
}

namespace detail {

// lam * (1 - (1/g) x^{1/g} Gamma(-1/g, x)) with x = 2 b lamp / (1 - gp).
inline double nonisolated_one_side(double g, double gp, double b, double lam,
                                   double lamp) {
    double x = 2.0 * b * lamp / (1.0 - gp);
    if (x <= 0.0) return 0.0;  // no neighborhood mass, everything isolated
    double val = 1.0 - (1.0 / g) * std::pow(x, 1.0 / g) * upper_incomplete_gamma(-1.0 / g, x);
    if (val < 0.0) val = 0.0;
    if (val > 1.0) val = 1.0;
    return lam * val;
}

}  // namespace detail

/// Expected numbers of non-isolated P- and P'-vertices per unit torus length.
inline std::pair<double, double> expected_nonisolated_counts(const ModelParams& params) {
    double p_side = detail::nonisolated_one_side(params.gamma, params.gamma_prime,
                                                 params.beta, params.lambda,
                                                 params.lambda_prime);
    double pp_side = detail::nonisolated_one_side(params.gamma_prime, params.gamma,
                                                  params.beta, params.lambda_prime,
                                                  params.lambda);
    return {p_side, pp_side};
}

struct DegreeExponents {
    double ccdf_slope;    // log-log CCDF slope m - (m+1)/gamma
    double pdf_exponent;  // density exponent 1 + (m+1)/gamma - m
};

/// Tail exponents of the typical m-simplex degree distribution.
inline DegreeExponents theoretical_degree_exponents(int m, double gamma) {
    if (!(gamma > 0.0 && gamma < 1.0))
        throw std::invalid_argument("theoretical_degree_exponents: gamma must be in (0, 1)");
    double slope = m - (m + 1) / gamma;
    return {slope, 1.0 - slope};
}

/// Upper bound on |B({(0,u), (y,v)})| for u <= v, y != 0:
/// 2 beta / (1 - gamma') * v^{-gamma} * s^(1 - gamma'),
/// s = min((2 beta u^{-gamma} / |y|)^{1/gamma'}, 1).
inline double pairwise_intersection_bound(double u, double v, double y,
                                          const ModelParams& params) {
    if (u > v) throw std::invalid_argument("pairwise_intersection_bound: requires u <= v");
    if (y == 0.0) throw std::invalid_argument("pairwise_intersection_bound: y must be nonzero");
    double s = std::pow(2.0 * params.beta * std::pow(u, -params.gamma) / std::fabs(y),
                        1.0 / params.gamma_prime);
    if (s > 1.0) s = 1.0;
    return 2.0 * params.beta / (1.0 - params.gamma_prime) * std::pow(v, -params.gamma) *
           std::pow(s, 1.0 - params.gamma_prime);
}

}  // namespace dowkerlab

#endif
