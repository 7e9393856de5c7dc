#ifndef DOWKERLAB_CALIBRATE_HPP
#define DOWKERLAB_CALIBRATE_HPP

#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "model.hpp"

namespace dowkerlab {

/// Observed dataset summary feeding calibration. Counts live on a torus of
/// measure 1, so lambda and lambda' come out as absolute counts.
struct DataSummary {
    double n_authors = 0.0;     // non-isolated P-vertices
    double n_documents = 0.0;   // non-isolated P'-vertices
    double n_incidences = 0.0;  // author-document edges
    double gamma = 0.0;
    double gamma_prime = 0.0;

    void validate() const {
        if (!(n_authors > 0.0 && n_documents > 0.0 && n_incidences > 0.0))
            throw std::invalid_argument("DataSummary: counts must be positive");
        if (!(gamma > 0.0 && gamma < 1.0 && gamma_prime > 0.0 && gamma_prime < 1.0))
            throw std::invalid_argument("DataSummary: gamma, gamma' must be in (0, 1)");
    }

    nlohmann::json to_json() const {
        return {{"n_authors", n_authors},
                {"n_documents", n_documents},
                {"n_incidences", n_incidences},
                {"gamma", gamma},
                {"gamma_prime", gamma_prime}};
    }

    static DataSummary from_json(const nlohmann::json& j) {
        DataSummary s;
        s.n_authors = j.at("n_authors").get<double>();
        s.n_documents = j.at("n_documents").get<double>();
        s.n_incidences = j.at("n_incidences").get<double>();
        s.gamma = j.at("gamma").get<double>();
        s.gamma_prime = j.at("gamma_prime").get<double>();
        s.validate();
        return s;
    }
};

struct GammaEstimate {
    double value = 0.0;
    bool in_range = false;  // value in (0, 1)
};

/// Inverts the tail-exponent relation: gamma = (m+1) / (pdf_exponent - 1 + m).
inline GammaEstimate gamma_from_exponent(double pdf_exponent, int m) {
    if (!(pdf_exponent > 1.0))
        throw std::invalid_argument("gamma_from_exponent: exponent must be > 1");
    double g = (m + 1) / (pdf_exponent - 1.0 + m);
    return {g, g > 0.0 && g < 1.0};
}

namespace detail {

// Residual vector of the calibration system at (beta, lambda, lambda'),
// relative to the targets.
inline std::array<double, 3> calibration_residuals(const DataSummary& s, double b,
                                                   double lam, double lamp) {
    double ea = nonisolated_one_side(s.gamma, s.gamma_prime, b, lam, lamp);
    double ed = nonisolated_one_side(s.gamma_prime, s.gamma, b, lamp, lam);
    double ee = 2.0 * b * lam * lamp / ((1.0 - s.gamma) * (1.0 - s.gamma_prime));
    return {ea / s.n_authors - 1.0, ed / s.n_documents - 1.0, ee / s.n_incidences - 1.0};
}

// Solve the 3x3 linear system J x = r in place. Partial pivoting.
inline std::array<double, 3> solve3(std::array<std::array<double, 3>, 3> J,
                                    std::array<double, 3> r) {
    for (int c = 0; c < 3; ++c) {
        int p = c;
        for (int i = c + 1; i < 3; ++i)
            if (std::fabs(J[i][c]) > std::fabs(J[p][c])) p = i;
        if (std::fabs(J[p][c]) < 1e-300)
            throw std::runtime_error("calibrate: singular Jacobian");
        std::swap(J[c], J[p]);
        std::swap(r[c], r[p]);
        for (int i = c + 1; i < 3; ++i) {
            double f = J[i][c] / J[c][c];
            for (int k = c; k < 3; ++k) J[i][k] -= f * J[c][k];
            r[i] -= f * r[c];
        }
    }
    std::array<double, 3> x{};
    for (int i = 2; i >= 0; --i) {
        double acc = r[i];
        for (int k = i + 1; k < 3; ++k) acc -= J[i][k] * x[k];
        x[i] = acc / J[i][i];
    }
    return x;
}

}  // namespace detail

/// Solves the three-equation system (expected non-isolated counts on both
/// sides, expected edge count) for (beta, lambda, lambda') with gamma and
/// gamma' fixed. Damped Newton iteration in log-parameter space; converges to
/// relative residual <= 1e-10 or throws with the residuals attached.
inline ModelParams calibrate(const DataSummary& summary) {
    summary.validate();
    // Non-isolated counts lower-bound the intensities; beta from the edge
    // equation at that guess.
    double lam = summary.n_authors;
    double lamp = summary.n_documents;
    double b = summary.n_incidences * (1.0 - summary.gamma) * (1.0 - summary.gamma_prime) /
               (2.0 * lam * lamp);

    std::array<double, 3> lx{std::log(b), std::log(lam), std::log(lamp)};
    auto residual_at = [&](const std::array<double, 3>& v) {
        return detail::calibration_residuals(summary, std::exp(v[0]), std::exp(v[1]),
                                             std::exp(v[2]));
    };
    auto norm = [](const std::array<double, 3>& r) {
        return std::max({std::fabs(r[0]), std::fabs(r[1]), std::fabs(r[2])});
    };

    std::array<double, 3> r = residual_at(lx);
    const double tol = 1e-10;
    for (int iter = 0; iter < 200 && norm(r) > tol; ++iter) {
        // Forward-difference Jacobian in the log coordinates.
        std::array<std::array<double, 3>, 3> J{};
        const double h = 1e-7;
        for (int c = 0; c < 3; ++c) {
            auto lx2 = lx;
            lx2[c] += h;
            auto r2 = residual_at(lx2);
            for (int i = 0; i < 3; ++i) J[i][c] = (r2[i] - r[i]) / h;
        }
        auto step = detail::solve3(J, r);
        // Cap the log-space step so a near-singular Jacobian cannot throw the
        // iterate out of the representable range.
        double smax = std::max({std::fabs(step[0]), std::fabs(step[1]), std::fabs(step[2])});
        if (smax > 2.0)
            for (auto& v : step) v *= 2.0 / smax;
        double t = 1.0;
        double base = norm(r);
        while (t > 1e-6) {
            auto trial = lx;
            for (int c = 0; c < 3; ++c) trial[c] -= t * step[c];
            auto rt = residual_at(trial);
            if (norm(rt) < base) {
                lx = trial;
                r = rt;
                break;
            }
            t *= 0.5;
        }
        if (t <= 1e-6) break;  // stalled; the residual check below decides
    }
    if (norm(r) > 1e-8) {
        std::ostringstream msg;
        msg << "calibrate: no convergence, residuals (" << r[0] << ", " << r[1] << ", "
            << r[2] << ")";
        throw std::runtime_error(msg.str());
    }

    ModelParams p;
    p.gamma = summary.gamma;
    p.gamma_prime = summary.gamma_prime;
    p.beta = std::exp(lx[0]);
    p.lambda = std::exp(lx[1]);
    p.lambda_prime = std::exp(lx[2]);
    p.torus_length = 1.0;
    return p;
}

}  // namespace dowkerlab

#endif
