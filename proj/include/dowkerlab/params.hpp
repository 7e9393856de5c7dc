#ifndef DOWKERLAB_PARAMS_HPP
#define DOWKERLAB_PARAMS_HPP

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace dowkerlab {

/// Model constants for the weighted bipartite random connection model.
/// `torus_length` is the circumference L of the 1-D torus; an infinite value
/// selects the untruncated line (used by the analytic formulas and Palm
/// sampling), a finite value selects periodic boundary conditions.
struct ModelParams {
    double gamma = 0.5;         // P-side mark exponent, in (0, 1)
    double gamma_prime = 0.5;   // P'-side mark exponent, in (0, 1)
    double beta = 1.0;          // connection radius scale, > 0
    double lambda = 1.0;        // P intensity per unit length
    double lambda_prime = 1.0;  // P' intensity per unit length
    double torus_length = 1.0;  // L, > 0 or infinity

    void validate() const {
        if (!(gamma > 0.0 && gamma < 1.0))
            throw std::invalid_argument("gamma must be in (0, 1)");
        if (!(gamma_prime > 0.0 && gamma_prime < 1.0))
            throw std::invalid_argument("gamma_prime must be in (0, 1)");
        if (!(beta > 0.0)) throw std::invalid_argument("beta must be positive");
        if (!(lambda >= 0.0)) throw std::invalid_argument("lambda must be >= 0");
        if (!(lambda_prime >= 0.0))
            throw std::invalid_argument("lambda_prime must be >= 0");
        if (!(torus_length > 0.0))
            throw std::invalid_argument("torus_length must be positive or infinite");
    }

    bool infinite() const { return std::isinf(torus_length); }

    /// Role swap: P <-> P' (gamma <-> gamma_prime, lambda <-> lambda_prime).
    ModelParams swapped() const {
        ModelParams s = *this;
        std::swap(s.gamma, s.gamma_prime);
        std::swap(s.lambda, s.lambda_prime);
        return s;
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["gamma"] = gamma;
        j["gamma_prime"] = gamma_prime;
        j["beta"] = beta;
        j["lambda"] = lambda;
        j["lambda_prime"] = lambda_prime;
        if (infinite())
            j["torus_length"] = "inf";
        else
            j["torus_length"] = torus_length;
        return j;
    }

    static ModelParams from_json(const nlohmann::json& j) {
        ModelParams p;
        p.gamma = j.at("gamma").get<double>();
        p.gamma_prime = j.at("gamma_prime").get<double>();
        p.beta = j.at("beta").get<double>();
        p.lambda = j.at("lambda").get<double>();
        p.lambda_prime = j.at("lambda_prime").get<double>();
        const auto& tl = j.at("torus_length");
        if (tl.is_string()) {
            if (tl.get<std::string>() != "inf")
                throw std::invalid_argument("torus_length: expected number or \"inf\"");
            p.torus_length = std::numeric_limits<double>::infinity();
        } else {
            p.torus_length = tl.get<double>();
        }
        p.validate();
        return p;
    }
};

/// A point of the marked point process: a location with a mark in (0, 1].
/// A zero mark is rejected because the connection radius u^{-gamma} diverges.
struct MarkedPoint {
    double position = 0.0;
    double mark = 1.0;

    MarkedPoint() = default;
    MarkedPoint(double pos, double m) : position(pos), mark(m) {
        if (!(m > 0.0 && m <= 1.0))
            throw std::invalid_argument("mark must be in (0, 1]");
    }
};

}  // namespace dowkerlab

#endif
