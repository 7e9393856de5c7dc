#ifndef DOWKERLAB_SAMPLER_HPP
#define DOWKERLAB_SAMPLER_HPP

#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "params.hpp"
#include "rng.hpp"

namespace dowkerlab {

/// One realization of the two marked Poisson processes on the torus.
struct NetworkInstance {
    ModelParams params;
    std::vector<MarkedPoint> p_vertices;        // authors, process P
    std::vector<MarkedPoint> p_prime_vertices;  // documents, process P'
};

/// Homogeneous marked Poisson process on [0, length): count ~ Poisson(intensity *
/// length), positions uniform, marks uniform in (0, 1].
inline std::vector<MarkedPoint> sample_ppp(double intensity, double length,
                                           RngStream& rng) {
    if (intensity < 0.0) throw std::invalid_argument("sample_ppp: intensity must be >= 0");
    if (!(length > 0.0) || std::isinf(length))
        throw std::invalid_argument("sample_ppp: length must be positive and finite");
    long long n = rng.poisson(intensity * length);
    std::vector<MarkedPoint> pts;
    pts.reserve(static_cast<std::size_t>(n));
    for (long long i = 0; i < n; ++i) {
        double pos = rng.uniform(0.0, length);
        double mark = rng.uniform01();
        pts.emplace_back(pos, mark);
    }
    return pts;
}

inline NetworkInstance sample_network(const ModelParams& params, RngStream& rng) {
    params.validate();
    if (params.infinite())
        throw std::invalid_argument("sample_network: requires a finite torus_length");
    NetworkInstance inst;
    inst.params = params;
    inst.p_vertices = sample_ppp(params.lambda, params.torus_length, rng);
    inst.p_prime_vertices = sample_ppp(params.lambda_prime, params.torus_length, rng);
    return inst;
}

/// Columnar text serialization: header `side,position,mark`, side in {P, Pprime}.
inline void write_instance(const NetworkInstance& inst, std::ostream& os) {
    os << "side,position,mark\n";
    os.precision(17);
    for (const auto& p : inst.p_vertices)
        os << "P," << p.position << "," << p.mark << "\n";
    for (const auto& p : inst.p_prime_vertices)
        os << "Pprime," << p.position << "," << p.mark << "\n";
}

inline void write_instance(const NetworkInstance& inst, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("write_instance: cannot open " + path);
    write_instance(inst, os);
}

}  // namespace dowkerlab

#endif
