#pragma once

#include <random>

#include "catforge/catforge.hpp"

namespace testsupport {

using namespace catforge;

// Engine-independent uniform draw so fixtures are identical on every platform.
inline double uniform01(std::mt19937_64& rng) { return (rng() >> 11) * 0x1.0p-53; }

inline double draw(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

inline FockVector random_fock_vector(std::mt19937_64& rng, int dim) {
    Eigen::VectorXcd amps(dim);
    for (int i = 0; i < dim; ++i) amps[i] = cdouble{draw(rng, -1, 1), draw(rng, -1, 1)};
    // Damp the top so the truncation witness holds.
    for (int i = 0; i < dim; ++i) amps[i] *= std::exp(-0.15 * i);
    return FockVector{amps}.normalized();
}

inline GpParams random_gp_params(std::mt19937_64& rng, int n) {
    return GpParams{draw(rng, -0.5, 0.5), draw(rng, -0.5, 0.5), draw(rng, -0.5, 0.5),
                    draw(rng, 0.3, 0.9),  draw(rng, 0.0, 0.5),  n};
}

// Test-only oracle: D(delta) applied in the number basis by substepped Taylor
// series of the generator, independent of the production displacement paths.
inline FockVector displace_fock_series(const FockVector& v, cdouble delta) {
    const int dim = v.dim();
    const int steps =
        std::max(1, static_cast<int>(std::ceil(2.0 * std::abs(delta) * std::sqrt(dim))));
    const cdouble ds = delta / static_cast<double>(steps);
    Eigen::VectorXcd acc = v.amps;
    for (int s = 0; s < steps; ++s) {
        Eigen::VectorXcd term = acc;
        Eigen::VectorXcd total = acc;
        for (int k = 1; k < 200; ++k) {
            Eigen::VectorXcd next = Eigen::VectorXcd::Zero(dim);
            for (int i = 0; i < dim; ++i) {
                cdouble t = 0.0;
                if (i >= 1) t += ds * std::sqrt(static_cast<double>(i)) * term[i - 1];
                if (i + 1 < dim) t -= std::conj(ds) * std::sqrt(i + 1.0) * term[i + 1];
                next[i] = t;
            }
            term = next / static_cast<double>(k);
            total += term;
            if (term.norm() <= 1e-16 * total.norm()) break;
        }
        acc.swap(total);
    }
    return FockVector{acc};
}

inline double fidelity_vector_matrix(const FockVector& psi, const FockMatrix& rho) {
    const int n = std::min(psi.dim(), rho.dim());
    const Eigen::VectorXcd v = psi.amps.head(n);
    return (v.adjoint() * rho.elems.topLeftCorner(n, n) * v)(0).real();
}

}  // namespace testsupport
