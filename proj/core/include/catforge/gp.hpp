#pragma once

#include <vector>

#include "catforge/fock.hpp"
#include "catforge/optimize.hpp"

namespace catforge {

/// Circuit parameters of the three-mode heralded scheme: squeezings r1..r3,
/// first-splitter transmissivity T, displacement magnitude beta (the applied
/// displacements are -i beta and +i beta), herald order n photons per PNRD.
struct GpParams {
    double r1 = 0.0;
    double r2 = 0.0;
    double r3 = 0.0;
    double T = 0.5;
    double beta = 0.0;
    int n = 1;
};

struct GpDerived {
    double lambda1, lambda2, lambda3;
    double mu1, mu2, mu3;
    double xi;          // T lambda1 + (1-T) lambda2
    double chi;         // atanh(xi)
    double beta_tilde;  // beta (1 + lambda3)

    explicit GpDerived(const GpParams& p);
};

/// [C_0, C_2, ..., C_2n] multiplying (a - lambda2 a^dag)^{2k}.
std::vector<double> gp_coefficients(const GpDerived& d, double T, int n);

struct GpOutput {
    FockVector state;    // normalized, even parity
    double k_norm;       // K_2n = squared norm before normalization
};

/// Analytic heralded output: polynomial in (a - lambda2 a^dag) applied to the
/// squeezed core |chi>. dim < 0 selects the truncation automatically.
GpOutput gp_output_state(const GpParams& p, int dim = -1);

/// Herald probability; 0 when the output amplitude vanishes identically.
double gp_success_probability(const GpParams& p);

/// Constrained parameter families recovering photon subtraction / addition.
GpParams ps_params(double r1, double T, int n);
GpParams pa_params(double r1, double beta, int n);

/// Single-PNRD subtraction rate from the two-PNRD raw rate: x 2^{2n}(n!)^2/(2n)!.
double ps_success_rescale(double p_raw, int n);

enum class GpFamily { Full, Subtraction, Addition };

struct GpOptimizerConfig {
    int restarts = 8;
    std::uint64_t seed = 12345;
    double ladder_step = 0.25;  // internal continuation step in alpha
    int max_evals_per_restart = 4000;
};

struct GpOptimum {
    GpParams params;
    double fidelity = 0.0;
    double probability = 0.0;
};

/// max_p |<cat+(alpha)|phi_2n(p)>|^2 over the family's free parameters,
/// warm-started along an internal alpha ladder. Deterministic given the seed.
GpOptimum gp_optimize(double alpha, int n, const GpOptimizerConfig& cfg = {},
                      GpFamily family = GpFamily::Full);

/// Continuation along a caller-supplied alpha grid (each point warm-started
/// from the previous optimum, plus fresh restarts).
std::vector<GpOptimum> gp_optimize_grid(const std::vector<double>& alphas, int n,
                                        const GpOptimizerConfig& cfg = {},
                                        GpFamily family = GpFamily::Full);

/// |<cat+(alpha)|phi_2n(p)>|^2 for one parameter point; -inf if the herald is
/// impossible (zero-norm output) or |xi| >= 1.
double gp_fidelity(double alpha, const GpParams& p);

}  // namespace catforge
