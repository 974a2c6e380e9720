#pragma once

#include "catforge/coherent.hpp"
#include "catforge/fock.hpp"

namespace catforge {

struct FisherReport {
    double fisher = 0.0;         // classical FI of the y-homodyne measurement
    double qfi = 0.0;            // quantum FI for the same displacement
    double eps_min = 0.0;        // 1/sqrt(F)
    double eps_tilde_min = 0.0;  // 1/sqrt(H)
};

/// Bundles both information measures; rejects inputs violating the
/// Cramer-Rao ordering F <= H beyond numerical slack.
FisherReport make_fisher_report(double fisher, double qfi);

/// Classical Fisher information of the y-quadrature measurement under a weak
/// x-generated displacement: F = 2 int p'(y)^2 / p(y) dy, with p' analytic and
/// the integral done by adaptive Gauss-Kronrod refinement. Regions where the
/// density underflows are excluded (their contribution decays at the same
/// Gaussian rate as the density itself).
double homodyne_fisher(const FockVector& psi);
double homodyne_fisher(const FockMatrix& rho);
double homodyne_fisher(const CoherentMix& m);

/// Quantum Fisher information for the displacement D(i eps) = exp(sqrt(2) i eps x):
/// the spectral sum 4 sum_{nm} (p_n - p_m)^2/(p_n + p_m) |<phi_n|x|phi_m>|^2
/// over eigenpairs with p_n + p_m > 1e-12. Coherent probes give H = 4.
double qfi_displacement(const FockMatrix& rho);

/// Pure-state shortcut: H = 8 Var(x).
double qfi_displacement(const FockVector& psi);

/// Minimum resolvable displacement 1/sqrt(information).
double min_resolvable(double information);

/// Mean and variance of the x and y quadratures (canonical units).
struct QuadratureMoments {
    double mean_x = 0.0, var_x = 0.0;
    double mean_y = 0.0, var_y = 0.0;
};
QuadratureMoments quadrature_moments(const FockVector& psi);
QuadratureMoments quadrature_moments(const FockMatrix& rho);

}  // namespace catforge
