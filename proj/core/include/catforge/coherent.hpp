#pragma once

#include <Eigen/Dense>

#include "catforge/common.hpp"
#include "catforge/fock.hpp"

namespace catforge {

/// Exact rank-limited density operator sum_ij c_ij |beta_i><beta_j| over a
/// finite set of coherent amplitudes. No truncation anywhere: every operation
/// on this representation is closed-form.
struct CoherentMix {
    Eigen::VectorXcd betas;   // ket amplitudes
    Eigen::MatrixXcd coeffs;  // Hermitian coefficient matrix, same index set

    int rank() const { return static_cast<int>(betas.size()); }
    cdouble trace() const;
    double hermiticity_defect() const { return (coeffs - coeffs.adjoint()).cwiseAbs().maxCoeff(); }
    double gram_min_eigenvalue() const;

    CoherentMix normalized() const;
};

/// <beta|gamma> = exp(-|beta|^2/2 - |gamma|^2/2 + conj(beta) gamma).
cdouble coherent_overlap(cdouble beta, cdouble gamma);

CoherentMix vacuum_mix();

/// Pure cat state |alpha> +/- |-alpha> as a rank-2 mix.
CoherentMix cat_mix(double alpha, Parity parity);

/// D(delta) rho D(delta)^dag; displacement phases are folded into coeffs so
/// Hermiticity stays manifest.
CoherentMix displace_mix(const CoherentMix& m, cdouble delta);

/// Pure-loss channel: beta_i -> sqrt(tau) beta_i with the environment-overlap
/// factor on each coefficient. Trace-preserving.
CoherentMix loss_mix(const CoherentMix& m, double tau);

/// <cat(alpha,parity)| rho |cat(alpha,parity)>, exact.
double fidelity_with_cat(const CoherentMix& m, double alpha, Parity parity);

/// Generic pure-state overlap expectation <psi|rho|psi> for |psi> given as a
/// coherent superposition sum_k kets[k] |amps[k]>.
double coherent_expectation(const CoherentMix& m, const Eigen::VectorXcd& amplitudes,
                            const Eigen::VectorXcd& weights);

/// Bridge into the number basis for cross-validation.
FockMatrix to_fock(const CoherentMix& m, int dim);

/// Convex combination sum_k w_k m_k as one mix (kets concatenated).
CoherentMix mix_sum(const std::vector<std::pair<double, CoherentMix>>& parts);

}  // namespace catforge
