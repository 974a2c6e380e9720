#pragma once

#include <Eigen/Dense>
#include <span>

#include "catforge/common.hpp"

namespace catforge {

/// Pure single-mode state as complex amplitudes in the number basis
/// {|0>, |1>, ..., |dim-1>}.
struct FockVector {
    Eigen::VectorXcd amps;

    int dim() const { return static_cast<int>(amps.size()); }
    double squared_norm() const { return amps.squaredNorm(); }
    double norm() const { return amps.norm(); }

    /// Probability mass above 90% of the truncation index; the adequacy
    /// witness used at module boundaries.
    double tail_mass() const;
    double mean_photon() const;

    FockVector normalized() const;

    /// <this|other>, summed over the common support.
    cdouble overlap(const FockVector& other) const;
};

/// Mixed single-mode state as a density matrix in the number basis.
struct FockMatrix {
    Eigen::MatrixXcd elems;

    int dim() const { return static_cast<int>(elems.rows()); }
    double trace_real() const { return elems.trace().real(); }
    double hermiticity_defect() const { return (elems - elems.adjoint()).cwiseAbs().maxCoeff(); }
    double min_eigenvalue() const;

    static FockMatrix projector(const FockVector& psi);
};

/// Squeezing parameter r with the derived lambda = tanh r, mu = cosh r used
/// by the BCH-factored squeeze and the analytic pipeline.
struct SqueezeSpec {
    double r;
    double lambda;
    double mu;

    explicit SqueezeSpec(double r_) : r(r_), lambda(std::tanh(r_)), mu(std::cosh(r_)) {}
};

/// Truncation dimension for coherent-amplitude scale b: ceil(b^2 + 8b + 20) + 1.
int fock_dim_for(double amplitude_scale);

/// Truncation dimension holding a squeezed vacuum of parameter chi = atanh(xi)
/// with tail mass below ~1e-10 over the top 10% of the basis.
int squeezed_dim_for(double xi, int headroom = 0);

FockVector vacuum_fock(int dim);
FockVector coherent_fock(cdouble beta, int dim);
FockVector squeezed_vacuum_fock(double r, int dim, double tail_tol = 1e-8);

enum class Parity { Even, Odd };

/// (|alpha> + |-alpha>)/N+ or (|alpha> - |-alpha>)/N-, alpha >= 0.
FockVector cat_fock(double alpha, Parity parity, int dim);

/// w = a v (annihilation) and w = a^dag v (creation) in the truncated basis.
FockVector apply_annihilation(const FockVector& v);
FockVector apply_creation(const FockVector& v);

struct PolynomialResult {
    FockVector state;         // unnormalized
    double squared_norm = 0;  // K = <state|state>
};

/// sum_k coeffs[k] (a - lambda2 a^dag)^{2k} |v>, k = 0..coeffs.size()-1.
/// The top 2(coeffs.size()-1) entries of v must be vacant (headroom).
PolynomialResult apply_polynomial(const FockVector& v, std::span<const cdouble> coeffs,
                                  double lambda2);

/// S(r) applied through the factored form e^{lambda a^dag^2/2} mu^{-n-1/2} e^{-lambda a^2/2}.
FockVector apply_squeeze_bch(const FockVector& v, double r);

/// Pure-loss channel of transmissivity tau in [0,1] applied to a pure state;
/// the double-sum binomial form over environment photon numbers.
FockMatrix loss_fock(const FockVector& psi, double tau);

}  // namespace catforge
