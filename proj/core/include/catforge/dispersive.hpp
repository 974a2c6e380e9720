#pragma once

#include "catforge/coherent.hpp"
#include "catforge/optimize.hpp"

namespace catforge {

/// Deterministic/probabilistic feedforward settings. q = 1 keeps every "-"
/// outcome (deterministic protocol); q < 1 discards it with probability 1-q.
struct DispersiveConfig {
    double alpha = 0.0;
    double gamma = 0.0;
    double q = 1.0;

    double p_plus() const { return 0.5 * (1.0 + std::exp(-2.0 * alpha * alpha)); }
    double p_minus() const { return 0.5 * (1.0 - std::exp(-2.0 * alpha * alpha)); }
};

/// Finite-cooperativity, non-unit-escape cavity coupling. Models the
/// interaction as conditional loss with qubit-state dependent transmissivity.
struct ImperfectCoupling {
    double cooperativity = 0.0;  // C > 0
    double escape = 1.0;         // eta in (1/2, 1]

    ImperfectCoupling(double C, double eta);

    double eta_g() const;      // (1 - 2 eta/(1+4C))^2
    double eta_e() const;      // (1 - 2 eta)^2
    double eta_prime() const;  // 1 - 16 eta C/(1+4C)^2
    double big_gamma() const;  // 2 - eta_g - eta_e + 2 sqrt((1-eta_e)(eta'-eta_g))
};

/// Qubit decoherence before/inside detection.
struct QubitChannel {
    enum class Kind { PhaseDamping, AmplitudeDamping };
    Kind kind;
    double strength;  // lambda >= 0 or kappa in [0,1]

    static QubitChannel phase_damping(double lambda);
    static QubitChannel amplitude_damping(double kappa);

    /// Coherence suppression factor e^{-lambda} or sqrt(1-kappa).
    double suppression() const;
};

/// rho_D(gamma): p+ |cat+><cat+| + (p-/2)(|psi'(g)><psi'(g)| + |psi'(-g)><psi'(-g)|).
CoherentMix ideal_mixture(double alpha, double gamma);

/// |<cat+|psi'(gamma)>|^2, the per-"-"-event fidelity contribution.
double dispersive_branch_overlap(double alpha, double gamma);

/// Closed-form F_D(gamma) of the deterministic protocol.
double dispersive_fidelity(double alpha, double gamma);

/// Closed-form F_D(q; gamma) of the probabilistic variant.
double dispersive_fidelity(double alpha, double q, double gamma);

struct GammaOpt {
    double gamma = 0.0;
    double fidelity = 0.0;
};

/// 1-D maximization of F_D(gamma) on (0, pi/(2 alpha)].
GammaOpt optimize_gamma(double alpha);

struct ProbabilisticResult {
    double q = 1.0;
    double gamma = 0.0;
    double fidelity = 0.0;
    double success = 1.0;
};

/// Largest success probability P = p+ + q p- subject to F_D(q;gamma) >= f_floor
/// (the matched Gaussian-protocol fidelity), via the penalty optimizer.
ProbabilisticResult probabilistic_protocol(double alpha, double f_floor);

struct ConditionalState {
    CoherentMix state;
    double probability;
};

/// sigma_+/- for imperfect coupling; sign = +1 or -1.
ConditionalState imperfect_conditional(double alpha, const ImperfectCoupling& c, int sign);

struct ProtocolState {
    double gamma = 0.0;
    double fidelity = 0.0;
    CoherentMix state;
};

/// Deterministic protocol output at the optimal feedforward amplitude.
ProtocolState ideal_protocol(double alpha);

/// Feedforward mixture under imperfect coupling, gamma optimized.
ProtocolState imperfect_protocol(double alpha, const ImperfectCoupling& c);

/// Feedforward mixture under qubit phase/amplitude damping, gamma optimized.
ProtocolState qubit_damped_protocol(double alpha, const QubitChannel& ch);

/// Closed-form large-amplitude asymptotes; test references only, never
/// protocol output.
/// The W_* kinds return the gap above the target-cat Wigner minimum
/// W_cat^(+)(0, ybar); the F_* and V_* kinds return the quantity itself.
enum class AsymptoticKind {
    FDIdeal,    // alpha
    FDLoss,     // alpha, tau
    FPlusLoss,  // alpha, tau
    FImp,       // alpha, coop, eta
    FPd,        // alpha, lambda
    FAd,        // alpha, kappa
    WDMin,      // alpha
    WDMinLoss,  // alpha, tau
    WPlusLoss,  // alpha, tau
    WImpMin,    // alpha, coop, eta
    WPdMin,     // alpha, lambda
    WAdMin,     // alpha, kappa
    VD,         // alpha
    VImp,       // alpha, coop, eta
    VPd,        // alpha, lambda
    VAd,        // alpha, kappa
};

struct AsymptoticArgs {
    double alpha = 0.0;
    double tau = 1.0;
    double coop = 0.0;
    double eta = 1.0;
    double lambda = 0.0;
    double kappa = 0.0;
};

double asymptotic_reference(AsymptoticKind kind, const AsymptoticArgs& a);

}  // namespace catforge
