#pragma once

#include <functional>
#include <vector>

#include "catforge/coherent.hpp"
#include "catforge/fock.hpp"

namespace catforge {

/// 1-D cut through phase space or a quadrature distribution, in canonical
/// units (hbar = 1, vacuum quadrature variance 1/2, Wigner vacuum peak 2/pi).
struct PhaseGrid {
    enum class Axis { XCut, YCut };
    Axis axis = Axis::YCut;
    std::vector<double> points;
    std::vector<double> values;

    double trapezoid() const;
};

/// Normalized Hermite functions psi_0..psi_{count-1} at y, and optionally the
/// derivative table; the recurrence form that stays finite at large order.
void hermite_psi(double y, int count, std::vector<double>& psi);
void hermite_psi_dpsi(double y, int count, std::vector<double>& psi, std::vector<double>& dpsi);

/// W(x, y) through the displaced-parity series (2/pi) sum_k (-1)^k <k|D^dag rho D|k>.
double wigner_fock(const FockMatrix& rho, double x, double y);
double wigner_fock(const FockVector& psi, double x, double y);

/// Exact closed-form Wigner of a coherent-state mix.
double wigner_mix(const CoherentMix& m, double x, double y);

/// W_cat^(+)(x, y) of the even cat, closed form.
double wigner_even_cat(double alpha, double x, double y);

struct WignerMin {
    double y = 0.0;
    double value = 0.0;
    bool negative = false;  // false: no negative region found (legal outcome)
};

/// First interference minimum of W(0, y) on y in (0, pi/(2 alpha)), located by
/// coarse scan plus golden-section refinement seeded near pi/(4 alpha).
WignerMin find_wigner_min(const std::function<double(double)>& wigner_cut, double alpha);
WignerMin find_wigner_min(const FockVector& psi, double alpha);
WignerMin find_wigner_min(const FockMatrix& rho, double alpha);
WignerMin find_wigner_min(const CoherentMix& m, double alpha);

/// p(y) = <y|rho|y> for the y = i(a^dag - a)/sqrt(2) quadrature.
double homodyne_pdf(const FockVector& psi, double y);
double homodyne_pdf(const FockMatrix& rho, double y);
double homodyne_pdf(const CoherentMix& m, double y);

/// p_cat^(+)(y) of the even cat, closed form.
double homodyne_even_cat(double alpha, double y);

struct PdfDerivatives {
    double p = 0.0;
    double dp = 0.0;
    double d2p = 0.0;
};

/// p, p', p'' at y with the derivatives taken analytically (Hermite-function
/// identities in the number basis; differentiated Gaussians for mixes).
PdfDerivatives homodyne_derivatives(const FockVector& psi, double y);
PdfDerivatives homodyne_derivatives(const FockMatrix& rho, double y);
PdfDerivatives homodyne_derivatives(const CoherentMix& m, double y);

struct DistillableReport {
    double variance = 0.0;  // V = p(0)/|p''(0)|
    double p0 = 0.0;
    double p2 = 0.0;        // p''(0)

    bool nonclassical() const { return variance < 0.5; }
};

DistillableReport distillable_variance(const FockVector& psi);
DistillableReport distillable_variance(const FockMatrix& rho);
DistillableReport distillable_variance(const CoherentMix& m);

/// Grid helpers (values evaluated in parallel, deterministic order).
PhaseGrid wigner_cut(const std::function<double(double)>& wigner_of_y,
                     const std::vector<double>& ys);
PhaseGrid homodyne_cut(const std::function<double(double)>& pdf_of_y,
                       const std::vector<double>& ys);

}  // namespace catforge
