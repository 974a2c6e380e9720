#include "catforge/phasespace.hpp"

#include <cmath>

#include "catforge/optimize.hpp"
#include "catforge/parallel.hpp"

namespace catforge {

namespace {

constexpr double kInvQuarterRootPi = 0.7511255444649425;  // pi^{-1/4}

// Displacement operator matrix in the truncated number basis, filled by the
// bounded two-term recurrence sqrt(m+1) D_{m+1,n} = sqrt(n) D_{m,n-1} + z D_{m,n}
// from the closed-form first row. Every entry has modulus <= 1.
Eigen::MatrixXcd displacement_matrix(cdouble z, int dim) {
    Eigen::MatrixXcd d(dim, dim);
    cdouble row0 = std::exp(-0.5 * std::norm(z));
    d(0, 0) = row0;
    for (int n = 1; n < dim; ++n) {
        row0 *= -std::conj(z) / std::sqrt(static_cast<double>(n));
        d(0, n) = row0;
    }
    for (int m = 0; m + 1 < dim; ++m) {
        const double inv = 1.0 / std::sqrt(m + 1.0);
        d(m + 1, 0) = inv * z * d(m, 0);
        for (int n = 1; n < dim; ++n)
            d(m + 1, n) = inv * (std::sqrt(static_cast<double>(n)) * d(m, n - 1) + z * d(m, n));
    }
    return d;
}

void check_wigner_headroom(int dim, cdouble z) {
    const double need = std::norm(z) + 8.0 * std::abs(z) + 8.0;
    if (dim < need)
        throw TruncationError("wigner_fock: truncation too small for the displaced frame");
}

// Alternating parity series with the stabilized stopping rule: stop after five
// consecutive increments below 1e-12.
double parity_series(const std::function<double(int)>& term, int count) {
    double total = 0.0;
    int quiet = 0;
    for (int k = 0; k < count; ++k) {
        const double inc = (k % 2 == 0 ? 1.0 : -1.0) * term(k);
        total += inc;
        quiet = (std::abs(inc) < 1e-12) ? quiet + 1 : 0;
        if (quiet >= 5) break;
    }
    return total;
}

}  // namespace

double PhaseGrid::trapezoid() const {
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < points.size(); ++i)
        sum += 0.5 * (values[i] + values[i + 1]) * (points[i + 1] - points[i]);
    return sum;
}

void hermite_psi(double y, int count, std::vector<double>& psi) {
    psi.assign(count, 0.0);
    if (count == 0) return;
    const double g = std::exp(-0.5 * y * y);
    psi[0] = g * kInvQuarterRootPi;
    if (count > 1) psi[1] = std::sqrt(2.0) * y * psi[0];
    for (int n = 1; n + 1 < count; ++n)
        psi[n + 1] = std::sqrt(2.0 / (n + 1.0)) * y * psi[n] - std::sqrt(n / (n + 1.0)) * psi[n - 1];
}

void hermite_psi_dpsi(double y, int count, std::vector<double>& psi, std::vector<double>& dpsi) {
    hermite_psi(y, count, psi);
    dpsi.assign(count, 0.0);
    for (int n = 0; n < count; ++n) {
        // psi_n' = sqrt(2n) psi_{n-1} - y psi_n  (from H_n' = 2n H_{n-1})
        dpsi[n] = -y * psi[n];
        if (n >= 1) dpsi[n] += std::sqrt(2.0 * n) * psi[n - 1];
    }
}

double wigner_fock(const FockMatrix& rho, double x, double y) {
    const cdouble z{x, y};
    const int dim = rho.dim();
    check_wigner_headroom(dim, z);
    const Eigen::MatrixXcd d = displacement_matrix(z, dim);
    const Eigen::MatrixXcd m = rho.elems * d;
    return 2.0 / kPi *
           parity_series([&](int k) { return d.col(k).dot(m.col(k)).real(); }, dim);
}

double wigner_fock(const FockVector& psi, double x, double y) {
    const cdouble z{x, y};
    const int dim = psi.dim();
    check_wigner_headroom(dim, z);
    const Eigen::MatrixXcd d = displacement_matrix(-z, dim);
    const Eigen::VectorXcd u = d * psi.amps;  // D(-z) psi = D^dag(z) psi
    return 2.0 / kPi * parity_series([&](int k) { return std::norm(u[k]); }, dim);
}

double wigner_mix(const CoherentMix& m, double x, double y) {
    // Wigner of |b><b'| at z: (2/pi) exp(conj(z) b - z conj(b)) <b'|2z - b>.
    const cdouble z{x, y};
    cdouble total = 0.0;
    for (int i = 0; i < m.rank(); ++i) {
        const cdouble bi = m.betas[i];
        const cdouble phase = std::exp(std::conj(z) * bi - z * std::conj(bi));
        const cdouble displaced = 2.0 * z - bi;
        for (int j = 0; j < m.rank(); ++j)
            total += m.coeffs(i, j) * phase * coherent_overlap(m.betas[j], displaced);
    }
    total *= 2.0 / kPi;
    return total.real();
}

double wigner_even_cat(double alpha, double x, double y) {
    const double a2 = alpha * alpha;
    const double norm = kPi * (1.0 + std::exp(-2.0 * a2));
    return (2.0 * std::exp(-2.0 * (x * x + y * y)) * std::cos(4.0 * alpha * y) +
            std::exp(-2.0 * ((x - alpha) * (x - alpha) + y * y)) +
            std::exp(-2.0 * ((x + alpha) * (x + alpha) + y * y))) /
           norm;
}

WignerMin find_wigner_min(const std::function<double(double)>& wigner_cut, double alpha) {
    if (alpha <= 0.0) throw std::invalid_argument("find_wigner_min: alpha must be > 0");
    const double hi = kPi / (2.0 * alpha);
    // The target minimum sits near pi/(4 alpha); scan finely enough to separate
    // it from neighbouring fringes, then refine.
    auto negated = [&](double y) { return -wigner_cut(y); };
    auto r = golden_section_max(negated, 1e-12, hi - 1e-12, 1e-10, 97);
    WignerMin out;
    out.y = r.x;
    out.value = -r.value;
    out.negative = out.value < -1e-12;
    return out;
}

WignerMin find_wigner_min(const FockVector& psi, double alpha) {
    return find_wigner_min([&](double y) { return wigner_fock(psi, 0.0, y); }, alpha);
}

WignerMin find_wigner_min(const FockMatrix& rho, double alpha) {
    return find_wigner_min([&](double y) { return wigner_fock(rho, 0.0, y); }, alpha);
}

WignerMin find_wigner_min(const CoherentMix& m, double alpha) {
    return find_wigner_min([&](double y) { return wigner_mix(m, 0.0, y); }, alpha);
}

namespace {

// <y|n> = i^n psi_n(y); builds v with v[n] = conj(<y|n>) = (-i)^n psi_n(y).
Eigen::VectorXcd y_eigenvector(double y, int dim) {
    std::vector<double> psi;
    hermite_psi(y, dim, psi);
    Eigen::VectorXcd v(dim);
    const cdouble mi{0.0, -1.0};
    cdouble ph = 1.0;
    for (int n = 0; n < dim; ++n) {
        v[n] = ph * psi[n];
        ph *= mi;
    }
    return v;
}

}  // namespace

double homodyne_pdf(const FockVector& psi, double y) {
    const Eigen::VectorXcd v = y_eigenvector(y, psi.dim());
    // <y|psi> = sum_n i^n psi_n c_n = conj(v)^T c = v.dot(c)... v[n] = (-i)^n psi_n.
    const cdouble amp = v.dot(psi.amps);  // conj(v) . c  with conj((-i)^n) = i^n
    return std::norm(amp);
}

double homodyne_pdf(const FockMatrix& rho, double y) {
    const Eigen::VectorXcd v = y_eigenvector(y, rho.dim());
    return (v.dot(rho.elems * v)).real();
}

double homodyne_pdf(const CoherentMix& m, double y) {
    return homodyne_derivatives(m, y).p;
}

double homodyne_even_cat(double alpha, double y) {
    const double a2 = alpha * alpha;
    return std::exp(-y * y) * (1.0 + std::cos(2.0 * std::sqrt(2.0) * alpha * y)) /
           (std::sqrt(kPi) * (1.0 + std::exp(-2.0 * a2)));
}

PdfDerivatives homodyne_derivatives(const FockVector& psi, double y) {
    const int dim = psi.dim();
    std::vector<double> ps, dps;
    hermite_psi_dpsi(y, dim, ps, dps);
    cdouble g = 0.0, dg = 0.0, d2g = 0.0;
    cdouble ph = 1.0;  // i^n
    const cdouble ii{0.0, 1.0};
    for (int n = 0; n < dim; ++n) {
        const cdouble c = ph * psi.amps[n];
        g += c * ps[n];
        dg += c * dps[n];
        d2g += c * (y * y - 2.0 * n - 1.0) * ps[n];  // psi_n'' from the Hermite ODE
        ph *= ii;
    }
    PdfDerivatives out;
    out.p = std::norm(g);
    out.dp = 2.0 * (std::conj(g) * dg).real();
    out.d2p = 2.0 * (std::conj(g) * d2g).real() + 2.0 * std::norm(dg);
    return out;
}

PdfDerivatives homodyne_derivatives(const FockMatrix& rho, double y) {
    const int dim = rho.dim();
    std::vector<double> ps, dps;
    hermite_psi_dpsi(y, dim, ps, dps);
    Eigen::VectorXcd v(dim), dv(dim), d2v(dim);
    const cdouble mi{0.0, -1.0};
    cdouble ph = 1.0;
    for (int n = 0; n < dim; ++n) {
        v[n] = ph * ps[n];
        dv[n] = ph * dps[n];
        d2v[n] = ph * (y * y - 2.0 * n - 1.0) * ps[n];
        ph *= mi;
    }
    const Eigen::VectorXcd rv = rho.elems * v;
    const Eigen::VectorXcd rdv = rho.elems * dv;
    PdfDerivatives out;
    out.p = v.dot(rv).real();
    out.dp = 2.0 * dv.dot(rv).real();
    out.d2p = 2.0 * d2v.dot(rv).real() + 2.0 * dv.dot(rdv).real();
    return out;
}

PdfDerivatives homodyne_derivatives(const CoherentMix& m, double y) {
    // <y|b> conj(<y|b'>) = A exp(-y^2 + b y) with b = sqrt(2) i (beta - conj(beta')).
    PdfDerivatives out;
    cdouble p = 0.0, dp = 0.0, d2p = 0.0;
    const cdouble s2i{0.0, std::sqrt(2.0)};
    for (int i = 0; i < m.rank(); ++i)
        for (int j = 0; j < m.rank(); ++j) {
            const cdouble bi = m.betas[i], bj = m.betas[j];
            const cdouble b = s2i * (bi - std::conj(bj));
            const cdouble logA = 0.5 * (bi * bi + std::conj(bj) * std::conj(bj)) -
                                 0.5 * (std::norm(bi) + std::norm(bj));
            const cdouble gij =
                std::exp(logA - y * y + b * y) / std::sqrt(kPi) * m.coeffs(i, j);
            const cdouble slope = b - 2.0 * y;
            p += gij;
            dp += slope * gij;
            d2p += (slope * slope - 2.0) * gij;
        }
    out.p = p.real();
    out.dp = dp.real();
    out.d2p = d2p.real();
    return out;
}

namespace {

template <typename State>
DistillableReport distill_impl(const State& s) {
    const PdfDerivatives d = homodyne_derivatives(s, 0.0);
    if (std::abs(d.d2p) < 1e-12)
        throw DegenerateStateError("distillable_variance: pdf is flat at the origin");
    return DistillableReport{d.p / std::abs(d.d2p), d.p, d.d2p};
}

}  // namespace

DistillableReport distillable_variance(const FockVector& psi) { return distill_impl(psi); }
DistillableReport distillable_variance(const FockMatrix& rho) { return distill_impl(rho); }
DistillableReport distillable_variance(const CoherentMix& m) { return distill_impl(m); }

PhaseGrid wigner_cut(const std::function<double(double)>& wigner_of_y,
                     const std::vector<double>& ys) {
    PhaseGrid g;
    g.axis = PhaseGrid::Axis::YCut;
    g.points = ys;
    g.values.resize(ys.size());
    parallel_for(ys.size(), [&](std::size_t i) { g.values[i] = wigner_of_y(ys[i]); });
    return g;
}

PhaseGrid homodyne_cut(const std::function<double(double)>& pdf_of_y,
                       const std::vector<double>& ys) {
    PhaseGrid g;
    g.axis = PhaseGrid::Axis::YCut;
    g.points = ys;
    g.values.resize(ys.size());
    parallel_for(ys.size(), [&](std::size_t i) { g.values[i] = pdf_of_y(ys[i]); });
    return g;
}

}  // namespace catforge
