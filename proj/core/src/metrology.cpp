#include "catforge/metrology.hpp"

#include <cmath>

#include "catforge/phasespace.hpp"

namespace catforge {

namespace {

// Gauss-Kronrod 7-15 node pair on [-1, 1].
constexpr double kKronrodNodes[15] = {
    -0.991455371120813, -0.949107912342759, -0.864864423359769, -0.741531185599394,
    -0.586087235467691, -0.405845151377397, -0.207784955007898, 0.0,
    0.207784955007898,  0.405845151377397,  0.586087235467691,  0.741531185599394,
    0.864864423359769,  0.949107912342759,  0.991455371120813};
constexpr double kKronrodWeights[15] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728,
    0.204432940075298, 0.190350578064785, 0.169004726639267, 0.140653259715525,
    0.104790010322250, 0.063092092629979, 0.022935322010529};
constexpr double kGaussWeights[7] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469,
    0.381830050505119, 0.279705391489277, 0.129484966168870};

struct Panel {
    double integral;
    double error;
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double kron = 0.0, gauss = 0.0;
    for (int i = 0; i < 15; ++i) {
        const double v = f(c + h * kKronrodNodes[i]);
        kron += kKronrodWeights[i] * v;
        if (i % 2 == 1) gauss += kGaussWeights[i / 2] * v;
    }
    return Panel{kron * h, std::abs(kron - gauss) * h};
}

double adaptive_gk(const std::function<double(double)>& f, double a, double b, double rel_tol) {
    struct Seg {
        double a, b;
        Panel p;
    };
    std::vector<Seg> stack;
    // Pre-split so oscillatory integrands are sampled before refinement.
    const int pre = 16;
    double total = 0.0, err = 0.0;
    for (int i = 0; i < pre; ++i) {
        const double x0 = a + (b - a) * i / pre;
        const double x1 = a + (b - a) * (i + 1) / pre;
        const Panel p = gk15(f, x0, x1);
        stack.push_back({x0, x1, p});
        total += p.integral;
        err += p.error;
    }
    int splits = 0;
    while (err > rel_tol * std::max(std::abs(total), 1e-30) && splits < 4000) {
        // Refine the segment with the largest error estimate.
        std::size_t worst = 0;
        for (std::size_t i = 1; i < stack.size(); ++i)
            if (stack[i].p.error > stack[worst].p.error) worst = i;
        const Seg s = stack[worst];
        const double mid = 0.5 * (s.a + s.b);
        const Panel left = gk15(f, s.a, mid);
        const Panel right = gk15(f, mid, s.b);
        total += left.integral + right.integral - s.p.integral;
        err += left.error + right.error - s.p.error;
        stack[worst] = {s.a, mid, left};
        stack.push_back({mid, s.b, right});
        ++splits;
    }
    return total;
}

template <typename State>
double fisher_over(const State& s, double center, double halfwidth) {
    auto integrand = [&](double y) {
        const PdfDerivatives d = homodyne_derivatives(s, y);
        if (d.p < 1e-300) return 0.0;
        return 2.0 * d.dp * d.dp / d.p;
    };
    return adaptive_gk(integrand, center - halfwidth, center + halfwidth, 1e-8);
}

}  // namespace

QuadratureMoments quadrature_moments(const FockVector& psi) {
    cdouble a_mean = 0.0, a2_mean = 0.0;
    double n_mean = 0.0;
    const int dim = psi.dim();
    for (int n = 0; n < dim; ++n) {
        const cdouble c = psi.amps[n];
        n_mean += n * std::norm(c);
        if (n + 1 < dim) a_mean += std::conj(c) * std::sqrt(n + 1.0) * psi.amps[n + 1];
        if (n + 2 < dim)
            a2_mean += std::conj(c) * std::sqrt((n + 1.0) * (n + 2.0)) * psi.amps[n + 2];
    }
    QuadratureMoments q;
    q.mean_x = std::sqrt(2.0) * a_mean.real();
    q.mean_y = std::sqrt(2.0) * a_mean.imag();
    const double x2 = a2_mean.real() + n_mean + 0.5;
    const double y2 = -a2_mean.real() + n_mean + 0.5;
    q.var_x = x2 - q.mean_x * q.mean_x;
    q.var_y = y2 - q.mean_y * q.mean_y;
    return q;
}

QuadratureMoments quadrature_moments(const FockMatrix& rho) {
    cdouble a_mean = 0.0, a2_mean = 0.0;
    double n_mean = 0.0;
    const int dim = rho.dim();
    for (int n = 0; n < dim; ++n) {
        n_mean += n * rho.elems(n, n).real();
        if (n + 1 < dim) a_mean += std::sqrt(n + 1.0) * rho.elems(n + 1, n);
        if (n + 2 < dim) a2_mean += std::sqrt((n + 1.0) * (n + 2.0)) * rho.elems(n + 2, n);
    }
    QuadratureMoments q;
    q.mean_x = std::sqrt(2.0) * a_mean.real();
    q.mean_y = std::sqrt(2.0) * a_mean.imag();
    const double x2 = a2_mean.real() + n_mean + 0.5;
    const double y2 = -a2_mean.real() + n_mean + 0.5;
    q.var_x = x2 - q.mean_x * q.mean_x;
    q.var_y = y2 - q.mean_y * q.mean_y;
    return q;
}

double homodyne_fisher(const FockVector& psi) {
    const QuadratureMoments q = quadrature_moments(psi);
    const double halfwidth = std::min(8.0 * std::sqrt(std::max(q.var_y, 0.25)) + 4.0, 37.0);
    return fisher_over(psi, q.mean_y, halfwidth);
}

double homodyne_fisher(const FockMatrix& rho) {
    const QuadratureMoments q = quadrature_moments(rho);
    const double halfwidth = std::min(8.0 * std::sqrt(std::max(q.var_y, 0.25)) + 4.0, 37.0);
    return fisher_over(rho, q.mean_y, halfwidth);
}

double homodyne_fisher(const CoherentMix& m) {
    double lo = 0.0, hi = 0.0;
    for (int i = 0; i < m.rank(); ++i) {
        const double c = -std::sqrt(2.0) * m.betas[i].imag();
        lo = std::min(lo, c);
        hi = std::max(hi, c);
    }
    return fisher_over(m, 0.5 * (lo + hi), 0.5 * (hi - lo) + 9.0);
}

double qfi_displacement(const FockMatrix& rho) {
    if (rho.hermiticity_defect() > 1e-8)
        throw std::invalid_argument("qfi_displacement: density matrix not Hermitian");
    const int dim = rho.dim();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.elems);
    Eigen::VectorXd evals = es.eigenvalues();
    if (evals.minCoeff() < -1e-8)
        throw std::invalid_argument("qfi_displacement: density matrix not positive");
    for (int i = 0; i < dim; ++i) evals[i] = std::max(evals[i], 0.0);

    Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(dim, dim);
    for (int n = 0; n + 1 < dim; ++n) {
        x(n, n + 1) = std::sqrt((n + 1.0) / 2.0);
        x(n + 1, n) = std::sqrt((n + 1.0) / 2.0);
    }
    const Eigen::MatrixXcd x_eig = es.eigenvectors().adjoint() * x * es.eigenvectors();

    double h = 0.0;
    for (int n = 0; n < dim; ++n)
        for (int m = 0; m < dim; ++m) {
            const double sum = evals[n] + evals[m];
            if (sum <= 1e-12) continue;
            const double diff = evals[n] - evals[m];
            h += diff * diff / sum * std::norm(x_eig(n, m));
        }
    return 4.0 * h;
}

double qfi_displacement(const FockVector& psi) {
    const QuadratureMoments q = quadrature_moments(psi);
    return 8.0 * q.var_x;
}

double min_resolvable(double information) {
    if (!(information > 0.0))
        throw std::invalid_argument("min_resolvable: information must be positive");
    return 1.0 / std::sqrt(information);
}

FisherReport make_fisher_report(double fisher, double qfi) {
    if (fisher > qfi * (1.0 + 1e-6))
        throw std::invalid_argument("make_fisher_report: classical FI exceeds the quantum bound");
    return FisherReport{fisher, qfi, min_resolvable(fisher), min_resolvable(qfi)};
}

}  // namespace catforge
