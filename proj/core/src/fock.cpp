#include "catforge/fock.hpp"

#include <cmath>
#include <vector>

namespace catforge {

namespace {
constexpr double kTailTolerance = 1e-8;
}

double FockVector::tail_mass() const {
    const int n_max = dim() - 1;
    const int start = static_cast<int>(std::floor(0.9 * n_max)) + 1;
    double mass = 0.0;
    for (int n = start; n <= n_max; ++n) mass += std::norm(amps[n]);
    return mass;
}

double FockVector::mean_photon() const {
    double m = 0.0;
    for (int n = 0; n < dim(); ++n) m += n * std::norm(amps[n]);
    return m;
}

FockVector FockVector::normalized() const {
    const double nrm = norm();
    if (nrm < 1e-150) throw DegenerateStateError("cannot normalize a zero-norm Fock vector");
    return FockVector{amps / nrm};
}

cdouble FockVector::overlap(const FockVector& other) const {
    const int n = std::min(dim(), other.dim());
    return amps.head(n).dot(other.amps.head(n));  // Eigen dot conjugates the left factor
}

double FockMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(elems, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

FockMatrix FockMatrix::projector(const FockVector& psi) {
    return FockMatrix{psi.amps * psi.amps.adjoint()};
}

int fock_dim_for(double b) {
    b = std::abs(b);
    return static_cast<int>(std::ceil(b * b + 8.0 * b + 20.0)) + 1;
}

int squeezed_dim_for(double xi, int headroom) {
    xi = std::abs(xi);
    if (xi >= 1.0) throw std::invalid_argument("squeezed_dim_for: |xi| must be < 1");
    if (xi < 1e-12) return 32 + headroom;
    const double xi2 = xi * xi;
    const double mu = 1.0 / std::sqrt(1.0 - xi2);
    // |amps[2k]|^2 follows t_{k+1} = t_k xi^2 (2k+1)/(2k+2); geometric tail bound.
    double t = 1.0 / mu;
    int k = 0;
    while (t * xi2 / (1.0 - xi2) > 1e-12 && k < 4000) {
        t *= xi2 * (2.0 * k + 1.0) / (2.0 * k + 2.0);
        ++k;
    }
    // Place the converged index below 90% of the basis so the tail witness holds.
    int dim = static_cast<int>(std::ceil(2.0 * k / 0.9)) + 2 + headroom;
    return std::max(dim, 32 + headroom);
}

FockVector vacuum_fock(int dim) {
    FockVector v{Eigen::VectorXcd::Zero(dim)};
    v.amps[0] = 1.0;
    return v;
}

FockVector coherent_fock(cdouble beta, int dim) {
    if (dim < 1) throw std::invalid_argument("coherent_fock: dim must be positive");
    FockVector v{Eigen::VectorXcd::Zero(dim)};
    cdouble amp = std::exp(-0.5 * std::norm(beta));
    v.amps[0] = amp;
    for (int n = 1; n < dim; ++n) {
        amp *= beta / std::sqrt(static_cast<double>(n));
        v.amps[n] = amp;
    }
    if (v.tail_mass() > kTailTolerance)
        throw TruncationError("coherent_fock: truncation too small for |beta| = " +
                              std::to_string(std::abs(beta)));
    return v;
}

FockVector squeezed_vacuum_fock(double r, int dim, double tail_tol) {
    if (std::abs(r) >= 3.0)
        throw std::invalid_argument("squeezed_vacuum_fock: |r| < 3 required at desk scale");
    const SqueezeSpec s(r);
    FockVector v{Eigen::VectorXcd::Zero(dim)};
    // amps[2k] = mu^{-1/2} (lambda/2)^k sqrt((2k)!)/k!
    double amp = 1.0 / std::sqrt(s.mu);
    v.amps[0] = amp;
    for (int k = 0; 2 * (k + 1) < dim; ++k) {
        amp *= s.lambda * std::sqrt((2.0 * k + 1.0) / (2.0 * k + 2.0));
        v.amps[2 * (k + 1)] = amp;
    }
    if (v.tail_mass() > tail_tol)
        throw TruncationError("squeezed_vacuum_fock: truncation too small for r = " +
                              std::to_string(r));
    return v;
}

FockVector cat_fock(double alpha, Parity parity, int dim) {
    if (alpha < 0) throw std::invalid_argument("cat_fock: alpha must be nonnegative");
    if (parity == Parity::Odd && alpha == 0.0)
        throw DegenerateStateError("cat_fock: odd cat at alpha = 0 is the zero vector");
    const FockVector plus = coherent_fock(alpha, dim);
    const FockVector minus = coherent_fock(-alpha, dim);
    const double sign = (parity == Parity::Even) ? 1.0 : -1.0;
    const double n2 = 2.0 * (1.0 + sign * std::exp(-2.0 * alpha * alpha));
    FockVector v{(plus.amps + sign * minus.amps) / std::sqrt(n2)};
    // Opposite-parity entries cancel exactly for real alpha; pin them to zero.
    for (int n = (parity == Parity::Even) ? 1 : 0; n < dim; n += 2) v.amps[n] = 0.0;
    return v;
}

FockVector apply_annihilation(const FockVector& v) {
    const int n = v.dim();
    FockVector w{Eigen::VectorXcd::Zero(n)};
    for (int i = 0; i + 1 < n; ++i) w.amps[i] = std::sqrt(i + 1.0) * v.amps[i + 1];
    return w;
}

FockVector apply_creation(const FockVector& v) {
    const int n = v.dim();
    FockVector w{Eigen::VectorXcd::Zero(n)};
    for (int i = 1; i < n; ++i) w.amps[i] = std::sqrt(static_cast<double>(i)) * v.amps[i - 1];
    return w;
}

PolynomialResult apply_polynomial(const FockVector& v, std::span<const cdouble> coeffs,
                                  double lambda2) {
    if (coeffs.empty()) throw std::invalid_argument("apply_polynomial: empty coefficient list");
    const int dim = v.dim();
    const int degree = 2 * (static_cast<int>(coeffs.size()) - 1);
    double top = 0.0;
    for (int n = std::max(0, dim - degree); n < dim; ++n) top += std::norm(v.amps[n]);
    if (degree > 0 && top > 1e-10 * std::max(v.squared_norm(), 1e-300))
        throw TruncationError("apply_polynomial: state occupies the headroom band");

    Eigen::VectorXcd acc = coeffs[0] * v.amps;
    Eigen::VectorXcd cur = v.amps;
    for (int j = 1; j <= degree; ++j) {
        Eigen::VectorXcd next = Eigen::VectorXcd::Zero(dim);
        for (int i = 0; i < dim; ++i) {
            cdouble t = 0.0;
            if (i + 1 < dim) t += std::sqrt(i + 1.0) * cur[i + 1];
            if (i >= 1) t -= lambda2 * std::sqrt(static_cast<double>(i)) * cur[i - 1];
            next[i] = t;
        }
        cur.swap(next);
        if (j % 2 == 0 && j / 2 < static_cast<int>(coeffs.size())) acc += coeffs[j / 2] * cur;
    }
    FockVector out{std::move(acc)};
    const double k = out.squared_norm();
    return PolynomialResult{std::move(out), k};
}

namespace {

// exp(c * a^2) applied by substepped Taylor series; substeps keep the
// per-step operator norm near unity so the alternating series does not cancel.
Eigen::VectorXcd exp_annihilation_sq(cdouble c, const Eigen::VectorXcd& v) {
    const int dim = static_cast<int>(v.size());
    const int steps = std::max(1, static_cast<int>(std::ceil(std::abs(c) * dim)));
    const cdouble cs = c / static_cast<double>(steps);
    Eigen::VectorXcd acc = v;
    for (int s = 0; s < steps; ++s) {
        Eigen::VectorXcd term = acc;
        Eigen::VectorXcd total = acc;
        for (int k = 1; k < 200; ++k) {
            Eigen::VectorXcd next = Eigen::VectorXcd::Zero(dim);
            for (int i = 0; i + 2 < dim; ++i)
                next[i] = std::sqrt((i + 1.0) * (i + 2.0)) * term[i + 2];
            term = (cs / static_cast<double>(k)) * next;
            total += term;
            if (term.norm() <= 1e-16 * total.norm()) break;
        }
        acc.swap(total);
    }
    return acc;
}

// exp(c * a^dag^2) applied the same way; raising, so the top of the basis
// must be vacant for the result to be accurate.
Eigen::VectorXcd exp_creation_sq(cdouble c, const Eigen::VectorXcd& v) {
    const int dim = static_cast<int>(v.size());
    const int steps = std::max(1, static_cast<int>(std::ceil(std::abs(c) * dim)));
    const cdouble cs = c / static_cast<double>(steps);
    Eigen::VectorXcd acc = v;
    for (int s = 0; s < steps; ++s) {
        Eigen::VectorXcd term = acc;
        Eigen::VectorXcd total = acc;
        for (int k = 1; k < 200; ++k) {
            Eigen::VectorXcd next = Eigen::VectorXcd::Zero(dim);
            for (int i = 2; i < dim; ++i)
                next[i] = std::sqrt(i * (i - 1.0)) * term[i - 2];
            term = (cs / static_cast<double>(k)) * next;
            total += term;
            if (term.norm() <= 1e-16 * total.norm()) break;
        }
        acc.swap(total);
    }
    return acc;
}

}  // namespace

FockVector apply_squeeze_bch(const FockVector& v, double r) {
    const SqueezeSpec s(r);
    Eigen::VectorXcd w = exp_annihilation_sq(-0.5 * s.lambda, v.amps);
    for (int n = 0; n < w.size(); ++n) w[n] *= std::pow(s.mu, -(n + 0.5));
    w = exp_creation_sq(0.5 * s.lambda, w);
    return FockVector{std::move(w)};
}

FockMatrix loss_fock(const FockVector& psi, double tau) {
    if (tau < 0.0 || tau > 1.0) throw std::invalid_argument("loss_fock: tau must be in [0,1]");
    const int dim = psi.dim();
    if (tau == 1.0) return FockMatrix::projector(psi);
    if (tau == 0.0) {
        Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
        rho(0, 0) = psi.squared_norm();
        return FockMatrix{rho};
    }
    std::vector<double> lg(dim + 1);
    for (int i = 0; i <= dim; ++i) lg[i] = std::lgamma(i + 1.0);
    const double log_tau = std::log(tau);
    const double log_eta = std::log1p(-tau);

    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
    for (int j = 0; j < dim; ++j) {
        for (int k = j; k < dim; ++k) {
            cdouble sum = 0.0;
            const int lmax = dim - 1 - k;
            for (int l = 0; l <= lmax; ++l) {
                const double logw = 0.5 * (lg[j + l] - lg[j] - lg[l] + lg[k + l] - lg[k] - lg[l]) +
                                    0.5 * (j + k) * log_tau + l * log_eta;
                sum += psi.amps[j + l] * std::conj(psi.amps[k + l]) * std::exp(logw);
            }
            rho(j, k) = sum;
            if (k != j) rho(k, j) = std::conj(sum);
        }
    }
    return FockMatrix{std::move(rho)};
}

}  // namespace catforge
