#include "catforge/coherent.hpp"

#include <cmath>

namespace catforge {

cdouble coherent_overlap(cdouble beta, cdouble gamma) {
    return std::exp(-0.5 * std::norm(beta) - 0.5 * std::norm(gamma) + std::conj(beta) * gamma);
}

cdouble CoherentMix::trace() const {
    cdouble t = 0.0;
    for (int i = 0; i < rank(); ++i)
        for (int j = 0; j < rank(); ++j)
            t += coeffs(i, j) * coherent_overlap(betas[j], betas[i]);  // Tr|i><j| = <j|i>
    return t;
}

double CoherentMix::gram_min_eigenvalue() const {
    Eigen::MatrixXcd gram(rank(), rank());
    for (int i = 0; i < rank(); ++i)
        for (int j = 0; j < rank(); ++j) gram(i, j) = coherent_overlap(betas[i], betas[j]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

CoherentMix CoherentMix::normalized() const {
    const double t = trace().real();
    if (std::abs(t) < 1e-150) throw DegenerateStateError("CoherentMix: zero trace");
    return CoherentMix{betas, coeffs / t};
}

CoherentMix vacuum_mix() {
    CoherentMix m;
    m.betas = Eigen::VectorXcd::Zero(1);
    m.coeffs = Eigen::MatrixXcd::Ones(1, 1);
    return m;
}

CoherentMix cat_mix(double alpha, Parity parity) {
    if (alpha < 0) throw std::invalid_argument("cat_mix: alpha must be nonnegative");
    if (parity == Parity::Odd && alpha == 0.0)
        throw DegenerateStateError("cat_mix: odd cat at alpha = 0 is the zero vector");
    if (alpha == 0.0) return vacuum_mix();
    const double sign = (parity == Parity::Even) ? 1.0 : -1.0;
    const double n2 = 2.0 * (1.0 + sign * std::exp(-2.0 * alpha * alpha));
    CoherentMix m;
    m.betas = Eigen::VectorXcd(2);
    m.betas << alpha, -alpha;
    m.coeffs = Eigen::MatrixXcd(2, 2);
    m.coeffs << 1.0, sign, sign, 1.0;
    m.coeffs /= n2;
    return m;
}

CoherentMix displace_mix(const CoherentMix& m, cdouble delta) {
    CoherentMix out;
    out.betas = m.betas;
    out.coeffs = m.coeffs;
    const int r = m.rank();
    // D(d)|b> = exp((d conj(b) - conj(d) b)/2)|b + d>; the exponent is purely
    // imaginary so the coefficient update is a phase.
    Eigen::VectorXcd phase(r);
    for (int i = 0; i < r; ++i) {
        const cdouble e = 0.5 * (delta * std::conj(m.betas[i]) - std::conj(delta) * m.betas[i]);
        phase[i] = std::exp(e);
        out.betas[i] = m.betas[i] + delta;
    }
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) out.coeffs(i, j) *= phase[i] * std::conj(phase[j]);
    return out;
}

CoherentMix loss_mix(const CoherentMix& m, double tau) {
    if (tau < 0.0 || tau > 1.0) throw std::invalid_argument("loss_mix: tau must be in [0,1]");
    CoherentMix out;
    const int r = m.rank();
    out.betas = std::sqrt(tau) * m.betas;
    out.coeffs = m.coeffs;
    const double eta = 1.0 - tau;
    // Environment overlap <sqrt(eta) beta_j | sqrt(eta) beta_i> on c_ij.
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            const cdouble f = std::exp(-0.5 * eta * (std::norm(m.betas[i]) + std::norm(m.betas[j])) +
                                       eta * std::conj(m.betas[j]) * m.betas[i]);
            out.coeffs(i, j) *= f;
        }
    return out;
}

double coherent_expectation(const CoherentMix& m, const Eigen::VectorXcd& amplitudes,
                            const Eigen::VectorXcd& weights) {
    // <psi|rho|psi> with |psi> = sum_k weights[k] |amplitudes[k]>.
    const int r = m.rank();
    Eigen::VectorXcd bra(r);  // bra[i] = <psi|beta_i>
    for (int i = 0; i < r; ++i) {
        cdouble s = 0.0;
        for (int k = 0; k < amplitudes.size(); ++k)
            s += std::conj(weights[k]) * coherent_overlap(amplitudes[k], m.betas[i]);
        bra[i] = s;
    }
    cdouble val = 0.0;
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) val += bra[i] * m.coeffs(i, j) * std::conj(bra[j]);
    return val.real();
}

double fidelity_with_cat(const CoherentMix& m, double alpha, Parity parity) {
    const double sign = (parity == Parity::Even) ? 1.0 : -1.0;
    const double n = std::sqrt(2.0 * (1.0 + sign * std::exp(-2.0 * alpha * alpha)));
    Eigen::VectorXcd amplitudes(2), weights(2);
    amplitudes << alpha, -alpha;
    weights << 1.0 / n, sign / n;
    return coherent_expectation(m, amplitudes, weights);
}

FockMatrix to_fock(const CoherentMix& m, int dim) {
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
    std::vector<FockVector> kets;
    kets.reserve(m.rank());
    for (int i = 0; i < m.rank(); ++i) kets.push_back(coherent_fock(m.betas[i], dim));
    for (int i = 0; i < m.rank(); ++i)
        for (int j = 0; j < m.rank(); ++j)
            rho += m.coeffs(i, j) * (kets[i].amps * kets[j].amps.adjoint());
    return FockMatrix{std::move(rho)};
}

CoherentMix mix_sum(const std::vector<std::pair<double, CoherentMix>>& parts) {
    int total = 0;
    for (const auto& [w, part] : parts) total += part.rank();
    CoherentMix out;
    out.betas = Eigen::VectorXcd(total);
    out.coeffs = Eigen::MatrixXcd::Zero(total, total);
    int at = 0;
    for (const auto& [w, part] : parts) {
        const int r = part.rank();
        out.betas.segment(at, r) = part.betas;
        out.coeffs.block(at, at, r, r) = w * part.coeffs;
        at += r;
    }
    return out;
}

}  // namespace catforge
