#include "catforge/dispersive.hpp"

#include <cmath>

namespace catforge {

ImperfectCoupling::ImperfectCoupling(double C, double eta) : cooperativity(C), escape(eta) {
    if (C <= 0.0) throw std::invalid_argument("ImperfectCoupling: cooperativity must be > 0");
    if (eta <= 0.5 || eta > 1.0)
        throw std::invalid_argument("ImperfectCoupling: escape efficiency must be in (1/2, 1]");
}

double ImperfectCoupling::eta_g() const {
    const double t = 1.0 - 2.0 * escape / (1.0 + 4.0 * cooperativity);
    return t * t;
}

double ImperfectCoupling::eta_e() const {
    const double t = 1.0 - 2.0 * escape;
    return t * t;
}

double ImperfectCoupling::eta_prime() const {
    const double d = 1.0 + 4.0 * cooperativity;
    return 1.0 - 16.0 * escape * cooperativity / (d * d);
}

double ImperfectCoupling::big_gamma() const {
    const double leak = std::max(0.0, eta_prime() - eta_g());  // analytically >= 0
    return 2.0 - eta_g() - eta_e() + 2.0 * std::sqrt((1.0 - eta_e()) * leak);
}

QubitChannel QubitChannel::phase_damping(double lambda) {
    if (lambda < 0.0) throw std::invalid_argument("phase_damping: lambda must be >= 0");
    return QubitChannel{Kind::PhaseDamping, lambda};
}

QubitChannel QubitChannel::amplitude_damping(double kappa) {
    if (kappa < 0.0 || kappa > 1.0)
        throw std::invalid_argument("amplitude_damping: kappa must be in [0,1]");
    return QubitChannel{Kind::AmplitudeDamping, kappa};
}

double QubitChannel::suppression() const {
    return kind == Kind::PhaseDamping ? std::exp(-strength) : std::sqrt(1.0 - strength);
}

namespace {

// D(i gamma)|cat-> as a rank-2 mix (phases folded into coefficients).
CoherentMix displaced_odd_cat(double alpha, double gamma) {
    return displace_mix(cat_mix(alpha, Parity::Odd), cdouble{0.0, gamma});
}

}  // namespace

CoherentMix ideal_mixture(double alpha, double gamma) {
    if (alpha < 0.0 || gamma < 0.0)
        throw std::invalid_argument("ideal_mixture: alpha and gamma must be >= 0");
    if (alpha == 0.0) return vacuum_mix();  // p- = 0
    const DispersiveConfig cfg{alpha, gamma, 1.0};
    if (gamma == 0.0) {
        return mix_sum({{cfg.p_plus(), cat_mix(alpha, Parity::Even)},
                        {cfg.p_minus(), cat_mix(alpha, Parity::Odd)}});
    }
    return mix_sum({{cfg.p_plus(), cat_mix(alpha, Parity::Even)},
                    {0.5 * cfg.p_minus(), displaced_odd_cat(alpha, gamma)},
                    {0.5 * cfg.p_minus(), displaced_odd_cat(alpha, -gamma)}});
}

double dispersive_branch_overlap(double alpha, double gamma) {
    const double e4 = std::exp(-4.0 * alpha * alpha);
    const double s = std::sin(2.0 * alpha * gamma);
    return std::exp(-gamma * gamma) * s * s / (1.0 - e4);
}

double dispersive_fidelity(double alpha, double gamma) {
    return dispersive_fidelity(alpha, 1.0, gamma);
}

double dispersive_fidelity(double alpha, double q, double gamma) {
    if (alpha == 0.0) return 1.0;
    const DispersiveConfig cfg{alpha, gamma, q};
    const double h = dispersive_branch_overlap(alpha, gamma);
    return (cfg.p_plus() + q * cfg.p_minus() * h) / (cfg.p_plus() + q * cfg.p_minus());
}

GammaOpt optimize_gamma(double alpha) {
    if (alpha <= 0.0) throw std::invalid_argument("optimize_gamma: alpha must be > 0");
    const double hi = kPi / (2.0 * alpha);
    auto r = golden_section_max([&](double g) { return dispersive_fidelity(alpha, g); }, 0.0, hi);
    return GammaOpt{r.x, r.value};
}

ProbabilisticResult probabilistic_protocol(double alpha, double f_floor) {
    if (alpha <= 0.0) throw std::invalid_argument("probabilistic_protocol: alpha must be > 0");
    const DispersiveConfig cfg{alpha, 0.0, 1.0};
    const double hi = kPi / (2.0 * alpha);

    OptimizeSpec spec;
    spec.bounds = {{0.0, 1.0}, {1e-9, hi}};  // (q, gamma)
    spec.restarts = 6;
    spec.seed = 1;
    spec.objective = [&](const std::vector<double>& x) {
        return cfg.p_plus() + x[0] * cfg.p_minus();
    };
    auto constraint = [&, f_floor](const std::vector<double>& x) {
        return dispersive_fidelity(alpha, x[0], x[1]) - f_floor;
    };
    // q -> 0 recovers the heralded even cat with F = 1, so the constraint set
    // is never empty.
    auto res = maximize_constrained(spec, constraint);

    ProbabilisticResult out;
    out.q = res.x[0];
    out.gamma = res.x[1];
    out.fidelity = dispersive_fidelity(alpha, out.q, out.gamma);
    out.success = cfg.p_plus() + out.q * cfg.p_minus();
    if (out.q > 1.0 - 1e-9) {
        // Deterministic regime: report the exact optimum of F_D(gamma).
        auto g = optimize_gamma(alpha);
        out.q = 1.0;
        out.gamma = g.gamma;
        out.fidelity = g.fidelity;
        out.success = 1.0;
    }
    return out;
}

ConditionalState imperfect_conditional(double alpha, const ImperfectCoupling& c, int sign) {
    if (sign != 1 && sign != -1)
        throw std::invalid_argument("imperfect_conditional: sign must be +1 or -1");
    const double sg = std::sqrt(c.eta_g());
    const double se = std::sqrt(c.eta_e());
    const double gam = c.big_gamma();
    const double a2 = alpha * alpha;
    const double p =
        0.5 * (1.0 + sign * std::exp(-0.5 * (gam + (sg + se) * (sg + se)) * a2));

    CoherentMix m;
    m.betas = Eigen::VectorXcd(2);
    m.betas << sg * alpha, -se * alpha;
    const double cross = sign * std::exp(-0.5 * gam * a2);
    m.coeffs = Eigen::MatrixXcd(2, 2);
    m.coeffs << 1.0, cross, cross, 1.0;
    m.coeffs /= 4.0 * p;
    return ConditionalState{std::move(m), p};
}

namespace {

// Assemble the fed-forward mixture p+ s+ + (p-/2)[D(ig) s- D^dag + D(-ig) s- D^dag]
// and maximize cat fidelity over gamma.
ProtocolState feedforward_protocol(double alpha, const ConditionalState& plus,
                                   const ConditionalState& minus) {
    auto build = [&](double gamma) {
        return mix_sum({{plus.probability, plus.state},
                        {0.5 * minus.probability, displace_mix(minus.state, cdouble{0.0, gamma})},
                        {0.5 * minus.probability, displace_mix(minus.state, cdouble{0.0, -gamma})}});
    };
    const double hi = kPi / (2.0 * alpha);
    auto r = golden_section_max(
        [&](double g) { return fidelity_with_cat(build(g), alpha, Parity::Even); }, 0.0, hi);
    return ProtocolState{r.x, r.value, build(r.x)};
}

}  // namespace

ProtocolState ideal_protocol(double alpha) {
    auto g = optimize_gamma(alpha);
    return ProtocolState{g.gamma, g.fidelity, ideal_mixture(alpha, g.gamma)};
}

ProtocolState imperfect_protocol(double alpha, const ImperfectCoupling& c) {
    if (alpha <= 0.0) throw std::invalid_argument("imperfect_protocol: alpha must be > 0");
    return feedforward_protocol(alpha, imperfect_conditional(alpha, c, +1),
                                imperfect_conditional(alpha, c, -1));
}

ProtocolState qubit_damped_protocol(double alpha, const QubitChannel& ch) {
    if (alpha <= 0.0) throw std::invalid_argument("qubit_damped_protocol: alpha must be > 0");
    const double s = ch.suppression();
    const double e2 = std::exp(-2.0 * alpha * alpha);
    auto conditional = [&](int sign) {
        const double p = 0.5 * (1.0 + sign * s * e2);
        CoherentMix m;
        m.betas = Eigen::VectorXcd(2);
        m.betas << alpha, -alpha;
        m.coeffs = Eigen::MatrixXcd(2, 2);
        m.coeffs << 1.0, sign * s, sign * s, 1.0;
        m.coeffs /= 4.0 * p;
        return ConditionalState{std::move(m), p};
    };
    return feedforward_protocol(alpha, conditional(+1), conditional(-1));
}

double asymptotic_reference(AsymptoticKind kind, const AsymptoticArgs& a) {
    const double a2 = a.alpha * a.alpha;
    const double a4 = a2 * a2;
    const double pi2 = kPi * kPi;
    switch (kind) {
        case AsymptoticKind::FDIdeal:
            return 1.0 - pi2 / (32.0 * a2);
        case AsymptoticKind::FDLoss: {
            const double amp = std::exp(-a2 * std::pow(1.0 - std::sqrt(a.tau), 2.0));
            const double coh = 0.5 * (1.0 + std::exp(-2.0 * a2 * (1.0 - a.tau)));
            return amp * coh * (1.0 - pi2 / (32.0 * a2));
        }
        case AsymptoticKind::FPlusLoss: {
            const double amp = std::exp(-a2 * std::pow(1.0 - std::sqrt(a.tau), 2.0));
            return amp * 0.5 * (1.0 + std::exp(-2.0 * a2 * (1.0 - a.tau)));
        }
        case AsymptoticKind::FImp: {
            const double ex = std::exp(-2.0 * a2 * ((2.0 - a.eta) / (4.0 * a.coop) + 1.0 - a.eta));
            return 0.5 * (1.0 + ex) * (1.0 - pi2 / (32.0 * a2)) -
                   pi2 * (1.0 - a.eta) / (64.0 * a.coop) * ex * (1.0 - pi2 / (16.0 * a2));
        }
        case AsymptoticKind::FPd:
            return 0.5 * (1.0 + std::exp(-a.lambda)) * (1.0 - pi2 / (32.0 * a2));
        case AsymptoticKind::FAd:
            return 0.5 * (1.0 + std::sqrt(1.0 - a.kappa)) * (1.0 - pi2 / (32.0 * a2));
        case AsymptoticKind::WDMin:
            return kPi / (8.0 * a2);
        case AsymptoticKind::WDMinLoss: {
            const double e = std::exp(-2.0 * a2 * (1.0 - a.tau));
            return (1.0 - e) / kPi + kPi / (8.0 * a2) * (-2.0 + (2.0 + a.tau) * e);
        }
        case AsymptoticKind::WPlusLoss:
            return (1.0 - std::exp(-2.0 * a2 * (1.0 - a.tau))) / kPi;
        case AsymptoticKind::WImpMin: {
            const double C = a.coop, eta = a.eta;
            const double f1 = 4.0 - std::exp(-2.0 * a2 * (1.0 - eta + eta / (4.0 * C))) -
                              3.0 * std::exp(-a2 / (2.0 * C)) *
                                  (1.0 - pi2 * (1.0 - eta) / (2.0 * C));
            const double f2 = -2.0 + 3.0 * std::exp(-a2 / (2.0 * C)) *
                                         (1.0 - 3.0 * pi2 * (1.0 - eta) / (4.0 * C));
            return f1 / (2.0 * kPi) + kPi * f2 / (8.0 * a2);
        }
        case AsymptoticKind::WPdMin: {
            const double e = std::exp(-a.lambda);
            return 2.0 / kPi * (1.0 - e) + kPi / (8.0 * a2) * (3.0 * e - 2.0);
        }
        case AsymptoticKind::WAdMin: {
            const double e = std::sqrt(1.0 - a.kappa);
            return 2.0 / kPi * (1.0 - e) + kPi / (8.0 * a2) * (3.0 * e - 2.0);
        }
        case AsymptoticKind::VD:
            return 1.0 / (4.0 * a2) - 1.0 / (8.0 * a4);
        case AsymptoticKind::VImp: {
            const double ex = std::exp(2.0 * a2 * (1.0 - a.eta + (2.0 - a.eta) / (4.0 * a.coop)));
            const double half = 0.5 * (1.0 + ex);
            const double corr = pi2 * (1.0 - a.eta) / (16.0 * a.coop);
            return (half - corr) / (4.0 * a2) -
                   (half * half -
                    (1.0 + pi2 / 4.0 + ex) * pi2 * (1.0 - a.eta) / (32.0 * a.coop)) /
                       (8.0 * a4);
        }
        case AsymptoticKind::VPd: {
            const double half = 0.5 * (1.0 + std::exp(a.lambda));
            return half / (4.0 * a2) - half * half / (8.0 * a4);
        }
        case AsymptoticKind::VAd: {
            const double s = std::sqrt(1.0 - a.kappa);
            const double f = 0.5 * (1.0 + s) / s;
            return f / (4.0 * a2) - f * f / (8.0 * a4);
        }
    }
    throw std::invalid_argument("asymptotic_reference: unknown kind");
}

}  // namespace catforge
