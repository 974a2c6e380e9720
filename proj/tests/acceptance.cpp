// Acceptance suite: end-to-end checks of the toolkit's headline numbers, one
// verdict line per criterion. Exits nonzero if any criterion fails.

#include <chrono>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "catforge/catforge.hpp"
#include "support/helpers.hpp"

using namespace catforge;
using namespace testsupport;
using clk = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void verdict(const std::string& name, bool ok, const std::string& detail,
             clk::time_point t0) {
    const double dt = std::chrono::duration<double>(clk::now() - t0).count();
    std::printf("[%s] %s: %s  (%.1f s)\n", ok ? "PASS" : "FAIL", name.c_str(), detail.c_str(),
                dt);
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof(buf), f, ap);
    va_end(ap);
    return buf;
}

bool within(double value, double reference, double rel) {
    return std::abs(value - reference) <= rel * std::abs(reference);
}

void criterion_1_oracle_equivalence() {
    const auto t0 = clk::now();
    std::mt19937_64 rng(20240901);
    double worst_inf = 0.0, worst_dp = 0.0;
    for (int n = 1; n <= 2; ++n) {
        for (int trial = 0; trial < 25; ++trial) {
            const GpParams p = random_gp_params(rng, n);
            const auto analytic = gp_output_state(p);
            const double prob = gp_success_probability(p);
            const auto oracle = brute_force_three_mode(p, 32);
            worst_inf = std::max(worst_inf, 1.0 - std::norm(analytic.state.overlap(oracle.state)));
            worst_dp = std::max(worst_dp, std::abs(prob - oracle.probability));
        }
    }
    verdict("1. analytic pipeline vs three-mode oracle (50 random points)",
            worst_inf < 1e-8 && worst_dp < 1e-6,
            fmt("worst infidelity %.2e (<1e-8), worst dP %.2e (<1e-6)", worst_inf, worst_dp), t0);
}

void criterion_2_asymptotic_fidelity() {
    const auto t0 = clk::now();
    bool ok = true;
    std::string detail;
    for (double a : {4.0, 5.0, 6.0}) {
        const double f = optimize_gamma(a).fidelity;
        const double ref = 1.0 - kPi * kPi / (32.0 * a * a);
        const double err = std::abs(f - ref);
        const double tol = 5.0 / std::pow(a, 4.0);
        ok = ok && err < tol;
        detail += fmt("a=%g |dF|=%.1e(<%.1e) ", a, err, tol);
    }
    verdict("2. deterministic fidelity approaches 1 - pi^2/(32 a^2)", ok, detail, t0);
}

void criterion_3_feedforward_amplitude() {
    const auto t0 = clk::now();
    const double g = optimize_gamma(6.0).gamma;
    const double ref = kPi / 24.0;
    verdict("3. feedforward amplitude at a=6", std::abs(g - ref) < 0.02 * ref,
            fmt("gamma=%.6f vs pi/24=%.6f (%.2f%%)", g, ref, 100.0 * std::abs(g / ref - 1.0)),
            t0);
}

void criterion_4_success_plateaus() {
    const auto t0 = clk::now();
    const GpOptimizerConfig cfg;
    const auto gp = gp_optimize(4.0, 1, cfg);
    const auto ps = gp_optimize(4.0, 1, cfg, GpFamily::Subtraction);
    const double p_ps = ps_success_rescale(ps.probability, 1);
    const auto pa = gp_optimize(4.0, 1, cfg, GpFamily::Addition);
    const bool ok = gp.probability >= 0.03 && gp.probability <= 0.08 && p_ps >= 0.08 &&
                    p_ps <= 0.14 && pa.probability >= 0.05 && pa.probability <= 0.09;
    verdict("4. success-probability plateaus at a=4", ok,
            fmt("P_GP=%.4f in [0.03,0.08], P_PS=%.4f in [0.08,0.14], P_PA=%.4f in [0.05,0.09]",
                gp.probability, p_ps, pa.probability),
            t0);
}

void criterion_5_crossover() {
    const auto t0 = clk::now();
    const GpOptimizerConfig cfg;
    const auto gp15 = gp_optimize(1.5, 1, cfg);
    const auto prob = probabilistic_protocol(1.5, gp15.fidelity);
    const bool low_ok =
        std::abs(prob.fidelity - gp15.fidelity) < 1e-3 && prob.success > gp15.probability;
    const auto gp3 = gp_optimize(3.0, 1, cfg);
    const double fd3 = optimize_gamma(3.0).fidelity;
    const bool high_ok = fd3 > gp3.fidelity;
    verdict("5. probabilistic crossover", low_ok && high_ok,
            fmt("a=1.5: |F_D-F_GP|=%.1e, P_D=%.3f>P_GP=%.3f ; a=3: F_D=%.4f>F_GP=%.4f",
                std::abs(prob.fidelity - gp15.fidelity), prob.success, gp15.probability, fd3,
                gp3.fidelity),
            t0);
}

void criterion_6_wigner_gap() {
    const auto t0 = clk::now();
    bool ok = true;
    std::string detail;
    for (double a : {4.0, 6.0}) {
        const auto st = ideal_protocol(a);
        const auto target = find_wigner_min(cat_mix(a, Parity::Even), a);
        const double gap = wigner_mix(st.state, 0.0, target.y) - target.value;
        const double ref = kPi / (8.0 * a * a);
        const bool leg = within(gap, ref, 0.15);
        ok = ok && leg;
        detail += fmt("a=%g gap=%.5f vs pi/8a^2=%.5f (%+.1f%%) ", a, gap, ref,
                      100.0 * (gap / ref - 1.0));
    }
    // The pi/(8 a^2) reference is the first term of the exact gap
    // (e^{-t} - (1 + e^{-4t})/2)/pi, t = pi^2/(8 a^2); the next order carries
    // a -3.5 t relative correction (-27% at a=4), so the 15% band cannot hold
    // there. The implementation is pinned against the full form instead.
    double worst_full = 0.0;
    for (double a : {4.0, 6.0}) {
        const auto st = ideal_protocol(a);
        const auto target = find_wigner_min(cat_mix(a, Parity::Even), a);
        const double gap = wigner_mix(st.state, 0.0, target.y) - target.value;
        const double t = kPi * kPi / (8.0 * a * a);
        const double full = (std::exp(-t) - 0.5 * (1.0 + std::exp(-4.0 * t))) / kPi;
        worst_full = std::max(worst_full, std::abs(gap / full - 1.0));
    }
    detail += fmt("; full closed form matched to %.2f%%", 100.0 * worst_full);
    verdict("6. Wigner interference gap", ok, detail, t0);
}

void criterion_7_distillable() {
    const auto t0 = clk::now();
    bool ok = true;
    std::string detail;
    double worst = 0.0;
    for (double a : {0.5, 1.0, 2.0, 4.0}) {
        const auto rep = distillable_variance(cat_fock(a, Parity::Even, fock_dim_for(a)));
        worst = std::max(worst, std::abs(rep.variance - 1.0 / (2.0 * (1.0 + 2.0 * a * a))));
    }
    ok = worst < 1e-10;
    detail = fmt("cat law worst |dV|=%.1e (<1e-10)", worst);
    for (double a : {4.0, 6.0}) {
        const auto rep = distillable_variance(ideal_protocol(a).state);
        const double ref = 1.0 / (4.0 * a * a) - 1.0 / (8.0 * std::pow(a, 4.0));
        const bool leg = within(rep.variance, ref, 0.05);
        ok = ok && leg;
        detail += fmt(" ; V_D(a=%g)=%.3e vs %.3e", a, rep.variance, ref);
    }
    verdict("7. distillable squeezing", ok, detail, t0);
}

void criterion_8_loss_asymptotes() {
    const auto t0 = clk::now();
    bool ok = true;
    std::string detail;
    const double a = 4.0;
    const auto st = ideal_protocol(a);
    for (double tau : {0.999, 0.99}) {
        const double fd = fidelity_with_cat(loss_mix(st.state, tau), a, Parity::Even);
        const double fd_ref = asymptotic_reference(AsymptoticKind::FDLoss, {.alpha = a, .tau = tau});
        const double fp =
            fidelity_with_cat(loss_mix(cat_mix(a, Parity::Even), tau), a, Parity::Even);
        const double fp_ref =
            asymptotic_reference(AsymptoticKind::FPlusLoss, {.alpha = a, .tau = tau});
        ok = ok && within(fd, fd_ref, 0.03) && within(fp, fp_ref, 0.03);
        detail += fmt("tau=%g: F_D %+.2f%%, F_+ %+.2f%% ", tau, 100.0 * (fd / fd_ref - 1.0),
                      100.0 * (fp / fp_ref - 1.0));
    }
    verdict("8. loss asymptotes at a=4 (3%)", ok, detail, t0);
}

void criterion_9_qubit_noise() {
    const auto t0 = clk::now();
    const double a = 5.0;
    const auto pd = qubit_damped_protocol(a, QubitChannel::phase_damping(0.2));
    const double pd_ref = asymptotic_reference(AsymptoticKind::FPd, {.alpha = a, .lambda = 0.2});
    const auto ad = qubit_damped_protocol(a, QubitChannel::amplitude_damping(0.3));
    const double ad_ref = asymptotic_reference(AsymptoticKind::FAd, {.alpha = a, .kappa = 0.3});
    const bool ok = within(pd.fidelity, pd_ref, 0.02) && within(ad.fidelity, ad_ref, 0.02);
    verdict("9. qubit-noise fidelity rescaling at a=5 (2%)", ok,
            fmt("pd %+.2f%%, ad %+.2f%%", 100.0 * (pd.fidelity / pd_ref - 1.0),
                100.0 * (ad.fidelity / ad_ref - 1.0)),
            t0);
}

void criterion_10_metrology() {
    const auto t0 = clk::now();
    const auto coh = coherent_fock(0.9, fock_dim_for(0.9));
    const double f_coh = homodyne_fisher(coh);
    const double h_coh = qfi_displacement(FockMatrix::projector(coh));
    bool ok = std::abs(f_coh - 4.0) < 1e-6 && std::abs(h_coh - 4.0) < 1e-6;
    std::string detail = fmt("coherent F=%.8f H=%.8f", f_coh, h_coh);

    const auto cat = cat_fock(3.0, Parity::Even, fock_dim_for(3.0));
    const double f_cat = homodyne_fisher(cat);
    const double h_cat = qfi_displacement(cat);
    ok = ok && std::abs(f_cat - h_cat) < 0.01 * h_cat;
    detail += fmt(" ; cat a=3 F/H=%.5f", f_cat / h_cat);

    // Cramer-Rao ordering across the corpus.
    double worst_ratio = 0.0;
    for (double a : {1.0, 2.0, 4.0}) {
        const int dim = fock_dim_for(a + 0.5);
        std::vector<FockMatrix> states;
        states.push_back(to_fock(ideal_protocol(a).state, dim));
        states.push_back(
            to_fock(imperfect_protocol(a, ImperfectCoupling(50.0, 0.95)).state, dim));
        states.push_back(
            to_fock(qubit_damped_protocol(a, QubitChannel::phase_damping(0.2)).state, dim));
        for (const auto& rho : states)
            worst_ratio = std::max(worst_ratio, homodyne_fisher(rho) / qfi_displacement(rho));
    }
    const GpOptimizerConfig cfg;
    for (double a : {1.0, 2.0, 3.0}) {
        const auto best = gp_optimize(a, 1, cfg);
        const auto psi = gp_output_state(best.params).state;
        worst_ratio = std::max(worst_ratio, homodyne_fisher(psi) / qfi_displacement(psi));
    }
    ok = ok && worst_ratio <= 1.0 + 1e-6;
    detail += fmt(" ; max F/H over corpus %.8f", worst_ratio);
    verdict("10. metrology calibration and Cramer-Rao ordering", ok, detail, t0);
}

void criterion_11_imperfect_coupling() {
    const auto t0 = clk::now();
    const double a = 4.0;
    const auto st = imperfect_protocol(a, ImperfectCoupling(100.0, 0.99));
    const double ref =
        asymptotic_reference(AsymptoticKind::FImp, {.alpha = a, .coop = 100.0, .eta = 0.99});
    bool ok = within(st.fidelity, ref, 0.05);
    std::string detail = fmt("F=%.5f vs expansion %.5f (%+.2f%%)", st.fidelity, ref,
                             100.0 * (st.fidelity / ref - 1.0));

    const std::vector<double> coops{30.0, 100.0, 300.0};
    const std::vector<double> etas{0.95, 0.99, 1.0};
    bool monotone = true;
    for (double aa : {2.0, 4.0}) {
        std::vector<std::vector<double>> f(3, std::vector<double>(3));
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                f[i][j] = imperfect_protocol(aa, ImperfectCoupling(coops[i], etas[j])).fidelity;
        for (int i = 0; i + 1 < 3; ++i)
            for (int j = 0; j < 3; ++j) monotone = monotone && f[i][j] <= f[i + 1][j] + 1e-9;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j + 1 < 3; ++j) monotone = monotone && f[i][j] <= f[i][j + 1] + 1e-9;
    }
    ok = ok && monotone;
    detail += monotone ? " ; 3x3 grid monotone in C and eta" : " ; monotonicity violated";
    verdict("11. imperfect-coupling fidelity", ok, detail, t0);
}

void criterion_12_property_suites() {
    const auto t0 = clk::now();
    bool ok = true;
    std::string detail;

    // Channel sanity on random states.
    std::mt19937_64 rng(1234);
    double worst_trace = 0.0, worst_eig = 0.0;
    for (double tau : {0.0, 0.3, 0.7, 1.0}) {
        for (int trial = 0; trial < 250; ++trial) {
            const auto v = random_fock_vector(rng, 18);
            const auto rho = loss_fock(v, tau);
            worst_trace = std::max(worst_trace, std::abs(rho.trace_real() - 1.0));
            worst_eig = std::max(worst_eig, -rho.min_eigenvalue());
        }
    }
    ok = ok && worst_trace < 1e-8 && worst_eig < 1e-8;
    detail += fmt("loss: |dTr|=%.1e eig>-%.1e ; ", worst_trace, worst_eig);

    // Parity pinning.
    bool parity = true;
    const auto sq = squeezed_vacuum_fock(0.8, 80);
    const auto cat = cat_fock(2.5, Parity::Even, fock_dim_for(2.5));
    for (int i = 1; i < sq.dim(); i += 2) parity = parity && sq.amps[i] == 0.0;
    for (int i = 1; i < cat.dim(); i += 2) parity = parity && cat.amps[i] == 0.0;
    const auto gp_state = gp_output_state(GpParams{0.5, -0.2, 0.3, 0.7, 0.3, 2}).state;
    for (int i = 1; i < gp_state.dim(); i += 2) parity = parity && gp_state.amps[i] == 0.0;
    ok = ok && parity;
    detail += fmt("parity %s ; ", parity ? "exact" : "broken");

    // BCH consistency.
    double worst_bch = 0.0;
    for (double r : {0.2, 0.5, 1.0})
        worst_bch = std::max(worst_bch, (squeezed_vacuum_fock(r, 120).amps -
                                         apply_squeeze_bch(vacuum_fock(120), r).amps)
                                            .norm());
    ok = ok && worst_bch < 1e-9;
    detail += fmt("BCH %.1e ; ", worst_bch);

    // Protocol mixes: trace one, Hermitian, positive in the number basis, and
    // the two representations agree pointwise.
    double worst_dual = 0.0, worst_state = 0.0;
    for (double a : {1.0, 2.5, 4.0}) {
        const auto st = ideal_protocol(a);
        const auto imp = imperfect_protocol(a, ImperfectCoupling(40.0, 0.96));
        for (const auto& m : {st.state, imp.state}) {
            worst_state = std::max(worst_state, std::abs(m.trace().real() - 1.0));
            worst_state = std::max(worst_state, m.hermiticity_defect());
            const auto rho = to_fock(m, fock_dim_for(a + 0.5));
            worst_state = std::max(worst_state, -rho.min_eigenvalue());
            for (double y : {0.1, 0.8 / a}) {
                worst_dual = std::max(
                    worst_dual, std::abs(wigner_fock(rho, 0.0, y) - wigner_mix(m, 0.0, y)));
                worst_dual = std::max(worst_dual,
                                      std::abs(homodyne_pdf(rho, y) - homodyne_pdf(m, y)));
            }
        }
    }
    ok = ok && worst_state < 1e-8 && worst_dual < 1e-7;
    detail += fmt("mix invariants %.1e ; dual-rep %.1e", worst_state, worst_dual);

    verdict("12. module property suites", ok, detail, t0);
}

}  // namespace

int main() {
    const auto t0 = clk::now();
    criterion_1_oracle_equivalence();
    criterion_2_asymptotic_fidelity();
    criterion_3_feedforward_amplitude();
    criterion_4_success_plateaus();
    criterion_5_crossover();
    criterion_6_wigner_gap();
    criterion_7_distillable();
    criterion_8_loss_asymptotes();
    criterion_9_qubit_noise();
    criterion_10_metrology();
    criterion_11_imperfect_coupling();
    criterion_12_property_suites();
    const double dt = std::chrono::duration<double>(clk::now() - t0).count();
    std::printf("%d of 12 criteria passed (%.1f s total)\n", 12 - g_failures, dt);
    return g_failures == 0 ? 0 : 1;
}
