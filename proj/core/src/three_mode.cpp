#include "catforge/three_mode.hpp"

#include <cmath>

namespace catforge {

double ThreeModeState::mode_occupation(int mode, int m) const {
    double p = 0.0;
    for (int i = 0; i < dims[0]; ++i)
        for (int j = 0; j < dims[1]; ++j)
            for (int k = 0; k < dims[2]; ++k) {
                const int level = (mode == 0) ? i : (mode == 1) ? j : k;
                if (level == m) p += std::norm(amps[index(i, j, k)]);
            }
    return p;
}

double ThreeModeState::mode_tail_mass(int mode) const {
    const int n_max = dims[mode] - 1;
    const int start = static_cast<int>(std::floor(0.9 * n_max)) + 1;
    double mass = 0.0;
    for (int m = start; m <= n_max; ++m) mass += mode_occupation(mode, m);
    return mass;
}

namespace {

// w += scale * G v for the anti-Hermitian splitter generator
// G = a_m1^dag a_m2 - a_m1 a_m2^dag.
void splitter_generator(const ThreeModeState& ref, const Eigen::VectorXcd& v,
                        Eigen::VectorXcd& w, int m1, int m2) {
    w.setZero();
    const auto& d = ref.dims;
    int idx[3];
    for (idx[0] = 0; idx[0] < d[0]; ++idx[0])
        for (idx[1] = 0; idx[1] < d[1]; ++idx[1])
            for (idx[2] = 0; idx[2] < d[2]; ++idx[2]) {
                const std::size_t self = ref.index(idx[0], idx[1], idx[2]);
                const cdouble amp = v[self];
                if (amp == cdouble{0.0, 0.0}) continue;
                // a_m1^dag a_m2 |...>: lowers m2, raises m1.
                if (idx[m2] >= 1 && idx[m1] + 1 < d[m1]) {
                    int t[3] = {idx[0], idx[1], idx[2]};
                    const double c = std::sqrt(static_cast<double>(idx[m2])) *
                                     std::sqrt(idx[m1] + 1.0);
                    t[m2] -= 1;
                    t[m1] += 1;
                    w[ref.index(t[0], t[1], t[2])] += c * amp;
                }
                // -a_m1 a_m2^dag |...>: lowers m1, raises m2.
                if (idx[m1] >= 1 && idx[m2] + 1 < d[m2]) {
                    int t[3] = {idx[0], idx[1], idx[2]};
                    const double c = std::sqrt(static_cast<double>(idx[m1])) *
                                     std::sqrt(idx[m2] + 1.0);
                    t[m1] -= 1;
                    t[m2] += 1;
                    w[ref.index(t[0], t[1], t[2])] -= c * amp;
                }
            }
}

// w += G v for the displacement generator G = delta a_m^dag - conj(delta) a_m.
void displacement_generator(const ThreeModeState& ref, const Eigen::VectorXcd& v,
                            Eigen::VectorXcd& w, int mode, cdouble delta) {
    w.setZero();
    const auto& d = ref.dims;
    int idx[3];
    for (idx[0] = 0; idx[0] < d[0]; ++idx[0])
        for (idx[1] = 0; idx[1] < d[1]; ++idx[1])
            for (idx[2] = 0; idx[2] < d[2]; ++idx[2]) {
                const std::size_t self = ref.index(idx[0], idx[1], idx[2]);
                const cdouble amp = v[self];
                if (amp == cdouble{0.0, 0.0}) continue;
                if (idx[mode] + 1 < d[mode]) {
                    int t[3] = {idx[0], idx[1], idx[2]};
                    t[mode] += 1;
                    w[ref.index(t[0], t[1], t[2])] +=
                        delta * std::sqrt(static_cast<double>(idx[mode] + 1)) * amp;
                }
                if (idx[mode] >= 1) {
                    int t[3] = {idx[0], idx[1], idx[2]};
                    t[mode] -= 1;
                    w[ref.index(t[0], t[1], t[2])] -=
                        std::conj(delta) * std::sqrt(static_cast<double>(idx[mode])) * amp;
                }
            }
}

using Generator = std::function<void(const Eigen::VectorXcd&, Eigen::VectorXcd&)>;

// exp(G) v by substepping: exp(G) = exp(G/m)^m with m chosen from an operator
// norm bound so each Taylor series converges without cancellation.
void apply_exponential(ThreeModeState& s, const Generator& gen, double norm_bound) {
    const int steps = std::max(1, static_cast<int>(std::ceil(norm_bound)));
    const double inv = 1.0 / steps;
    Eigen::VectorXcd term(s.amps.size());
    Eigen::VectorXcd scratch(s.amps.size());
    for (int step = 0; step < steps; ++step) {
        Eigen::VectorXcd total = s.amps;
        term = s.amps;
        for (int k = 1; k < 120; ++k) {
            gen(term, scratch);
            term = scratch * (inv / k);
            total += term;
            if (term.norm() <= 1e-14 * total.norm()) break;
        }
        s.amps.swap(total);
    }
}

}  // namespace

void apply_beam_splitter(ThreeModeState& s, int mode1, int mode2, double theta) {
    if (theta == 0.0) return;
    const double bound =
        std::abs(theta) * 2.0 * std::sqrt(static_cast<double>(s.dims[mode1]) * s.dims[mode2]);
    apply_exponential(
        s,
        [&, theta](const Eigen::VectorXcd& v, Eigen::VectorXcd& w) {
            splitter_generator(s, v, w, mode1, mode2);
            w *= theta;
        },
        bound);
}

void apply_displacement(ThreeModeState& s, int mode, cdouble delta) {
    if (delta == cdouble{0.0, 0.0}) return;
    const double bound = 2.0 * std::abs(delta) * std::sqrt(static_cast<double>(s.dims[mode]));
    apply_exponential(
        s,
        [&, mode, delta](const Eigen::VectorXcd& v, Eigen::VectorXcd& w) {
            displacement_generator(s, v, w, mode, delta);
        },
        bound);
}

HeraldedState brute_force_three_mode(const GpParams& p, int per_mode_dim) {
    if (per_mode_dim < 18)
        throw std::invalid_argument("brute_force_three_mode: per-mode truncation must be >= 18");
    const int n = p.n;
    if (n < 1 || n > 3) throw std::invalid_argument("brute_force_three_mode: n must be 1, 2 or 3");

    const int N = per_mode_dim;
    const FockVector sa = squeezed_vacuum_fock(p.r1, N, 1e-6);
    const FockVector sb = squeezed_vacuum_fock(p.r2, N, 1e-6);
    const FockVector sc = squeezed_vacuum_fock(p.r3, N, 1e-6);

    ThreeModeState s(N, N, N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                s.amps[s.index(i, j, k)] = sa.amps[i] * sb.amps[j] * sc.amps[k];

    apply_beam_splitter(s, 0, 1, std::acos(std::sqrt(p.T)));  // U_ab(T)
    apply_beam_splitter(s, 2, 1, kPi / 4.0);                  // swapped balanced U_cb(1/2)
    apply_displacement(s, 1, cdouble{0.0, -p.beta});          // D_b(-i beta)
    apply_displacement(s, 2, cdouble{0.0, p.beta});           // D_c(+i beta)

    for (int mode = 0; mode < 3; ++mode)
        if (s.mode_tail_mass(mode) > 1e-6)
            throw TruncationError("brute_force_three_mode: per-mode tail mass too large");

    FockVector signal{Eigen::VectorXcd::Zero(N)};
    for (int i = 0; i < N; ++i) signal.amps[i] = s.amps[s.index(i, n, n)];
    const double prob = signal.squared_norm();
    if (prob < 1e-300) return HeraldedState{vacuum_fock(N), 0.0};
    return HeraldedState{signal.normalized(), prob};
}

}  // namespace catforge
