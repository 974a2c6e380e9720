#pragma once

#include <array>

#include "catforge/fock.hpp"
#include "catforge/gp.hpp"

namespace catforge {

/// Three-mode pure state on modes (a, b, c), stored as a flat tensor with
/// index i*Nb*Nc + j*Nc + k.
struct ThreeModeState {
    Eigen::VectorXcd amps;
    std::array<int, 3> dims;

    ThreeModeState(int na, int nb, int nc)
        : amps(Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(na) * nb * nc)),
          dims{na, nb, nc} {}

    std::size_t index(int i, int j, int k) const {
        return (static_cast<std::size_t>(i) * dims[1] + j) * dims[2] + k;
    }
    double squared_norm() const { return amps.squaredNorm(); }

    /// Occupation probability of level m in the given mode (trace over the rest).
    double mode_occupation(int mode, int m) const;
    /// Probability mass above 90% of a mode's truncation.
    double mode_tail_mass(int mode) const;
};

/// exp[theta (a_m1^dag a_m2 - a_m1 a_m2^dag)] applied by substepped Taylor
/// series with norm-based stopping.
void apply_beam_splitter(ThreeModeState& s, int mode1, int mode2, double theta);

/// exp[delta a_m^dag - conj(delta) a_m].
void apply_displacement(ThreeModeState& s, int mode, cdouble delta);

struct HeraldedState {
    FockVector state;        // normalized residual mode-a state
    double probability;      // projection probability
};

/// Direct simulation of the heralded circuit: squeezed inputs
/// |r1>|r2>|r3>, splitter of transmissivity T on (a,b), balanced swapped
/// splitter on (c,b), displacements -i beta on b and +i beta on c, then
/// projection of modes b and c onto |n>|n>. The independent oracle for the
/// analytic pipeline.
HeraldedState brute_force_three_mode(const GpParams& p, int per_mode_dim);

}  // namespace catforge
