#pragma once

#include "adjspec/adjacency.hpp"
#include "adjspec/flow.hpp"
#include "adjspec/param_matrix.hpp"
#include "adjspec/real.hpp"

#include <string>
#include <vector>

namespace adjspec {

// Two excited hydrogen atoms, one basis state per atom: orbital quantum number
// l (0 or 1), total atomic angular momentum F, and its projection Fz. Only the
// J=1/2 fine-structure levels enter, and the pair is restricted to Fz,A+Fz,B=0.
struct TwoAtomState {
    int l_a, f_a, fz_a;
    int l_b, f_b, fz_b;
    std::string label() const; // "(l F Fz)(l F Fz)"
};

// Energy scales in h*MHz as decimal strings, realized on demand at any working
// precision; overridable for sensitivity studies. The energy origin sits at the
// hyperfine centroid of the 2P_1/2 levels, so P-P energies are pure hyperfine
// multiples and S-S energies carry twice the Lamb shift.
struct HydrogenConstants {
    std::string lamb_shift_mhz = "1057.845";
    std::string hyperfine_mhz = "59.1856114";
    std::string hartree_mhz = "6.579683920502e9"; // E_h/h

    Real lamb_shift(unsigned digits) const { return make_real(lamb_shift_mhz, digits); }
    Real hyperfine(unsigned digits) const { return make_real(hyperfine_mhz, digits); }
    Real hartree(unsigned digits) const { return make_real(hartree_mhz, digits); }
};

// The 24 Fz=0 basis states in the fixed enumeration order.
std::vector<TwoAtomState> fz0_states();

// 24x24 coupling structure of the Fz=0 Hamiltonian.
PatternMatrix fz0_adjacency();

// Indices (into the 24-state basis) of the two mutually uncoupled subspaces.
const std::vector<int>& subspace_one_indices(); // {1,2,5,7,8,11,15,16,18,21,22,24}
std::vector<int> subspace_two_indices();

// 12x12 subspace-one Hamiltonian in parameters L (Lamb shift), H (hyperfine
// scale), V (van der Waals strength), in the relabeled basis.
ParametricMatrix subspace_one_matrix();

// Same matrix with L and H folded in numerically; single free parameter V.
ParametricMatrix build_subspace_one(const HydrogenConstants& c = {});

// Van der Waals coupling strength 3*(E_h/h)/rho^3 in MHz, rho in Bohr radii.
Real vdw_strength(const Real& rho, const HydrogenConstants& c, unsigned digits);

// Closed-form asymptotic state-composition coefficients,
// alpha_pm = 2*sqrt(2/(33 +- sqrt(33))), beta_pm = -+(sqrt(33) +- 1)/sqrt(2*(33 +- sqrt(33))).
struct AsymptoticCoefficients {
    Real alpha_plus, alpha_minus, beta_plus, beta_minus;
};
AsymptoticCoefficients asymptotic_coefficients(unsigned digits);

// Subspace-one matrix as a one-parameter family over the separation rho,
// with V = vdw_strength(rho).
MatrixFamily hydrogen_family(const HydrogenConstants& c, unsigned digits);

// Born-Oppenheimer potential curves: sweep of the family over a rho grid
// (restricted to rho in [50, 1e5]); energies in h*MHz.
SpectralFlow potential_curves(const SweepGrid& grid, const HydrogenConstants& c,
                              unsigned digits, int threads = 0);

} // namespace adjspec
