#pragma once

#include "adjspec/eig.hpp"
#include "adjspec/param_matrix.hpp"
#include "adjspec/real.hpp"

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace adjspec {

struct SweepGrid {
    std::string parameter;
    Real start;
    Real end;
    int steps = 2;            // number of grid points
    bool log_spacing = false; // requires start > 0

    void validate() const;
    // Grid point k (0-based) realized at the given precision.
    Real point(int k, unsigned digits) const;
};

// One-parameter family of symmetric matrices: fixed values for all parameters
// but one, plus an optional map from the swept coordinate to that parameter
// (identity when absent; used e.g. for a coordinate entering as an inverse cube).
struct MatrixFamily {
    ParametricMatrix matrix;
    std::string sweep_parameter;
    Assignment fixed;
    std::function<Real(const Real&, unsigned)> coordinate_map; // may be empty

    NumericMatrix at(const Real& coordinate, unsigned digits) const;
};

// Eigenvalue curves over a grid with persistent identities: curve_ids[k] lists,
// per sorted-eigenvalue slot, the curve that occupies it at grid point k.
// Curves are numbered 1..n by ascending eigenvalue at the first point and
// continued by maximal eigenvector overlap.
struct SpectralFlow {
    SweepGrid grid;
    unsigned digits = 0;
    std::vector<Real> points;
    std::vector<EigenSystem> systems;
    std::vector<std::vector<int>> curve_ids;

    int curves() const { return systems.empty() ? 0 : systems.front().n; }
    int slot_of(int curve, int k) const;          // 1-based sorted slot
    const Real& value(int curve, int k) const;    // eigenvalue of a curve at point k
};

SpectralFlow sweep(const MatrixFamily& family, const SweepGrid& grid, unsigned digits,
                   int threads = 0); // threads<=0: all available cores
SpectralFlow sweep(const ParametricMatrix& m, const SweepGrid& grid, const Assignment& fixed,
                   unsigned digits, int threads = 0);

enum class DetectionKind { gap_minimum, order_swap };
enum class Verdict { crossing, avoided, unresolved };

std::string to_string(DetectionKind k);
std::string to_string(Verdict v);

struct CrossingCandidate {
    int curve_a = 0, curve_b = 0; // persistent ids, curve_a < curve_b
    int lower_slot = 0;           // sorted slot of the lower curve inside the bracket
    Real g_lo, g_hi;              // bracketing interval
    Real gap;                     // smallest sampled gap inside the bracket
    DetectionKind kind = DetectionKind::gap_minimum;
};

// Local minima of adjacent-slot gaps below gap_threshold, plus every curve-order
// swap between consecutive grid points (reported regardless of the threshold).
// Detections of the same event are merged; candidates sorted by g_lo.
std::vector<CrossingCandidate> detect_candidates(const SpectralFlow& flow, const Real& gap_threshold);

struct CrossingReport {
    CrossingCandidate candidate;
    Real location; // g*
    Real energy;   // midpoint of the two curve energies at g*
    std::vector<std::pair<unsigned, Real>> gap_per_level;
    Verdict verdict = Verdict::unresolved;
    std::string note; // diagnostics when unresolved
};

// Golden-section minimization of the pair gap at each ladder level, re-bracketed
// from the previous level. Verdict: crossing iff the top-level minimal gap is
// below 10^-(P_max-10); avoided iff the top two levels agree to 1% relative.
CrossingReport classify(const MatrixFamily& family, const CrossingCandidate& candidate,
                        const std::vector<unsigned>& ladder);
CrossingReport classify(const ParametricMatrix& m, const Assignment& fixed,
                        const std::string& parameter, const CrossingCandidate& candidate,
                        const std::vector<unsigned>& ladder);

// Second-order perturbation shifts of the block states, which may couple only
// to the complement at the evaluation point. States of equal diagonal energy
// form degenerate groups, reported via the eigenvalues of the effective matrix
// W_ab = sum_j H_aj H_bj / (E0 - H_jj), assigned ascending in index order.
std::vector<Real> second_order_shifts(const ParametricMatrix& m, const Assignment& values,
                                      const std::vector<int>& block, unsigned digits);

std::string flow_to_csv(const SpectralFlow& flow);
std::string flow_to_json(const SpectralFlow& flow);
std::string reports_to_json(const std::vector<CrossingReport>& reports, unsigned digits);
std::string reports_to_csv(const std::vector<CrossingReport>& reports, unsigned digits);

} // namespace adjspec
