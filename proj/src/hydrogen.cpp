#include "adjspec/hydrogen.hpp"

#include <algorithm>
#include <array>
#include <sstream>

namespace adjspec {

std::string TwoAtomState::label() const {
    std::ostringstream out;
    out << "(" << l_a << " " << f_a << " " << fz_a << ")(" << l_b << " " << f_b << " " << fz_b
        << ")";
    return out.str();
}

std::vector<TwoAtomState> fz0_states() {
    // (l F Fz) per atom, enumerated S states first, Fz,A ascending, Fz,B = -Fz,A
    return {
        {0, 0, 0, 0, 0, 0},  {0, 0, 0, 0, 1, 0},  {0, 0, 0, 1, 0, 0},  {0, 0, 0, 1, 1, 0},
        {0, 1, -1, 0, 1, 1}, {0, 1, -1, 1, 1, 1}, {0, 1, 0, 0, 0, 0},  {0, 1, 0, 0, 1, 0},
        {0, 1, 0, 1, 0, 0},  {0, 1, 0, 1, 1, 0},  {0, 1, 1, 0, 1, -1}, {0, 1, 1, 1, 1, -1},
        {1, 0, 0, 0, 0, 0},  {1, 0, 0, 0, 1, 0},  {1, 0, 0, 1, 0, 0},  {1, 0, 0, 1, 1, 0},
        {1, 1, -1, 0, 1, 1}, {1, 1, -1, 1, 1, 1}, {1, 1, 0, 0, 0, 0},  {1, 1, 0, 0, 1, 0},
        {1, 1, 0, 1, 0, 0},  {1, 1, 0, 1, 1, 0},  {1, 1, 1, 0, 1, -1}, {1, 1, 1, 1, 1, -1},
    };
}

PatternMatrix fz0_adjacency() {
    static const std::array<const char*, 24> rows = {
        "100000000000000001000101",
        "010000000000000001001001",
        "001000000000000010010010",
        "000100000000000010100010",
        "000010000000001101001100",
        "000001000000110010110000",
        "000000100000000101000001",
        "000000010000001001000001",
        "000000001000010010000010",
        "000000000100100010000010",
        "000000000010001100001101",
        "000000000001110000110010",
        "000001000101100000000000",
        "000001001001010000000000",
        "000010010010001000000000",
        "000010100010000100000000",
        "001101001100000010000000",
        "110010110000000001000000",
        "000101000001000000100000",
        "001001000001000000010000",
        "010010000010000000001000",
        "100010000010000000000100",
        "001100001101000000000010",
        "110000110010000000000001",
    };
    PatternMatrix u(24);
    for (int i = 0; i < 24; ++i)
        for (int j = 0; j < 24; ++j)
            if (rows[i][j] == '1') u.set(i + 1, j + 1, true);
    return u;
}

const std::vector<int>& subspace_one_indices() {
    static const std::vector<int> indices = {1, 2, 5, 7, 8, 11, 15, 16, 18, 21, 22, 24};
    return indices;
}

std::vector<int> subspace_two_indices() {
    std::vector<int> out;
    const auto& one = subspace_one_indices();
    for (int i = 1; i <= 24; ++i)
        if (std::find(one.begin(), one.end(), i) == one.end()) out.push_back(i);
    return out;
}

ParametricMatrix subspace_one_matrix() {
    std::vector<std::string> labels;
    const auto states = fz0_states();
    for (int idx : subspace_one_indices()) labels.push_back(states[idx - 1].label());
    ParametricMatrix m(12, {"L", "H", "V"}, std::move(labels));

    // diagonal: S-S states carry 2L plus hyperfine multiples, P-P pure hyperfine
    const std::array<double, 12> lamb = {2, 2, 2, 2, 2, 2, 0, 0, 0, 0, 0, 0};
    const std::array<double, 12> hyper = {-4.5, -1.5, 1.5, -1.5, 1.5, 1.5,
                                          -1.5, -0.5, 0.5, -0.5, 0.5, 0.5};
    for (int i = 1; i <= 12; ++i) {
        std::vector<ParamTerm> terms;
        if (lamb[i - 1] != 0) terms.push_back({lamb[i - 1], "L"});
        terms.push_back({hyper[i - 1], "H"});
        m.set_entry(i, i, std::move(terms));
    }

    // S-S to P-P couplings in units of V
    struct Coupling {
        int i, j;
        double c;
    };
    static const std::array<Coupling, 22> couplings = {{
        {1, 9, -1}, {1, 11, -2}, {1, 12, -1},
        {2, 9, 1},  {2, 10, -2}, {2, 12, -1},
        {3, 7, -1}, {3, 8, 1},   {3, 9, 2},   {3, 10, -1}, {3, 11, 1},
        {4, 8, -2}, {4, 9, -1},  {4, 12, 1},
        {5, 7, -2}, {5, 9, 1},   {5, 12, 1},
        {6, 7, -1}, {6, 8, -1},  {6, 10, 1},  {6, 11, 1},  {6, 12, 2},
    }};
    for (const auto& c : couplings) m.set_entry(c.i, c.j, {{c.c, "V"}});
    return m;
}

ParametricMatrix build_subspace_one(const HydrogenConstants& c) {
    return bind_parameters(subspace_one_matrix(),
                           {{"L", std::stod(c.lamb_shift_mhz)}, {"H", std::stod(c.hyperfine_mhz)}});
}

Real vdw_strength(const Real& rho, const HydrogenConstants& c, unsigned digits) {
    check_digits(digits);
    if (!(rho > 0)) throw input_error("separation must be positive");
    const Real r = at_precision(rho, digits);
    return 3 * c.hartree(digits) / (r * r * r);
}

AsymptoticCoefficients asymptotic_coefficients(unsigned digits) {
    check_digits(digits);
    const Real root33 = sqrt(Real(33, digits));
    const Real plus = 33 + root33, minus = 33 - root33;
    AsymptoticCoefficients out{
        2 * sqrt(2 / plus),
        2 * sqrt(2 / minus),
        -(root33 + 1) / sqrt(2 * plus),
        (root33 - 1) / sqrt(2 * minus),
    };
    return out;
}

MatrixFamily hydrogen_family(const HydrogenConstants& c, unsigned digits) {
    check_digits(digits);
    Assignment fixed{{"L", c.lamb_shift(digits)}, {"H", c.hyperfine(digits)}};
    auto map = [c](const Real& rho, unsigned map_digits) {
        return vdw_strength(rho, c, map_digits);
    };
    return MatrixFamily{subspace_one_matrix(), "V", std::move(fixed), std::move(map)};
}

SpectralFlow potential_curves(const SweepGrid& grid, const HydrogenConstants& c,
                              unsigned digits, int threads) {
    grid.validate();
    if (grid.start < 50 || grid.end > 100000)
        throw input_error("separation grid must stay within [50, 1e5] Bohr radii");
    return sweep(hydrogen_family(c, std::max(digits, 64u)), grid, digits, threads);
}

} // namespace adjspec
