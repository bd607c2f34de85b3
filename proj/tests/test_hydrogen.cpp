#include "adjspec/hydrogen.hpp"

#include <doctest.h>

#include <array>
#include <cmath>
#include <string>
#include <vector>

using namespace adjspec;

namespace {

double as_double(const Real& v) { return v.convert_to<double>(); }

// 24x24 coupling structure of the Fz=0 two-atom Hamiltonian, row per state.
const std::array<const char*, 24> fz0_rows = {
    "100000000000000001000101", // 1  (0,0,0)(0,0,0)
    "010000000000000001001001", // 2  (0,0,0)(0,1,0)
    "001000000000000010010010", // 3  (0,0,0)(1,0,0)
    "000100000000000010100010", // 4  (0,0,0)(1,1,0)
    "000010000000001101001100", // 5  (0,1,-1)(0,1,1)
    "000001000000110010110000", // 6  (0,1,-1)(1,1,1)
    "000000100000000101000001", // 7  (0,1,0)(0,0,0)
    "000000010000001001000001", // 8  (0,1,0)(0,1,0)
    "000000001000010010000010", // 9  (0,1,0)(1,0,0)
    "000000000100100010000010", // 10 (0,1,0)(1,1,0)
    "000000000010001100001101", // 11 (0,1,1)(0,1,-1)
    "000000000001110000110010", // 12 (0,1,1)(1,1,-1)
    "000001000101100000000000", // 13 (1,0,0)(0,0,0)
    "000001001001010000000000", // 14 (1,0,0)(0,1,0)
    "000010010010001000000000", // 15 (1,0,0)(1,0,0)
    "000010100010000100000000", // 16 (1,0,0)(1,1,0)
    "001101001100000010000000", // 17 (1,1,-1)(0,1,1)
    "110010110000000001000000", // 18 (1,1,-1)(1,1,1)
    "000101000001000000100000", // 19 (1,1,0)(0,0,0)
    "001001000001000000010000", // 20 (1,1,0)(0,1,0)
    "010010000010000000001000", // 21 (1,1,0)(1,0,0)
    "100010000010000000000100", // 22 (1,1,0)(1,1,0)
    "001100001101000000000010", // 23 (1,1,1)(0,1,-1)
    "110000110010000000000001", // 24 (1,1,1)(1,1,-1)
};

// Coefficient of V at each subspace-one entry (upper triangle listed).
struct VEntry {
    int i, j;
    double coeff;
};
const std::vector<VEntry> v_entries = {
    {1, 9, -1},  {1, 11, -2}, {1, 12, -1},                           //
    {2, 9, 1},   {2, 10, -2}, {2, 12, -1},                           //
    {3, 7, -1},  {3, 8, 1},   {3, 9, 2},   {3, 10, -1}, {3, 11, 1},  //
    {4, 8, -2},  {4, 9, -1},  {4, 12, 1},                            //
    {5, 7, -2},  {5, 9, 1},   {5, 12, 1},                            //
    {6, 7, -1},  {6, 8, -1},  {6, 10, 1},  {6, 11, 1},  {6, 12, 2},  //
};

const std::array<double, 12> lamb_coeff = {2, 2, 2, 2, 2, 2, 0, 0, 0, 0, 0, 0};
const std::array<double, 12> hyper_coeff = {-4.5, -1.5, 1.5, -1.5, 1.5, 1.5,
                                            -1.5, -0.5, 0.5, -0.5, 0.5, 0.5};

} // namespace

TEST_CASE("the 24 basis states carry zero total angular momentum projection") {
    const auto states = fz0_states();
    REQUIRE(states.size() == 24);
    std::vector<std::string> labels;
    for (const auto& s : states) {
        CHECK(s.fz_a + s.fz_b == 0);
        CHECK((s.l_a == 0 || s.l_a == 1));
        CHECK((s.l_b == 0 || s.l_b == 1));
        CHECK(s.fz_a >= -s.f_a);
        CHECK(s.fz_a <= s.f_a);
        labels.push_back(s.label());
    }
    std::sort(labels.begin(), labels.end());
    CHECK(std::unique(labels.begin(), labels.end()) == labels.end());

    CHECK(states[0].label() == "(0 0 0)(0 0 0)");
    CHECK(states[4].label() == "(0 1 -1)(0 1 1)");
    CHECK(states[23].label() == "(1 1 1)(1 1 -1)");
}

TEST_CASE("coupling structure matches the frozen 24x24 pattern") {
    const PatternMatrix u = fz0_adjacency();
    REQUIRE(u.size() == 24);
    CHECK(u.symmetric());
    for (int i = 1; i <= 24; ++i)
        for (int j = 1; j <= 24; ++j)
            CHECK(u.at(i, j) == (fz0_rows[i - 1][j - 1] == '1'));
}

TEST_CASE("the manifold splits into the S-S/P-P and S-P/P-S subspaces") {
    const std::vector<int> one = subspace_one_indices();
    CHECK(one == std::vector<int>{1, 2, 5, 7, 8, 11, 15, 16, 18, 21, 22, 24});
    const std::vector<int> two = subspace_two_indices();
    CHECK(two == std::vector<int>{3, 4, 6, 9, 10, 12, 13, 14, 17, 19, 20, 23});

    const ComponentPartition p = components(fz0_adjacency());
    REQUIRE(p.sets.size() == 2);
    CHECK(p.sets[0] == one);
    CHECK(p.sets[1] == two);

    // Subspace one is S-S and P-P pairs; subspace two mixes the manifolds.
    const auto states = fz0_states();
    for (int idx : one) CHECK(states[idx - 1].l_a == states[idx - 1].l_b);
    for (int idx : two) CHECK(states[idx - 1].l_a != states[idx - 1].l_b);
}

TEST_CASE("subspace-one matrix structure") {
    const ParametricMatrix m = subspace_one_matrix();
    REQUIRE(m.size() == 12);
    CHECK(m.parameters() == std::vector<std::string>{"L", "H", "V"});

    SUBCASE("pattern equals the restriction of the 24-state structure") {
        const PatternMatrix u = fz0_adjacency();
        const PatternMatrix sub = pattern_of(m);
        const std::vector<int> one = subspace_one_indices();
        for (int a = 1; a <= 12; ++a)
            for (int b = 1; b <= 12; ++b) CHECK(sub.at(a, b) == u.at(one[a - 1], one[b - 1]));
    }

    SUBCASE("V couplings carry the printed integer coefficients") {
        const NumericMatrix v = evaluate(
            m, {{"L", Real(0.0, 30)}, {"H", Real(0.0, 30)}, {"V", Real(1.0, 30)}}, 30);
        NumericMatrix expected(12, 30);
        for (const auto& e : v_entries) expected.set(e.i, e.j, Real(e.coeff, 30));
        for (int i = 1; i <= 12; ++i)
            for (int j = 1; j <= 12; ++j) CHECK(v.at(i, j) == expected.at(i, j));
    }

    SUBCASE("V=0 eigenvalues are the printed diagonal, exactly, in each unit") {
        const NumericMatrix in_lamb = evaluate(
            m, {{"L", Real(1.0, 30)}, {"H", Real(0.0, 30)}, {"V", Real(0.0, 30)}}, 30);
        std::vector<Real> lamb_sorted(lamb_coeff.size(), Real(0.0, 30));
        for (size_t i = 0; i < 12; ++i) lamb_sorted[i] = Real(lamb_coeff[i], 30);
        std::sort(lamb_sorted.begin(), lamb_sorted.end());
        const EigenSystem sys_lamb = eig_sym(in_lamb, 30);
        for (size_t i = 0; i < 12; ++i) CHECK(sys_lamb.values[i] == lamb_sorted[i]);

        const NumericMatrix in_hyper = evaluate(
            m, {{"L", Real(0.0, 30)}, {"H", Real(1.0, 30)}, {"V", Real(0.0, 30)}}, 30);
        std::vector<Real> hyper_sorted(hyper_coeff.size(), Real(0.0, 30));
        for (size_t i = 0; i < 12; ++i) hyper_sorted[i] = Real(hyper_coeff[i], 30);
        std::sort(hyper_sorted.begin(), hyper_sorted.end());
        const EigenSystem sys_hyper = eig_sym(in_hyper, 30);
        for (size_t i = 0; i < 12; ++i) CHECK(sys_hyper.values[i] == hyper_sorted[i]);
    }
}

TEST_CASE("energy-scale constants fold into a single-parameter model") {
    const ParametricMatrix m = build_subspace_one();
    CHECK(m.size() == 12);
    CHECK(m.parameters() == std::vector<std::string>{"V"});
    const NumericMatrix at_zero = evaluate(m, {{"V", Real(0.0, 30)}}, 30);
    CHECK(as_double(at_zero.at(1, 1)) ==
          doctest::Approx(2.0 * 1057.845 - 4.5 * 59.1856114).epsilon(1e-12));
    CHECK(as_double(at_zero.at(7, 7)) == doctest::Approx(-1.5 * 59.1856114).epsilon(1e-12));
    CHECK(as_double(at_zero.at(1, 9)) == 0.0);
}

TEST_CASE("van der Waals strength follows the inverse cube") {
    const HydrogenConstants c;
    const Real v100 = vdw_strength(make_real("100", 40), c, 40);
    CHECK(abs(v100 - make_real("19739.051761506", 40)) < pow10(-9, 40));
    const Real v200 = vdw_strength(make_real("200", 40), c, 40);
    CHECK(abs(v200 * 8 - v100) < pow10(-30, 40));
    CHECK_THROWS_AS(vdw_strength(Real(0.0, 40), c, 40), input_error);
    CHECK_THROWS_AS(vdw_strength(Real(-10.0, 40), c, 40), input_error);
}

TEST_CASE("asymptotic composition coefficients") {
    const unsigned digits = 50;
    const AsymptoticCoefficients a = asymptotic_coefficients(digits);
    const Real root33 = sqrt(make_real("33", digits));

    CHECK(a.alpha_plus > 0);
    CHECK(a.alpha_minus > 0);
    CHECK(a.beta_plus < 0);
    CHECK(a.beta_minus > 0);

    const double r33 = std::sqrt(33.0);
    CHECK(as_double(a.alpha_plus) == doctest::Approx(2 * std::sqrt(2 / (33 + r33))));
    CHECK(as_double(a.alpha_minus) == doctest::Approx(2 * std::sqrt(2 / (33 - r33))));
    CHECK(as_double(a.beta_plus) == doctest::Approx(-(r33 + 1) / std::sqrt(2 * (33 + r33))));
    CHECK(as_double(a.beta_minus) == doctest::Approx((r33 - 1) / std::sqrt(2 * (33 - r33))));

    // alpha^2 + 2 beta^2 = 2 (21 +- sqrt(33)) / (33 +- sqrt(33)).
    const Real tol = pow10(-45, digits);
    const Real plus_norm = a.alpha_plus * a.alpha_plus + 2 * a.beta_plus * a.beta_plus;
    CHECK(abs(plus_norm - 2 * (21 + root33) / (33 + root33)) < tol);
    const Real minus_norm = a.alpha_minus * a.alpha_minus + 2 * a.beta_minus * a.beta_minus;
    CHECK(abs(minus_norm - 2 * (21 - root33) / (33 - root33)) < tol);
}

TEST_CASE("family evaluation anchors the energy scales") {
    const HydrogenConstants c;
    const MatrixFamily family = hydrogen_family(c, 40);
    const Real rho = make_real("100", 40);
    const NumericMatrix m = family.at(rho, 40);
    const Real v = vdw_strength(rho, c, 40);
    CHECK(abs(m.at(1, 9) + v) < pow10(-30, 40));
    CHECK(abs(m.at(1, 11) + 2 * v) < pow10(-30, 40));
    CHECK(abs(m.at(7, 7) + Real(1.5, 40) * c.hyperfine(40)) < pow10(-30, 40));
    CHECK(abs(m.at(1, 1) - (2 * c.lamb_shift(40) - Real(4.5, 40) * c.hyperfine(40)))
          < pow10(-30, 40));
}

TEST_CASE("potential curves at long range approach the two manifolds") {
    const HydrogenConstants c;
    SweepGrid grid{"rho", make_real("1000", 16), make_real("10000", 16), 25, true};
    const SpectralFlow flow = potential_curves(grid, c, 16);
    REQUIRE(flow.curves() == 12);
    REQUIRE(int(flow.points.size()) == 25);

    for (int k = 0; k < 25; ++k) {
        for (int curve = 1; curve <= 6; ++curve) {
            CHECK(as_double(flow.value(curve, k)) > -95.0);
            CHECK(as_double(flow.value(curve, k)) < 35.0);
        }
        for (int curve = 7; curve <= 12; ++curve) {
            CHECK(as_double(flow.value(curve, k)) > 1840.0);
            CHECK(as_double(flow.value(curve, k)) < 2210.0);
        }
    }

    SUBCASE("grids outside the supported separations are rejected") {
        SweepGrid low{"rho", make_real("10", 16), make_real("100", 16), 5, true};
        CHECK_THROWS_AS(potential_curves(low, c, 16), input_error);
        SweepGrid high{"rho", make_real("1000", 16), make_real("200000", 16), 5, true};
        CHECK_THROWS_AS(potential_curves(high, c, 16), input_error);
    }
}

TEST_CASE("both level crossings are found and survive higher precision") {
    const HydrogenConstants c;
    SweepGrid grid{"rho", make_real("460", 16), make_real("520", 16), 50, true};
    const SpectralFlow flow = potential_curves(grid, c, 16);
    const auto candidates = detect_candidates(flow, make_real("0.25", 16));
    REQUIRE(candidates.size() == 2);

    CHECK(candidates[0].curve_a == 8);
    CHECK(candidates[0].curve_b == 9);
    CHECK(candidates[0].kind == DetectionKind::order_swap);
    CHECK(candidates[0].lower_slot == 8);
    CHECK(candidates[1].curve_a == 3);
    CHECK(candidates[1].curve_b == 4);
    CHECK(candidates[1].kind == DetectionKind::order_swap);
    CHECK(candidates[1].lower_slot == 3);

    const MatrixFamily family = hydrogen_family(c, 40);
    const std::vector<unsigned> ladder{16, 40};

    const CrossingReport upper = classify(family, candidates[0], ladder);
    CHECK(upper.verdict == Verdict::crossing);
    CHECK(abs(upper.location - make_real("480.62947718813", 40)) < pow10(-8, 40));
    CHECK(abs(upper.energy - make_real("2086.654", 40)) < Real(0.01, 40));

    const CrossingReport lower = classify(family, candidates[1], ladder);
    CHECK(lower.verdict == Verdict::crossing);
    CHECK(abs(lower.location - make_real("499.4186454062", 40)) < pow10(-7, 40));
    CHECK(abs(lower.energy - make_real("-77.327", 40)) < Real(0.01, 40));
}
