#include "adjspec/eig.hpp"
#include "adjspec/param_matrix.hpp"

#include <doctest.h>

#include <limits>
#include <random>

using namespace adjspec;

namespace {

double as_double(const Real& v) { return v.convert_to<double>(); }

NumericMatrix random_symmetric(int n, unsigned digits, std::mt19937& rng) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    NumericMatrix m(n, digits);
    for (int i = 1; i <= n; ++i)
        for (int j = i; j <= n; ++j) m.set(i, j, Real(dist(rng), digits));
    return m;
}

Real dot(const std::vector<Real>& a, const std::vector<Real>& b, unsigned digits) {
    Real s = make_real("0", digits);
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Residual, orthonormality, sign convention, ordering, trace preservation.
void check_invariants(const NumericMatrix& m, const EigenSystem& sys, const Real& tol) {
    const int n = m.size();
    const unsigned digits = sys.digits;
    REQUIRE(sys.n == n);
    REQUIRE(int(sys.values.size()) == n);
    REQUIRE(int(sys.vectors.size()) == n);

    Real trace = make_real("0", digits), sum = make_real("0", digits);
    for (int i = 1; i <= n; ++i) trace += m.at(i, i);
    for (const Real& v : sys.values) sum += v;
    CHECK(abs(trace - sum) < tol * 10);

    for (int k = 0; k < n; ++k) {
        if (k > 0) CHECK(sys.values[k] >= sys.values[k - 1]);

        // M v = lambda v
        for (int i = 1; i <= n; ++i) {
            Real mv = make_real("0", digits);
            for (int j = 1; j <= n; ++j) mv += m.at(i, j) * sys.vectors[k][j - 1];
            CHECK(abs(mv - sys.values[k] * sys.vectors[k][i - 1]) < tol);
        }

        // Unit norm, orthogonality, sign convention.
        CHECK(abs(dot(sys.vectors[k], sys.vectors[k], digits) - 1) < tol);
        for (int l = k + 1; l < n; ++l)
            CHECK(abs(dot(sys.vectors[k], sys.vectors[l], digits)) < tol);
        int arg = 0;
        for (int i = 1; i < n; ++i)
            if (abs(sys.vectors[k][i]) > abs(sys.vectors[k][arg])) arg = i;
        CHECK(sys.vectors[k][arg] >= 0);
    }
}

} // namespace

TEST_CASE("two-level exchange matrix") {
    NumericMatrix m(2, 30);
    m.set(1, 2, make_real("1", 30));
    const EigenSystem sys = eig_sym(m, 30);
    CHECK(abs(sys.values[0] + 1) < pow10(-25, 30));
    CHECK(abs(sys.values[1] - 1) < pow10(-25, 30));
    // Tie in |components|: the first component is made positive.
    CHECK(sys.vectors[0][0] > 0);
    CHECK(sys.vectors[0][1] < 0);
    CHECK(sys.vectors[1][0] > 0);
    CHECK(sys.vectors[1][1] > 0);
}

TEST_CASE("diagonal input sorts without rotating") {
    NumericMatrix m(3, 20);
    m.set(1, 1, make_real("5", 20));
    m.set(2, 2, make_real("-1", 20));
    m.set(3, 3, make_real("2", 20));
    const EigenSystem sys = eig_sym(m, 20);
    CHECK(as_double(sys.values[0]) == doctest::Approx(-1));
    CHECK(as_double(sys.values[1]) == doctest::Approx(2));
    CHECK(as_double(sys.values[2]) == doctest::Approx(5));
    CHECK(as_double(sys.vectors[0][1]) == doctest::Approx(1)); // e_2
    CHECK(as_double(sys.vectors[2][0]) == doctest::Approx(1)); // e_1
}

TEST_CASE("tridiagonal 2,-1 matrix has eigenvalues 2, 2 -+ sqrt(2)") {
    const unsigned digits = 60;
    NumericMatrix m(3, digits);
    for (int i = 1; i <= 3; ++i) m.set(i, i, make_real("2", digits));
    m.set(1, 2, make_real("-1", digits));
    m.set(2, 3, make_real("-1", digits));
    const EigenSystem sys = eig_sym(m, digits);
    const Real two = make_real("2", digits);
    const Real root2 = sqrt(two);
    const Real tol = pow10(-52, digits);
    CHECK(abs(sys.values[0] - (two - root2)) < tol);
    CHECK(abs(sys.values[1] - two) < tol);
    CHECK(abs(sys.values[2] - (two + root2)) < tol);
}

TEST_CASE("two-level avoided pair matches the closed form") {
    // diag(E1, E2) + g on the off-diagonal: eigenvalues mean -+ sqrt(quarter gap^2 + g^2).
    const unsigned digits = 50;
    const ParametricMatrix m = model_hprime(1.0);
    Assignment values{{"E1", make_real("1", digits)},
                      {"E2", make_real("2", digits)},
                      {"g", make_real("0.75", digits)}};
    const EigenSystem sys = eig_sym(evaluate(m, values, digits), digits);
    const Real mean = (values["E1"] + values["E2"]) / 2;
    const Real half = (values["E2"] - values["E1"]) / 2;
    const Real radius = sqrt(half * half + values["g"] * values["g"]);
    const Real tol = pow10(-44, digits);
    CHECK(abs(sys.values[0] - (mean - radius)) < tol);
    CHECK(abs(sys.values[1] - (mean + radius)) < tol);
}

TEST_CASE("invariants hold on random matrices in both arithmetic paths") {
    std::mt19937 rng(424242);
    for (unsigned digits : {16u, 40u}) {
        const Real tol = pow10(-int(digits) + 6, digits);
        for (int trial = 0; trial < 8; ++trial) {
            const int n = 2 + int(rng() % 7);
            const NumericMatrix m = random_symmetric(n, digits, rng);
            check_invariants(m, eig_sym(m, digits), tol);
        }
    }
}

TEST_CASE("double path and mpfr path agree") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 5; ++trial) {
        const int n = 3 + int(rng() % 5);
        const NumericMatrix m16 = random_symmetric(n, 16, rng);
        NumericMatrix m50(n, 50);
        for (int i = 1; i <= n; ++i)
            for (int j = i; j <= n; ++j) m50.set(i, j, at_precision(m16.at(i, j), 50));
        const EigenSystem lo = eig_sym(m16, 16);
        const EigenSystem hi = eig_sym(m50, 50);
        for (int k = 0; k < n; ++k)
            CHECK(abs(at_precision(lo.values[k], 50) - hi.values[k]) < pow10(-12, 50));
    }
}

TEST_CASE("non-finite entries are a numeric error") {
    for (unsigned digits : {16u, 40u}) {
        NumericMatrix m(2, digits);
        m.set(1, 2, Real(std::numeric_limits<double>::infinity(), digits));
        CHECK_THROWS_AS(eig_sym(m, digits), numeric_error);
    }
}

TEST_CASE("single entry matrix") {
    NumericMatrix m(1, 20);
    m.set(1, 1, make_real("-7", 20));
    const EigenSystem sys = eig_sym(m, 20);
    CHECK(as_double(sys.values[0]) == doctest::Approx(-7));
    CHECK(as_double(sys.vectors[0][0]) == doctest::Approx(1));
}

TEST_CASE("gap between sorted eigenvalue positions") {
    const ParametricMatrix m = model_hprime(1.0);
    const Assignment fixed{{"E1", make_real("1", 40)}, {"E2", make_real("2", 40)}};
    const Real g = make_real("0.5", 40);
    const Real gap = gap_at(m, "g", g, 1, 2, 40, fixed);
    // Closed form: sqrt((E2-E1)^2 + 4 g^2) = sqrt(2).
    CHECK(abs(gap - sqrt(make_real("2", 40))) < pow10(-35, 40));
    CHECK(gap > 0);

    CHECK_THROWS_AS(gap_at(m, "g", g, 2, 1, 40, fixed), input_error);
    CHECK_THROWS_AS(gap_at(m, "g", g, 1, 3, 40, fixed), input_error);
    CHECK_THROWS_AS(gap_at(m, "g", g, 0, 2, 40, fixed), input_error);
}
