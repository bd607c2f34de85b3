#include "adjspec/eig.hpp"

#include <boost/math/special_functions/fpclassify.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace adjspec {

namespace {

constexpr int sweep_budget = 40;

// One Jacobi pass in the given scalar type; returns the off-diagonal Frobenius
// norm after the pass. Rotations follow the classic stable parameterization
// (theta, t, c, s, tau) and run in fixed (p,q) order for determinism.
template <typename T>
struct JacobiState {
    int n;
    std::vector<T> a; // row-major, kept symmetric
    std::vector<T> v; // accumulated rotations, column k = eigenvector k

    T& A(int i, int j) { return a[i * n + j]; }
    T& V(int i, int j) { return v[i * n + j]; }

    void rotate(int p, int q) {
        using std::abs, std::sqrt;
        const T apq = A(p, q);
        if (apq == 0) return;
        const T theta = (A(q, q) - A(p, p)) / (2 * apq);
        T t = 1 / (abs(theta) + sqrt(theta * theta + 1));
        if (theta < 0) t = -t;
        const T c = 1 / sqrt(t * t + 1);
        const T s = t * c;
        const T tau = s / (1 + c);

        const T app = A(p, p), aqq = A(q, q);
        A(p, p) = app - t * apq;
        A(q, q) = aqq + t * apq;
        A(p, q) = 0;
        A(q, p) = 0;
        for (int k = 0; k < n; ++k) {
            if (k == p || k == q) continue;
            const T akp = A(k, p), akq = A(k, q);
            A(k, p) = akp - s * (akq + tau * akp);
            A(p, k) = A(k, p);
            A(k, q) = akq + s * (akp - tau * akq);
            A(q, k) = A(k, q);
        }
        for (int k = 0; k < n; ++k) {
            const T vkp = V(k, p), vkq = V(k, q);
            V(k, p) = vkp - s * (vkq + tau * vkp);
            V(k, q) = vkq + s * (vkp - tau * vkq);
        }
    }

    T sweep() {
        using std::sqrt;
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q) rotate(p, q);
        T off = 0;
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q) off += A(p, q) * A(p, q);
        return sqrt(2 * off);
    }
};

template <typename T>
std::string value_string(const T& v) {
    if constexpr (std::is_same_v<T, double>)
        return std::to_string(v);
    else
        return v.str(6);
}

// Runs the rotation loop; fills sorted eigenvalues and eigenvectors (columns).
template <typename T>
void jacobi(JacobiState<T>& st, const T& tolerance, std::vector<T>& values,
            std::vector<std::vector<T>>& vectors) {
    using std::abs, std::sqrt;
    const int n = st.n;
    bool converged = false;
    for (int round = 0; round < sweep_budget; ++round) {
        const T off = st.sweep();
        if (off <= tolerance) {
            // one extra pass pushes the remaining couplings to roundoff level
            if (round + 1 < sweep_budget) st.sweep();
            converged = true;
            break;
        }
    }
    if (!converged) {
        T off = 0;
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q) off += st.A(p, q) * st.A(p, q);
        throw numeric_error("eigensolver did not converge within " +
                            std::to_string(sweep_budget) +
                            " sweeps; off-diagonal norm = " + value_string(T(sqrt(2 * off))));
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int x, int y) { return st.A(x, x) < st.A(y, y); });

    values.resize(n);
    vectors.assign(n, std::vector<T>(n));
    for (int k = 0; k < n; ++k) {
        const int col = order[k];
        values[k] = st.A(col, col);
        for (int i = 0; i < n; ++i) vectors[k][i] = st.V(i, col);
        // sign convention: the largest-magnitude component is positive,
        // ties broken toward the lowest index
        int lead = 0;
        for (int i = 1; i < n; ++i)
            if (abs(vectors[k][i]) > abs(vectors[k][lead])) lead = i;
        if (vectors[k][lead] < 0)
            for (int i = 0; i < n; ++i) vectors[k][i] = -vectors[k][i];
    }
}

EigenSystem eig_double(const NumericMatrix& m, unsigned digits) {
    const int n = m.size();
    JacobiState<double> st{n, std::vector<double>(n * n), std::vector<double>(n * n, 0.0)};
    double norm = 0;
    for (int i = 0; i < n; ++i) {
        st.V(i, i) = 1.0;
        for (int j = 0; j < n; ++j) {
            const double v = m.at(i + 1, j + 1).convert_to<double>();
            if (!std::isfinite(v))
                throw numeric_error("matrix entry (" + std::to_string(i + 1) + "," +
                                    std::to_string(j + 1) + ") is not finite");
            st.A(i, j) = v;
            norm += v * v;
        }
    }
    const double tolerance = std::sqrt(norm) * std::pow(10.0, -int(digits) + 5);

    std::vector<double> values;
    std::vector<std::vector<double>> vectors;
    jacobi(st, tolerance, values, vectors);

    EigenSystem out;
    out.n = n;
    out.digits = digits;
    out.values.reserve(n);
    out.vectors.assign(n, {});
    for (int k = 0; k < n; ++k) {
        out.values.emplace_back(values[k], digits);
        out.vectors[k].reserve(n);
        for (int i = 0; i < n; ++i) out.vectors[k].emplace_back(vectors[k][i], digits);
    }
    return out;
}

EigenSystem eig_mpfr(const NumericMatrix& m, unsigned digits) {
    const int n = m.size();
    JacobiState<Real> st{n, std::vector<Real>(static_cast<size_t>(n) * n, Real(0, digits)),
                         std::vector<Real>(static_cast<size_t>(n) * n, Real(0, digits))};
    Real norm(0, digits);
    for (int i = 0; i < n; ++i) {
        st.V(i, i) = Real(1, digits);
        for (int j = 0; j < n; ++j) {
            if (!boost::math::isfinite(m.at(i + 1, j + 1)))
                throw numeric_error("matrix entry (" + std::to_string(i + 1) + "," +
                                    std::to_string(j + 1) + ") is not finite");
            st.A(i, j) = at_precision(m.at(i + 1, j + 1), digits);
            norm += st.A(i, j) * st.A(i, j);
        }
    }
    const Real tolerance = sqrt(norm) * pow10(-int(digits) + 5, digits);

    std::vector<Real> values;
    std::vector<std::vector<Real>> vectors;
    jacobi(st, tolerance, values, vectors);

    EigenSystem out;
    out.n = n;
    out.digits = digits;
    out.values = std::move(values);
    out.vectors = std::move(vectors);
    return out;
}

} // namespace

EigenSystem eig_sym(const NumericMatrix& m, unsigned digits) {
    check_digits(digits);
    // The double path needs headroom for squared entries in the norm.
    if (digits <= 16 && m.norm_max() < Real(1e150, digits)) return eig_double(m, digits);
    return eig_mpfr(m, digits);
}

Real gap_at(const ParametricMatrix& m, const std::string& parameter, const Real& value,
            int a, int b, unsigned digits, const Assignment& fixed) {
    if (a < 1 || b <= a || b > m.size())
        throw input_error("gap positions must satisfy 1 <= a < b <= n");
    Assignment values = fixed;
    values[parameter] = value;
    const EigenSystem es = eig_sym(evaluate(m, values, digits), digits);
    return es.values[b - 1] - es.values[a - 1];
}

} // namespace adjspec
