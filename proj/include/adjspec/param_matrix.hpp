#pragma once

#include "adjspec/real.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace adjspec {

// Reserved parameter name for the constant part of an entry.
inline const std::string constant_parameter = "1";

// One additive term of a matrix entry: coefficient * parameter.
struct ParamTerm {
    double coefficient = 0.0;
    std::string parameter = constant_parameter;
    friend bool operator==(const ParamTerm&, const ParamTerm&) = default;
};

using Assignment = std::map<std::string, Real>;

// Dense symmetric matrix of Real entries at a fixed working precision.
class NumericMatrix {
public:
    NumericMatrix(int n, unsigned digits);

    int size() const { return n_; }
    unsigned digits() const { return digits_; }

    // 1-based indices throughout the public interface.
    const Real& at(int i, int j) const { return data_[index(i, j)]; }
    void set(int i, int j, const Real& v); // assigns (i,j) and (j,i)

    Real norm_frobenius() const;
    Real norm_max() const; // max |entry|

private:
    int index(int i, int j) const;
    int n_;
    unsigned digits_;
    std::vector<Real> data_;
};

// Symmetric matrix whose entries are linear combinations of named parameters.
class ParametricMatrix {
public:
    ParametricMatrix(int n, std::vector<std::string> parameters,
                     std::vector<std::string> labels = {});

    int size() const { return n_; }
    const std::vector<std::string>& parameters() const { return params_; }
    const std::vector<std::string>& labels() const { return labels_; }

    // Stores the terms at (i,j) and (j,i); dropping all terms clears the entry.
    void set_entry(int i, int j, std::vector<ParamTerm> terms);
    const std::vector<ParamTerm>& entry(int i, int j) const;

    // Stored upper-triangle entries (i <= j), ordered by (i,j).
    const std::map<std::pair<int, int>, std::vector<ParamTerm>>& upper_entries() const {
        return upper_;
    }

    friend bool operator==(const ParametricMatrix&, const ParametricMatrix&) = default;

private:
    void check_index(int i, int j) const;
    int n_;
    std::vector<std::string> params_;
    std::vector<std::string> labels_;
    std::map<std::pair<int, int>, std::vector<ParamTerm>> upper_;
};

// Entry-wise evaluation at a full parameter assignment. Every parameter of `m`
// must be assigned; extra assignments are ignored.
NumericMatrix evaluate(const ParametricMatrix& m, const Assignment& values, unsigned digits);

// Folds the given parameters into the constant term, leaving the rest symbolic.
ParametricMatrix bind_parameters(const ParametricMatrix& m,
                                 const std::map<std::string, double>& values);

// JSON model format:
//   {"n": int, "params": [names...], "labels": [names...]?,
//    "entries": [{"i": int, "j": int, "terms": [{"c": number, "p": name}...]}...]}
// Entries are listed for i <= j only and mirrored on load.
ParametricMatrix parse_model(const std::string& json_text);
std::string serialize_model(const ParametricMatrix& m);
ParametricMatrix load_model(const std::string& path);

// Built-in models. The 6x6 chain: diagonal j, coupling g at (1,2),(1,3),(2,3),(5,6);
// model_h adds the reducibility-breaking couplings c2*g at (1,4),(1,6). The 2x2
// model carries E1, E2 on the diagonal and coupling*g off it.
ParametricMatrix model_h0();
ParametricMatrix model_h(double c2);
ParametricMatrix model_hprime(double coupling);

} // namespace adjspec
