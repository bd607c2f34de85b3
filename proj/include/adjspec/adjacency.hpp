#pragma once

#include "adjspec/param_matrix.hpp"
#include "adjspec/real.hpp"

#include <string>
#include <utility>
#include <vector>

namespace adjspec {

// 0/1 structure of a square matrix; entry (i,j) marks a direct coupling.
class PatternMatrix {
public:
    explicit PatternMatrix(int n);

    int size() const { return n_; }
    bool at(int i, int j) const { return bits_[(i - 1) * n_ + (j - 1)] != 0; }
    void set(int i, int j, bool value);
    bool symmetric() const;

    friend bool operator==(const PatternMatrix&, const PatternMatrix&) = default;

private:
    int n_;
    std::vector<unsigned char> bits_;
};

// An entry is nonzero iff some term has |coefficient| > zero_tol.
PatternMatrix pattern_of(const ParametricMatrix& m, double zero_tol = 0.0);
// An entry is nonzero iff |value| > zero_tol.
PatternMatrix pattern_of(const NumericMatrix& m, double zero_tol = 0.0);

// counts(i,j) = number of walks of length 1..n from i to j in the pattern graph.
struct AccumulatedMatrix {
    int n = 0;
    std::vector<BigInt> counts; // row-major
    const BigInt& at(int i, int j) const { return counts[(i - 1) * n + (j - 1)]; }
};

AccumulatedMatrix accumulate(const PatternMatrix& u);

// Connected components of the undirected coupling graph, each listed in
// ascending index order, ordered by smallest member.
struct ComponentPartition {
    std::vector<std::vector<int>> sets;
    friend bool operator==(const ComponentPartition&, const ComponentPartition&) = default;
};

ComponentPartition components(const PatternMatrix& u); // error on asymmetric input

// Reorders indices so each partition set is contiguous. Returns the index list
// (new position -> original index) and the diagonal blocks in partition order.
// Errors if the partition is invalid or any stored entry couples two sets.
std::pair<std::vector<int>, std::vector<ParametricMatrix>>
permute_to_blocks(const ParametricMatrix& m, const ComponentPartition& partition);

// Undirected DOT graph of the pattern; nodes are 1..n or the given labels.
std::string to_dot(const PatternMatrix& u, const std::vector<std::string>& labels = {},
                   bool include_self_loops = false);

std::string accumulated_to_json(const AccumulatedMatrix& a);

} // namespace adjspec
