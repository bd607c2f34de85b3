#include "adjspec/adjacency.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace adjspec {

PatternMatrix::PatternMatrix(int n) : n_(n), bits_(static_cast<size_t>(n) * n, 0) {
    if (n < 1) throw input_error("pattern dimension must be positive");
}

void PatternMatrix::set(int i, int j, bool value) {
    if (i < 1 || i > n_ || j < 1 || j > n_)
        throw input_error("index (" + std::to_string(i) + "," + std::to_string(j) +
                          ") outside 1.." + std::to_string(n_));
    bits_[(i - 1) * n_ + (j - 1)] = value ? 1 : 0;
}

bool PatternMatrix::symmetric() const {
    for (int i = 1; i <= n_; ++i)
        for (int j = i + 1; j <= n_; ++j)
            if (at(i, j) != at(j, i)) return false;
    return true;
}

PatternMatrix pattern_of(const ParametricMatrix& m, double zero_tol) {
    if (zero_tol < 0) throw input_error("zero tolerance must be nonnegative");
    PatternMatrix p(m.size());
    for (const auto& [key, terms] : m.upper_entries()) {
        bool nonzero = std::any_of(terms.begin(), terms.end(), [&](const ParamTerm& t) {
            return std::abs(t.coefficient) > zero_tol;
        });
        if (nonzero) {
            p.set(key.first, key.second, true);
            p.set(key.second, key.first, true);
        }
    }
    return p;
}

PatternMatrix pattern_of(const NumericMatrix& m, double zero_tol) {
    if (zero_tol < 0) throw input_error("zero tolerance must be nonnegative");
    PatternMatrix p(m.size());
    const Real tol(zero_tol, m.digits());
    for (int i = 1; i <= m.size(); ++i)
        for (int j = 1; j <= m.size(); ++j)
            if (abs(m.at(i, j)) > tol) p.set(i, j, true);
    return p;
}

AccumulatedMatrix accumulate(const PatternMatrix& u) {
    const int n = u.size();
    std::vector<BigInt> base(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) base[i * n + j] = u.at(i + 1, j + 1) ? 1 : 0;

    AccumulatedMatrix a;
    a.n = n;
    a.counts = base; // walks of length 1
    std::vector<BigInt> power = base, next(static_cast<size_t>(n) * n);
    for (int len = 2; len <= n; ++len) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                BigInt s = 0;
                for (int k = 0; k < n; ++k) s += power[i * n + k] * base[k * n + j];
                next[i * n + j] = s;
            }
        power.swap(next);
        for (size_t idx = 0; idx < a.counts.size(); ++idx) a.counts[idx] += power[idx];
    }
    return a;
}

ComponentPartition components(const PatternMatrix& u) {
    if (!u.symmetric()) throw input_error("components requires a symmetric pattern");
    const int n = u.size();
    std::vector<int> owner(n, -1);
    ComponentPartition out;
    for (int i = 0; i < n; ++i) {
        if (owner[i] >= 0) continue;
        std::vector<int> stack{i}, members;
        owner[i] = static_cast<int>(out.sets.size());
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            members.push_back(v + 1);
            for (int w = 0; w < n; ++w)
                if (owner[w] < 0 && u.at(v + 1, w + 1)) {
                    owner[w] = owner[i];
                    stack.push_back(w);
                }
        }
        std::sort(members.begin(), members.end());
        out.sets.push_back(std::move(members));
    }
    return out;
}

std::pair<std::vector<int>, std::vector<ParametricMatrix>>
permute_to_blocks(const ParametricMatrix& m, const ComponentPartition& partition) {
    const int n = m.size();
    std::vector<int> set_of(n + 1, -1);
    int covered = 0;
    for (size_t s = 0; s < partition.sets.size(); ++s)
        for (int idx : partition.sets[s]) {
            if (idx < 1 || idx > n || set_of[idx] >= 0)
                throw input_error("invalid partition: index " + std::to_string(idx) +
                                  (idx >= 1 && idx <= n ? " listed twice" : " out of range"));
            set_of[idx] = static_cast<int>(s);
            ++covered;
        }
    if (covered != n) throw input_error("invalid partition: does not cover every index");
    for (const auto& [key, terms] : m.upper_entries())
        if (set_of[key.first] != set_of[key.second])
            throw input_error("invalid partition: entry (" + std::to_string(key.first) + "," +
                              std::to_string(key.second) + ") couples two sets");

    std::vector<int> permutation;
    for (const auto& set : partition.sets)
        permutation.insert(permutation.end(), set.begin(), set.end());

    std::vector<ParametricMatrix> blocks;
    for (const auto& set : partition.sets) {
        std::vector<std::string> labels;
        if (!m.labels().empty())
            for (int idx : set) labels.push_back(m.labels()[idx - 1]);
        ParametricMatrix block(static_cast<int>(set.size()), m.parameters(), std::move(labels));
        for (size_t bi = 0; bi < set.size(); ++bi)
            for (size_t bj = bi; bj < set.size(); ++bj) {
                const auto& terms = m.entry(set[bi], set[bj]);
                if (!terms.empty())
                    block.set_entry(static_cast<int>(bi) + 1, static_cast<int>(bj) + 1, terms);
            }
        blocks.push_back(std::move(block));
    }
    return {std::move(permutation), std::move(blocks)};
}

std::string to_dot(const PatternMatrix& u, const std::vector<std::string>& labels,
                   bool include_self_loops) {
    if (!labels.empty() && static_cast<int>(labels.size()) != u.size())
        throw input_error("expected " + std::to_string(u.size()) + " labels, got " +
                          std::to_string(labels.size()));
    std::ostringstream out;
    out << "graph coupling {\n";
    out << "  node [shape=circle];\n";
    for (int i = 1; i <= u.size(); ++i) {
        out << "  " << i;
        if (!labels.empty()) out << " [label=\"" << labels[i - 1] << "\"]";
        out << ";\n";
    }
    for (int i = 1; i <= u.size(); ++i)
        for (int j = i; j <= u.size(); ++j) {
            if (i == j && !include_self_loops) continue;
            if (u.at(i, j) || u.at(j, i)) out << "  " << i << " -- " << j << ";\n";
        }
    out << "}\n";
    return out.str();
}

std::string accumulated_to_json(const AccumulatedMatrix& a) {
    nlohmann::json doc;
    doc["n"] = a.n;
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 1; i <= a.n; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 1; j <= a.n; ++j) row.push_back(a.at(i, j).str());
        rows.push_back(std::move(row));
    }
    doc["counts"] = std::move(rows);
    return doc.dump(2) + "\n";
}

} // namespace adjspec
