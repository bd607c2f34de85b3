#include "adjspec/param_matrix.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace adjspec {

NumericMatrix::NumericMatrix(int n, unsigned digits)
    : n_(n), digits_(check_digits(digits)), data_(static_cast<size_t>(n) * n, Real(0, digits)) {
    if (n < 1) throw input_error("matrix dimension must be positive");
}

int NumericMatrix::index(int i, int j) const {
    if (i < 1 || i > n_ || j < 1 || j > n_)
        throw input_error("index (" + std::to_string(i) + "," + std::to_string(j) +
                          ") outside 1.." + std::to_string(n_));
    return (i - 1) * n_ + (j - 1);
}

void NumericMatrix::set(int i, int j, const Real& v) {
    data_[index(i, j)] = v;
    data_[index(j, i)] = v;
}

Real NumericMatrix::norm_frobenius() const {
    Real s(0, digits_);
    for (const Real& v : data_) s += v * v;
    return sqrt(s);
}

Real NumericMatrix::norm_max() const {
    Real m(0, digits_);
    for (const Real& v : data_)
        if (abs(v) > m) m = abs(v);
    return m;
}

ParametricMatrix::ParametricMatrix(int n, std::vector<std::string> parameters,
                                   std::vector<std::string> labels)
    : n_(n), params_(std::move(parameters)), labels_(std::move(labels)) {
    if (n < 1) throw input_error("matrix dimension must be positive");
    std::set<std::string> seen;
    for (const auto& p : params_) {
        if (p.empty() || p == constant_parameter)
            throw input_error("invalid parameter name '" + p + "'");
        if (!seen.insert(p).second) throw input_error("duplicate parameter name '" + p + "'");
    }
    if (!labels_.empty() && static_cast<int>(labels_.size()) != n)
        throw input_error("expected " + std::to_string(n) + " labels, got " +
                          std::to_string(labels_.size()));
}

void ParametricMatrix::check_index(int i, int j) const {
    if (i < 1 || i > n_ || j < 1 || j > n_)
        throw input_error("index (" + std::to_string(i) + "," + std::to_string(j) +
                          ") outside 1.." + std::to_string(n_));
}

void ParametricMatrix::set_entry(int i, int j, std::vector<ParamTerm> terms) {
    check_index(i, j);
    for (const auto& t : terms) {
        if (t.parameter == constant_parameter) continue;
        if (std::find(params_.begin(), params_.end(), t.parameter) == params_.end())
            throw input_error("unknown parameter '" + t.parameter + "' in entry (" +
                              std::to_string(i) + "," + std::to_string(j) + ")");
    }
    auto key = std::minmax(i, j);
    if (terms.empty())
        upper_.erase(key);
    else
        upper_[key] = std::move(terms);
}

const std::vector<ParamTerm>& ParametricMatrix::entry(int i, int j) const {
    static const std::vector<ParamTerm> empty;
    check_index(i, j);
    auto it = upper_.find(std::minmax(i, j));
    return it == upper_.end() ? empty : it->second;
}

NumericMatrix evaluate(const ParametricMatrix& m, const Assignment& values, unsigned digits) {
    check_digits(digits);
    for (const auto& p : m.parameters())
        if (!values.contains(p)) throw input_error("missing value for parameter '" + p + "'");
    NumericMatrix out(m.size(), digits);
    const Real one(1, digits);
    for (const auto& [key, terms] : m.upper_entries()) {
        Real v(0, digits);
        for (const auto& t : terms) {
            const Real& pv = t.parameter == constant_parameter ? one : values.at(t.parameter);
            v += Real(t.coefficient, digits) * pv;
        }
        out.set(key.first, key.second, v);
    }
    return out;
}

ParametricMatrix bind_parameters(const ParametricMatrix& m,
                                 const std::map<std::string, double>& values) {
    std::vector<std::string> remaining;
    for (const auto& p : m.parameters()) {
        if (!values.contains(p)) remaining.push_back(p);
    }
    ParametricMatrix out(m.size(), remaining, m.labels());
    for (const auto& [key, terms] : m.upper_entries()) {
        double constant = 0.0;
        std::vector<ParamTerm> kept;
        for (const auto& t : terms) {
            if (t.parameter == constant_parameter)
                constant += t.coefficient;
            else if (auto it = values.find(t.parameter); it != values.end())
                constant += t.coefficient * it->second;
            else
                kept.push_back(t);
        }
        if (constant != 0.0) kept.push_back({constant, constant_parameter});
        out.set_entry(key.first, key.second, std::move(kept));
    }
    return out;
}

namespace {

using nlohmann::json;

ParametricMatrix from_json(const json& doc) {
    if (!doc.is_object()) throw input_error("model file: top level must be an object");
    for (const auto& field : {"n", "params", "entries"})
        if (!doc.contains(field))
            throw input_error(std::string("model file: missing field '") + field + "'");
    const int n = doc.at("n").get<int>();
    std::vector<std::string> params = doc.at("params").get<std::vector<std::string>>();
    std::vector<std::string> labels;
    if (doc.contains("labels")) labels = doc.at("labels").get<std::vector<std::string>>();
    ParametricMatrix m(n, std::move(params), std::move(labels));
    std::set<std::pair<int, int>> seen;
    for (const auto& e : doc.at("entries")) {
        const int i = e.at("i").get<int>();
        const int j = e.at("j").get<int>();
        if (i > j)
            throw input_error("model file: entry (" + std::to_string(i) + "," +
                              std::to_string(j) + ") below the diagonal; list entries for i <= j");
        if (!seen.insert({i, j}).second)
            throw input_error("model file: duplicate entry (" + std::to_string(i) + "," +
                              std::to_string(j) + ")");
        std::vector<ParamTerm> terms;
        for (const auto& t : e.at("terms"))
            terms.push_back({t.at("c").get<double>(), t.at("p").get<std::string>()});
        m.set_entry(i, j, std::move(terms));
    }
    return m;
}

} // namespace

ParametricMatrix parse_model(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw input_error(std::string("model file: ") + e.what());
    }
    try {
        return from_json(doc);
    } catch (const json::exception& e) {
        throw input_error(std::string("model file: ") + e.what());
    }
}

std::string serialize_model(const ParametricMatrix& m) {
    json doc;
    doc["n"] = m.size();
    doc["params"] = m.parameters();
    if (!m.labels().empty()) doc["labels"] = m.labels();
    json entries = json::array();
    for (const auto& [key, terms] : m.upper_entries()) {
        json e;
        e["i"] = key.first;
        e["j"] = key.second;
        json ts = json::array();
        for (const auto& t : terms) ts.push_back({{"c", t.coefficient}, {"p", t.parameter}});
        e["terms"] = std::move(ts);
        entries.push_back(std::move(e));
    }
    doc["entries"] = std::move(entries);
    return doc.dump(2) + "\n";
}

ParametricMatrix load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open model file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_model(buf.str());
}

ParametricMatrix model_h0() {
    ParametricMatrix m(6, {"g"});
    for (int j = 1; j <= 6; ++j) m.set_entry(j, j, {{double(j), constant_parameter}});
    for (auto [i, j] : {std::pair{1, 2}, {1, 3}, {2, 3}, {5, 6}})
        m.set_entry(i, j, {{1.0, "g"}});
    return m;
}

ParametricMatrix model_h(double c2) {
    ParametricMatrix m = model_h0();
    m.set_entry(1, 4, {{c2, "g"}});
    m.set_entry(1, 6, {{c2, "g"}});
    return m;
}

ParametricMatrix model_hprime(double coupling) {
    ParametricMatrix m(2, {"E1", "E2", "g"});
    m.set_entry(1, 1, {{1.0, "E1"}});
    m.set_entry(2, 2, {{1.0, "E2"}});
    m.set_entry(1, 2, {{coupling, "g"}});
    return m;
}

} // namespace adjspec
