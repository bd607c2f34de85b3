#include "adjspec/adjacency.hpp"
#include "adjspec/eig.hpp"
#include "adjspec/flow.hpp"
#include "adjspec/hydrogen.hpp"
#include "adjspec/param_matrix.hpp"
#include "adjspec/real.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <string>
#include <vector>

namespace py = pybind11;
using namespace adjspec;

namespace {

// Values cross the boundary as decimal strings so no precision is lost in a
// double round-trip; results come back the same way.
Assignment realize(const std::map<std::string, std::string>& values, unsigned digits) {
    Assignment out;
    for (const auto& [name, text] : values) out[name] = make_real(text, digits);
    return out;
}

py::object big(const BigInt& v) {
    const std::string text = v.str();
    return py::reinterpret_steal<py::object>(PyLong_FromString(text.c_str(), nullptr, 10));
}

std::vector<std::vector<bool>> pattern_rows(const PatternMatrix& u) {
    std::vector<std::vector<bool>> rows(u.size(), std::vector<bool>(u.size(), false));
    for (int i = 1; i <= u.size(); ++i)
        for (int j = 1; j <= u.size(); ++j) rows[i - 1][j - 1] = u.at(i, j);
    return rows;
}

py::list count_rows(const AccumulatedMatrix& a) {
    py::list rows;
    for (int i = 1; i <= a.n; ++i) {
        py::list row;
        for (int j = 1; j <= a.n; ++j) row.append(big(a.at(i, j)));
        rows.append(row);
    }
    return rows;
}

std::vector<std::string> decimals(const std::vector<Real>& values, unsigned digits) {
    std::vector<std::string> out;
    out.reserve(values.size());
    for (const Real& v : values) out.push_back(to_decimal(v, digits));
    return out;
}

SweepGrid grid_of(const std::string& parameter, const std::string& start,
                  const std::string& end, int steps, bool log_spacing, unsigned digits) {
    SweepGrid grid{parameter, make_real(start, digits), make_real(end, digits), steps,
                   log_spacing};
    grid.validate();
    return grid;
}

std::string classify_to_json(const ParametricMatrix& m, const std::string& parameter,
                             const std::string& start, const std::string& end, int steps,
                             bool log_spacing, const std::map<std::string, std::string>& fixed,
                             unsigned digits, const std::vector<unsigned>& ladder,
                             const std::string& threshold, int threads) {
    if (ladder.empty()) throw input_error("empty precision ladder");
    const SweepGrid grid = grid_of(parameter, start, end, steps, log_spacing, digits);
    const unsigned anchor = std::max(digits, ladder.back());
    const Assignment fixed_top = realize(fixed, anchor);
    const SpectralFlow flow = sweep(m, grid, fixed_top, digits, threads);
    const auto candidates = detect_candidates(flow, make_real(threshold, digits));
    const MatrixFamily family{m, parameter, fixed_top, {}};
    std::vector<CrossingReport> reports;
    reports.reserve(candidates.size());
    for (const auto& c : candidates) reports.push_back(classify(family, c, ladder));
    return reports_to_json(reports, ladder.back());
}

std::string hydrogen_classify_to_json(const std::string& rho_min, const std::string& rho_max,
                                      int steps, unsigned digits,
                                      const std::vector<unsigned>& ladder,
                                      const std::string& threshold, int threads) {
    if (ladder.empty()) throw input_error("empty precision ladder");
    const HydrogenConstants constants;
    const SweepGrid grid = grid_of("rho", rho_min, rho_max, steps, true, digits);
    const SpectralFlow flow = potential_curves(grid, constants, digits, threads);
    const auto candidates = detect_candidates(flow, make_real(threshold, digits));
    const MatrixFamily family = hydrogen_family(constants, ladder.back());
    std::vector<CrossingReport> reports;
    reports.reserve(candidates.size());
    for (const auto& c : candidates) reports.push_back(classify(family, c, ladder));
    return reports_to_json(reports, ladder.back());
}

} // namespace

PYBIND11_MODULE(_core, mod) {
    mod.doc() = "Irreducible-block decomposition and level-crossing classification for "
                "parameter-dependent symmetric matrices";

    py::register_exception<input_error>(mod, "InputError");
    py::register_exception<numeric_error>(mod, "NumericError");

    py::class_<ParametricMatrix>(mod, "ParametricMatrix")
        .def_property_readonly("size", &ParametricMatrix::size)
        .def_property_readonly("parameters", &ParametricMatrix::parameters)
        .def_property_readonly("labels", &ParametricMatrix::labels)
        .def("__eq__", [](const ParametricMatrix& a, const ParametricMatrix& b) { return a == b; },
             py::is_operator())
        .def("__repr__", [](const ParametricMatrix& m) {
            return "<ParametricMatrix " + std::to_string(m.size()) + "x" +
                   std::to_string(m.size()) + ">";
        });

    mod.def("model_h0", &model_h0, "6x6 chain with decoupled blocks");
    mod.def("model_h", &model_h, py::arg("c2") = 0.3,
            "6x6 chain with the block-linking couplings c2*g");
    mod.def("model_hprime", &model_hprime, py::arg("coupling") = 1.0,
            "two-level model with E1, E2 and a linear coupling");
    mod.def("subspace_one_model", [] { return build_subspace_one(); },
            "12x12 hydrogen subspace-one matrix over the coupling strength V");

    mod.def("parse_model", &parse_model, py::arg("json_text"));
    mod.def("serialize_model", &serialize_model, py::arg("model"));
    mod.def("load_model", &load_model, py::arg("path"));

    mod.def("pattern", [](const ParametricMatrix& m) { return pattern_rows(pattern_of(m)); },
            py::arg("model"), "0/1 coupling structure as nested lists");
    mod.def("component_sets",
            [](const ParametricMatrix& m) { return components(pattern_of(m)).sets; },
            py::arg("model"), "indices of the irreducible blocks, 1-based");
    mod.def("accumulated_counts",
            [](const ParametricMatrix& m) { return count_rows(accumulate(pattern_of(m))); },
            py::arg("model"), "walk counts U + U^2 + ... + U^n as exact integers");
    mod.def("to_dot",
            [](const ParametricMatrix& m, bool self_loops) {
                return to_dot(pattern_of(m), m.labels(), self_loops);
            },
            py::arg("model"), py::arg("self_loops") = false);

    mod.def("eigenvalues",
            [](const ParametricMatrix& m, const std::map<std::string, std::string>& values,
               unsigned digits) {
                const EigenSystem sys = eig_sym(evaluate(m, realize(values, digits), digits),
                                                digits);
                return decimals(sys.values, digits);
            },
            py::arg("model"), py::arg("values"), py::arg("digits") = 16,
            "ascending eigenvalues as decimal strings");

    mod.def("sweep_csv",
            [](const ParametricMatrix& m, const std::string& parameter, const std::string& start,
               const std::string& end, int steps, bool log_spacing,
               const std::map<std::string, std::string>& fixed, unsigned digits, int threads) {
                const SweepGrid grid = grid_of(parameter, start, end, steps, log_spacing, digits);
                return flow_to_csv(sweep(m, grid, realize(fixed, digits), digits, threads));
            },
            py::arg("model"), py::arg("parameter"), py::arg("start"), py::arg("end"),
            py::arg("steps"), py::arg("log_spacing") = false,
            py::arg("fixed") = std::map<std::string, std::string>{}, py::arg("digits") = 16,
            py::arg("threads") = 1);

    mod.def("crossings_json", &classify_to_json, py::arg("model"), py::arg("parameter"),
            py::arg("start"), py::arg("end"), py::arg("steps"), py::arg("log_spacing") = false,
            py::arg("fixed") = std::map<std::string, std::string>{}, py::arg("digits") = 16,
            py::arg("ladder") = std::vector<unsigned>{16, 50, 128},
            py::arg("threshold") = "0.25", py::arg("threads") = 1,
            "detect and classify crossing candidates; returns the report JSON");

    mod.def("second_order_shifts",
            [](const ParametricMatrix& m, const std::map<std::string, std::string>& values,
               const std::vector<int>& block, unsigned digits) {
                return decimals(second_order_shifts(m, realize(values, digits), block, digits),
                                digits);
            },
            py::arg("model"), py::arg("values"), py::arg("block"), py::arg("digits") = 16);

    mod.def("hydrogen_state_labels", [] {
        std::vector<std::string> labels;
        for (const auto& s : fz0_states()) labels.push_back(s.label());
        return labels;
    });
    mod.def("hydrogen_pattern", [] { return pattern_rows(fz0_adjacency()); });
    mod.def("hydrogen_component_sets", [] { return components(fz0_adjacency()).sets; });
    mod.def("hydrogen_dot", [](bool self_loops) {
        std::vector<std::string> labels;
        for (const auto& s : fz0_states()) labels.push_back(s.label());
        return to_dot(fz0_adjacency(), labels, self_loops);
    },
            py::arg("self_loops") = false);
    mod.def("vdw_strength_mhz",
            [](const std::string& rho, unsigned digits) {
                return to_decimal(vdw_strength(make_real(rho, digits), HydrogenConstants{},
                                               digits),
                                  digits);
            },
            py::arg("rho"), py::arg("digits") = 16, "coupling strength at separation rho (bohr)");
    mod.def("hydrogen_curves_csv",
            [](const std::string& rho_min, const std::string& rho_max, int steps, unsigned digits,
               int threads) {
                const SweepGrid grid = grid_of("rho", rho_min, rho_max, steps, true, digits);
                return flow_to_csv(potential_curves(grid, HydrogenConstants{}, digits, threads));
            },
            py::arg("rho_min") = "100", py::arg("rho_max") = "10000", py::arg("steps") = 200,
            py::arg("digits") = 16, py::arg("threads") = 1);
    mod.def("hydrogen_crossings_json", &hydrogen_classify_to_json, py::arg("rho_min") = "100",
            py::arg("rho_max") = "10000", py::arg("steps") = 200, py::arg("digits") = 16,
            py::arg("ladder") = std::vector<unsigned>{16, 50, 128},
            py::arg("threshold") = "0.25", py::arg("threads") = 1);
}
