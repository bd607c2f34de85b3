#include "adjspec/flow.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace adjspec {

void SweepGrid::validate() const {
    if (parameter.empty()) throw input_error("sweep grid needs a parameter name");
    if (steps < 2) throw input_error("sweep grid needs at least 2 points");
    if (!(start < end)) throw input_error("sweep grid needs start < end");
    if (log_spacing && !(start > 0))
        throw input_error("logarithmic spacing needs start > 0");
}

Real SweepGrid::point(int k, unsigned digits) const {
    const Real s = at_precision(start, digits);
    const Real e = at_precision(end, digits);
    if (k <= 0) return s;
    if (k >= steps - 1) return e;
    const Real frac = Real(k, digits) / (steps - 1);
    if (log_spacing) return exp(log(s) + (log(e) - log(s)) * frac);
    return s + (e - s) * frac;
}

NumericMatrix MatrixFamily::at(const Real& coordinate, unsigned digits) const {
    Assignment values = fixed;
    values[sweep_parameter] =
        coordinate_map ? coordinate_map(coordinate, digits) : coordinate;
    return evaluate(matrix, values, digits);
}

int SpectralFlow::slot_of(int curve, int k) const {
    const auto& ids = curve_ids.at(k);
    auto it = std::find(ids.begin(), ids.end(), curve);
    if (it == ids.end()) throw input_error("unknown curve id " + std::to_string(curve));
    return static_cast<int>(it - ids.begin()) + 1;
}

const Real& SpectralFlow::value(int curve, int k) const {
    return systems.at(k).values[slot_of(curve, k) - 1];
}

namespace {

// Minimum-cost perfect assignment (Hungarian method with potentials, O(n^3)).
// Returns row -> column.
std::vector<int> assign_min_cost(const std::vector<std::vector<double>>& cost) {
    const int n = static_cast<int>(cost.size());
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<int> match(n + 1, 0), way(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        match[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, inf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const int i0 = match[j0];
            int j1 = 0;
            double delta = inf;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[match[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (match[j0] != 0);
        do {
            const int j1 = way[j0];
            match[j0] = match[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    std::vector<int> row_to_col(n);
    for (int j = 1; j <= n; ++j) row_to_col[match[j] - 1] = j - 1;
    return row_to_col;
}

std::vector<int> overlap_assignment(const EigenSystem& prev, const EigenSystem& cur) {
    const int n = prev.n;
    std::vector<std::vector<double>> cost(n, std::vector<double>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            Real dot(0, 16);
            for (int i = 0; i < n; ++i) dot += prev.vectors[a][i] * cur.vectors[b][i];
            cost[a][b] = -std::abs(dot.convert_to<double>());
        }
    return assign_min_cost(cost);
}

} // namespace

SpectralFlow sweep(const MatrixFamily& family, const SweepGrid& grid, unsigned digits,
                   int threads) {
    grid.validate();
    check_digits(digits);

    SpectralFlow flow;
    flow.grid = grid;
    flow.digits = digits;
    flow.points.reserve(grid.steps);
    for (int k = 0; k < grid.steps; ++k) flow.points.push_back(grid.point(k, digits));
    flow.systems.resize(grid.steps);

    int n_threads = threads <= 0 ? static_cast<int>(std::thread::hardware_concurrency()) : threads;
    n_threads = std::clamp(n_threads, 1, grid.steps);

    std::atomic<int> cursor{0};
    std::mutex error_lock;
    std::string input_msg, numeric_msg;
    auto worker = [&] {
        for (;;) {
            const int k = cursor.fetch_add(1);
            if (k >= grid.steps) return;
            try {
                flow.systems[k] = eig_sym(family.at(flow.points[k], digits), digits);
            } catch (const input_error& e) {
                std::lock_guard lock(error_lock);
                if (input_msg.empty())
                    input_msg = "at " + grid.parameter + " = " +
                                to_decimal(flow.points[k], digits) + ": " + e.what();
            } catch (const numeric_error& e) {
                std::lock_guard lock(error_lock);
                if (numeric_msg.empty())
                    numeric_msg = "at " + grid.parameter + " = " +
                                  to_decimal(flow.points[k], digits) + ": " + e.what();
            }
        }
    };
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (!input_msg.empty()) throw input_error(input_msg);
    if (!numeric_msg.empty()) throw numeric_error(numeric_msg);

    const int n = flow.systems.front().n;
    flow.curve_ids.resize(grid.steps);
    auto& first = flow.curve_ids.front();
    first.resize(n);
    for (int s = 0; s < n; ++s) first[s] = s + 1; // ids ordered by eigenvalue at the first point
    for (int k = 1; k < grid.steps; ++k) {
        const auto to_new = overlap_assignment(flow.systems[k - 1], flow.systems[k]);
        flow.curve_ids[k].resize(n);
        for (int s = 0; s < n; ++s) flow.curve_ids[k][to_new[s]] = flow.curve_ids[k - 1][s];
    }
    return flow;
}

SpectralFlow sweep(const ParametricMatrix& m, const SweepGrid& grid, const Assignment& fixed,
                   unsigned digits, int threads) {
    return sweep(MatrixFamily{m, grid.parameter, fixed, {}}, grid, digits, threads);
}

std::string to_string(DetectionKind k) {
    return k == DetectionKind::gap_minimum ? "gap_minimum" : "order_swap";
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::crossing: return "crossing";
        case Verdict::avoided: return "avoided";
        default: return "unresolved";
    }
}

std::vector<CrossingCandidate> detect_candidates(const SpectralFlow& flow,
                                                 const Real& gap_threshold) {
    if (flow.systems.empty()) throw input_error("cannot detect candidates on an empty flow");
    const int n = flow.curves();
    const int steps = static_cast<int>(flow.points.size());
    std::vector<CrossingCandidate> found;

    auto slot_gap = [&](int k, int slot) { // slot 1..n-1: gap to the next sorted value
        return flow.systems[k].values[slot] - flow.systems[k].values[slot - 1];
    };

    for (int slot = 1; slot < n; ++slot) {
        for (int k = 1; k + 1 < steps; ++k) {
            const Real gap = slot_gap(k, slot);
            if (!(gap < gap_threshold)) continue;
            if (!(slot_gap(k - 1, slot) > gap) || !(gap <= slot_gap(k + 1, slot))) continue;
            CrossingCandidate c;
            c.curve_a = flow.curve_ids[k][slot - 1];
            c.curve_b = flow.curve_ids[k][slot];
            if (c.curve_a > c.curve_b) std::swap(c.curve_a, c.curve_b);
            c.lower_slot = slot;
            c.g_lo = flow.points[k - 1];
            c.g_hi = flow.points[k + 1];
            c.gap = gap;
            c.kind = DetectionKind::gap_minimum;
            found.push_back(std::move(c));
        }
    }

    for (int k = 1; k < steps; ++k) {
        if (flow.curve_ids[k] == flow.curve_ids[k - 1]) continue;
        std::vector<int> prev_slot(n + 1), new_slot(n + 1);
        for (int s = 0; s < n; ++s) {
            prev_slot[flow.curve_ids[k - 1][s]] = s + 1;
            new_slot[flow.curve_ids[k][s]] = s + 1;
        }
        for (int a = 1; a <= n; ++a)
            for (int b = a + 1; b <= n; ++b) {
                if ((prev_slot[a] - prev_slot[b]) * (new_slot[a] - new_slot[b]) >= 0) continue;
                CrossingCandidate c;
                c.curve_a = a;
                c.curve_b = b;
                c.lower_slot = std::min(prev_slot[a], prev_slot[b]);
                c.g_lo = flow.points[k - 1];
                c.g_hi = flow.points[k];
                c.gap = std::min(slot_gap(k - 1, c.lower_slot), slot_gap(k, c.lower_slot));
                c.kind = DetectionKind::order_swap;
                found.push_back(std::move(c));
            }
    }

    // A true crossing triggers both detectors; fold same-pair overlapping
    // brackets into one candidate.
    std::sort(found.begin(), found.end(), [](const CrossingCandidate& x, const CrossingCandidate& y) {
        if (x.g_lo != y.g_lo) return x.g_lo < y.g_lo;
        return x.lower_slot < y.lower_slot;
    });
    std::vector<CrossingCandidate> merged;
    for (auto& c : found) {
        bool absorbed = false;
        for (auto& m : merged) {
            if (m.curve_a != c.curve_a || m.curve_b != c.curve_b) continue;
            if (c.g_lo > m.g_hi || m.g_lo > c.g_hi) continue;
            m.g_lo = std::min(m.g_lo, c.g_lo);
            m.g_hi = std::max(m.g_hi, c.g_hi);
            if (c.gap < m.gap) m.gap = c.gap;
            if (c.kind == DetectionKind::order_swap) {
                m.kind = DetectionKind::order_swap;
                m.lower_slot = c.lower_slot;
            }
            absorbed = true;
            break;
        }
        if (!absorbed) merged.push_back(std::move(c));
    }
    return merged;
}

namespace {

constexpr int golden_iteration_cap = 1000;

struct LevelResult {
    Real location, gap, width;
};

// Golden-section minimization of the slot gap over [a, b], shrinking the
// interval to width_target or until the iteration cap.
LevelResult minimize_gap(const MatrixFamily& family, int lower_slot, Real a, Real b,
                         unsigned digits, const Real& width_target) {
    auto gap_fn = [&](const Real& x) {
        const EigenSystem es = eig_sym(family.at(x, digits), digits);
        return es.values[lower_slot] - es.values[lower_slot - 1];
    };
    const Real invphi = (sqrt(Real(5, digits)) - 1) / 2;
    Real c = b - invphi * (b - a);
    Real d = a + invphi * (b - a);
    Real fc = gap_fn(c), fd = gap_fn(d);
    Real best_x = fc < fd ? c : d;
    Real best_gap = fc < fd ? fc : fd;
    for (int it = 0; it < golden_iteration_cap && b - a > width_target; ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = gap_fn(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = gap_fn(d);
        }
        const Real& f_new = fc < fd ? fc : fd;
        if (f_new < best_gap) {
            best_gap = f_new;
            best_x = fc < fd ? c : d;
        }
    }
    const Real mid = (a + b) / 2;
    const Real fmid = gap_fn(mid);
    if (fmid < best_gap) {
        best_gap = fmid;
        best_x = mid;
    }
    return {best_x, best_gap, b - a};
}

} // namespace

CrossingReport classify(const MatrixFamily& family, const CrossingCandidate& candidate,
                        const std::vector<unsigned>& ladder) {
    if (ladder.empty()) throw input_error("precision ladder must not be empty");
    for (size_t i = 0; i < ladder.size(); ++i) {
        check_digits(ladder[i]);
        if (i > 0 && ladder[i] <= ladder[i - 1])
            throw input_error("precision ladder must be strictly ascending");
    }
    if (!(candidate.g_lo < candidate.g_hi))
        throw input_error("candidate bracket must have g_lo < g_hi");

    CrossingReport report;
    report.candidate = candidate;

    Real lo = candidate.g_lo, hi = candidate.g_hi;
    LevelResult level{};
    for (unsigned digits : ladder) {
        Real a = at_precision(lo, digits);
        Real b = at_precision(hi, digits);
        // shrink well past 10^-(digits-10) relative so a vanishing gap is
        // sampled clearly below the crossing threshold
        const Real scale = std::max(Real(1, digits), Real(abs((a + b) / 2)));
        const Real width_target = pow10(-int(digits) + 10, digits) * scale / 10000;
        level = minimize_gap(family, candidate.lower_slot, a, b, digits, width_target);
        report.gap_per_level.emplace_back(digits, level.gap);
        // re-bracket around the minimum for the next level, padded against
        // comparison noise near the gap floor
        lo = std::max(at_precision(candidate.g_lo, digits), Real(level.location - 50 * level.width));
        hi = std::min(at_precision(candidate.g_hi, digits), Real(level.location + 50 * level.width));
    }

    report.location = level.location;
    const unsigned top = ladder.back();
    const EigenSystem es = eig_sym(family.at(report.location, top), top);
    report.energy =
        (es.values[candidate.lower_slot - 1] + es.values[candidate.lower_slot]) / 2;

    const Real original_width = candidate.g_hi - candidate.g_lo;
    const bool at_edge = report.location - candidate.g_lo < original_width / 1000 ||
                         candidate.g_hi - report.location < original_width / 1000;
    const Real top_gap = report.gap_per_level.back().second;
    if (at_edge) {
        report.verdict = Verdict::unresolved;
        report.note = "gap minimum sits at the bracket edge; no interior minimum found";
    } else if (top_gap < pow10(-int(top) + 10, top)) {
        report.verdict = Verdict::crossing;
    } else if (ladder.size() >= 2) {
        const Real prev_gap = report.gap_per_level[report.gap_per_level.size() - 2].second;
        if (top_gap > 0 && abs(prev_gap - top_gap) <= Real("0.01", top) * top_gap) {
            report.verdict = Verdict::avoided;
        } else {
            report.verdict = Verdict::unresolved;
            report.note = "minimal gap not stable across the top two precision levels";
        }
    } else {
        report.verdict = Verdict::unresolved;
        report.note = "gap above the crossing threshold and only one precision level given";
    }
    return report;
}

CrossingReport classify(const ParametricMatrix& m, const Assignment& fixed,
                        const std::string& parameter, const CrossingCandidate& candidate,
                        const std::vector<unsigned>& ladder) {
    return classify(MatrixFamily{m, parameter, fixed, {}}, candidate, ladder);
}

std::vector<Real> second_order_shifts(const ParametricMatrix& m, const Assignment& values,
                                      const std::vector<int>& block, unsigned digits) {
    check_digits(digits);
    const NumericMatrix M = evaluate(m, values, digits);
    const int n = M.size();
    std::vector<char> in_block(n + 1, 0);
    for (int i : block) {
        if (i < 1 || i > n) throw input_error("block index " + std::to_string(i) + " out of range");
        if (in_block[i]) throw input_error("block index " + std::to_string(i) + " listed twice");
        in_block[i] = 1;
    }

    const Real tiny = pow10(-int(digits) + 10, digits) * std::max(Real(1, digits), M.norm_max());
    for (size_t x = 0; x < block.size(); ++x)
        for (size_t y = x + 1; y < block.size(); ++y)
            if (abs(M.at(block[x], block[y])) > tiny)
                throw input_error("block states " + std::to_string(block[x]) + " and " +
                                  std::to_string(block[y]) +
                                  " are directly coupled; shifts need couplings only to the complement");

    std::vector<int> complement;
    for (int j = 1; j <= n; ++j)
        if (!in_block[j]) complement.push_back(j);

    // group block states of equal unperturbed energy
    std::vector<int> sorted_block(block);
    std::sort(sorted_block.begin(), sorted_block.end());
    std::vector<std::vector<int>> groups;
    for (int i : sorted_block) {
        bool placed = false;
        for (auto& g : groups)
            if (abs(M.at(g.front(), g.front()) - M.at(i, i)) <= tiny) {
                g.push_back(i);
                placed = true;
                break;
            }
        if (!placed) groups.push_back({i});
    }

    std::map<int, Real> shift_of;
    for (const auto& g : groups) {
        const Real e0 = M.at(g.front(), g.front());
        for (int a : g)
            for (int j : complement)
                if (abs(M.at(a, j)) > tiny && abs(e0 - M.at(j, j)) <= tiny)
                    throw numeric_error("vanishing energy denominator between states " +
                                        std::to_string(a) + " and " + std::to_string(j));
        if (g.size() == 1) {
            const int i = g.front();
            Real s(0, digits);
            for (int j : complement) {
                const Real& c = M.at(i, j);
                if (c == 0) continue;
                s += c * c / (e0 - M.at(j, j));
            }
            shift_of[i] = s;
        } else {
            NumericMatrix w(static_cast<int>(g.size()), digits);
            for (size_t x = 0; x < g.size(); ++x)
                for (size_t y = x; y < g.size(); ++y) {
                    Real s(0, digits);
                    for (int j : complement) {
                        const Real& ca = M.at(g[x], j);
                        const Real& cb = M.at(g[y], j);
                        if (ca == 0 || cb == 0) continue;
                        s += ca * cb / (e0 - M.at(j, j));
                    }
                    w.set(static_cast<int>(x) + 1, static_cast<int>(y) + 1, s);
                }
            const EigenSystem es = eig_sym(w, digits);
            for (size_t x = 0; x < g.size(); ++x) shift_of[g[x]] = es.values[x];
        }
    }

    std::vector<Real> out;
    out.reserve(block.size());
    for (int i : block) out.push_back(shift_of.at(i));
    return out;
}

std::string flow_to_csv(const SpectralFlow& flow) {
    std::ostringstream out;
    const int n = flow.curves();
    out << flow.grid.parameter;
    for (int c = 1; c <= n; ++c) out << ",curve_" << c;
    out << "\n";
    for (size_t k = 0; k < flow.points.size(); ++k) {
        out << to_decimal(flow.points[k], flow.digits);
        for (int c = 1; c <= n; ++c)
            out << "," << to_decimal(flow.value(c, static_cast<int>(k)), flow.digits);
        out << "\n";
    }
    return out.str();
}

std::string flow_to_json(const SpectralFlow& flow) {
    nlohmann::json doc;
    doc["parameter"] = flow.grid.parameter;
    doc["digits"] = flow.digits;
    nlohmann::json points = nlohmann::json::array();
    for (const auto& p : flow.points) points.push_back(to_decimal(p, flow.digits));
    doc["points"] = std::move(points);
    nlohmann::json curves = nlohmann::json::object();
    for (int c = 1; c <= flow.curves(); ++c) {
        nlohmann::json curve = nlohmann::json::array();
        for (size_t k = 0; k < flow.points.size(); ++k)
            curve.push_back(to_decimal(flow.value(c, static_cast<int>(k)), flow.digits));
        curves["curve_" + std::to_string(c)] = std::move(curve);
    }
    doc["curves"] = std::move(curves);
    return doc.dump(2) + "\n";
}

namespace {

nlohmann::json report_to_json(const CrossingReport& r, unsigned digits) {
    nlohmann::json doc;
    doc["curves"] = {r.candidate.curve_a, r.candidate.curve_b};
    doc["kind"] = to_string(r.candidate.kind);
    doc["bracket"] = {to_decimal(r.candidate.g_lo, digits), to_decimal(r.candidate.g_hi, digits)};
    doc["detected_gap"] = to_decimal(r.candidate.gap, digits);
    doc["location"] = to_decimal(r.location, digits);
    doc["energy"] = to_decimal(r.energy, digits);
    nlohmann::json gaps = nlohmann::json::array();
    for (const auto& [level_digits, gap] : r.gap_per_level)
        gaps.push_back({{"digits", level_digits}, {"gap", to_decimal(gap, level_digits)}});
    doc["gaps"] = std::move(gaps);
    doc["verdict"] = to_string(r.verdict);
    if (!r.note.empty()) doc["note"] = r.note;
    return doc;
}

} // namespace

std::string reports_to_json(const std::vector<CrossingReport>& reports, unsigned digits) {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& r : reports) list.push_back(report_to_json(r, digits));
    nlohmann::json doc;
    doc["reports"] = std::move(list);
    return doc.dump(2) + "\n";
}

std::string reports_to_csv(const std::vector<CrossingReport>& reports, unsigned digits) {
    std::ostringstream out;
    out << "location,energy,curve_a,curve_b,kind,verdict,top_gap\n";
    for (const auto& r : reports) {
        out << to_decimal(r.location, digits) << "," << to_decimal(r.energy, digits) << ","
            << r.candidate.curve_a << "," << r.candidate.curve_b << ","
            << to_string(r.candidate.kind) << "," << to_string(r.verdict) << ","
            << to_decimal(r.gap_per_level.back().second, digits) << "\n";
    }
    return out.str();
}

} // namespace adjspec
