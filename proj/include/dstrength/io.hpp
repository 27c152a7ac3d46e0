#pragma once

// State files, result JSON and CSV tables.
//
// State file layout:
//   {"dims": [dA, dB], "matrix": [[[re, im], ...], ...], "metadata": {"name": ..., "description": ...}}
// save_state writes a canonical form (fixed layout, shortest round-trip doubles), so
// save(load(f)) reproduces a canonical file byte for byte.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dstrength/core.hpp"
#include "dstrength/discrimination.hpp"
#include "dstrength/experiments.hpp"
#include "dstrength/measures.hpp"

namespace dstrength {

using Json = nlohmann::ordered_json;

struct StateFile {
    Eigen::Index dim_a = 2;
    Eigen::Index dim_b = 1;
    CMatrix matrix;
    std::string name;
    std::string description;
    bool has_metadata = false;

    BipartiteState state() const { return BipartiteState(DensityMatrix(matrix), dim_a, dim_b); }

    static StateFile from_state(const BipartiteState& s, std::string name = {}, std::string description = {}) {
        StateFile f;
        f.dim_a = s.dim_a();
        f.dim_b = s.dim_b();
        f.matrix = s.matrix();
        f.has_metadata = !name.empty() || !description.empty();
        f.name = std::move(name);
        f.description = std::move(description);
        return f;
    }
};

namespace detail {

inline std::string shortest(double x) {
    if (!std::isfinite(x)) throw ContractViolation("state files cannot hold non-finite numbers");
    if (x == 0.0) return "0";  // no "-0": it would not survive a parse
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

inline Eigen::Index read_dim(const Json& j) {
    if (!j.is_number_integer() || j.get<long long>() < 1) throw ParseError("dims entries must be positive integers");
    return static_cast<Eigen::Index>(j.get<long long>());
}

}  // namespace detail

/// Parses a state file; structural problems throw ParseError, physical ones
/// (trace, hermiticity, positivity, dims product) throw InvariantViolation.
inline StateFile parse_state(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("state file must be a JSON object");
    if (!doc.contains("dims") || !doc["dims"].is_array() || doc["dims"].size() != 2)
        throw ParseError("state file needs \"dims\": [dimA, dimB]");
    if (!doc.contains("matrix") || !doc["matrix"].is_array()) throw ParseError("state file needs a \"matrix\" array");
    StateFile f;
    f.dim_a = detail::read_dim(doc["dims"][0]);
    f.dim_b = detail::read_dim(doc["dims"][1]);
    const Json& rows = doc["matrix"];
    const auto n = static_cast<Eigen::Index>(rows.size());
    f.matrix.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Json& row = rows[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) throw ParseError("matrix must be square");
        for (Eigen::Index j = 0; j < n; ++j) {
            const Json& z = row[static_cast<std::size_t>(j)];
            if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number())
                throw ParseError("matrix entries must be [re, im] number pairs");
            f.matrix(i, j) = Complex(z[0].get<double>(), z[1].get<double>());
        }
    }
    if (doc.contains("metadata")) {
        const Json& m = doc["metadata"];
        if (!m.is_object()) throw ParseError("metadata must be an object");
        f.has_metadata = true;
        if (m.contains("name")) {
            if (!m["name"].is_string()) throw ParseError("metadata.name must be a string");
            f.name = m["name"].get<std::string>();
        }
        if (m.contains("description")) {
            if (!m["description"].is_string()) throw ParseError("metadata.description must be a string");
            f.description = m["description"].get<std::string>();
        }
    }
    if (f.dim_a * f.dim_b != n) throw InvariantViolation("dims product does not match the matrix size");
    (void)f.state();  // validates the density-matrix invariants
    return f;
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline StateFile load_state(const std::string& path) { return parse_state(read_text_file(path)); }

inline std::string format_state(const StateFile& f) {
    std::string out = "{\n  \"dims\": [" + std::to_string(f.dim_a) + ", " + std::to_string(f.dim_b) + "],\n";
    out += "  \"matrix\": [\n";
    for (Eigen::Index i = 0; i < f.matrix.rows(); ++i) {
        out += "    [";
        for (Eigen::Index j = 0; j < f.matrix.cols(); ++j) {
            if (j) out += ", ";
            out += "[" + detail::shortest(f.matrix(i, j).real()) + ", " + detail::shortest(f.matrix(i, j).imag()) + "]";
        }
        out += i + 1 < f.matrix.rows() ? "],\n" : "]\n";
    }
    out += "  ]";
    if (f.has_metadata) {
        out += ",\n  \"metadata\": {\"name\": " + Json(f.name).dump() +
               ", \"description\": " + Json(f.description).dump() + "}";
    }
    out += "\n}\n";
    return out;
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << text;
    if (!out) throw Error("failed writing " + path);
}

inline void save_state(const std::string& path, const StateFile& f) { write_text_file(path, format_state(f)); }

// ---------------------------------------------------------------------------
// result serialization

/// x rounded to 12 significant digits; non-finite values become null.
inline Json num(double x) {
    if (!std::isfinite(x)) return Json(nullptr);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return Json(std::stod(buf));
}

inline std::string csv_num(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

inline Json matrix_json(const CMatrix& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(Json::array({num(m(i, j).real()), num(m(i, j).imag())}));
        rows.push_back(row);
    }
    return rows;
}

inline Json to_json(const ChernoffResult& r) {
    return Json{{"q", num(r.q)}, {"s_star", num(r.s_star)}, {"xi", num(r.xi)}};
}

inline Json to_json(const MeasureResult& r) {
    Json spectrum = Json::array();
    for (double l : r.optimal_hamiltonian.spectrum().values()) spectrum.push_back(num(l));
    return Json{{"value", num(r.value)},
                {"method", std::string(to_string(r.method))},
                {"spectrum", spectrum},
                {"basis", matrix_json(r.optimal_hamiltonian.basis())},
                {"hamiltonian", matrix_json(r.optimal_hamiltonian.matrix())}};
}

inline Json to_json(const SweepPoint& p) {
    auto list = [](const std::vector<double>& v) {
        Json a = Json::array();
        for (double x : v) a.push_back(num(x));
        return a;
    };
    return Json{{"prob_angles", list(p.prob_angles)}, {"weights", list(p.weights)}, {"theta_u", list(p.theta_u)},
                {"phi_u", list(p.phi_u)},             {"theta_v", list(p.theta_v)}, {"phi_v", list(p.phi_v)},
                {"ds", num(p.ds)},                    {"ratio", num(p.ratio)}};
}

inline Json to_json(const SweepConfig& c) {
    return Json{{"n", c.n},
                {"prob_resolution", c.prob_resolution},
                {"theta_resolution", c.theta_resolution},
                {"phi_resolution", c.phi_resolution},
                {"lambda", num(c.lambda)},
                {"seed", c.seed},
                {"max_states", c.max_states},
                {"mode", c.mode == SweepMode::grid ? "grid" : "random"}};
}

inline Json to_json(const SweepResult& r) {
    Json edges = Json::array();
    for (double e : r.histogram.edges) edges.push_back(num(e));
    return Json{{"config", to_json(r.config)},
                {"best_value", num(r.best_value)},
                {"best_params", to_json(r.best_params)},
                {"states_evaluated", r.states_evaluated},
                {"grid_size", r.grid_size},
                {"truncated", r.truncated},
                {"histogram", Json{{"edges", edges}, {"counts", r.histogram.counts}}}};
}

inline Json to_json(const PropertyReport& r) {
    Json props = Json::array();
    for (const auto& p : r.properties)
        props.push_back(Json{{"name", p.name},
                             {"trials", p.trials},
                             {"passed", p.passed},
                             {"ok", p.ok()},
                             {"worst", num(p.worst)},
                             {"counterexamples", p.counterexamples}});
    return Json{{"seed", r.seed},
                {"trials", r.trials},
                {"lambda", num(r.lambda)},
                {"all_passed", r.all_passed()},
                {"properties", props}};
}

inline Json to_json(const DecayTable& t) {
    Json rows = Json::array();
    for (const auto& row : t.rows)
        rows.push_back(Json{{"n", row.n},
                            {"p_err", num(row.p_err)},
                            {"exponent", num(row.exponent)},
                            {"xi", num(row.xi)},
                            {"bound", num(row.bound)},
                            {"within_bound", row.within_bound}});
    return Json{{"chernoff", to_json(t.chernoff)}, {"bound_holds", t.bound_holds}, {"rows", rows}};
}

// ---------------------------------------------------------------------------
// CSV tables

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string str() const {
        std::string out;
        auto line = [&](const std::vector<std::string>& cells) {
            for (std::size_t k = 0; k < cells.size(); ++k) out += (k ? "," : "") + cells[k];
            out += '\n';
        };
        line(header);
        for (const auto& r : rows) line(r);
        return out;
    }
};

inline CsvTable histogram_csv(const Histogram& h) {
    CsvTable t{{"bin_lo", "bin_hi", "count"}, {}};
    for (std::size_t k = 0; k < h.counts.size(); ++k)
        t.rows.push_back({csv_num(h.edges[k]), csv_num(h.edges[k + 1]), std::to_string(h.counts[k])});
    return t;
}

inline CsvTable uniform_pqc_csv(const std::vector<UniformPqcRow>& rows) {
    CsvTable t{{"d", "ds", "ds_over_sin2"}, {}};
    for (const auto& r : rows) t.rows.push_back({std::to_string(r.d), csv_num(r.ds), csv_num(r.ratio)});
    return t;
}

inline CsvTable decay_csv(const DecayTable& table) {
    CsvTable t{{"n", "p_err", "exponent", "xi", "bound", "within_bound"}, {}};
    for (const auto& r : table.rows)
        t.rows.push_back({std::to_string(r.n), csv_num(r.p_err), csv_num(r.exponent), csv_num(r.xi), csv_num(r.bound),
                          r.within_bound ? "1" : "0"});
    return t;
}

inline CsvTable property_csv(const PropertyReport& report) {
    CsvTable t{{"property", "trials", "passed", "worst"}, {}};
    for (const auto& p : report.properties)
        t.rows.push_back({p.name, std::to_string(p.trials), std::to_string(p.passed), csv_num(p.worst)});
    return t;
}

}  // namespace dstrength
