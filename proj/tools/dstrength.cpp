// dstrength: command-line front end for the discriminating-strength library.
//
// Exit codes: 0 success, 2 unreadable/malformed input file, 3 state or property
// invariant violated, 4 invalid configuration or flags.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include "dstrength/dstrength.hpp"

namespace fs = std::filesystem;
using namespace dstrength;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitInvariant = 3;
constexpr int kExitConfig = 4;

std::string fmt12(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

std::vector<double> parse_list(const std::string& text, const char* what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw RangeError(std::string("cannot parse ") + what + " entry '" + item + "'");
        }
    }
    if (out.empty()) throw RangeError(std::string(what) + " list is empty");
    return out;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    for (double x : parse_list(text, "--d")) {
        if (x != std::floor(x) || x < 2) throw RangeError("--d entries must be integers >= 2");
        out.push_back(static_cast<int>(x));
    }
    return out;
}

struct SpectrumFlags {
    std::optional<double> lambda;
    std::string spectrum;

    void add(CLI::App* app) {
        app->add_option("--lambda", lambda, "rotation strength; spectrum {lambda, ..., -lambda}");
        app->add_option("--spectrum", spectrum, "comma-separated descending Hamiltonian spectrum");
    }

    Spectrum resolve(Eigen::Index dim_a) const {
        if (lambda && !spectrum.empty()) throw RangeError("give either --lambda or --spectrum, not both");
        if (lambda) return Spectrum::symmetric(dim_a, *lambda);
        if (spectrum.empty()) throw RangeError("one of --lambda or --spectrum is required");
        Spectrum s(parse_list(spectrum, "--spectrum"));
        if (s.size() != dim_a) throw RangeError("spectrum length must equal dimA");
        return s;
    }
};

struct OptimizerFlags {
    std::uint64_t seed = 0;
    int restarts = 20;

    void add(CLI::App* app) {
        app->add_option("--seed", seed, "optimizer seed");
        app->add_option("--restarts", restarts, "optimizer restarts")->check(CLI::PositiveNumber);
    }

    OptimizerOptions options() const {
        OptimizerOptions o;
        o.seed = seed;
        o.restarts = restarts;
        o.threads = threads_from_env();
        return o;
    }
};

void print_matrix(std::ostream& os, const CMatrix& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        os << "  ";
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            os << (j ? "  " : "") << fmt12(m(i, j).real()) << (m(i, j).imag() < 0 ? "" : "+") << fmt12(m(i, j).imag())
               << "i";
        os << '\n';
    }
}

void print_measure(const MeasureResult& r) {
    std::cout << "value: " << fmt12(r.value) << "\nmethod: " << to_string(r.method) << "\nspectrum:";
    for (double l : r.optimal_hamiltonian.spectrum().values()) std::cout << ' ' << fmt12(l);
    std::cout << "\nbasis:\n";
    print_matrix(std::cout, r.optimal_hamiltonian.basis());
}

/// The single pure vector of a rank-one state.
std::optional<PureState> as_pure(const BipartiteState& s) {
    if (s.rho().rank() != 1 || std::abs(s.rho().spectral().values(0) - 1.0) > 1e-9) return std::nullopt;
    return PureState::normalized(s.rho().spectral().vectors.col(0), s.dim_a(), s.dim_b());
}

DsResult run_ds(const BipartiteState& state, const Spectrum& spectrum, const std::string& method,
                const OptimizerOptions& opts) {
    if (method == "qubit") {
        if (state.dim_a() != 2) throw RangeError("--method qubit needs dimA = 2");
        return ds_general(state, spectrum, opts);
    }
    if (method == "pure") {
        const auto psi = as_pure(state);
        if (!psi) throw RangeError("--method pure needs a pure state");
        return ds_pure(*psi, spectrum);
    }
    if (method == "general") {
        OptimizerOptions o = opts;
        o.force_general = true;
        return ds_general(state, spectrum, o);
    }
    // auto: the tightest applicable closed form
    if (state.dim_a() == 2) return ds_general(state, spectrum, opts);
    if (state.dim_a() <= kMaxPermutationDim)
        if (const auto psi = as_pure(state)) return ds_pure(*psi, spectrum);
    return ds_general(state, spectrum, opts);
}

BipartiteState bell_state() {
    CVector v = CVector::Zero(4);
    v(0) = v(3) = 1.0;
    return PureState::normalized(v, 2, 2).bipartite();
}

void write_outputs(const fs::path& dir, const std::string& stem, const CsvTable& csv, const Json& json) {
    fs::create_directories(dir);
    const fs::path csv_path = dir / (stem + ".csv");
    const fs::path json_path = dir / (stem + ".json");
    write_text_file(csv_path.string(), csv.str());
    write_text_file(json_path.string(), json.dump(2) + "\n");
    std::cout << "wrote " << csv_path.string() << " " << json_path.string() << '\n';
}

void emit(bool as_json, const Json& j, const std::function<void()>& text) {
    if (as_json) std::cout << j.dump(2) << '\n';
    else text();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Discriminating strength of bipartite quantum states"};
    app.require_subcommand(1);
    int status = 0;

    // qcb
    std::string path0, path1;
    bool as_json = false;
    auto* qcb = app.add_subcommand("qcb", "quantum Chernoff overlap of two states");
    qcb->add_option("state0", path0)->required();
    qcb->add_option("state1", path1)->required();
    qcb->add_flag("--json", as_json);

    // ds / lqu
    std::string state_path, method = "auto";
    SpectrumFlags spectrum_flags;
    OptimizerFlags optimizer_flags;
    auto* ds = app.add_subcommand("ds", "discriminating strength of a state");
    ds->add_option("state", state_path)->required();
    spectrum_flags.add(ds);
    optimizer_flags.add(ds);
    ds->add_option("--method", method)->check(CLI::IsMember({"auto", "general", "pure", "qubit"}));
    ds->add_flag("--json", as_json);

    auto* lq = app.add_subcommand("lqu", "local quantum uncertainty of a state");
    lq->add_option("state", state_path)->required();
    spectrum_flags.add(lq);
    optimizer_flags.add(lq);
    lq->add_option("--method", method)->check(CLI::IsMember({"auto", "general", "qubit"}));
    lq->add_flag("--json", as_json);

    // helstrom
    int copies = 1;
    auto* hel = app.add_subcommand("helstrom", "minimum error probability for n copies");
    hel->add_option("state0", path0)->required();
    hel->add_option("state1", path1)->required();
    hel->add_option("--copies", copies)->check(CLI::PositiveNumber);
    hel->add_flag("--json", as_json);

    // experiment
    std::string experiment;
    SweepConfig sweep;
    int resolution = 0, prob_res = 0, theta_res = 0, phi_res = 0;
    std::string sweep_mode = "grid", d_list = "6,100,1000", out_dir = ".";
    double lambda = std::numbers::pi / 2;
    int n_max = 6, trials = 50;
    std::uint64_t seed = 0;
    auto* expt = app.add_subcommand("experiment", "run a numerical campaign and write CSV/JSON results");
    expt->add_option("name", experiment)
        ->required()
        ->check(CLI::IsMember({"separable-sweep", "uniform-pqc", "decay", "properties"}));
    expt->add_option("--n", sweep.n, "ensemble size for separable-sweep (2-4)");
    expt->add_option("--resolution", resolution, "grid points per angle");
    expt->add_option("--prob-resolution", prob_res);
    expt->add_option("--theta-resolution", theta_res);
    expt->add_option("--phi-resolution", phi_res);
    expt->add_option("--mode", sweep_mode)->check(CLI::IsMember({"grid", "random"}));
    expt->add_option("--max-states", sweep.max_states);
    expt->add_option("--lambda", lambda);
    expt->add_option("--seed", seed);
    expt->add_option("--d", d_list, "comma-separated d values for uniform-pqc");
    expt->add_option("--n-max", n_max, "largest copy number for decay");
    expt->add_option("--state", state_path, "state file for decay (default: b92)");
    expt->add_option("--trials", trials, "trials per property");
    expt->add_option("--out-dir", out_dir);

    // state
    std::string family, out_path, probs_text, qc_text;
    int uniform_d = 6;
    auto* st = app.add_subcommand("state", "write a state file for a named family");
    st->add_option("family", family)
        ->required()
        ->check(CLI::IsMember({"bell", "b92", "ew-gb92", "gb92", "qc", "uniform-pqc"}));
    st->add_option("--out", out_path)->required();
    st->add_option("--p", probs_text, "gb92 weights p0,p1,p2");
    st->add_option("--qc", qc_text, "qc parameters p,s0,s1,phi");
    st->add_option("--d", uniform_d, "uniform-pqc size");

    // rotate
    bool optimal = false;
    auto* rot = app.add_subcommand("rotate", "apply a local rotation exp(iH) on A to a state file");
    rot->add_option("state", state_path)->required();
    spectrum_flags.add(rot);
    rot->add_flag("--optimal", optimal, "use the DS-optimal Hamiltonian instead of the computational basis");
    rot->add_option("--out", out_path)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (qcb->parsed()) {
            const auto a = load_state(path0).state();
            const auto b = load_state(path1).state();
            const auto r = chernoff_overlap(a.rho(), b.rho());
            emit(as_json, to_json(r), [&] {
                std::cout << "Q: " << fmt12(r.q) << "\ns*: " << fmt12(r.s_star) << "\nxi: " << fmt12(r.xi) << '\n';
            });
        } else if (ds->parsed()) {
            const auto s = load_state(state_path).state();
            const auto r = run_ds(s, spectrum_flags.resolve(s.dim_a()), method, optimizer_flags.options());
            emit(as_json, to_json(r), [&] { print_measure(r); });
        } else if (lq->parsed()) {
            const auto s = load_state(state_path).state();
            OptimizerOptions o = optimizer_flags.options();
            if (method == "qubit" && s.dim_a() != 2) throw RangeError("--method qubit needs dimA = 2");
            o.force_general = method == "general";
            const auto r = lqu(s, spectrum_flags.resolve(s.dim_a()), o);
            emit(as_json, to_json(r), [&] { print_measure(r); });
        } else if (hel->parsed()) {
            const auto a = load_state(path0).state();
            const auto b = load_state(path1).state();
            const double p = helstrom_error(a.rho(), b.rho(), copies);
            emit(as_json, Json{{"copies", copies}, {"p_err", num(p)}},
                 [&] { std::cout << "P_err(" << copies << "): " << fmt12(p) << '\n'; });
        } else if (expt->parsed()) {
            const fs::path dir(out_dir);
            if (experiment == "separable-sweep") {
                const int base = resolution > 0 ? resolution : 9;
                sweep.prob_resolution = prob_res > 0 ? prob_res : base;
                sweep.theta_resolution = theta_res > 0 ? theta_res : base;
                sweep.phi_resolution = phi_res > 0 ? phi_res : base;
                sweep.mode = sweep_mode == "grid" ? SweepMode::grid : SweepMode::random;
                sweep.lambda = lambda;
                sweep.seed = seed;
                sweep.threads = threads_from_env();
                const SweepResult r = sweep_separable(sweep);
                write_outputs(dir, "sweep_n" + std::to_string(sweep.n), histogram_csv(r.histogram), to_json(r));
                std::cout << "separable-sweep N=" << sweep.n << " states=" << r.states_evaluated
                          << (r.truncated ? " (truncated)" : "") << " best=" << fmt12(r.best_value) << '\n';
            } else if (experiment == "uniform-pqc") {
                const auto rows = uniform_pqc_limit(parse_int_list(d_list), lambda);
                Json j = Json::array();
                for (const auto& row : rows) j.push_back(Json{{"d", row.d}, {"ds", num(row.ds)}, {"ratio", num(row.ratio)}});
                write_outputs(dir, "uniform_pqc", uniform_pqc_csv(rows), Json{{"lambda", num(lambda)}, {"rows", j}});
                std::cout << "uniform-pqc d=" << rows.back().d << " ds/sin^2=" << fmt12(rows.back().ratio) << '\n';
            } else if (experiment == "decay") {
                const BipartiteState s = state_path.empty() ? b92_state() : load_state(state_path).state();
                OptimizerOptions o;
                o.seed = seed;
                o.threads = threads_from_env();
                const DecayStudy study = decay_study(s, Spectrum::symmetric(s.dim_a(), lambda), n_max, o);
                write_outputs(dir, "decay", decay_csv(study.table),
                              Json{{"ds", to_json(study.ds)}, {"table", to_json(study.table)}});
                std::cout << "decay n_max=" << n_max << " xi=" << fmt12(study.table.chernoff.xi)
                          << " bound " << (study.table.bound_holds ? "holds" : "VIOLATED") << '\n';
                if (!study.table.bound_holds) status = kExitInvariant;
            } else {
                const PropertyReport r = property_suite(seed, trials, lambda);
                write_outputs(dir, "properties", property_csv(r), to_json(r));
                if (r.all_passed()) {
                    std::cout << "all properties passed\n";
                } else {
                    std::cout << "properties failed:";
                    for (const auto& p : r.properties)
                        if (!p.ok()) std::cout << ' ' << p.name;
                    std::cout << '\n';
                    status = kExitInvariant;
                }
            }
        } else if (st->parsed()) {
            std::optional<BipartiteState> s;
            std::string description;
            if (family == "bell") {
                s = bell_state();
                description = "(|00> + |11>)/sqrt(2)";
            } else if (family == "b92") {
                s = b92_state();
                description = "(|0><0| x |0><0| + |+><+| x |1><1|)/2";
            } else if (family == "ew-gb92") {
                s = gb92_state(1.0 / 3, 1.0 / 3, 1.0 / 3);
                description = "equal-weight |0>, |+>, |+i> with orthogonal flags on a qutrit";
            } else if (family == "gb92") {
                const auto p = parse_list(probs_text, "--p");
                if (p.size() != 3) throw RangeError("--p needs three weights");
                s = gb92_state(p[0], p[1], p[2]);
                description = "|0>, |+>, |+i> with weights " + probs_text;
            } else if (family == "qc") {
                const auto q = parse_list(qc_text, "--qc");
                if (q.size() != 4) throw RangeError("--qc needs p,s0,s1,phi");
                s = qc_qubit_qubit({q[0], q[1], q[2], q[3]});
                description = "quantum-classical qubit pair p,s0,s1,phi = " + qc_text;
            } else {
                s = uniform_pqc(uniform_d);
                description = "uniform pure quantum-classical state, d = " + std::to_string(uniform_d);
            }
            save_state(out_path, StateFile::from_state(*s, family, description));
            std::cout << "wrote " << out_path << '\n';
        } else if (rot->parsed()) {
            const StateFile in = load_state(state_path);
            const BipartiteState s = in.state();
            const Spectrum spectrum = spectrum_flags.resolve(s.dim_a());
            const LocalHamiltonian h = optimal ? run_ds(s, spectrum, "auto", OptimizerOptions{}).optimal_hamiltonian
                                               : LocalHamiltonian(spectrum, identity(s.dim_a()));
            const std::string name = in.name.empty() ? "state" : in.name;
            save_state(out_path, StateFile::from_state(rotate_local(s, h), name + "_rotated",
                                                       "local rotation exp(iH) on A applied to " + name));
            std::cout << "wrote " << out_path << '\n';
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitParse;
    } catch (const InvariantViolation& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvariant;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    return status;
}
