#include "iontrotter/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <Eigen/Eigenvalues>

#include "CLI11.hpp"
#include "iontrotter/io.hpp"
#include "iontrotter/jordan_wigner.hpp"
#include "iontrotter/simulator.hpp"
#include "iontrotter/trotter.hpp"

namespace iontrotter {

using nlohmann::json;

namespace {

cplx complex_value(const json& v) {
    if (v.is_number()) return {v.get<double>(), 0.0};
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
        return {v[0].get<double>(), v[1].get<double>()};
    }
    throw std::invalid_argument("expected a number or [re, im], got " + v.dump());
}

std::vector<cplx> complex_list(const json& j, const char* key) {
    if (!j.contains(key)) return {};
    if (!j[key].is_array()) throw std::invalid_argument(std::string("'") + key + "' must be an array");
    std::vector<cplx> out;
    for (const auto& v : j[key]) out.push_back(complex_value(v));
    return out;
}

Hamiltonian chemistry_from_file(const std::string& path) {
    const json j = read_json_file(path);
    if (!j.contains("h_pq") || !j["h_pq"].is_array()) throw std::invalid_argument("integrals need 'h_pq'");
    const auto n = static_cast<Eigen::Index>(j["h_pq"].size());
    Eigen::MatrixXcd h(n, n);
    for (Eigen::Index p = 0; p < n; ++p) {
        const json& row = j["h_pq"][static_cast<std::size_t>(p)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
            throw std::invalid_argument("'h_pq' must be a square matrix");
        }
        for (Eigen::Index q = 0; q < n; ++q) h(p, q) = complex_value(row[static_cast<std::size_t>(q)]);
    }
    return build_chemistry(h, complex_list(j, "h_pqrs"));
}

Hamiltonian field_from_file(const std::string& path) {
    const json j = read_json_file(path);
    for (const char* key : {"n_fermion", "n_antifermion", "n_boson"}) {
        if (!j.contains(key) || !j[key].is_number_integer()) {
            throw std::invalid_argument(std::string("couplings need integer '") + key + "'");
        }
    }
    FieldCouplings c;
    c.fermion_fermion = complex_list(j, "fermion_fermion");
    c.pair_creation = complex_list(j, "pair_creation");
    c.pair_annihilation = complex_list(j, "pair_annihilation");
    c.antifermion = complex_list(j, "antifermion");
    const double g = j.contains("g") ? j["g"].get<double>() : 1.0;
    return build_discretized_field_theory(j["n_fermion"], j["n_antifermion"], j["n_boson"], g, c);
}

std::size_t dimension_limit() {
    if (const char* env = std::getenv("IONTROTTER_DIMENSION_LIMIT")) {
        try {
            return static_cast<std::size_t>(std::stoull(env));
        } catch (const std::exception&) {
            throw std::invalid_argument("IONTROTTER_DIMENSION_LIMIT must be a positive integer");
        }
    }
    return kDefaultDimensionLimit;
}

// Options shared by every subcommand. `bindings` records how to read each
// option from the JSON config when the flag itself was not given.
struct Binding {
    CLI::Option* option;
    std::string key;
    std::function<void(const json&)> assign;
};

class Options {
public:
    Options(CLI::App& app, JobConfig& cfg) : cfg_(cfg) {
        add(app, "--model", "model", cfg.model, "hubbard | holstein | chemistry | field | file")
            ->check(CLI::IsMember({"hubbard", "holstein", "chemistry", "field", "file"}));
        add(app, "--rows", "rows", cfg.rows, "lattice rows")->check(CLI::PositiveNumber);
        add(app, "--cols", "cols", cfg.cols, "lattice columns")->check(CLI::PositiveNumber);
        add(app, "--sites", "sites", cfg.sites, "chain sites")->check(CLI::PositiveNumber);
        add(app, "--w", "w", cfg.w, "Hubbard hopping");
        add(app, "--U", "U", cfg.U, "Hubbard onsite energy");
        add(app, "--hop", "hop", cfg.h, "Holstein hopping");
        add(app, "--g", "g", cfg.g, "Holstein coupling");
        add(app, "--omega", "omega", cfg.omega, "Holstein mode frequency");
        add(app, "--hamiltonian", "hamiltonian", cfg.hamiltonian, "Hamiltonian file (model=file)");
        add(app, "--integrals", "integrals", cfg.integrals, "integral file (model=chemistry)");
        add(app, "--couplings", "couplings", cfg.couplings, "coupling file (model=field)");
        add(app, "--sequence", "sequence", cfg.sequence, "gate-sequence file");
        add(app, "--t", "t", cfg.t, "evolution time");
        add(app, "--steps", "steps", cfg.steps, "Trotter steps")->check(CLI::PositiveNumber);
        add(app, "--order", "order", cfg.order, "product formula order")->check(CLI::IsMember({1, 2}));
        add(app, "--backend", "backend", backend_, "ms | umq | cnot")
            ->check(CLI::IsMember({"ms", "umq", "cnot"}));
        add(app, "--cutoff", "cutoff", cfg.cutoff, "max phonon number per mode")->check(CLI::NonNegativeNumber);
        add(app, "--scaling", "scaling", scaling_, "ion-number scaling of gate times")
            ->check(CLI::IsMember({"on", "off"}));
        add(app, "--ions", "ions", ions_, "ions in the chain")->check(CLI::PositiveNumber);
        add(app, "--t-ms", "t_ms", cfg.timing.t_ms_2ion, "two-ion MS time (us)");
        add(app, "--t-local", "t_local", cfg.timing.t_local, "single-ion gate time (us)");
        add(app, "--t-sideband", "t_sideband", cfg.timing.t_sideband_2ion, "sideband gate time (us)");
        add(app, "--speedup", "speedup", cfg.timing.resonant_speedup, "resonant gate speedup");
        add(app, "--overhead", "overhead", cfg.timing.resonant_overhead, "time added per resonant gate (us)");
        add(app, "--gate-error", "gate_error", cfg.timing.per_gate_error, "error per entangling gate");
        add(app, "--out", "out", cfg.out, "output file");
        add(app, "--format", "format", cfg.format, "text | csv | json")
            ->check(CLI::IsMember({"text", "csv", "json"}));
        app.add_option("--config", config_path_, "JSON file with any of the options above");
    }

    // Fills unset options from the config file, then derived fields.
    void finish() {
        if (!config_path_.empty()) {
            const json j = read_json_file(config_path_);
            if (!j.is_object()) throw std::invalid_argument("config file must hold a JSON object");
            for (const auto& [key, value] : j.items()) {
                auto it = std::find_if(bindings_.begin(), bindings_.end(),
                                       [&](const Binding& b) { return b.key == key; });
                if (it == bindings_.end()) throw std::invalid_argument("unknown config key '" + key + "'");
                if (it->option->count() > 0) continue;
                try {
                    it->assign(value);
                } catch (const json::exception&) {
                    throw std::invalid_argument("config key '" + key + "' has the wrong type");
                }
            }
        }
        cfg_.backend = parse_backend(backend_);
        if (scaling_ != "on" && scaling_ != "off") throw std::invalid_argument("scaling must be on or off");
        cfg_.scaling = scaling_ == "on";
        cfg_.timing.ms_scaling = cfg_.timing.sideband_scaling = cfg_.scaling;
        if (ions_ > 0) cfg_.ions = ions_;
        if (cfg_.steps < 1) throw std::invalid_argument("steps must be positive");
        if (cfg_.order != 1 && cfg_.order != 2) throw std::invalid_argument("order must be 1 or 2");
        if (cfg_.cutoff < 0) throw std::invalid_argument("cutoff must be non-negative");
        if (cfg_.format != "text" && cfg_.format != "csv" && cfg_.format != "json") {
            throw std::invalid_argument("format must be text, csv or json");
        }
        cfg_.timing.validate();
    }

private:
    template <class T>
    CLI::Option* add(CLI::App& app, const std::string& flag, const std::string& key, T& target,
                     const std::string& help) {
        CLI::Option* opt = app.add_option(flag, target, help);
        bindings_.push_back({opt, key, [&target](const json& v) { target = v.get<T>(); }});
        return opt;
    }

    JobConfig& cfg_;
    std::vector<Binding> bindings_;
    std::string backend_ = "ms";
    std::string scaling_ = "off";
    int ions_ = 0;
    std::string config_path_;
};

struct Pipeline {
    Hamiltonian H;
    MixedPauliSum sum;
    TrotterPlan plan;
    GateSequence seq;
};

Pipeline compile_pipeline(const JobConfig& cfg) {
    Pipeline p;
    p.H = build_model(cfg);
    p.sum = jw_transform(p.H);
    p.plan = trotterize(p.sum, cfg.t, cfg.steps, cfg.order);
    p.seq = compile_plan(p.plan, cfg.backend);
    return p;
}

void emit(const JobConfig& cfg, std::ostream& out, const std::string& text) {
    if (cfg.out.empty()) out << text;
    else write_text_file(cfg.out, text);
}

// ---------------------------------------------------------------------------

int cmd_build(const JobConfig& cfg, std::ostream& out) {
    const Hamiltonian H = build_model(cfg);
    emit(cfg, out, dump(to_json(H)));
    if (!cfg.out.empty()) {
        out << "wrote " << cfg.out << ": " << H.n_fermionic() << " fermionic + " << H.n_bosonic()
            << " bosonic modes, " << H.terms().size() << " terms\n";
    }
    return 0;
}

int cmd_compile(const JobConfig& cfg, std::ostream& out) {
    const Pipeline p = compile_pipeline(cfg);
    if (!cfg.out.empty()) write_text_file(cfg.out, dump(to_json(p.seq)));
    const GateCounts c = count_gates(p.seq);
    out << "backend: " << backend_name(cfg.backend) << "\n";
    out << "qubits: " << p.seq.n_qubits() << ", modes: " << p.seq.n_modes()
        << ", ancillas: " << p.seq.n_ancillas() << "\n";
    out << "pauli terms: " << p.sum.size() << "\n";
    out << "steps: " << p.seq.n_steps() << " (order " << cfg.order << ")\n";
    for (const auto& [group, n] : c.entangling_by_group) {
        out << "entangling " << (group.empty() ? "-" : group) << " per step: " << n / p.seq.n_steps()
            << "\n";
    }
    const std::size_t per_step = c.entangling_per_step.empty() ? 0 : c.entangling_per_step.front();
    out << "entangling per step: " << per_step << "\n";
    out << "entangling total: " << c.entangling_total;
    if (c.entangling_total >= 10000) {
        // two significant figures, printed as an integer
        const double scale = std::pow(10.0, std::floor(std::log10(static_cast<double>(c.entangling_total))) - 1);
        out << " (about " << static_cast<long long>(std::llround(c.entangling_total / scale) * scale) << ")";
    }
    out << "\n";
    if (c.mode_drives > 0) {
        out << "mode drives per step: " << c.mode_drives / p.seq.n_steps() << "\n";
        out << "census per step (entangling + mode drives): " << c.census() / p.seq.n_steps() << "\n";
        out << "census total: " << c.census() << "\n";
    }
    if (!cfg.out.empty()) out << "wrote " << cfg.out << "\n";
    return 0;
}

int cmd_estimate(const JobConfig& cfg, std::ostream& out) {
    GateSequence seq;
    ClassicalCost classical;
    if (!cfg.sequence.empty()) {
        seq = sequence_from_json(read_json_file(cfg.sequence));
        classical = classical_cost(seq.n_qubits(), seq.n_modes(), cfg.cutoff);
    } else {
        const Pipeline p = compile_pipeline(cfg);
        seq = p.seq;
        classical = classical_cost(p.H.n_fermionic(), p.H.n_bosonic(), cfg.cutoff);
    }
    const int ions = cfg.ions.value_or(default_ion_count(seq));
    const ResourceReport r = make_report(seq, cfg.timing, ions, classical);
    std::ostringstream text;
    if (cfg.format == "csv") render_csv(text, r);
    else if (cfg.format == "json") text << dump(to_json(r));
    else render_text(text, r);
    emit(cfg, out, text.str());
    return 0;
}

struct CheckLog {
    std::ostream& out;
    int passed = 0;
    int failed = 0;

    void record(bool ok, const std::string& name, const std::string& detail) {
        (ok ? passed : failed)++;
        out << (ok ? "PASS " : "FAIL ") << name;
        if (!detail.empty()) out << ": " << detail;
        out << "\n";
    }
};

std::string sci(double v) {
    std::ostringstream os;
    os << std::scientific << std::setprecision(2) << v;
    return os.str();
}

int cmd_verify(const JobConfig& cfg, std::ostream& out) {
    constexpr double kUnitaryTol = 1e-10;
    constexpr double kSpectrumTol = 1e-10;
    const Hamiltonian H = build_model(cfg);
    const MixedPauliSum sum = jw_transform(H);
    const std::vector<int> cutoffs(static_cast<std::size_t>(H.n_bosonic()), cfg.cutoff);
    const std::size_t limit = dimension_limit();
    const HilbertSpec spec = spec_for(sum, cutoffs, limit);
    CheckLog log{out};

    log.record(hermiticity_check(H), "hermitian", "");

    {
        const Operator jw = matrix_of(sum, spec);
        const Operator fock = fock_matrix(H, cutoffs, limit);
        const Eigen::VectorXd a = Eigen::SelfAdjointEigenSolver<Operator>(jw, Eigen::EigenvaluesOnly).eigenvalues();
        const Eigen::VectorXd b = Eigen::SelfAdjointEigenSolver<Operator>(fock, Eigen::EigenvaluesOnly).eigenvalues();
        const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
        const double diff = (a - b).cwiseAbs().maxCoeff();
        log.record(diff <= kSpectrumTol * scale, "jw-spectrum", "max eigenvalue difference " + sci(diff));
    }

    {
        const TrotterPlan plan = trotterize(sum, cfg.t, cfg.steps, cfg.order);
        double worst = 0.0;
        std::string worst_label;
        for (const auto& entry : plan.steps.front()) {
            MixedTerm term = sum.terms()[entry.term];
            MixedPauliSum single(sum.n_qubits(), sum.n_modes());
            single.add(term);
            const GateSequence seq = compile_plan(trotterize(single, 1.0, 1, 1), cfg.backend);
            const HilbertSpec full(spec.n_qubits() + seq.n_ancillas(), cutoffs, limit);
            const Operator U = restrict_to_ancilla_zero(sequence_unitary(seq, full), full, seq.n_ancillas());
            const double d = unitary_distance(U, exact_evolution(single, 1.0, spec));
            if (d >= worst) {
                worst = d;
                worst_label = term.label();
            }
        }
        log.record(worst < kUnitaryTol, "term-unitaries",
                   "worst distance " + sci(worst) + (worst_label.empty() ? "" : " (" + worst_label + ")"));
    }

    {
        const auto scan = trotter_error_scan(sum, cfg.t, {4, 32}, cfg.backend, spec, cfg.order);
        const double e4 = scan[0].norm_error;
        const double e32 = scan[1].norm_error;
        const bool ok = e32 < 1e-9 || e4 >= 4.0 * e32;
        log.record(ok, "trotter-convergence", "error n=4 " + sci(e4) + ", n=32 " + sci(e32));
    }

    if (!cfg.sequence.empty()) {
        const GateSequence seq = sequence_from_json(read_json_file(cfg.sequence));
        if (seq.n_qubits() != sum.n_qubits() || seq.n_modes() != sum.n_modes()) {
            log.record(false, "sequence-file", "register does not match the model");
        } else {
            const TrotterPlan plan = trotterize(sum, cfg.t, static_cast<int>(std::max<std::size_t>(1, seq.n_steps())),
                                                cfg.order);
            const HilbertSpec full(spec.n_qubits() + seq.n_ancillas(), cutoffs, limit);
            const Operator U = restrict_to_ancilla_zero(sequence_unitary(seq, full), full, seq.n_ancillas());
            const Operator ref = trotter_product(plan, spec);
            const double d = unitary_distance(U, ref);
            log.record(d < kUnitaryTol, "sequence-file",
                       "distance to term-exponential product " + sci(d) + ", norm distance " +
                           sci(phase_aligned_norm_distance(U, ref)));
        }
    }

    out << "verify: " << log.passed << "/" << (log.passed + log.failed) << " checks passed\n";
    return log.failed == 0 ? 0 : 1;
}

}  // namespace

Hamiltonian build_model(const JobConfig& cfg) {
    if (cfg.model == "hubbard") return build_hubbard(cfg.rows, cfg.cols, cfg.w, cfg.U);
    if (cfg.model == "holstein") return build_holstein(cfg.sites, cfg.h, cfg.g, cfg.omega);
    if (cfg.model == "chemistry") {
        if (cfg.integrals.empty()) throw std::invalid_argument("model chemistry needs --integrals");
        return chemistry_from_file(cfg.integrals);
    }
    if (cfg.model == "field") {
        if (cfg.couplings.empty()) throw std::invalid_argument("model field needs --couplings");
        return field_from_file(cfg.couplings);
    }
    if (cfg.model == "file") {
        if (cfg.hamiltonian.empty()) throw std::invalid_argument("model file needs --hamiltonian");
        return hamiltonian_from_json(read_json_file(cfg.hamiltonian));
    }
    throw std::invalid_argument("unknown model '" + cfg.model + "'");
}

int default_ion_count(const GateSequence& seq) {
    return std::max(1, seq.total_qubits() + (seq.n_modes() > 0 ? 1 : 0));
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Trotterized trapped-ion simulation compiler"};
    app.require_subcommand(1);
    struct Command {
        const char* name;
        const char* help;
        std::function<int(const JobConfig&, std::ostream&)> run;
    };
    const std::vector<Command> commands{
        {"build", "write the Hamiltonian file", cmd_build},
        {"compile", "map, Trotterize and compile to gates", cmd_compile},
        {"estimate", "gate census, timing and classical cost", cmd_estimate},
        {"verify", "dense oracle checks on a small instance", cmd_verify},
    };
    std::vector<JobConfig> configs(commands.size());
    std::vector<std::unique_ptr<Options>> options;
    std::vector<CLI::App*> subs;
    for (std::size_t i = 0; i < commands.size(); ++i) {
        CLI::App* sub = app.add_subcommand(commands[i].name, commands[i].help);
        options.push_back(std::make_unique<Options>(*sub, configs[i]));
        subs.push_back(sub);
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    for (std::size_t i = 0; i < commands.size(); ++i) {
        if (!subs[i]->parsed()) continue;
        try {
            options[i]->finish();
            return commands[i].run(configs[i], out);
        } catch (const std::exception& e) {
            err << "error: " << e.what() << "\n";
            return 2;
        }
    }
    return 2;
}

}  // namespace iontrotter
