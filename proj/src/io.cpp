#include "iontrotter/io.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace iontrotter {

using nlohmann::json;

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(what);
}

void check_version(const json& j) {
    require(j.is_object(), "expected a JSON object");
    require(j.contains("version") && j["version"].is_number_integer(), "missing integer 'version'");
    require(j["version"].get<int>() == kFileFormatVersion,
            "unsupported file version " + j["version"].dump());
}

int int_field(const json& j, const char* key) {
    require(j.contains(key) && j[key].is_number_integer(), std::string("missing integer '") + key + "'");
    return j[key].get<int>();
}

double number_field(const json& j, const char* key, double fallback, bool required) {
    if (!j.contains(key)) {
        require(!required, std::string("missing number '") + key + "'");
        return fallback;
    }
    require(j[key].is_number(), std::string("'") + key + "' must be a number");
    return j[key].get<double>();
}

}  // namespace

json to_json(const Hamiltonian& H) {
    json terms = json::array();
    for (const auto& t : H.terms()) {
        json factors = json::array();
        for (const auto& f : t.factors) {
            factors.push_back({{"kind", f.mode.kind == ModeKind::Fermionic ? "f" : "b"},
                               {"index", f.mode.index},
                               {"dagger", f.dagger}});
        }
        json term = {{"coeff", {t.coefficient.real(), t.coefficient.imag()}}, {"factors", factors}};
        if (!t.group.empty()) term["label"] = t.group;
        terms.push_back(std::move(term));
    }
    return {{"version", kFileFormatVersion},
            {"n_fermionic", H.n_fermionic()},
            {"n_bosonic", H.n_bosonic()},
            {"terms", terms}};
}

Hamiltonian hamiltonian_from_json(const json& j) {
    check_version(j);
    Hamiltonian H(int_field(j, "n_fermionic"), int_field(j, "n_bosonic"));
    require(j.contains("terms") && j["terms"].is_array(), "missing array 'terms'");
    for (const auto& t : j["terms"]) {
        require(t.is_object(), "term must be an object");
        require(t.contains("coeff") && t["coeff"].is_array() && t["coeff"].size() == 2 &&
                    t["coeff"][0].is_number() && t["coeff"][1].is_number(),
                "term 'coeff' must be [re, im]");
        ProductTerm term;
        term.coefficient = {t["coeff"][0].get<double>(), t["coeff"][1].get<double>()};
        require(t.contains("factors") && t["factors"].is_array(), "term needs a 'factors' array");
        for (const auto& f : t["factors"]) {
            require(f.is_object() && f.contains("kind") && f["kind"].is_string(), "factor needs 'kind'");
            const std::string kind = f["kind"];
            require(kind == "f" || kind == "b", "factor kind must be \"f\" or \"b\"");
            require(f.contains("dagger") && f["dagger"].is_boolean(), "factor needs boolean 'dagger'");
            const int index = int_field(f, "index");
            term.factors.push_back(kind == "f" ? fermion(index, f["dagger"]) : boson(index, f["dagger"]));
        }
        if (t.contains("label")) {
            require(t["label"].is_string(), "term 'label' must be a string");
            term.group = t["label"];
        }
        H.add(std::move(term));
    }
    return H;
}

json to_json(const GateSequence& seq) {
    json steps = json::array();
    for (std::size_t s = 0; s < seq.n_steps(); ++s) {
        const auto [begin, end] = seq.step_range(s);
        json step = json::array();
        for (std::size_t i = begin; i < end; ++i) {
            const Gate& g = seq.gates()[i];
            json jg = {{"gate", gate_name(g.kind)}, {"targets", g.qubits}};
            if (g.mode != 0) jg["mode"] = g.mode;
            jg["theta"] = g.theta;
            if (g.phi != 0.0) jg["phi"] = g.phi;
            if (g.kind == GateKind::Local) jg["axis"] = std::string(1, axis_name(g.axis));
            if (!g.group.empty()) jg["group"] = g.group;
            step.push_back(std::move(jg));
        }
        steps.push_back(std::move(step));
    }
    return {{"version", kFileFormatVersion},
            {"n_qubits", seq.n_qubits()},
            {"n_modes", seq.n_modes()},
            {"n_ancillas", seq.n_ancillas()},
            {"steps", steps}};
}

GateSequence sequence_from_json(const json& j) {
    check_version(j);
    const int n_ancillas = j.contains("n_ancillas") ? int_field(j, "n_ancillas") : 0;
    GateSequence seq(int_field(j, "n_qubits"), int_field(j, "n_modes"), n_ancillas);
    require(j.contains("steps") && j["steps"].is_array(), "missing array 'steps'");
    for (const auto& step : j["steps"]) {
        require(step.is_array(), "each step must be an array of gates");
        seq.begin_step();
        for (const auto& jg : step) {
            require(jg.is_object() && jg.contains("gate") && jg["gate"].is_string(), "gate needs a 'gate' name");
            Gate g;
            g.kind = parse_gate_name(jg["gate"].get<std::string>());
            require(jg.contains("targets") && jg["targets"].is_array(), "gate needs a 'targets' array");
            for (const auto& q : jg["targets"]) {
                require(q.is_number_integer(), "targets must be integers");
                g.qubits.push_back(q.get<int>());
            }
            g.mode = jg.contains("mode") ? int_field(jg, "mode") : 0;
            g.theta = number_field(jg, "theta", 0.0, g.kind != GateKind::CNOT);
            g.phi = number_field(jg, "phi", 0.0, false);
            if (g.kind == GateKind::Local) {
                require(jg.contains("axis") && jg["axis"].is_string() && jg["axis"].get<std::string>().size() == 1,
                        "LOCAL gate needs an 'axis' of x, y or z");
                g.axis = parse_axis(jg["axis"].get<std::string>()[0]);
            }
            if (jg.contains("group")) {
                require(jg["group"].is_string(), "gate 'group' must be a string");
                g.group = jg["group"];
            }
            seq.push(std::move(g));
        }
    }
    return seq;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("'" + path + "' is not valid JSON: " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write '" + path + "'");
    out << text;
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

// ---------------------------------------------------------------------------

namespace {

std::string format_time(double us) {
    std::ostringstream os;
    os << std::setprecision(4);
    if (us >= 1e6) os << us / 1e6 << " s";
    else if (us >= 1e3) os << us / 1e3 << " ms";
    else os << us << " us";
    return os.str();
}

double per_step(std::size_t count, std::size_t steps) {
    return steps ? static_cast<double>(count) / static_cast<double>(steps) : 0.0;
}

bool entangling_kind(GateKind k) {
    Gate g;
    g.kind = k;
    g.qubits = {1, 2};
    return g.is_entangling();
}

}  // namespace

void render_text(std::ostream& os, const ResourceReport& r) {
    const auto& c = r.counts;
    os << "steps: " << r.n_steps << "\n";
    os << "ions: " << r.n_ions << "\n";
    os << "gate counts:\n";
    for (const auto& [k, n] : c.by_kind) {
        os << "  " << std::left << std::setw(6) << gate_name(k) << std::right << " " << n
           << " (" << per_step(n, r.n_steps) << " per step)\n";
    }
    if (!c.entangling_by_group.empty()) {
        os << "entangling by term family:\n";
        for (const auto& [g, n] : c.entangling_by_group) {
            os << "  " << (g.empty() ? "-" : g) << ": " << n << "\n";
        }
    }
    os << "entangling per step: " << per_step(c.entangling_total, r.n_steps) << "\n";
    os << "entangling total: " << c.entangling_total << "\n";
    os << "census (entangling + mode drives): " << c.census() << "\n";
    os << "protocol time (entangling gates, MS scaling " << (r.model.ms_scaling ? "on" : "off")
       << ", sideband scaling " << (r.model.sideband_scaling ? "on" : "off")
       << "): " << format_time(r.time.entangling_us) << "\n";
    if (r.n_steps) os << "time per step: " << format_time(r.time.entangling_us / r.n_steps) << "\n";
    os << "single-ion and mode gates (not in headline): " << format_time(r.time.local_us) << "\n";
    if (r.umq_speedup > 0) os << "UMQ speedup at " << r.n_ions << " ions: " << r.umq_speedup << "\n";
    os << "cumulative error budget: " << r.cumulative_error_budget << "\n";
    if (r.classical.overflow) {
        os << "classical dimension: 2^" << r.classical.log2_dimension << "\n";
    } else {
        os << "classical dimension: " << r.classical.dimension << " (2^" << r.classical.log2_dimension
           << ")\n";
    }
}

void render_csv(std::ostream& os, const ResourceReport& r) {
    os << "gate_kind,count,per_step,time_us,cumulative_error\n";
    for (const auto& [k, n] : r.counts.by_kind) {
        const auto it = r.time.by_kind_us.find(k);
        const double err = entangling_kind(k) ? static_cast<double>(n) * r.model.per_gate_error : 0.0;
        os << gate_name(k) << "," << n << "," << per_step(n, r.n_steps) << ","
           << (it == r.time.by_kind_us.end() ? 0.0 : it->second) << "," << err << "\n";
    }
    os << "ENTANGLING," << r.counts.entangling_total << ","
       << per_step(r.counts.entangling_total, r.n_steps) << "," << r.time.entangling_us << ","
       << r.cumulative_error_budget << "\n";
}

json to_json(const ResourceReport& r) {
    json kinds = json::object();
    for (const auto& [k, n] : r.counts.by_kind) {
        const auto it = r.time.by_kind_us.find(k);
        kinds[std::string(gate_name(k))] = {
            {"count", n}, {"time_us", it == r.time.by_kind_us.end() ? 0.0 : it->second}};
    }
    json out = {{"n_steps", r.n_steps},
                {"n_ions", r.n_ions},
                {"gates", kinds},
                {"entangling_by_group", r.counts.entangling_by_group},
                {"entangling_per_step", r.counts.entangling_per_step},
                {"entangling_total", r.counts.entangling_total},
                {"census", r.counts.census()},
                {"entangling_time_us", r.time.entangling_us},
                {"entangling_per_step_us", r.time.entangling_per_step_us},
                {"local_time_us", r.time.local_us},
                {"umq_speedup", r.umq_speedup},
                {"cumulative_error_budget", r.cumulative_error_budget},
                {"classical_log2_dimension", r.classical.log2_dimension}};
    if (r.classical.overflow) out["classical_dimension"] = nullptr;
    else out["classical_dimension"] = r.classical.dimension;
    return out;
}

}  // namespace iontrotter
