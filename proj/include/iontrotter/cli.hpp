#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "iontrotter/compiler.hpp"
#include "iontrotter/ham_ir.hpp"
#include "iontrotter/resources.hpp"

namespace iontrotter {

/// Everything one command needs. Flags override keys of the --config JSON file,
/// which uses the flag names without dashes.
struct JobConfig {
    std::string model = "hubbard";  ///< hubbard | holstein | chemistry | field | file
    int rows = 4;
    int cols = 5;
    int sites = 10;
    double w = 1.0;      ///< Hubbard hopping
    double U = 1.0;      ///< Hubbard onsite repulsion
    double h = 1.0;      ///< Holstein hopping
    double g = 0.5;      ///< Holstein coupling
    double omega = 1.0;  ///< Holstein mode frequency
    std::string hamiltonian;  ///< model = file
    std::string integrals;    ///< model = chemistry
    std::string couplings;    ///< model = field
    std::string sequence;     ///< estimate / verify input

    double t = 1.0;
    int steps = 10;
    int order = 1;
    Backend backend = Backend::MS;
    int cutoff = 7;
    bool scaling = false;
    std::optional<int> ions;
    TimingModel timing;

    std::string out;
    std::string format = "text";  ///< text | csv | json
};

/// Builds the Hamiltonian named by the config. Throws std::invalid_argument.
Hamiltonian build_model(const JobConfig& cfg);

/// Chain length used for timing: register qubits plus one passive ion when
/// there are motional modes to drive.
int default_ion_count(const GateSequence& seq);

/// Entry point shared by the executable and the tests.
/// Exit codes: 0 ok, 1 verification failure, 2 usage or configuration error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace iontrotter
