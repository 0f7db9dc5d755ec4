#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"

#include "iontrotter/gates.hpp"
#include "iontrotter/ham_ir.hpp"
#include "iontrotter/resources.hpp"

namespace iontrotter {

inline constexpr int kFileFormatVersion = 1;

/// {version, n_fermionic, n_bosonic, terms:[{coeff:[re,im], factors:[{kind, index, dagger}], label?}]}
nlohmann::json to_json(const Hamiltonian& H);
/// Throws std::invalid_argument on malformed input.
Hamiltonian hamiltonian_from_json(const nlohmann::json& j);

/// {version, n_qubits, n_modes, n_ancillas, steps:[[{gate, targets, mode?, theta, phi?, axis?, group?}]]}
nlohmann::json to_json(const GateSequence& seq);
GateSequence sequence_from_json(const nlohmann::json& j);

/// Canonical serialization: two-space indent, trailing newline.
std::string dump(const nlohmann::json& j);
nlohmann::json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

void render_text(std::ostream& os, const ResourceReport& r);
/// Columns: gate_kind, count, per_step, time_us, cumulative_error.
void render_csv(std::ostream& os, const ResourceReport& r);
nlohmann::json to_json(const ResourceReport& r);

}  // namespace iontrotter
