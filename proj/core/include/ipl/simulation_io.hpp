#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "ipl/homogeneous_sim.hpp"

namespace ipl {

inline constexpr std::string_view kMomentCsvHeader = "time,M0,M2,M4,M6,px,py,pz,entropy";

/// Shortest decimal that parses back to the same double.
std::string format_number(double value);

/// Reads a simulation config. Required keys: n_particles, exponent_s (number or
/// "hard_sphere"), dt, t_end, seed. Optional: theta_min (1e-2), init ("bimodal"),
/// record_every (10). Unknown keys are rejected. Throws DomainError.
SimulationConfig parse_simulation_config(const nlohmann::json& doc);
SimulationConfig load_simulation_config(const std::string& path);
nlohmann::json to_json(const SimulationConfig& config);

void write_moment_csv(std::ostream& out, const MomentRecord& record);

/// Inverse of write_moment_csv; throws DomainError on a malformed document.
MomentRecord read_moment_csv(std::istream& in);

}  // namespace ipl
