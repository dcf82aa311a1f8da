#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "cuav/scenario.hpp"

namespace cuav {

/// Contents of a scenario file: the scenario plus the optional [mission] table.
struct ScenarioFile {
  Scenario scenario;
  std::optional<MissionProfile> mission;
};

// TOML layout. Every scalar may be a bare number in the unit implied by the key
// suffix or a string carrying that unit, e.g. gamma_dbm = "-80 dBm".
//
//   prs = [[100.0, 0.0], [-50.0, 20.0]]   # required, meters
//   beta_u_db, beta_0_db   (dB)           sigma2_dbm, gamma_dbm, p_max_dbm (dBm)
//   alpha                  (plain)        h_min_m, h_max_m (m)
//
//   [mission]
//   q_initial = [x, y], q_final = [x, y]  (m)
//   z_initial, z_final (m)   v_h, v_a, v_d (m/s)   t_seconds (s)   n_slots
//
// Omitted scalars take the library defaults. Unknown keys are rejected.

ScenarioFile parse_scenario(std::string_view toml_text, std::string_view source_name = "<string>");
ScenarioFile load_scenario(const std::string& path);

/// Reads a mission either from a [mission] table or from top-level keys.
MissionProfile parse_mission(std::string_view toml_text, std::string_view source_name = "<string>");
MissionProfile load_mission(const std::string& path);

/// Serializes back to the TOML layout above with full double precision.
std::string format_scenario(const Scenario& s, const std::optional<MissionProfile>& m = std::nullopt);
void save_scenario(const std::string& path, const Scenario& s,
                   const std::optional<MissionProfile>& m = std::nullopt);

}  // namespace cuav
