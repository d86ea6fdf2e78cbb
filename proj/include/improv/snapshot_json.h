// JSON forms of parameters and snapshots, shared by the CLI and the service.

#pragma once

#include "json.hpp"

#include "improv/core_model.h"
#include "improv/factor_oracle.h"
#include "improv/improviser.h"

namespace improv {

void to_json(nlohmann::json& j, const Params& p);
void from_json(const nlohmann::json& j, Params& p);

void to_json(nlohmann::json& j, const OracleSnapshot& s);
void from_json(const nlohmann::json& j, OracleSnapshot& s);

/// Wire shape: {"type":"snapshot","m":..,"k":..,"go":..,"user_avg":..,
/// "comp_avg":..,"links":[{"from","sym","to","w"}],"suffix":[..],"lrs":[..],
/// plus "tick","started","seed","totals","params"}. Undefined k and
/// averages serialize as null.
void to_json(nlohmann::json& j, const SessionSnapshot& s);
void from_json(const nlohmann::json& j, SessionSnapshot& s);

}  // namespace improv
