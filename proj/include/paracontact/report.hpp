// Report serialization.
#pragma once

#include <string>

#include "paracontact/suite.hpp"

namespace paracontact {

/// {model, suite, seed, points, engine_version, checks: [{id, anchor, residual,
/// tolerance, status, note}]}; non-finite numbers are written as strings.
std::string report_json(const CheckReport& report);
std::string report_text(const CheckReport& report);

}  // namespace paracontact
