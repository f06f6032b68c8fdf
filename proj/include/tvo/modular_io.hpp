#pragma once

#include <string>

#include "tvo/modular_data.hpp"
#include "tvo/report.hpp"

namespace tvo {

// Canonical serialisation: fixed key order, %.17g floats, trailing newline.
// Reading back what was written reproduces the bytes exactly.
std::string modular_data_to_json_text(const ModularData& md);
ModularData modular_data_from_json_text(const std::string& text,
                                        const std::string& origin = "input");

// File loading runs the axiom checks; failures are reported (and fatal when
// strict) but do not prevent reading the data.
ModularData load_modular_data(const std::string& path, bool strict = false,
                              ValidationReport* report = nullptr);
void save_modular_data(const ModularData& md, const std::string& path);

}  // namespace tvo
