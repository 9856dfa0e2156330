// Report rendering: one ordered tree per run, a structured text view and a
// JSON view of the same data. Deterministic by construction: insertion order
// is preserved, no wall clock or host data enters the body, integers print
// exactly and every float prints as full precision scientific.
// SPDX-License-Identifier: MIT
#pragma once

#include <string>

#include "json.hpp"

namespace symindex {

using Report = nlohmann::ordered_json;

const char* tool_version();

// "key: value" lines; objects become "[section]" blocks with dotted keys for
// nested objects; arrays of objects become one indexed line per element
std::string render_text(const Report& root);

std::string render_json(const Report& root);

}  // namespace symindex
