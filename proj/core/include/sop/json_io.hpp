#pragma once

#include <string>

#include "sop/term.hpp"

namespace sop {

// Canonical JSON form. Serialization is deterministic: object keys are
// sorted and all polynomial lists are in canonical order, so re-serializing
// a parsed dump reproduces it byte for byte.
std::string term_to_json(const SopTerm& t);
SopTerm term_from_json(const std::string& text);

}  // namespace sop
