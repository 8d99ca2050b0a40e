#pragma once

#include <string>

#include "mubforge/mub.hpp"

namespace mubforge {

enum class FamilyFormat { json, text };

// Both serializers are byte-deterministic: the same family always produces
// the same string.  The JSON schema is stable:
//
//   {
//     "q": ..., "d": ...,
//     "field": {"r": ..., "modulus_bits": ..., "mu_bits": ...},
//     "seed": ...,
//     "base_line": [c1, c2],
//     "checks": {"<name>": true, ...},
//     "matrices": [[[+-1, ...], ...], ...]
//   }
//
// The text format mirrors it: `key value` header lines, `check <name> <0|1>`
// lines, then per matrix a `matrix <k>` line followed by d rows of +/- signs.
std::string to_json_string(const HadamardFamily& family);
std::string to_text_string(const HadamardFamily& family);

// Parsers throw ParseError on malformed input of either format.
HadamardFamily family_from_json(const std::string& text);
HadamardFamily family_from_text(const std::string& text);

// Reads a family, sniffing the format from the first non-space byte.
// Throws IoError when the file cannot be read, ParseError when it cannot
// be parsed.
HadamardFamily load_family(const std::string& path);

// Writes through a temporary file in the same directory and renames it
// into place, so a failed write never leaves a partial family behind.
// Throws IoError on filesystem failure.
void save_family(const HadamardFamily& family, const std::string& path, FamilyFormat format);

}  // namespace mubforge
