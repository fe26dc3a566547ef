#pragma once

// Template surface realization: slot maps back to sentence tokens.

#include <map>
#include <string>

#include "tcawp/extractor.hpp"

namespace tcawp {

enum class NumberStyle { Decimal, Bare };  // "5.0" vs "5"

// Placeholder tokens (AgentK) with literal numbers; uses the map's notes for
// verb, to/from marker and temporal words, falling back to has/gave/now.
Tokens realize(const SlotMap& m, NumberStyle style = NumberStyle::Decimal);

// Substitutes AgentK tokens through `names` (K -> surface); unmapped ones stay.
Tokens with_names(Tokens tokens, const std::map<int, std::string>& names);

std::string render_number(Decimal v, NumberStyle style);

}  // namespace tcawp
