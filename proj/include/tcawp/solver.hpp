#pragma once

// Reference answers by replaying transfers over the ABox.

#include "tcawp/abox.hpp"

namespace tcawp {

// Initial stocks from BT sentences (only quantities whose type matches the
// question), transfers applied in sentence order, asked agent's stock returned.
// Throws UnsolvableState when the question or the asked agent's stock is
// missing, or a stock would go negative.
Decimal solve(const ABox& abox);

}  // namespace tcawp
