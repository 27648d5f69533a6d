#pragma once

#include <utility>

#include "annmat/annotated.hpp"

namespace annmat {

// Repairs a pair of presentations whose matrix composite is nonzero even
// though the presented composite morphism is zero. For every nonzero column
// of compose(g0, f0) one zero-length generator pair is appended — a unit row
// to f0 and the negated composite column to g0, both annotated [b, b) at the
// column's birth — after which the matrix composite vanishes identically.
// Throws invariant_error if some composite entry presents a genuinely
// nonzero morphism (the pair is not a complex).
std::pair<annotated_matrix, annotated_matrix> complexify_pair(
    const annotated_matrix& f0, const annotated_matrix& g0);

}  // namespace annmat
