#pragma once

#include <utility>
#include <vector>

#include "annmat/annotated.hpp"
#include "annmat/raw.hpp"
#include "annmat/reduce.hpp"

namespace annmat {

// Builds the annotated presentation of a connecting map whose domain and
// codomain reductions are given as event streams. `connecting` holds the
// pointwise matrices (size m+1); both event streams must span the same m.
// Sharing event streams across calls keeps generator bases consistent, which
// is what makes independently presented blocks assemble correctly.
annotated_matrix present_with_events(const fp_field& F, const module_events& dom,
                                     const module_events& cod,
                                     const std::vector<dense_mat>& connecting);

// Canonical annotated presentation of a pointwise morphism of persistence
// modules: rows are codomain generators, columns are domain generators.
annotated_matrix pres_pers_mod(const raw_module_morphism& raw);

// Canonical annotated presentations (f0, g0) of a three-term pointwise
// complex; the middle module's reduction is computed once and shared, so
// f0's rows and g0's columns carry identical generators.
std::pair<annotated_matrix, annotated_matrix> pres_complex(const raw_complex& raw);

}  // namespace annmat
