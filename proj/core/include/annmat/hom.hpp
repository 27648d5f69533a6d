#pragma once

#include "annmat/annotated.hpp"
#include "annmat/barcode.hpp"

namespace annmat {

// Barcode of the homology at the middle module of a complex of presentations
// f0 : L -> M, g0 : M -> N. Requires matching middle annotations and an
// exactly zero matrix composite (run complexify_pair first if needed).
// Zero-length bars are dropped unless keep_empty is set.
barcode pres_hom(const annotated_matrix& f0, const annotated_matrix& g0,
                 int degree = 1, bool keep_empty = false);

// The classical special case: all annotations must have infinite death.
barcode persistence_algorithm(const annotated_matrix& f0, const annotated_matrix& g0,
                              int degree = 1, bool keep_empty = false);

}  // namespace annmat
