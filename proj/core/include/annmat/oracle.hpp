#pragma once

#include <vector>

#include "annmat/barcode.hpp"
#include "annmat/cosheaf.hpp"
#include "annmat/dense.hpp"
#include "annmat/poset.hpp"
#include "annmat/raw.hpp"
#include "annmat/tower.hpp"

namespace annmat {

// Rank-based barcode of one pointwise persistence module: the multiplicity
// of every interval falls out of the ranks of the composite maps.
barcode pointwise_barcode(const fp_field& F, const pointwise_module& M, int degree = 0);

// Homology barcode at the middle of a three-term pointwise complex, computed
// index by index from kernel and image bases with explicit coordinate lifts.
// Brute force by design; the ground truth the fast pipelines are tested
// against.
barcode pointwise_homology_barcode(const raw_complex& raw, int degree = 1);

// Textbook persistent homology of an inclusion-only script, all degrees.
barcode classical_persistence(const tower_script& s);

// Homology of a tower recomputed independently of the streaming engine:
// every intermediate complex is materialized, chain spaces carry the stalks
// of final images, and each degree runs through the pointwise oracle.
barcode materialized_tower_homology(const tower_script& s,
                                    const std::vector<int>& degrees);
barcode materialized_cosheaf_homology(const cosheaf_instance& inst,
                                      const std::vector<int>& degrees);

// Barcode of the degreewise limit (joint equalizer over all covers) of a
// poset sheaf — degree-0 cohomology for any poset.
barcode poset_limit_barcode(const poset_sheaf& S);

}  // namespace annmat
