#include "annmat/complexify.hpp"

#include <sstream>

#include "annmat/errors.hpp"
#include "annmat/field.hpp"

namespace annmat {

std::pair<annotated_matrix, annotated_matrix> complexify_pair(
    const annotated_matrix& f0, const annotated_matrix& g0) {
  annotated_matrix h = compose(g0, f0);
  fp_field F{f0.p};

  // A nonzero entry pairs a codomain row [c, d) with a domain column [a, b).
  // It presents the zero morphism only when the supports are disjoint,
  // i.e. d <= a; anything else is a genuine nonzero composite.
  for (int c = 0; c < h.ncols(); ++c) {
    for (const auto& e : h.cols[c]) {
      if (e.val == 0) continue;
      const bar& rb = h.row_ann[e.row];
      const bar& cb = h.col_ann[c];
      if (rb.death > cb.birth) {
        std::ostringstream os;
        os << "composite entry at (" << e.row << ", " << c << ") pairs row "
           << to_string(rb) << " with column " << to_string(cb)
           << ": the pair is not a complex";
        throw invariant_error(os.str());
      }
    }
  }

  annotated_matrix f = f0, g = g0;
  for (int c = 0; c < h.ncols(); ++c) {
    if (h.cols[c].empty()) continue;
    grade_t b = f.col_ann[c].birth;
    // New middle generator with empty support: unit row in f, the negated
    // composite column in g.
    int new_row = f.nrows();
    f.row_ann.push_back(bar{b, b});
    f.cols[c].push_back({new_row, 1});
    g.col_ann.push_back(bar{b, b});
    sparse_vec gc = h.cols[c];
    scale(F, gc, F.neg(1));
    g.cols.push_back(std::move(gc));
  }
  check_valid(f);
  check_valid(g);
  return {std::move(f), std::move(g)};
}

}  // namespace annmat
