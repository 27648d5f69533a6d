#pragma once

#include <iosfwd>
#include <string>

#include "annmat/annotated.hpp"
#include "annmat/barcode.hpp"
#include "annmat/cosheaf.hpp"
#include "annmat/poset.hpp"
#include "annmat/raw.hpp"
#include "annmat/sheaf.hpp"
#include "annmat/tower.hpp"

namespace annmat {

// Text readers. Grammar problems (unreadable files, malformed lines, wrong
// token counts, out-of-range indices) throw parse_error pointing at the
// offending file and line. Semantic problems (annotation validity, commuting
// squares, ...) are left to the checkers of the parsed structures.
//
// Lines are whitespace-tokenized; '#' starts a comment; blank lines are
// ignored. Matrix entries are read row-major and normalized mod p.

annotated_matrix read_annmat(const std::string& path);
raw_module_morphism read_rawmod(const std::string& path);
raw_complex read_rawcplx(const std::string& path);

// With max_dim >= 0, an include of a simplex of dimension > max_dim is a
// parse error; max_dim < 0 accepts everything.
tower_script read_tower(const std::string& path, int max_dim = -1);
cosheaf_instance read_cosheaf(const std::string& path, int max_dim = -1);

// These formats carry no field order of their own; it comes from the caller.
sheaf_instance read_sheaf(const std::string& path, int32_t p);
poset_sheaf read_poset(const std::string& path, int32_t p);

void write_annmat(std::ostream& out, const annotated_matrix& f);
// canonical order: (degree, birth, death); one "<degree> <birth> <death|inf>"
// line per bar
void write_barcode(std::ostream& out, const barcode& bc);

}  // namespace annmat
