#pragma once

#include <iosfwd>
#include <string>

#include "petal/germ.hpp"

namespace petal {

// Germ text format: one monomial per line, `c i j re im` with c in {1,2}
// selecting the component; the identity part is implicit and must not appear.
// Lines starting with '#' are comments.
GermMap parse_germ(std::istream& in, const std::string& name = "<stream>");
GermMap load_germ(const std::string& path);
void write_germ(std::ostream& out, const GermMap& g);
void save_germ(const std::string& path, const GermMap& g);

} // namespace petal
