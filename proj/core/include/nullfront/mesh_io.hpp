#pragma once

#include <string>

#include "nullfront/frontgen.hpp"
#include "nullfront/singular.hpp"

namespace nullfront::meshio {

/// OBJ export of a curve-generated front over its (t,s) lattice: quad faces,
/// 17 significant digits, LF line endings.  Default axis order puts the time
/// coordinate on the third axis; raw_axes preserves (t, x, y).
void export_mesh(const frontgen::NullFront& front, const std::string& path,
                 bool raw_axes = false);

/// CSV of the singular locus: parameter, branch, t, image coordinates, class.
void export_locus_csv(const singular::SingularLocus& locus, const frontgen::NullFront& front,
                      const std::string& path);

}  // namespace nullfront::meshio
