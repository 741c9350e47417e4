#pragma once

#include "nilfix/index.hpp"
#include "nilfix/region.hpp"
#include "nilfix/vector_field.hpp"
#include "nilfix/zeros.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nilfix {

/// Deterministic phase portrait: quiver glyphs on a 24x24 grid, the region
/// boundary, zero-cluster markers with their isolation circles, and an
/// index annotation.  Identical inputs produce byte-identical output.
std::string render_phase_portrait(const PolyVectorField& field, const Region& region,
                                  const std::vector<ZeroCluster>& zeros,
                                  const std::optional<IndexResult>& index);

/// Locale-independent shortest-ish number formatting used across SVG output.
std::string fmt_num(double v);

} // namespace nilfix
