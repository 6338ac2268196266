#pragma once

#include <string>

#include "ordercalc/family_io.hpp"

namespace ordercalc {

enum class DiagramFormat { Ascii, Dot };

// "ascii" or "dot"; throws ParseError otherwise.
DiagramFormat parse_diagram_format(const std::string& name);

// Renders the splitting types of a family description, one section per
// block: ascending classes as a comb climbing to the right, descending
// classes as its mirror image, two-sided classes as a V joined at the root
// split.  Raw enumerations reuse the comb shapes with their own level
// legends; towers and explicit blocks get textual sections.  The DOT format
// emits the same meet trees as a digraph, root at the bottom.
std::string render_diagram(const FamilyDoc& doc, DiagramFormat fmt);

}  // namespace ordercalc
