#pragma once

#include <string>
#include <variant>

#include "ordercalc/families.hpp"

namespace ordercalc {

// A parsed description file: either a block-composed family or a dyadic tree.
using FamilyDoc = std::variant<RepFamily, DyadicCopy>;

// Text format, one construct per line.  `#` starts a comment, blank lines are
// skipped.  The first line fixes the ambient, e.g. `ambient w^(2)`; the
// remaining lines are blocks in increasing order, or a single dyadic(...).
FamilyDoc parse_family_doc(const std::string& text);
RepFamily parse_family(const std::string& text);
DyadicCopy parse_dyadic(const std::string& text);

std::string to_text(const RepFamily& f);
std::string to_text(const DyadicCopy& d);
std::string to_text(const FamilyDoc& doc);

FamilyDoc load_family_file(const std::string& path);

}  // namespace ordercalc
