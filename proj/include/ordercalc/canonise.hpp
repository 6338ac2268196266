#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "ordercalc/families.hpp"

namespace ordercalc {

// ---------------------------------------------------------------------------
// Canonisation: raw enumerations -> symbolic classes
// ---------------------------------------------------------------------------

// Rewrites a raw level sequence as a symbolic class whose decoded points form
// a subsequence of the raw points.  Group boundaries are the successive
// minima of the level sequence: an ascending sequence keeps every point from
// the global minimum onward (levels before it join the stem, levels between
// two successive minima ride along as junk inside one group), a descending
// sequence keeps exactly the points whose level undercuts everything later.
SymbolicClass canonise_raw(const RawSequence& r);

// Both halves canonised around the shared root.  Right-half levels absorbed
// ahead of the first boundary become carry bits.
SymbolicClass canonise_raw_zeta(const RawZeta& z);

// Canonises every block: raw blocks are rewritten, symbolic classes shed
// their extras, finite blocks and towers pass through.  The result enumerates
// a subset of the original family in the same order and is a fixed point of
// this map.
RepFamily canonise_family(const RepFamily& f);

// ---------------------------------------------------------------------------
// Symbolic ordinal sets
// ---------------------------------------------------------------------------

// A schedule of ordinals shifted by a fixed offset: { offset + v : v in s }.
struct ShiftedSchedule {
    Ordinal offset;
    LevelSchedule sched;
};

bool operator==(const ShiftedSchedule& a, const ShiftedSchedule& b);
bool operator!=(const ShiftedSchedule& a, const ShiftedSchedule& b);

// One component is either a finite explicit list or a shifted schedule.
using SetComponent = std::variant<std::vector<Ordinal>, ShiftedSchedule>;

// A finitely described set of ordinals, the union of its components.
struct SymbolicOrdinalSet {
    std::vector<SetComponent> components;
};

bool operator==(const SymbolicOrdinalSet& a, const SymbolicOrdinalSet& b);
bool operator!=(const SymbolicOrdinalSet& a, const SymbolicOrdinalSet& b);

std::string to_string(const ShiftedSchedule& s);
std::string to_string(const SymbolicOrdinalSet& s);

// Least element of a nonempty set.
Ordinal set_min(const SymbolicOrdinalSet& s);
// The `count` least elements in increasing order (fewer if the set is
// finite and smaller).
std::vector<Ordinal> enumerate_set(const SymbolicOrdinalSet& s, std::size_t count);

// ---------------------------------------------------------------------------
// The level-set correspondence
// ---------------------------------------------------------------------------

// N(c): the split levels lambda(0) < lambda(1) < ... of an Asc or Desc class
// as a single unshifted schedule component with singleton groups.  Throws for
// Zeta classes, which split into two pieces first.
SymbolicOrdinalSet n_map(const SymbolicClass& c);

// Index subsequence start, start + step, start + 2 step, ...
struct IndexSelection {
    std::size_t start = 0;
    std::size_t step = 1;
};

// The subclass of c enumerating exactly the points with selected indices.
// Ascending classes merge the groups between consecutive selected indices
// (levels ahead of the first selected index join the stem); descending
// classes keep exactly the selected groups.  Satisfies
//
//     n_map(n_realize(c, sel)) == select_symbolic(n_map(c), sel).
SymbolicClass n_realize(const SymbolicClass& c, const IndexSelection& sel);

// The subset of a single-schedule set at the selected value indices, again in
// canonical single-schedule shape.
SymbolicOrdinalSet select_symbolic(const SymbolicOrdinalSet& s, const IndexSelection& sel);

// ---------------------------------------------------------------------------
// Indecomposable pieces and the shifted level set N'
// ---------------------------------------------------------------------------

// The infinite one-directional pieces of a canonised family, left to right:
// Asc and Desc classes stand alone, a Zeta class contributes its descending
// left half followed by its ascending right half.  Finite blocks carry no
// piece.  Raw blocks must be canonised first; towers have no decomposition
// into such pieces and are rejected.
std::vector<SymbolicClass> indecomposable_pieces(const RepFamily& f);

// Least upper bound of the split levels of one piece.
Ordinal piece_sup(const SymbolicClass& c);

// N'(f): one shifted component per piece, the k-th shifted by the sum of the
// level suprema of the pieces before it.
SymbolicOrdinalSet n_prime(const RepFamily& f);

}  // namespace ordercalc
