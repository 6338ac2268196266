#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "ordercalc/canonise.hpp"
#include "ordercalc/families.hpp"

namespace ordercalc {

// ---------------------------------------------------------------------------
// Extension counting
// ---------------------------------------------------------------------------

// Result of counting the family points that begin with a given stem.  The
// count is exact: symbolic streams are walked only until their restriction
// below the stem height provably stabilises, and a stabilised restriction
// that still matches means infinitely many extensions.
struct ExtensionCount {
    bool finite = true;
    std::size_t count = 0;

    bool operator==(const ExtensionCount& o) const {
        return finite == o.finite && count == o.count;
    }
    bool operator!=(const ExtensionCount& o) const { return !(*this == o); }
};

ExtensionCount extension_count(const RepFamily& f, const Stem& s);

// ---------------------------------------------------------------------------
// Twin colouring
// ---------------------------------------------------------------------------

// A twin pair: two adjacent points of an infinite condensation class whose
// meet extends to nothing else in the family.
struct TwinWitness {
    Point low;
    Point high;
    Stem stem;
};

// Scans the sample windows of every infinite condensation class for a twin
// pair.  Pairs deeper inside a symbolic stream can never qualify (their meet
// is extended by the whole tail of the stream), so the window scan is
// exhaustive.
std::optional<TwinWitness> find_twins(const RepFamily& f);

// 1 when the family contains a twin pair, 0 otherwise.  Canonised families
// always colour 0.
int colour_C(const RepFamily& f);

// Same order type, opposite twin colour.  A family with twins is canonised;
// a family without gets a twin pair grafted onto the first block that can
// host one (throws when no block can).
RepFamily flip_C(const RepFamily& f);

// ---------------------------------------------------------------------------
// Crossing colouring
// ---------------------------------------------------------------------------

// The distinguished crossing of a family: the unique consecutive pair of the
// merged sample window with the least split height.  `index` points at the
// lower point of that pair.  Throws when the minimum is ambiguous or the
// window leaves no room for the neighbouring pairs.
struct ZetaCrossing {
    std::vector<Point> window;
    std::size_t index;
};

ZetaCrossing zeta_crossing(const RepFamily& f);

// Compares the split codes on the two sides of the crossing: with x the
// crossing point, colour 0 iff code(pred x, x) >= code(succ x, succ^2 x).
int colour_zeta(const RepFamily& f);

// Removes up to 8 points just above or just below the crossing until the
// colour flips; the order type is preserved throughout.
RepFamily flip_zeta(const RepFamily& f);

// ---------------------------------------------------------------------------
// Mutual colouring of two one-directional classes
// ---------------------------------------------------------------------------

// Canonised and trimmed form with two distinguished one-directional class
// blocks.  The distinguished classes are the two with the least first split
// (ties by block position); every other block is trimmed until all of its
// internal splits lie strictly above both distinguished first splits.
struct PreparedPair {
    RepFamily family;
    std::size_t block0 = 0;
    std::size_t block1 = 0;
};

PreparedPair prepare_two_classes(const RepFamily& f);

// Compares the position codes of the second splits of the two distinguished
// classes: colour 0 iff code(second split of C0) >= code(second split of C1).
int colour_mutual(const RepFamily& f);

// Flips by replacing one distinguished class with a subcopy that keeps its
// head point and first split but skips up to 8 groups.
RepFamily flip_mutual(const RepFamily& f);

// Joint stability of the mutual colouring under head-preserving subcopies:
// (a) the colour only depends on the prepared family, (b) preparing is
// idempotent, (c) subcopies keeping both heads leave the preparation's class
// choice and first splits unchanged, and (d) their colour agrees with the
// code comparison of the shifted second splits.
bool mutual_coherent(const RepFamily& f, std::size_t k0, std::size_t k1);

// ---------------------------------------------------------------------------
// Crossing-class dispatch
// ---------------------------------------------------------------------------

// Colours a family by its two-sided condensation classes.  When one class
// has the strictly least crossing split, that class alone is coloured by the
// crossing rule.  Otherwise the two leading classes are compared by the
// codes of their first upper-side splits, after every other two-sided class
// is trimmed from below until its last lower-side split clears both.
int colour_zeta_cc(const RepFamily& f);

// Flips case one through the crossing flip and case two by dropping up to 8
// points from the upper side of one leading class.
RepFamily flip_zeta_cc(const RepFamily& f);

// ---------------------------------------------------------------------------
// Splitting colouring of dyadic copies
// ---------------------------------------------------------------------------

// Compares the heights of the two remap targets: colour 0 iff the 0-side
// target sits at least as high as the 1-side target.
int colour_tausplit(const DyadicCopy& d);

// Deepens one remap target (1-steps below the 1-side, 0-steps below the
// 0-side) until the height comparison reverses; at most 8 steps.
DyadicCopy flip_tausplit(const DyadicCopy& d);

// ---------------------------------------------------------------------------
// Triple colouring
// ---------------------------------------------------------------------------

// For a family of explicit points x0 < x1 < x2 < ...: colour 0 iff the first
// split sits above the second, delta(x0,x1) > delta(x1,x2).  Consecutive
// splits are never equal, so the comparison is total.
int colour_triple(const RepFamily& f);

// Replaces the points with a fresh witness of the opposite colour and the
// same cardinality.
RepFamily flip_triple(const RepFamily& f);

// ---------------------------------------------------------------------------
// Selector and oracle plumbing
// ---------------------------------------------------------------------------

using PartialColouring = std::function<std::optional<int>(const RepFamily&)>;
using TotalColouring = std::function<int(const RepFamily&)>;

// Totalises a partial colouring with a fallback value.
TotalColouring extend_total(PartialColouring partial, int fallback);

using SelectorFn = std::function<Point(const SymbolicClass&)>;
using PointColouring = std::function<int(const Point&)>;

// Colour classes by colouring the selected point.
std::function<int(const SymbolicClass&)> lift_selector(SelectorFn sel, PointColouring col);

// A colouring of symbolic ordinal sets.
using GOracle = std::function<int(const SymbolicOrdinalSet&)>;

GOracle oracle_const0();
GOracle oracle_const1();
// Parity of the leading coefficient of the least element (0 for the empty
// leading term).
GOracle oracle_parity();

// Colour a class through its level set: kappa_G(F, c) = F(n_map(c)).
int kappa_G(const GOracle& F, const SymbolicClass& c);

// ---------------------------------------------------------------------------
// Polarised decompositions
// ---------------------------------------------------------------------------

// Splits a symbolic ordinal set at strictly increasing cut heights into
// cuts.size()+1 parts; part k holds the elements in [cut k-1, cut k).  A cut
// through the interior of a schedule materialises the finite run below it.
std::vector<SymbolicOrdinalSet> to_polarised(const SymbolicOrdinalSet& s,
                                             const std::vector<Ordinal>& cuts);

// Concatenates the parts back into one set.
SymbolicOrdinalSet from_polarised(const std::vector<SymbolicOrdinalSet>& parts);

// ---------------------------------------------------------------------------
// Affordable colouring
// ---------------------------------------------------------------------------

// Replaces every one-directional class block by a realized subcopy,
// positionally matched against `sels`; finite blocks pass through and count
// no selection.  Throws for blocks that do not realize.
RepFamily realize_family(const RepFamily& f, const std::vector<IndexSelection>& sels);

// When the family still carries a raw block, colours by the head of the
// leftmost one: 0 iff its first split sits above its second.  Fully
// canonised families are coloured by the oracle on their shifted level sets,
// F(n_prime(f)).
int colour_affordable(const GOracle& F, const RepFamily& f);

// Flips the raw-headed case by dropping points of the leftmost raw block up
// to its first ascent or descent.  Requires a raw block; throws when the
// level stream never descends inside its explicit window.
RepFamily flip_affordable(const RepFamily& f);

}  // namespace ordercalc
