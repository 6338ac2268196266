#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "ordercalc/cantorlex.hpp"
#include "ordercalc/ordertype.hpp"

namespace ordercalc {

// ---------------------------------------------------------------------------
// Level schedules
// ---------------------------------------------------------------------------

// A finitely described infinite sequence of splitting-level groups.
//
// Group k is an explicit finite set of positions for k < prefix_groups.size();
// past the prefix, group (prefix size + k) is
//
//     { tail_start + tail_step * (tail_stride * k + o) : o in tail_offsets }.
//
// The split level lambda(k) of group k is its minimum.  Schedules must have
// strictly increasing lambdas and globally distinct values; values inside a
// group other than the minimum are allowed to overshoot later lambdas, which
// is exactly the freedom canonisation output needs.
struct LevelSchedule {
    std::vector<std::vector<Ordinal>> prefix_groups;
    Ordinal tail_start;
    Ordinal tail_step;
    std::size_t tail_stride = 1;
    std::vector<std::size_t> tail_offsets = {0};
};

LevelSchedule make_schedule(std::vector<std::vector<Ordinal>> prefix_groups,
                            const Ordinal& tail_start, const Ordinal& tail_step);
LevelSchedule make_schedule(std::vector<std::vector<Ordinal>> prefix_groups,
                            const Ordinal& tail_start, const Ordinal& tail_step,
                            std::size_t tail_stride, std::vector<std::size_t> tail_offsets);

// Throws DomainError when the shape constraints fail.
void check_schedule(const LevelSchedule& s);

std::vector<Ordinal> schedule_group(const LevelSchedule& s, std::size_t k);
Ordinal schedule_lambda(const LevelSchedule& s, std::size_t k);
// Least upper bound of all values: tail_start + tail_step * tail_stride * w.
Ordinal schedule_sup(const LevelSchedule& s);
bool schedule_contains(const LevelSchedule& s, const Ordinal& v);
// First group index whose lambda is >= h (groups are scanned in order).
std::size_t first_group_at_or_above(const LevelSchedule& s, const Ordinal& h);
// Schedule whose group k is the old group k + drop.
LevelSchedule schedule_drop(const LevelSchedule& s, std::size_t drop);
// Schedule whose group 0 is the union of the old groups 0..merge and whose
// later groups continue with old group merge+1.  Keeps lambda(0).
LevelSchedule schedule_merge_head(const LevelSchedule& s, std::size_t merge);

bool schedule_equal(const LevelSchedule& a, const LevelSchedule& b);

// "sched(prefix=..., start=..., step=...)", matching the family file grammar.
std::string to_string(const LevelSchedule& s);

// ---------------------------------------------------------------------------
// Symbolic condensation classes
// ---------------------------------------------------------------------------

enum class ClassKind { Asc, Desc, Zeta };

// A single symbolic class of points in <^alpha 2, <lex>:
//
//   Asc   x_n = stem u (groups 0..n-1),        increasing, type w
//   Desc  y_n = stem u group n,                decreasing, type w*
//   Zeta  left half: stem u left-group n with bit 0 at root (decreasing),
//         right half: stem u {root} u (right groups 0..n-1) (increasing)
//
// extras are finitely many explicit points glued at the closed end: below the
// minimum of an Asc class, above the maximum of a Desc class, or strictly
// between the halves of a Zeta class.  They never change the class's type.
struct SymbolicClass {
    Alpha ambient;
    ClassKind kind = ClassKind::Asc;
    std::vector<Ordinal> stem;
    LevelSchedule sched;   // Asc/Desc schedule; the right half for Zeta
    Ordinal root;          // Zeta only
    LevelSchedule left;    // Zeta only
    // Zeta only: positions above root carried by every right-half point.
    // Dropping the smallest right points absorbs their groups here, keeping
    // the left half (which has bit 0 at root and at these positions) intact.
    std::vector<Ordinal> right_carry;
    std::vector<Point> extras;
};

SymbolicClass make_asc_class(const Alpha& ambient, std::vector<Ordinal> stem,
                             LevelSchedule sched, std::vector<Point> extras = {});
SymbolicClass make_desc_class(const Alpha& ambient, std::vector<Ordinal> stem,
                              LevelSchedule sched, std::vector<Point> extras = {});
SymbolicClass make_zeta_class(const Alpha& ambient, std::vector<Ordinal> stem,
                              const Ordinal& root, LevelSchedule left, LevelSchedule right,
                              std::vector<Point> extras = {});
void check_class(const SymbolicClass& c);

// n-th point of an Asc or Desc class; throws for Zeta.
Point class_decode(const SymbolicClass& c, std::size_t n);
// Halves of a Zeta class; left_decode is decreasing, right_decode increasing.
Point zeta_left_decode(const SymbolicClass& c, std::size_t n);
Point zeta_right_decode(const SymbolicClass& c, std::size_t n);

// First `depth` decoded points of each stream plus the extras, sorted
// increasing under lex_cmp.
std::vector<Point> class_window(const SymbolicClass& c, std::size_t depth);

// Asc: absorb the first k groups into the stem.  Desc: skip the first k
// groups.  Extras survive unchanged; throws for Zeta.
SymbolicClass drop_class_prefix(const SymbolicClass& c, std::size_t k);
// Remove the k points adjacent to the root on one side of a Zeta class
// (side Left drops the largest left points, side Right the smallest right
// points).
SymbolicClass drop_zeta_side(const SymbolicClass& c, Side side, std::size_t k);
// Remove points 1..k of the enumeration while keeping point 0 and the first
// split level: Asc merges groups 0..k into one, Desc removes groups 1..k.
SymbolicClass keep_head_drop(const SymbolicClass& c, std::size_t k);

// ---------------------------------------------------------------------------
// Raw (not yet canonised) descriptions
// ---------------------------------------------------------------------------

// Level sequence given explicitly up to a point and affinely afterwards:
// level(E + n) = tail_start + tail_step * n where E = levels.size().
//
// Ascending decode:  x_n = stem u { level(i) : i < n }.
// Descending decode: y_n = stem u { level(i) : i >= n, level(i) < level(j)
//                                   for every n <= j < i }  (running minima).
//
// window is a certificate that the minimum of the whole level sequence occurs
// among the first `window` entries; construction fails when a later entry
// undercuts that minimum.
struct RawSequence {
    Alpha ambient;
    bool descending = false;
    std::vector<Ordinal> stem;
    std::vector<Ordinal> levels;
    Ordinal tail_start;
    Ordinal tail_step;
    std::size_t window = 1;
};

RawSequence make_raw(const Alpha& ambient, bool descending, std::vector<Ordinal> stem,
                     std::vector<Ordinal> levels, const Ordinal& tail_start,
                     const Ordinal& tail_step, std::size_t window);
void check_raw(const RawSequence& r);

Ordinal raw_level(const RawSequence& r, std::size_t i);
Point raw_decode(const RawSequence& r, std::size_t n);
// Remove the first k points of the enumeration: ascending absorbs levels into
// the stem, descending skips levels.  The window certificate is recomputed.
RawSequence drop_raw_prefix(const RawSequence& r, std::size_t k);

// Two raw halves around a pinned root bit.  The left half descends with bit 0
// at root, the right half ascends with bit 1 at root; every level lies above
// root.  Both halves share the class stem.
struct RawZeta {
    Alpha ambient;
    Ordinal root;
    RawSequence left;
    RawSequence right;
};

RawZeta make_raw_zeta(const Alpha& ambient, std::vector<Ordinal> stem, const Ordinal& root,
                      RawSequence left_levels, RawSequence right_levels);
void check_raw_zeta(const RawZeta& z);

// ---------------------------------------------------------------------------
// Towers: w-many descending intervals, type w* . w
// ---------------------------------------------------------------------------

// Interval k descends below the branch point at root R(k) = roots lambda(k):
//
//     y^k_n = stem u { R(j) : j < k } u { L_k(n) }
//     L_k(n) = inner_prefix + inner_scale * k + inner_step * n + inner_offset
//
// Each interval is a copy of w*; the intervals themselves ascend, giving the
// formless type w* . w.  Root groups must be singletons.
struct Tower {
    Alpha ambient;
    std::vector<Ordinal> stem;
    LevelSchedule roots;
    Ordinal inner_prefix;
    Ordinal inner_scale;
    Ordinal inner_step;
    Ordinal inner_offset;
};

Tower make_tower(const Alpha& ambient, std::vector<Ordinal> stem, LevelSchedule roots,
                 const Ordinal& inner_prefix, const Ordinal& inner_scale,
                 const Ordinal& inner_step, const Ordinal& inner_offset);
void check_tower(const Tower& t);

Ordinal tower_root(const Tower& t, std::size_t k);
Ordinal tower_inner_level(const Tower& t, std::size_t k, std::size_t n);
// n-th point of interval k in decreasing order.
Point tower_decode(const Tower& t, std::size_t k, std::size_t n);
// Interval k of the tower as a standalone descending class.
SymbolicClass tower_interval(const Tower& t, std::size_t k);
// Tower whose interval j is the old interval j + k.
Tower drop_tower_intervals(const Tower& t, std::size_t k);

// ---------------------------------------------------------------------------
// Block-composed families
// ---------------------------------------------------------------------------

struct FiniteBlock {
    Alpha ambient;
    std::vector<Point> points;  // strictly increasing
};

FiniteBlock make_finite_block(const Alpha& ambient, std::vector<Point> points);

using Block = std::variant<FiniteBlock, SymbolicClass, RawSequence, RawZeta, Tower>;

// A finitely described subset of <^alpha 2: finitely many blocks, pairwise
// order-separated and listed in increasing order.
struct RepFamily {
    Alpha ambient;
    std::vector<Block> blocks;
};

RepFamily make_family(const Alpha& ambient, std::vector<Block> blocks);
void check_family(const RepFamily& f);

const Alpha& block_ambient(const Block& b);

// Representative decoded points of one block, sorted increasing: a finite
// block in full, `depth` points per enumeration stream otherwise (towers use
// depth intervals of depth points each).
std::vector<Point> block_sample(const Block& b, std::size_t depth);

// Order type of the family as a finite sum report.
NormalReport family_order_type(const RepFamily& f);
bool same_order_type(const RepFamily& a, const RepFamily& b);
TypeExpr family_type_expr(const RepFamily& f);

enum class BlockOrder { Less, Greater, Overlap };
// Decides whether every point of a precedes every point of b (Less), the
// mirror (Greater), or neither can be certified (Overlap).
BlockOrder compare_blocks(const Block& a, const Block& b);

// ---------------------------------------------------------------------------
// Condensation classes of a family
// ---------------------------------------------------------------------------

enum class CcKind { Finite, Omega, OmegaStar, Zeta, TowerIntervals };

// One condensation class (maximal set of points finitely many apart), given
// as the half-open block range [first_block, last_block] that realises it.
// Towers contribute w-many w* classes at once and are reported as a single
// TowerIntervals entry.
struct CondClass {
    CcKind kind = CcKind::Finite;
    std::size_t first_block = 0;
    std::size_t last_block = 0;
};

// Splits the block list into condensation classes.  A descending block
// absorbs the finite blocks after it; a run of finite blocks (possibly after
// a descending block) directly before an ascending block joins that class,
// so desc + fin* + asc fuses into one zeta class.
std::vector<CondClass> cc_enumerate(const RepFamily& f);

std::string to_string(ClassKind k);
std::string to_string(CcKind k);

// ---------------------------------------------------------------------------
// Embedded dyadic trees
// ---------------------------------------------------------------------------

// A copy of the full binary tree ^{<w}2 inside <^alpha 2: node t maps to the
// stem g(t) built from the base bits, growing by pad0 levels per 0-step and
// pad1 levels per 1-step, with a 1-bit recorded at the height where each
// 1-step happens.  The two top-level subtrees can be remapped to deeper
// nodes (remap0 below the 0-side, remap1 below the 1-side), which is how the
// splitting structure gets rebalanced.
struct DyadicCopy {
    Alpha ambient;
    std::vector<Ordinal> bits;  // positions below the root height
    Ordinal height;             // root height
    std::size_t pad0 = 1;
    std::size_t pad1 = 1;
    std::vector<int> remap0 = {0};
    std::vector<int> remap1 = {1};
};

DyadicCopy make_dyadic(const Alpha& ambient, std::vector<Ordinal> bits, const Ordinal& height,
                       std::size_t pad0, std::size_t pad1, std::vector<int> remap0 = {0},
                       std::vector<int> remap1 = {1});
void check_dyadic(const DyadicCopy& d);

// Height and stem of the unremapped node g(path).
Ordinal dyadic_height(const DyadicCopy& d, const std::vector<int>& path);
Stem dyadic_stem(const DyadicCopy& d, const std::vector<int>& path);
// Remapped address: the first step is routed through remap0/remap1.
std::vector<int> dyadic_path(const DyadicCopy& d, std::vector<int> path);
// Decoded point of the remapped node: its stem bits plus a 1 at its height.
Point dyadic_point(const DyadicCopy& d, const std::vector<int>& path);

}  // namespace ordercalc
