#include "ordercalc/families.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <type_traits>

#include "ordercalc/errors.hpp"

namespace ordercalc {

namespace {

constexpr std::size_t kIterationGuard = 100000;
// Explicit validation window for tower interval checks.
constexpr std::size_t kTowerWindow = 32;

void sort_positions(std::vector<Ordinal>& v) {
    std::sort(v.begin(), v.end(), [](const Ordinal& a, const Ordinal& b) { return less(a, b); });
}

void require_sorted_distinct(const std::vector<Ordinal>& v, const char* what) {
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        if (!less(v[i], v[i + 1])) throw DomainError(std::string(what) + " positions repeat");
    }
}

bool contains_position(const std::vector<Ordinal>& v, const Ordinal& x) {
    for (const auto& p : v) {
        if (p == x) return true;
    }
    return false;
}

// Is v of the form start + step*n?  The progression increases, so the scan
// stops as soon as it overshoots.
bool affine_contains(const Ordinal& start, const Ordinal& step, const Ordinal& v) {
    if (less(v, start)) return false;
    Ordinal cur = start;
    for (std::size_t i = 0; i < kIterationGuard; ++i) {
        int c = cmp(cur, v);
        if (c == 0) return true;
        if (c > 0) return false;
        cur = add(cur, step);
    }
    throw DomainError("affine membership scan exceeded its bound");
}

Nat tail_multiplier(const LevelSchedule& s, std::size_t tail_index, std::size_t offset_slot) {
    return Nat(s.tail_stride) * Nat(tail_index) + Nat(s.tail_offsets[offset_slot]);
}

std::vector<Ordinal> union_of_groups(const LevelSchedule& s, std::size_t first, std::size_t last) {
    std::vector<Ordinal> out;
    for (std::size_t k = first; k <= last; ++k) {
        auto g = schedule_group(s, k);
        out.insert(out.end(), g.begin(), g.end());
    }
    sort_positions(out);
    return out;
}

std::vector<Ordinal> merge_bits(std::vector<Ordinal> a, const std::vector<Ordinal>& b) {
    a.insert(a.end(), b.begin(), b.end());
    sort_positions(a);
    return a;
}

// ---------------------------------------------------------------------------
// Bound patterns: a real or virtual point given by explicit bits plus
// affine families of bits, used to certify block separation.
// ---------------------------------------------------------------------------

struct AffineSet {
    Ordinal start;
    Ordinal step;
};

struct BoundPattern {
    bool attained = false;
    std::vector<Ordinal> bits;
    std::vector<AffineSet> tails;
};

void append_schedule_values(BoundPattern& p, const LevelSchedule& s) {
    for (const auto& g : s.prefix_groups) p.bits.insert(p.bits.end(), g.begin(), g.end());
    for (std::size_t o : s.tail_offsets) {
        p.tails.push_back({add(s.tail_start, mul(s.tail_step, nat(Nat(o)))),
                           mul(s.tail_step, nat(Nat(s.tail_stride)))});
    }
}

BoundPattern attained_pattern(const Point& x) {
    BoundPattern p;
    p.attained = true;
    p.bits = x.support;
    return p;
}

BoundPattern virtual_pattern(std::vector<Ordinal> bits) {
    BoundPattern p;
    p.bits = std::move(bits);
    return p;
}

// Ascending merged enumeration of the pattern's positions.
class PositionStream {
  public:
    explicit PositionStream(const BoundPattern& p) : bits_(p.bits) {
        sort_positions(bits_);
        for (const auto& t : p.tails) cursors_.push_back(t.start);
        steps_.reserve(p.tails.size());
        for (const auto& t : p.tails) steps_.push_back(t.step);
    }

    std::optional<Ordinal> peek() {
        std::optional<Ordinal> best;
        if (bit_index_ < bits_.size()) best = bits_[bit_index_];
        for (const auto& c : cursors_) {
            if (!best.has_value() || less(c, *best)) best = c;
        }
        return best;
    }

    void pop() {
        auto cur = peek();
        if (!cur.has_value()) return;
        // Advance every source sitting at the current position, so duplicate
        // positions across sources are emitted once.
        while (bit_index_ < bits_.size() && bits_[bit_index_] == *cur) ++bit_index_;
        for (std::size_t i = 0; i < cursors_.size(); ++i) {
            while (cursors_[i] == *cur) cursors_[i] = add(cursors_[i], steps_[i]);
        }
    }

  private:
    std::vector<Ordinal> bits_;
    std::size_t bit_index_ = 0;
    std::vector<Ordinal> cursors_;
    std::vector<Ordinal> steps_;
};

// Lexicographic comparison of two patterns: at the first position held by one
// side only, that side is the larger point.  Returns nullopt when the walk
// exhausts its step bound without certifying either way.
std::optional<int> pattern_cmp(const BoundPattern& a, const BoundPattern& b) {
    constexpr std::size_t kStepBound = 4096;
    PositionStream sa(a), sb(b);
    for (std::size_t steps = 0; steps < kStepBound; ++steps) {
        auto pa = sa.peek();
        auto pb = sb.peek();
        if (!pa.has_value() && !pb.has_value()) return 0;
        if (!pa.has_value()) return -1;
        if (!pb.has_value()) return 1;
        int c = cmp(*pa, *pb);
        if (c < 0) return 1;
        if (c > 0) return -1;
        sa.pop();
        sb.pop();
    }
    return std::nullopt;
}

enum class WhichBound { Min, Max };

BoundPattern block_bound(const Block& b, WhichBound which);

}  // namespace

// ---------------------------------------------------------------------------
// Level schedules
// ---------------------------------------------------------------------------

LevelSchedule make_schedule(std::vector<std::vector<Ordinal>> prefix_groups,
                            const Ordinal& tail_start, const Ordinal& tail_step) {
    return make_schedule(std::move(prefix_groups), tail_start, tail_step, 1, {0});
}

LevelSchedule make_schedule(std::vector<std::vector<Ordinal>> prefix_groups,
                            const Ordinal& tail_start, const Ordinal& tail_step,
                            std::size_t tail_stride, std::vector<std::size_t> tail_offsets) {
    LevelSchedule s;
    s.prefix_groups = std::move(prefix_groups);
    s.tail_start = tail_start;
    s.tail_step = tail_step;
    s.tail_stride = tail_stride;
    s.tail_offsets = std::move(tail_offsets);
    check_schedule(s);
    return s;
}

void check_schedule(const LevelSchedule& s) {
    if (cmp(s.tail_step, zero()) == 0) throw DomainError("schedule tail step must be positive");
    if (s.tail_stride == 0) throw DomainError("schedule tail stride must be positive");
    if (s.tail_offsets.empty() || s.tail_offsets.front() != 0) {
        throw DomainError("schedule tail offsets must start at 0");
    }
    for (std::size_t i = 0; i + 1 < s.tail_offsets.size(); ++i) {
        if (s.tail_offsets[i] >= s.tail_offsets[i + 1]) {
            throw DomainError("schedule tail offsets must increase");
        }
    }
    if (s.tail_offsets.back() >= s.tail_stride) {
        throw DomainError("schedule tail offsets must stay below the stride");
    }
    for (const auto& g : s.prefix_groups) {
        if (g.empty()) throw DomainError("schedule groups must be nonempty");
    }
    // Lambdas strictly increase across the prefix and into the tail.
    for (std::size_t k = 0; k + 1 < s.prefix_groups.size(); ++k) {
        if (!less(schedule_lambda(s, k), schedule_lambda(s, k + 1))) {
            throw DomainError("schedule split levels must increase");
        }
    }
    if (!s.prefix_groups.empty() &&
        !less(schedule_lambda(s, s.prefix_groups.size() - 1), s.tail_start)) {
        throw DomainError("schedule split levels must increase");
    }
    // All values pairwise distinct.  Tail values are distinct by construction;
    // prefix values are checked against each other and against the tail.
    std::vector<Ordinal> prefix_values;
    for (const auto& g : s.prefix_groups) prefix_values.insert(prefix_values.end(), g.begin(), g.end());
    for (std::size_t i = 0; i < prefix_values.size(); ++i) {
        for (std::size_t j = i + 1; j < prefix_values.size(); ++j) {
            if (prefix_values[i] == prefix_values[j]) {
                throw DomainError("schedule values must be pairwise distinct");
            }
        }
    }
    for (const auto& v : prefix_values) {
        for (std::size_t o : s.tail_offsets) {
            if (affine_contains(add(s.tail_start, mul(s.tail_step, nat(Nat(o)))),
                                mul(s.tail_step, nat(Nat(s.tail_stride))), v)) {
                throw DomainError("schedule values must be pairwise distinct");
            }
        }
    }
}

std::vector<Ordinal> schedule_group(const LevelSchedule& s, std::size_t k) {
    if (k < s.prefix_groups.size()) {
        auto g = s.prefix_groups[k];
        sort_positions(g);
        return g;
    }
    std::size_t t = k - s.prefix_groups.size();
    std::vector<Ordinal> g;
    g.reserve(s.tail_offsets.size());
    for (std::size_t slot = 0; slot < s.tail_offsets.size(); ++slot) {
        g.push_back(add(s.tail_start, mul(s.tail_step, nat(tail_multiplier(s, t, slot)))));
    }
    return g;
}

Ordinal schedule_lambda(const LevelSchedule& s, std::size_t k) {
    if (k < s.prefix_groups.size()) {
        const auto& g = s.prefix_groups[k];
        Ordinal m = g.front();
        for (const auto& v : g) m = min(m, v);
        return m;
    }
    std::size_t t = k - s.prefix_groups.size();
    return add(s.tail_start, mul(s.tail_step, nat(Nat(s.tail_stride) * Nat(t))));
}

Ordinal schedule_sup(const LevelSchedule& s) {
    return add(s.tail_start, mul(s.tail_step, omega()));
}

bool schedule_contains(const LevelSchedule& s, const Ordinal& v) {
    for (const auto& g : s.prefix_groups) {
        if (contains_position(g, v)) return true;
    }
    for (std::size_t o : s.tail_offsets) {
        if (affine_contains(add(s.tail_start, mul(s.tail_step, nat(Nat(o)))),
                            mul(s.tail_step, nat(Nat(s.tail_stride))), v)) {
            return true;
        }
    }
    return false;
}

std::size_t first_group_at_or_above(const LevelSchedule& s, const Ordinal& h) {
    if (!less(h, schedule_sup(s))) {
        throw DomainError("schedule split levels stay below the requested height");
    }
    for (std::size_t k = 0; k < kIterationGuard; ++k) {
        if (!less(schedule_lambda(s, k), h)) return k;
    }
    throw DomainError("schedule height scan exceeded its bound");
}

LevelSchedule schedule_drop(const LevelSchedule& s, std::size_t drop) {
    LevelSchedule out = s;
    if (drop <= s.prefix_groups.size()) {
        out.prefix_groups.erase(out.prefix_groups.begin(), out.prefix_groups.begin() + drop);
    } else {
        std::size_t t = drop - s.prefix_groups.size();
        out.prefix_groups.clear();
        out.tail_start = add(s.tail_start, mul(s.tail_step, nat(Nat(s.tail_stride) * Nat(t))));
    }
    check_schedule(out);
    return out;
}

LevelSchedule schedule_merge_head(const LevelSchedule& s, std::size_t merge) {
    LevelSchedule out = schedule_drop(s, merge + 1);
    out.prefix_groups.insert(out.prefix_groups.begin(), union_of_groups(s, 0, merge));
    check_schedule(out);
    return out;
}

bool schedule_equal(const LevelSchedule& a, const LevelSchedule& b) {
    return a.prefix_groups == b.prefix_groups && a.tail_start == b.tail_start &&
           a.tail_step == b.tail_step && a.tail_stride == b.tail_stride &&
           a.tail_offsets == b.tail_offsets;
}

// ---------------------------------------------------------------------------
// Symbolic classes
// ---------------------------------------------------------------------------

namespace {

void check_positions_in(const std::vector<Ordinal>& v, const Alpha& ambient, const char* what) {
    for (const auto& p : v) {
        if (!less(p, ambient.length)) throw DomainError(std::string(what) + " position exceeds the ambient length");
    }
}

void check_schedule_in(const LevelSchedule& s, const Alpha& ambient) {
    for (const auto& g : s.prefix_groups) check_positions_in(g, ambient, "schedule");
    if (cmp(schedule_sup(s), ambient.length) > 0) {
        throw DomainError("schedule tail exceeds the ambient length");
    }
}

void check_disjoint_from_schedule(const std::vector<Ordinal>& v, const LevelSchedule& s,
                                  const char* what) {
    for (const auto& p : v) {
        if (schedule_contains(s, p)) {
            throw DomainError(std::string(what) + " positions collide with schedule values");
        }
    }
}

void check_schedule_above(const LevelSchedule& s, const Ordinal& root) {
    for (const auto& g : s.prefix_groups) {
        for (const auto& v : g) {
            if (!less(root, v)) throw DomainError("zeta half levels must lie above the root");
        }
    }
    if (!less(root, s.tail_start)) throw DomainError("zeta half levels must lie above the root");
}

}  // namespace

SymbolicClass make_asc_class(const Alpha& ambient, std::vector<Ordinal> stem, LevelSchedule sched,
                             std::vector<Point> extras) {
    SymbolicClass c;
    c.ambient = ambient;
    c.kind = ClassKind::Asc;
    sort_positions(stem);
    c.stem = std::move(stem);
    c.sched = std::move(sched);
    c.root = zero();
    c.extras = std::move(extras);
    check_class(c);
    return c;
}

SymbolicClass make_desc_class(const Alpha& ambient, std::vector<Ordinal> stem, LevelSchedule sched,
                              std::vector<Point> extras) {
    SymbolicClass c;
    c.ambient = ambient;
    c.kind = ClassKind::Desc;
    sort_positions(stem);
    c.stem = std::move(stem);
    c.sched = std::move(sched);
    c.root = zero();
    c.extras = std::move(extras);
    check_class(c);
    return c;
}

SymbolicClass make_zeta_class(const Alpha& ambient, std::vector<Ordinal> stem, const Ordinal& root,
                              LevelSchedule left, LevelSchedule right, std::vector<Point> extras) {
    SymbolicClass c;
    c.ambient = ambient;
    c.kind = ClassKind::Zeta;
    sort_positions(stem);
    c.stem = std::move(stem);
    c.root = root;
    c.left = std::move(left);
    c.sched = std::move(right);
    c.extras = std::move(extras);
    check_class(c);
    return c;
}

void check_class(const SymbolicClass& c) {
    require_sorted_distinct(c.stem, "stem");
    check_positions_in(c.stem, c.ambient, "stem");
    check_schedule(c.sched);
    check_schedule_in(c.sched, c.ambient);
    check_disjoint_from_schedule(c.stem, c.sched, "stem");
    if (c.kind == ClassKind::Zeta) {
        check_schedule(c.left);
        check_schedule_in(c.left, c.ambient);
        check_disjoint_from_schedule(c.stem, c.left, "stem");
        if (!less(c.root, c.ambient.length)) throw DomainError("root position exceeds the ambient length");
        if (contains_position(c.stem, c.root)) throw DomainError("root position collides with the stem");
        check_schedule_above(c.left, c.root);
        check_schedule_above(c.sched, c.root);
        require_sorted_distinct(c.right_carry, "carry");
        check_positions_in(c.right_carry, c.ambient, "carry");
        for (const auto& v : c.right_carry) {
            if (!less(c.root, v)) throw DomainError("carry positions must lie above the root");
            if (contains_position(c.stem, v)) throw DomainError("carry positions collide with the stem");
            if (schedule_contains(c.sched, v) || schedule_contains(c.left, v)) {
                throw DomainError("carry positions collide with schedule values");
            }
        }
    } else if (!c.right_carry.empty()) {
        throw DomainError("carry positions only apply to zeta classes");
    }
    for (const auto& x : c.extras) {
        if (x.ambient != c.ambient) throw DomainError("extras must live in the class ambient");
    }
    for (std::size_t i = 0; i + 1 < c.extras.size(); ++i) {
        if (lex_cmp(c.extras[i], c.extras[i + 1]) >= 0) {
            throw DomainError("extras must be strictly increasing");
        }
    }
    if (!c.extras.empty()) {
        switch (c.kind) {
            case ClassKind::Asc:
                if (lex_cmp(c.extras.back(), class_decode(c, 0)) >= 0) {
                    throw DomainError("ascending extras must lie below the class minimum");
                }
                break;
            case ClassKind::Desc:
                if (lex_cmp(c.extras.front(), class_decode(c, 0)) <= 0) {
                    throw DomainError("descending extras must lie above the class maximum");
                }
                break;
            case ClassKind::Zeta:
                if (lex_cmp(c.extras.front(), zeta_left_decode(c, 0)) <= 0 ||
                    lex_cmp(c.extras.back(), zeta_right_decode(c, 0)) >= 0) {
                    throw DomainError("zeta extras must lie strictly between the halves");
                }
                break;
        }
    }
}

Point class_decode(const SymbolicClass& c, std::size_t n) {
    if (c.kind == ClassKind::Zeta) throw DomainError("zeta classes decode by half");
    std::vector<Ordinal> bits = c.stem;
    if (c.kind == ClassKind::Asc) {
        for (std::size_t k = 0; k < n; ++k) {
            auto g = schedule_group(c.sched, k);
            bits.insert(bits.end(), g.begin(), g.end());
        }
    } else {
        auto g = schedule_group(c.sched, n);
        bits.insert(bits.end(), g.begin(), g.end());
    }
    sort_positions(bits);
    return make_point(c.ambient, std::move(bits));
}

Point zeta_left_decode(const SymbolicClass& c, std::size_t n) {
    if (c.kind != ClassKind::Zeta) throw DomainError("only zeta classes have halves");
    std::vector<Ordinal> bits = c.stem;
    auto g = schedule_group(c.left, n);
    bits.insert(bits.end(), g.begin(), g.end());
    sort_positions(bits);
    return make_point(c.ambient, std::move(bits));
}

Point zeta_right_decode(const SymbolicClass& c, std::size_t n) {
    if (c.kind != ClassKind::Zeta) throw DomainError("only zeta classes have halves");
    std::vector<Ordinal> bits = c.stem;
    bits.push_back(c.root);
    bits.insert(bits.end(), c.right_carry.begin(), c.right_carry.end());
    for (std::size_t k = 0; k < n; ++k) {
        auto g = schedule_group(c.sched, k);
        bits.insert(bits.end(), g.begin(), g.end());
    }
    sort_positions(bits);
    return make_point(c.ambient, std::move(bits));
}

std::vector<Point> class_window(const SymbolicClass& c, std::size_t depth) {
    std::vector<Point> out;
    switch (c.kind) {
        case ClassKind::Asc:
            out = c.extras;
            for (std::size_t n = 0; n < depth; ++n) out.push_back(class_decode(c, n));
            break;
        case ClassKind::Desc:
            for (std::size_t n = depth; n-- > 0;) out.push_back(class_decode(c, n));
            out.insert(out.end(), c.extras.begin(), c.extras.end());
            break;
        case ClassKind::Zeta:
            for (std::size_t n = depth; n-- > 0;) out.push_back(zeta_left_decode(c, n));
            out.insert(out.end(), c.extras.begin(), c.extras.end());
            for (std::size_t n = 0; n < depth; ++n) out.push_back(zeta_right_decode(c, n));
            break;
    }
    return out;
}

SymbolicClass drop_class_prefix(const SymbolicClass& c, std::size_t k) {
    if (c.kind == ClassKind::Zeta) throw DomainError("zeta classes drop by side");
    SymbolicClass out = c;
    if (c.kind == ClassKind::Asc) {
        if (k > 0) out.stem = merge_bits(out.stem, union_of_groups(c.sched, 0, k - 1));
        out.sched = schedule_drop(c.sched, k);
    } else {
        out.sched = schedule_drop(c.sched, k);
    }
    check_class(out);
    return out;
}

SymbolicClass drop_zeta_side(const SymbolicClass& c, Side side, std::size_t k) {
    if (c.kind != ClassKind::Zeta) throw DomainError("only zeta classes drop by side");
    SymbolicClass out = c;
    if (side == Side::Left) {
        out.left = schedule_drop(c.left, k);
    } else {
        if (k > 0) out.right_carry = merge_bits(out.right_carry, union_of_groups(c.sched, 0, k - 1));
        out.sched = schedule_drop(c.sched, k);
    }
    check_class(out);
    return out;
}

SymbolicClass keep_head_drop(const SymbolicClass& c, std::size_t k) {
    if (c.kind == ClassKind::Zeta) throw DomainError("zeta classes drop by side");
    if (k == 0) return c;
    SymbolicClass out = c;
    if (c.kind == ClassKind::Asc) {
        out.sched = schedule_merge_head(c.sched, k);
    } else {
        out.sched = schedule_drop(c.sched, k + 1);
        out.sched.prefix_groups.insert(out.sched.prefix_groups.begin(), schedule_group(c.sched, 0));
        check_schedule(out.sched);
    }
    check_class(out);
    return out;
}

// ---------------------------------------------------------------------------
// Raw sequences
// ---------------------------------------------------------------------------

RawSequence make_raw(const Alpha& ambient, bool descending, std::vector<Ordinal> stem,
                     std::vector<Ordinal> levels, const Ordinal& tail_start,
                     const Ordinal& tail_step, std::size_t window) {
    RawSequence r;
    r.ambient = ambient;
    r.descending = descending;
    sort_positions(stem);
    r.stem = std::move(stem);
    r.levels = std::move(levels);
    r.tail_start = tail_start;
    r.tail_step = tail_step;
    r.window = window;
    check_raw(r);
    return r;
}

void check_raw(const RawSequence& r) {
    if (r.window == 0) throw DomainError("window certificate must cover at least one level");
    if (cmp(r.tail_step, zero()) == 0) throw DomainError("level tail step must be positive");
    require_sorted_distinct(r.stem, "stem");
    check_positions_in(r.stem, r.ambient, "stem");
    check_positions_in(r.levels, r.ambient, "level");
    if (cmp(add(r.tail_start, mul(r.tail_step, omega())), r.ambient.length) > 0) {
        throw DomainError("level tail exceeds the ambient length");
    }
    for (std::size_t i = 0; i < r.levels.size(); ++i) {
        for (std::size_t j = i + 1; j < r.levels.size(); ++j) {
            if (r.levels[i] == r.levels[j]) throw DomainError("levels must be pairwise distinct");
        }
        if (affine_contains(r.tail_start, r.tail_step, r.levels[i])) {
            throw DomainError("levels must be pairwise distinct");
        }
        if (contains_position(r.stem, r.levels[i])) {
            throw DomainError("levels collide with stem positions");
        }
    }
    for (const auto& p : r.stem) {
        if (affine_contains(r.tail_start, r.tail_step, p)) {
            throw DomainError("levels collide with stem positions");
        }
    }
    Ordinal m = raw_level(r, 0);
    for (std::size_t i = 1; i < r.window; ++i) m = min(m, raw_level(r, i));
    for (std::size_t i = r.window; i < r.levels.size(); ++i) {
        if (!less(m, r.levels[i])) throw DomainError("window certificate invalid");
    }
    if (r.window <= r.levels.size() && !less(m, r.tail_start)) {
        throw DomainError("window certificate invalid");
    }
}

Ordinal raw_level(const RawSequence& r, std::size_t i) {
    if (i < r.levels.size()) return r.levels[i];
    return add(r.tail_start, mul(r.tail_step, nat(Nat(i - r.levels.size()))));
}

Point raw_decode(const RawSequence& r, std::size_t n) {
    std::vector<Ordinal> bits = r.stem;
    if (!r.descending) {
        for (std::size_t i = 0; i < n; ++i) bits.push_back(raw_level(r, i));
    } else {
        // Running minima of the level sequence from n on.  At most one tail
        // value can enter: the first one, and only if it undercuts all the
        // explicit levels from n.
        std::optional<Ordinal> cur;
        for (std::size_t i = n; i < r.levels.size(); ++i) {
            if (!cur.has_value() || less(r.levels[i], *cur)) {
                cur = r.levels[i];
                bits.push_back(r.levels[i]);
            }
        }
        Ordinal first_tail = raw_level(r, std::max(n, r.levels.size()));
        if (!cur.has_value() || less(first_tail, *cur)) bits.push_back(first_tail);
    }
    sort_positions(bits);
    return make_point(r.ambient, std::move(bits));
}

RawSequence drop_raw_prefix(const RawSequence& r, std::size_t k) {
    RawSequence out = r;
    std::size_t explicit_taken = std::min(k, r.levels.size());
    if (!r.descending) {
        for (std::size_t i = 0; i < k; ++i) out.stem.push_back(raw_level(r, i));
        sort_positions(out.stem);
    }
    out.levels.erase(out.levels.begin(), out.levels.begin() + explicit_taken);
    if (k > explicit_taken) {
        out.tail_start = add(r.tail_start, mul(r.tail_step, nat(Nat(k - explicit_taken))));
    }
    // The global minimum always appears among the explicit levels or the
    // first tail value, so this window certificate is valid unconditionally.
    out.window = out.levels.size() + 1;
    check_raw(out);
    return out;
}

RawZeta make_raw_zeta(const Alpha& ambient, std::vector<Ordinal> stem, const Ordinal& root,
                      RawSequence left_levels, RawSequence right_levels) {
    RawZeta z;
    z.ambient = ambient;
    z.root = root;
    sort_positions(stem);
    left_levels.ambient = ambient;
    left_levels.descending = true;
    left_levels.stem = stem;
    z.left = std::move(left_levels);
    right_levels.ambient = ambient;
    right_levels.descending = false;
    stem.push_back(root);
    sort_positions(stem);
    right_levels.stem = std::move(stem);
    z.right = std::move(right_levels);
    check_raw_zeta(z);
    return z;
}

void check_raw_zeta(const RawZeta& z) {
    if (!less(z.root, z.ambient.length)) throw DomainError("root position exceeds the ambient length");
    if (!z.left.descending || z.right.descending) {
        throw DomainError("zeta halves must descend on the left and ascend on the right");
    }
    if (contains_position(z.left.stem, z.root)) throw DomainError("root position collides with the stem");
    if (!contains_position(z.right.stem, z.root)) {
        throw DomainError("right half must carry the root bit");
    }
    if (z.right.stem.size() != z.left.stem.size() + 1) {
        throw DomainError("zeta halves must share the class stem");
    }
    for (const auto& p : z.left.stem) {
        if (!contains_position(z.right.stem, p)) {
            throw DomainError("zeta halves must share the class stem");
        }
    }
    check_raw(z.left);
    check_raw(z.right);
    auto check_above = [&](const RawSequence& r) {
        for (const auto& l : r.levels) {
            if (!less(z.root, l)) throw DomainError("zeta half levels must lie above the root");
        }
        if (!less(z.root, r.tail_start)) throw DomainError("zeta half levels must lie above the root");
    };
    check_above(z.left);
    check_above(z.right);
}

// ---------------------------------------------------------------------------
// Towers
// ---------------------------------------------------------------------------

Tower make_tower(const Alpha& ambient, std::vector<Ordinal> stem, LevelSchedule roots,
                 const Ordinal& inner_prefix, const Ordinal& inner_scale,
                 const Ordinal& inner_step, const Ordinal& inner_offset) {
    Tower t;
    t.ambient = ambient;
    sort_positions(stem);
    t.stem = std::move(stem);
    t.roots = std::move(roots);
    t.inner_prefix = inner_prefix;
    t.inner_scale = inner_scale;
    t.inner_step = inner_step;
    t.inner_offset = inner_offset;
    check_tower(t);
    return t;
}

namespace {

bool ordinal_is_finite(const Ordinal& o) { return less(o, omega()); }

// Does inner_prefix + inner_scale*k + inner_step*n + inner_offset hit v for
// some n, at this fixed k?
bool tower_inner_hits(const Tower& t, std::size_t k, const Ordinal& v) {
    Ordinal base = add(add(t.inner_prefix, mul(t.inner_scale, nat(Nat(k)))), t.inner_offset);
    if (less(v, base)) return false;
    for (std::size_t n = 0; n < kIterationGuard; ++n) {
        Ordinal cur = tower_inner_level(t, k, n);
        int c = cmp(cur, v);
        if (c == 0) return true;
        if (c > 0) return false;
    }
    throw DomainError("tower membership scan exceeded its bound");
}

}  // namespace

void check_tower(const Tower& t) {
    check_schedule(t.roots);
    check_schedule_in(t.roots, t.ambient);
    if (t.roots.tail_offsets.size() != 1) throw DomainError("tower root groups must be singletons");
    for (const auto& g : t.roots.prefix_groups) {
        if (g.size() != 1) throw DomainError("tower root groups must be singletons");
    }
    require_sorted_distinct(t.stem, "stem");
    check_positions_in(t.stem, t.ambient, "stem");
    check_disjoint_from_schedule(t.stem, t.roots, "stem");
    // Inner levels must strictly increase along each interval; this is exact:
    // the step survives the offset iff offset < step*w.
    if (!less(t.inner_offset, mul(t.inner_step, omega()))) {
        throw DomainError("tower inner levels must increase along each interval");
    }
    // Containment: sup of the inner levels is prefix + max(scale*w, step*w).
    Ordinal growth = max(mul(t.inner_scale, omega()), mul(t.inner_step, omega()));
    if (cmp(add(t.inner_prefix, growth), t.ambient.length) > 0) {
        throw DomainError("tower inner levels exceed the ambient length");
    }
    // Every interval must hang strictly above its own root.  Checked
    // explicitly on a window, then certified beyond it by one of three
    // sufficient symbolic conditions.
    std::size_t window = t.roots.prefix_groups.size() + kTowerWindow;
    for (std::size_t k = 0; k < window; ++k) {
        if (!less(tower_root(t, k), tower_inner_level(t, k, 0))) {
            throw DomainError("tower intervals must hang above their roots");
        }
    }
    Ordinal root_sup = schedule_sup(t.roots);
    Ordinal root_step = mul(t.roots.tail_step, nat(Nat(t.roots.tail_stride)));
    bool finite_fields = ordinal_is_finite(t.inner_prefix) && ordinal_is_finite(t.inner_scale) &&
                         ordinal_is_finite(t.inner_step) && ordinal_is_finite(t.inner_offset) &&
                         ordinal_is_finite(t.roots.tail_start) && ordinal_is_finite(root_step);
    bool certified = false;
    if (finite_fields && cmp(t.inner_scale, root_step) >= 0) certified = true;
    if (!certified && cmp(root_sup, add(t.inner_prefix, t.inner_offset)) <= 0) certified = true;
    if (!certified && cmp(t.inner_scale, zero()) > 0 && cmp(t.inner_scale, root_sup) >= 0) {
        certified = true;
    }
    if (!certified) throw DomainError("tower root growth not certified");
    // Stem positions may not recur as inner levels.  Only intervals whose
    // root lies below the position can collide: past that, every inner level
    // exceeds the root and hence the position.
    for (const auto& p : t.stem) {
        if (less(p, root_sup)) {
            std::size_t k_stop = first_group_at_or_above(t.roots, add(p, nat(1)));
            for (std::size_t k = 0; k <= k_stop && k < kIterationGuard; ++k) {
                if (tower_inner_hits(t, k, p)) {
                    throw DomainError("stem positions collide with tower inner levels");
                }
            }
        } else if (cmp(t.inner_scale, zero()) == 0) {
            if (tower_inner_hits(t, 0, p)) {
                throw DomainError("stem positions collide with tower inner levels");
            }
        } else {
            for (std::size_t k = 0; k < kIterationGuard; ++k) {
                if (less(p, tower_inner_level(t, k, 0))) break;
                if (tower_inner_hits(t, k, p)) {
                    throw DomainError("stem positions collide with tower inner levels");
                }
                if (k + 1 == kIterationGuard) {
                    throw DomainError("tower membership scan exceeded its bound");
                }
            }
        }
    }
}

Ordinal tower_root(const Tower& t, std::size_t k) { return schedule_lambda(t.roots, k); }

Ordinal tower_inner_level(const Tower& t, std::size_t k, std::size_t n) {
    Ordinal v = add(t.inner_prefix, mul(t.inner_scale, nat(Nat(k))));
    v = add(v, mul(t.inner_step, nat(Nat(n))));
    return add(v, t.inner_offset);
}

Point tower_decode(const Tower& t, std::size_t k, std::size_t n) {
    std::vector<Ordinal> bits = t.stem;
    for (std::size_t j = 0; j < k; ++j) bits.push_back(tower_root(t, j));
    bits.push_back(tower_inner_level(t, k, n));
    sort_positions(bits);
    return make_point(t.ambient, std::move(bits));
}

SymbolicClass tower_interval(const Tower& t, std::size_t k) {
    std::vector<Ordinal> stem = t.stem;
    for (std::size_t j = 0; j < k; ++j) stem.push_back(tower_root(t, j));
    Ordinal start = tower_inner_level(t, k, 0);
    LevelSchedule sched = make_schedule({}, start, t.inner_step);
    return make_desc_class(t.ambient, std::move(stem), std::move(sched));
}

Tower drop_tower_intervals(const Tower& t, std::size_t k) {
    Tower out = t;
    for (std::size_t j = 0; j < k; ++j) out.stem.push_back(tower_root(t, j));
    sort_positions(out.stem);
    out.roots = schedule_drop(t.roots, k);
    out.inner_prefix = add(t.inner_prefix, mul(t.inner_scale, nat(Nat(k))));
    check_tower(out);
    return out;
}

// ---------------------------------------------------------------------------
// Families
// ---------------------------------------------------------------------------

FiniteBlock make_finite_block(const Alpha& ambient, std::vector<Point> points) {
    if (points.empty()) throw DomainError("finite blocks must contain a point");
    for (const auto& p : points) {
        if (p.ambient != ambient) throw DomainError("points must live in the family ambient");
    }
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        if (lex_cmp(points[i], points[i + 1]) >= 0) {
            throw DomainError("finite block points must be strictly increasing");
        }
    }
    return FiniteBlock{ambient, std::move(points)};
}

const Alpha& block_ambient(const Block& b) {
    return std::visit([](const auto& x) -> const Alpha& { return x.ambient; }, b);
}

RepFamily make_family(const Alpha& ambient, std::vector<Block> blocks) {
    RepFamily f;
    f.ambient = ambient;
    f.blocks = std::move(blocks);
    check_family(f);
    return f;
}

void check_family(const RepFamily& f) {
    for (const auto& b : f.blocks) {
        if (block_ambient(b) != f.ambient) {
            throw DomainError("blocks must live in the family ambient");
        }
        std::visit([](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, SymbolicClass>) check_class(x);
            else if constexpr (std::is_same_v<T, RawSequence>) check_raw(x);
            else if constexpr (std::is_same_v<T, RawZeta>) check_raw_zeta(x);
            else if constexpr (std::is_same_v<T, Tower>) check_tower(x);
        }, b);
    }
    for (std::size_t i = 0; i + 1 < f.blocks.size(); ++i) {
        if (compare_blocks(f.blocks[i], f.blocks[i + 1]) != BlockOrder::Less) {
            throw DomainError("blocks must be listed in increasing separated order");
        }
    }
}

std::vector<Point> block_sample(const Block& b, std::size_t depth) {
    std::vector<Point> out;
    if (const auto* fin = std::get_if<FiniteBlock>(&b)) {
        out = fin->points;
    } else if (const auto* c = std::get_if<SymbolicClass>(&b)) {
        out = class_window(*c, depth);
    } else if (const auto* r = std::get_if<RawSequence>(&b)) {
        if (!r->descending) {
            for (std::size_t n = 0; n < depth; ++n) out.push_back(raw_decode(*r, n));
        } else {
            for (std::size_t n = depth; n-- > 0;) out.push_back(raw_decode(*r, n));
        }
    } else if (const auto* z = std::get_if<RawZeta>(&b)) {
        for (std::size_t n = depth; n-- > 0;) out.push_back(raw_decode(z->left, n));
        for (std::size_t n = 0; n < depth; ++n) out.push_back(raw_decode(z->right, n));
    } else if (const auto* t = std::get_if<Tower>(&b)) {
        for (std::size_t k = 0; k < depth; ++k) {
            for (std::size_t n = depth; n-- > 0;) out.push_back(tower_decode(*t, k, n));
        }
    }
    return out;
}

TypeExpr family_type_expr(const RepFamily& f) {
    std::vector<TypeExpr> parts;
    for (const auto& b : f.blocks) {
        if (const auto* fin = std::get_if<FiniteBlock>(&b)) {
            parts.push_back(t_fin(Nat(fin->points.size())));
        } else if (const auto* c = std::get_if<SymbolicClass>(&b)) {
            switch (c->kind) {
                case ClassKind::Asc:
                    if (!c->extras.empty()) parts.push_back(t_fin(Nat(c->extras.size())));
                    parts.push_back(t_ord(omega()));
                    break;
                case ClassKind::Desc:
                    parts.push_back(t_rev(t_ord(omega())));
                    if (!c->extras.empty()) parts.push_back(t_fin(Nat(c->extras.size())));
                    break;
                case ClassKind::Zeta:
                    parts.push_back(t_rev(t_ord(omega())));
                    if (!c->extras.empty()) parts.push_back(t_fin(Nat(c->extras.size())));
                    parts.push_back(t_ord(omega()));
                    break;
            }
        } else if (const auto* r = std::get_if<RawSequence>(&b)) {
            if (r->descending) {
                parts.push_back(t_rev(t_ord(omega())));
            } else {
                parts.push_back(t_ord(omega()));
            }
        } else if (std::get_if<RawZeta>(&b)) {
            parts.push_back(t_zeta());
        } else if (std::get_if<Tower>(&b)) {
            parts.push_back(t_prod(t_rev(t_ord(omega())), t_ord(omega())));
        }
    }
    if (parts.empty()) return t_fin(0);
    if (parts.size() == 1) return parts.front();
    return t_sum(std::move(parts));
}

NormalReport family_order_type(const RepFamily& f) { return normalize(family_type_expr(f)); }

bool same_order_type(const RepFamily& a, const RepFamily& b) {
    NormalReport ra = family_order_type(a);
    NormalReport rb = family_order_type(b);
    if (ra.embeds_eta != rb.embeds_eta || ra.embeds_omega_omegastar != rb.embeds_omega_omegastar ||
        ra.embeds_omegastar_omega != rb.embeds_omegastar_omega) {
        return false;
    }
    if (ra.form.has_value() != rb.form.has_value()) return false;
    if (!ra.form.has_value()) return true;
    return same_normal_type(ra, rb);
}

// ---------------------------------------------------------------------------
// Block bounds and separation
// ---------------------------------------------------------------------------

namespace {

BoundPattern class_bound(const SymbolicClass& c, WhichBound which) {
    switch (c.kind) {
        case ClassKind::Asc:
            if (which == WhichBound::Min) {
                return attained_pattern(c.extras.empty() ? class_decode(c, 0) : c.extras.front());
            } else {
                BoundPattern p = virtual_pattern(c.stem);
                append_schedule_values(p, c.sched);
                return p;
            }
        case ClassKind::Desc:
            if (which == WhichBound::Min) {
                return virtual_pattern(c.stem);
            } else {
                return attained_pattern(c.extras.empty() ? class_decode(c, 0) : c.extras.back());
            }
        case ClassKind::Zeta:
        default:
            if (which == WhichBound::Min) {
                return virtual_pattern(c.stem);
            } else {
                std::vector<Ordinal> bits = c.stem;
                bits.push_back(c.root);
                bits.insert(bits.end(), c.right_carry.begin(), c.right_carry.end());
                BoundPattern p = virtual_pattern(std::move(bits));
                append_schedule_values(p, c.sched);
                return p;
            }
    }
}

BoundPattern raw_bound(const RawSequence& r, WhichBound which) {
    if (!r.descending) {
        if (which == WhichBound::Min) return attained_pattern(raw_decode(r, 0));
        BoundPattern p = virtual_pattern(r.stem);
        p.bits.insert(p.bits.end(), r.levels.begin(), r.levels.end());
        p.tails.push_back({r.tail_start, r.tail_step});
        return p;
    }
    if (which == WhichBound::Min) return virtual_pattern(r.stem);
    return attained_pattern(raw_decode(r, 0));
}

BoundPattern block_bound_impl(const Block& b, WhichBound which) {
    if (const auto* fin = std::get_if<FiniteBlock>(&b)) {
        return attained_pattern(which == WhichBound::Min ? fin->points.front() : fin->points.back());
    }
    if (const auto* c = std::get_if<SymbolicClass>(&b)) return class_bound(*c, which);
    if (const auto* r = std::get_if<RawSequence>(&b)) return raw_bound(*r, which);
    if (const auto* z = std::get_if<RawZeta>(&b)) {
        if (which == WhichBound::Min) return virtual_pattern(z->left.stem);
        BoundPattern p = virtual_pattern(z->right.stem);
        p.bits.insert(p.bits.end(), z->right.levels.begin(), z->right.levels.end());
        p.tails.push_back({z->right.tail_start, z->right.tail_step});
        return p;
    }
    const auto& t = std::get<Tower>(b);
    if (which == WhichBound::Min) return virtual_pattern(t.stem);
    BoundPattern p = virtual_pattern(t.stem);
    append_schedule_values(p, t.roots);
    return p;
}

}  // namespace

namespace {
BoundPattern block_bound(const Block& b, WhichBound which) { return block_bound_impl(b, which); }

// Does every point of a precede every point of b?
bool certified_before(const Block& a, const Block& b) {
    BoundPattern amax = block_bound(a, WhichBound::Max);
    BoundPattern bmin = block_bound(b, WhichBound::Min);
    auto c = pattern_cmp(amax, bmin);
    if (!c.has_value()) return false;
    if (amax.attained && bmin.attained) return *c < 0;
    return *c <= 0;
}
}  // namespace

BlockOrder compare_blocks(const Block& a, const Block& b) {
    if (certified_before(a, b)) return BlockOrder::Less;
    if (certified_before(b, a)) return BlockOrder::Greater;
    return BlockOrder::Overlap;
}

// ---------------------------------------------------------------------------
// Condensation classes
// ---------------------------------------------------------------------------

namespace {

enum class BlockShape { Fin, Asc, Desc, Zeta, Tower };

BlockShape shape_of(const Block& b) {
    if (std::get_if<FiniteBlock>(&b)) return BlockShape::Fin;
    if (const auto* c = std::get_if<SymbolicClass>(&b)) {
        switch (c->kind) {
            case ClassKind::Asc: return BlockShape::Asc;
            case ClassKind::Desc: return BlockShape::Desc;
            case ClassKind::Zeta: return BlockShape::Zeta;
        }
    }
    if (const auto* r = std::get_if<RawSequence>(&b)) {
        return r->descending ? BlockShape::Desc : BlockShape::Asc;
    }
    if (std::get_if<RawZeta>(&b)) return BlockShape::Zeta;
    return BlockShape::Tower;
}

}  // namespace

std::vector<CondClass> cc_enumerate(const RepFamily& f) {
    std::vector<CondClass> out;
    constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::size_t pending_first = npos;
    bool absorbing = false;  // the last emitted class descends and may extend
    auto flush_pending = [&](std::size_t before) {
        if (pending_first != npos) {
            out.push_back({CcKind::Finite, pending_first, before - 1});
            pending_first = npos;
        }
    };
    for (std::size_t i = 0; i < f.blocks.size(); ++i) {
        switch (shape_of(f.blocks[i])) {
            case BlockShape::Fin:
                if (absorbing) {
                    out.back().last_block = i;
                } else if (pending_first == npos) {
                    pending_first = i;
                }
                break;
            case BlockShape::Asc:
                if (absorbing) {
                    out.back().kind = CcKind::Zeta;
                    out.back().last_block = i;
                    absorbing = false;
                } else if (pending_first != npos) {
                    out.push_back({CcKind::Omega, pending_first, i});
                    pending_first = npos;
                } else {
                    out.push_back({CcKind::Omega, i, i});
                }
                break;
            case BlockShape::Desc:
                flush_pending(i);
                out.push_back({CcKind::OmegaStar, i, i});
                absorbing = true;
                break;
            case BlockShape::Zeta:
                flush_pending(i);
                absorbing = false;
                out.push_back({CcKind::Zeta, i, i});
                break;
            case BlockShape::Tower:
                flush_pending(i);
                absorbing = false;
                out.push_back({CcKind::TowerIntervals, i, i});
                break;
        }
    }
    flush_pending(f.blocks.size());
    return out;
}

std::string to_string(ClassKind k) {
    switch (k) {
        case ClassKind::Asc: return "asc";
        case ClassKind::Desc: return "desc";
        case ClassKind::Zeta: return "zeta";
    }
    return "";
}

// ---------------------------------------------------------------------------
// Embedded dyadic trees
// ---------------------------------------------------------------------------

DyadicCopy make_dyadic(const Alpha& ambient, std::vector<Ordinal> bits, const Ordinal& height,
                       std::size_t pad0, std::size_t pad1, std::vector<int> remap0,
                       std::vector<int> remap1) {
    DyadicCopy d;
    d.ambient = ambient;
    sort_positions(bits);
    d.bits = std::move(bits);
    d.height = height;
    d.pad0 = pad0;
    d.pad1 = pad1;
    d.remap0 = std::move(remap0);
    d.remap1 = std::move(remap1);
    check_dyadic(d);
    return d;
}

void check_dyadic(const DyadicCopy& d) {
    if (d.pad0 == 0 || d.pad1 == 0) throw DomainError("dyadic pads must be positive");
    require_sorted_distinct(d.bits, "stem");
    for (const auto& p : d.bits) {
        if (!less(p, d.height)) throw DomainError("dyadic stem bits must lie below the root height");
    }
    if (cmp(add(d.height, omega()), d.ambient.length) > 0) {
        throw DomainError("dyadic tree exceeds the ambient length");
    }
    if (d.remap0.empty() || d.remap0.front() != 0) {
        throw DomainError("remap0 must stay inside the 0-side subtree");
    }
    if (d.remap1.empty() || d.remap1.front() != 1) {
        throw DomainError("remap1 must stay inside the 1-side subtree");
    }
    for (int b : d.remap0) {
        if (b != 0 && b != 1) throw DomainError("paths must consist of bits");
    }
    for (int b : d.remap1) {
        if (b != 0 && b != 1) throw DomainError("paths must consist of bits");
    }
}

Ordinal dyadic_height(const DyadicCopy& d, const std::vector<int>& path) {
    Ordinal h = d.height;
    for (int b : path) h = add(h, nat(static_cast<unsigned long>(b ? d.pad1 : d.pad0)));
    return h;
}

Stem dyadic_stem(const DyadicCopy& d, const std::vector<int>& path) {
    std::vector<Ordinal> bits = d.bits;
    Ordinal h = d.height;
    for (int b : path) {
        if (b) bits.push_back(h);
        h = add(h, nat(static_cast<unsigned long>(b ? d.pad1 : d.pad0)));
    }
    return make_stem(d.ambient, h, std::move(bits));
}

std::vector<int> dyadic_path(const DyadicCopy& d, std::vector<int> path) {
    if (path.empty()) return path;
    const std::vector<int>& head = path.front() ? d.remap1 : d.remap0;
    std::vector<int> out = head;
    out.insert(out.end(), path.begin() + 1, path.end());
    return out;
}

Point dyadic_point(const DyadicCopy& d, const std::vector<int>& path) {
    Stem s = dyadic_stem(d, dyadic_path(d, path));
    std::vector<Ordinal> bits = s.bits;
    bits.push_back(s.height);
    return make_point(d.ambient, std::move(bits));
}

std::string to_string(CcKind k) {
    switch (k) {
        case CcKind::Finite: return "finite";
        case CcKind::Omega: return "w";
        case CcKind::OmegaStar: return "w~";
        case CcKind::Zeta: return "zeta";
        case CcKind::TowerIntervals: return "w~ intervals";
    }
    return "";
}

}  // namespace ordercalc
