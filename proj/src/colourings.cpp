#include "ordercalc/colourings.hpp"

#include <algorithm>
#include <utility>
#include <variant>

#include "ordercalc/errors.hpp"
#include "ordercalc/family_io.hpp"

namespace ordercalc {

namespace {

constexpr std::size_t kScanGuard = 4096;
constexpr std::size_t kFlipWindow = 8;
constexpr std::size_t kSampleDepth = 4;
constexpr std::size_t kCutGuard = 1000;
constexpr std::size_t kTrimGuard = 64;

// ---------------------------------------------------------------------------
// Sorted position-vector helpers
// ---------------------------------------------------------------------------

bool ord_less(const Ordinal& a, const Ordinal& b) { return less(a, b); }

std::vector<Ordinal> restrict_below(const std::vector<Ordinal>& v, const Ordinal& h) {
    std::vector<Ordinal> out;
    for (const auto& x : v) {
        if (less(x, h)) out.push_back(x);
    }
    return out;
}

bool holds_position(const std::vector<Ordinal>& v, const Ordinal& x) {
    for (const auto& b : v) {
        if (b == x) return true;
    }
    return false;
}

bool subset_of(const std::vector<Ordinal>& a, const std::vector<Ordinal>& b) {
    for (const auto& x : a) {
        if (!holds_position(b, x)) return false;
    }
    return true;
}

void insert_position(std::vector<Ordinal>& v, const Ordinal& x) {
    auto it = std::lower_bound(v.begin(), v.end(), x, ord_less);
    if (it == v.end() || *it != x) v.insert(it, x);
}

std::vector<Ordinal> positions_minus(const std::vector<Ordinal>& a, const std::vector<Ordinal>& b) {
    std::vector<Ordinal> out;
    for (const auto& x : a) {
        if (!holds_position(b, x)) out.push_back(x);
    }
    return out;
}

// The unique index j with start + step * j == v, if any.  For finite j >= 1
// the product step * j keeps step's leading exponent and scales its leading
// coefficient, so the candidate is a coefficient quotient checked exactly.
std::optional<Nat> affine_index(const Ordinal& start, const Ordinal& step, const Ordinal& v) {
    if (cmp(v, start) < 0) return std::nullopt;
    Ordinal d = left_sub(start, v);
    if (d.is_zero()) return Nat(0);
    if (step.is_zero()) return std::nullopt;
    Term dl = leading_term(d);
    Term sl = leading_term(step);
    if (dl.exponent != sl.exponent) return std::nullopt;
    if (dl.coefficient % sl.coefficient != 0) return std::nullopt;
    Nat j = dl.coefficient / sl.coefficient;
    if (mul(step, nat(j)) != d) return std::nullopt;
    return j;
}

// ---------------------------------------------------------------------------
// Per-stream extension counters
// ---------------------------------------------------------------------------

struct StreamCount {
    bool infinite = false;
    std::size_t count = 0;
};

// Cumulative stream: point n carries `base` plus groups 0..n-1.  Each step
// below the stem height adds that step's split level to the restriction, so
// the walk either stabilises (all later levels at or above the height) or
// outgrows the stem bits.
StreamCount count_ascending(const std::vector<Ordinal>& base, const LevelSchedule& sched,
                            const Stem& s) {
    StreamCount out;
    std::vector<Ordinal> acc = restrict_below(base, s.height);
    for (std::size_t n = 0;; ++n) {
        if (!subset_of(acc, s.bits)) return out;
        if (!less(schedule_lambda(sched, n), s.height)) {
            out.infinite = (acc == s.bits);
            return out;
        }
        if (acc == s.bits) ++out.count;
        for (const auto& v : schedule_group(sched, n)) {
            if (less(v, s.height)) insert_position(acc, v);
        }
    }
}

// One-shot stream: point n carries `base` plus group n alone.  Prefix groups
// are checked directly; a matching tail group must contribute exactly the
// missing bits, and its least value pins its index through the affine form.
StreamCount count_descending(const std::vector<Ordinal>& base, const LevelSchedule& sched,
                             const Stem& s) {
    StreamCount out;
    std::vector<Ordinal> core = restrict_below(base, s.height);
    if (!subset_of(core, s.bits)) return out;
    for (std::size_t k = 0; k < sched.prefix_groups.size(); ++k) {
        std::vector<Ordinal> r = core;
        for (const auto& v : schedule_group(sched, k)) {
            if (less(v, s.height)) insert_position(r, v);
        }
        if (r == s.bits) ++out.count;
    }
    std::vector<Ordinal> want = positions_minus(s.bits, core);
    if (want.empty()) {
        // Tail groups entirely at or above the height match; there are
        // infinitely many of them iff the height undercuts the supremum.
        if (less(s.height, schedule_sup(sched))) out.infinite = true;
        return out;
    }
    auto t = affine_index(sched.tail_start, sched.tail_step, want[0]);
    if (!t) return out;
    for (std::size_t oi = 0; oi < sched.tail_offsets.size(); ++oi) {
        Nat o(sched.tail_offsets[oi]);
        if (*t < o) continue;
        Nat rem = *t - o;
        if (rem % Nat(sched.tail_stride) != 0) continue;
        Nat j = rem / Nat(sched.tail_stride);
        std::vector<Ordinal> r = core;
        for (std::size_t oj = 0; oj < sched.tail_offsets.size(); ++oj) {
            Nat pos = Nat(sched.tail_stride) * j + Nat(sched.tail_offsets[oj]);
            Ordinal v = add(sched.tail_start, mul(sched.tail_step, nat(pos)));
            if (less(v, s.height)) insert_position(r, v);
        }
        if (r == s.bits) ++out.count;
    }
    return out;
}

StreamCount count_raw_ascending(const RawSequence& r, const Stem& s) {
    StreamCount out;
    const std::size_t e = r.levels.size();
    // Minimum over levels i.. for the explicit region; past it the tail
    // ascends, so the first tail value is the whole remaining minimum.
    std::vector<Ordinal> suffix(e + 1);
    suffix[e] = r.tail_start;
    for (std::size_t i = e; i-- > 0;) suffix[i] = min(r.levels[i], suffix[i + 1]);
    std::vector<Ordinal> acc = restrict_below(r.stem, s.height);
    for (std::size_t n = 0;; ++n) {
        if (!subset_of(acc, s.bits)) return out;
        Ordinal rest_min = n <= e ? suffix[n] : raw_level(r, n);
        if (!less(rest_min, s.height)) {
            out.infinite = (acc == s.bits);
            return out;
        }
        if (acc == s.bits) ++out.count;
        Ordinal l = raw_level(r, n);
        if (less(l, s.height)) insert_position(acc, l);
    }
}

StreamCount count_raw_descending(const RawSequence& r, const Stem& s) {
    StreamCount out;
    const std::size_t e = r.levels.size();
    std::vector<Ordinal> suffix(e + 1);
    suffix[e] = r.tail_start;
    for (std::size_t i = e; i-- > 0;) suffix[i] = min(r.levels[i], suffix[i + 1]);
    std::vector<Ordinal> core = restrict_below(r.stem, s.height);
    for (std::size_t n = 0; n <= e; ++n) {
        if (!less(suffix[n], s.height)) {
            // Every later level clears the height, so every later point
            // restricts to the bare stem.
            out.infinite = (core == s.bits);
            return out;
        }
        if (extends(raw_decode(r, n), s)) ++out.count;
    }
    if (!subset_of(core, s.bits)) return out;
    std::vector<Ordinal> want = positions_minus(s.bits, core);
    if (want.empty()) {
        if (less(s.height, add(r.tail_start, mul(r.tail_step, omega())))) out.infinite = true;
        return out;
    }
    if (want.size() != 1) return out;
    // Pure tail points carry a single level each.
    auto t = affine_index(r.tail_start, r.tail_step, want[0]);
    if (t && *t >= 1) ++out.count;
    return out;
}

bool tower_level_hit(const Tower& t, std::size_t k, const Ordinal& v) {
    if (less(v, tower_inner_level(t, k, 0))) return false;
    // The offset stays below step*w, so interval k's levels are cofinal in
    // prefix + scale*k + step*w; values at or past that sup never hit.
    Ordinal sup = add(add(t.inner_prefix, mul(t.inner_scale, nat(Nat(k)))),
                      mul(t.inner_step, omega()));
    if (!less(v, sup)) return false;
    for (std::size_t n = 0; n < kScanGuard; ++n) {
        int c = cmp(tower_inner_level(t, k, n), v);
        if (c == 0) return true;
        if (c > 0) return false;
    }
    throw DomainError("tower membership scan exceeded its bound");
}

StreamCount count_tower(const Tower& t, const Stem& s) {
    StreamCount out;
    Ordinal total_sup =
        add(t.inner_prefix, max(mul(t.inner_scale, omega()), mul(t.inner_step, omega())));
    std::vector<Ordinal> base = restrict_below(t.stem, s.height);
    for (std::size_t k = 0;; ++k) {
        if (!subset_of(base, s.bits)) return out;
        Ordinal root = tower_root(t, k);
        std::vector<Ordinal> want = positions_minus(s.bits, base);
        if (!less(root, s.height)) {
            // Roots stopped contributing: every interval from here on sits on
            // the same restriction base.
            if (want.empty()) {
                out.infinite = less(s.height, total_sup);
                return out;
            }
            if (want.size() != 1) return out;
            if (t.inner_scale.is_zero()) {
                if (tower_level_hit(t, k, want[0])) out.infinite = true;
                return out;
            }
            for (std::size_t kk = k;; ++kk) {
                if (kk == k + kScanGuard) {
                    throw DomainError("tower membership scan exceeded its bound");
                }
                if (less(want[0], tower_inner_level(t, kk, 0))) break;
                if (tower_level_hit(t, kk, want[0])) ++out.count;
            }
            return out;
        }
        if (want.empty()) {
            Ordinal sup_k = add(add(t.inner_prefix, mul(t.inner_scale, nat(Nat(k)))),
                                mul(t.inner_step, omega()));
            if (less(s.height, sup_k)) {
                out.infinite = true;
                return out;
            }
        } else if (want.size() == 1) {
            if (tower_level_hit(t, k, want[0])) ++out.count;
        }
        insert_position(base, root);
    }
}

StreamCount count_class(const SymbolicClass& c, const Stem& s) {
    StreamCount out;
    switch (c.kind) {
        case ClassKind::Asc:
            out = count_ascending(c.stem, c.sched, s);
            break;
        case ClassKind::Desc:
            out = count_descending(c.stem, c.sched, s);
            break;
        case ClassKind::Zeta: {
            StreamCount l = count_descending(c.stem, c.left, s);
            std::vector<Ordinal> base = c.stem;
            base.push_back(c.root);
            for (const auto& v : c.right_carry) base.push_back(v);
            std::sort(base.begin(), base.end(), ord_less);
            StreamCount r = count_ascending(base, c.sched, s);
            out.infinite = l.infinite || r.infinite;
            out.count = l.count + r.count;
            break;
        }
    }
    if (out.infinite) return out;
    for (const auto& x : c.extras) {
        if (extends(x, s)) ++out.count;
    }
    return out;
}

StreamCount count_block(const Block& b, const Stem& s) {
    if (const auto* fb = std::get_if<FiniteBlock>(&b)) {
        StreamCount out;
        for (const auto& p : fb->points) {
            if (extends(p, s)) ++out.count;
        }
        return out;
    }
    if (const auto* c = std::get_if<SymbolicClass>(&b)) return count_class(*c, s);
    if (const auto* r = std::get_if<RawSequence>(&b)) {
        return r->descending ? count_raw_descending(*r, s) : count_raw_ascending(*r, s);
    }
    if (const auto* z = std::get_if<RawZeta>(&b)) {
        StreamCount l = count_raw_descending(z->left, s);
        StreamCount r = count_raw_ascending(z->right, s);
        StreamCount out;
        out.infinite = l.infinite || r.infinite;
        out.count = l.count + r.count;
        return out;
    }
    return count_tower(std::get<Tower>(b), s);
}

// ---------------------------------------------------------------------------
// Sample windows with block tags
// ---------------------------------------------------------------------------

std::size_t window_depth(const Block& b) {
    if (const auto* r = std::get_if<RawSequence>(&b)) return r->levels.size() + kSampleDepth;
    if (const auto* z = std::get_if<RawZeta>(&b)) {
        return std::max(z->left.levels.size(), z->right.levels.size()) + kSampleDepth;
    }
    return kSampleDepth;
}

void append_window(const RepFamily& f, std::size_t first, std::size_t last,
                   std::vector<Point>& pts, std::vector<std::size_t>& tags) {
    for (std::size_t i = first; i <= last; ++i) {
        auto sample = block_sample(f.blocks[i], window_depth(f.blocks[i]));
        for (auto& p : sample) {
            pts.push_back(std::move(p));
            tags.push_back(i);
        }
    }
}

struct CrossingData {
    std::vector<Point> pts;
    std::vector<std::size_t> tags;
    std::size_t index = 0;
};

CrossingData crossing_data(const RepFamily& f, std::size_t first, std::size_t last) {
    CrossingData cd;
    append_window(f, first, last, cd.pts, cd.tags);
    if (cd.pts.size() < 4) throw DomainError("crossing window too small");
    Ordinal best_delta;
    std::size_t hits = 0;
    for (std::size_t i = 0; i + 1 < cd.pts.size(); ++i) {
        Ordinal d = delta(cd.pts[i], cd.pts[i + 1]);
        if (hits == 0 || less(d, best_delta)) {
            best_delta = d;
            cd.index = i;
            hits = 1;
        } else if (d == best_delta) {
            ++hits;
        }
    }
    if (hits != 1) throw DomainError("crossing is ambiguous");
    if (cd.index < 1 || cd.index + 2 >= cd.pts.size()) {
        throw DomainError("crossing window too small");
    }
    return cd;
}

// ---------------------------------------------------------------------------
// Position freshness
// ---------------------------------------------------------------------------

bool raw_uses(const RawSequence& r, const Ordinal& v) {
    if (holds_position(r.stem, v)) return true;
    for (const auto& l : r.levels) {
        if (l == v) return true;
    }
    return affine_index(r.tail_start, r.tail_step, v).has_value();
}

bool block_uses(const Block& b, const Ordinal& v) {
    if (const auto* fb = std::get_if<FiniteBlock>(&b)) {
        for (const auto& p : fb->points) {
            if (holds_position(p.support, v)) return true;
        }
        return false;
    }
    if (const auto* c = std::get_if<SymbolicClass>(&b)) {
        if (holds_position(c->stem, v)) return true;
        if (schedule_contains(c->sched, v)) return true;
        if (c->kind == ClassKind::Zeta) {
            if (v == c->root) return true;
            if (schedule_contains(c->left, v)) return true;
            if (holds_position(c->right_carry, v)) return true;
        }
        for (const auto& x : c->extras) {
            if (holds_position(x.support, v)) return true;
        }
        return false;
    }
    if (const auto* r = std::get_if<RawSequence>(&b)) return raw_uses(*r, v);
    if (const auto* z = std::get_if<RawZeta>(&b)) {
        return v == z->root || raw_uses(z->left, v) || raw_uses(z->right, v);
    }
    const auto& t = std::get<Tower>(b);
    if (holds_position(t.stem, v)) return true;
    if (schedule_contains(t.roots, v)) return true;
    if (t.inner_scale.is_zero()) return tower_level_hit(t, 0, v);
    for (std::size_t k = 0; k < kScanGuard; ++k) {
        if (less(v, tower_inner_level(t, k, 0))) return false;
        if (tower_level_hit(t, k, v)) return true;
    }
    throw DomainError("tower membership scan exceeded its bound");
}

bool family_uses(const RepFamily& f, const Ordinal& v) {
    for (const auto& b : f.blocks) {
        if (block_uses(b, v)) return true;
    }
    return false;
}

// `n` positions strictly above `from` that no block of the family mentions.
std::optional<std::vector<Ordinal>> fresh_above(const RepFamily& f, const Ordinal& from,
                                                std::size_t n) {
    std::vector<Ordinal> out;
    for (std::size_t j = 1; j <= kScanGuard && out.size() < n; ++j) {
        Ordinal cand = add(from, nat(Nat(j)));
        if (!less(cand, f.ambient.length)) break;
        if (!family_uses(f, cand)) out.push_back(cand);
    }
    if (out.size() < n) return std::nullopt;
    return out;
}

RepFamily splice_blocks(const RepFamily& f, std::size_t first, std::size_t last,
                        std::vector<Block> repl) {
    std::vector<Block> blocks;
    for (std::size_t j = 0; j < first; ++j) blocks.push_back(f.blocks[j]);
    for (auto& b : repl) blocks.push_back(std::move(b));
    for (std::size_t j = last + 1; j < f.blocks.size(); ++j) blocks.push_back(f.blocks[j]);
    return make_family(f.ambient, std::move(blocks));
}

RepFamily replace_block(const RepFamily& f, std::size_t i, std::vector<Block> repl) {
    return splice_blocks(f, i, i, std::move(repl));
}

// ---------------------------------------------------------------------------
// Twin grafts
// ---------------------------------------------------------------------------

Point stem_point(const Alpha& ambient, std::vector<Ordinal> bits) {
    std::sort(bits.begin(), bits.end(), ord_less);
    return make_point(ambient, std::move(bits));
}

// Split the head point off an ascending class and pin two fresh branches
// above its first split; everything past the first group stays symbolic.
std::optional<RepFamily> graft_ascending(const RepFamily& f, std::size_t i,
                                         const SymbolicClass& c) {
    try {
        auto fresh = fresh_above(f, schedule_lambda(c.sched, 0), 2);
        if (!fresh) return std::nullopt;
        std::vector<Ordinal> b1 = c.stem;
        b1.push_back((*fresh)[0]);
        std::vector<Ordinal> b2 = b1;
        b2.push_back((*fresh)[1]);
        std::vector<Point> pts = c.extras;
        pts.push_back(class_decode(c, 0));
        pts.push_back(stem_point(f.ambient, std::move(b1)));
        pts.push_back(stem_point(f.ambient, std::move(b2)));
        SymbolicClass rest = c;
        rest.extras.clear();
        rest = drop_class_prefix(rest, 1);
        return replace_block(f, i,
                             {Block(make_finite_block(f.ambient, std::move(pts))), Block(rest)});
    } catch (const DomainError&) {
        return std::nullopt;
    }
}

// Glue two fresh branch points above a descending class: they split at a free
// position below the class's first split, so nothing else extends their meet.
std::optional<RepFamily> graft_descending(const RepFamily& f, std::size_t i,
                                          const SymbolicClass& c) {
    try {
        Ordinal lam0 = schedule_lambda(c.sched, 0);
        std::optional<Ordinal> p;
        for (std::size_t j = 0; j < 64; ++j) {
            Ordinal cand = nat(Nat(j));
            if (!less(cand, lam0)) break;
            if (!family_uses(f, cand)) {
                p = cand;
                break;
            }
        }
        if (!p) return std::nullopt;
        auto fresh = fresh_above(f, lam0, 1);
        if (!fresh) return std::nullopt;
        std::vector<Ordinal> b1 = c.stem;
        b1.push_back(*p);
        std::vector<Ordinal> b2 = b1;
        b2.push_back((*fresh)[0]);
        SymbolicClass c2 = c;
        c2.extras.push_back(stem_point(f.ambient, std::move(b1)));
        c2.extras.push_back(stem_point(f.ambient, std::move(b2)));
        std::sort(c2.extras.begin(), c2.extras.end(), point_less);
        check_class(c2);
        return replace_block(f, i, {Block(std::move(c2))});
    } catch (const DomainError&) {
        return std::nullopt;
    }
}

// Materialise the least right-half point of a two-sided class and pin two
// fresh branches above it, absorbing its group into the right carry.
std::optional<RepFamily> graft_zeta(const RepFamily& f, std::size_t i, const SymbolicClass& c) {
    try {
        auto fresh = fresh_above(f, schedule_lambda(c.sched, 0), 2);
        if (!fresh) return std::nullopt;
        Point r0 = zeta_right_decode(c, 0);
        std::vector<Ordinal> b1 = r0.support;
        b1.push_back((*fresh)[0]);
        std::vector<Ordinal> b2 = b1;
        b2.push_back((*fresh)[1]);
        SymbolicClass c2 = drop_zeta_side(c, Side::Right, 1);
        c2.extras.push_back(r0);
        c2.extras.push_back(stem_point(f.ambient, std::move(b1)));
        c2.extras.push_back(stem_point(f.ambient, std::move(b2)));
        check_class(c2);
        return replace_block(f, i, {Block(std::move(c2))});
    } catch (const DomainError&) {
        return std::nullopt;
    }
}

// Break the second interval of a tower into explicit points: its two deepest
// sampled points become a twin pair on the first interval's closed end.
std::optional<RepFamily> graft_tower(const RepFamily& f, std::size_t i, const Tower& t) {
    try {
        SymbolicClass d0 = tower_interval(t, 0);
        d0.extras = {tower_decode(t, 1, 2), tower_decode(t, 1, 1)};
        check_class(d0);
        FiniteBlock fb = make_finite_block(f.ambient, {tower_decode(t, 1, 0)});
        Tower rest = drop_tower_intervals(t, 2);
        return replace_block(f, i, {Block(std::move(d0)), Block(std::move(fb)), Block(rest)});
    } catch (const DomainError&) {
        return std::nullopt;
    }
}

// ---------------------------------------------------------------------------
// Crossing surgery
// ---------------------------------------------------------------------------

// Remove the k least points of the ascending side starting at block `upper`.
std::optional<RepFamily> remove_upper(const RepFamily& f, std::size_t upper, std::size_t k) {
    try {
        const Block& b = f.blocks[upper];
        if (const auto* c = std::get_if<SymbolicClass>(&b)) {
            if (c->kind == ClassKind::Desc) return std::nullopt;
            SymbolicClass c2 = *c;
            std::size_t m = std::min(k, c2.extras.size());
            c2.extras.erase(c2.extras.begin(), c2.extras.begin() + m);
            if (c2.kind == ClassKind::Zeta) {
                c2 = drop_zeta_side(c2, Side::Right, k - m);
            } else {
                c2 = drop_class_prefix(c2, k - m);
            }
            return replace_block(f, upper, {Block(std::move(c2))});
        }
        if (const auto* r = std::get_if<RawSequence>(&b)) {
            if (r->descending) return std::nullopt;
            return replace_block(f, upper, {Block(drop_raw_prefix(*r, k))});
        }
        if (const auto* z = std::get_if<RawZeta>(&b)) {
            SymbolicClass c = canonise_raw_zeta(*z);
            std::size_t m = std::min(k, c.extras.size());
            c.extras.erase(c.extras.begin(), c.extras.begin() + m);
            c = drop_zeta_side(c, Side::Right, k - m);
            return replace_block(f, upper, {Block(std::move(c))});
        }
        return std::nullopt;
    } catch (const DomainError&) {
        return std::nullopt;
    }
}

// Remove the k greatest points of the descending side ending at block
// `lower`, walking left across finite blocks but never past `floor`.
std::optional<RepFamily> remove_lower(const RepFamily& f, std::size_t lower, std::size_t floor,
                                      std::size_t k) {
    try {
        std::vector<Block> blocks = f.blocks;
        std::size_t i = lower;
        std::size_t remaining = k;
        while (remaining > 0) {
            Block& b = blocks[i];
            if (auto* c = std::get_if<SymbolicClass>(&b)) {
                if (c->kind == ClassKind::Zeta) {
                    *c = drop_zeta_side(*c, Side::Left, remaining);
                } else if (c->kind == ClassKind::Desc) {
                    std::size_t m = std::min(remaining, c->extras.size());
                    c->extras.erase(c->extras.end() - static_cast<std::ptrdiff_t>(m),
                                    c->extras.end());
                    *c = drop_class_prefix(*c, remaining - m);
                } else {
                    return std::nullopt;
                }
                remaining = 0;
            } else if (auto* fb = std::get_if<FiniteBlock>(&b)) {
                std::size_t m = std::min(remaining, fb->points.size());
                fb->points.erase(fb->points.end() - static_cast<std::ptrdiff_t>(m),
                                 fb->points.end());
                remaining -= m;
                if (fb->points.empty()) blocks.erase(blocks.begin() + static_cast<std::ptrdiff_t>(i));
                if (remaining > 0) {
                    if (i == floor || i == 0) return std::nullopt;
                    --i;
                }
            } else if (auto* r = std::get_if<RawSequence>(&b)) {
                if (!r->descending) return std::nullopt;
                *r = drop_raw_prefix(*r, remaining);
                remaining = 0;
            } else if (auto* z = std::get_if<RawZeta>(&b)) {
                b = Block(drop_zeta_side(canonise_raw_zeta(*z), Side::Left, remaining));
                remaining = 0;
            } else {
                return std::nullopt;
            }
        }
        return make_family(f.ambient, std::move(blocks));
    } catch (const DomainError&) {
        return std::nullopt;
    }
}

// The condensation class range containing block `i`.
std::pair<std::size_t, std::size_t> cc_range_of(const RepFamily& f, std::size_t i) {
    for (const auto& cc : cc_enumerate(f)) {
        if (cc.first_block <= i && i <= cc.last_block) return {cc.first_block, cc.last_block};
    }
    return {i, i};
}

// ---------------------------------------------------------------------------
// Two-sided class bookkeeping
// ---------------------------------------------------------------------------

struct ZccInfo {
    std::size_t cc_first = 0;
    std::size_t cc_last = 0;
    std::size_t lower_block = 0;
    std::size_t upper_block = 0;
    Point lower_x;
    Point upper_x;
    Ordinal cross;
    Ordinal delta0;
    Ordinal delta1;
};

std::vector<ZccInfo> zeta_cc_infos(const RepFamily& f) {
    std::vector<ZccInfo> out;
    for (const auto& cc : cc_enumerate(f)) {
        if (cc.kind != CcKind::Zeta) continue;
        CrossingData cd = crossing_data(f, cc.first_block, cc.last_block);
        ZccInfo zi;
        zi.cc_first = cc.first_block;
        zi.cc_last = cc.last_block;
        zi.lower_block = cd.tags[cd.index];
        zi.upper_block = cd.tags[cd.index + 1];
        zi.lower_x = cd.pts[cd.index];
        zi.upper_x = cd.pts[cd.index + 1];
        zi.cross = delta(cd.pts[cd.index], cd.pts[cd.index + 1]);
        zi.delta0 = delta(cd.pts[cd.index - 1], cd.pts[cd.index]);
        zi.delta1 = delta(cd.pts[cd.index + 1], cd.pts[cd.index + 2]);
        out.push_back(std::move(zi));
    }
    if (out.empty()) throw DomainError("no two-sided class");
    return out;
}

struct ZccDispatch {
    std::vector<ZccInfo> infos;
    bool single = false;
    std::size_t single_index = 0;
    std::size_t c0 = 0;
    std::size_t c1 = 0;
    Ordinal dprime;
};

ZccDispatch zeta_cc_dispatch(const RepFamily& f) {
    ZccDispatch d;
    d.infos = zeta_cc_infos(f);
    std::size_t hits = 0;
    Ordinal best;
    for (std::size_t i = 0; i < d.infos.size(); ++i) {
        if (hits == 0 || less(d.infos[i].cross, best)) {
            best = d.infos[i].cross;
            d.single_index = i;
            hits = 1;
        } else if (d.infos[i].cross == best) {
            ++hits;
        }
    }
    if (hits == 1) {
        d.single = true;
        return d;
    }
    std::vector<Ordinal> d0s;
    for (const auto& zi : d.infos) d0s.push_back(zi.delta0);
    std::sort(d0s.begin(), d0s.end(), ord_less);
    d.dprime = (d0s[0] == d0s[1]) ? d0s[0] : d0s[1];
    std::vector<std::size_t> chosen;
    for (std::size_t i = 0; i < d.infos.size() && chosen.size() < 2; ++i) {
        if (!less(d.dprime, d.infos[i].delta0)) chosen.push_back(i);
    }
    if (chosen.size() < 2) throw DomainError("crossing is ambiguous");
    d.c0 = chosen[0];
    d.c1 = chosen[1];
    return d;
}

// Trim every non-distinguished two-sided class from below until its last
// lower-side split clears the distinguished bound.  Classes are re-located
// between rounds through their crossing points, which trimming never moves
// for the distinguished pair.
RepFamily trim_other_zetas(const RepFamily& f, const ZccDispatch& d) {
    RepFamily g = f;
    const Point& x0 = d.infos[d.c0].lower_x;
    const Point& x1 = d.infos[d.c1].lower_x;
    for (std::size_t round = 0;; ++round) {
        if (round == kTrimGuard) {
            throw DomainError("class cannot be trimmed past the distinguished split");
        }
        auto infos = zeta_cc_infos(g);
        const ZccInfo* offender = nullptr;
        for (const auto& zi : infos) {
            if (zi.lower_x == x0 || zi.lower_x == x1) continue;
            if (!less(d.dprime, zi.delta0)) {
                offender = &zi;
                break;
            }
        }
        if (!offender) return g;
        auto cand = remove_lower(g, offender->lower_block, offender->cc_first, 1);
        if (!cand) {
            throw DomainError("class cannot be trimmed past the distinguished split");
        }
        g = std::move(*cand);
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// Extension counting
// ---------------------------------------------------------------------------

ExtensionCount extension_count(const RepFamily& f, const Stem& s) {
    if (s.ambient != f.ambient) throw DomainError("stem ambient does not match the family");
    ExtensionCount out;
    for (const auto& b : f.blocks) {
        StreamCount sc = count_block(b, s);
        if (sc.infinite) {
            out.finite = false;
            out.count = 0;
            return out;
        }
        out.count += sc.count;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Twin colouring
// ---------------------------------------------------------------------------

std::optional<TwinWitness> find_twins(const RepFamily& f) {
    for (const auto& cc : cc_enumerate(f)) {
        if (cc.kind == CcKind::Finite) continue;
        std::vector<Point> pts;
        std::vector<std::size_t> tags;
        append_window(f, cc.first_block, cc.last_block, pts, tags);
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            Stem st = meet(pts[i], pts[i + 1]);
            ExtensionCount ec = extension_count(f, st);
            if (ec.finite && ec.count == 2) {
                return TwinWitness{pts[i], pts[i + 1], std::move(st)};
            }
        }
    }
    return std::nullopt;
}

int colour_C(const RepFamily& f) { return find_twins(f).has_value() ? 1 : 0; }

namespace {

// Drop every finite block that condenses into a stream class.  Absorption
// keeps the order type while removing the explicit points a twin stem could
// otherwise latch onto.
RepFamily strip_cc_fins(const RepFamily& f) {
    std::vector<bool> keep(f.blocks.size(), true);
    for (const auto& cc : cc_enumerate(f)) {
        if (cc.kind == CcKind::Finite) continue;
        for (std::size_t i = cc.first_block; i <= cc.last_block; ++i) {
            if (std::holds_alternative<FiniteBlock>(f.blocks[i])) keep[i] = false;
        }
    }
    RepFamily g;
    g.ambient = f.ambient;
    for (std::size_t i = 0; i < f.blocks.size(); ++i) {
        if (keep[i]) g.blocks.push_back(f.blocks[i]);
    }
    return g;
}

}  // namespace

RepFamily flip_C(const RepFamily& f) {
    const int base = colour_C(f);
    std::vector<RepFamily> candidates;
    if (base == 1) {
        candidates.push_back(canonise_family(f));
        candidates.push_back(canonise_family(strip_cc_fins(f)));
    } else {
        for (std::size_t i = 0; i < f.blocks.size(); ++i) {
            const Block& b = f.blocks[i];
            std::optional<RepFamily> cand;
            if (const auto* c = std::get_if<SymbolicClass>(&b)) {
                switch (c->kind) {
                    case ClassKind::Asc:
                        cand = graft_ascending(f, i, *c);
                        break;
                    case ClassKind::Desc:
                        cand = graft_descending(f, i, *c);
                        break;
                    case ClassKind::Zeta:
                        cand = graft_zeta(f, i, *c);
                        break;
                }
            } else if (const auto* r = std::get_if<RawSequence>(&b)) {
                try {
                    SymbolicClass c = canonise_raw(*r);
                    RepFamily g = replace_block(f, i, {Block(c)});
                    cand = c.kind == ClassKind::Asc ? graft_ascending(g, i, c)
                                                    : graft_descending(g, i, c);
                } catch (const DomainError&) {
                }
            } else if (const auto* z = std::get_if<RawZeta>(&b)) {
                try {
                    SymbolicClass c = canonise_raw_zeta(*z);
                    RepFamily g = replace_block(f, i, {Block(c)});
                    cand = graft_zeta(g, i, c);
                } catch (const DomainError&) {
                }
            } else if (const auto* t = std::get_if<Tower>(&b)) {
                cand = graft_tower(f, i, *t);
            }
            if (cand) candidates.push_back(std::move(*cand));
        }
    }
    for (const auto& cand : candidates) {
        if (colour_C(cand) == 1 - base && same_order_type(cand, f)) return cand;
    }
    throw DomainError("no twin flip available");
}

// ---------------------------------------------------------------------------
// Crossing colouring
// ---------------------------------------------------------------------------

ZetaCrossing zeta_crossing(const RepFamily& f) {
    if (f.blocks.empty()) throw DomainError("crossing window too small");
    CrossingData cd = crossing_data(f, 0, f.blocks.size() - 1);
    return ZetaCrossing{std::move(cd.pts), cd.index};
}

int colour_zeta(const RepFamily& f) {
    ZetaCrossing c = zeta_crossing(f);
    Nat n0 = script_n(f.ambient, c.window[c.index - 1], c.window[c.index]);
    Nat n1 = script_n(f.ambient, c.window[c.index + 1], c.window[c.index + 2]);
    return n0 >= n1 ? 0 : 1;
}

RepFamily flip_zeta(const RepFamily& f) {
    const int base = colour_zeta(f);
    if (f.blocks.empty()) throw DomainError("crossing window too small");
    CrossingData cd = crossing_data(f, 0, f.blocks.size() - 1);
    std::size_t lower_block = cd.tags[cd.index];
    std::size_t upper_block = cd.tags[cd.index + 1];
    std::size_t floor = cc_range_of(f, lower_block).first;
    for (std::size_t k = 1; k <= kFlipWindow; ++k) {
        for (int side = 0; side < 2; ++side) {
            std::optional<RepFamily> cand = side == 0 ? remove_upper(f, upper_block, k)
                                                      : remove_lower(f, lower_block, floor, k);
            if (!cand) continue;
            try {
                if (colour_zeta(*cand) == 1 - base && same_order_type(*cand, f)) return *cand;
            } catch (const DomainError&) {
            }
        }
    }
    throw DomainError("no crossing flip within the search window");
}

// ---------------------------------------------------------------------------
// Mutual colouring
// ---------------------------------------------------------------------------

PreparedPair prepare_two_classes(const RepFamily& f) {
    RepFamily g = canonise_family(f);
    std::vector<std::size_t> elig;
    for (std::size_t i = 0; i < g.blocks.size(); ++i) {
        if (const auto* c = std::get_if<SymbolicClass>(&g.blocks[i])) {
            if (c->kind != ClassKind::Zeta) elig.push_back(i);
        }
    }
    if (elig.size() < 2) throw DomainError("need two one-directional classes");
    auto lam0 = [&](std::size_t i) {
        return schedule_lambda(std::get<SymbolicClass>(g.blocks[i]).sched, 0);
    };
    std::sort(elig.begin(), elig.end(), [&](std::size_t a, std::size_t b) {
        int c = cmp(lam0(a), lam0(b));
        if (c != 0) return c < 0;
        return a < b;
    });
    std::size_t i0 = std::min(elig[0], elig[1]);
    std::size_t i1 = std::max(elig[0], elig[1]);
    Ordinal bound = add(max(lam0(i0), lam0(i1)), nat(1));
    std::vector<Block> blocks = g.blocks;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (i == i0 || i == i1) continue;
        Block& b = blocks[i];
        if (auto* c = std::get_if<SymbolicClass>(&b)) {
            if (c->kind == ClassKind::Zeta) {
                if (less(c->root, bound)) {
                    throw DomainError("crossing split cannot be trimmed");
                }
                SymbolicClass c2 = drop_zeta_side(*c, Side::Left,
                                                  first_group_at_or_above(c->left, bound));
                c2 = drop_zeta_side(c2, Side::Right, first_group_at_or_above(c2.sched, bound));
                b = Block(std::move(c2));
            } else {
                b = Block(drop_class_prefix(*c, first_group_at_or_above(c->sched, bound)));
            }
        } else if (auto* t = std::get_if<Tower>(&b)) {
            b = Block(drop_tower_intervals(*t, first_group_at_or_above(t->roots, bound)));
        } else if (auto* fb = std::get_if<FiniteBlock>(&b)) {
            for (std::size_t j = 0; j + 1 < fb->points.size(); ++j) {
                if (less(delta(fb->points[j], fb->points[j + 1]), bound)) {
                    throw DomainError("explicit splits cannot be trimmed");
                }
            }
        } else {
            throw DomainError("raw blocks must be canonised first");
        }
    }
    PreparedPair out;
    out.family = make_family(g.ambient, std::move(blocks));
    out.block0 = i0;
    out.block1 = i1;
    return out;
}

int colour_mutual(const RepFamily& f) {
    PreparedPair p = prepare_two_classes(f);
    const auto& c0 = std::get<SymbolicClass>(p.family.blocks[p.block0]);
    const auto& c1 = std::get<SymbolicClass>(p.family.blocks[p.block1]);
    Nat n0 = b_encode(p.family.ambient, schedule_lambda(c0.sched, 1));
    Nat n1 = b_encode(p.family.ambient, schedule_lambda(c1.sched, 1));
    return n0 >= n1 ? 0 : 1;
}

RepFamily flip_mutual(const RepFamily& f) {
    const int base = colour_mutual(f);
    PreparedPair p = prepare_two_classes(f);
    for (std::size_t k = 1; k <= kFlipWindow; ++k) {
        for (int t = 0; t < 2; ++t) {
            std::size_t bi = t == 0 ? p.block0 : p.block1;
            try {
                const auto& c = std::get<SymbolicClass>(p.family.blocks[bi]);
                RepFamily cand = replace_block(p.family, bi, {Block(keep_head_drop(c, k))});
                if (colour_mutual(cand) == 1 - base && same_order_type(cand, f)) return cand;
            } catch (const DomainError&) {
            }
        }
    }
    throw DomainError("no head-preserving flip within the search window");
}

bool mutual_coherent(const RepFamily& f, std::size_t k0, std::size_t k1) {
    PreparedPair p = prepare_two_classes(f);
    if (colour_mutual(f) != colour_mutual(p.family)) return false;
    PreparedPair p2 = prepare_two_classes(p.family);
    if (p2.block0 != p.block0 || p2.block1 != p.block1) return false;
    if (to_text(p2.family) != to_text(p.family)) return false;
    const auto c0 = std::get<SymbolicClass>(p.family.blocks[p.block0]);
    const auto c1 = std::get<SymbolicClass>(p.family.blocks[p.block1]);
    RepFamily q = replace_block(p.family, p.block0, {Block(keep_head_drop(c0, k0))});
    q = replace_block(q, p.block1, {Block(keep_head_drop(c1, k1))});
    PreparedPair pq = prepare_two_classes(q);
    if (pq.block0 != p.block0 || pq.block1 != p.block1) return false;
    const auto& q0 = std::get<SymbolicClass>(pq.family.blocks[pq.block0]);
    const auto& q1 = std::get<SymbolicClass>(pq.family.blocks[pq.block1]);
    if (schedule_lambda(q0.sched, 0) != schedule_lambda(c0.sched, 0)) return false;
    if (schedule_lambda(q1.sched, 0) != schedule_lambda(c1.sched, 0)) return false;
    Nat n0 = b_encode(f.ambient, schedule_lambda(c0.sched, k0 + 1));
    Nat n1 = b_encode(f.ambient, schedule_lambda(c1.sched, k1 + 1));
    return colour_mutual(q) == (n0 >= n1 ? 0 : 1);
}

// ---------------------------------------------------------------------------
// Crossing-class dispatch
// ---------------------------------------------------------------------------

int colour_zeta_cc(const RepFamily& f) {
    ZccDispatch d = zeta_cc_dispatch(f);
    if (d.single) {
        const ZccInfo& zi = d.infos[d.single_index];
        std::vector<Block> sub(f.blocks.begin() + static_cast<std::ptrdiff_t>(zi.cc_first),
                               f.blocks.begin() + static_cast<std::ptrdiff_t>(zi.cc_last) + 1);
        return colour_zeta(make_family(f.ambient, std::move(sub)));
    }
    trim_other_zetas(f, d);
    Nat n0 = b_encode(f.ambient, d.infos[d.c0].delta1);
    Nat n1 = b_encode(f.ambient, d.infos[d.c1].delta1);
    return n0 >= n1 ? 0 : 1;
}

RepFamily flip_zeta_cc(const RepFamily& f) {
    const int base = colour_zeta_cc(f);
    ZccDispatch d = zeta_cc_dispatch(f);
    if (d.single) {
        const ZccInfo& zi = d.infos[d.single_index];
        std::vector<Block> sub(f.blocks.begin() + static_cast<std::ptrdiff_t>(zi.cc_first),
                               f.blocks.begin() + static_cast<std::ptrdiff_t>(zi.cc_last) + 1);
        RepFamily flipped = flip_zeta(make_family(f.ambient, std::move(sub)));
        RepFamily cand = splice_blocks(f, zi.cc_first, zi.cc_last, flipped.blocks);
        if (colour_zeta_cc(cand) == 1 - base && same_order_type(cand, f)) return cand;
        throw DomainError("no crossing flip within the search window");
    }
    for (std::size_t k = 1; k <= kFlipWindow; ++k) {
        for (int t = 0; t < 2; ++t) {
            const ZccInfo& zi = d.infos[t == 0 ? d.c0 : d.c1];
            std::optional<RepFamily> cand = remove_upper(f, zi.upper_block, k);
            if (!cand) continue;
            try {
                if (colour_zeta_cc(*cand) == 1 - base && same_order_type(*cand, f)) return *cand;
            } catch (const DomainError&) {
            }
        }
    }
    throw DomainError("no crossing flip within the search window");
}

// ---------------------------------------------------------------------------
// Splitting colouring of dyadic copies
// ---------------------------------------------------------------------------

int colour_tausplit(const DyadicCopy& d) {
    return cmp(dyadic_height(d, d.remap0), dyadic_height(d, d.remap1)) >= 0 ? 0 : 1;
}

DyadicCopy flip_tausplit(const DyadicCopy& d) {
    const int base = colour_tausplit(d);
    DyadicCopy out = d;
    for (std::size_t m = 1; m <= kFlipWindow; ++m) {
        if (base == 0) {
            out.remap1.push_back(1);
        } else {
            out.remap0.push_back(0);
        }
        check_dyadic(out);
        if (colour_tausplit(out) == 1 - base) return out;
    }
    throw DomainError("no remap flip within the search window");
}

// ---------------------------------------------------------------------------
// Triple colouring
// ---------------------------------------------------------------------------

int colour_triple(const RepFamily& f) {
    std::vector<Point> pts;
    for (const auto& b : f.blocks) {
        const auto* fb = std::get_if<FiniteBlock>(&b);
        if (!fb) throw DomainError("triple colouring needs explicit points");
        pts.insert(pts.end(), fb->points.begin(), fb->points.end());
    }
    if (pts.size() < 3) throw DomainError("triple colouring needs three explicit points");
    return cmp(delta(pts[0], pts[1]), delta(pts[1], pts[2])) > 0 ? 0 : 1;
}

RepFamily flip_triple(const RepFamily& f) {
    const int base = colour_triple(f);
    std::size_t n = 0;
    for (const auto& b : f.blocks) n += std::get<FiniteBlock>(b).points.size();
    auto pt = [&](std::vector<Ordinal> bits) { return stem_point(f.ambient, std::move(bits)); };
    std::vector<Point> pts;
    if (base == 0) {
        pts = {pt({}), pt({nat(0)}), pt({nat(0), nat(1)})};
    } else {
        pts = {pt({}), pt({nat(1)}), pt({nat(0), nat(1)})};
    }
    std::vector<Ordinal> spacer = {nat(0), nat(1)};
    for (std::size_t j = 3; j < n; ++j) {
        spacer.push_back(nat(Nat(j - 1)));
        pts.push_back(pt(spacer));
    }
    RepFamily out =
        make_family(f.ambient, {Block(make_finite_block(f.ambient, std::move(pts)))});
    if (colour_triple(out) != 1 - base || !same_order_type(out, f)) {
        throw DomainError("no explicit flip available");
    }
    return out;
}

// ---------------------------------------------------------------------------
// Selector and oracle plumbing
// ---------------------------------------------------------------------------

TotalColouring extend_total(PartialColouring partial, int fallback) {
    return [partial = std::move(partial), fallback](const RepFamily& f) {
        auto v = partial(f);
        return v ? *v : fallback;
    };
}

std::function<int(const SymbolicClass&)> lift_selector(SelectorFn sel, PointColouring col) {
    return [sel = std::move(sel), col = std::move(col)](const SymbolicClass& c) {
        return col(sel(c));
    };
}

GOracle oracle_const0() {
    return [](const SymbolicOrdinalSet&) { return 0; };
}

GOracle oracle_const1() {
    return [](const SymbolicOrdinalSet&) { return 1; };
}

GOracle oracle_parity() {
    return [](const SymbolicOrdinalSet& s) {
        Ordinal m = set_min(s);
        if (m.is_zero()) return 0;
        return leading_term(m).coefficient % 2 == 1 ? 1 : 0;
    };
}

int kappa_G(const GOracle& F, const SymbolicClass& c) { return F(n_map(c)); }

// ---------------------------------------------------------------------------
// Polarised decompositions
// ---------------------------------------------------------------------------

namespace {

void split_component(const SetComponent& comp, const Ordinal& cut,
                     std::vector<SetComponent>& below, std::vector<SetComponent>& above) {
    if (const auto* v = std::get_if<std::vector<Ordinal>>(&comp)) {
        std::vector<Ordinal> lo, hi;
        for (const auto& x : *v) (less(x, cut) ? lo : hi).push_back(x);
        if (!lo.empty()) below.push_back(lo);
        if (!hi.empty()) above.push_back(hi);
        return;
    }
    const auto& sh = std::get<ShiftedSchedule>(comp);
    Ordinal least = add(sh.offset, schedule_lambda(sh.sched, 0));
    if (!less(least, cut)) {
        above.push_back(sh);
        return;
    }
    Ordinal sup = add(sh.offset, schedule_sup(sh.sched));
    if (cmp(sup, cut) <= 0) {
        below.push_back(sh);
        return;
    }
    // The cut lands inside the schedule: materialise the groups below it and
    // keep the rest symbolic.
    Ordinal rel = left_sub(sh.offset, cut);
    std::size_t m = first_group_at_or_above(sh.sched, rel);
    std::vector<Ordinal> lo, hi;
    std::size_t materialised = 0;
    for (std::size_t k = 0; k < m; ++k) {
        for (const auto& x : schedule_group(sh.sched, k)) {
            if (++materialised > kCutGuard) {
                throw DomainError("cut materialises too many values");
            }
            Ordinal v = add(sh.offset, x);
            (less(v, cut) ? lo : hi).push_back(v);
        }
    }
    if (!lo.empty()) below.push_back(lo);
    if (!hi.empty()) above.push_back(hi);
    above.push_back(ShiftedSchedule{sh.offset, schedule_drop(sh.sched, m)});
}

}  // namespace

std::vector<SymbolicOrdinalSet> to_polarised(const SymbolicOrdinalSet& s,
                                             const std::vector<Ordinal>& cuts) {
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        if (!less(cuts[i], cuts[i + 1])) throw DomainError("cuts must be strictly increasing");
    }
    std::vector<SymbolicOrdinalSet> parts(cuts.size() + 1);
    for (const auto& comp : s.components) {
        std::vector<SetComponent> cur = {comp};
        for (std::size_t k = 0; k < cuts.size(); ++k) {
            std::vector<SetComponent> next;
            for (const auto& c : cur) split_component(c, cuts[k], parts[k].components, next);
            cur = std::move(next);
        }
        for (auto& c : cur) parts.back().components.push_back(std::move(c));
    }
    return parts;
}

SymbolicOrdinalSet from_polarised(const std::vector<SymbolicOrdinalSet>& parts) {
    SymbolicOrdinalSet out;
    for (const auto& p : parts) {
        for (const auto& c : p.components) out.components.push_back(c);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Affordable colouring
// ---------------------------------------------------------------------------

RepFamily realize_family(const RepFamily& f, const std::vector<IndexSelection>& sels) {
    std::vector<Block> blocks;
    std::size_t j = 0;
    for (const auto& b : f.blocks) {
        if (const auto* fb = std::get_if<FiniteBlock>(&b)) {
            blocks.push_back(*fb);
            continue;
        }
        const auto* c = std::get_if<SymbolicClass>(&b);
        if (!c || c->kind == ClassKind::Zeta) {
            throw DomainError("only one-directional classes can be realized");
        }
        if (j >= sels.size()) throw DomainError("selection list too short");
        blocks.push_back(Block(n_realize(*c, sels[j++])));
    }
    if (j != sels.size()) throw DomainError("selection list too long");
    return make_family(f.ambient, std::move(blocks));
}

int colour_affordable(const GOracle& F, const RepFamily& f) {
    for (const auto& b : f.blocks) {
        const RawSequence* r = nullptr;
        if (const auto* rs = std::get_if<RawSequence>(&b)) {
            r = rs;
        } else if (const auto* z = std::get_if<RawZeta>(&b)) {
            r = &z->left;
        }
        if (!r) continue;
        // Consecutive decoded points split exactly at the level stream, so
        // the head comparison reads off the first two levels.
        return cmp(raw_level(*r, 0), raw_level(*r, 1)) > 0 ? 0 : 1;
    }
    return F(n_prime(f));
}

RepFamily flip_affordable(const RepFamily& f) {
    for (std::size_t i = 0; i < f.blocks.size(); ++i) {
        const Block& b = f.blocks[i];
        const RawSequence* r = nullptr;
        bool zeta_half = false;
        if (const auto* rs = std::get_if<RawSequence>(&b)) {
            r = rs;
        } else if (const auto* z = std::get_if<RawZeta>(&b)) {
            r = &z->left;
            zeta_half = true;
        }
        if (!r) continue;
        const int base = cmp(raw_level(*r, 0), raw_level(*r, 1)) > 0 ? 0 : 1;
        std::optional<std::size_t> pick;
        for (std::size_t m = 1; m <= r->levels.size() + 2; ++m) {
            int c = cmp(raw_level(*r, m), raw_level(*r, m + 1));
            if ((base == 0 && c < 0) || (base == 1 && c > 0)) {
                pick = m;
                break;
            }
        }
        if (!pick) throw DomainError("level stream never descends");
        Block nb;
        if (zeta_half) {
            const auto& z = std::get<RawZeta>(b);
            nb = Block(make_raw_zeta(f.ambient, z.left.stem, z.root,
                                     drop_raw_prefix(z.left, *pick), z.right));
        } else {
            nb = Block(drop_raw_prefix(*r, *pick));
        }
        RepFamily cand = replace_block(f, i, {std::move(nb)});
        if (!same_order_type(cand, f)) throw DomainError("no level flip available");
        return cand;
    }
    throw DomainError("no raw block to flip");
}

}  // namespace ordercalc
