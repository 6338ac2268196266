#include "ordercalc/canonise.hpp"

#include <algorithm>
#include <optional>
#include <utility>

#include "ordercalc/errors.hpp"

namespace ordercalc {

namespace {

bool holds_position(const std::vector<Ordinal>& v, const Ordinal& p) {
    for (const auto& q : v) {
        if (q == p) return true;
    }
    return false;
}

// Indices of the successive minima of the level stream: the global minimum
// first, then the minimum of everything after it, and so on.  Only explicit
// indices are returned; once the affine tail undercuts the remaining explicit
// levels, every tail element is a boundary and the walk stops.
std::vector<std::size_t> minima_boundaries(const RawSequence& r) {
    std::vector<std::size_t> out;
    const std::size_t explicit_count = r.levels.size();
    std::size_t from = 0;
    while (true) {
        std::size_t best = explicit_count;
        for (std::size_t i = from; i < explicit_count; ++i) {
            const Ordinal& floor = best == explicit_count ? r.tail_start : r.levels[best];
            if (less(r.levels[i], floor)) best = i;
        }
        if (best == explicit_count) break;
        out.push_back(best);
        from = best + 1;
    }
    return out;
}

Ordinal tail_value(const LevelSchedule& s, std::size_t tail_index) {
    return add(s.tail_start, mul(s.tail_step, nat(Nat(tail_index))));
}

Ordinal component_min(const SetComponent& comp) {
    if (const auto* v = std::get_if<std::vector<Ordinal>>(&comp)) {
        if (v->empty()) throw DomainError("empty ordinal set has no minimum");
        Ordinal m = (*v)[0];
        for (const auto& x : *v) m = min(m, x);
        return m;
    }
    const auto& sh = std::get<ShiftedSchedule>(comp);
    return add(sh.offset, schedule_lambda(sh.sched, 0));
}

}  // namespace

SymbolicClass canonise_raw(const RawSequence& r) {
    check_raw(r);
    const auto bounds = minima_boundaries(r);
    const std::size_t explicit_count = r.levels.size();
    if (!r.descending) {
        std::vector<Ordinal> stem = r.stem;
        const std::size_t first = bounds.empty() ? explicit_count : bounds.front();
        for (std::size_t i = 0; i < first; ++i) stem.push_back(r.levels[i]);
        std::vector<std::vector<Ordinal>> prefix;
        for (std::size_t b = 0; b < bounds.size(); ++b) {
            const std::size_t hi = b + 1 < bounds.size() ? bounds[b + 1] : explicit_count;
            prefix.emplace_back(r.levels.begin() + static_cast<std::ptrdiff_t>(bounds[b]),
                                r.levels.begin() + static_cast<std::ptrdiff_t>(hi));
        }
        return make_asc_class(r.ambient, std::move(stem),
                              make_schedule(std::move(prefix), r.tail_start, r.tail_step));
    }
    std::vector<std::vector<Ordinal>> prefix;
    for (std::size_t b : bounds) prefix.push_back({r.levels[b]});
    return make_desc_class(r.ambient, r.stem,
                           make_schedule(std::move(prefix), r.tail_start, r.tail_step));
}

SymbolicClass canonise_raw_zeta(const RawZeta& z) {
    check_raw_zeta(z);
    SymbolicClass left = canonise_raw(z.left);
    SymbolicClass right = canonise_raw(z.right);
    // Levels the right half absorbed ahead of its first boundary must ride on
    // every right point without entering the shared stem.
    std::vector<Ordinal> carry;
    for (const auto& v : right.stem) {
        if (!holds_position(z.right.stem, v)) carry.push_back(v);
    }
    SymbolicClass out = make_zeta_class(z.ambient, z.left.stem, z.root, left.sched, right.sched);
    out.right_carry = std::move(carry);
    check_class(out);
    return out;
}

RepFamily canonise_family(const RepFamily& f) {
    std::vector<Block> blocks;
    blocks.reserve(f.blocks.size());
    for (const auto& b : f.blocks) {
        if (const auto* r = std::get_if<RawSequence>(&b)) {
            blocks.emplace_back(canonise_raw(*r));
        } else if (const auto* z = std::get_if<RawZeta>(&b)) {
            blocks.emplace_back(canonise_raw_zeta(*z));
        } else if (const auto* c = std::get_if<SymbolicClass>(&b)) {
            SymbolicClass d = *c;
            d.extras.clear();
            blocks.emplace_back(std::move(d));
        } else {
            blocks.push_back(b);
        }
    }
    return make_family(f.ambient, std::move(blocks));
}

bool operator==(const ShiftedSchedule& a, const ShiftedSchedule& b) {
    return a.offset == b.offset && schedule_equal(a.sched, b.sched);
}

bool operator!=(const ShiftedSchedule& a, const ShiftedSchedule& b) { return !(a == b); }

bool operator==(const SymbolicOrdinalSet& a, const SymbolicOrdinalSet& b) {
    return a.components == b.components;
}

bool operator!=(const SymbolicOrdinalSet& a, const SymbolicOrdinalSet& b) { return !(a == b); }

std::string to_string(const ShiftedSchedule& s) {
    return to_string(s.offset) + " + " + to_string(s.sched);
}

std::string to_string(const SymbolicOrdinalSet& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.components.size(); ++i) {
        if (i) out += "; ";
        if (const auto* v = std::get_if<std::vector<Ordinal>>(&s.components[i])) {
            out += "[";
            for (std::size_t j = 0; j < v->size(); ++j) {
                if (j) out += ", ";
                out += to_string((*v)[j]);
            }
            out += "]";
        } else {
            out += to_string(std::get<ShiftedSchedule>(s.components[i]));
        }
    }
    return out + "}";
}

Ordinal set_min(const SymbolicOrdinalSet& s) {
    std::optional<Ordinal> best;
    for (const auto& comp : s.components) {
        if (const auto* v = std::get_if<std::vector<Ordinal>>(&comp)) {
            if (v->empty()) continue;
        }
        Ordinal m = component_min(comp);
        if (!best || less(m, *best)) best = std::move(m);
    }
    if (!best) throw DomainError("empty ordinal set has no minimum");
    return *best;
}

std::vector<Ordinal> enumerate_set(const SymbolicOrdinalSet& s, std::size_t count) {
    // The `count` least schedule values all live in groups 0..count-1, since
    // every value of group k is at least lambda(k) and the lambdas increase.
    std::vector<Ordinal> pool;
    for (const auto& comp : s.components) {
        if (const auto* v = std::get_if<std::vector<Ordinal>>(&comp)) {
            pool.insert(pool.end(), v->begin(), v->end());
            continue;
        }
        const auto& sh = std::get<ShiftedSchedule>(comp);
        for (std::size_t k = 0; k < count; ++k) {
            for (const auto& v : schedule_group(sh.sched, k)) pool.push_back(add(sh.offset, v));
        }
    }
    std::sort(pool.begin(), pool.end(), [](const Ordinal& a, const Ordinal& b) { return less(a, b); });
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
    if (pool.size() > count) pool.resize(count);
    return pool;
}

SymbolicOrdinalSet n_map(const SymbolicClass& c) {
    if (c.kind == ClassKind::Zeta) throw DomainError("zeta classes split into pieces first");
    std::vector<std::vector<Ordinal>> prefix;
    for (std::size_t k = 0; k < c.sched.prefix_groups.size(); ++k) {
        prefix.push_back({schedule_lambda(c.sched, k)});
    }
    LevelSchedule lam =
        make_schedule(std::move(prefix), c.sched.tail_start,
                      mul(c.sched.tail_step, nat(Nat(c.sched.tail_stride))));
    SymbolicOrdinalSet out;
    out.components.push_back(ShiftedSchedule{zero(), std::move(lam)});
    return out;
}

SymbolicClass n_realize(const SymbolicClass& c, const IndexSelection& sel) {
    if (c.kind == ClassKind::Zeta) throw DomainError("zeta classes split into pieces first");
    if (sel.step == 0) throw DomainError("selection step must be positive");
    const LevelSchedule& s = c.sched;
    const std::size_t prefix_count = s.prefix_groups.size();
    std::vector<std::vector<Ordinal>> prefix;
    std::size_t idx = sel.start;
    if (c.kind == ClassKind::Asc) {
        std::vector<Ordinal> stem = c.stem;
        for (std::size_t k = 0; k < sel.start; ++k) {
            const auto g = schedule_group(s, k);
            stem.insert(stem.end(), g.begin(), g.end());
        }
        while (idx < prefix_count) {
            std::vector<Ordinal> merged;
            for (std::size_t k = idx; k < idx + sel.step; ++k) {
                const auto g = schedule_group(s, k);
                merged.insert(merged.end(), g.begin(), g.end());
            }
            prefix.push_back(std::move(merged));
            idx += sel.step;
        }
        const std::size_t tail_from = idx - prefix_count;
        std::vector<std::size_t> offsets;
        for (std::size_t u = 0; u < sel.step; ++u) {
            for (const auto o : s.tail_offsets) offsets.push_back(s.tail_stride * u + o);
        }
        std::sort(offsets.begin(), offsets.end());
        LevelSchedule picked =
            make_schedule(std::move(prefix), tail_value(s, s.tail_stride * tail_from), s.tail_step,
                          s.tail_stride * sel.step, std::move(offsets));
        return make_asc_class(c.ambient, std::move(stem), std::move(picked), c.extras);
    }
    while (idx < prefix_count) {
        prefix.push_back(s.prefix_groups[idx]);
        idx += sel.step;
    }
    const std::size_t tail_from = idx - prefix_count;
    LevelSchedule picked =
        make_schedule(std::move(prefix), tail_value(s, s.tail_stride * tail_from), s.tail_step,
                      s.tail_stride * sel.step, s.tail_offsets);
    return make_desc_class(c.ambient, c.stem, std::move(picked), c.extras);
}

SymbolicOrdinalSet select_symbolic(const SymbolicOrdinalSet& s, const IndexSelection& sel) {
    if (sel.step == 0) throw DomainError("selection step must be positive");
    if (s.components.size() != 1 || !std::holds_alternative<ShiftedSchedule>(s.components[0])) {
        throw DomainError("selection needs a single schedule component");
    }
    const auto& sh = std::get<ShiftedSchedule>(s.components[0]);
    const LevelSchedule& d = sh.sched;
    const std::size_t prefix_count = d.prefix_groups.size();
    std::vector<std::vector<Ordinal>> prefix;
    std::size_t idx = sel.start;
    while (idx < prefix_count) {
        prefix.push_back({schedule_lambda(d, idx)});
        idx += sel.step;
    }
    const std::size_t tail_from = idx - prefix_count;
    LevelSchedule lam =
        make_schedule(std::move(prefix), tail_value(d, d.tail_stride * tail_from),
                      mul(d.tail_step, nat(Nat(d.tail_stride * sel.step))));
    SymbolicOrdinalSet out;
    out.components.push_back(ShiftedSchedule{sh.offset, std::move(lam)});
    return out;
}

std::vector<SymbolicClass> indecomposable_pieces(const RepFamily& f) {
    std::vector<SymbolicClass> out;
    for (const auto& b : f.blocks) {
        if (std::holds_alternative<FiniteBlock>(b)) continue;
        if (std::holds_alternative<RawSequence>(b) || std::holds_alternative<RawZeta>(b)) {
            throw DomainError("raw blocks must be canonised first");
        }
        if (std::holds_alternative<Tower>(b)) {
            throw DomainError("towers do not decompose into one-directional pieces");
        }
        const auto& c = std::get<SymbolicClass>(b);
        if (c.kind == ClassKind::Zeta) {
            out.push_back(make_desc_class(c.ambient, c.stem, c.left));
            std::vector<Ordinal> right_stem = c.stem;
            right_stem.push_back(c.root);
            right_stem.insert(right_stem.end(), c.right_carry.begin(), c.right_carry.end());
            out.push_back(make_asc_class(c.ambient, std::move(right_stem), c.sched));
        } else {
            SymbolicClass piece = c;
            piece.extras.clear();
            out.push_back(std::move(piece));
        }
    }
    return out;
}

Ordinal piece_sup(const SymbolicClass& c) {
    if (c.kind == ClassKind::Zeta) throw DomainError("zeta classes split into pieces first");
    return schedule_sup(c.sched);
}

SymbolicOrdinalSet n_prime(const RepFamily& f) {
    SymbolicOrdinalSet out;
    Ordinal offset = zero();
    for (const auto& piece : indecomposable_pieces(f)) {
        SymbolicOrdinalSet levels = n_map(piece);
        auto sh = std::get<ShiftedSchedule>(levels.components[0]);
        sh.offset = offset;
        offset = add(offset, schedule_sup(piece.sched));
        out.components.push_back(std::move(sh));
    }
    return out;
}

}  // namespace ordercalc
