#include "ordercalc/diagram.hpp"

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include "ordercalc/errors.hpp"
#include "ordercalc/families.hpp"

namespace ordercalc {

namespace {

// A sparse character grid; rows are trimmed on the right when printed.
class Canvas {
public:
    void put(std::size_t r, std::size_t c, char ch) {
        ensure(r, c + 1);
        rows_[r][c] = ch;
    }

    void put(std::size_t r, std::size_t c, const std::string& s) {
        ensure(r, c + s.size());
        for (std::size_t i = 0; i < s.size(); ++i) rows_[r][c + i] = s[i];
    }

    void render(std::ostringstream& out) const {
        for (const auto& row : rows_) {
            std::size_t end = row.size();
            while (end > 0 && row[end - 1] == ' ') --end;
            out << row.substr(0, end) << '\n';
        }
    }

private:
    std::vector<std::string> rows_;

    void ensure(std::size_t r, std::size_t width) {
        if (rows_.size() <= r) rows_.resize(r + 1);
        if (rows_[r].size() < width) rows_[r].resize(width, ' ');
    }
};

constexpr std::size_t kJunctions = 3;   // points drawn per one-directional arm
constexpr std::size_t kZetaJunctions = 2;  // points drawn per zeta arm

// Comb climbing to the right: junction k carries the k-th point on its
// upper-left branch, the spine continues up-right into an ellipsis.
void draw_ascending_comb(Canvas& cv, const std::vector<std::string>& labels) {
    const std::size_t J = labels.size();
    for (std::size_t k = 0; k < J; ++k) {
        const std::size_t r = 2 * J - 2 * k;
        cv.put(r, 3 + 2 * k, '/');
        cv.put(r - 1, 2 + 2 * k, '\\');
        cv.put(r - 2, 2 * k, labels[k]);
        if (k + 1 < J) cv.put(r - 1, 4 + 2 * k, '/');
    }
    cv.put(1, 2 * J + 2, '.');
    cv.put(0, 2 * J + 3, '.');
}

// Mirror image: spine climbing to the left, points on upper-right branches.
void draw_descending_comb(Canvas& cv, const std::vector<std::string>& labels) {
    const std::size_t J = labels.size();
    for (std::size_t k = 0; k < J; ++k) {
        const std::size_t r = 2 * J - 2 * k;
        cv.put(r, r, '\\');
        cv.put(r - 1, r + 1, '/');
        cv.put(r - 2, r + 2, labels[k]);
        if (k + 1 < J) cv.put(r - 1, r - 1, '\\');
    }
    cv.put(1, 1, '.');
    cv.put(0, 0, '.');
}

// Two arms joined at the root split; branch tips stay unlabeled like the
// point ticks of the source figures, the legend below names the levels.
void draw_zeta_v(Canvas& cv) {
    const std::size_t J = kZetaJunctions;
    const std::size_t B = 2 * J + 3;
    const std::size_t M = B + 2;
    cv.put(B, M, '\\');
    cv.put(B, M + 1, '/');
    for (std::size_t d = 1; d <= 2 * J + 3; ++d) {
        const bool dots = d > 2 * J + 1;
        cv.put(B - d, M - d, dots ? '.' : '\\');
        cv.put(B - d, M + 1 + d, dots ? '.' : '/');
    }
    for (std::size_t j = 0; j < J; ++j) {
        const std::size_t r = B - 2 - 2 * j;
        cv.put(r - 1, M - 1 - 2 * j, '/');   // left branch tip
        cv.put(r - 1, M + 2 + 2 * j, '\\');  // right branch tip
    }
}

std::string level_list(const std::vector<Ordinal>& levels, bool open_ended) {
    std::string out;
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (i) out += ", ";
        out += to_string(levels[i]);
    }
    if (open_ended) out += ", ...";
    return out;
}

std::vector<Ordinal> schedule_lambdas(const LevelSchedule& s, std::size_t n) {
    std::vector<Ordinal> out;
    for (std::size_t k = 0; k < n; ++k) out.push_back(schedule_lambda(s, k));
    return out;
}

std::vector<Ordinal> raw_levels(const RawSequence& r, std::size_t n) {
    std::vector<Ordinal> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(raw_level(r, i));
    return out;
}

std::string posset_text(const std::vector<Ordinal>& bits) {
    std::string out = "{";
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (i) out += ", ";
        out += to_string(bits[i]);
    }
    return out + "}";
}

std::vector<std::string> point_labels(char base, std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t k = 0; k < n; ++k) out.push_back(std::string(1, base) + std::to_string(k));
    return out;
}

void ascii_class(std::ostringstream& out, const SymbolicClass& c) {
    Canvas cv;
    switch (c.kind) {
        case ClassKind::Asc:
            out << "ascending class, stem " << posset_text(c.stem) << "\n";
            draw_ascending_comb(cv, point_labels('x', kJunctions));
            cv.render(out);
            out << "splits: " << level_list(schedule_lambdas(c.sched, 3), true) << "\n";
            break;
        case ClassKind::Desc:
            out << "descending class, stem " << posset_text(c.stem) << "\n";
            draw_descending_comb(cv, point_labels('y', kJunctions));
            cv.render(out);
            out << "splits: " << level_list(schedule_lambdas(c.sched, 3), true) << "\n";
            break;
        case ClassKind::Zeta:
            out << "two-sided class, stem " << posset_text(c.stem) << "\n";
            draw_zeta_v(cv);
            cv.render(out);
            out << "root: " << to_string(c.root) << "\n";
            out << "left splits: " << level_list(schedule_lambdas(c.left, 3), true) << "\n";
            out << "right splits: " << level_list(schedule_lambdas(c.sched, 3), true) << "\n";
            if (!c.right_carry.empty()) out << "carry: " << posset_text(c.right_carry) << "\n";
            break;
    }
    if (!c.extras.empty()) out << "extras: " << c.extras.size() << " glued point(s)\n";
}

void ascii_raw(std::ostringstream& out, const RawSequence& r) {
    Canvas cv;
    if (r.descending) {
        out << "raw descending enumeration, stem " << posset_text(r.stem) << "\n";
        draw_descending_comb(cv, point_labels('y', kJunctions));
    } else {
        out << "raw ascending enumeration, stem " << posset_text(r.stem) << "\n";
        draw_ascending_comb(cv, point_labels('x', kJunctions));
    }
    cv.render(out);
    out << "levels: " << level_list(raw_levels(r, std::max<std::size_t>(3, r.levels.size())), true)
        << "\n";
}

void ascii_raw_zeta(std::ostringstream& out, const RawZeta& z) {
    Canvas cv;
    out << "raw two-sided enumeration, stem " << posset_text(z.left.stem) << "\n";
    draw_zeta_v(cv);
    cv.render(out);
    out << "root: " << to_string(z.root) << "\n";
    out << "left levels: " << level_list(raw_levels(z.left, 3), true) << "\n";
    out << "right levels: " << level_list(raw_levels(z.right, 3), true) << "\n";
}

void ascii_tower(std::ostringstream& out, const Tower& t) {
    out << "tower of descending intervals, stem " << posset_text(t.stem) << "\n";
    std::vector<Ordinal> roots;
    for (std::size_t k = 0; k < 3; ++k) roots.push_back(tower_root(t, k));
    out << "roots: " << level_list(roots, true) << "\n";
    for (std::size_t k = 0; k < 2; ++k) {
        std::vector<Ordinal> ls;
        for (std::size_t n = 0; n < 3; ++n) ls.push_back(tower_inner_level(t, k, n));
        out << "interval " << k << " levels: " << level_list(ls, true) << "\n";
    }
}

void ascii_finite(std::ostringstream& out, const FiniteBlock& fb) {
    out << fb.points.size() << " explicit point(s)\n";
    for (const auto& p : fb.points) out << to_string(p) << "\n";
}

void ascii_dyadic(std::ostringstream& out, const DyadicCopy& d) {
    out << "dyadic copy, stem " << posset_text(d.bits) << "\n";
    Canvas cv;
    cv.put(0, 3, '/');
    cv.put(0, 4, '\\');
    cv.put(1, 2, '/');
    cv.put(1, 5, '\\');
    cv.put(2, 1, '/');
    cv.put(2, 2, '\\');
    cv.put(2, 5, '/');
    cv.put(2, 6, '\\');
    cv.render(out);
    out << "height: " << to_string(d.height) << "\n";
    out << "pads: 0-side " << d.pad0 << ", 1-side " << d.pad1 << "\n";
    auto path_text = [](const std::vector<int>& p) {
        std::string s;
        for (int b : p) s += static_cast<char>('0' + b);
        return s.empty() ? std::string("(root)") : s;
    };
    out << "remap0: path " << path_text(d.remap0) << ", height "
        << to_string(dyadic_height(d, d.remap0)) << "\n";
    out << "remap1: path " << path_text(d.remap1) << ", height "
        << to_string(dyadic_height(d, d.remap1)) << "\n";
}

// ---------------------------------------------------------------------------
// DOT emission
// ---------------------------------------------------------------------------

class DotWriter {
public:
    explicit DotWriter(std::ostringstream& out) : out_(out) {}

    std::string meet(const std::string& prefix, std::size_t k, const Ordinal& level) {
        std::string id = prefix + "m" + std::to_string(k);
        out_ << "  " << id << " [shape=circle, label=\"" << to_string(level) << "\"];\n";
        return id;
    }

    std::string leaf(const std::string& prefix, const std::string& name) {
        std::string id = prefix + name;
        out_ << "  " << id << " [shape=box, label=\"" << name << "\"];\n";
        return id;
    }

    std::string tail(const std::string& prefix, const std::string& suffix = "tail") {
        std::string id = prefix + suffix;
        out_ << "  " << id << " [shape=plaintext, label=\"...\"];\n";
        return id;
    }

    void edge(const std::string& from, const std::string& to, int bit) {
        out_ << "  " << from << " -> " << to << " [label=\"" << bit << "\"];\n";
    }

private:
    std::ostringstream& out_;
};

// Comb as a meet chain: junction k sends the point to one side and the rest
// of the spine to the other.
void dot_comb(DotWriter& w, const std::string& prefix, const std::vector<Ordinal>& levels,
              bool ascending, char leaf_base) {
    std::vector<std::string> meets;
    for (std::size_t k = 0; k < levels.size(); ++k) {
        meets.push_back(w.meet(prefix, k, levels[k]));
    }
    std::string t = w.tail(prefix);
    for (std::size_t k = 0; k < levels.size(); ++k) {
        std::string leaf =
            w.leaf(prefix, std::string(1, leaf_base) + std::to_string(k));
        const std::string& next = k + 1 < levels.size() ? meets[k + 1] : t;
        if (ascending) {
            w.edge(meets[k], leaf, 0);
            w.edge(meets[k], next, 1);
        } else {
            w.edge(meets[k], next, 0);
            w.edge(meets[k], leaf, 1);
        }
    }
}

void dot_zeta(DotWriter& w, const std::string& prefix, const Ordinal& root,
              const std::vector<Ordinal>& left, const std::vector<Ordinal>& right) {
    std::string r = w.meet(prefix + "r", 0, root);
    dot_comb(w, prefix + "l", left, false, 'y');
    dot_comb(w, prefix + "R", right, true, 'x');
    w.edge(r, prefix + "lm0", 0);
    w.edge(r, prefix + "Rm0", 1);
}

void dot_block(DotWriter& w, std::ostringstream& out, const std::string& prefix, const Block& b) {
    if (const auto* c = std::get_if<SymbolicClass>(&b)) {
        switch (c->kind) {
            case ClassKind::Asc:
                dot_comb(w, prefix, schedule_lambdas(c->sched, 3), true, 'x');
                break;
            case ClassKind::Desc:
                dot_comb(w, prefix, schedule_lambdas(c->sched, 3), false, 'y');
                break;
            case ClassKind::Zeta:
                dot_zeta(w, prefix, c->root, schedule_lambdas(c->left, 2),
                         schedule_lambdas(c->sched, 2));
                break;
        }
        return;
    }
    if (const auto* r = std::get_if<RawSequence>(&b)) {
        dot_comb(w, prefix, raw_levels(*r, 3), !r->descending, r->descending ? 'y' : 'x');
        return;
    }
    if (const auto* z = std::get_if<RawZeta>(&b)) {
        dot_zeta(w, prefix, z->root, raw_levels(z->left, 2), raw_levels(z->right, 2));
        return;
    }
    if (const auto* t = std::get_if<Tower>(&b)) {
        std::vector<std::string> roots;
        for (std::size_t k = 0; k < 2; ++k) {
            roots.push_back(w.meet(prefix + "r", k, tower_root(*t, k)));
            std::vector<Ordinal> ls;
            for (std::size_t n = 0; n < 2; ++n) ls.push_back(tower_inner_level(*t, k, n));
            std::string ip = prefix + "i" + std::to_string(k);
            dot_comb(w, ip, ls, false, 'y');
            w.edge(roots[k], ip + "m0", 0);
        }
        w.edge(roots[0], roots[1], 1);
        w.edge(roots[1], w.tail(prefix, "rtail"), 1);
        return;
    }
    const auto& fb = std::get<FiniteBlock>(b);
    for (std::size_t i = 0; i < fb.points.size(); ++i) {
        out << "  " << prefix << "p" << i << " [shape=box, label=\"" << to_string(fb.points[i])
            << "\"];\n";
    }
}

}  // namespace

DiagramFormat parse_diagram_format(const std::string& name) {
    if (name == "ascii") return DiagramFormat::Ascii;
    if (name == "dot") return DiagramFormat::Dot;
    throw ParseError("unknown diagram format: " + name);
}

std::string render_diagram(const FamilyDoc& doc, DiagramFormat fmt) {
    std::ostringstream out;
    if (fmt == DiagramFormat::Ascii) {
        if (const auto* d = std::get_if<DyadicCopy>(&doc)) {
            out << "ambient " << to_string(d->ambient.length) << "\n";
            ascii_dyadic(out, *d);
            return out.str();
        }
        const auto& f = std::get<RepFamily>(doc);
        out << "ambient " << to_string(f.ambient.length) << "\n";
        for (std::size_t i = 0; i < f.blocks.size(); ++i) {
            out << "\nblock " << i << ": ";
            const Block& b = f.blocks[i];
            if (const auto* c = std::get_if<SymbolicClass>(&b)) {
                ascii_class(out, *c);
            } else if (const auto* r = std::get_if<RawSequence>(&b)) {
                ascii_raw(out, *r);
            } else if (const auto* z = std::get_if<RawZeta>(&b)) {
                ascii_raw_zeta(out, *z);
            } else if (const auto* t = std::get_if<Tower>(&b)) {
                ascii_tower(out, *t);
            } else {
                ascii_finite(out, std::get<FiniteBlock>(b));
            }
        }
        return out.str();
    }
    out << "digraph splitting {\n  rankdir=BT;\n";
    DotWriter w(out);
    if (const auto* d = std::get_if<DyadicCopy>(&doc)) {
        out << "  root [shape=circle, label=\"" << to_string(d->height) << "\"];\n";
        out << "  t0 [shape=plaintext, label=\"...\"];\n";
        out << "  t1 [shape=plaintext, label=\"...\"];\n";
        w.edge("root", "t0", 0);
        w.edge("root", "t1", 1);
    } else {
        const auto& f = std::get<RepFamily>(doc);
        for (std::size_t i = 0; i < f.blocks.size(); ++i) {
            dot_block(w, out, "b" + std::to_string(i), f.blocks[i]);
        }
    }
    out << "}\n";
    return out.str();
}

}  // namespace ordercalc
