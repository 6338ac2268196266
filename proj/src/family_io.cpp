#include "ordercalc/family_io.hpp"

#include <fstream>
#include <sstream>

#include "ordercalc/errors.hpp"

namespace ordercalc {

namespace {

struct Cursor {
    const std::string& text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    }
    bool at_end() {
        skip_ws();
        return pos >= text.size();
    }
    bool peek(char c) {
        skip_ws();
        return pos < text.size() && text[pos] == c;
    }
    bool try_eat(char c) {
        if (!peek(c)) return false;
        ++pos;
        return true;
    }
    void eat(char c) {
        if (!try_eat(c)) {
            throw ParseError("expected '" + std::string(1, c) + "' in: " + text);
        }
    }
    bool peek_word(const std::string& w) {
        skip_ws();
        if (text.compare(pos, w.size(), w) != 0) return false;
        std::size_t after = pos + w.size();
        if (after < text.size()) {
            char c = text[after];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') return false;
        }
        return true;
    }
    bool try_word(const std::string& w) {
        if (!peek_word(w)) return false;
        pos += w.size();
        return true;
    }
    void word(const std::string& w) {
        if (!try_word(w)) throw ParseError("expected '" + w + "' in: " + text);
    }
    void key(const std::string& name) {
        word(name);
        eat('=');
    }
    Ordinal ordinal() {
        skip_ws();
        return parse_ordinal_at(text, pos);
    }
    std::size_t natural() {
        skip_ws();
        if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos]))) {
            throw ParseError("expected a number in: " + text);
        }
        std::size_t v = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            v = v * 10 + static_cast<std::size_t>(text[pos] - '0');
            ++pos;
        }
        return v;
    }
    std::vector<int> bitpath() {
        skip_ws();
        std::vector<int> out;
        while (pos < text.size() && (text[pos] == '0' || text[pos] == '1')) {
            out.push_back(text[pos] - '0');
            ++pos;
        }
        if (out.empty()) throw ParseError("expected a bit path in: " + text);
        return out;
    }
};

std::vector<Ordinal> parse_posset(Cursor& c) {
    std::vector<Ordinal> out;
    c.eat('{');
    if (!c.try_eat('}')) {
        out.push_back(c.ordinal());
        while (c.try_eat(',')) out.push_back(c.ordinal());
        c.eat('}');
    }
    return out;
}

std::vector<Ordinal> parse_ordlist(Cursor& c) {
    std::vector<Ordinal> out;
    c.eat('[');
    if (!c.try_eat(']')) {
        out.push_back(c.ordinal());
        while (c.try_eat(',')) out.push_back(c.ordinal());
        c.eat(']');
    }
    return out;
}

Point parse_point(Cursor& c, const Alpha& ambient) {
    c.word("point");
    return make_point(ambient, parse_posset(c));
}

std::vector<Point> parse_pointlist(Cursor& c, const Alpha& ambient) {
    std::vector<Point> out;
    c.eat('[');
    if (!c.try_eat(']')) {
        out.push_back(parse_point(c, ambient));
        while (c.try_eat(',')) out.push_back(parse_point(c, ambient));
        c.eat(']');
    }
    return out;
}

LevelSchedule parse_sched(Cursor& c) {
    c.word("sched");
    c.eat('(');
    std::vector<std::vector<Ordinal>> prefix;
    if (c.try_word("prefix")) {
        c.eat('=');
        c.eat('[');
        if (!c.try_eat(']')) {
            prefix.push_back(parse_ordlist(c));
            while (c.try_eat(',')) prefix.push_back(parse_ordlist(c));
            c.eat(']');
        }
        c.eat(',');
    }
    c.key("start");
    Ordinal start = c.ordinal();
    c.eat(',');
    c.key("step");
    Ordinal step = c.ordinal();
    std::size_t stride = 1;
    std::vector<std::size_t> offsets = {0};
    if (c.try_eat(',')) {
        c.key("stride");
        stride = c.natural();
        c.eat(',');
        c.key("offsets");
        offsets.clear();
        c.eat('[');
        offsets.push_back(c.natural());
        while (c.try_eat(',')) offsets.push_back(c.natural());
        c.eat(']');
    }
    c.eat(')');
    return make_schedule(std::move(prefix), start, step, stride, std::move(offsets));
}

struct RawCarrier {
    std::vector<Ordinal> levels;
    Ordinal tail_start;
    Ordinal tail_step;
    std::size_t window = 1;
};

RawCarrier parse_raw_tailer(Cursor& c) {
    RawCarrier r;
    c.key("levels");
    r.levels = parse_ordlist(c);
    c.eat(',');
    c.key("tail");
    c.eat('(');
    c.key("start");
    r.tail_start = c.ordinal();
    c.eat(',');
    c.key("step");
    r.tail_step = c.ordinal();
    c.eat(')');
    c.eat(',');
    c.key("window");
    r.window = c.natural();
    return r;
}

Block parse_class_block(Cursor& c, const Alpha& ambient, ClassKind kind) {
    c.eat('(');
    c.key("stem");
    auto stem = parse_posset(c);
    c.eat(',');
    c.key("sched");
    auto sched = parse_sched(c);
    std::vector<Point> extras;
    if (c.try_eat(',')) {
        c.key("extras");
        extras = parse_pointlist(c, ambient);
    }
    c.eat(')');
    if (kind == ClassKind::Asc) {
        return make_asc_class(ambient, std::move(stem), std::move(sched), std::move(extras));
    }
    return make_desc_class(ambient, std::move(stem), std::move(sched), std::move(extras));
}

Block parse_zeta_block(Cursor& c, const Alpha& ambient) {
    c.eat('(');
    c.key("root");
    Ordinal root = c.ordinal();
    c.eat(',');
    c.key("stem");
    auto stem = parse_posset(c);
    c.eat(',');
    c.key("left");
    auto left = parse_sched(c);
    c.eat(',');
    c.key("right");
    auto right = parse_sched(c);
    std::vector<Ordinal> carry;
    std::vector<Point> extras;
    if (c.try_eat(',')) {
        if (c.try_word("carry")) {
            c.eat('=');
            carry = parse_posset(c);
            if (c.try_eat(',')) {
                c.key("extras");
                extras = parse_pointlist(c, ambient);
            }
        } else {
            c.key("extras");
            extras = parse_pointlist(c, ambient);
        }
    }
    c.eat(')');
    SymbolicClass z = make_zeta_class(ambient, std::move(stem), root, std::move(left),
                                      std::move(right), std::move(extras));
    if (!carry.empty()) {
        z.right_carry = std::move(carry);
        std::sort(z.right_carry.begin(), z.right_carry.end(),
                  [](const Ordinal& a, const Ordinal& b) { return less(a, b); });
        check_class(z);
    }
    return z;
}

Block parse_raw_block(Cursor& c, const Alpha& ambient, bool descending) {
    c.eat('(');
    c.key("stem");
    auto stem = parse_posset(c);
    c.eat(',');
    RawCarrier r = parse_raw_tailer(c);
    c.eat(')');
    return make_raw(ambient, descending, std::move(stem), std::move(r.levels), r.tail_start,
                    r.tail_step, r.window);
}

Block parse_rawzeta_block(Cursor& c, const Alpha& ambient) {
    c.eat('(');
    c.key("root");
    Ordinal root = c.ordinal();
    c.eat(',');
    c.key("stem");
    auto stem = parse_posset(c);
    c.eat(',');
    c.key("left");
    c.eat('(');
    RawCarrier l = parse_raw_tailer(c);
    c.eat(')');
    c.eat(',');
    c.key("right");
    c.eat('(');
    RawCarrier r = parse_raw_tailer(c);
    c.eat(')');
    c.eat(')');
    RawSequence left;
    left.levels = std::move(l.levels);
    left.tail_start = l.tail_start;
    left.tail_step = l.tail_step;
    left.window = l.window;
    RawSequence right;
    right.levels = std::move(r.levels);
    right.tail_start = r.tail_start;
    right.tail_step = r.tail_step;
    right.window = r.window;
    return make_raw_zeta(ambient, std::move(stem), root, std::move(left), std::move(right));
}

Block parse_tower_block(Cursor& c, const Alpha& ambient) {
    c.eat('(');
    c.key("stem");
    auto stem = parse_posset(c);
    c.eat(',');
    c.key("roots");
    auto roots = parse_sched(c);
    c.eat(',');
    c.key("inner");
    c.eat('(');
    c.key("prefix");
    Ordinal prefix = c.ordinal();
    c.eat(',');
    c.key("scale");
    Ordinal scale = c.ordinal();
    c.eat(',');
    c.key("step");
    Ordinal step = c.ordinal();
    c.eat(',');
    c.key("offset");
    Ordinal offset = c.ordinal();
    c.eat(')');
    c.eat(')');
    return make_tower(ambient, std::move(stem), std::move(roots), prefix, scale, step, offset);
}

DyadicCopy parse_dyadic_line(Cursor& c, const Alpha& ambient) {
    c.word("dyadic");
    c.eat('(');
    c.key("height");
    Ordinal height = c.ordinal();
    c.eat(',');
    c.key("bits");
    auto bits = parse_posset(c);
    c.eat(',');
    c.key("pad0");
    std::size_t pad0 = c.natural();
    c.eat(',');
    c.key("pad1");
    std::size_t pad1 = c.natural();
    c.eat(',');
    c.key("remap0");
    auto remap0 = c.bitpath();
    c.eat(',');
    c.key("remap1");
    auto remap1 = c.bitpath();
    c.eat(')');
    return make_dyadic(ambient, std::move(bits), height, pad0, pad1, std::move(remap0),
                       std::move(remap1));
}

std::vector<std::string> content_lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::size_t a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos) continue;
        std::size_t b = line.find_last_not_of(" \t\r");
        out.push_back(line.substr(a, b - a + 1));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

std::string posset_text(const std::vector<Ordinal>& v) {
    std::string out = "{";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += to_string(v[i]);
    }
    return out + "}";
}

std::string ordlist_text(const std::vector<Ordinal>& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += to_string(v[i]);
    }
    return out + "]";
}

std::string sched_text(const LevelSchedule& s) {
    std::string out = "sched(";
    if (!s.prefix_groups.empty()) {
        out += "prefix=[";
        for (std::size_t i = 0; i < s.prefix_groups.size(); ++i) {
            if (i) out += ", ";
            out += ordlist_text(s.prefix_groups[i]);
        }
        out += "], ";
    }
    out += "start=" + to_string(s.tail_start) + ", step=" + to_string(s.tail_step);
    if (s.tail_stride != 1 || s.tail_offsets != std::vector<std::size_t>{0}) {
        out += ", stride=" + std::to_string(s.tail_stride) + ", offsets=[";
        for (std::size_t i = 0; i < s.tail_offsets.size(); ++i) {
            if (i) out += ", ";
            out += std::to_string(s.tail_offsets[i]);
        }
        out += "]";
    }
    return out + ")";
}

std::string pointlist_text(const std::vector<Point>& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += "point" + posset_text(v[i].support);
    }
    return out + "]";
}

std::string raw_tailer_text(const RawSequence& r) {
    return "levels=" + ordlist_text(r.levels) + ", tail=(start=" + to_string(r.tail_start) +
           ", step=" + to_string(r.tail_step) + "), window=" + std::to_string(r.window);
}

std::string block_text(const Block& b) {
    if (const auto* fin = std::get_if<FiniteBlock>(&b)) {
        return "finite" + pointlist_text(fin->points);
    }
    if (const auto* c = std::get_if<SymbolicClass>(&b)) {
        std::string out;
        if (c->kind == ClassKind::Zeta) {
            out = "zeta(root=" + to_string(c->root) + ", stem=" + posset_text(c->stem) +
                  ", left=" + sched_text(c->left) + ", right=" + sched_text(c->sched);
            if (!c->right_carry.empty()) out += ", carry=" + posset_text(c->right_carry);
        } else {
            out = (c->kind == ClassKind::Asc ? std::string("asc(") : std::string("desc(")) +
                  "stem=" + posset_text(c->stem) + ", sched=" + sched_text(c->sched);
        }
        if (!c->extras.empty()) out += ", extras=" + pointlist_text(c->extras);
        return out + ")";
    }
    if (const auto* r = std::get_if<RawSequence>(&b)) {
        return (r->descending ? std::string("rawdesc(") : std::string("rawasc(")) +
               "stem=" + posset_text(r->stem) + ", " + raw_tailer_text(*r) + ")";
    }
    if (const auto* z = std::get_if<RawZeta>(&b)) {
        return "rawzeta(root=" + to_string(z->root) + ", stem=" + posset_text(z->left.stem) +
               ", left=(" + raw_tailer_text(z->left) + "), right=(" + raw_tailer_text(z->right) +
               "))";
    }
    const auto& t = std::get<Tower>(b);
    return "tower(stem=" + posset_text(t.stem) + ", roots=" + sched_text(t.roots) +
           ", inner=(prefix=" + to_string(t.inner_prefix) + ", scale=" + to_string(t.inner_scale) +
           ", step=" + to_string(t.inner_step) + ", offset=" + to_string(t.inner_offset) + "))";
}

std::string ambient_text(const Alpha& a) {
    std::string out = "ambient " + to_string(a.length);
    if (!a.countable) out += " uncountable";
    return out;
}

}  // namespace

std::string to_string(const LevelSchedule& s) { return sched_text(s); }

FamilyDoc parse_family_doc(const std::string& text) {
    auto lines = content_lines(text);
    if (lines.empty()) throw ParseError("empty family description");
    Cursor head{lines[0]};
    head.word("ambient");
    Ordinal length = head.ordinal();
    bool countable = !head.try_word("uncountable");
    if (!head.at_end()) throw ParseError("trailing text after ambient: " + lines[0]);
    Alpha ambient = countable ? make_alpha(length) : make_uncountable_alpha(length);

    if (lines.size() == 2) {
        Cursor probe{lines[1]};
        if (probe.peek_word("dyadic")) {
            Cursor c{lines[1]};
            DyadicCopy d = parse_dyadic_line(c, ambient);
            if (!c.at_end()) throw ParseError("trailing text after block: " + lines[1]);
            return d;
        }
    }

    std::vector<Block> blocks;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        Cursor c{lines[i]};
        Block b;
        if (c.try_word("asc")) {
            b = parse_class_block(c, ambient, ClassKind::Asc);
        } else if (c.try_word("desc")) {
            b = parse_class_block(c, ambient, ClassKind::Desc);
        } else if (c.try_word("zeta")) {
            b = parse_zeta_block(c, ambient);
        } else if (c.try_word("rawasc")) {
            b = parse_raw_block(c, ambient, false);
        } else if (c.try_word("rawdesc")) {
            b = parse_raw_block(c, ambient, true);
        } else if (c.try_word("rawzeta")) {
            b = parse_rawzeta_block(c, ambient);
        } else if (c.try_word("tower")) {
            b = parse_tower_block(c, ambient);
        } else if (c.try_word("finite")) {
            b = make_finite_block(ambient, parse_pointlist(c, ambient));
        } else {
            throw ParseError("unknown block: " + lines[i]);
        }
        if (!c.at_end()) throw ParseError("trailing text after block: " + lines[i]);
        blocks.push_back(std::move(b));
    }
    return make_family(ambient, std::move(blocks));
}

RepFamily parse_family(const std::string& text) {
    FamilyDoc doc = parse_family_doc(text);
    if (auto* f = std::get_if<RepFamily>(&doc)) return std::move(*f);
    throw DomainError("expected a block family, found a dyadic tree");
}

DyadicCopy parse_dyadic(const std::string& text) {
    FamilyDoc doc = parse_family_doc(text);
    if (auto* d = std::get_if<DyadicCopy>(&doc)) return std::move(*d);
    throw DomainError("expected a dyadic tree, found a block family");
}

std::string to_text(const RepFamily& f) {
    std::string out = ambient_text(f.ambient) + "\n";
    for (const auto& b : f.blocks) out += block_text(b) + "\n";
    return out;
}

std::string to_text(const DyadicCopy& d) {
    std::string out = ambient_text(d.ambient) + "\n";
    out += "dyadic(height=" + to_string(d.height) + ", bits=" + posset_text(d.bits) +
           ", pad0=" + std::to_string(d.pad0) + ", pad1=" + std::to_string(d.pad1) + ", remap0=";
    for (int b : d.remap0) out += static_cast<char>('0' + b);
    out += ", remap1=";
    for (int b : d.remap1) out += static_cast<char>('0' + b);
    return out + ")\n";
}

std::string to_text(const FamilyDoc& doc) {
    if (const auto* f = std::get_if<RepFamily>(&doc)) return to_text(*f);
    return to_text(std::get<DyadicCopy>(doc));
}

FamilyDoc load_family_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open family file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_family_doc(buf.str());
}

}  // namespace ordercalc
