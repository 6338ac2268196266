#include "ordercalc/cantorlex.hpp"

#include <algorithm>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

namespace ordercalc {

namespace {

void sort_positions(std::vector<Ordinal>& v) {
    std::sort(v.begin(), v.end(), [](const Ordinal& a, const Ordinal& b) { return less(a, b); });
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

void check_same_ambient(const Alpha& a, const Alpha& b, const char* who) {
    if (a != b) throw DomainError(std::string(who) + ": ambient lengths differ");
}

std::string join_positions(const std::vector<Ordinal>& v) {
    std::ostringstream out;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out << ", ";
        out << to_string(v[i]);
    }
    return out.str();
}

}  // namespace

Alpha make_alpha(const Ordinal& length) {
    if (length.is_finite()) throw DomainError("make_alpha: length must be at least w");
    return Alpha{length, true};
}

Alpha make_uncountable_alpha(const Ordinal& length) {
    if (length.is_finite()) throw DomainError("make_alpha: length must be at least w");
    return Alpha{length, false};
}

Point make_point(const Alpha& ambient, std::vector<Ordinal> support) {
    sort_positions(support);
    for (const Ordinal& p : support)
        if (!less(p, ambient.length))
            throw DomainError("make_point: support position " + to_string(p) +
                              " is not below the ambient length " + to_string(ambient.length));
    return Point{ambient, std::move(support)};
}

Stem make_stem(const Alpha& ambient, const Ordinal& height, std::vector<Ordinal> bits) {
    if (less(ambient.length, height))
        throw DomainError("make_stem: height exceeds the ambient length");
    sort_positions(bits);
    for (const Ordinal& p : bits)
        if (!less(p, height))
            throw DomainError("make_stem: bit position " + to_string(p) +
                              " is not below the stem height " + to_string(height));
    return Stem{ambient, height, std::move(bits)};
}

int lex_cmp(const Point& x, const Point& y) {
    check_same_ambient(x.ambient, y.ambient, "lex_cmp");
    size_t i = 0, j = 0;
    while (i < x.support.size() && j < y.support.size()) {
        int c = cmp(x.support[i], y.support[j]);
        if (c == 0) {
            ++i;
            ++j;
        } else if (c < 0) {
            return 1;  // x carries a 1 where y carries a 0
        } else {
            return -1;
        }
    }
    if (i < x.support.size()) return 1;
    if (j < y.support.size()) return -1;
    return 0;
}

bool point_less(const Point& x, const Point& y) { return lex_cmp(x, y) < 0; }

Ordinal delta(const Point& x, const Point& y) {
    check_same_ambient(x.ambient, y.ambient, "delta");
    size_t i = 0, j = 0;
    while (i < x.support.size() && j < y.support.size()) {
        int c = cmp(x.support[i], y.support[j]);
        if (c == 0) {
            ++i;
            ++j;
        } else {
            return c < 0 ? x.support[i] : y.support[j];
        }
    }
    if (i < x.support.size()) return x.support[i];
    if (j < y.support.size()) return y.support[j];
    throw DomainError("delta: the two points are equal");
}

Stem meet(const Point& x, const Point& y) {
    Ordinal h = delta(x, y);
    std::vector<Ordinal> bits;
    for (const Ordinal& p : x.support)
        if (less(p, h)) bits.push_back(p);
    return Stem{x.ambient, h, std::move(bits)};
}

bool extends(const Point& x, const Stem& s) {
    check_same_ambient(x.ambient, s.ambient, "extends");
    std::vector<Ordinal> below;
    for (const Ordinal& p : x.support)
        if (less(p, s.height)) below.push_back(p);
    return below == s.bits;
}

Ordinal delta_min(std::vector<Point> points) {
    if (points.size() < 2) throw DomainError("delta_min: need at least two points");
    std::sort(points.begin(), points.end(), point_less);
    Ordinal best = delta(points[0], points[1]);
    for (size_t i = 1; i + 1 < points.size(); ++i)
        best = min(best, delta(points[i], points[i + 1]));
    return best;
}

Nat cantor_pair(const Nat& a, const Nat& b) { return (a + b) * (a + b + 1) / 2 + b; }

std::pair<Nat, Nat> cantor_unpair(const Nat& z) {
    using boost::multiprecision::sqrt;
    Nat s = sqrt(Nat(8 * z + 1));
    Nat w = (s - 1) / 2;
    while ((w + 1) * (w + 2) / 2 <= z) ++w;
    while (w * (w + 1) / 2 > z) --w;
    Nat t = w * (w + 1) / 2;
    Nat b = z - t;
    return {w - b, b};
}

namespace {

// Bijection between the positions below w^e (e >= 1) and the naturals.
Nat encode_power(const Ordinal& e, const Ordinal& o);
Ordinal decode_power(const Ordinal& e, const Nat& n);

Nat encode_in(const Alpha& alpha, const Ordinal& o);
Ordinal decode_in(const Alpha& alpha, const Nat& n);

bool is_successor_exponent(const Ordinal& e, Ordinal& predecessor) {
    if (e.is_zero()) return false;
    const Term& last = e.terms.back();
    if (!last.exponent.is_zero()) return false;
    Ordinal p = e;
    if (last.coefficient == 1) p.terms.pop_back();
    else p.terms.back().coefficient -= 1;
    predecessor = p;
    return true;
}

Nat encode_power(const Ordinal& e, const Ordinal& o) {
    if (e == nat(1UL)) return o.finite_value();
    Ordinal pred;
    if (is_successor_exponent(e, pred)) {
        // o = w^pred * m + r with m finite.
        if (o.is_zero()) return cantor_pair(0, encode_power(pred, zero()));
        const Term& lead = o.terms[0];
        if (lead.exponent == pred) {
            Ordinal r = o;
            r.terms.erase(r.terms.begin());
            return cantor_pair(lead.coefficient, encode_power(pred, r));
        }
        return cantor_pair(0, encode_power(pred, o));
    }
    // Limit exponent: encode the leading CNF term through the position code
    // of the exponent itself.
    if (o.is_zero()) return 0;
    const Term& lead = o.terms[0];
    Ordinal r = o;
    r.terms.erase(r.terms.begin());
    Nat f_code = encode_in(make_alpha(e), lead.exponent);
    Nat rest;
    if (lead.exponent.is_zero()) {
        rest = lead.coefficient - 1;  // r is empty for a trailing finite part
    } else {
        rest = cantor_pair(lead.coefficient - 1, encode_power(lead.exponent, r));
    }
    return 1 + cantor_pair(f_code, rest);
}

Ordinal decode_power(const Ordinal& e, const Nat& n) {
    if (e == nat(1UL)) return nat(n);
    Ordinal pred;
    if (is_successor_exponent(e, pred)) {
        auto [m, q] = cantor_unpair(n);
        Ordinal r = decode_power(pred, q);
        if (m == 0) return r;
        return add(omega_term(pred, m), r);
    }
    if (n == 0) return zero();
    auto [f_code, rest] = cantor_unpair(Nat(n - 1));
    Ordinal f = decode_in(make_alpha(e), f_code);
    if (f.is_zero()) return nat(Nat(rest + 1));
    auto [c1, q] = cantor_unpair(rest);
    return add(omega_term(f, Nat(c1 + 1)), decode_power(f, q));
}

struct BlockTable {
    // Start offset and exponent of every infinite CNF copy, in interval order.
    std::vector<std::pair<Ordinal, Ordinal>> copies;
    Nat tail_size = 0;   // trailing finite part of alpha
    Ordinal tail_start;  // first position of that part
};

BlockTable block_table(const Alpha& alpha) {
    BlockTable t;
    Ordinal offset = zero();
    for (const Term& term : alpha.length.terms) {
        if (term.exponent.is_zero()) {
            t.tail_size = term.coefficient;
            t.tail_start = offset;
            break;
        }
        for (Nat c = 0; c < term.coefficient; ++c) {
            t.copies.emplace_back(offset, term.exponent);
            offset = add(offset, omega_pow(term.exponent));
        }
    }
    if (t.tail_size == 0) t.tail_start = offset;
    return t;
}

Nat encode_in(const Alpha& alpha, const Ordinal& o) {
    BlockTable t = block_table(alpha);
    if (!less(o, t.tail_start)) {
        // Position inside the finite tail.
        Ordinal r = left_sub(t.tail_start, o);
        return r.finite_value();
    }
    size_t j = t.copies.size();
    while (j > 0 && less(o, t.copies[j - 1].first)) --j;
    --j;  // now copies[j].first <= o < next start
    Ordinal r = left_sub(t.copies[j].first, o);
    Nat m(t.copies.size());
    return t.tail_size + m * encode_power(t.copies[j].second, r) + Nat(j);
}

Ordinal decode_in(const Alpha& alpha, const Nat& n) {
    BlockTable t = block_table(alpha);
    if (n < t.tail_size) return add(t.tail_start, nat(n));
    Nat rem = n - t.tail_size;
    Nat m(t.copies.size());
    Nat q = rem / m;
    size_t j = static_cast<size_t>(rem % m);
    return add(t.copies[j].first, decode_power(t.copies[j].second, q));
}

}  // namespace

Nat b_encode(const Alpha& alpha, const Ordinal& o) {
    if (!alpha.countable)
        throw DomainError("b_encode: the ambient length is not flagged countable");
    if (!less(o, alpha.length))
        throw DomainError("b_encode: position " + to_string(o) +
                          " is not below the length " + to_string(alpha.length));
    return encode_in(alpha, o);
}

Ordinal b_decode(const Alpha& alpha, const Nat& n) {
    if (!alpha.countable)
        throw DomainError("b_decode: the ambient length is not flagged countable");
    return decode_in(alpha, n);
}

Nat script_n(const Alpha& alpha, const Point& x, const Point& y) {
    return b_encode(alpha, delta(x, y));
}

std::string to_string(const Point& p) { return "point{" + join_positions(p.support) + "}"; }

std::string to_string(const Stem& s) {
    return "stem(h=" + to_string(s.height) + "){" + join_positions(s.bits) + "}";
}

}  // namespace ordercalc
