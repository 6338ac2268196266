#include "ordercalc/ordinal.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace ordercalc {

bool Ordinal::is_finite() const {
    return terms.empty() || (terms.size() == 1 && terms[0].exponent.is_zero());
}

Nat Ordinal::finite_value() const {
    if (terms.empty()) return 0;
    if (!is_finite()) throw DomainError("finite_value: ordinal is infinite: " + to_string(*this));
    return terms[0].coefficient;
}

bool Ordinal::operator==(const Ordinal& other) const { return terms == other.terms; }

Ordinal zero() { return Ordinal{}; }

Ordinal nat(const Nat& n) {
    if (n < 0) throw DomainError("nat: negative value");
    Ordinal o;
    if (n > 0) o.terms.push_back(Term{zero(), n});
    return o;
}

Ordinal nat(unsigned long n) { return nat(Nat(n)); }

Ordinal omega() { return omega_pow(nat(1UL)); }

Ordinal omega_pow(const Ordinal& e) { return omega_term(e, 1); }

Ordinal omega_term(const Ordinal& e, const Nat& c) {
    if (c < 0) throw DomainError("omega_term: negative coefficient");
    Ordinal o;
    if (c > 0) o.terms.push_back(Term{e, c});
    return o;
}

int cmp(const Ordinal& a, const Ordinal& b) {
    size_t n = std::min(a.terms.size(), b.terms.size());
    for (size_t i = 0; i < n; ++i) {
        int e = cmp(a.terms[i].exponent, b.terms[i].exponent);
        if (e != 0) return e;
        if (a.terms[i].coefficient != b.terms[i].coefficient)
            return a.terms[i].coefficient < b.terms[i].coefficient ? -1 : 1;
    }
    if (a.terms.size() == b.terms.size()) return 0;
    return a.terms.size() < b.terms.size() ? -1 : 1;
}

bool less(const Ordinal& a, const Ordinal& b) { return cmp(a, b) < 0; }

Ordinal max(const Ordinal& a, const Ordinal& b) { return less(a, b) ? b : a; }

Ordinal min(const Ordinal& a, const Ordinal& b) { return less(a, b) ? a : b; }

Ordinal add(const Ordinal& a, const Ordinal& b) {
    if (b.is_zero()) return a;
    const Ordinal& e = b.terms[0].exponent;
    Ordinal r;
    size_t i = 0;
    while (i < a.terms.size() && cmp(a.terms[i].exponent, e) > 0) r.terms.push_back(a.terms[i++]);
    if (i < a.terms.size() && a.terms[i].exponent == e) {
        r.terms.push_back(Term{e, a.terms[i].coefficient + b.terms[0].coefficient});
    } else {
        r.terms.push_back(b.terms[0]);
    }
    r.terms.insert(r.terms.end(), b.terms.begin() + 1, b.terms.end());
    return r;
}

Ordinal natural_sum(const Ordinal& a, const Ordinal& b) {
    Ordinal r;
    size_t i = 0, j = 0;
    while (i < a.terms.size() || j < b.terms.size()) {
        if (j == b.terms.size()) { r.terms.push_back(a.terms[i++]); continue; }
        if (i == a.terms.size()) { r.terms.push_back(b.terms[j++]); continue; }
        int c = cmp(a.terms[i].exponent, b.terms[j].exponent);
        if (c > 0) r.terms.push_back(a.terms[i++]);
        else if (c < 0) r.terms.push_back(b.terms[j++]);
        else {
            r.terms.push_back(Term{a.terms[i].exponent,
                                   a.terms[i].coefficient + b.terms[j].coefficient});
            ++i; ++j;
        }
    }
    return r;
}

Ordinal mul(const Ordinal& a, const Ordinal& b) {
    if (a.is_zero() || b.is_zero()) return zero();
    Ordinal r;
    for (const Term& t : b.terms) {
        Ordinal partial;
        if (t.exponent.is_zero()) {
            // a * k = w^(e1)*(c1*k) + tail of a, for finite k >= 1.
            partial.terms.push_back(Term{a.terms[0].exponent, a.terms[0].coefficient * t.coefficient});
            partial.terms.insert(partial.terms.end(), a.terms.begin() + 1, a.terms.end());
        } else {
            // a * w^(f)*m = w^(e1 + f)*m.
            partial.terms.push_back(Term{add(a.terms[0].exponent, t.exponent), t.coefficient});
        }
        r = add(r, partial);
    }
    return r;
}

Ordinal left_sub(const Ordinal& b, const Ordinal& a) {
    if (cmp(b, a) > 0) throw DomainError("left_sub: minuend smaller than subtrahend");
    size_t i = 0;
    while (i < b.terms.size() && i < a.terms.size() && b.terms[i] == a.terms[i]) ++i;
    Ordinal r;
    if (i == b.terms.size()) {
        r.terms.assign(a.terms.begin() + i, a.terms.end());
        return r;
    }
    // First differing term: either equal exponents with a's coefficient larger,
    // or a's exponent larger; b's remaining terms are absorbed either way.
    if (a.terms[i].exponent == b.terms[i].exponent) {
        r.terms.push_back(Term{a.terms[i].exponent,
                               a.terms[i].coefficient - b.terms[i].coefficient});
        r.terms.insert(r.terms.end(), a.terms.begin() + i + 1, a.terms.end());
    } else {
        r.terms.assign(a.terms.begin() + i, a.terms.end());
    }
    return r;
}

std::vector<Ordinal> indecomposable_parts(const Ordinal& a) {
    if (a.is_zero()) throw DomainError("indecomposable_parts: zero has no parts");
    std::vector<Ordinal> parts;
    for (const Term& t : a.terms) parts.push_back(omega_term(t.exponent, t.coefficient));
    return parts;
}

Term leading_term(const Ordinal& a) {
    if (a.is_zero()) throw DomainError("leading_term: zero has no leading term");
    return a.terms[0];
}

namespace {

void skip_ws(const std::string& s, size_t& pos) {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
}

Nat parse_nat(const std::string& s, size_t& pos) {
    skip_ws(s, pos);
    if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
        throw ParseError("expected a natural number at position " + std::to_string(pos));
    std::string digits;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) digits += s[pos++];
    return Nat(digits);
}

Ordinal parse_term(const std::string& s, size_t& pos) {
    skip_ws(s, pos);
    if (pos >= s.size()) throw ParseError("expected a term, got end of input");
    if (std::isdigit(static_cast<unsigned char>(s[pos]))) return nat(parse_nat(s, pos));
    if (s[pos] != 'w') throw ParseError(std::string("expected 'w' or a number, got '") + s[pos] + "'");
    ++pos;
    Ordinal exponent = nat(1UL);
    skip_ws(s, pos);
    if (pos < s.size() && s[pos] == '^') {
        ++pos;
        skip_ws(s, pos);
        if (pos >= s.size() || s[pos] != '(') throw ParseError("expected '(' after '^'");
        ++pos;
        exponent = parse_ordinal_at(s, pos);
        skip_ws(s, pos);
        if (pos >= s.size() || s[pos] != ')') throw ParseError("expected ')' closing exponent");
        ++pos;
        skip_ws(s, pos);
    }
    Nat coefficient = 1;
    if (pos < s.size() && s[pos] == '*') {
        ++pos;
        coefficient = parse_nat(s, pos);
    }
    return omega_term(exponent, coefficient);
}

}  // namespace

Ordinal parse_ordinal_at(const std::string& text, size_t& pos) {
    Ordinal r = parse_term(text, pos);
    for (;;) {
        size_t save = pos;
        skip_ws(text, pos);
        if (pos < text.size() && text[pos] == '+') {
            ++pos;
            r = add(r, parse_term(text, pos));
        } else {
            pos = save;
            skip_ws(text, pos);
            return r;
        }
    }
}

Ordinal parse_ordinal(const std::string& text) {
    size_t pos = 0;
    Ordinal r = parse_ordinal_at(text, pos);
    skip_ws(text, pos);
    if (pos != text.size())
        throw ParseError("trailing input after ordinal at position " + std::to_string(pos));
    return r;
}

std::string to_string(const Ordinal& a) {
    if (a.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const Term& t : a.terms) {
        if (!first) out << " + ";
        first = false;
        if (t.exponent.is_zero()) {
            out << t.coefficient;
            continue;
        }
        if (t.exponent == nat(1UL)) out << "w";
        else out << "w^(" << to_string(t.exponent) << ")";
        if (t.coefficient != 1) out << "*" << t.coefficient;
    }
    return out.str();
}

}  // namespace ordercalc
