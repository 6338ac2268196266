#pragma once

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ordercalc/errors.hpp"

namespace ordercalc {

// Arbitrary-precision natural number (always >= 0 in this library).
using Nat = boost::multiprecision::cpp_int;

struct Term;

// An ordinal below epsilon_0 in Cantor Normal Form:
//   w^(e_1)*c_1 + ... + w^(e_k)*c_k
// with e_1 > e_2 > ... > e_k (each exponent again an Ordinal) and every
// coefficient c_i >= 1.  Zero is the empty term list.
struct Ordinal {
    std::vector<Term> terms;

    bool is_zero() const { return terms.empty(); }
    bool is_finite() const;
    // Value of a finite ordinal; throws DomainError if infinite.
    Nat finite_value() const;

    bool operator==(const Ordinal& other) const;
    bool operator!=(const Ordinal& other) const { return !(*this == other); }
};

struct Term {
    Ordinal exponent;
    Nat coefficient;

    bool operator==(const Term& other) const {
        return exponent == other.exponent && coefficient == other.coefficient;
    }
};

Ordinal zero();
Ordinal nat(const Nat& n);
Ordinal nat(unsigned long n);
Ordinal omega();
// w^(e)
Ordinal omega_pow(const Ordinal& e);
// w^(e)*c
Ordinal omega_term(const Ordinal& e, const Nat& c);

// Three-way comparison: -1, 0 or +1.
int cmp(const Ordinal& a, const Ordinal& b);
bool less(const Ordinal& a, const Ordinal& b);
Ordinal max(const Ordinal& a, const Ordinal& b);
Ordinal min(const Ordinal& a, const Ordinal& b);

// Ordinal sum a + b (absorbing on the left: 1 + w = w).
Ordinal add(const Ordinal& a, const Ordinal& b);
// Hessenberg (natural) sum: commutative, strictly monotone in both arguments.
Ordinal natural_sum(const Ordinal& a, const Ordinal& b);
// Ordinal product a * b, i.e. b-many copies of a.
Ordinal mul(const Ordinal& a, const Ordinal& b);
// The unique c with b + c = a; requires b <= a.
Ordinal left_sub(const Ordinal& b, const Ordinal& a);

// The CNF terms as single-term ordinals, leading term first.
// w^(e)*k counts as one part.  Throws DomainError on zero.
std::vector<Ordinal> indecomposable_parts(const Ordinal& a);
// Leading CNF term; throws DomainError on zero.
Term leading_term(const Ordinal& a);

// Text form.  Grammar:
//   EXPR := TERM ('+' TERM)*
//   TERM := NAT | 'w' ('^' '(' EXPR ')')? ('*' NAT)?
// with insignificant whitespace, e.g. "w^(2)*3 + w + 5".
Ordinal parse_ordinal(const std::string& text);
std::string to_string(const Ordinal& a);

// Parses one ordinal expression starting at text[pos]; advances pos past it.
// Stops at the first character that cannot extend the expression.
Ordinal parse_ordinal_at(const std::string& text, size_t& pos);

}  // namespace ordercalc
