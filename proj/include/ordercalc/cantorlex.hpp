#pragma once

#include <vector>

#include "ordercalc/ordinal.hpp"

namespace ordercalc {

// Ambient sequence length.  All arithmetic below treats the space of binary
// sequences of this length under the lexicographic order.
struct Alpha {
    Ordinal length;
    // Asserted by construction; encoding positions as naturals requires it.
    bool countable = true;

    bool operator==(const Alpha& other) const {
        return length == other.length && countable == other.countable;
    }
    bool operator!=(const Alpha& other) const { return !(*this == other); }
};

// Requires length >= w.
Alpha make_alpha(const Ordinal& length);
// Same shape, but flagged so that position encoding refuses to run.
Alpha make_uncountable_alpha(const Ordinal& length);

// A sequence with finitely many 1-bits, all other positions 0.  The support
// is kept sorted strictly increasing.
struct Point {
    Alpha ambient;
    std::vector<Ordinal> support;

    bool operator==(const Point& other) const {
        return ambient == other.ambient && support == other.support;
    }
    bool operator!=(const Point& other) const { return !(*this == other); }
};

Point make_point(const Alpha& ambient, std::vector<Ordinal> support);

// A finite initial segment: all 1-bits below `height` are listed in `bits`.
struct Stem {
    Alpha ambient;
    Ordinal height;
    std::vector<Ordinal> bits;

    bool operator==(const Stem& other) const {
        return ambient == other.ambient && height == other.height && bits == other.bits;
    }
    bool operator!=(const Stem& other) const { return !(*this == other); }
};

Stem make_stem(const Alpha& ambient, const Ordinal& height, std::vector<Ordinal> bits);

// Lexicographic comparison: -1, 0 or +1.  At the first position where the
// supports disagree, the point without that position is the smaller one.
int lex_cmp(const Point& x, const Point& y);
bool point_less(const Point& x, const Point& y);

// Height of the first disagreement.  Requires x != y.
Ordinal delta(const Point& x, const Point& y);

// Maximal common initial segment: height delta(x,y), bits shared below it.
Stem meet(const Point& x, const Point& y);

// Does x begin with s?
bool extends(const Point& x, const Stem& s);

// Minimum split height over a set of at least two distinct points; equals the
// minimum over consecutive pairs of the sorted set.
Ordinal delta_min(std::vector<Point> points);

// Cantor pairing on naturals, used to build the position encoding.
Nat cantor_pair(const Nat& a, const Nat& b);
std::pair<Nat, Nat> cantor_unpair(const Nat& z);

// A fixed constructive bijection between the positions below alpha.length and
// the naturals: the finite tail of the CNF occupies the first few codes, and
// the infinite CNF copies are interleaved round-robin, each copy enumerated
// by digit tupling through the pairing function.  b_decode is total on
// naturals and inverse to b_encode.
Nat b_encode(const Alpha& alpha, const Ordinal& o);
Ordinal b_decode(const Alpha& alpha, const Nat& n);

// Code of the split height: b_encode(delta(x, y)).
Nat script_n(const Alpha& alpha, const Point& x, const Point& y);

std::string to_string(const Point& p);
std::string to_string(const Stem& s);

}  // namespace ordercalc
