#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ordercalc/ordinal.hpp"

namespace ordercalc {

// A countable linear order type built from ordinals, reversal, finite sums
// and the colexicographic product (Prod(s, t) is t-many copies of s).
struct TypeExpr {
    enum class Kind { Fin, Ord, Eta, Rev, Sum, Prod };

    Kind kind = Kind::Fin;
    Nat fin_value = 0;                // Kind::Fin
    Ordinal ord_value;                // Kind::Ord, always infinite
    std::vector<TypeExpr> children;   // Rev: 1, Sum: >= 2, Prod: 2

    bool operator==(const TypeExpr& other) const;
};

TypeExpr t_fin(const Nat& k);
TypeExpr t_ord(const Ordinal& o);   // finite o collapses to t_fin
TypeExpr t_eta();
TypeExpr t_zeta();                  // sugar: Rev(w) + w
TypeExpr t_rev(TypeExpr e);
TypeExpr t_sum(std::vector<TypeExpr> parts);
TypeExpr t_prod(TypeExpr left, TypeExpr right);

// One summand of a finite-sum normal form: an ordinal or a reversed ordinal.
// Finite values always carry rev = false.
struct FormEntry {
    Ordinal value;   // >= 1
    bool rev = false;

    bool operator==(const FormEntry& other) const { return value == other.value && rev == other.rev; }
};

// A scattered type written as a finite sum of ordinals and reversed
// ordinals.  Invariants: adjacent entries differ in direction, and a finite
// entry occurs only as the single entry of the whole form.  The empty form
// is the empty order.
struct FiniteSumForm {
    std::vector<FormEntry> entries;

    bool operator==(const FiniteSumForm& other) const { return entries == other.entries; }
};

// Appends an entry, applying direction merges and finite absorption.
void push_entry(FiniteSumForm& form, FormEntry e);
FiniteSumForm reversed(const FiniteSumForm& form);

struct NormalReport {
    bool embeds_eta = false;
    bool embeds_omega_omegastar = false;
    bool embeds_omegastar_omega = false;
    // Present exactly when all three flags are false.
    std::optional<FiniteSumForm> form;
    // Derived embeddability of a bare w / w* chain (used by product rules).
    bool embeds_omega = false;
    bool embeds_omegastar = false;
    // Human-readable derivation, one rule application per line.
    std::vector<std::string> trace;

    bool flagged() const { return embeds_eta || embeds_omega_omegastar || embeds_omegastar_omega; }
    bool is_empty_order() const { return form && form->entries.empty(); }
};

// True when the two reports agree as order-type classifications: identical
// flags, and identical finite-sum forms when present.
bool same_normal_type(const NormalReport& a, const NormalReport& b);

NormalReport normalize(const TypeExpr& e);

// Structural cleanup that drops double reversals (and reversals of finite
// atoms) everywhere in the tree; the resulting expression denotes the same
// order type.
TypeExpr strip_double_reversals(const TypeExpr& e);

enum class Pattern { Eta, OmegaOmegastar, OmegastarOmega };
bool embeds_special(Pattern p, const TypeExpr& e);

// Maximum over entries of the leading CNF exponent (0 for finite entries
// and for the empty form): rank(w) = 1, rank(w^(2) + w~) = 2.
Ordinal hausdorff_rank(const FiniteSumForm& form);

enum class Side { Left, Right };
// Detects the two class-1 shapes: a single entry w + k forwards (side Left)
// or reversed (side Right, i.e. the type k + w~).
std::optional<std::pair<Nat, Side>> match_omega_plus_k(const FiniteSumForm& form);

// Text form.  Grammar (whitespace insignificant):
//   TYPE    := PROD ('+' PROD)*
//   PROD    := POSTFIX ('*' POSTFIX)*
//   POSTFIX := ATOM ('~')*
//   ATOM    := NAT | 'w' ('^' '(' ORDINAL ')')? | 'eta' | 'zeta' | '(' TYPE ')'
// '*' is the colexicographic product; '~' reverses.
TypeExpr parse_type(const std::string& text);
std::string to_string(const TypeExpr& e);
std::string to_string(const FiniteSumForm& form);

}  // namespace ordercalc
