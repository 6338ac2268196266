#pragma once

#include <optional>
#include <string>
#include <utility>

#include "ordercalc/ordertype.hpp"

namespace ordercalc {

// Which of the three forbidden patterns certifies a class-3 verdict.
enum class Witness { None, Eta, OmegaOmegastar, OmegastarOmega };

// Result of classifying a countably infinite order type tau by how the
// splitting relation on lexicographic binary sequences behaves at length tau.
//
//   class 1: tau is w + k or k + w~; positive exactly when w -> (w)^w.
//   class 2: tau is a longer finite sum of ordinals and reverse ordinals;
//            negative at countable lengths, and at w_1 equivalent to
//            w_1 -> (beta)^beta.
//   class 3: tau embeds w w~, w~ w or eta; negative at every length.
struct TrichotomyReport {
    int class_index = 0;
    // Canonical description of tau; classify(parse_type(type_text)) gives an
    // identical report.
    std::string type_text;
    std::optional<FiniteSumForm> form;
    std::optional<std::pair<Nat, Side>> k_and_side;
    std::optional<Ordinal> xi_value;
    std::optional<Ordinal> beta_value;
    Witness witness = Witness::None;
    std::string equivalence;
};

// Ordinal sum of the entry values in sequence order.  Rejects forms with no
// infinite entry (finite types are out of scope for the classifier).
Ordinal xi(const FiniteSumForm& f);

// The largest ordinal expressible by rearranging the indecomposable CNF
// pieces of the entry values: sort the pieces weakly decreasing and sum.
// Coincides with the natural (Hessenberg) sum of the entry values.
Ordinal beta(const FiniteSumForm& f);

TrichotomyReport classify(const TypeExpr& e);

// True when two infinite ordinals share the leading CNF term, in which case
// kappa -> (g)^g and kappa -> (g2)^g2 are equivalent for every kappa.
bool same_leading_component(const Ordinal& g, const Ordinal& g2);
std::string leading_equivalence_text(const Ordinal& g, const Ordinal& g2);

// Stable key/value block, one "key: value" per line.
std::string to_text(const TrichotomyReport& r);

}  // namespace ordercalc
