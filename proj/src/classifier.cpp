#include "ordercalc/classifier.hpp"

#include <algorithm>
#include <sstream>

namespace ordercalc {

namespace {

void require_infinite(const FiniteSumForm& f, const char* who) {
    bool infinite = std::any_of(f.entries.begin(), f.entries.end(),
                                [](const FormEntry& e) { return !e.value.is_finite(); });
    if (!infinite)
        throw DomainError(std::string(who) + ": the form describes a finite type");
}

}  // namespace

Ordinal xi(const FiniteSumForm& f) {
    require_infinite(f, "xi");
    Ordinal s = zero();
    for (const FormEntry& e : f.entries) s = add(s, e.value);
    return s;
}

Ordinal beta(const FiniteSumForm& f) {
    require_infinite(f, "beta");
    Ordinal s = zero();
    for (const FormEntry& e : f.entries) s = natural_sum(s, e.value);
    return s;
}

bool same_leading_component(const Ordinal& g, const Ordinal& g2) {
    if (g.is_finite() || g2.is_finite())
        throw DomainError("same_leading_component: both ordinals must be infinite");
    return leading_term(g) == leading_term(g2);
}

std::string leading_equivalence_text(const Ordinal& g, const Ordinal& g2) {
    std::ostringstream out;
    if (same_leading_component(g, g2)) {
        out << "CNFs of " << to_string(g) << " and " << to_string(g2)
            << " share their first component, so for every kappa: kappa -> ("
            << to_string(g) << ")^" << to_string(g) << " iff kappa -> (" << to_string(g2)
            << ")^" << to_string(g2);
    } else {
        out << "CNFs of " << to_string(g) << " and " << to_string(g2)
            << " have different first components; no reduction between the arrow "
               "relations is claimed";
    }
    return out.str();
}

TrichotomyReport classify(const TypeExpr& e) {
    NormalReport rep = normalize(e);
    TrichotomyReport r;

    if (rep.flagged()) {
        r.class_index = 3;
        r.type_text = to_string(strip_double_reversals(e));
        if (rep.embeds_eta) {
            r.witness = Witness::Eta;
            r.equivalence =
                "negative for all alpha: any countable order embeds in tau, in "
                "particular tau + tau <= tau";
        } else if (rep.embeds_omega_omegastar) {
            r.witness = Witness::OmegaOmegastar;
            r.equivalence = "negative for all alpha: tau is scattered and w w~ <= tau";
        } else {
            r.witness = Witness::OmegastarOmega;
            r.equivalence = "negative for all alpha: tau is scattered and w~ w <= tau";
        }
        return r;
    }

    const FiniteSumForm& form = *rep.form;
    bool infinite = std::any_of(form.entries.begin(), form.entries.end(),
                                [](const FormEntry& fe) { return !fe.value.is_finite(); });
    if (!infinite)
        throw DomainError("classify: tau must be infinite, got the finite type " +
                          to_string(form));

    r.form = form;
    r.type_text = to_string(form);

    if (auto near = match_omega_plus_k(form)) {
        r.class_index = 1;
        r.k_and_side = near;
        r.equivalence =
            "for every countable alpha >= w: <^alpha 2, lex> -> (tau)^tau iff "
            "w -> (w)^w";
        return r;
    }

    r.class_index = 2;
    r.xi_value = xi(form);
    r.beta_value = beta(form);
    r.equivalence =
        "<^alpha 2, lex> -/-> (tau)^tau for countable alpha; <^w_1 2, lex> -> "
        "(tau)^tau iff w_1 -> (beta)^beta with beta = " +
        to_string(*r.beta_value) +
        "; behaviour at other uncountable alpha is open";
    return r;
}

std::string to_text(const TrichotomyReport& r) {
    std::ostringstream out;
    out << "class: " << r.class_index << "\n";
    out << "type: " << r.type_text << "\n";
    if (r.form) out << "form: " << to_string(*r.form) << "\n";
    if (r.k_and_side) {
        out << "k: " << r.k_and_side->first.str() << "\n";
        out << "side: " << (r.k_and_side->second == Side::Left ? "left" : "right") << "\n";
    }
    if (r.xi_value) out << "xi: " << to_string(*r.xi_value) << "\n";
    if (r.beta_value) out << "beta: " << to_string(*r.beta_value) << "\n";
    out << "witness: ";
    switch (r.witness) {
        case Witness::None: out << "none"; break;
        case Witness::Eta: out << "eta"; break;
        case Witness::OmegaOmegastar: out << "omega-omegastar"; break;
        case Witness::OmegastarOmega: out << "omegastar-omega"; break;
    }
    out << "\n";
    out << "equivalence: " << r.equivalence << "\n";
    return out.str();
}

}  // namespace ordercalc
