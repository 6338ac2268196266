#include "ordercalc/ordertype.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace ordercalc {

bool TypeExpr::operator==(const TypeExpr& other) const {
    return kind == other.kind && fin_value == other.fin_value &&
           ord_value == other.ord_value && children == other.children;
}

TypeExpr t_fin(const Nat& k) {
    if (k < 0) throw DomainError("t_fin: negative size");
    TypeExpr e;
    e.kind = TypeExpr::Kind::Fin;
    e.fin_value = k;
    return e;
}

TypeExpr t_ord(const Ordinal& o) {
    if (o.is_finite()) return t_fin(o.finite_value());
    TypeExpr e;
    e.kind = TypeExpr::Kind::Ord;
    e.ord_value = o;
    return e;
}

TypeExpr t_eta() {
    TypeExpr e;
    e.kind = TypeExpr::Kind::Eta;
    return e;
}

TypeExpr t_zeta() { return t_sum({t_rev(t_ord(omega())), t_ord(omega())}); }

TypeExpr t_rev(TypeExpr e) {
    TypeExpr r;
    r.kind = TypeExpr::Kind::Rev;
    r.children.push_back(std::move(e));
    return r;
}

TypeExpr t_sum(std::vector<TypeExpr> parts) {
    if (parts.size() < 2) throw DomainError("t_sum: needs at least two summands");
    TypeExpr r;
    r.kind = TypeExpr::Kind::Sum;
    r.children = std::move(parts);
    return r;
}

TypeExpr t_prod(TypeExpr left, TypeExpr right) {
    TypeExpr r;
    r.kind = TypeExpr::Kind::Prod;
    r.children.push_back(std::move(left));
    r.children.push_back(std::move(right));
    return r;
}

void push_entry(FiniteSumForm& form, FormEntry e) {
    if (e.value.is_zero()) return;
    if (e.value.is_finite()) e.rev = false;
    if (form.entries.empty()) {
        form.entries.push_back(std::move(e));
        return;
    }
    FormEntry& back = form.entries.back();
    bool back_fin = back.value.is_finite();
    bool e_fin = e.value.is_finite();
    if (back_fin && e_fin) {
        back.value = add(back.value, e.value);
    } else if (back_fin) {
        // k + b = b forwards; k + b~ = (b + k)~.
        back = e.rev ? FormEntry{add(e.value, back.value), true}
                     : FormEntry{add(back.value, e.value), false};
    } else if (e_fin) {
        // b + k forwards; b~ + k = (k + b)~ = b~.
        if (back.rev) back.value = add(e.value, back.value);
        else back.value = add(back.value, e.value);
    } else if (back.rev == e.rev) {
        // a + b forwards, a~ + b~ = (b + a)~.
        if (back.rev) back.value = add(e.value, back.value);
        else back.value = add(back.value, e.value);
    } else {
        form.entries.push_back(std::move(e));
    }
}

FiniteSumForm reversed(const FiniteSumForm& form) {
    FiniteSumForm r;
    for (auto it = form.entries.rbegin(); it != form.entries.rend(); ++it)
        push_entry(r, FormEntry{it->value, it->value.is_finite() ? false : !it->rev});
    return r;
}

bool same_normal_type(const NormalReport& a, const NormalReport& b) {
    return a.embeds_eta == b.embeds_eta &&
           a.embeds_omega_omegastar == b.embeds_omega_omegastar &&
           a.embeds_omegastar_omega == b.embeds_omegastar_omega &&
           a.form.has_value() == b.form.has_value() &&
           (!a.form || *a.form == *b.form);
}

namespace {

void derive_aux(NormalReport& rep) {
    if (rep.flagged()) {
        // Each forbidden pattern contains both an ascending and a descending
        // w-chain, and eta embeds every countable type.
        rep.embeds_omega = true;
        rep.embeds_omegastar = true;
        return;
    }
    rep.embeds_omega = rep.embeds_omegastar = false;
    for (const FormEntry& e : rep.form->entries) {
        if (e.value.is_finite()) continue;
        if (e.rev) rep.embeds_omegastar = true;
        else rep.embeds_omega = true;
    }
}

void append_trace(NormalReport& rep, const NormalReport& child) {
    rep.trace.insert(rep.trace.end(), child.trace.begin(), child.trace.end());
}

bool form_has_rev(const FiniteSumForm& f) {
    return std::any_of(f.entries.begin(), f.entries.end(),
                       [](const FormEntry& e) { return e.rev; });
}

bool form_has_inf_fwd(const FiniteSumForm& f) {
    return std::any_of(f.entries.begin(), f.entries.end(),
                       [](const FormEntry& e) { return !e.rev && !e.value.is_finite(); });
}

NormalReport normalize_prod(const TypeExpr& e);

NormalReport normalize_impl(const TypeExpr& e) {
    NormalReport rep;
    switch (e.kind) {
        case TypeExpr::Kind::Fin: {
            rep.form = FiniteSumForm{};
            if (e.fin_value > 0)
                rep.form->entries.push_back(FormEntry{nat(e.fin_value), false});
            rep.trace.push_back("atom: finite order of size " + e.fin_value.str());
            break;
        }
        case TypeExpr::Kind::Ord: {
            rep.form = FiniteSumForm{};
            rep.form->entries.push_back(FormEntry{e.ord_value, false});
            rep.trace.push_back("atom: ordinal " + to_string(e.ord_value));
            break;
        }
        case TypeExpr::Kind::Eta: {
            rep.embeds_eta = true;
            rep.embeds_omega_omegastar = true;
            rep.embeds_omegastar_omega = true;
            rep.trace.push_back(
                "atom: eta is dense, so it embeds eta and (being universal for "
                "countable types) both scattered patterns");
            break;
        }
        case TypeExpr::Kind::Rev: {
            NormalReport child = normalize_impl(e.children[0]);
            append_trace(rep, child);
            rep.embeds_eta = child.embeds_eta;
            rep.embeds_omega_omegastar = child.embeds_omegastar_omega;
            rep.embeds_omegastar_omega = child.embeds_omega_omegastar;
            if (!rep.flagged()) rep.form = reversed(*child.form);
            rep.trace.push_back(
                "rev: reversed the summand order and directions; the two "
                "scattered patterns trade places");
            break;
        }
        case TypeExpr::Kind::Sum: {
            std::vector<NormalReport> parts;
            for (const TypeExpr& c : e.children) parts.push_back(normalize_impl(c));
            for (const NormalReport& p : parts) {
                append_trace(rep, p);
                rep.embeds_eta = rep.embeds_eta || p.embeds_eta;
                rep.embeds_omega_omegastar = rep.embeds_omega_omegastar || p.embeds_omega_omegastar;
                rep.embeds_omegastar_omega = rep.embeds_omegastar_omega || p.embeds_omegastar_omega;
            }
            if (!rep.flagged()) {
                FiniteSumForm out;
                for (const NormalReport& p : parts)
                    for (const FormEntry& fe : p.form->entries) push_entry(out, fe);
                rep.form = std::move(out);
                rep.trace.push_back("sum: concatenated summand forms, merging adjacent "
                                    "same-direction entries and absorbing finite middles");
            } else {
                rep.trace.push_back("sum: a summand already embeds a forbidden pattern");
            }
            break;
        }
        case TypeExpr::Kind::Prod:
            rep = normalize_prod(e);
            break;
    }
    derive_aux(rep);
    return rep;
}

NormalReport normalize_prod(const TypeExpr& e) {
    NormalReport L = normalize_impl(e.children[0]);
    NormalReport R = normalize_impl(e.children[1]);
    NormalReport rep;
    append_trace(rep, L);
    append_trace(rep, R);

    if (L.is_empty_order() || R.is_empty_order()) {
        rep.form = FiniteSumForm{};
        rep.trace.push_back("product: an empty factor gives the empty order");
        return rep;
    }

    rep.embeds_eta = L.embeds_eta || R.embeds_eta;
    rep.embeds_omega_omegastar = L.embeds_omega_omegastar || R.embeds_omega_omegastar;
    rep.embeds_omegastar_omega = L.embeds_omegastar_omega || R.embeds_omegastar_omega;
    if (L.embeds_eta || R.embeds_eta)
        rep.trace.push_back("product: an eta factor with a nonempty cofactor embeds eta");
    if (L.embeds_omega && R.embeds_omegastar && !rep.embeds_omega_omegastar) {
        rep.embeds_omega_omegastar = true;
        rep.trace.push_back(
            "product: ascending w-chains in the left factor repeated along a "
            "descending right chain, so the product embeds w w~");
    }
    if (L.embeds_omegastar && R.embeds_omega && !rep.embeds_omegastar_omega) {
        rep.embeds_omegastar_omega = true;
        rep.trace.push_back(
            "product: descending w-chains in the left factor repeated along an "
            "ascending right chain, so the product embeds w~ w");
    }
    if (rep.flagged()) {
        if ((L.flagged() || R.flagged()) && rep.trace.back().rfind("product:", 0) != 0)
            rep.trace.push_back("product: a factor already embeds a forbidden pattern");
        return rep;
    }

    const FiniteSumForm& FL = *L.form;
    const FiniteSumForm& FR = *R.form;
    FiniteSumForm out;
    for (const FormEntry& b : FR.entries) {
        if (b.value.is_finite()) {
            Nat k = b.value.finite_value();
            for (Nat i = 0; i < k; ++i)
                for (const FormEntry& a : FL.entries) push_entry(out, a);
            rep.trace.push_back("product: finite right entry " + k.str() +
                                " unfolds to a " + k.str() + "-fold sum of the left form");
            continue;
        }
        if (!b.rev) {
            if (form_has_rev(FL)) {
                rep.embeds_omegastar_omega = true;
                rep.trace.push_back(
                    "product: a reversed left entry repeated along the infinite "
                    "ascending right entry " + to_string(b.value) + " embeds w~ w");
                break;
            }
            // No reversed entries means the left form is a plain ordinal.
            Ordinal v = zero();
            for (const FormEntry& a : FL.entries) v = add(v, a.value);
            push_entry(out, FormEntry{mul(v, b.value), false});
            rep.trace.push_back("product: ordinal product " + to_string(v) + " * " +
                                to_string(b.value) + " for the ascending right entry");
        } else {
            if (form_has_inf_fwd(FL)) {
                rep.embeds_omega_omegastar = true;
                rep.trace.push_back(
                    "product: an infinite ascending left entry repeated along the "
                    "descending right entry " + to_string(b.value) + "~ embeds w w~");
                break;
            }
            // Only a single reversed entry or a single finite entry remains.
            const FormEntry& a = FL.entries[0];
            push_entry(out, FormEntry{mul(a.value, b.value), true});
            rep.trace.push_back("product: (s t)~ = s~ t~ turns the descending right entry " +
                                to_string(b.value) + "~ into the reversed ordinal product " +
                                to_string(mul(a.value, b.value)) + "~");
        }
    }
    if (!rep.flagged()) rep.form = std::move(out);
    return rep;
}

}  // namespace

NormalReport normalize(const TypeExpr& e) { return normalize_impl(e); }

TypeExpr strip_double_reversals(const TypeExpr& e) {
    TypeExpr out = e;
    for (TypeExpr& c : out.children) c = strip_double_reversals(c);
    if (out.kind == TypeExpr::Kind::Rev) {
        if (out.children[0].kind == TypeExpr::Kind::Rev) {
            TypeExpr inner = std::move(out.children[0].children[0]);
            return inner;
        }
        if (out.children[0].kind == TypeExpr::Kind::Fin) return out.children[0];
    }
    return out;
}

bool embeds_special(Pattern p, const TypeExpr& e) {
    NormalReport rep = normalize(e);
    switch (p) {
        case Pattern::Eta: return rep.embeds_eta;
        case Pattern::OmegaOmegastar: return rep.embeds_omega_omegastar;
        case Pattern::OmegastarOmega: return rep.embeds_omegastar_omega;
    }
    return false;
}

Ordinal hausdorff_rank(const FiniteSumForm& form) {
    Ordinal r = zero();
    for (const FormEntry& e : form.entries) {
        if (e.value.is_finite()) continue;
        r = max(r, leading_term(e.value).exponent);
    }
    return r;
}

std::optional<std::pair<Nat, Side>> match_omega_plus_k(const FiniteSumForm& form) {
    if (form.entries.size() != 1) return std::nullopt;
    const FormEntry& e = form.entries[0];
    const auto& ts = e.value.terms;
    if (ts.empty() || !(ts[0].exponent == nat(1UL)) || ts[0].coefficient != 1) return std::nullopt;
    Nat k = 0;
    if (ts.size() == 2) {
        if (!ts[1].exponent.is_zero()) return std::nullopt;
        k = ts[1].coefficient;
    } else if (ts.size() > 2) {
        return std::nullopt;
    }
    return std::make_pair(k, e.rev ? Side::Right : Side::Left);
}

namespace {

void skip_ws(const std::string& s, size_t& pos) {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
}

TypeExpr parse_type_at(const std::string& s, size_t& pos);

TypeExpr parse_atom(const std::string& s, size_t& pos) {
    skip_ws(s, pos);
    if (pos >= s.size()) throw ParseError("expected a type atom, got end of input");
    char c = s[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
        std::string digits;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) digits += s[pos++];
        return t_fin(Nat(digits));
    }
    if (c == '(') {
        ++pos;
        TypeExpr inner = parse_type_at(s, pos);
        skip_ws(s, pos);
        if (pos >= s.size() || s[pos] != ')') throw ParseError("expected ')' closing a group");
        ++pos;
        return inner;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
        std::string word;
        while (pos < s.size() && std::isalpha(static_cast<unsigned char>(s[pos]))) word += s[pos++];
        if (word == "eta") return t_eta();
        if (word == "zeta") return t_zeta();
        if (word == "w") {
            size_t save = pos;
            skip_ws(s, pos);
            if (pos < s.size() && s[pos] == '^') {
                ++pos;
                skip_ws(s, pos);
                if (pos >= s.size() || s[pos] != '(') throw ParseError("expected '(' after '^'");
                ++pos;
                Ordinal exp = parse_ordinal_at(s, pos);
                skip_ws(s, pos);
                if (pos >= s.size() || s[pos] != ')') throw ParseError("expected ')' closing exponent");
                ++pos;
                return t_ord(omega_pow(exp));
            }
            pos = save;
            return t_ord(omega());
        }
        throw ParseError("unknown type atom '" + word + "'");
    }
    throw ParseError(std::string("unexpected character '") + c + "' in type expression");
}

TypeExpr parse_postfix(const std::string& s, size_t& pos) {
    TypeExpr e = parse_atom(s, pos);
    for (;;) {
        size_t save = pos;
        skip_ws(s, pos);
        if (pos < s.size() && s[pos] == '~') {
            ++pos;
            e = t_rev(std::move(e));
        } else {
            pos = save;
            return e;
        }
    }
}

TypeExpr parse_prod(const std::string& s, size_t& pos) {
    TypeExpr e = parse_postfix(s, pos);
    for (;;) {
        size_t save = pos;
        skip_ws(s, pos);
        if (pos < s.size() && s[pos] == '*') {
            ++pos;
            e = t_prod(std::move(e), parse_postfix(s, pos));
        } else {
            pos = save;
            return e;
        }
    }
}

TypeExpr parse_type_at(const std::string& s, size_t& pos) {
    std::vector<TypeExpr> parts;
    parts.push_back(parse_prod(s, pos));
    for (;;) {
        size_t save = pos;
        skip_ws(s, pos);
        if (pos < s.size() && s[pos] == '+') {
            ++pos;
            parts.push_back(parse_prod(s, pos));
        } else {
            pos = save;
            break;
        }
    }
    if (parts.size() == 1) return std::move(parts[0]);
    return t_sum(std::move(parts));
}

// Precedence levels: 1 sum, 2 product, 3 postfix/atom.
int type_prec(const TypeExpr& e) {
    switch (e.kind) {
        case TypeExpr::Kind::Sum: return 1;
        case TypeExpr::Kind::Prod: return 2;
        case TypeExpr::Kind::Ord: {
            if (e.ord_value.terms.size() > 1) return 1;
            return e.ord_value.terms[0].coefficient == 1 ? 3 : 2;
        }
        default: return 3;
    }
}

std::string print_type(const TypeExpr& e, int parent_prec) {
    std::string body;
    switch (e.kind) {
        case TypeExpr::Kind::Fin: body = e.fin_value.str(); break;
        case TypeExpr::Kind::Ord: body = to_string(e.ord_value); break;
        case TypeExpr::Kind::Eta: body = "eta"; break;
        case TypeExpr::Kind::Rev: body = print_type(e.children[0], 3) + "~"; break;
        case TypeExpr::Kind::Sum: {
            std::ostringstream out;
            for (size_t i = 0; i < e.children.size(); ++i) {
                if (i) out << " + ";
                out << print_type(e.children[i], 2);
            }
            body = out.str();
            break;
        }
        case TypeExpr::Kind::Prod:
            body = print_type(e.children[0], 2) + "*" + print_type(e.children[1], 3);
            break;
    }
    if (type_prec(e) < parent_prec) return "(" + body + ")";
    return body;
}

}  // namespace

TypeExpr parse_type(const std::string& text) {
    size_t pos = 0;
    TypeExpr e = parse_type_at(text, pos);
    skip_ws(text, pos);
    if (pos != text.size())
        throw ParseError("trailing input after type expression at position " + std::to_string(pos));
    return e;
}

std::string to_string(const TypeExpr& e) { return print_type(e, 1); }

std::string to_string(const FiniteSumForm& form) {
    if (form.entries.empty()) return "0";
    std::ostringstream out;
    for (size_t i = 0; i < form.entries.size(); ++i) {
        if (i) out << " + ";
        const FormEntry& e = form.entries[i];
        if (e.rev) out << print_type(t_rev(t_ord(e.value)), 2);
        else out << print_type(t_ord(e.value), 2);
    }
    return out.str();
}

}  // namespace ordercalc
