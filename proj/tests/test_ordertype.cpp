#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ordercalc/ordertype.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <vector>

using namespace ordercalc;

namespace {

Ordinal O(const std::string& s) { return parse_ordinal(s); }
TypeExpr T(const std::string& s) { return parse_type(s); }

FormEntry fwd(const std::string& s) { return FormEntry{O(s), false}; }
FormEntry rev(const std::string& s) { return FormEntry{O(s), true}; }

FiniteSumForm form_of(std::vector<FormEntry> es) {
    FiniteSumForm f;
    f.entries = std::move(es);
    return f;
}

// ---------------------------------------------------------------------------
// Oracle 1: direct structural embedding predicates, written independently of
// the normalizer.  Each follows the classical closure laws for sums, products
// and reversals of linear orders.

bool orc_empty(const TypeExpr& e) {
    switch (e.kind) {
        case TypeExpr::Kind::Fin: return e.fin_value == 0;
        case TypeExpr::Kind::Ord:
        case TypeExpr::Kind::Eta: return false;
        case TypeExpr::Kind::Rev: return orc_empty(e.children[0]);
        case TypeExpr::Kind::Sum:
            return std::all_of(e.children.begin(), e.children.end(), orc_empty);
        case TypeExpr::Kind::Prod:
            return orc_empty(e.children[0]) || orc_empty(e.children[1]);
    }
    return false;
}

bool orc_omega(const TypeExpr& e);
bool orc_omegastar(const TypeExpr& e);

bool orc_omega(const TypeExpr& e) {
    switch (e.kind) {
        case TypeExpr::Kind::Fin: return false;
        case TypeExpr::Kind::Ord: return true;
        case TypeExpr::Kind::Eta: return true;
        case TypeExpr::Kind::Rev: return orc_omegastar(e.children[0]);
        case TypeExpr::Kind::Sum:
            return std::any_of(e.children.begin(), e.children.end(), orc_omega);
        case TypeExpr::Kind::Prod:
            return !orc_empty(e.children[0]) && !orc_empty(e.children[1]) &&
                   (orc_omega(e.children[0]) || orc_omega(e.children[1]));
    }
    return false;
}

bool orc_omegastar(const TypeExpr& e) {
    switch (e.kind) {
        case TypeExpr::Kind::Fin: return false;
        case TypeExpr::Kind::Ord: return false;
        case TypeExpr::Kind::Eta: return true;
        case TypeExpr::Kind::Rev: return orc_omega(e.children[0]);
        case TypeExpr::Kind::Sum:
            return std::any_of(e.children.begin(), e.children.end(), orc_omegastar);
        case TypeExpr::Kind::Prod:
            return !orc_empty(e.children[0]) && !orc_empty(e.children[1]) &&
                   (orc_omegastar(e.children[0]) || orc_omegastar(e.children[1]));
    }
    return false;
}

bool orc_eta(const TypeExpr& e) {
    switch (e.kind) {
        case TypeExpr::Kind::Fin:
        case TypeExpr::Kind::Ord: return false;
        case TypeExpr::Kind::Eta: return true;
        case TypeExpr::Kind::Rev: return orc_eta(e.children[0]);
        case TypeExpr::Kind::Sum:
            return std::any_of(e.children.begin(), e.children.end(), orc_eta);
        case TypeExpr::Kind::Prod:
            return !orc_empty(e.children[0]) && !orc_empty(e.children[1]) &&
                   (orc_eta(e.children[0]) || orc_eta(e.children[1]));
    }
    return false;
}

bool orc_oo(const TypeExpr& e);
bool orc_oso(const TypeExpr& e);

bool orc_oo(const TypeExpr& e) {
    switch (e.kind) {
        case TypeExpr::Kind::Fin:
        case TypeExpr::Kind::Ord: return false;
        case TypeExpr::Kind::Eta: return true;
        case TypeExpr::Kind::Rev: return orc_oso(e.children[0]);
        case TypeExpr::Kind::Sum:
            return std::any_of(e.children.begin(), e.children.end(), orc_oo);
        case TypeExpr::Kind::Prod: {
            const TypeExpr& a = e.children[0];
            const TypeExpr& b = e.children[1];
            if (orc_empty(a) || orc_empty(b)) return false;
            return orc_oo(a) || orc_oo(b) || (orc_omega(a) && orc_omegastar(b));
        }
    }
    return false;
}

bool orc_oso(const TypeExpr& e) {
    switch (e.kind) {
        case TypeExpr::Kind::Fin:
        case TypeExpr::Kind::Ord: return false;
        case TypeExpr::Kind::Eta: return true;
        case TypeExpr::Kind::Rev: return orc_oo(e.children[0]);
        case TypeExpr::Kind::Sum:
            return std::any_of(e.children.begin(), e.children.end(), orc_oso);
        case TypeExpr::Kind::Prod: {
            const TypeExpr& a = e.children[0];
            const TypeExpr& b = e.children[1];
            if (orc_empty(a) || orc_empty(b)) return false;
            return orc_oso(a) || orc_oso(b) || (orc_omegastar(a) && orc_omega(b));
        }
    }
    return false;
}

// ---------------------------------------------------------------------------
// Oracle 2: a small term-rewriting system.  Rules are tried in a shuffled
// order at every node and iterated to a fixpoint; on pattern-free inputs the
// fixpoint is a flat alternating sum whose atoms are read off directly.

bool is_fin(const TypeExpr& e) { return e.kind == TypeExpr::Kind::Fin; }
bool is_ord(const TypeExpr& e) { return e.kind == TypeExpr::Kind::Ord; }
bool is_rev_ord(const TypeExpr& e) {
    return e.kind == TypeExpr::Kind::Rev && is_ord(e.children[0]);
}

// Each rule returns true and replaces e in place when it fires at the root.
using Rule = bool (*)(TypeExpr&);

// Replacing a node by one of its own descendants must go through a temporary,
// otherwise the assignment frees the source mid-copy.
void replace_with(TypeExpr& e, TypeExpr& descendant) {
    TypeExpr tmp = std::move(descendant);
    e = std::move(tmp);
}

bool rw_rev_rev(TypeExpr& e) {
    if (e.kind != TypeExpr::Kind::Rev || e.children[0].kind != TypeExpr::Kind::Rev) return false;
    replace_with(e, e.children[0].children[0]);
    return true;
}

bool rw_rev_fin(TypeExpr& e) {
    if (e.kind != TypeExpr::Kind::Rev || !is_fin(e.children[0])) return false;
    replace_with(e, e.children[0]);
    return true;
}

bool rw_rev_sum(TypeExpr& e) {
    if (e.kind != TypeExpr::Kind::Rev || e.children[0].kind != TypeExpr::Kind::Sum) return false;
    std::vector<TypeExpr> parts;
    const auto& cs = e.children[0].children;
    for (auto it = cs.rbegin(); it != cs.rend(); ++it) parts.push_back(t_rev(*it));
    e = t_sum(std::move(parts));
    return true;
}

bool rw_rev_prod(TypeExpr& e) {
    if (e.kind != TypeExpr::Kind::Rev || e.children[0].kind != TypeExpr::Kind::Prod) return false;
    e = t_prod(t_rev(e.children[0].children[0]), t_rev(e.children[0].children[1]));
    return true;
}

bool rw_prod_empty(TypeExpr& e) {
    if (e.kind != TypeExpr::Kind::Prod) return false;
    auto zerop = [](const TypeExpr& x) { return is_fin(x) && x.fin_value == 0; };
    if (!zerop(e.children[0]) && !zerop(e.children[1])) return false;
    e = t_fin(0);
    return true;
}

bool rw_prod_fin_right(TypeExpr& e) {
    if (e.kind != TypeExpr::Kind::Prod || !is_fin(e.children[1])) return false;
    Nat k = e.children[1].fin_value;
    if (k == 0) return false;  // rw_prod_empty owns that case
    if (k == 1) {
        replace_with(e, e.children[0]);
        return true;
    }
    std::vector<TypeExpr> copies;
    for (Nat i = 0; i < k; ++i) copies.push_back(e.children[0]);
    e = t_sum(std::move(copies));
    return true;
}

bool rw_prod_sum_right(TypeExpr& e) {
    if (e.kind != TypeExpr::Kind::Prod || e.children[1].kind != TypeExpr::Kind::Sum) return false;
    std::vector<TypeExpr> parts;
    for (const TypeExpr& p : e.children[1].children) parts.push_back(t_prod(e.children[0], p));
    e = t_sum(std::move(parts));
    return true;
}

bool rw_prod_ordinals(TypeExpr& e) {
    if (e.kind != TypeExpr::Kind::Prod) return false;
    const TypeExpr& a = e.children[0];
    const TypeExpr& b = e.children[1];
    auto as_ord = [](const TypeExpr& x) -> std::optional<Ordinal> {
        if (is_ord(x)) return x.ord_value;
        if (is_fin(x) && x.fin_value > 0) return nat(x.fin_value);
        return std::nullopt;
    };
    if (is_ord(b)) {
        if (auto va = as_ord(a)) {
            e = t_ord(mul(*va, b.ord_value));
            return true;
        }
    }
    if (is_rev_ord(b)) {
        if (is_rev_ord(a)) {
            e = t_rev(t_ord(mul(a.children[0].ord_value, b.children[0].ord_value)));
            return true;
        }
        if (is_fin(a) && a.fin_value > 0) {
            e = t_rev(t_ord(mul(nat(a.fin_value), b.children[0].ord_value)));
            return true;
        }
    }
    return false;
}

bool rw_sum_structure(TypeExpr& e) {
    if (e.kind != TypeExpr::Kind::Sum) return false;
    // Decide applicability before moving anything out of the tree.
    bool applies = std::any_of(e.children.begin(), e.children.end(), [](const TypeExpr& c) {
        return c.kind == TypeExpr::Kind::Sum || (is_fin(c) && c.fin_value == 0);
    });
    if (!applies) return false;
    std::vector<TypeExpr> parts;
    for (TypeExpr& c : e.children) {
        if (c.kind == TypeExpr::Kind::Sum) {
            for (TypeExpr& g : c.children) parts.push_back(std::move(g));
        } else if (is_fin(c) && c.fin_value == 0) {
            continue;
        } else {
            parts.push_back(std::move(c));
        }
    }
    if (parts.empty()) e = t_fin(0);
    else if (parts.size() == 1) e = std::move(parts[0]);
    else e = t_sum(std::move(parts));
    return true;
}

bool rw_sum_merge(TypeExpr& e) {
    if (e.kind != TypeExpr::Kind::Sum) return false;
    auto& cs = e.children;
    for (size_t i = 0; i + 1 < cs.size(); ++i) {
        const TypeExpr& x = cs[i];
        const TypeExpr& y = cs[i + 1];
        std::optional<TypeExpr> merged;
        if (is_fin(x) && is_fin(y)) merged = t_fin(x.fin_value + y.fin_value);
        else if (is_fin(x) && is_ord(y)) merged = t_ord(add(nat(x.fin_value), y.ord_value));
        else if (is_ord(x) && is_fin(y)) merged = t_ord(add(x.ord_value, nat(y.fin_value)));
        else if (is_ord(x) && is_ord(y)) merged = t_ord(add(x.ord_value, y.ord_value));
        else if (is_rev_ord(x) && is_rev_ord(y))
            merged = t_rev(t_ord(add(y.children[0].ord_value, x.children[0].ord_value)));
        else if (is_fin(x) && is_rev_ord(y))
            merged = t_rev(t_ord(add(y.children[0].ord_value, nat(x.fin_value))));
        else if (is_rev_ord(x) && is_fin(y))
            merged = t_rev(t_ord(add(nat(y.fin_value), x.children[0].ord_value)));
        if (merged) {
            cs[i] = std::move(*merged);
            cs.erase(cs.begin() + static_cast<long>(i) + 1);
            if (cs.size() == 1) replace_with(e, cs[0]);
            return true;
        }
    }
    return false;
}

bool rewrite_pass(TypeExpr& e, const std::vector<Rule>& rules) {
    bool changed = false;
    for (TypeExpr& c : e.children) changed = rewrite_pass(c, rules) || changed;
    for (Rule r : rules)
        while (r(e)) changed = true;
    return changed;
}

TypeExpr rewrite_fixpoint(TypeExpr e, unsigned seed) {
    std::vector<Rule> rules = {rw_rev_rev,        rw_rev_fin,    rw_rev_sum,
                               rw_rev_prod,       rw_prod_empty, rw_prod_fin_right,
                               rw_prod_sum_right, rw_prod_ordinals, rw_sum_structure,
                               rw_sum_merge};
    std::mt19937 rng(seed);
    for (int iter = 0; iter < 400; ++iter) {
        std::shuffle(rules.begin(), rules.end(), rng);
        if (!rewrite_pass(e, rules)) return e;
    }
    FAIL("rewriting did not reach a fixpoint");
    return e;
}

// Reads a fully reduced term as form entries.  Returns false if some piece is
// not one of the three atom shapes (which happens exactly on flagged inputs).
bool read_entries(const TypeExpr& e, std::vector<FormEntry>& out) {
    if (is_fin(e)) {
        if (e.fin_value > 0) out.push_back(FormEntry{nat(e.fin_value), false});
        return true;
    }
    if (is_ord(e)) {
        out.push_back(FormEntry{e.ord_value, false});
        return true;
    }
    if (is_rev_ord(e)) {
        out.push_back(FormEntry{e.children[0].ord_value, true});
        return true;
    }
    if (e.kind == TypeExpr::Kind::Sum) {
        for (const TypeExpr& c : e.children)
            if (!read_entries(c, out)) return false;
        return true;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Random expression generator (depth-bounded, small ordinal atoms).

Ordinal random_ordinal(std::mt19937& rng) {
    std::uniform_int_distribution<int> exp_hi(1, 2);
    std::uniform_int_distribution<int> coeff(1, 3);
    std::uniform_int_distribution<int> pick(0, 3);
    Ordinal o = omega_term(nat(static_cast<unsigned long>(exp_hi(rng))),
                           Nat(coeff(rng)));
    int extra = pick(rng);
    if (extra == 1) o = add(o, omega_term(nat(1UL), Nat(coeff(rng))));
    if (extra == 2) o = add(o, nat(static_cast<unsigned long>(coeff(rng))));
    return o;
}

TypeExpr random_type(std::mt19937& rng, int depth, bool allow_eta) {
    std::uniform_int_distribution<int> leaf(0, allow_eta ? 10 : 9);
    std::uniform_int_distribution<int> node(0, 5);
    std::uniform_int_distribution<int> fin(0, 3);
    int choice = depth == 0 ? leaf(rng) % 4 : node(rng);
    switch (choice) {
        case 0: return t_fin(Nat(fin(rng)));
        case 1: return t_ord(random_ordinal(rng));
        case 2: return t_rev(random_type(rng, depth == 0 ? 0 : depth - 1, allow_eta));
        case 3: {
            if (depth == 0) return leaf(rng) == 10 ? t_eta() : t_ord(omega());
            std::uniform_int_distribution<int> width(2, 3);
            std::vector<TypeExpr> parts;
            int w = width(rng);
            for (int i = 0; i < w; ++i) parts.push_back(random_type(rng, depth - 1, allow_eta));
            return t_sum(std::move(parts));
        }
        case 4:
            return t_prod(random_type(rng, depth - 1, allow_eta),
                          random_type(rng, depth - 1, allow_eta));
        default:
            return allow_eta && leaf(rng) == 10 ? t_eta() : t_ord(random_ordinal(rng));
    }
}

}  // namespace

TEST_CASE("parsing and printing of type expressions") {
    CHECK(to_string(T("w")) == "w");
    CHECK(to_string(T("zeta")) == "w~ + w");
    CHECK(to_string(T("eta")) == "eta");
    CHECK(to_string(T("w^(2)")) == "w^(2)");
    CHECK(to_string(T("(w~ + w)*w")) == "(w~ + w)*w");
    CHECK(to_string(T("w*w~")) == "w*w~");
    CHECK(to_string(T("3 + w~")) == "3 + w~");
    CHECK(to_string(T("w~~")) == "w~~");
    CHECK(to_string(T("(w + 2)~")) == "(w + 2)~");
    CHECK(T("zeta") == t_sum({t_rev(t_ord(omega())), t_ord(omega())}));
    CHECK(T("w^(w)") == t_ord(omega_pow(omega())));
    CHECK(T("w ^ ( w + 1 )") == t_ord(omega_pow(O("w + 1"))));
    CHECK(T("0") == t_fin(0));
    CHECK(T("w*2") == t_prod(t_ord(omega()), t_fin(2)));

    CHECK_THROWS_AS(T(""), ParseError);
    CHECK_THROWS_AS(T("w^2"), ParseError);
    CHECK_THROWS_AS(T("q"), ParseError);
    CHECK_THROWS_AS(T("w +"), ParseError);
    CHECK_THROWS_AS(T("(w"), ParseError);
    CHECK_THROWS_AS(T("w)"), ParseError);
    CHECK_THROWS_AS(T("etaw"), ParseError);
}

TEST_CASE("entry pushing follows the absorption table") {
    FiniteSumForm f;
    SUBCASE("finite entries accumulate") {
        push_entry(f, fwd("2"));
        push_entry(f, fwd("3"));
        CHECK(f == form_of({fwd("5")}));
    }
    SUBCASE("finite then ascending ordinal is absorbed forwards") {
        push_entry(f, fwd("4"));
        push_entry(f, fwd("w"));
        CHECK(f == form_of({fwd("w")}));
    }
    SUBCASE("finite then descending ordinal joins it on the far side") {
        push_entry(f, fwd("3"));
        push_entry(f, rev("w"));
        CHECK(f == form_of({rev("w + 3")}));
    }
    SUBCASE("ascending ordinal then finite keeps the tail") {
        push_entry(f, fwd("w"));
        push_entry(f, fwd("2"));
        CHECK(f == form_of({fwd("w + 2")}));
    }
    SUBCASE("descending ordinal absorbs a following finite") {
        push_entry(f, rev("w"));
        push_entry(f, fwd("5"));
        CHECK(f == form_of({rev("w")}));
    }
    SUBCASE("same direction merges, ascending") {
        push_entry(f, fwd("w"));
        push_entry(f, fwd("w"));
        CHECK(f == form_of({fwd("w*2")}));
    }
    SUBCASE("same direction merges, descending, in flipped order") {
        push_entry(f, rev("w"));
        push_entry(f, rev("w^(2)"));
        CHECK(f == form_of({rev("w^(2) + w")}));
    }
    SUBCASE("opposite infinite directions stack") {
        push_entry(f, rev("w"));
        push_entry(f, fwd("w"));
        CHECK(f == form_of({rev("w"), fwd("w")}));
    }
    SUBCASE("zero entries vanish") {
        push_entry(f, fwd("0"));
        CHECK(f.entries.empty());
    }
}

TEST_CASE("form reversal is an involution and flips directions") {
    CHECK(reversed(form_of({rev("w"), fwd("w")})) == form_of({rev("w"), fwd("w")}));
    CHECK(reversed(form_of({fwd("w"), fwd("3")})) == form_of({rev("w + 3")}));
    CHECK(reversed(form_of({rev("w + 3")})) == form_of({fwd("w + 3")}));

    std::mt19937 rng(2024);
    for (int i = 0; i < 60; ++i) {
        FiniteSumForm f;
        std::uniform_int_distribution<int> len(0, 4);
        std::uniform_int_distribution<int> flip(0, 1);
        int n = len(rng);
        for (int j = 0; j < n; ++j)
            push_entry(f, FormEntry{random_ordinal(rng), flip(rng) == 1});
        CAPTURE(to_string(f));
        CHECK(reversed(reversed(f)) == f);
    }
}

TEST_CASE("frozen normal forms") {
    auto entries = [](const std::string& s) { return *normalize(T(s)).form; };

    CHECK(entries("zeta") == form_of({rev("w"), fwd("w")}));
    CHECK(entries("zeta*2") == form_of({rev("w"), fwd("w"), rev("w"), fwd("w")}));
    CHECK(entries("2*w") == form_of({fwd("w")}));
    CHECK(entries("w*2") == form_of({fwd("w*2")}));
    CHECK(entries("w^(2)*3 + w + 5") == form_of({fwd("w^(2)*3 + w + 5")}));
    CHECK(entries("w + w~") == form_of({fwd("w"), rev("w")}));
    CHECK(entries("w~ + 5") == form_of({rev("w")}));
    CHECK(entries("3 + w~") == form_of({rev("w + 3")}));
    CHECK(entries("(w + 2)*w") == form_of({fwd("w^(2)")}));
    CHECK(entries("(w + 2)~") == form_of({rev("w + 2")}));
    CHECK(entries("w~*w~") == form_of({rev("w^(2)")}));
    CHECK(entries("(w~ + 3)*w~") == form_of({rev("w^(2)")}));
    CHECK(entries("3*w~") == form_of({rev("w")}));
    CHECK(entries("zeta~") == form_of({rev("w"), fwd("w")}));
    CHECK(entries("(w + w~)~") == form_of({fwd("w"), rev("w")}));
    CHECK(entries("0") == form_of({}));
    CHECK(entries("0*w") == form_of({}));
    CHECK(entries("w*0") == form_of({}));
    CHECK(entries("w^(2) + w~ + w + 1") ==
          form_of({fwd("w^(2)"), rev("w"), fwd("w + 1")}));
    CHECK(normalize(T("0")).is_empty_order());
    CHECK_FALSE(normalize(T("1")).is_empty_order());
}

TEST_CASE("frozen pattern flags") {
    auto rep = [](const std::string& s) { return normalize(T(s)); };

    SUBCASE("eta raises every flag") {
        NormalReport r = rep("eta");
        CHECK(r.embeds_eta);
        CHECK(r.embeds_omega_omegastar);
        CHECK(r.embeds_omegastar_omega);
        CHECK(!r.form);
        CHECK(r.embeds_omega);
        CHECK(r.embeds_omegastar);
    }
    SUBCASE("w*w~ is the ascending-blocks-descending pattern") {
        NormalReport r = rep("w*w~");
        CHECK(r.embeds_omega_omegastar);
        CHECK_FALSE(r.embeds_omegastar_omega);
        CHECK_FALSE(r.embeds_eta);
        CHECK(!r.form);
        bool mentioned = false;
        for (const std::string& line : r.trace)
            if (line.find("embeds w w~") != std::string::npos) mentioned = true;
        CHECK(mentioned);
    }
    SUBCASE("zeta*w embeds descending blocks ascending") {
        NormalReport r = rep("zeta*w");
        CHECK(r.embeds_omegastar_omega);
        CHECK_FALSE(r.embeds_omega_omegastar);
        bool mentioned = false;
        for (const std::string& line : r.trace)
            if (line.find("embeds w~ w") != std::string::npos) mentioned = true;
        CHECK(mentioned);
    }
    SUBCASE("reversal swaps the two scattered patterns") {
        NormalReport r = rep("(w*w~)~");
        CHECK(r.embeds_omegastar_omega);
        CHECK_FALSE(r.embeds_omega_omegastar);
        NormalReport s = rep("(zeta*w)~");
        CHECK(s.embeds_omega_omegastar);
        CHECK_FALSE(s.embeds_omegastar_omega);
    }
    SUBCASE("flags spread through sums and products") {
        CHECK(rep("w + w*w~ + 3").embeds_omega_omegastar);
        CHECK(rep("(w*w~)*2").embeds_omega_omegastar);
        CHECK(rep("zeta*w^(2)").embeds_omegastar_omega);
        CHECK(rep("(w + w~)*w").embeds_omegastar_omega);
        CHECK(rep("w*(w + w~)").embeds_omega_omegastar);
        NormalReport r = rep("(w*w~)*(zeta*w)");
        CHECK(r.embeds_omega_omegastar);
        CHECK(r.embeds_omegastar_omega);
        CHECK_FALSE(r.embeds_eta);
    }
    SUBCASE("an empty factor silences everything") {
        NormalReport r = rep("eta*0");
        CHECK_FALSE(r.flagged());
        CHECK(r.is_empty_order());
    }
    SUBCASE("embeds_special agrees with the report") {
        CHECK(embeds_special(Pattern::Eta, T("eta + 1")));
        CHECK(embeds_special(Pattern::OmegaOmegastar, T("w*w~")));
        CHECK(embeds_special(Pattern::OmegastarOmega, T("w~*w")));
        CHECK_FALSE(embeds_special(Pattern::Eta, T("zeta")));
        CHECK_FALSE(embeds_special(Pattern::OmegaOmegastar, T("zeta")));
        CHECK_FALSE(embeds_special(Pattern::OmegastarOmega, T("zeta")));
    }
}

TEST_CASE("hausdorff rank of forms") {
    auto fm = [](const std::string& s) { return *normalize(T(s)).form; };
    CHECK(hausdorff_rank(fm("0")) == zero());
    CHECK(hausdorff_rank(fm("7")) == zero());
    CHECK(hausdorff_rank(fm("w")) == nat(1UL));
    CHECK(hausdorff_rank(fm("zeta")) == nat(1UL));
    CHECK(hausdorff_rank(fm("w^(2) + w~")) == nat(2UL));
    CHECK(hausdorff_rank(fm("w~ + 5")) == nat(1UL));
    CHECK(hausdorff_rank(fm("w^(w)")) == omega());
}

TEST_CASE("recognition of the two near-omega shapes") {
    auto fm = [](const std::string& s) { return *normalize(T(s)).form; };

    auto a = match_omega_plus_k(fm("w"));
    REQUIRE(a.has_value());
    CHECK(a->first == 0);
    CHECK(a->second == Side::Left);

    auto b = match_omega_plus_k(fm("w + 3"));
    REQUIRE(b.has_value());
    CHECK(b->first == 3);
    CHECK(b->second == Side::Left);

    auto c = match_omega_plus_k(fm("3 + w~"));
    REQUIRE(c.has_value());
    CHECK(c->first == 3);
    CHECK(c->second == Side::Right);

    auto d = match_omega_plus_k(fm("w~"));
    REQUIRE(d.has_value());
    CHECK(d->first == 0);
    CHECK(d->second == Side::Right);

    CHECK_FALSE(match_omega_plus_k(fm("w*2")).has_value());
    CHECK_FALSE(match_omega_plus_k(fm("w^(2)")).has_value());
    CHECK_FALSE(match_omega_plus_k(fm("w + w~")).has_value());
    CHECK_FALSE(match_omega_plus_k(fm("zeta")).has_value());
    CHECK_FALSE(match_omega_plus_k(fm("5")).has_value());
    CHECK_FALSE(match_omega_plus_k(fm("w^(2) + 1")).has_value());
}

TEST_CASE("normalizer agrees with both oracles on random expressions") {
    std::mt19937 rng(777);
    int unflagged_seen = 0;
    int flagged_seen = 0;
    for (int i = 0; i < 210; ++i) {
        TypeExpr e = random_type(rng, 3, /*allow_eta=*/i % 5 == 0);
        if (i >= 150) {
            // Plain random trees rarely mix chain directions, so pair them up
            // into products that mostly land on the flagged side.
            TypeExpr other = random_type(rng, 2, false);
            e = i % 2 ? t_prod(std::move(e), t_rev(std::move(other)))
                      : t_prod(t_rev(std::move(other)), std::move(e));
        }
        std::string printed = to_string(e);
        CAPTURE(printed);

        NormalReport rep = normalize(e);

        // Flags and auxiliary chain bits against the structural predicates.
        CHECK(rep.embeds_eta == orc_eta(e));
        CHECK(rep.embeds_omega_omegastar == orc_oo(e));
        CHECK(rep.embeds_omegastar_omega == orc_oso(e));
        CHECK(rep.form.has_value() == !rep.flagged());
        CHECK(rep.embeds_omega == orc_omega(e));
        CHECK(rep.embeds_omegastar == orc_omegastar(e));

        // Printing then reparsing preserves the classification.
        CHECK(same_normal_type(rep, normalize(parse_type(printed))));

        // Reversal duality.
        NormalReport rrep = normalize(t_rev(e));
        CHECK(rrep.embeds_omega_omegastar == rep.embeds_omegastar_omega);
        CHECK(rrep.embeds_omegastar_omega == rep.embeds_omega_omegastar);
        if (rep.form) CHECK(*rrep.form == reversed(*rep.form));

        if (rep.flagged()) {
            ++flagged_seen;
            continue;
        }
        ++unflagged_seen;

        // Rewrite oracle: three shuffles must agree with each other and with
        // the normalizer's form.
        TypeExpr fix = rewrite_fixpoint(e, 1);
        CHECK(rewrite_fixpoint(e, 2) == fix);
        CHECK(rewrite_fixpoint(e, 3) == fix);
        std::vector<FormEntry> got;
        bool atoms = read_entries(fix, got);
        CHECK(atoms);
        if (atoms) CHECK(got == rep.form->entries);
    }
    // The generator must exercise both sides meaningfully.
    CHECK(unflagged_seen >= 40);
    CHECK(flagged_seen >= 30);
}

TEST_CASE("form invariants hold for every produced form") {
    std::mt19937 rng(4242);
    for (int i = 0; i < 120; ++i) {
        TypeExpr e = random_type(rng, 3, false);
        NormalReport rep = normalize(e);
        if (!rep.form) continue;
        const auto& es = rep.form->entries;
        CAPTURE(to_string(*rep.form));
        for (size_t j = 0; j < es.size(); ++j) {
            CHECK(!es[j].value.is_zero());
            if (es[j].value.is_finite()) {
                CHECK_FALSE(es[j].rev);
                // A finite entry only ever sits at the very end, alone or not.
                CHECK(j + 1 == es.size());
            }
            if (j + 1 < es.size() && !es[j].value.is_finite() && !es[j + 1].value.is_finite())
                CHECK(es[j].rev != es[j + 1].rev);
        }
    }
}

TEST_CASE("form printing round-trips through the type parser") {
    std::vector<std::string> inputs = {"zeta", "w^(2) + w~ + w + 1", "w*2", "7",
                                       "0",    "w~ + 5",            "3 + w~"};
    for (const std::string& s : inputs) {
        NormalReport rep = normalize(T(s));
        REQUIRE(rep.form.has_value());
        std::string printed = to_string(*rep.form);
        CAPTURE(printed);
        NormalReport back = normalize(T(printed));
        REQUIRE(back.form.has_value());
        CHECK(*back.form == *rep.form);
    }
}
