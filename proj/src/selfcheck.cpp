#include "ordercalc/selfcheck.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ordercalc/canonise.hpp"
#include "ordercalc/cantorlex.hpp"
#include "ordercalc/classifier.hpp"
#include "ordercalc/colourings.hpp"
#include "ordercalc/errors.hpp"
#include "ordercalc/families.hpp"
#include "ordercalc/ordinal.hpp"
#include "ordercalc/ordertype.hpp"

namespace ordercalc {

namespace {

CheckResult passed(const char* name) { return CheckResult{name, true, ""}; }
CheckResult failed(const char* name, std::string detail) {
    return CheckResult{name, false, std::move(detail)};
}

Ordinal O(const std::string& s) { return parse_ordinal(s); }

// ---------------------------------------------------------------------------
// Classifier golden table
// ---------------------------------------------------------------------------

CheckResult check_trichotomy(const std::vector<CorpusEntry>&) {
    const char* name = "trichotomy-golden-table";
    struct Row {
        const char* expr;
        int cls;
        // class 1: expected k and side
        Nat k;
        Side side;
        // class 2: expected xi and beta
        const char* xi;
        const char* beta;
        // class 3: expected witness
        Witness witness;
    };
    const std::vector<Row> rows = {
        {"w", 1, 0, Side::Left, "", "", Witness::None},
        {"w+3", 1, 3, Side::Left, "", "", Witness::None},
        {"3+w~", 1, 3, Side::Right, "", "", Witness::None},
        {"zeta", 2, 0, Side::Left, "w*2", "w*2", Witness::None},
        {"w*2", 2, 0, Side::Left, "w*2", "w*2", Witness::None},
        {"w^(2)", 2, 0, Side::Left, "w^(2)", "w^(2)", Witness::None},
        {"w~+w^(2)", 2, 0, Side::Left, "w^(2)", "w^(2)+w", Witness::None},
        {"w+w~", 2, 0, Side::Left, "w*2", "w*2", Witness::None},
        {"w^(2)+w~", 2, 0, Side::Left, "w^(2)+w", "w^(2)+w", Witness::None},
        {"w*w~", 3, 0, Side::Left, "", "", Witness::OmegaOmegastar},
        {"zeta*w", 3, 0, Side::Left, "", "", Witness::OmegastarOmega},
        {"eta", 3, 0, Side::Left, "", "", Witness::Eta},
    };
    for (const auto& row : rows) {
        TrichotomyReport r = classify(parse_type(row.expr));
        if (r.class_index != row.cls) {
            return failed(name, std::string(row.expr) + ": class " +
                                    std::to_string(r.class_index) + ", expected " +
                                    std::to_string(row.cls));
        }
        if (row.cls == 1) {
            if (!r.k_and_side || r.k_and_side->first != row.k ||
                r.k_and_side->second != row.side) {
                return failed(name, std::string(row.expr) + ": wrong k/side certificate");
            }
            if (r.witness != Witness::None) {
                return failed(name, std::string(row.expr) + ": unexpected witness");
            }
        } else if (row.cls == 2) {
            if (!r.form || !r.xi_value || !r.beta_value) {
                return failed(name, std::string(row.expr) + ": missing form certificate");
            }
            if (*r.xi_value != O(row.xi) || *r.beta_value != O(row.beta)) {
                return failed(name, std::string(row.expr) + ": xi/beta mismatch, got xi=" +
                                        to_string(*r.xi_value) + " beta=" +
                                        to_string(*r.beta_value));
            }
        } else {
            if (r.witness != row.witness) {
                return failed(name, std::string(row.expr) + ": wrong witness");
            }
            if (r.form) return failed(name, std::string(row.expr) + ": unexpected form");
        }
    }
    return passed(name);
}

// ---------------------------------------------------------------------------
// beta as the best rearrangement, xi below it
// ---------------------------------------------------------------------------

std::vector<Ordinal> form_pieces(const FiniteSumForm& form) {
    std::vector<Ordinal> pieces;
    for (const auto& e : form.entries) {
        for (const auto& part : indecomposable_parts(e.value)) {
            Term t = leading_term(part);
            for (Nat i = 0; i < t.coefficient; ++i) pieces.push_back(omega_pow(t.exponent));
        }
    }
    return pieces;
}

CheckResult check_beta_xi(const std::vector<CorpusEntry>&) {
    const char* name = "beta-xi-rearrangement";
    const std::vector<const char*> exprs = {
        "zeta",           "w+w~",         "w~+w^(2)",        "w^(2)+w~",
        "w*2",            "w*3",          "w+w~+w",          "w^(2)+w~+w",
        "zeta*2",         "w^(3)+w*2+w~", "(w^(2)+w)~+w^(2)"};
    for (const char* expr : exprs) {
        TrichotomyReport r = classify(parse_type(expr));
        if (r.class_index != 2 || !r.form || !r.beta_value || !r.xi_value) {
            return failed(name, std::string(expr) + ": expected a class-2 form");
        }
        std::vector<Ordinal> pieces = form_pieces(*r.form);
        if (pieces.size() > 6) {
            return failed(name, std::string(expr) + ": too many pieces to enumerate");
        }
        std::vector<std::size_t> idx(pieces.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        Ordinal best = zero();
        do {
            Ordinal sum = zero();
            for (std::size_t i : idx) sum = add(sum, pieces[i]);
            best = max(best, sum);
        } while (std::next_permutation(idx.begin(), idx.end()));
        if (*r.beta_value != best) {
            return failed(name, std::string(expr) + ": beta " + to_string(*r.beta_value) +
                                    " but best rearrangement is " + to_string(best));
        }
        if (cmp(*r.xi_value, *r.beta_value) > 0) {
            return failed(name, std::string(expr) + ": xi exceeds beta");
        }
    }
    return passed(name);
}

// ---------------------------------------------------------------------------
// The split-minimum law
// ---------------------------------------------------------------------------

bool min_law_holds(const std::vector<Point>& pts, std::string& detail) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            for (std::size_t k = j + 1; k < pts.size(); ++k) {
                Ordinal lhs = delta(pts[i], pts[k]);
                Ordinal rhs = min(delta(pts[i], pts[j]), delta(pts[j], pts[k]));
                if (lhs != rhs) {
                    detail = "triple (" + to_string(pts[i]) + ", " + to_string(pts[j]) + ", " +
                             to_string(pts[k]) + ")";
                    return false;
                }
            }
        }
    }
    return true;
}

CheckResult check_min_law(const std::vector<CorpusEntry>&) {
    const char* name = "split-min-law";
    Alpha a = make_alpha(omega());
    std::vector<Point> pts;
    for (unsigned mask = 0; mask < 64; ++mask) {
        std::vector<Ordinal> sup;
        for (unsigned b = 0; b < 6; ++b) {
            if (mask & (1u << b)) sup.push_back(nat(b));
        }
        pts.push_back(make_point(a, std::move(sup)));
    }
    std::sort(pts.begin(), pts.end(), point_less);
    std::string detail;
    if (!min_law_holds(pts, detail)) return failed(name, "finite supports: " + detail);

    Alpha a3 = make_alpha(omega_pow(nat(3)));
    const std::vector<std::vector<const char*>> supports = {
        {},
        {"3"},
        {"w"},
        {"w", "w+1"},
        {"w*2"},
        {"w^(2)"},
        {"w^(2)", "w^(2)+w"},
        {"w^(2)*2+5"},
    };
    std::vector<Point> tp;
    for (const auto& sup : supports) {
        std::vector<Ordinal> bits;
        for (const char* s : sup) bits.push_back(O(s));
        tp.push_back(make_point(a3, std::move(bits)));
    }
    std::sort(tp.begin(), tp.end(), point_less);
    if (!min_law_holds(tp, detail)) return failed(name, "transfinite supports: " + detail);
    return passed(name);
}

// ---------------------------------------------------------------------------
// Canonisation laws over the corpus
// ---------------------------------------------------------------------------

CheckResult check_canonisation(const std::vector<CorpusEntry>& corpus) {
    const char* name = "canonisation-laws";
    std::size_t families = 0;
    for (const auto& e : corpus) {
        const auto* f = std::get_if<RepFamily>(&e.doc);
        if (!f) continue;
        ++families;
        RepFamily g = canonise_family(*f);
        if (to_text(canonise_family(g)) != to_text(g)) {
            return failed(name, e.name + ": canonise is not idempotent");
        }
        if (!same_order_type(g, *f)) {
            return failed(name, e.name + ": canonise changed the order type");
        }
        if (g.blocks.size() != f->blocks.size()) {
            return failed(name, e.name + ": canonise changed the block count");
        }
        for (std::size_t i = 0; i < g.blocks.size(); ++i) {
            std::vector<Point> sub = block_sample(g.blocks[i], 8);
            std::vector<Point> orig = block_sample(f->blocks[i], 64);
            for (const auto& p : sub) {
                if (std::find(orig.begin(), orig.end(), p) == orig.end()) {
                    return failed(name, e.name + ": block " + std::to_string(i) +
                                            " decoded a point outside the original, " +
                                            to_string(p));
                }
            }
        }
        if (colour_C(g) != 0) {
            return failed(name, e.name + ": canonised family still carries twins");
        }
    }
    if (families == 0) return failed(name, "corpus holds no block families");
    return passed(name);
}

// ---------------------------------------------------------------------------
// Flip soundness for every colouring
// ---------------------------------------------------------------------------

CheckResult check_flips(const std::vector<CorpusEntry>& corpus) {
    const char* name = "flip-soundness";
    std::map<std::string, std::size_t> applicable;
    std::set<std::string> eligible;
    std::vector<std::string> failures;

    auto attempt = [&](const char* cname, const std::string& fname, const RepFamily& f,
                       const std::function<int(const RepFamily&)>& col,
                       const std::function<RepFamily(const RepFamily&)>& flp) {
        int base = 0;
        try {
            base = col(f);
        } catch (const DomainError&) {
            return;  // colouring does not apply to this family
        }
        ++applicable[cname];
        eligible.insert(fname);
        try {
            RepFamily g = flp(f);
            int after = col(g);
            if (after != 1 - base) {
                failures.push_back(fname + " " + cname + ": colour stayed " +
                                   std::to_string(after));
            } else if (!same_order_type(g, f)) {
                failures.push_back(fname + " " + cname + ": flip changed the order type");
            }
        } catch (const DomainError& ex) {
            failures.push_back(fname + " " + cname + ": " + ex.what());
        }
    };

    GOracle par = oracle_parity();
    for (const auto& e : corpus) {
        if (const auto* d = std::get_if<DyadicCopy>(&e.doc)) {
            ++applicable["tausplit"];
            eligible.insert(e.name);
            try {
                int base = colour_tausplit(*d);
                DyadicCopy fd = flip_tausplit(*d);
                if (colour_tausplit(fd) != 1 - base) {
                    failures.push_back(e.name + " tausplit: colour did not flip");
                } else if (fd.height != d->height || fd.bits != d->bits ||
                           fd.pad0 != d->pad0 || fd.pad1 != d->pad1 ||
                           fd.ambient != d->ambient) {
                    failures.push_back(e.name + " tausplit: flip moved the carrier");
                }
            } catch (const DomainError& ex) {
                failures.push_back(e.name + " tausplit: " + std::string(ex.what()));
            }
            continue;
        }
        const RepFamily& f = std::get<RepFamily>(e.doc);
        bool has_infinite = false;
        bool has_raw = false;
        for (const auto& b : f.blocks) {
            if (!std::holds_alternative<FiniteBlock>(b)) has_infinite = true;
            if (std::holds_alternative<RawSequence>(b) || std::holds_alternative<RawZeta>(b)) {
                has_raw = true;
            }
        }
        if (has_infinite) attempt("C", e.name, f, colour_C, flip_C);
        attempt("zeta", e.name, f, colour_zeta, flip_zeta);
        attempt("mutual", e.name, f, colour_mutual, flip_mutual);
        attempt("zeta-cc", e.name, f, colour_zeta_cc, flip_zeta_cc);
        attempt("triple", e.name, f, colour_triple, flip_triple);
        if (has_raw) {
            attempt(
                "affordable", e.name, f,
                [&par](const RepFamily& x) { return colour_affordable(par, x); },
                flip_affordable);
        }
    }

    if (!failures.empty()) {
        return failed(name, failures.front() + " (" + std::to_string(failures.size()) +
                                " failure(s) total)");
    }
    const std::vector<const char*> all = {"C",        "zeta",   "mutual",    "zeta-cc",
                                          "tausplit", "triple", "affordable"};
    for (const char* c : all) {
        if (applicable[c] == 0) {
            return failed(name, std::string("no corpus family exercises colouring ") + c);
        }
    }
    if (eligible.size() < 20) {
        return failed(name, "only " + std::to_string(eligible.size()) +
                                " flip-eligible corpus families, need 20");
    }
    return passed(name);
}

// ---------------------------------------------------------------------------
// Selector coherence
// ---------------------------------------------------------------------------

bool classes_agree(const SymbolicClass& a, const SymbolicClass& b) {
    return n_map(a) == n_map(b) && class_window(a, 4) == class_window(b, 4);
}

CheckResult check_selectors(const std::vector<CorpusEntry>& corpus) {
    const char* name = "selector-coherence";
    std::size_t pairs = 0;
    std::size_t classes = 0;
    for (const auto& e : corpus) {
        const auto* f = std::get_if<RepFamily>(&e.doc);
        if (!f) continue;
        bool applies = true;
        try {
            prepare_two_classes(*f);
        } catch (const DomainError&) {
            applies = false;
        }
        if (applies) {
            ++pairs;
            for (std::size_t k0 = 0; k0 <= 5; ++k0) {
                for (std::size_t k1 = 0; k1 <= 5; ++k1) {
                    if (!mutual_coherent(*f, k0, k1)) {
                        return failed(name, e.name + ": mutual coherence fails at k0=" +
                                                std::to_string(k0) + " k1=" +
                                                std::to_string(k1));
                    }
                }
            }
        }
        RepFamily g = canonise_family(*f);
        for (const auto& b : g.blocks) {
            const auto* c = std::get_if<SymbolicClass>(&b);
            if (!c || c->kind == ClassKind::Zeta) continue;
            ++classes;
            IndexSelection ident{0, 1};
            if (!classes_agree(n_realize(*c, ident), *c)) {
                return failed(name, e.name + ": identity selection moved a class");
            }
            SymbolicClass sub = n_realize(*c, IndexSelection{1, 2});
            if (!classes_agree(n_realize(sub, ident), sub)) {
                return failed(name, e.name + ": re-selecting a subcopy moved it");
            }
        }
    }
    if (pairs < 2) return failed(name, "fewer than two corpus families carry a class pair");
    if (classes == 0) return failed(name, "corpus holds no one-directional classes");
    return passed(name);
}

// ---------------------------------------------------------------------------
// Homogeneity transfer
// ---------------------------------------------------------------------------

CheckResult check_transfer(const std::vector<CorpusEntry>& corpus) {
    const char* name = "homogeneity-transfer";
    const std::vector<IndexSelection> sels = {{0, 1}, {1, 1}, {2, 1}, {3, 1},
                                              {0, 2}, {1, 2}, {2, 3}};
    std::vector<GOracle> oracles = {oracle_const0(), oracle_const1(), oracle_parity()};
    std::size_t classes = 0;
    std::size_t two_piece = 0;
    for (const auto& e : corpus) {
        const auto* f = std::get_if<RepFamily>(&e.doc);
        if (!f) continue;
        RepFamily g = canonise_family(*f);
        for (const auto& b : g.blocks) {
            const auto* c = std::get_if<SymbolicClass>(&b);
            if (!c || c->kind == ClassKind::Zeta) continue;
            ++classes;
            for (const auto& sel : sels) {
                SymbolicOrdinalSet lhs = n_map(n_realize(*c, sel));
                SymbolicOrdinalSet rhs = select_symbolic(n_map(*c), sel);
                if (lhs != rhs) {
                    return failed(name, e.name + ": level sets diverge at start=" +
                                            std::to_string(sel.start) + " step=" +
                                            std::to_string(sel.step));
                }
                for (const auto& F : oracles) {
                    if (kappa_G(F, n_realize(*c, sel)) != F(rhs)) {
                        return failed(name, e.name + ": oracle colour diverges");
                    }
                }
            }
        }

        // Two-piece families: the affordable fallback and realization both
        // factor through the shifted level set.
        std::vector<const SymbolicClass*> piece_blocks;
        bool only_classes = true;
        for (const auto& b : g.blocks) {
            const auto* c = std::get_if<SymbolicClass>(&b);
            if (!c || c->kind == ClassKind::Zeta) {
                only_classes = false;
                break;
            }
            piece_blocks.push_back(c);
        }
        if (!only_classes || piece_blocks.size() != 2) continue;
        ++two_piece;
        for (const auto& F : oracles) {
            if (colour_affordable(F, g) != F(n_prime(g))) {
                return failed(name, e.name + ": affordable colour leaves the level set");
            }
        }
        SymbolicOrdinalSet base = n_prime(g);
        const std::vector<std::pair<IndexSelection, IndexSelection>> sel_pairs = {
            {{0, 1}, {1, 1}}, {{1, 2}, {0, 2}}, {{2, 1}, {2, 3}}};
        for (const auto& [s0, s1] : sel_pairs) {
            RepFamily h = realize_family(g, {s0, s1});
            SymbolicOrdinalSet got = n_prime(h);
            SymbolicOrdinalSet expect;
            const std::vector<IndexSelection> chosen = {s0, s1};
            for (std::size_t i = 0; i < 2; ++i) {
                const auto& off = std::get<ShiftedSchedule>(base.components[i]).offset;
                SymbolicOrdinalSet sel_levels =
                    select_symbolic(n_map(*piece_blocks[i]), chosen[i]);
                expect.components.push_back(ShiftedSchedule{
                    off, std::get<ShiftedSchedule>(sel_levels.components[0]).sched});
            }
            if (got != expect) {
                return failed(name, e.name + ": realized level sets lose their shifts");
            }
        }
    }
    if (classes == 0) return failed(name, "corpus holds no one-directional classes");
    if (two_piece == 0) return failed(name, "corpus holds no two-piece class family");
    return passed(name);
}

// ---------------------------------------------------------------------------
// Position-code bijection
// ---------------------------------------------------------------------------

CheckResult check_bijection(const std::vector<CorpusEntry>&) {
    const char* name = "position-code-bijection";
    const std::vector<Ordinal> lengths = {omega(), mul(omega(), nat(2)), omega_pow(nat(2)),
                                          add(omega_pow(nat(2)), omega())};
    for (const auto& len : lengths) {
        Alpha a = make_alpha(len);
        for (unsigned n = 0; n < 10000; ++n) {
            Nat v(n);
            Ordinal pos = b_decode(a, v);
            if (b_encode(a, pos) != v) {
                return failed(name, "alpha " + to_string(len) + ": code " + std::to_string(n) +
                                        " does not round-trip");
            }
        }
    }
    return passed(name);
}

// ---------------------------------------------------------------------------
// CNF algebra laws
// ---------------------------------------------------------------------------

Ordinal best_interleaving(const std::vector<Ordinal>& as, const std::vector<Ordinal>& bs,
                          std::size_t i, std::size_t j) {
    if (i == as.size() && j == bs.size()) return zero();
    if (i == as.size()) {
        Ordinal rest = best_interleaving(as, bs, i, j + 1);
        return add(bs[j], rest);
    }
    if (j == bs.size()) {
        Ordinal rest = best_interleaving(as, bs, i + 1, j);
        return add(as[i], rest);
    }
    Ordinal take_a = add(as[i], best_interleaving(as, bs, i + 1, j));
    Ordinal take_b = add(bs[j], best_interleaving(as, bs, i, j + 1));
    return max(take_a, take_b);
}

CheckResult check_cnf_algebra(const std::vector<CorpusEntry>&) {
    const char* name = "cnf-algebra-laws";
    std::mt19937 rng(58231u);
    auto rand_ordinal = [&rng]() {
        std::size_t terms = rng() % 4;
        std::set<unsigned> exps;
        while (exps.size() < terms) exps.insert(rng() % 6);
        Ordinal o = zero();
        for (auto it = exps.rbegin(); it != exps.rend(); ++it) {
            o = add(o, omega_term(nat(*it), Nat(1 + rng() % 4)));
        }
        return o;
    };
    for (int inst = 0; inst < 200; ++inst) {
        Ordinal a = rand_ordinal();
        Ordinal b = rand_ordinal();
        Ordinal c = rand_ordinal();
        std::string ctx = "instance " + std::to_string(inst) + " (" + to_string(a) + ", " +
                          to_string(b) + ", " + to_string(c) + ")";
        if (add(add(a, b), c) != add(a, add(b, c))) {
            return failed(name, ctx + ": sum is not associative");
        }
        if (natural_sum(a, b) != natural_sum(b, a)) {
            return failed(name, ctx + ": natural sum is not commutative");
        }
        if (natural_sum(natural_sum(a, b), c) != natural_sum(a, natural_sum(b, c))) {
            return failed(name, ctx + ": natural sum is not associative");
        }
        if (mul(a, add(b, c)) != add(mul(a, b), mul(a, c))) {
            return failed(name, ctx + ": product does not distribute");
        }
        std::vector<Ordinal> as = a.is_zero() ? std::vector<Ordinal>{} : indecomposable_parts(a);
        std::vector<Ordinal> bs = b.is_zero() ? std::vector<Ordinal>{} : indecomposable_parts(b);
        if (natural_sum(a, b) != best_interleaving(as, bs, 0, 0)) {
            return failed(name, ctx + ": natural sum is not the best interleaving");
        }
    }
    return passed(name);
}

// ---------------------------------------------------------------------------
// Leading-component equivalence
// ---------------------------------------------------------------------------

CheckResult check_leading(const std::vector<CorpusEntry>&) {
    const char* name = "leading-component-identity";
    struct Spec {
        Ordinal lead;
        Ordinal tail;
        Ordinal gamma;
    };
    const std::vector<std::pair<const char*, const char*>> raw = {
        {"w^(2)", "w"},        {"w^(2)", "w*2"},         {"w^(2)*2", "w"},
        {"w^(3)", "w^(2)+w"},  {"w^(3)", "w"},           {"w^(4)*2", "w^(3)+w^(2)"},
        {"w^(2)", "w+1"},      {"w^(2)*2", "w*3+2"},     {"w^(3)*3", "w^(2)*2+w"},
        {"w^(4)", "w+5"}};
    std::vector<Spec> specs;
    for (const auto& [l, t] : raw) {
        Spec s{O(l), O(t), add(O(l), O(t))};
        specs.push_back(std::move(s));
    }
    for (std::size_t i = 0; i < specs.size(); ++i) {
        for (std::size_t j = 0; j < specs.size(); ++j) {
            TypeExpr tau = t_sum({t_rev(t_ord(specs[i].tail)), t_ord(specs[j].lead)});
            TrichotomyReport r = classify(tau);
            if (r.class_index != 2 || !r.beta_value || !r.xi_value) {
                return failed(name, "pair " + std::to_string(i) + "," + std::to_string(j) +
                                        ": expected a class-2 report");
            }
            bool identity =
                *r.beta_value == specs[i].gamma && *r.xi_value == specs[i].lead;
            if (same_leading_component(specs[i].gamma, specs[j].gamma) != identity) {
                return failed(name, "gammas " + to_string(specs[i].gamma) + " and " +
                                        to_string(specs[j].gamma) +
                                        ": equivalence disagrees with the report");
            }
        }
    }
    return passed(name);
}

}  // namespace

std::vector<CorpusEntry> load_corpus(const std::string& dir) {
    namespace fs = std::filesystem;
    std::vector<fs::path> paths;
    if (!fs::is_directory(dir)) {
        throw DomainError("corpus directory not found: " + dir);
    }
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".fam") {
            paths.push_back(entry.path());
        }
    }
    std::sort(paths.begin(), paths.end());
    std::vector<CorpusEntry> out;
    for (const auto& p : paths) {
        out.push_back(CorpusEntry{p.filename().string(), load_family_file(p.string())});
    }
    return out;
}

std::string corpus_dir_from_env() {
    const char* env = std::getenv("ORDERTYPE_CORPUS");
    return env ? std::string(env) : std::string("corpus");
}

std::vector<CheckResult> run_selfchecks(const std::string& corpus_dir) {
    std::vector<CorpusEntry> corpus;
    try {
        corpus = load_corpus(corpus_dir);
    } catch (const std::exception& ex) {
        std::vector<CheckResult> out;
        out.push_back(CheckResult{"corpus-load", false, ex.what()});
        return out;
    }
    using CheckFn = CheckResult (*)(const std::vector<CorpusEntry>&);
    const std::vector<CheckFn> checks = {
        check_trichotomy, check_beta_xi,   check_min_law,  check_canonisation,
        check_flips,      check_selectors, check_transfer, check_bijection,
        check_cnf_algebra, check_leading,
    };
    std::vector<CheckResult> out;
    for (CheckFn fn : checks) {
        try {
            out.push_back(fn(corpus));
        } catch (const std::exception& ex) {
            out.push_back(CheckResult{"unexpected-error", false, ex.what()});
        }
    }
    return out;
}

}  // namespace ordercalc
