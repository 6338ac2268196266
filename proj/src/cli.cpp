#include "ordercalc/cli.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ordercalc/canonise.hpp"
#include "ordercalc/classifier.hpp"
#include "ordercalc/colourings.hpp"
#include "ordercalc/diagram.hpp"
#include "ordercalc/errors.hpp"
#include "ordercalc/family_io.hpp"
#include "ordercalc/ordertype.hpp"
#include "ordercalc/selfcheck.hpp"

namespace ordercalc {

namespace {

const char* kUsage =
    "usage: ordercalc VERB ...\n"
    "\n"
    "  classify EXPR                      trichotomy report for an order type\n"
    "  beta EXPR                          largest rearrangement ordinal\n"
    "  xi EXPR                            in-order ordinal sum\n"
    "  colour FILE --colouring NAME       colour of a family description\n"
    "         [--oracle const0|const1|parity]\n"
    "  flip FILE --colouring NAME         same order type, opposite colour\n"
    "         [--target 0|1]\n"
    "  canonise FILE                      canonical form of a block family\n"
    "  diagram FILE [--format ascii|dot]  splitting-structure picture\n"
    "  demo [--corpus DIR]                run the bundled self-checks\n"
    "\n"
    "Colourings: C, zeta, mutual, zeta-cc, tausplit, triple, affordable.\n"
    "Order type grammar: NAT, w, w^(ORD), eta, zeta, +, * (colexicographic),\n"
    "~ (reverse), parentheses; e.g. \"w^(2)+w~\" or \"(w+1)*w\".\n";

struct Args {
    std::string verb;
    std::vector<std::string> positional;
    std::map<std::string, std::string> options;
};

Args parse_args(const std::vector<std::string>& argv) {
    Args a;
    if (argv.empty()) throw ParseError("missing verb, try 'ordercalc help'");
    a.verb = argv[0];
    for (std::size_t i = 1; i < argv.size(); ++i) {
        const std::string& s = argv[i];
        if (s.rfind("--", 0) == 0) {
            if (i + 1 >= argv.size()) throw ParseError("option " + s + " needs a value");
            a.options[s.substr(2)] = argv[++i];
        } else {
            a.positional.push_back(s);
        }
    }
    return a;
}

const std::string& positional_one(const Args& a, const char* what) {
    if (a.positional.size() != 1) {
        throw ParseError(std::string("expected exactly one ") + what);
    }
    return a.positional[0];
}

std::string option_or(const Args& a, const std::string& key, const std::string& fallback) {
    auto it = a.options.find(key);
    return it == a.options.end() ? fallback : it->second;
}

void reject_unknown_options(const Args& a, std::initializer_list<const char*> known) {
    for (const auto& [key, value] : a.options) {
        bool ok = false;
        for (const char* k : known) {
            if (key == k) ok = true;
        }
        if (!ok) throw ParseError("unknown option --" + key);
    }
}

GOracle oracle_by_name(const std::string& name) {
    if (name == "const0") return oracle_const0();
    if (name == "const1") return oracle_const1();
    if (name == "parity") return oracle_parity();
    throw ParseError("unknown oracle: " + name);
}

struct Colouring {
    std::function<int(const FamilyDoc&)> colour;
    std::function<FamilyDoc(const FamilyDoc&)> flip;
};

const RepFamily& family_of(const FamilyDoc& doc) {
    if (const auto* f = std::get_if<RepFamily>(&doc)) return *f;
    throw DomainError("this colouring needs a block family, not a dyadic tree");
}

const DyadicCopy& dyadic_of(const FamilyDoc& doc) {
    if (const auto* d = std::get_if<DyadicCopy>(&doc)) return *d;
    throw DomainError("the tausplit colouring needs a dyadic tree description");
}

Colouring colouring_by_name(const std::string& name, const GOracle& oracle) {
    auto wrap = [](int (*col)(const RepFamily&), RepFamily (*flp)(const RepFamily&)) {
        return Colouring{
            [col](const FamilyDoc& d) { return col(family_of(d)); },
            [flp](const FamilyDoc& d) { return FamilyDoc(flp(family_of(d))); }};
    };
    if (name == "C") return wrap(colour_C, flip_C);
    if (name == "zeta") return wrap(colour_zeta, flip_zeta);
    if (name == "mutual") return wrap(colour_mutual, flip_mutual);
    if (name == "zeta-cc") return wrap(colour_zeta_cc, flip_zeta_cc);
    if (name == "triple") return wrap(colour_triple, flip_triple);
    if (name == "tausplit") {
        return Colouring{
            [](const FamilyDoc& d) { return colour_tausplit(dyadic_of(d)); },
            [](const FamilyDoc& d) { return FamilyDoc(flip_tausplit(dyadic_of(d))); }};
    }
    if (name == "affordable") {
        return Colouring{
            [oracle](const FamilyDoc& d) { return colour_affordable(oracle, family_of(d)); },
            [](const FamilyDoc& d) { return FamilyDoc(flip_affordable(family_of(d))); }};
    }
    throw ParseError("unknown colouring: " + name);
}

TypeExpr parse_expr_arg(const Args& a) {
    return parse_type(positional_one(a, "order type expression"));
}

int cmd_classify(const Args& a, std::ostream& out) {
    reject_unknown_options(a, {});
    out << to_text(classify(parse_expr_arg(a)));
    return 0;
}

int cmd_beta_xi(const Args& a, std::ostream& out, bool want_beta) {
    reject_unknown_options(a, {});
    NormalReport r = normalize(parse_expr_arg(a));
    if (r.flagged() || !r.form) {
        throw DomainError("the type has no finite-sum form, so beta and xi are undefined");
    }
    if (want_beta) {
        out << "beta: " << to_string(beta(*r.form)) << "\n";
    } else {
        out << "xi: " << to_string(xi(*r.form)) << "\n";
    }
    return 0;
}

int cmd_colour(const Args& a, std::ostream& out) {
    reject_unknown_options(a, {"colouring", "oracle"});
    auto it = a.options.find("colouring");
    if (it == a.options.end()) throw ParseError("colour needs --colouring NAME");
    GOracle oracle = oracle_by_name(option_or(a, "oracle", "parity"));
    Colouring c = colouring_by_name(it->second, oracle);
    FamilyDoc doc = load_family_file(positional_one(a, "family file"));
    out << "colour: " << c.colour(doc) << "\n";
    return 0;
}

int cmd_flip(const Args& a, std::ostream& out) {
    reject_unknown_options(a, {"colouring", "oracle", "target"});
    auto it = a.options.find("colouring");
    if (it == a.options.end()) throw ParseError("flip needs --colouring NAME");
    GOracle oracle = oracle_by_name(option_or(a, "oracle", "parity"));
    Colouring c = colouring_by_name(it->second, oracle);
    FamilyDoc doc = load_family_file(positional_one(a, "family file"));

    std::optional<int> target;
    if (a.options.count("target")) {
        const std::string& t = a.options.at("target");
        if (t != "0" && t != "1") throw ParseError("--target must be 0 or 1");
        target = t == "1" ? 1 : 0;
    }

    int before = c.colour(doc);
    FamilyDoc result = (target && *target == before) ? doc : c.flip(doc);
    out << "colour-before: " << before << "\n";
    out << "colour-after: " << c.colour(result) << "\n";
    out << "family:\n" << to_text(result);
    return 0;
}

int cmd_canonise(const Args& a, std::ostream& out) {
    reject_unknown_options(a, {});
    FamilyDoc doc = load_family_file(positional_one(a, "family file"));
    out << to_text(canonise_family(family_of(doc)));
    return 0;
}

int cmd_diagram(const Args& a, std::ostream& out) {
    reject_unknown_options(a, {"format"});
    DiagramFormat fmt = parse_diagram_format(option_or(a, "format", "ascii"));
    FamilyDoc doc = load_family_file(positional_one(a, "family file"));
    out << render_diagram(doc, fmt);
    return 0;
}

int cmd_demo(const Args& a, std::ostream& out, std::ostream& err) {
    reject_unknown_options(a, {"corpus"});
    if (!a.positional.empty()) throw ParseError("demo takes no positional arguments");
    std::string dir = option_or(a, "corpus", corpus_dir_from_env());
    std::vector<CheckResult> results = run_selfchecks(dir);
    std::size_t ok = 0;
    for (const auto& r : results) {
        if (r.pass) {
            ++ok;
            out << "PASS " << r.name << "\n";
        } else {
            out << "FAIL " << r.name << ": " << r.detail << "\n";
        }
    }
    out << "summary: " << ok << "/" << results.size() << " checks passed\n";
    if (ok != results.size()) {
        err << "domain-error: " << (results.size() - ok) << " self-check(s) failed\n";
        return 1;
    }
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        if (args.empty() || args[0] == "help" || args[0] == "--help" || args[0] == "-h") {
            out << kUsage;
            return 0;
        }
        Args a = parse_args(args);
        if (a.verb == "classify") return cmd_classify(a, out);
        if (a.verb == "beta") return cmd_beta_xi(a, out, true);
        if (a.verb == "xi") return cmd_beta_xi(a, out, false);
        if (a.verb == "colour") return cmd_colour(a, out);
        if (a.verb == "flip") return cmd_flip(a, out);
        if (a.verb == "canonise") return cmd_canonise(a, out);
        if (a.verb == "diagram") return cmd_diagram(a, out);
        if (a.verb == "demo") return cmd_demo(a, out, err);
        throw ParseError("unknown verb: " + a.verb);
    } catch (const ParseError& ex) {
        err << "parse-error: " << ex.what() << "\n";
        return 2;
    } catch (const DomainError& ex) {
        err << "domain-error: " << ex.what() << "\n";
        return 1;
    }
}

}  // namespace ordercalc
