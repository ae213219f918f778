// kummerlab command-line front end: digit tables, scanners, structure
// reports and exact Bernoulli values.

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "kummerlab/fermat.hpp"
#include "kummerlab/lfunc.hpp"
#include "kummerlab/solver.hpp"

using json = nlohmann::ordered_json;
using namespace kummerlab;

namespace {

std::vector<QuadChar> parse_characters(const std::string& text) {
    std::vector<QuadChar> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item == "principal" || item == "1") {
            out.push_back(QuadChar());
        } else if (item.rfind("D=", 0) == 0) {
            out.push_back(QuadChar::kronecker_char(std::stoll(item.substr(2))));
        } else {
            throw ParseError("character must be 'principal' or 'D=<int>': " +
                             item);
        }
    }
    if (out.empty())
        throw ParseError("no character given");
    return out;
}

json char_json(const QuadChar& chi) {
    if (chi.is_principal())
        return json{{"kind", "principal"}};
    return json{{"kind", "kronecker"}, {"D", chi.discriminant()}};
}

json chars_json(const std::vector<QuadChar>& chars) {
    if (chars.size() == 1)
        return char_json(chars[0]);
    json arr = json::array();
    for (const auto& c : chars)
        arr.push_back(char_json(c));
    return json{{"kind", "product"}, {"factors", arr}};
}

std::string join_digits(const std::vector<long>& digits) {
    std::string out;
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (i)
            out += ", ";
        out += std::to_string(digits[i]);
    }
    return out;
}

json classification_json(const Classification& cls) {
    json j;
    j["delta"] = cls.delta;
    if (cls.lambda)
        j["lambda"] = *cls.lambda;
    else
        j["lambda"] = nullptr;
    j["ord_f0"] = cls.ord_f0 >= kInfiniteValuation ? -1 : cls.ord_f0;
    j["label"] = to_string(cls.label);
    return j;
}

struct Options {
    long p = 5;
    long l = 0;
    std::string char_text = "principal";
    int precision = 10;
    std::string method = "coefficients";
    long pmax = 100;
    unsigned n = 0;
    bool emit_json = false;
    std::string cache;  // Bernoulli cache file (BCACHE1)
    std::string out;    // scan persistence / checkpoint file (IRR1 / EXC1)
    int jobs = 1;
};

KummerFn build_from_options(const Options& opt,
                            const std::vector<QuadChar>& chars, int precision) {
    std::vector<LplSpec> specs;
    for (const auto& chi : chars)
        specs.push_back(LplSpec{opt.p, opt.l, chi, precision});
    return specs.size() == 1 ? build_Lpl(specs[0]) : build_product_L(specs);
}

int cmd_zero(const Options& opt) {
    auto chars = parse_characters(opt.char_text);
    KummerFn f = build_from_options(opt, chars, opt.precision + 1);
    ZeroMethod method = opt.method == "values" ? ZeroMethod::Values
                                               : ZeroMethod::Coefficients;
    ZeroResult z = find_zero(f, opt.precision, method);
    if (opt.emit_json) {
        json j;
        j["p"] = opt.p;
        j["l"] = opt.l;
        j["char"] = chars_json(chars);
        j["precision"] = opt.precision;
        j["zero_digits"] = z.digits.digits;
        j["classification"] = classification_json(f.classify());
        std::cout << j.dump() << '\n';
    } else {
        std::cout << "xi | " << join_digits(z.digits.digits) << '\n';
    }
    return 0;
}

int cmd_fixed_point(const Options& opt) {
    auto chars = parse_characters(opt.char_text);
    KummerFn f = build_from_options(opt, chars, opt.precision + 1);
    FixedPointResult t = find_fixed_point(f, opt.precision);
    if (!t.consistent)
        throw RelationViolated("fixed point failed the consistency re-check");
    if (opt.emit_json) {
        json j;
        j["p"] = opt.p;
        j["l"] = opt.l;
        j["char"] = chars_json(chars);
        j["precision"] = opt.precision;
        j["fixed_digits"] = t.digits.digits;
        j["classification"] = classification_json(f.classify());
        std::cout << j.dump() << '\n';
    } else {
        std::cout << "tau | " << join_digits(t.digits.digits) << '\n';
    }
    return 0;
}

int cmd_two_zeros(const Options& opt) {
    auto chars = parse_characters(opt.char_text);
    KummerFn f = build_from_options(opt, chars, opt.precision + 2);
    TwoZeroResult zz = find_two_zeros(f, opt.precision);
    if (opt.emit_json) {
        json j;
        j["p"] = opt.p;
        j["l"] = opt.l;
        j["char"] = chars_json(chars);
        j["precision"] = opt.precision;
        j["zero1_digits"] = zz.first.digits;
        j["zero2_digits"] = zz.second.digits;
        j["classification"] = classification_json(f.classify());
        std::cout << j.dump() << '\n';
    } else {
        std::cout << "xi_1 | " << join_digits(zz.first.digits) << '\n';
        std::cout << "xi_2 | " << join_digits(zz.second.digits) << '\n';
    }
    return 0;
}

int cmd_classify(const Options& opt) {
    auto chars = parse_characters(opt.char_text);
    KummerFn f = build_from_options(opt, chars, opt.precision);
    Classification cls = f.classify();
    if (opt.emit_json) {
        json j;
        j["p"] = opt.p;
        j["l"] = opt.l;
        j["char"] = chars_json(chars);
        j["precision"] = opt.precision;
        j["classification"] = classification_json(cls);
        std::cout << j.dump() << '\n';
    } else {
        std::cout << "label " << to_string(cls.label) << "\ndelta " << cls.delta
                  << "\nlambda ";
        if (cls.lambda)
            std::cout << *cls.lambda;
        else
            std::cout << ">=" << cls.lambda_lower_bound << " (indeterminate)";
        std::cout << "\nord_f0 "
                  << (cls.ord_f0 >= kInfiniteValuation
                          ? std::string("exact zero")
                          : std::to_string(cls.ord_f0))
                  << '\n';
    }
    return 0;
}

int cmd_scan(const Options& opt, const std::string& kind) {
    auto chars = parse_characters(opt.char_text);
    if (chars.size() != 1)
        throw UnsupportedCase("scans take a single character");
    ScanOptions scan;
    scan.p_max = opt.pmax;
    scan.jobs = opt.jobs;
    scan.checkpoint_path = opt.out;
    if (kind == "irregular") {
        auto pairs = scan_irregular(chars[0], scan);
        std::string found;
        for (const auto& r : pairs) {
            if (opt.emit_json) {
                json j;
                j["p"] = r.p;
                j["l"] = r.l;
                j["char"] = char_json(chars[0]);
                j["ord_f0"] = r.ord_f0;
                j["delta"] = r.delta;
                j["lambda"] = r.lambda;
                std::cout << j.dump() << '\n';
            } else {
                std::cout << r.p << ' ' << r.l << '\n';
            }
            found += ' ' + std::to_string(r.p);
        }
        if (!opt.emit_json)
            std::cout << "found:" << found << '\n';
    } else if (kind == "exceptional") {
        auto pairs = scan_exceptional(chars[0], scan);
        std::string found;
        for (const auto& r : pairs) {
            if (opt.emit_json) {
                json j;
                j["p"] = r.p;
                j["l"] = 0;
                j["char"] = char_json(chars[0]);
                j["ord_L1"] = r.ord_L1;
                j["lambda"] = r.lambda;
                std::cout << j.dump() << '\n';
            } else {
                std::cout << r.p << " 0\n";
            }
            found += ' ' + std::to_string(r.p);
        }
        if (!opt.emit_json)
            std::cout << "found:" << found << '\n';
    } else {
        throw ParseError("scan kind must be irregular or exceptional");
    }
    return 0;
}

int cmd_structure(const Options& opt) {
    auto chars = parse_characters(opt.char_text);
    StructureReport rep = structure_check(opt.n, chars, opt.pmax, 8);
    if (opt.emit_json) {
        json j;
        j["n"] = rep.n;
        j["char"] = chars_json(chars);
        std::ostringstream vs;
        vs << rep.value;
        j["value"] = vs.str();
        j["identity_holds"] = rep.identity_holds;
        j["conjecture_holds"] = rep.conjecture_holds;
        json factors = json::array();
        for (const auto& fac : rep.factors) {
            json fj;
            fj["p"] = fac.p;
            fj["kind"] = fac.kind;
            fj["ord"] = fac.ord;
            if (fac.l >= 0)
                fj["l"] = fac.l;
            if (fac.predicted_ord)
                fj["predicted_ord"] = *fac.predicted_ord;
            fj["verified_irregular"] = fac.verified_irregular;
            factors.push_back(fj);
        }
        j["factors"] = factors;
        if (!rep.note.empty())
            j["note"] = rep.note;
        std::cout << j.dump() << '\n';
    } else {
        std::cout << "L(1-(delta+n)) = " << rep.value << '\n';
        for (const auto& fac : rep.factors) {
            std::cout << fac.kind << " p=" << fac.p << " ord=" << fac.ord;
            if (fac.l >= 0)
                std::cout << " l=" << fac.l;
            if (fac.predicted_ord)
                std::cout << " predicted=" << *fac.predicted_ord;
            if (fac.verified_irregular)
                std::cout << " (verified irregular)";
            std::cout << '\n';
        }
        std::cout << "identity " << (rep.identity_holds ? "holds" : "FAILS")
                  << ", conjectural forms "
                  << (rep.conjecture_holds ? "agree" : "DISAGREE") << '\n';
        if (!rep.note.empty())
            std::cout << "note: " << rep.note << '\n';
    }
    return 0;
}

int cmd_congruences(const Options& opt) {
    auto chars = parse_characters(opt.char_text);
    if (chars.size() != 1)
        throw UnsupportedCase("the congruence suite takes a single character");
    CongruenceReport rep = congruence_suite(opt.p, opt.l, chars[0], 5);
    for (const auto& c : rep.checks) {
        if (opt.emit_json) {
            json j;
            j["check"] = c.name;
            j["pass"] = c.pass;
            if (!c.detail.empty())
                j["detail"] = c.detail;
            std::cout << j.dump() << '\n';
        } else {
            std::cout << (c.pass ? "[pass] " : "[FAIL] ") << c.name;
            if (!c.detail.empty())
                std::cout << "  (" << c.detail << ")";
            std::cout << '\n';
        }
    }
    return rep.all_pass() ? 0 : 3;
}

int cmd_bernoulli(const Options& opt) {
    auto chars = parse_characters(opt.char_text);
    ExactRational value = chars[0].is_principal()
                              ? bernoulli(opt.n)
                              : gen_bernoulli(opt.n, chars[0]);
    if (opt.emit_json) {
        json j;
        j["n"] = opt.n;
        j["char"] = char_json(chars[0]);
        std::ostringstream vs;
        vs << value;
        j["value"] = vs.str();
        std::cout << j.dump() << '\n';
    } else {
        if (value.get_den() == 1)
            std::cout << value.get_num() << '\n';
        else
            std::cout << value << '\n';
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"p-adic Kummer-space toolkit: digit lifting for zeros and "
                 "fixed points of p-adic L-functions, irregular/exceptional "
                 "prime scanners, and exact Bernoulli backends"};
    app.require_subcommand(1);

    Options opt;
    if (const char* env = std::getenv("KUMMERLAB_CACHE"))
        opt.cache = env;

    auto add_common = [&](CLI::App* cmd, bool needs_pl) {
        if (needs_pl) {
            cmd->add_option("--p", opt.p, "prime");
            cmd->add_option("--l", opt.l, "residue class (even)");
        }
        cmd->add_option("--char", opt.char_text,
                        "character: principal | D=<int> | comma list");
        cmd->add_option("--precision", opt.precision, "digit count");
        cmd->add_flag("--json", opt.emit_json, "one JSON object per line");
        cmd->add_option("--cache", opt.cache, "Bernoulli cache file");
        cmd->add_option("--jobs", opt.jobs, "parallel workers");
    };

    auto* zero = app.add_subcommand("zero", "unique simple zero of a WKS0 function");
    add_common(zero, true);
    zero->add_option("--method", opt.method, "values | coefficients");

    auto* fixed = app.add_subcommand("fixed-point", "fixed point of a KS function");
    add_common(fixed, true);

    auto* two = app.add_subcommand("two-zeros", "both zeros of a KS2 function");
    add_common(two, true);

    auto* classify = app.add_subcommand("classify", "Kummer-space classification");
    add_common(classify, true);

    std::string scan_kind = "irregular";
    auto* scan = app.add_subcommand("scan", "irregular / exceptional prime scan");
    add_common(scan, false);
    scan->add_option("--kind", scan_kind, "irregular | exceptional");
    scan->add_option("--pmax", opt.pmax, "scan bound");
    scan->add_option("--out", opt.out, "persistence / checkpoint file");

    auto* structure = app.add_subcommand("structure",
                                         "decomposition of |L(1-(delta+n))|");
    add_common(structure, false);
    structure->add_option("--n", opt.n, "even index")->required();
    structure->add_option("--pmax", opt.pmax, "irregular factor bound");

    auto* congr = app.add_subcommand("congruences",
                                     "T-function vs L-function congruence suite");
    add_common(congr, true);

    auto* bern = app.add_subcommand("bernoulli", "exact (generalized) Bernoulli");
    add_common(bern, false);
    bern->add_option("--n", opt.n, "index")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (!opt.cache.empty())
            BernoulliCache::instance().load(opt.cache);
        int rc = 1;
        if (zero->parsed())
            rc = cmd_zero(opt);
        else if (fixed->parsed())
            rc = cmd_fixed_point(opt);
        else if (two->parsed())
            rc = cmd_two_zeros(opt);
        else if (classify->parsed())
            rc = cmd_classify(opt);
        else if (scan->parsed())
            rc = cmd_scan(opt, scan_kind);
        else if (structure->parsed())
            rc = cmd_structure(opt);
        else if (congr->parsed())
            rc = cmd_congruences(opt);
        else if (bern->parsed())
            rc = cmd_bernoulli(opt);
        if (!opt.cache.empty())
            BernoulliCache::instance().save(opt.cache);
        return rc;
    } catch (const RelationViolated& e) {
        std::cerr << e.what() << '\n';
        return 3;
    } catch (const Error& e) {
        std::cerr << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal: " << e.what() << '\n';
        return 3;
    }
}
