#include "frametk/cli.hpp"

#include "frametk/classifier.hpp"
#include "frametk/errors.hpp"
#include "frametk/fact_check.hpp"
#include "frametk/json_io.hpp"
#include "frametk/operators.hpp"
#include "frametk/transforms.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace frametk::cli {

namespace {

struct Options {
    std::string input;
    std::string fixture;
    std::string coeff = "delta1";
    std::string domain = "C";
    std::vector<std::size_t> levels;
    double tol_rank = 0.0;
    std::string format = "json";
    std::string op;
    std::string rule = "frame";
    bool probe_ln2 = false;
};

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string bound_text(const std::optional<ExtendedReal>& x) { return x ? x->to_string() : "-"; }

std::string truth_text(Truth t) {
    return t == Truth::yes ? "yes" : t == Truth::no ? "no" : "undetermined";
}

Tolerance tolerance_for(const Options& o, std::size_t rows, std::size_t cols) {
    Tolerance t = Tolerance::for_shape(rows, cols);
    if (o.tol_rank > 0.0) t = Tolerance(o.tol_rank, t.residual_abs);
    return t;
}

FiniteSequence load_sequence(const Options& o) {
    if (o.input.empty()) throw InvalidInput("--input is required");
    return sequence_from_json(read_json_file(o.input));
}

CoefficientSequence load_coefficient(const std::string& name) {
    if (name.rfind("custom:", 0) != 0) return named_coefficient(name);
    const json j = read_json_file(name.substr(7));
    const json& vals = j.is_object() && j.contains("values") ? j["values"] : j;
    if (!vals.is_array()) throw SchemaError("custom coefficients are an array of [re, im] pairs");
    std::vector<lcplx> values;
    for (const json& z : vals) {
        if (z.is_number()) values.emplace_back(z.get<double>(), 0.0L);
        else if (z.is_array() && z.size() == 2 && z[0].is_number() && z[1].is_number())
            values.emplace_back(z[0].get<double>(), z[1].get<double>());
        else throw SchemaError("custom coefficients are an array of [re, im] pairs");
    }
    return CoefficientSequence::finite(std::move(values), name);
}

OperatorDomain domain_from(const std::string& s) {
    if (s == "C") return OperatorDomain::C;
    if (s == "D") return OperatorDomain::D;
    if (s == "S") return OperatorDomain::S;
    if (s == "G") return OperatorDomain::G;
    throw InvalidInput("unknown domain '" + s + "'");
}

void emit(std::ostream& out, const json& j) { out << canonical_dump(j) << '\n'; }

void text_verdicts(std::ostream& out, const VerdictSet& set) {
    for (const auto& v : set.verdicts) {
        out << "  " << to_string(v.label) << ": " << truth_text(v.holds);
        if (v.holds == Truth::yes && (v.bounds.lower || v.bounds.upper))
            out << " A=" << bound_text(v.bounds.lower) << " B=" << bound_text(v.bounds.upper);
        if (v.borderline) out << " (borderline)";
        out << '\n';
    }
}

void text_report(std::ostream& out, const ClassificationReport& r) {
    out << r.subject << '\n';
    text_verdicts(out, r.consensus);
    out << "agreement: " << (r.agreement ? "yes" : "no") << '\n';
    out << "borderline: " << (r.borderline ? "yes" : "no") << '\n';
}

int cmd_classify(const Options& o, std::ostream& out) {
    ClassificationReport r;
    if (!o.fixture.empty()) {
        r = classify_structured(fixture_by_id(o.fixture).sequence);
    } else {
        const FiniteSequence seq = load_sequence(o);
        r = classify_finite(seq, tolerance_for(o, seq.dimension(), seq.size()));
    }
    if (o.format == "text") text_report(out, r);
    else emit(out, to_json(r));
    return kOk;
}

int cmd_operators(const Options& o, std::ostream& out) {
    const FiniteSequence seq = load_sequence(o);
    const OperatorSuite suite = build_suite(seq, tolerance_for(o, seq.dimension(), seq.size()));
    const IdentityReport report = check_identities(suite);
    if (o.format == "text") {
        for (const auto& e : report.entries)
            out << e.name << ": " << num(e.residual) << (e.passed ? " pass" : " FAIL") << '\n';
        return kOk;
    }
    json j = to_json(report);
    j["synthesis"] = to_json(suite.synthesis);
    j["analysis"] = to_json(suite.analysis);
    j["frame_operator"] = to_json(suite.frame_op);
    j["gram"] = to_json(suite.gram);
    emit(out, j);
    return kOk;
}

int cmd_gallery(const Options& o, std::ostream& out) {
    std::vector<Fixture> fixtures;
    if (o.fixture.empty()) fixtures = gallery();
    else fixtures.push_back(fixture_by_id(o.fixture));
    std::sort(fixtures.begin(), fixtures.end(), [](const Fixture& a, const Fixture& b) { return a.id < b.id; });

    if (o.probe_ln2) {
        const std::vector<std::size_t> levels = o.levels.empty() ? std::vector<std::size_t>{1000} : o.levels;
        json all = json::array();
        for (const Fixture& f : fixtures) {
            json evidence = json::array();
            bool within = true;
            for (std::size_t N : levels) {
                const double dist = ln2_partial_distance(f.sequence, N);
                const double bound = 1.0 / static_cast<double>(N + 1);
                within = within && dist <= bound;
                evidence.push_back(json::array({N, dist, bound}));
                if (o.format == "text")
                    out << f.id << " N=" << N << " distance=" << num(dist) << " bound=" << num(bound) << '\n';
            }
            all.push_back({{"fixture", f.id}, {"evidence", std::move(evidence)}, {"within_bound", within}});
        }
        if (o.format != "text") emit(out, {{"probe", "ln2"}, {"results", std::move(all)}});
        return kOk;
    }

    json all = json::array();
    for (const Fixture& f : fixtures) {
        json facts = json::array();
        for (const FactResult& r : check_fixture(f)) {
            if (o.format == "text")
                out << f.id << ' ' << r.fact << ": " << r.observed << (r.passed ? " ok" : " MISMATCH") << '\n';
            facts.push_back(to_json(r));
        }
        all.push_back({{"fixture", f.id},
                       {"label", f.sequence.label()},
                       {"classification", to_json(classify_structured(f.sequence))},
                       {"facts", std::move(facts)}});
    }
    if (o.format != "text") emit(out, {{"fixtures", std::move(all)}});
    return kOk;
}

int cmd_probe(const Options& o, std::ostream& out) {
    if (o.fixture.empty()) throw InvalidInput("--fixture is required");
    const Fixture f = fixture_by_id(o.fixture);
    const OperatorDomain dom = domain_from(o.domain);
    const auto levels = o.levels.empty() ? default_probe_levels() : o.levels;
    MembershipVerdict v = membership(dom, f.sequence, load_coefficient(o.coeff), levels);

    std::string fact_id = "dom_";
    fact_id += static_cast<char>(std::tolower(static_cast<unsigned char>(o.domain[0])));
    fact_id += ":" + o.coeff;
    if (v.analytic())
        for (const Fact& fact : f.expected)
            if (fact.id == fact_id) v.anchor = fact.anchor;

    if (o.format == "text") {
        out << to_string(v.status);
        if (!v.anchor.empty()) out << " (" << v.anchor << ")";
        out << '\n';
        for (const auto& [level, value] : v.evidence) out << "  N=" << level << " " << num(value) << '\n';
        return kOk;
    }
    json j = to_json(v);
    j["fixture"] = f.id;
    j["coeff"] = o.coeff;
    j["domain"] = o.domain;
    emit(out, j);
    return kOk;
}

int cmd_transform(const Options& o, std::ostream& out) {
    const FiniteSequence seq = load_sequence(o);
    if (o.op.empty()) throw InvalidInput("--operator is required");
    const Matrix f = matrix_from_json(read_json_file(o.op));
    const SandwichReport r =
        verify_transform(seq, f, rule_from_string(o.rule), tolerance_for(o, seq.dimension(), seq.size()));
    if (o.format == "text") {
        out << "rule " << to_string(r.prediction.rule) << '\n';
        out << "predicted A=" << bound_text(r.prediction.predicted.lower)
            << " B=" << bound_text(r.prediction.predicted.upper) << '\n';
        out << "actual    A=" << bound_text(r.actual.lower) << " B=" << bound_text(r.actual.upper) << '\n';
        out << "sandwich: " << (r.sandwich ? "holds" : "VIOLATED") << '\n';
        return kOk;
    }
    emit(out, to_json(r));
    return kOk;
}

int cmd_factorize(const Options& o, std::ostream& out) {
    const FiniteSequence seq = load_sequence(o);
    const Tolerance tol = tolerance_for(o, seq.dimension(), seq.size());
    const FactorizationReport r = factorize_via_onb(seq, tol);
    const ClassificationReport c = classify_finite(seq, tol);
    bool matches = true;
    for (const auto& [label, holds] : r.labels())
        matches = matches && (c.consensus[label].holds == (holds ? Truth::yes : Truth::no));
    if (o.format == "text") {
        out << "surjective: " << (r.surjective ? "yes" : "no") << '\n';
        out << "injective: " << (r.injective ? "yes" : "no") << '\n';
        out << "norm: " << num(r.norm) << '\n';
        out << "matches classification: " << (matches ? "yes" : "no") << '\n';
        return kOk;
    }
    json j = to_json(r);
    j["matches_classification"] = matches;
    emit(out, j);
    return kOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Frame-theory toolkit for finite and structured vector sequences", "frametk"};
    app.require_subcommand(1, 1);
    Options o;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}));
        sub->add_option("--tol-rank", o.tol_rank, "Relative rank cutoff")->check(CLI::Range(0.0, 1.0));
    };

    auto* classify = app.add_subcommand("classify", "Classify a finite sequence or a gallery fixture");
    classify->add_option("--input", o.input, "Sequence JSON file");
    classify->add_option("--fixture", o.fixture, "Gallery fixture id");
    add_common(classify);

    auto* operators = app.add_subcommand("operators", "Build C, D, S, G and check their identities");
    operators->add_option("--input", o.input, "Sequence JSON file")->required();
    add_common(operators);

    auto* gal = app.add_subcommand("gallery", "Check the gallery fixtures against their pinned facts");
    gal->add_option("--fixture", o.fixture, "Restrict to one fixture");
    gal->add_flag("--probe-lnx2", o.probe_ln2, "Distance of partial sums to (ln 2) e_1");
    gal->add_option("--levels", o.levels, "Truncation levels")->delimiter(',');
    add_common(gal);

    auto* probe = app.add_subcommand("probe", "Domain membership probe on a fixture");
    probe->add_option("--fixture", o.fixture, "Gallery fixture id")->required();
    probe->add_option("--coeff", o.coeff, "delta1|zeros|harmonic-alt|harmonic|h|custom:PATH");
    probe->add_option("--domain", o.domain, "Operator domain")->check(CLI::IsMember({"C", "D", "S", "G"}));
    probe->add_option("--levels", o.levels, "Truncation levels")->delimiter(',');
    add_common(probe);

    auto* transform = app.add_subcommand("transform", "Apply an operator and check the predicted bounds");
    transform->add_option("--input", o.input, "Sequence JSON file")->required();
    transform->add_option("--operator", o.op, "Matrix JSON file")->required();
    transform->add_option("--rule", o.rule, "Transform rule")
        ->check(CLI::IsMember({"bessel", "frame", "riesz_basis", "lower_frame", "riesz_fischer"}));
    add_common(transform);

    auto* factorize = app.add_subcommand("factorize", "Write the sequence as V applied to the canonical basis");
    factorize->add_option("--input", o.input, "Sequence JSON file")->required();
    add_common(factorize);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kInputError;
    }

    try {
        if (classify->parsed()) return cmd_classify(o, out);
        if (operators->parsed()) return cmd_operators(o, out);
        if (gal->parsed()) return cmd_gallery(o, out);
        if (probe->parsed()) return cmd_probe(o, out);
        if (transform->parsed()) return cmd_transform(o, out);
        if (factorize->parsed()) return cmd_factorize(o, out);
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const SchemaError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const HypothesisError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kInternalError;
    }
    return kInternalError;
}

} // namespace frametk::cli
