#include "frametk/json_io.hpp"

#include "frametk/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace frametk {

namespace {

void dump_into(const json& j, std::string& out) {
    switch (j.type()) {
    case json::value_t::object: {
        out += '{';
        bool first = true;
        for (const auto& [k, v] : j.items()) {
            if (!first) out += ',';
            first = false;
            out += json(k).dump();
            out += ':';
            dump_into(v, out);
        }
        out += '}';
        break;
    }
    case json::value_t::array: {
        out += '[';
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (i) out += ',';
            dump_into(j[i], out);
        }
        out += ']';
        break;
    }
    case json::value_t::number_float: {
        const double x = j.get<double>();
        if (!std::isfinite(x)) {
            out += "null";
            break;
        }
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", x);
        out += buf;
        break;
    }
    default: out += j.dump(); break;
    }
}

[[noreturn]] void schema(const std::string& what) { throw SchemaError(what); }

const json& field(const json& j, const char* key) {
    if (!j.is_object()) schema("expected an object");
    auto it = j.find(key);
    if (it == j.end()) schema(std::string("missing field '") + key + "'");
    return *it;
}

std::size_t positive_count(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_number_integer() || v.get<long long>() < 0) schema(std::string("'") + key + "' must be a count");
    return v.get<std::size_t>();
}

cplx complex_from_json(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        schema("complex entries are [re, im] pairs");
    return {j[0].get<double>(), j[1].get<double>()};
}

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

std::optional<ExtendedReal> extended_from_json(const json& j) {
    if (j.is_null()) return std::nullopt;
    if (j.is_string()) {
        if (j.get<std::string>() != "inf") schema("bounds are numbers, \"inf\" or null");
        return ExtendedReal::infinity();
    }
    if (!j.is_number()) schema("bounds are numbers, \"inf\" or null");
    return ExtendedReal::finite(j.get<double>());
}

json truth_to_json(Truth t) {
    switch (t) {
    case Truth::yes: return true;
    case Truth::no: return false;
    case Truth::undetermined: return nullptr;
    }
    return nullptr;
}

Truth truth_from_json(const json& j) {
    if (j.is_null()) return Truth::undetermined;
    if (!j.is_boolean()) schema("'holds' must be a boolean or null");
    return j.get<bool>() ? Truth::yes : Truth::no;
}

json verdict_to_json(const LabelVerdict& v) {
    return {
        {"label", std::string(to_string(v.label))},
        {"holds", truth_to_json(v.holds)},
        {"A", to_json(v.bounds.lower)},
        {"B", to_json(v.bounds.upper)},
        {"optimal", v.bounds.optimal},
        {"via", v.via},
        {"anchor", v.anchor},
        {"borderline", v.borderline},
        {"margin", number_or_null(v.margin)},
    };
}

LabelVerdict verdict_from_json(const json& j) {
    LabelVerdict v;
    const json& label = field(j, "label");
    if (!label.is_string()) schema("'label' must be a string");
    try {
        v.label = label_from_string(label.get<std::string>());
    } catch (const InvalidInput& e) {
        schema(e.what());
    }
    v.holds = truth_from_json(field(j, "holds"));
    v.bounds.lower = extended_from_json(field(j, "A"));
    v.bounds.upper = extended_from_json(field(j, "B"));
    v.bounds.optimal = j.value("optimal", false);
    v.via = field(j, "via").get<std::string>();
    v.anchor = field(j, "anchor").get<std::string>();
    v.borderline = j.value("borderline", false);
    const json& m = j.contains("margin") ? j["margin"] : json(nullptr);
    v.margin = m.is_number() ? m.get<double>() : std::nan("");
    return v;
}

json set_to_json(const VerdictSet& set) {
    json arr = json::array();
    for (const auto& v : set.verdicts) arr.push_back(verdict_to_json(v));
    return arr;
}

VerdictSet set_from_json(const json& arr) {
    if (!arr.is_array() || arr.size() != kAllLabels.size()) schema("a verdict set has one entry per label");
    VerdictSet set;
    for (const json& e : arr) {
        LabelVerdict v = verdict_from_json(e);
        set[v.label] = v;
    }
    return set;
}

json bounds_to_json(const FrameBounds& b) {
    return {{"A", to_json(b.lower)}, {"B", to_json(b.upper)}, {"optimal", b.optimal}};
}

} // namespace

std::string canonical_dump(const json& j) {
    std::string out;
    dump_into(j, out);
    return out;
}

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(e.what());
    }
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json(ss.str());
}

FiniteSequence sequence_from_json(const json& j) {
    const std::size_t d = positive_count(j, "dimension");
    const json& vs = field(j, "vectors");
    if (!vs.is_array()) schema("'vectors' must be an array");
    std::vector<std::vector<cplx>> vectors;
    for (const json& v : vs) {
        if (!v.is_array()) schema("each vector is an array of [re, im] pairs");
        std::vector<cplx> col;
        for (const json& z : v) col.push_back(complex_from_json(z));
        vectors.push_back(std::move(col));
    }
    std::optional<std::string> label;
    if (j.contains("label") && !j["label"].is_null()) {
        if (!j["label"].is_string()) schema("'label' must be a string");
        label = j["label"].get<std::string>();
    }
    try {
        return FiniteSequence(d, std::move(vectors), label);
    } catch (const InvalidInput& e) {
        schema(e.what());
    }
}

json to_json(const FiniteSequence& seq) {
    json vs = json::array();
    for (const auto& v : seq.vectors()) {
        json col = json::array();
        for (cplx z : v) col.push_back(complex_to_json(z));
        vs.push_back(std::move(col));
    }
    json j = {{"dimension", seq.dimension()}, {"vectors", std::move(vs)}};
    if (seq.label()) j["label"] = *seq.label();
    return j;
}

Matrix matrix_from_json(const json& j) {
    const std::size_t rows = positive_count(j, "rows");
    const std::size_t cols = positive_count(j, "cols");
    const json& es = field(j, "entries");
    if (!es.is_array()) schema("'entries' must be an array");
    std::vector<cplx> entries;
    for (const json& z : es) entries.push_back(complex_from_json(z));
    try {
        return Matrix(rows, cols, std::move(entries));
    } catch (const InvalidInput& e) {
        schema(e.what());
    }
}

json to_json(const Matrix& m) {
    json es = json::array();
    for (cplx z : m.entries()) es.push_back(complex_to_json(z));
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(es)}};
}

json to_json(const std::optional<ExtendedReal>& x) {
    if (!x) return nullptr;
    if (x->is_infinite()) return "inf";
    return x->as_double();
}

json to_json(const ClassificationReport& report) {
    json labels = json::array();
    json routes = json::array();
    for (const auto* set : {&report.via_c, &report.via_d, &report.via_s, &report.via_g}) {
        if (!*set) continue;
        for (const auto& v : (*set)->verdicts) labels.push_back(verdict_to_json(v));
        routes.push_back((*set)->verdicts.front().via);
    }
    return {
        {"subject", report.subject},
        {"labels", std::move(labels)},
        {"routes", std::move(routes)},
        {"consensus", set_to_json(report.consensus)},
        {"agreement", report.agreement},
        {"borderline", report.borderline},
        {"tol", {{"rank_rel", report.tol.rank_rel}, {"residual_abs", report.tol.residual_abs}}},
    };
}

ClassificationReport report_from_json(const json& j) {
    ClassificationReport r;
    r.subject = field(j, "subject").get<std::string>();
    const json& labels = field(j, "labels");
    const json& routes = field(j, "routes");
    if (!labels.is_array() || !routes.is_array() || labels.size() != routes.size() * kAllLabels.size())
        schema("'labels' holds one verdict per label and route");
    for (std::size_t i = 0; i < routes.size(); ++i) {
        json chunk(labels.begin() + static_cast<std::ptrdiff_t>(i * kAllLabels.size()),
                   labels.begin() + static_cast<std::ptrdiff_t>((i + 1) * kAllLabels.size()));
        VerdictSet set = set_from_json(chunk);
        const std::string via = routes[i].get<std::string>();
        if (via == "C") r.via_c = set;
        else if (via == "D") r.via_d = set;
        else if (via == "S") r.via_s = set;
        else if (via == "G") r.via_g = set;
        else schema("unknown route '" + via + "'");
    }
    r.consensus = set_from_json(field(j, "consensus"));
    r.agreement = field(j, "agreement").get<bool>();
    r.borderline = field(j, "borderline").get<bool>();
    const json& tol = field(j, "tol");
    try {
        r.tol = Tolerance(field(tol, "rank_rel").get<double>(), field(tol, "residual_abs").get<double>());
    } catch (const InvalidInput& e) {
        schema(e.what());
    }
    return r;
}

json to_json(const IdentityReport& report) {
    json entries = json::array();
    for (const auto& e : report.entries)
        entries.push_back({{"name", e.name},
                           {"residual", number_or_null(e.residual)},
                           {"threshold", e.threshold},
                           {"status", e.passed ? "pass" : "fail"}});
    return {{"identities", std::move(entries)}, {"all_passed", report.all_passed()}};
}

json to_json(const MembershipVerdict& v) {
    json evidence = json::array();
    for (const auto& [level, value] : v.evidence) evidence.push_back(json::array({level, number_or_null(value)}));
    return {
        {"status", std::string(to_string(v.status))},
        {"evidence", std::move(evidence)},
        {"tail_estimate", v.tail_estimate ? number_or_null(*v.tail_estimate) : json(nullptr)},
        {"anchor", v.anchor},
    };
}

json to_json(const FactResult& r) {
    json j = {{"fixture", r.fixture}, {"fact", r.fact}, {"passed", r.passed}, {"observed", r.observed},
              {"anchor", r.anchor}};
    if (r.verdict) j["verdict"] = to_json(*r.verdict);
    return j;
}

json to_json(const SandwichReport& r) {
    json j = to_json(r.transformed);
    j["rule"] = std::string(to_string(r.prediction.rule));
    j["input"] = bounds_to_json(r.prediction.input);
    j["predicted"] = bounds_to_json(r.prediction.predicted);
    j["actual"] = bounds_to_json(r.actual);
    j["operator_norm"] = r.prediction.op_norm;
    j["inverse_norm"] = r.prediction.inv_norm;
    j["label_holds"] = r.label_holds;
    j["sandwich"] = r.sandwich;
    j["slack"] = r.slack;
    return j;
}

json to_json(const FactorizationReport& r) {
    json labels = json::object();
    for (const auto& [label, holds] : r.labels()) labels[std::string(to_string(label))] = holds;
    return {
        {"v", to_json(r.v)},
        {"norm", r.norm},
        {"inverse_norm", r.inverse_norm},
        {"bounded", r.bounded},
        {"closed_range", r.closed_range},
        {"surjective", r.surjective},
        {"injective", r.injective},
        {"bijective", r.bijective},
        {"dense_range", r.dense_range},
        {"labels", std::move(labels)},
    };
}

} // namespace frametk
