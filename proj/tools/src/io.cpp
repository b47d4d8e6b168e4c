#include "distcsp_tools/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace distcsp::io {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ParseError(path + ": " + what);
}

json parse_json(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
}

void require_object(const json& j, const std::string& path, std::initializer_list<std::string_view> allowed) {
    if (!j.is_object())
        fail(path, "expected an object");
    for (const auto& [key, _] : j.items()) {
        bool known = false;
        for (auto a : allowed)
            known = known || key == a;
        if (!known)
            fail(path, "unexpected field '" + key + "'");
    }
}

const json& field(const json& j, const std::string& path, const char* key) {
    auto it = j.find(key);
    if (it == j.end())
        fail(path, std::string("missing field '") + key + "'");
    return *it;
}

Offset as_integer(const json& j, const std::string& path) {
    if (!j.is_number_integer())
        fail(path, "expected an integer");
    if (j.is_number_unsigned() && j.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX))
        fail(path, "integer out of range");
    return j.get<Offset>();
}

std::size_t as_index(const json& j, const std::string& path) {
    const Offset v = as_integer(j, path);
    if (v < 0)
        fail(path, "expected a non-negative integer");
    return static_cast<std::size_t>(v);
}

std::string as_string(const json& j, const std::string& path) {
    if (!j.is_string())
        fail(path, "expected a string");
    return j.get<std::string>();
}

const json& as_array(const json& j, const std::string& path) {
    if (!j.is_array())
        fail(path, "expected an array");
    return j;
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

Offset parse_int(const std::string& s, const std::string& what) {
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &used);
    } catch (const std::exception&) {
        throw ParseError("map spec: " + what + " '" + s + "' is not an integer");
    }
    if (used != s.size())
        throw ParseError("map spec: " + what + " '" + s + "' is not an integer");
    return v;
}

} // namespace

Template parse_template(std::string_view text) {
    const json doc = parse_json(text);
    require_object(doc, "$", {"name", "relations"});
    const std::string name = as_string(field(doc, "$", "name"), "$.name");
    const json& rels = as_array(field(doc, "$", "relations"), "$.relations");

    std::vector<RelationDef> relations;
    std::set<std::string> seen;
    for (std::size_t r = 0; r < rels.size(); ++r) {
        const std::string path = "$.relations[" + std::to_string(r) + "]";
        const json& rel = rels[r];
        require_object(rel, path, {"name", "arity", "tuples", "body"});
        const std::string rname = as_string(field(rel, path, "name"), path + ".name");
        if (!seen.insert(rname).second)
            fail(path + ".name", "duplicate relation name '" + rname + "'");
        const std::size_t arity = as_index(field(rel, path, "arity"), path + ".arity");
        if (arity < 1)
            fail(path + ".arity", "arity must be at least 1");

        const bool has_tuples = rel.contains("tuples");
        const bool has_body = rel.contains("body");
        if (has_tuples == has_body)
            fail(path, "exactly one of 'tuples' or 'body' is required");
        if (has_body) {
            const std::string body = as_string(rel["body"], path + ".body");
            if (body == "full")
                relations.push_back(RelationDef::full(rname, arity));
            else if (body == "empty")
                relations.push_back(RelationDef::empty(rname, arity));
            else
                fail(path + ".body", "expected \"full\" or \"empty\", got \"" + body + "\"");
            continue;
        }

        if (arity == 1)
            fail(path + ".tuples", "unary relations must use \"body\": \"full\" or \"empty\"");
        const json& tuples = as_array(rel["tuples"], path + ".tuples");
        std::vector<Tuple> offsets;
        for (std::size_t i = 0; i < tuples.size(); ++i) {
            const std::string tpath = path + ".tuples[" + std::to_string(i) + "]";
            const json& tj = as_array(tuples[i], tpath);
            if (tj.size() != arity - 1)
                fail(tpath, "tuple has " + std::to_string(tj.size()) + " components, expected arity-1 = " +
                                std::to_string(arity - 1));
            Tuple v;
            for (std::size_t k = 0; k < tj.size(); ++k)
                v.push_back(as_integer(tj[k], tpath + "[" + std::to_string(k) + "]"));
            offsets.push_back(std::move(v));
        }
        relations.push_back(RelationDef::tuples(rname, arity, std::move(offsets)));
    }
    return Template(name, std::move(relations));
}

Instance parse_instance(std::string_view text, const Template& t) {
    const json doc = parse_json(text);
    require_object(doc, "$", {"variables", "constraints"});
    Instance inst;
    inst.num_vars = as_index(field(doc, "$", "variables"), "$.variables");
    if (inst.num_vars < 1)
        fail("$.variables", "an instance needs at least one variable");
    const json& cons = as_array(field(doc, "$", "constraints"), "$.constraints");
    for (std::size_t c = 0; c < cons.size(); ++c) {
        const std::string path = "$.constraints[" + std::to_string(c) + "]";
        require_object(cons[c], path, {"relation", "args"});
        Constraint con;
        con.relation = as_string(field(cons[c], path, "relation"), path + ".relation");
        const RelationDef* rel = t.find(con.relation);
        if (!rel)
            fail(path + ".relation", "unknown relation '" + con.relation + "'");
        const json& args = as_array(field(cons[c], path, "args"), path + ".args");
        if (args.size() != rel->arity())
            fail(path + ".args", "relation '" + con.relation + "' has arity " + std::to_string(rel->arity()) +
                                     " but " + std::to_string(args.size()) + " arguments were given");
        for (std::size_t a = 0; a < args.size(); ++a) {
            const std::string apath = path + ".args[" + std::to_string(a) + "]";
            const std::size_t v = as_index(args[a], apath);
            if (v >= inst.num_vars)
                fail(apath, "variable index " + std::to_string(v) + " out of range [0, " +
                                std::to_string(inst.num_vars) + ")");
            con.args.push_back(v);
        }
        inst.constraints.push_back(std::move(con));
    }
    return inst;
}

Assignment parse_assignment(std::string_view text) {
    const json doc = parse_json(text);
    require_object(doc, "$", {"values"});
    const json& values = as_array(field(doc, "$", "values"), "$.values");
    Assignment a;
    for (std::size_t i = 0; i < values.size(); ++i)
        a.values.push_back(as_integer(values[i], "$.values[" + std::to_string(i) + "]"));
    return a;
}

json template_to_json(const Template& t) {
    json rels = json::array();
    for (const auto& r : t.relations()) {
        json jr{{"name", r.name()}, {"arity", r.arity()}};
        switch (r.kind()) {
        case BodyKind::Full:
            jr["body"] = "full";
            break;
        case BodyKind::Empty:
            jr["body"] = "empty";
            break;
        case BodyKind::Tuples: {
            json tuples = json::array();
            for (const auto& v : r.offset_tuples())
                tuples.push_back(v);
            jr["tuples"] = std::move(tuples);
            break;
        }
        }
        rels.push_back(std::move(jr));
    }
    return json{{"name", t.name()}, {"relations", std::move(rels)}};
}

json instance_to_json(const Instance& inst) {
    json cons = json::array();
    for (const auto& c : inst.constraints)
        cons.push_back(json{{"relation", c.relation}, {"args", c.args}});
    return json{{"variables", inst.num_vars}, {"constraints", std::move(cons)}};
}

json assignment_to_json(const Assignment& a) { return json{{"values", a.values}}; }

PeriodicMapSpec parse_periodic_spec(std::string_view text) {
    PeriodicMapSpec spec;
    spec.base_values.clear();
    bool have_p = false, have_values = false, have_drift = false;
    std::stringstream ss{std::string(text)};
    std::string part;
    while (std::getline(ss, part, ';')) {
        part = trim(part);
        if (part.empty())
            continue;
        const auto eq = part.find('=');
        if (eq == std::string::npos)
            throw ParseError("map spec: expected key=value, got '" + part + "'");
        const std::string key = trim(std::string_view(part).substr(0, eq));
        const std::string value = trim(std::string_view(part).substr(eq + 1));
        if (key == "p") {
            spec.period = parse_int(value, "period");
            have_p = true;
        } else if (key == "values") {
            std::stringstream vs(value);
            std::string item;
            while (std::getline(vs, item, ','))
                spec.base_values.push_back(parse_int(trim(item), "value"));
            have_values = true;
        } else if (key == "drift") {
            if (value == "+1" || value == "1")
                spec.drift = 1;
            else if (value == "-1")
                spec.drift = -1;
            else if (value == "0")
                spec.drift = 0;
            else
                throw ParseError("map spec: drift must be +1, -1 or 0, got '" + value + "'");
            have_drift = true;
        } else {
            throw ParseError("map spec: unknown key '" + key + "'");
        }
    }
    if (!have_p || !have_values || !have_drift)
        throw ParseError("map spec: 'p', 'values' and 'drift' are all required");
    try {
        validate_spec(spec);
    } catch (const InputError& e) {
        throw ParseError(std::string("map spec: ") + e.what());
    }
    return spec;
}

std::string format_periodic_spec(const PeriodicMapSpec& spec) {
    std::string out = "p=" + std::to_string(spec.period) + "; values=";
    for (std::size_t i = 0; i < spec.base_values.size(); ++i) {
        if (i)
            out += ',';
        out += std::to_string(spec.base_values[i]);
    }
    out += "; drift=";
    out += spec.drift > 0 ? "+1" : spec.drift < 0 ? "-1" : "0";
    return out;
}

json analysis_to_json(const AnalysisReport& r) {
    json paths = json::array();
    for (const auto& [q, l] : r.path_lengths)
        paths.push_back(json{{"q", q}, {"length", l}});
    json out{{"distances", r.distances},
             {"max_distance", r.max_distance},
             {"connected", r.connected},
             {"path_lengths", std::move(paths)}};
    if (r.stretch_bound) {
        out["stretch_bound"] = *r.stretch_bound;
        out["finite_range_bound"] = *r.finite_range_bound;
    }
    return out;
}

std::string_view verdict_name(VerdictKind k) {
    switch (k) {
    case VerdictKind::Sat:
        return "sat";
    case VerdictKind::Unsat:
        return "unsat";
    case VerdictKind::Unknown:
        break;
    }
    return "unknown";
}

json stats_to_json(const SolveStats& s, const Verdict& v) {
    const auto& p = s.propagation;
    json out{{"components", s.components},
             {"proper_replacements", p.proper_replacements},
             {"revisions", p.revisions},
             {"pair_visits", p.pair_visits},
             {"full_to_finite", p.full_to_finite},
             {"replacement_budget", p.replacement_budget},
             {"bound_violations", p.bound_violations},
             {"budget_violations", p.budget_violations},
             {"brute_fallback", s.brute_fallback}};
    if (!v.reason.empty())
        out["reason"] = v.reason;
    return out;
}

json classification_to_json(const EndoClassification& c) {
    json out{{"kind", c.kind == EndoKind::Periodic ? "periodic" : "finite_range"},
             {"direction", c.direction},
             {"stable_numbers", c.stable_numbers},
             {"stable_search_cap", c.stable_search_cap}};
    if (c.minimal_stable)
        out["minimal_stable"] = *c.minimal_stable;
    return out;
}

std::string serialize_report(const json& report) { return report.dump(2) + "\n"; }

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace distcsp::io
