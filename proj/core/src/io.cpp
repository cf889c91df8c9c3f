#include "vleb/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <thread>

namespace vleb {

namespace {

void reject_unknown(const json& j, std::initializer_list<const char*> allowed,
                    const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed)
            if (it.key() == k) ok = true;
        if (!ok) throw ConfigError("unknown key \"" + it.key() + "\" in " + where);
    }
}

double need_number(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key) || !j[key].is_number())
        throw ConfigError("missing numeric \"" + std::string(key) + "\" in " + where);
    return j[key].get<double>();
}

}  // namespace

json expr_to_json(const ExprPtr& e) {
    json j;
    switch (e->kind) {
        case FunctionExpr::Kind::Char:
            j = {{"kind", "char"}, {"a", e->a}, {"b", e->b}};
            break;
        case FunctionExpr::Kind::Power:
            j = {{"kind", "pow"}, {"x0", e->x0}, {"gamma", e->gamma}, {"a", e->a}, {"b", e->b}};
            break;
        case FunctionExpr::Kind::Bump:
            j = {{"kind", "bump"}, {"center", e->center}, {"radius", e->radius}};
            break;
        case FunctionExpr::Kind::PolyBump:
            j = {{"kind", "polybump"},
                 {"center", e->center},
                 {"radius", e->radius},
                 {"coeffs", e->coeffs},
                 {"flat", e->flat}};
            break;
        case FunctionExpr::Kind::Scale:
            j = {{"kind", "scale"},
                 {"re", e->scale.real()},
                 {"im", e->scale.imag()},
                 {"expr", expr_to_json(e->children[0])}};
            break;
        case FunctionExpr::Kind::Sum: {
            json terms = json::array();
            for (const auto& c : e->children) terms.push_back(expr_to_json(c));
            j = {{"kind", "sum"}, {"terms", terms}};
            break;
        }
    }
    return j;
}

ExprPtr expr_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw ConfigError("expression node must be an object with a \"kind\"");
    std::string kind = j["kind"].get<std::string>();
    if (kind == "char") {
        reject_unknown(j, {"kind", "a", "b"}, "char node");
        return char_fun(need_number(j, "a", kind), need_number(j, "b", kind));
    }
    if (kind == "pow") {
        reject_unknown(j, {"kind", "x0", "gamma", "a", "b"}, "pow node");
        return power_fun(need_number(j, "x0", kind), need_number(j, "gamma", kind),
                         need_number(j, "a", kind), need_number(j, "b", kind));
    }
    if (kind == "bump") {
        reject_unknown(j, {"kind", "center", "radius"}, "bump node");
        return bump(need_number(j, "center", kind), need_number(j, "radius", kind));
    }
    if (kind == "polybump") {
        reject_unknown(j, {"kind", "center", "radius", "coeffs", "flat"}, "polybump node");
        std::vector<double> coeffs = j.value("coeffs", std::vector<double>{1.0});
        return poly_bump(need_number(j, "center", kind), need_number(j, "radius", kind),
                         coeffs, j.value("flat", false));
    }
    if (kind == "scale") {
        reject_unknown(j, {"kind", "re", "im", "expr"}, "scale node");
        return scale(cplx(j.value("re", 1.0), j.value("im", 0.0)),
                     expr_from_json(j.at("expr")));
    }
    if (kind == "sum") {
        reject_unknown(j, {"kind", "terms"}, "sum node");
        std::vector<ExprPtr> terms;
        for (const auto& t : j.at("terms")) terms.push_back(expr_from_json(t));
        if (terms.empty()) throw ConfigError("sum node needs terms");
        return sum(std::move(terms));
    }
    throw ConfigError("unknown expression kind \"" + kind + "\"");
}

json exponent_to_json(const VariableExponent& p) {
    switch (p.kind) {
        case VariableExponent::Kind::Const:
            return {{"kind", "const"}, {"value", p.value}};
        case VariableExponent::Kind::Piecewise:
            return {{"kind", "piecewise"}, {"breaks", p.breaks}, {"values", p.plateau}};
        case VariableExponent::Kind::LogShift:
            return {{"kind", "loglike"}, {"c0", p.c0}, {"c1", p.c1}};
        case VariableExponent::Kind::Atan:
            return {{"kind", "atan"}, {"c0", p.c0}, {"c1", p.c1}};
        case VariableExponent::Kind::Conjugated: {
            json inner = exponent_to_json(*p.inner);
            return {{"kind", "conjugate"}, {"of", inner}};
        }
    }
    return {};
}

VariableExponent exponent_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw ConfigError("exponent must be an object with a \"kind\"");
    std::string kind = j["kind"].get<std::string>();
    if (kind == "const") {
        reject_unknown(j, {"kind", "value"}, "const exponent");
        return const_exponent(need_number(j, "value", kind));
    }
    if (kind == "piecewise") {
        reject_unknown(j, {"kind", "breaks", "values"}, "piecewise exponent");
        return piecewise_exponent(j.at("breaks").get<std::vector<double>>(),
                                  j.at("values").get<std::vector<double>>());
    }
    if (kind == "loglike") {
        reject_unknown(j, {"kind", "c0", "c1"}, "loglike exponent");
        return logshift_exponent(need_number(j, "c0", kind), need_number(j, "c1", kind));
    }
    if (kind == "atan") {
        reject_unknown(j, {"kind", "c0", "c1"}, "atan exponent");
        return atan_exponent(need_number(j, "c0", kind), need_number(j, "c1", kind));
    }
    if (kind == "conjugate") {
        reject_unknown(j, {"kind", "of"}, "conjugate exponent");
        return conjugate(exponent_from_json(j.at("of")));
    }
    throw ConfigError("unknown exponent kind \"" + kind + "\"");
}

json weight_to_json(const WeightSpec& w) {
    if (w.kind == WeightSpec::Kind::Power)
        return {{"kind", "power"},
                {"nodes", w.nodes},
                {"powers", w.powers},
                {"lambda_inf", w.lambda_inf}};
    json j = {{"kind", "generic"}, {"expr", expr_to_json(w.expr)}};
    if (w.inverted) j["inverted"] = true;
    return j;
}

WeightSpec weight_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw ConfigError("weight must be an object with a \"kind\"");
    std::string kind = j["kind"].get<std::string>();
    if (kind == "power") {
        reject_unknown(j, {"kind", "nodes", "powers", "lambda_inf"}, "power weight");
        return power_weight(j.value("nodes", std::vector<double>{}),
                            j.value("powers", std::vector<double>{}),
                            j.value("lambda_inf", 0.0));
    }
    if (kind == "generic") {
        reject_unknown(j, {"kind", "expr", "inverted"}, "generic weight");
        WeightSpec w = generic_weight(expr_from_json(j.at("expr")));
        w.inverted = j.value("inverted", false);
        return w;
    }
    throw ConfigError("unknown weight kind \"" + kind + "\"");
}

RunConfig config_from_json(const json& j) {
    reject_unknown(j,
                   {"grid", "exponent", "weight", "suites", "family", "levels", "seed",
                    "out_dir", "f", "lambda"},
                   "config");
    RunConfig c;
    if (j.contains("grid")) {
        const json& g = j["grid"];
        reject_unknown(g, {"L", "n", "depth"}, "grid");
        c.grid.half_width = g.value("L", 16.0);
        c.grid.n_points = g.value("n", 4097);
        c.grid.depth = g.value("depth", 8);
    }
    if (j.contains("exponent")) c.exponent = exponent_from_json(j["exponent"]);
    if (j.contains("weight")) c.weight = weight_from_json(j["weight"]);
    if (j.contains("suites")) c.suites = j["suites"].get<std::vector<std::string>>();
    if (j.contains("family")) c.family = j["family"].get<std::string>();
    c.levels = j.value("levels", 8);
    c.seed = j.value("seed", 42u);
    c.out_dir = j.value("out_dir", std::string("out"));
    if (j.contains("f")) c.f = expr_from_json(j["f"]);
    c.lambda = j.value("lambda", 1.0);

    if (!(c.grid.half_width > 0.0)) throw ConfigError("grid.L must be positive");
    if (c.grid.n_points < 33) throw ConfigError("grid.n must be at least 33");
    if (c.levels < 3) throw ConfigError("levels must be at least 3");
    if (c.weight.kind == WeightSpec::Kind::Power)
        for (double node : c.weight.nodes)
            if (c.grid.half_width < 2.0 * std::abs(node))
                throw ConfigError("grid.L must exceed twice the largest weight node");
    return c;
}

RunConfig parse_config_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        // byte offset -> line number
        size_t line = 1;
        for (size_t i = 0; i < std::min(e.byte, text.size()); ++i)
            if (text[i] == '\n') ++line;
        throw ConfigError("config parse error at line " + std::to_string(line) + ": " +
                          e.what());
    }
    return config_from_json(j);
}

json config_to_json(const RunConfig& c) {
    json j;
    j["grid"] = {{"L", c.grid.half_width}, {"n", c.grid.n_points}, {"depth", c.grid.depth}};
    j["exponent"] = exponent_to_json(c.exponent);
    j["weight"] = weight_to_json(c.weight);
    j["suites"] = c.suites;
    j["family"] = c.family;
    j["levels"] = c.levels;
    j["seed"] = c.seed;
    j["out_dir"] = c.out_dir;
    if (c.f) j["f"] = expr_to_json(c.f);
    j["lambda"] = c.lambda;
    return j;
}

namespace {

json finite_or_token(double v) {
    if (std::isinf(v)) return v > 0 ? json("+inf") : json("-inf");
    if (std::isnan(v)) return json("nan");
    return json(v);
}

}  // namespace

json verify_report_to_json(const VerifyReport& r) {
    json cases = json::array();
    for (const auto& c : r.cases)
        cases.push_back({{"name", c.name},
                         {"lhs", finite_or_token(c.lhs)},
                         {"rhs", finite_or_token(c.rhs)},
                         {"ratio", finite_or_token(c.ratio)},
                         {"pass", c.pass},
                         {"asserted", c.asserted}});
    return {{"suite", r.suite},
            {"cases", cases},
            {"worst_ratio", finite_or_token(r.worst_ratio)},
            {"pass", r.pass},
            {"tolerance_note", r.tolerance_note},
            {"grid", {{"L", r.grid.half_width}, {"n", r.grid.n_points}, {"depth", r.grid.depth}}}};
}

json ap_report_to_json(const ApReport& r) {
    json intervals = json::array();
    for (const auto& v : r.per_interval)
        intervals.push_back({{"a", v.q.a},
                             {"b", v.q.b},
                             {"value", finite_or_token(v.value)},
                             {"desk_value", finite_or_token(v.desk_value)},
                             {"divergent", v.divergent}});
    return {{"sup_estimate", finite_or_token(r.sup_estimate)},
            {"divergent", r.divergent},
            {"argmax", {{"a", r.argmax.a}, {"b", r.argmax.b}}},
            {"level_trace", r.level_trace},
            {"infinity_trace", r.infinity_trace},
            {"levels", r.levels},
            {"qualifier", r.qualifier},
            {"intervals", intervals}};
}

std::string csv_number(double v) {
    if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string verify_report_csv(const VerifyReport& r) {
    std::string out = "case,lhs,rhs,ratio,pass,asserted\n";
    for (const auto& c : r.cases) {
        out += c.name + "," + csv_number(c.lhs) + "," + csv_number(c.rhs) + "," +
               csv_number(c.ratio) + "," + (c.pass ? "1" : "0") + "," +
               (c.asserted ? "1" : "0") + "\n";
    }
    return out;
}

std::string ap_report_csv(const ApReport& r) {
    std::string out = "a,b,value\n";
    for (const auto& v : r.per_interval)
        out += csv_number(v.q.a) + "," + csv_number(v.q.b) + "," + csv_number(v.value) + "\n";
    return out;
}

int thread_cap() {
    const char* env = std::getenv("VLEB_THREADS");
    if (!env) return static_cast<int>(std::thread::hardware_concurrency());
    int v = std::atoi(env);
    if (v <= 0) return static_cast<int>(std::thread::hardware_concurrency());
    return v;
}

}  // namespace vleb
