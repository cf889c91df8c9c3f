// Command-line driver: config in, JSON report + per-suite CSV out.
//
// Subcommands: norm, modular, apply-s, apply-m, ap-check, ks-check,
// verify <suite>, sweep. Exit status: 0 when every asserted check passes,
// 1 on an assertion failure, 2 on an invalid config.

#include <CLI11.hpp>

#include <filesystem>
#include <limits>
#include <fstream>
#include <iostream>

#include "vleb/cauchy.hpp"
#include "vleb/io.hpp"
#include "vleb/maximal.hpp"
#include "vleb/verify.hpp"

namespace fs = std::filesystem;
using namespace vleb;

namespace {

constexpr const char* kVersion = "vleb 0.1.0";

struct Emitter {
    fs::path dir;
    json suites = json::object();
    bool all_pass = true;

    void add_suite(const std::string& name, const json& body, bool pass) {
        suites[name] = body;
        all_pass = all_pass && pass;
    }
    void add_csv(const std::string& name, const std::string& text) const {
        std::ofstream out(dir / (name + ".csv"), std::ios::binary);
        out << text;
    }
    void finish(const RunConfig& cfg) const {
        json report = {{"version", kVersion}, {"suites", suites}};
        std::ofstream r(dir / "report.json", std::ios::binary);
        r << report.dump(2) << "\n";

        json manifest = {{"version", kVersion},
                         {"config", config_to_json(cfg)},
                         {"grid",
                          {{"L", cfg.grid.half_width},
                           {"n", cfg.grid.n_points},
                           {"depth", cfg.grid.depth},
                           {"coarse_cell", 2.0 * cfg.grid.half_width / (cfg.grid.n_points - 1)}}}};
        std::ofstream m(dir / "manifest.json", std::ios::binary);
        m << manifest.dump(2) << "\n";
    }
};

ExprPtr config_function(const RunConfig& cfg) {
    return cfg.f ? cfg.f : char_fun(0.0, 1.0);
}

GridPtr config_grid(const RunConfig& cfg, const ExprPtr& e) {
    std::vector<double> nodes;
    if (e) e->collect_breakpoints(nodes);
    if (cfg.weight.kind == WeightSpec::Kind::Power)
        nodes.insert(nodes.end(), cfg.weight.nodes.begin(), cfg.weight.nodes.end());
    return make_grid_ptr(cfg.grid.half_width, cfg.grid.n_points, nodes, cfg.grid.depth);
}

json norm_result_json(const NormResult& n) {
    json j;
    j["value"] = n.divergent ? json("+inf") : json(n.value);
    j["divergent"] = n.divergent;
    j["bracket"] = {n.bracket_lo, n.bracket_hi};
    j["modular_at_value"] = n.modular_at_value;
    j["desk_value"] = n.desk_value;
    return j;
}

bool run_norm(const RunConfig& cfg, Emitter& em) {
    ExprPtr e = config_function(cfg);
    GridPtr g = config_grid(cfg, e);
    NormResult n = weighted_norm(sample(e, g), cfg.exponent, cfg.weight);
    em.add_suite("norm", norm_result_json(n), true);
    em.add_csv("norm", "name,value\nnorm," +
                           csv_number(n.divergent
                                          ? std::numeric_limits<double>::infinity()
                                          : n.value) +
                           "\n");
    return true;
}

bool run_modular(const RunConfig& cfg, Emitter& em) {
    ExprPtr e = config_function(cfg);
    GridPtr g = config_grid(cfg, e);
    ModularResult m = modular(sample(e, g), cfg.exponent, cfg.lambda);
    json j;
    j["value"] = m.divergent ? json("+inf") : json(m.value);
    j["divergent"] = m.divergent;
    j["trace"] = m.trace;
    j["trace_depths"] = m.trace_depths;
    em.add_suite("modular", j, true);
    std::string csv = "depth,value\n";
    for (size_t i = 0; i < m.trace.size(); ++i)
        csv += csv_number(m.trace_depths[i]) + "," + csv_number(m.trace[i]) + "\n";
    em.add_csv("modular", csv);
    return true;
}

bool run_apply_s(const RunConfig& cfg, Emitter& em) {
    ExprPtr e = config_function(cfg);
    GridPtr g = config_grid(cfg, e);
    GridFunction sf = cauchy_transform(sample(e, g));
    std::string csv = "x,re,im,flagged\n";
    for (size_t i = 0; i < g->points.size(); ++i)
        csv += csv_number(g->points[i]) + "," + csv_number(sf.values[i].real()) + "," +
               csv_number(sf.values[i].imag()) + "," + (sf.excluded[i] ? "1" : "0") + "\n";
    em.add_csv("apply-s", csv);
    em.add_suite("apply-s",
                 {{"points", g->points.size()},
                  {"tail_coef_abs", std::abs(sf.tail ? sf.tail->coef : cplx(0.0))}},
                 true);
    return true;
}

bool run_apply_m(const RunConfig& cfg, Emitter& em) {
    ExprPtr e = config_function(cfg);
    GridPtr g = config_grid(cfg, e);
    GridFunction mf = maximal_function(sample(e, g));
    std::string csv = "x,value\n";
    for (size_t i = 0; i < g->points.size(); ++i)
        csv += csv_number(g->points[i]) + "," + csv_number(mf.values[i].real()) + "\n";
    em.add_csv("apply-m", csv);
    em.add_suite("apply-m", {{"points", g->points.size()}}, true);
    return true;
}

bool run_ap_check(const RunConfig& cfg, Emitter& em) {
    Classification c = classify(cfg.exponent, cfg.weight, cfg.levels, cfg.grid);
    json j = {{"in_class", c.in_class}, {"report", ap_report_to_json(c.report)}};
    if (c.ks) {
        j["ks_verdict"] = c.ks->verdict;
        j["concordant"] = (c.ks->verdict == c.in_class);
    }
    em.add_suite("ap", j, true);
    em.add_csv("ap", ap_report_csv(c.report));
    return true;
}

bool run_ks_check(const RunConfig& cfg, Emitter& em) {
    KsReport r = ks_criterion(cfg.exponent, cfg.weight);
    json locals = json::array();
    for (const auto& lc : r.local_checks)
        locals.push_back({{"node", lc.node}, {"quantity", lc.quantity}, {"pass", lc.pass}});
    em.add_suite("ks",
                 {{"locals", locals},
                  {"infinity_quantity", r.infinity_quantity},
                  {"infinity_pass", r.infinity_pass},
                  {"verdict", r.verdict},
                  {"p_constant_outside_nodes", r.p_constant_outside_nodes}},
                 true);
    std::string csv = "check,quantity,pass\n";
    for (const auto& lc : r.local_checks)
        csv += "node_" + csv_number(lc.node) + "," + csv_number(lc.quantity) + "," +
               (lc.pass ? "1" : "0") + "\n";
    csv += "infinity," + csv_number(r.infinity_quantity) + "," + (r.infinity_pass ? "1" : "0") +
           "\n";
    em.add_csv("ks", csv);
    return true;
}

std::vector<ExprPtr> select_family(const RunConfig& cfg, const std::vector<double>& nodes) {
    const double L = cfg.grid.half_width;
    if (cfg.family == "chars") return family_chars(L);
    if (cfg.family == "dipoles") return family_dipoles(L);
    if (cfg.family == "bumps")
        return family_bumps(nodes.empty() ? std::vector<double>{0.0} : nodes,
                            {1.0, 0.25, 0.0625});
    if (cfg.family == "random") return random_family(L, 24, cfg.seed);
    if (cfg.family != "default")
        throw ConfigError("unknown family \"" + cfg.family + "\"");
    return family_default(L, nodes);
}

bool run_verify_suite(const std::string& name, const RunConfig& cfg, Emitter& em) {
    const double L = cfg.grid.half_width;
    std::vector<double> nodes = cfg.weight.kind == WeightSpec::Kind::Power
                                    ? cfg.weight.nodes
                                    : std::vector<double>{};
    if (name == "s-squared") {
        std::vector<int> meshes;
        for (int n = cfg.grid.n_points / 4; n <= cfg.grid.n_points; n *= 2)
            meshes.push_back(n + ((n & 1) ? 0 : 1));
        auto fam = family_dipoles(L);
        for (auto& b : family_bumps({0.0}, {1.0, 0.5})) fam.push_back(b);
        VerifyReport r = check_s_squared(fam, cfg.exponent, cfg.weight, cfg.grid, meshes);
        em.add_suite(r.suite, verify_report_to_json(r), r.pass);
        em.add_csv(r.suite, verify_report_csv(r));
        return r.pass;
    }
    if (name == "self-adjoint") {
        std::vector<std::pair<ExprPtr, ExprPtr>> pairs;
        auto fam = select_family(cfg, nodes);
        for (size_t i = 0; i + 1 < fam.size() && pairs.size() < 12; i += 2)
            pairs.push_back({fam[i], fam[i + 1]});
        VerifyReport r = check_self_adjoint(pairs, cfg.grid);
        em.add_suite(r.suite, verify_report_to_json(r), r.pass);
        em.add_csv(r.suite, verify_report_csv(r));
        return r.pass;
    }
    if (name == "weak-type") {
        VerifyReport r = check_weak_type(family_chars(L), cfg.grid);
        em.add_suite(r.suite, verify_report_to_json(r), r.pass);
        em.add_csv(r.suite, verify_report_csv(r));
        return r.pass;
    }
    if (name == "sharp-chain") {
        GridConfig small = cfg.grid;
        small.n_points = std::min(small.n_points, 257);
        small.depth = std::min(small.depth, 4);
        std::vector<ExprPtr> sources = {char_fun(0.0, 1.0), char_fun(-2.0, -0.5)};
        bool pass = true;
        json bundle = json::object();
        std::string csv = "combo,case,lhs,rhs,ratio,pass,asserted\n";
        for (double delta : {0.5, 1.0}) {
            for (double lambda : {0.25, 0.5}) {
                VerifyReport r =
                    check_sharp_chain(sources, char_fun(0.0, 1.0), delta, lambda, small);
                pass = pass && r.pass;
                std::string combo = "d" + csv_number(delta) + "_l" + csv_number(lambda);
                bundle[combo] = verify_report_to_json(r);
                for (const auto& c : r.cases)
                    csv += combo + "," + c.name + "," + csv_number(c.lhs) + "," +
                           csv_number(c.rhs) + "," + csv_number(c.ratio) + "," +
                           (c.pass ? "1" : "0") + "," + (c.asserted ? "1" : "0") + "\n";
            }
        }
        bundle["pass"] = pass;
        em.add_suite("sharp-chain", bundle, pass);
        em.add_csv("sharp-chain", csv);
        return pass;
    }
    if (name == "opnorm") {
        auto fam = select_family(cfg, nodes);
        double lb = operator_norm_lower_bound(cfg.exponent, cfg.weight, fam, cfg.grid);
        em.add_suite("opnorm", {{"lower_bound", lb}, {"family_size", fam.size()}}, true);
        em.add_csv("opnorm", "name,value\nlower_bound," + csv_number(lb) + "\n");
        return true;
    }
    if (name == "necessity") {
        VerifyReport r =
            necessity_probe(cfg.exponent, cfg.weight, {-1.0, 1.0}, cfg.grid);
        em.add_suite(r.suite, verify_report_to_json(r), r.pass);
        em.add_csv(r.suite, verify_report_csv(r));
        return r.pass;
    }
    throw ConfigError("unknown verify suite \"" + name + "\"");
}

bool run_sweep(const RunConfig& cfg, Emitter& em) {
    const std::vector<double> lams = {-0.6, -0.4, -0.2, 0.0, 0.2, 0.4, 0.6};
    VariableExponent p2 = const_exponent(2.0);
    std::string csv = "lambda,ks_verdict,ap_divergent,norm_ratio_l1,norm_ratio_l2,norm_ratio_l3\n";
    json rows = json::array();
    bool concordant = true;

    GridConfig ratio_cfg = cfg.grid;
    ratio_cfg.depth = std::max(ratio_cfg.depth, 64);  // resolve the thin bumps

    for (double lam : lams) {
        WeightSpec w = power_weight({0.0}, {lam});
        KsReport ks = ks_criterion(p2, w);
        Classification cls = classify(p2, w, cfg.levels, cfg.grid);
        std::vector<double> ratios;
        for (double r : sweep_radii())
            ratios.push_back(norm_ratio(p2, w, bump(0.0, r), ratio_cfg));
        concordant = concordant && (ks.verdict == cls.in_class);
        csv += csv_number(lam) + "," + (ks.verdict ? "1" : "0") + "," +
               (cls.report.divergent ? "1" : "0") + "," + csv_number(ratios[0]) + "," +
               csv_number(ratios[1]) + "," + csv_number(ratios[2]) + "\n";
        json row = {{"lambda", lam},
                    {"ks_verdict", ks.verdict},
                    {"ap_divergent", cls.report.divergent},
                    {"level_trace", cls.report.level_trace}};
        json jr = json::array();
        for (double r : ratios)
            jr.push_back(std::isinf(r) ? json("+inf") : json(r));
        row["norm_ratios"] = jr;
        rows.push_back(row);
    }
    em.add_suite("sweep", {{"rows", rows}, {"concordant", concordant}}, concordant);
    em.add_csv("sweep", csv);
    return concordant;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical toolkit for weighted variable Lebesgue spaces"};
    app.set_version_flag("--version", kVersion);
    app.fallthrough();

    std::string config_path, out_dir;
    int grid_n = 0;
    int seed = -1;
    app.add_option("--config", config_path, "JSON configuration file");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--grid-n", grid_n, "override mesh point count");
    app.add_option("--seed", seed, "override the random seed");

    app.require_subcommand(0, 1);
    auto* sc_norm = app.add_subcommand("norm", "Luxemburg norm of the test function");
    auto* sc_modular = app.add_subcommand("modular", "modular of the test function");
    auto* sc_apply_s = app.add_subcommand("apply-s", "apply the singular integral");
    auto* sc_apply_m = app.add_subcommand("apply-m", "apply the maximal operator");
    auto* sc_ap = app.add_subcommand("ap-check", "interval-class membership estimate");
    auto* sc_ks = app.add_subcommand("ks-check", "power-weight criterion");
    auto* sc_verify = app.add_subcommand("verify", "run a verification suite");
    std::string suite_name;
    sc_verify->add_option("suite", suite_name, "suite name or 'all'");
    auto* sc_sweep = app.add_subcommand("sweep", "power sweep across the class boundary");

    CLI11_PARSE(app, argc, argv);

    try {
        RunConfig cfg;
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw ConfigError("cannot open config \"" + config_path + "\"");
            std::string text((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
            cfg = parse_config_text(text);
        }
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        if (grid_n > 0) cfg.grid.n_points = grid_n;
        if (seed >= 0) cfg.seed = static_cast<unsigned>(seed);

        Emitter em;
        em.dir = cfg.out_dir;
        fs::create_directories(em.dir);

        bool ok = true;
        auto run_named = [&](const std::string& s) {
            if (s == "norm") return run_norm(cfg, em);
            if (s == "modular") return run_modular(cfg, em);
            if (s == "apply-s") return run_apply_s(cfg, em);
            if (s == "apply-m") return run_apply_m(cfg, em);
            if (s == "ap") return run_ap_check(cfg, em);
            if (s == "ks") return run_ks_check(cfg, em);
            if (s == "sweep") return run_sweep(cfg, em);
            return run_verify_suite(s, cfg, em);
        };

        if (sc_norm->parsed()) ok = run_norm(cfg, em);
        else if (sc_modular->parsed()) ok = run_modular(cfg, em);
        else if (sc_apply_s->parsed()) ok = run_apply_s(cfg, em);
        else if (sc_apply_m->parsed()) ok = run_apply_m(cfg, em);
        else if (sc_ap->parsed()) ok = run_ap_check(cfg, em);
        else if (sc_ks->parsed()) ok = run_ks_check(cfg, em);
        else if (sc_sweep->parsed()) ok = run_sweep(cfg, em);
        else if (sc_verify->parsed()) {
            std::vector<std::string> names;
            if (!suite_name.empty() && suite_name != "all") {
                names = {suite_name};
            } else if (suite_name.empty() && !cfg.suites.empty()) {
                names = cfg.suites;
            } else {
                names = {"s-squared", "self-adjoint", "weak-type", "sharp-chain", "opnorm",
                         "necessity"};
            }
            for (const auto& s : names) ok = run_named(s) && ok;
        } else {
            // no subcommand: run the suites named in the config
            if (cfg.suites.empty())
                throw ConfigError("no subcommand given and no suites in the config");
            for (const auto& s : cfg.suites) ok = run_named(s) && ok;
        }

        em.finish(cfg);
        return ok ? 0 : 1;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
