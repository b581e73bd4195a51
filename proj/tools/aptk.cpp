#include "builtins/builtins.hpp"
#include "ktheory/report.hpp"
#include "substitution/parse.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace aptk;

namespace {

struct RunConfig {
    std::string format = "text";
    bool allow_nonprimitive = false;
    bool dump = false;
    double budget = 0;  // seconds; 0 = unlimited
    std::string verify = "auto";
    unsigned seed = 0;
};

struct BudgetExceeded {};

class Stopwatch {
public:
    explicit Stopwatch(double budget) : budget_(budget), start_(clock::now()) {}
    void check() const {
        if (budget_ <= 0) return;
        double s = std::chrono::duration<double>(clock::now() - start_).count();
        if (s > budget_) throw BudgetExceeded{};
    }

private:
    using clock = std::chrono::steady_clock;
    double budget_;
    clock::time_point start_;
};

SubstitutionRule load_rule(const std::string& spec) {
    if (spec.rfind("builtin:", 0) == 0) {
        return builtin_rule(spec.substr(8));
    }
    std::ifstream in(spec);
    if (!in) throw RuleError("cannot open rule file '" + spec + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_rule(buf.str());
}

ClassifyOptions classify_options(const RunConfig& cfg) {
    ClassifyOptions opt;
    if (cfg.verify == "on") opt.verify = VerifyMode::on;
    else if (cfg.verify == "off") opt.verify = VerifyMode::off;
    else opt.verify = VerifyMode::automatic;
    return opt;
}

int classification_status(const KTheoryReport& r) {
    for (const LimitGroup* g : {&r.k0_af, &r.k0_af_u, &r.k0_u, &r.k1_u, &r.k1_af_u})
        if (g->status != LimitGroup::Status::classified) return 2;
    return 0;
}

int cmd_validate(const std::string& spec, const RunConfig& cfg) {
    SubstitutionRule r = load_rule(spec);
    r.validate(cfg.allow_nonprimitive);
    std::cout << "ok: " << (r.name.empty() ? spec : r.name) << " (" << r.prototile_count()
              << " prototiles, dimension " << r.dimension << ")\n";
    return 0;
}

int cmd_collar(const std::string& spec, const RunConfig& cfg, const Stopwatch& watch) {
    SubstitutionRule r = load_rule(spec);
    r.validate(cfg.allow_nonprimitive);
    watch.check();
    CollarOptions copt;
    copt.allow_nonprimitive = cfg.allow_nonprimitive;
    CollaredRule cr = collar_rule(r, copt);
    watch.check();
    if (cfg.format == "json") {
        std::ostringstream os;
        os << "{\n  \"rule\": \"" << r.name << "\",\n  \"cp\": " << cr.count()
           << ",\n  \"power\": " << cr.power << ",\n  \"tiles\": [\n";
        for (int i = 0; i < cr.count(); ++i) {
            os << "    {\"core\": \"" << r.tiles[cr.tiles[i].core].label << "\"";
            if (r.dimension == 1) {
                os << ", \"left\": \"" << r.tiles[cr.tiles[i].left].label << "\", \"right\": \""
                   << r.tiles[cr.tiles[i].right].label << "\"";
            } else {
                os << ", \"collar\": [";
                bool first = true;
                for (const auto& t : cr.tiles[i].collar.tiles) {
                    os << (first ? "" : ", ") << "{\"tile\": \"" << r.tiles[t.proto].label
                       << "\", \"translation\": [" << t.t.x.str() << ", " << t.t.y.str()
                       << "]}";
                    first = false;
                }
                os << "]";
            }
            os << "}" << (i + 1 < cr.count() ? "," : "") << "\n";
        }
        os << "  ]\n}\n";
        std::cout << os.str();
    } else {
        std::cout << "rule: " << r.name << "\ncollared prototiles: " << cr.count()
                  << " (substitution power " << cr.power << ")\n";
        for (int i = 0; i < cr.count(); ++i) {
            if (r.dimension == 1)
                std::cout << "  (" << r.tiles[cr.tiles[i].left].label << ")"
                          << r.tiles[cr.tiles[i].core].label << "("
                          << r.tiles[cr.tiles[i].right].label << ")\n";
            else {
                std::cout << "  core " << r.tiles[cr.tiles[i].core].label << ", collar of "
                          << cr.tiles[i].collar.tiles.size() - 1 << " tiles\n";
            }
        }
    }
    return 0;
}

int cmd_complex(const std::string& spec, const RunConfig& cfg, const Stopwatch& watch) {
    SubstitutionRule r = load_rule(spec);
    r.validate(cfg.allow_nonprimitive);
    watch.check();
    CollarOptions copt;
    copt.allow_nonprimitive = cfg.allow_nonprimitive;
    CollaredRule cr = collar_rule(r, copt);
    watch.check();
    BuildOptions bopt;
    bopt.orientation_seed = cfg.seed;
    ApComplex cx = build_complex(cr, bopt);
    CochainSystem cs = cochain_system(cx);
    watch.check();
    Diagnostics d = cx.diagnostics();
    if (cfg.format == "json" || cfg.dump) {
        std::cout << dump_complex(cx, cs);
    } else {
        std::cout << "rule: " << r.name << "\n";
        if (cs.dimension == 2) {
            std::cout << "cells: " << cs.c2 << " two-cells, " << cs.c1 << " one-cells, "
                      << cs.c0 << " zero-cells\n";
            std::cout << "diagnostics: CP=" << d.cp << " PI=" << d.pi << " L(PI)=" << d.l_pi
                      << " FT=" << d.ft << " L(FT)=" << d.l_ft << "\n";
            std::cout << "hyperplane condition: " << (cs.hyperplane_ok ? "holds" : "fails")
                      << "\n";
        } else {
            std::cout << "cells: " << cs.c1 << " one-cells, " << cs.c0 << " zero-cells\n";
        }
        std::cout << "sigma_top = " << (cs.dimension == 2 ? cs.sigma2 : cs.sigma1).str() << "\n";
        std::cout << "delta0 = " << cs.delta0.str() << "\n";
        if (cs.dimension == 2) std::cout << "delta1 = " << cs.delta1.str() << "\n";
    }
    return 0;
}

int cmd_ktheory(const std::string& spec, const RunConfig& cfg, const Stopwatch& watch) {
    SubstitutionRule r = load_rule(spec);
    r.validate(cfg.allow_nonprimitive);
    watch.check();
    CollarOptions copt;
    copt.allow_nonprimitive = cfg.allow_nonprimitive;
    BuildOptions bopt;
    bopt.orientation_seed = cfg.seed;
    CollaredRule cr = collar_rule(r, copt);
    watch.check();
    ApComplex cx = build_complex(cr, bopt);
    CochainSystem cs = cochain_system(cx);
    watch.check();
    KTheoryReport rep = cs.dimension == 1 ? compute_d1(cs, classify_options(cfg))
                                          : compute_d2(cs, classify_options(cfg));
    rep.rule_name = r.name.empty() ? spec : r.name;
    rep.diag = cx.diagnostics();
    rep.collar_power = cr.power;
    rep.components = r.component_count();
    watch.check();
    if (cfg.dump) std::cout << dump_complex(cx, cs);
    std::cout << render_report(rep, cfg.format == "json" ? ReportFormat::structured
                                                         : ReportFormat::text);
    return classification_status(rep);
}

int cmd_table(const std::vector<std::string>& specs, const RunConfig& cfg,
              const Stopwatch& watch) {
    std::cout << table_header() << "\n";
    int status = 0;
    for (const auto& spec : specs) {
        SubstitutionRule r = load_rule(spec);
        r.validate(cfg.allow_nonprimitive);
        CollarOptions copt;
        copt.allow_nonprimitive = cfg.allow_nonprimitive;
        PipelineResult pr = run_pipeline(r, classify_options(cfg), copt, {});
        pr.report.rule_name = r.name.empty() ? spec : r.name;
        std::cout << table_row(pr.report) << "\n";
        status = std::max(status, classification_status(pr.report));
        watch.check();
    }
    return status;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact K-theory of substitution tiling spaces via collared Anderson-Putnam complexes"};
    app.require_subcommand(1);
    RunConfig cfg;
    app.add_option("--format", cfg.format, "output format: text | json")
        ->check(CLI::IsMember({"text", "json"}));
    app.add_flag("--allow-nonprimitive", cfg.allow_nonprimitive,
                 "accept rules whose abelianization is not primitive");
    app.add_flag("--dump-complex", cfg.dump, "emit the full cell complex dump");
    app.add_option("--budget", cfg.budget, "time budget in seconds (0 = unlimited)");
    app.add_option("--verify-splitting", cfg.verify, "splitting verification: on | off | auto")
        ->check(CLI::IsMember({"on", "off", "auto"}));
    app.add_option("--seed", cfg.seed, "seed for re-randomized orientation choices");

    std::string rule_arg;
    std::vector<std::string> rule_args;
    auto* v = app.add_subcommand("validate", "parse a rule file and check its invariants");
    v->add_option("rule", rule_arg, "rule file path or builtin:<name>")->required();
    auto* c = app.add_subcommand("collar", "emit the collared prototiles");
    c->add_option("rule", rule_arg)->required();
    auto* x = app.add_subcommand("complex", "emit cells, matrices and diagnostics");
    x->add_option("rule", rule_arg)->required();
    auto* k = app.add_subcommand("ktheory", "full K-theory report");
    k->add_option("rule", rule_arg)->required();
    auto* t = app.add_subcommand("table", "summary row per rule");
    t->add_option("rules", rule_args)->required();
    auto* l = app.add_subcommand("list", "list builtin rules");
    for (auto* sub : {v, c, x, k, t, l}) sub->fallthrough();

    CLI11_PARSE(app, argc, argv);
    Stopwatch watch(cfg.budget);
    try {
        if (app.got_subcommand(l)) {
            for (const auto& n : builtin_names()) std::cout << "builtin:" << n << "\n";
            return 0;
        }
        if (app.got_subcommand(v)) return cmd_validate(rule_arg, cfg);
        if (app.got_subcommand(c)) return cmd_collar(rule_arg, cfg, watch);
        if (app.got_subcommand(x)) return cmd_complex(rule_arg, cfg, watch);
        if (app.got_subcommand(k)) return cmd_ktheory(rule_arg, cfg, watch);
        if (app.got_subcommand(t)) return cmd_table(rule_args, cfg, watch);
    } catch (const BudgetExceeded&) {
        std::cerr << "error: time budget exceeded\n";
        return 3;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const RuleError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
