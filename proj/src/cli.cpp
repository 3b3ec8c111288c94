#include "possloc/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "possloc/audit.hpp"
#include "possloc/coloring.hpp"
#include "possloc/fixtures.hpp"
#include "possloc/io.hpp"
#include "possloc/solver.hpp"
#include "possloc/sweep.hpp"

namespace possloc {

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void spill(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write '" + path + "'");
    out << text;
}

PossibilityTable load_possibility(const std::string& path) {
    ParsedTable t = parse_table(slurp(path));
    if (const PossibilityTable* p = std::get_if<PossibilityTable>(&t)) return *p;
    throw std::invalid_argument("'" + path + "' holds probabilities, expected a POSSLOC table");
}

ProbabilityTable load_probability(const std::string& path) {
    ParsedTable t = parse_table(slurp(path));
    if (const ProbabilityTable* p = std::get_if<ProbabilityTable>(&t)) return *p;
    throw std::invalid_argument("'" + path + "' holds bits, expected a PROBLOC table");
}

void warn_signalling(const PossibilityTable& t, std::ostream& err) {
    auto v = check_no_signalling(t);
    if (!v.empty())
        err << "warning: table violates possibilistic no-signalling ("
            << v.size() << " marginal disagreements)\n";
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
    if (out_path.empty())
        out << text;
    else
        spill(out_path, text);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"possloc: possibilistic locality decision toolkit"};
    app.require_subcommand(1);

    std::string input, output, certificate, family = "hardy";
    double eps = kDefaultEps;
    int r = 2, jobs = 1, resolution = 64, max_vars = 4, max_clauses = 3;
    long samples = 0;
    uint64_t seed = 0;
    bool exit_status = false, emit_possibilities = false;

    auto* cmd_check = app.add_subcommand("check", "decide possibilistic locality");
    cmd_check->add_option("input", input)->required();
    cmd_check->add_option("--certificate", certificate);
    cmd_check->add_flag("--exit-status", exit_status);

    auto* cmd_verify = app.add_subcommand("verify", "verify a locality certificate");
    cmd_verify->add_option("input", input)->required();
    cmd_verify->add_option("--certificate", certificate)->required();
    cmd_verify->add_flag("--exit-status", exit_status);

    auto* cmd_hardy = app.add_subcommand("hardy", "scan for the two-outcome pattern");
    cmd_hardy->add_option("input", input)->required();
    cmd_hardy->add_flag("--exit-status", exit_status);

    auto* cmd_nosig = app.add_subcommand("nosig", "check possibilistic no-signalling");
    cmd_nosig->add_option("input", input)->required();
    cmd_nosig->add_flag("--exit-status", exit_status);

    auto* cmd_gen = app.add_subcommand("gen", "write a named fixture table");
    cmd_gen->add_option("input", input, "fixture name")->required();
    cmd_gen->add_option("-o,--output", output);

    auto* cmd_encode = app.add_subcommand("encode", "encode a 3-CNF as a possibility table");
    cmd_encode->add_option("input", input)->required();
    cmd_encode->add_option("-o,--output", output);

    auto* cmd_harden = app.add_subcommand("harden", "apply the 0/1-validity transform");
    cmd_harden->add_option("input", input)->required();
    cmd_harden->add_option("-o,--output", output);

    auto* cmd_robust = app.add_subcommand("robust", "exhaustive r-robustness check");
    cmd_robust->add_option("input", input)->required();
    cmd_robust->add_option("--r", r);
    cmd_robust->add_flag("--exit-status", exit_status);

    auto* cmd_decode = app.add_subcommand("decode", "read an assignment off a grid");
    cmd_decode->add_option("input", input, "cnf file")->required();
    cmd_decode->add_option("--certificate", certificate, "grid file")->required();

    auto* cmd_audit = app.add_subcommand("audit", "audit the reduction equivalences");
    cmd_audit->add_option("--max-vars", max_vars);
    cmd_audit->add_option("--max-clauses", max_clauses);
    cmd_audit->add_option("--samples", samples);
    cmd_audit->add_option("--seed", seed)->required();
    cmd_audit->add_option("--jobs", jobs);

    auto* cmd_qtable = app.add_subcommand("qtable", "tables of a GEOM scenario");
    cmd_qtable->add_option("input", input)->required();
    cmd_qtable->add_option("-o,--output", output);
    cmd_qtable->add_option("--eps", eps);
    cmd_qtable->add_flag("--possibilistic", emit_possibilities);

    auto* cmd_sweep = app.add_subcommand("sweep", "paradoxical-probability sweep");
    cmd_sweep->add_option("--family", family)->check(CLI::IsMember({"hardy", "gen_hardy"}));
    cmd_sweep->add_option("--resolution", resolution);
    cmd_sweep->add_option("--jobs", jobs);

    std::vector<std::string> argv = args;  // CLI11 wants reversed argv without argv[0]
    std::reverse(argv.begin(), argv.end());
    try {
        app.parse(argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (cmd_check->parsed()) {
            PossibilityTable t = load_possibility(input);
            warn_signalling(t, err);
            LocalityVerdict v = decide_local(t);
            if (v.status == Locality::Local)
                out << "LOCAL\n";
            else
                out << "NONLOCAL event=" << format_event(t, *v.witness) << '\n';
            if (!certificate.empty()) spill(certificate, serialize_certificate(t, v));
            return exit_status ? (v.status == Locality::Nonlocal ? 1 : 0) : 0;
        }
        if (cmd_verify->parsed()) {
            PossibilityTable t = load_possibility(input);
            std::ifstream cin_(certificate);
            if (!cin_) throw std::invalid_argument("cannot open '" + certificate + "'");
            LocalityVerdict v = parse_certificate(cin_, t.scenario());
            bool ok = verify_certificate(t, v);
            out << (ok ? "VALID" : "INVALID") << '\n';
            return exit_status ? (ok ? 0 : 1) : 0;
        }
        if (cmd_hardy->parsed()) {
            PossibilityTable t = load_possibility(input);
            auto p = hardy_scan(t);
            if (!p) {
                out << "NONE\n";
                return 0;
            }
            out << "PATTERN a1=" << p->a1 << " a2=" << p->a2 << " b1=" << p->b1
                << " b2=" << p->b2 << " alpha=" << p->alpha << " beta=" << p->beta
                << " alpha'=" << p->alpha_prime << " beta'=" << p->beta_prime << '\n';
            return exit_status ? 1 : 0;
        }
        if (cmd_nosig->parsed()) {
            PossibilityTable t = load_possibility(input);
            auto vs = check_no_signalling(t);
            for (const Violation& v : vs)
                out << "VIOLATION party=" << (v.alice_side ? "alice" : "bob")
                    << " meas=" << v.meas << " outcome=" << v.outcome << " contexts=("
                    << v.context_a << "," << v.context_b << ")\n";
            if (vs.empty()) out << "NO-SIGNALLING\n";
            return exit_status ? (vs.empty() ? 0 : 1) : 0;
        }
        if (cmd_gen->parsed()) {
            emit(serialize_table(fixture(input)), output, out);
            return 0;
        }
        if (cmd_encode->parsed()) {
            CnfInstance cnf = normalize(parse_dimacs(slurp(input)));
            auto [t, map] = encode_possloc(cnf);
            emit(serialize_table(t), output, out);
            return 0;
        }
        if (cmd_harden->parsed()) {
            CnfInstance cnf = normalize(parse_dimacs(slurp(input)));
            auto [hc, map] = harden(cnf);
            std::ostringstream os;
            os << "c hardened: x=" << map.x_var + 1 << " y=" << map.y_var + 1;
            for (auto [ci, z] : map.bridge_vars) os << " z(" << ci + 1 << ")=" << z + 1;
            os << '\n' << serialize_dimacs(hc);
            emit(os.str(), output, out);
            return 0;
        }
        if (cmd_robust->parsed()) {
            CnfInstance cnf = normalize(parse_dimacs(slurp(input)));
            Robustness rob = is_r_robust(cnf, r);
            if (rob.robust) {
                out << "ROBUST r=" << r << '\n';
                return 0;
            }
            out << "NOT-ROBUST r=" << r << " fixing=";
            for (size_t i = 0; i < rob.counterexample.size(); ++i) {
                if (i) out << ',';
                out << rob.counterexample[i].variable + 1 << '='
                    << (rob.counterexample[i].value ? 1 : 0);
            }
            out << '\n';
            return exit_status ? 1 : 0;
        }
        if (cmd_decode->parsed()) {
            CnfInstance cnf = normalize(parse_dimacs(slurp(input)));
            auto [t, map] = encode_possloc(cnf);
            std::ifstream gin(certificate);
            if (!gin) throw std::invalid_argument("cannot open '" + certificate + "'");
            LocalityVerdict v = parse_certificate(gin, t.scenario());
            if (v.certificate.empty())
                throw std::invalid_argument("no grid lines in '" + certificate + "'");
            Assignment a = decode_grid(map, v.certificate.front());
            out << "ASSIGNMENT";
            for (size_t i = 0; i < a.size(); ++i) out << ' ' << i + 1 << '=' << (a[i] ? 1 : 0);
            out << '\n';
            return 0;
        }
        if (cmd_audit->parsed()) {
            AuditReport rep = audit_equivalence(max_vars, max_clauses, samples, seed, jobs);
            out << rep.to_text();
            return 0;
        }
        if (cmd_qtable->parsed()) {
            GeometricScenario geom = parse_geom(slurp(input));
            auto [probs, bits] = generate_tables(geom, eps);
            emit(emit_possibilities ? serialize_table(bits) : serialize_table(probs), output,
                 out);
            return 0;
        }
        if (cmd_sweep->parsed()) {
            Family f = family == "hardy" ? Family::Hardy : Family::GenHardy;
            SweepResult res = sweep_paradox(f, resolution, jobs);
            out << "SWEEP family=" << family << " resolution=" << resolution << " best=";
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.9f", res.best_value);
            out << buf << " params=";
            for (size_t i = 0; i < res.best_params.size(); ++i) {
                if (i) out << ',';
                std::snprintf(buf, sizeof buf, "%.9f", res.best_params[i]);
                out << buf;
            }
            out << '\n';
            return 0;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    err << "error: no command\n";
    return 2;
}

}  // namespace possloc
