#include "hyperset/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <unistd.h>

#include "CLI11.hpp"
#include "cli_support.hpp"
#include "hyperset/bisim.hpp"
#include "hyperset/equations.hpp"
#include "hyperset/errors.hpp"
#include "hyperset/fixtures.hpp"
#include "hyperset/generate.hpp"
#include "hyperset/modal.hpp"
#include "hyperset/vr_events.hpp"
#include "json.hpp"

namespace hyperset::cli {

using nlohmann::json;

Reference parse_reference(std::string_view arg) {
    const auto colon = arg.rfind(':');
    if (colon != std::string_view::npos && colon > 0 && is_identifier(arg.substr(colon + 1))) {
        return {std::string(arg.substr(0, colon)), std::string(arg.substr(colon + 1))};
    }
    return {std::string(arg), std::nullopt};
}

std::string load_text(const std::string& file) {
    if (!file.empty() && file.front() == '@') {
        if (auto text = fixtures::lookup(file.substr(1))) return std::string(*text);
        throw Error("no built-in fixture named '" + file.substr(1) + "'");
    }
    std::ifstream in(file, std::ios::binary);
    if (!in) throw Error("cannot open '" + file + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

System reference_picture(const Reference& ref) {
    const std::string text = load_text(ref.file);
    const EquationText eqs = parse_equations(text);
    if (ref.var) return to_system(eqs, *ref.var);
    return to_system(eqs);
}

HyperSet reference_value(const Reference& ref) { return decorate(reference_picture(ref)); }

std::string join_sets(const std::vector<HyperSet>& sets) {
    std::string out = "[";
    for (std::size_t i = 0; i < sets.size(); ++i) {
        if (i > 0) out += ", ";
        out += to_string(sets[i]);
    }
    return out + "]";
}

namespace {

struct Options {
    bool json = false;
    bool show_canonical = false;
    std::size_t budget = modal::kDefaultBudget;
};

std::string indent(const std::string& text) {
    std::string out;
    std::istringstream is(text);
    for (std::string line; std::getline(is, line);) out += "  " + line + "\n";
    return out;
}

json set_json(HyperSet a, bool with_picture) {
    json j{{"set", to_string(a)}, {"wellfounded", is_wellfounded(a)}, {"nodes", a.picture().size()}};
    if (with_picture) j["canonical"] = to_json(a.picture());
    return j;
}

void print_bool(std::ostream& out, const Options& opt, const char* key, bool value) {
    if (opt.json) {
        out << json{{key, value}}.dump() << "\n";
    } else {
        out << (value ? "true" : "false") << "\n";
    }
}

void cmd_solve(std::ostream& out, const Options& opt, const std::string& file) {
    const EquationSolution sol = solve_equations(load_text(file));
    if (opt.json) {
        json vars = json::array();
        for (const auto& [name, value] : sol) {
            json v = set_json(value, opt.show_canonical);
            v["name"] = name;
            vars.push_back(std::move(v));
        }
        out << json{{"variables", std::move(vars)}}.dump() << "\n";
        return;
    }
    for (const auto& [name, value] : sol) {
        out << name << " = " << to_string(value) << "  (" << (is_wellfounded(value) ? "wellfounded" : "non-wellfounded")
            << ", " << value.picture().size() << (value.picture().size() == 1 ? " node" : " nodes") << ")\n";
        if (opt.show_canonical) out << indent(render_equations(value.picture()));
    }
}

void cmd_minimize(std::ostream& out, const Options& opt, const std::string& arg) {
    const HyperSet value = reference_value(parse_reference(arg));
    if (opt.json) {
        out << to_json(value.picture()).dump() << "\n";
    } else {
        out << render_equations(value.picture());
    }
}

void cmd_unfold(std::ostream& out, const Options& opt, const std::string& arg, std::uint32_t rank) {
    const HyperSet value = unfold(reference_value(parse_reference(arg)), rank);
    if (opt.json) {
        out << set_json(value, opt.show_canonical).dump() << "\n";
        return;
    }
    out << to_string(value) << "\n";
    if (opt.show_canonical) out << indent(render_equations(value.picture()));
}

void cmd_char(std::ostream& out, const Options& opt, const std::string& arg, std::uint32_t rank) {
    const auto f = modal::char_formula(reference_value(parse_reference(arg)), rank, opt.budget);
    const std::string text = modal::to_string(f, opt.budget);
    if (opt.json) {
        out << json{{"formula", text}, {"dag_size", f.dag_size()}}.dump() << "\n";
    } else {
        out << text << "\n";
    }
}

void cmd_classify(std::ostream& out, const Options& opt, const std::string& file) {
    json doc;
    try {
        doc = json::parse(load_text(file));
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("invalid JSON: ") + e.what());
    }
    const vr::UniverseRegistry reg = vr::registry_from_json(doc);
    if (opt.json) {
        out << vr::classification_report_json(reg).dump() << "\n";
    } else {
        out << vr::classification_report(reg);
    }
}

void cmd_export_dot(std::ostream& out, const Options& opt, const std::string& arg) {
    System pic = reference_picture(parse_reference(arg));
    if (opt.show_canonical) pic = canonicalize(pic);
    const std::string dot = export_dot(pic);
    if (opt.json) {
        out << json{{"dot", dot}}.dump() << "\n";
    } else {
        out << dot;
    }
}

void cmd_bench(std::ostream& out, const Options& opt, std::uint32_t nodes, double density, std::uint64_t seed) {
    const System s = random_system({nodes, density, false, seed});
    const auto start = std::chrono::steady_clock::now();
    const Partition p = refine_partition(s);
    const auto stop = std::chrono::steady_clock::now();
    const System q = quotient(s);
    const bool minimal = refine_partition(q).block_count() == q.size();
    const double ms = std::chrono::duration<double, std::milli>(stop - start).count();
    if (opt.json) {
        out << json{{"nodes", s.size()},     {"edges", s.edge_count()},         {"refine_ms", ms},
                    {"blocks", p.block_count()}, {"quotient_nodes", q.size()}, {"minimal", minimal}}
                   .dump()
            << "\n";
        return;
    }
    out << std::left << std::setw(10) << "nodes" << std::setw(10) << "edges" << std::setw(12) << "refine_ms"
        << std::setw(16) << "quotient_nodes" << "minimal\n";
    out << std::setw(10) << s.size() << std::setw(10) << s.edge_count() << std::setw(12) << std::fixed
        << std::setprecision(2) << ms << std::setw(16) << q.size() << (minimal ? "yes" : "no") << "\n";
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Non-wellfounded set engine", "hyperset"};
    app.require_subcommand(1);
    Options opt;
    app.add_flag("--json", opt.json, "Machine-readable output");
    app.add_flag("--show-canonical", opt.show_canonical, "Also print canonical pictures");
    app.add_option("--budget", opt.budget, "Formula size budget")->check(CLI::PositiveNumber);

    std::string a, b, text;
    std::uint32_t rank = 0;
    auto* solve = app.add_subcommand("solve", "Solve every variable of an equation file");
    solve->add_option("file", a)->required();
    auto* check_eq = app.add_subcommand("check-eq", "Decide whether two references denote the same set");
    check_eq->add_option("first", a)->required();
    check_eq->add_option("second", b)->required();
    auto* wf = app.add_subcommand("wf", "Is the set wellfounded");
    wf->add_option("ref", a)->required();
    auto* minimize = app.add_subcommand("minimize", "Print the canonical picture");
    minimize->add_option("ref", a)->required();
    auto* unfold_cmd = app.add_subcommand("unfold", "Rank-k unfolding");
    unfold_cmd->add_option("ref", a)->required();
    unfold_cmd->add_option("rank", rank)->required();
    auto* sat = app.add_subcommand("sat", "Model-check a modal formula");
    sat->add_option("ref", a)->required();
    sat->add_option("formula", text)->required();
    auto* char_cmd = app.add_subcommand("char", "Characteristic formula of rank k");
    char_cmd->add_option("ref", a)->required();
    char_cmd->add_option("rank", rank)->required();
    auto* modal_eq = app.add_subcommand("modal-eq", "Agreement on characteristic formulas up to rank k");
    modal_eq->add_option("first", a)->required();
    modal_eq->add_option("second", b)->required();
    modal_eq->add_option("rank", rank)->required();
    auto* classify = app.add_subcommand("classify", "Classify an event registry");
    classify->add_option("registry", a)->required();
    auto* dot = app.add_subcommand("export-dot", "Graphviz output");
    dot->add_option("ref", a)->required();
    std::uint32_t nodes = 1000;
    double density = 3.0;
    std::uint64_t seed = 1;
    auto* bench = app.add_subcommand("bench", "Time partition refinement on a random system");
    bench->add_option("--nodes", nodes)->check(CLI::PositiveNumber);
    bench->add_option("--density", density)->check(CLI::NonNegativeNumber);
    bench->add_option("--seed", seed);
    auto* repl_cmd = app.add_subcommand("repl", "Interactive session");
    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsageError;
    }

    try {
        if (solve->parsed()) {
            cmd_solve(out, opt, a);
        } else if (check_eq->parsed()) {
            const bool same = equals(reference_value(parse_reference(a)), reference_value(parse_reference(b)));
            if (opt.json) {
                out << json{{"equal", same}}.dump() << "\n";
            } else {
                out << (same ? "equal" : "not equal") << "\n";
            }
        } else if (wf->parsed()) {
            print_bool(out, opt, "wellfounded", is_wellfounded(reference_value(parse_reference(a))));
        } else if (minimize->parsed()) {
            cmd_minimize(out, opt, a);
        } else if (unfold_cmd->parsed()) {
            cmd_unfold(out, opt, a, rank);
        } else if (sat->parsed()) {
            const auto f = modal::parse_formula(text);
            print_bool(out, opt, "satisfies", modal::satisfies(reference_value(parse_reference(a)), f));
        } else if (char_cmd->parsed()) {
            cmd_char(out, opt, a, rank);
        } else if (modal_eq->parsed()) {
            print_bool(out, opt, "equivalent",
                       modal::modally_equivalent(reference_value(parse_reference(a)),
                                                 reference_value(parse_reference(b)), rank, opt.budget));
        } else if (classify->parsed()) {
            cmd_classify(out, opt, a);
        } else if (dot->parsed()) {
            cmd_export_dot(out, opt, a);
        } else if (bench->parsed()) {
            cmd_bench(out, opt, nodes, density, seed);
        } else if (repl_cmd->parsed()) {
            return repl(std::cin, out, isatty(STDIN_FILENO) ? "> " : "");
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kDomainError;
    }
    return kOk;
}

}  // namespace hyperset::cli
