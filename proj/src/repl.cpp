#include <iostream>
#include <map>
#include <regex>
#include <sstream>

#include "cli_support.hpp"
#include "hyperset/cli.hpp"
#include "hyperset/equations.hpp"
#include "hyperset/errors.hpp"
#include "hyperset/modal.hpp"
#include "hyperset/vr_events.hpp"

namespace hyperset::cli {

namespace {

const char* kHelp =
    "  x = {y, z}; y = {}     bind variables (may mention earlier ones)\n"
    "  show V                 print a set\n"
    "  members V              list members\n"
    "  wf V                   wellfoundedness\n"
    "  eq V W                 extensional equality\n"
    "  unfold V K             rank-K unfolding, stored in _\n"
    "  sat V FORMULA          model check, e.g. sat x dia(top)\n"
    "  char V K               characteristic formula\n"
    "  meq V W K              modal equivalence up to rank K\n"
    "  classify [V ...]       classify variables as events\n"
    "  vars                   list bindings\n"
    "  quit\n";

class Session {
public:
    explicit Session(std::ostream& out) : out_(out) {}

    // Returns false on quit.
    bool handle(const std::string& line) {
        std::istringstream is(line);
        std::string verb;
        is >> verb;
        if (verb.empty() || verb.front() == '#') return true;
        if (verb == "quit" || verb == "exit") return false;
        if (is_binding(line)) {
            bind(line);
            return true;
        }
        if (verb == "help") {
            out_ << kHelp;
        } else if (verb == "vars") {
            for (const auto& [name, value] : env_) out_ << name << " = " << to_string(value) << "\n";
        } else if (verb == "show") {
            out_ << to_string(lookup(word(is))) << "\n";
        } else if (verb == "members") {
            out_ << join_sets(members(lookup(word(is)))) << "\n";
        } else if (verb == "wf") {
            out_ << (is_wellfounded(lookup(word(is))) ? "true" : "false") << "\n";
        } else if (verb == "eq") {
            const HyperSet a = lookup(word(is));
            out_ << (equals(a, lookup(word(is))) ? "true" : "false") << "\n";
        } else if (verb == "unfold") {
            const HyperSet a = lookup(word(is));
            const HyperSet u = unfold(a, number(is));
            env_["_"] = u;
            out_ << to_string(u) << "\n";
        } else if (verb == "sat") {
            const HyperSet a = lookup(word(is));
            std::string rest;
            std::getline(is, rest);
            out_ << (modal::satisfies(a, modal::parse_formula(rest)) ? "true" : "false") << "\n";
        } else if (verb == "char") {
            const HyperSet a = lookup(word(is));
            out_ << modal::to_string(modal::char_formula(a, number(is))) << "\n";
        } else if (verb == "meq") {
            const HyperSet a = lookup(word(is));
            const HyperSet b = lookup(word(is));
            out_ << (modal::modally_equivalent(a, b, number(is)) ? "true" : "false") << "\n";
        } else if (verb == "classify") {
            classify(is);
        } else {
            throw Error("unknown command '" + verb + "' (try 'help')");
        }
        return true;
    }

private:
    static bool is_binding(const std::string& line) {
        static const std::regex binding(R"(^\s*[A-Za-z_][A-Za-z0-9_]*\s*=)");
        return std::regex_search(line, binding);
    }

    static std::string word(std::istream& is) {
        std::string w;
        if (!(is >> w)) throw Error("missing argument");
        return w;
    }

    static std::uint32_t number(std::istream& is) {
        const std::string w = word(is);
        if (w.empty() || w.find_first_not_of("0123456789") != std::string::npos || w.size() > 9) {
            throw Error("expected a nonnegative integer, got '" + w + "'");
        }
        return static_cast<std::uint32_t>(std::stoul(w));
    }

    HyperSet lookup(const std::string& name) const {
        auto it = env_.find(name);
        if (it == env_.end()) throw Error("unbound variable '" + name + "'");
        return it->second;
    }

    // Members may refer to variables of the same line or to earlier
    // bindings; earlier values are spliced in as extra equations.
    void bind(const std::string& line) {
        EquationText eqs = parse_equations(line);
        if (eqs.root) throw Error("'root' has no meaning in the REPL");
        std::map<std::string, bool> local;
        for (const auto& eq : eqs.equations) local[eq.name] = true;

        std::string text;
        std::map<std::string, std::string> spliced;
        for (auto& eq : eqs.equations) {
            for (std::size_t k = 0; k < eq.members.size(); ++k) {
                auto& m = eq.members[k];
                if (local.count(m)) continue;
                auto it = spliced.find(m);
                if (it == spliced.end()) {
                    auto env_it = env_.find(m);
                    if (env_it == env_.end()) throw UnknownVariable(m, eq.member_pos[k]);
                    it = spliced.emplace(m, splice(m, env_it->second, text)).first;
                }
                m = it->second;
            }
        }
        for (const auto& eq : eqs.equations) {
            text += eq.name + " = {";
            for (std::size_t k = 0; k < eq.members.size(); ++k) text += (k ? ", " : "") + eq.members[k];
            text += "}\n";
        }
        const EquationSolution sol = solve_equations(text);
        for (const auto& eq : eqs.equations) {
            const HyperSet v = sol.at(eq.name);
            env_[eq.name] = v;
            out_ << eq.name << " = " << to_string(v) << "\n";
        }
    }

    // Appends equations for `value` under fresh names; returns its root name.
    std::string splice(const std::string& name, HyperSet value, std::string& text) {
        const System& pic = value.picture();
        const std::string prefix = "__" + std::to_string(splices_++) + "_" + (name == "_" ? "last" : name) + "_";
        for (std::uint32_t x = 0; x < pic.size(); ++x) {
            text += prefix + std::to_string(x) + " = {";
            bool first = true;
            for (NodeId y : pic.children(NodeId{x})) {
                text += (first ? "" : ", ") + prefix + std::to_string(y.value);
                first = false;
            }
            text += "}\n";
        }
        return prefix + std::to_string(pic.root().value);
    }

    void classify(std::istream& is) {
        vr::UniverseRegistry reg("repl");
        std::string name;
        while (is >> name) reg.register_value(name, "repl", lookup(name));
        if (reg.empty()) {
            for (const auto& [n, v] : env_) {
                if (n != "_") reg.register_value(n, "repl", v);
            }
        }
        out_ << vr::classification_report(reg);
    }

    std::ostream& out_;
    std::map<std::string, HyperSet> env_;
    std::size_t splices_ = 0;
};

}  // namespace

int repl(std::istream& in, std::ostream& out, const std::string& prompt) {
    Session session(out);
    std::string line;
    for (;;) {
        if (!prompt.empty()) out << prompt << std::flush;
        if (!std::getline(in, line)) break;
        try {
            if (!session.handle(line)) break;
        } catch (const Error& e) {
            out << "error: " << e.what() << "\n";
        }
    }
    return kOk;
}

}  // namespace hyperset::cli
