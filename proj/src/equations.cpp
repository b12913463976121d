#include "hyperset/equations.hpp"

#include <cctype>
#include <unordered_map>

namespace hyperset {

namespace {

enum class Tok { Ident, Equals, LBrace, RBrace, Comma, Semi, End };

struct Token {
    Tok kind;
    std::string_view text;
    SourcePos pos;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    Token next() {
        skip_blank();
        SourcePos at = pos_;
        if (i_ >= text_.size()) return {Tok::End, {}, at};
        char c = text_[i_];
        if (ident_start(c)) {
            std::size_t start = i_;
            while (i_ < text_.size() && ident_char(text_[i_])) advance();
            return {Tok::Ident, text_.substr(start, i_ - start), at};
        }
        advance();
        switch (c) {
            case '=': return {Tok::Equals, "=", at};
            case '{': return {Tok::LBrace, "{", at};
            case '}': return {Tok::RBrace, "}", at};
            case ',': return {Tok::Comma, ",", at};
            case ';': return {Tok::Semi, ";", at};
            default: break;
        }
        throw SyntaxError(std::string("unexpected character '") + c + "'", at);
    }

private:
    void advance() {
        if (text_[i_] == '\n') {
            ++pos_.line;
            pos_.column = 1;
        } else {
            ++pos_.column;
        }
        ++i_;
        pos_.offset = i_;
    }

    void skip_blank() {
        while (i_ < text_.size()) {
            char c = text_[i_];
            if (c == '#') {
                while (i_ < text_.size() && text_[i_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    std::string_view text_;
    std::size_t i_ = 0;
    SourcePos pos_;
};

class Parser {
public:
    explicit Parser(std::string_view text) : lex_(text) { tok_ = lex_.next(); }

    EquationText parse() {
        EquationText out;
        std::unordered_map<std::string_view, SourcePos> declared;
        while (tok_.kind != Tok::End) {
            if (tok_.kind == Tok::Semi) {
                shift();
                continue;
            }
            Token head = expect(Tok::Ident, "a variable name or 'root'");
            if (head.text == "root" && tok_.kind == Tok::Ident) {
                if (out.root) throw SyntaxError("'root' given more than once", head.pos);
                out.root = std::string(tok_.text);
                out.root_pos = tok_.pos;
                shift();
                continue;
            }
            Equation eq;
            eq.name = std::string(head.text);
            eq.pos = head.pos;
            if (!declared.emplace(head.text, head.pos).second) {
                throw SyntaxError("variable '" + eq.name + "' defined twice", head.pos);
            }
            expect(Tok::Equals, "'='");
            expect(Tok::LBrace, "'{'");
            if (tok_.kind != Tok::RBrace) {
                for (;;) {
                    Token m = expect(Tok::Ident, "a member name");
                    eq.members.emplace_back(m.text);
                    eq.member_pos.push_back(m.pos);
                    if (tok_.kind != Tok::Comma) break;
                    shift();
                }
            }
            expect(Tok::RBrace, "',' or '}'");
            out.equations.push_back(std::move(eq));
        }
        return out;
    }

private:
    void shift() { tok_ = lex_.next(); }

    Token expect(Tok kind, const char* what) {
        if (tok_.kind != kind) {
            std::string found = tok_.kind == Tok::End ? "end of input" : "'" + std::string(tok_.text) + "'";
            throw SyntaxError(std::string("expected ") + what + ", found " + found, tok_.pos);
        }
        Token t = tok_;
        shift();
        return t;
    }

    Lexer lex_;
    Token tok_;
};

}  // namespace

bool is_identifier(std::string_view s) {
    if (s.empty() || !ident_start(s.front())) return false;
    for (char c : s) {
        if (!ident_char(c)) return false;
    }
    return true;
}

EquationText parse_equations(std::string_view text) { return Parser(text).parse(); }

System to_system(const EquationText& eqs, std::optional<std::string_view> root) {
    std::unordered_map<std::string_view, std::uint32_t> index;
    std::vector<std::string> labels;
    for (const auto& eq : eqs.equations) {
        index.emplace(eq.name, static_cast<std::uint32_t>(labels.size()));
        labels.push_back(eq.name);
    }
    std::vector<Edge> edges;
    for (std::uint32_t i = 0; i < eqs.equations.size(); ++i) {
        const auto& eq = eqs.equations[i];
        for (std::size_t k = 0; k < eq.members.size(); ++k) {
            auto it = index.find(eq.members[k]);
            if (it == index.end()) throw UnknownVariable(eq.members[k], eq.member_pos[k]);
            edges.emplace_back(NodeId{i}, NodeId{it->second});
        }
    }
    std::string_view root_name;
    SourcePos root_pos = eqs.root_pos;
    if (root) {
        root_name = *root;
        root_pos = {};
    } else if (eqs.root) {
        root_name = *eqs.root;
    } else {
        throw NoRoot();
    }
    auto it = index.find(root_name);
    if (it == index.end()) throw UnknownVariable(std::string(root_name), root_pos);
    const std::size_t count = labels.size();
    return System::from_edges(count, edges, NodeId{it->second}, std::move(labels));
}

System parse_system(std::string_view text) { return to_system(parse_equations(text)); }

}  // namespace hyperset
