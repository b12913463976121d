#include <cctype>
#include <string>

#include "hyperset/modal.hpp"

namespace hyperset::modal {

namespace {

// Recursive descent over
//   F := 'top' | 'bot' | 'not' F | NAME '(' [F {',' F}] ')'
// with NAME one of and, or, delta (any arity) or dia, box (arity one).
class FormulaParser {
public:
    explicit FormulaParser(std::string_view text) : text_(text) {}

    Formula parse() {
        Formula f = formula(0);
        skip_blank();
        if (i_ < text_.size()) fail("unexpected trailing input");
        return f;
    }

private:
    static constexpr std::size_t kMaxDepth = 10'000;

    Formula formula(std::size_t depth) {
        if (depth > kMaxDepth) fail("formula nested too deeply");
        skip_blank();
        const SourcePos at = pos_;
        const std::string word = keyword();
        if (word.empty()) fail(i_ < text_.size() ? "expected a formula" : "unexpected end of input");
        if (word == "top") return Formula::top().with_pos(at);
        if (word == "bot") return Formula::bot().with_pos(at);
        if (word == "not") return Formula::neg(formula(depth + 1)).with_pos(at);

        Kind kind;
        if (word == "and") {
            kind = Kind::And;
        } else if (word == "or") {
            kind = Kind::Or;
        } else if (word == "delta") {
            kind = Kind::Delta;
        } else if (word == "dia") {
            kind = Kind::Dia;
        } else if (word == "box") {
            kind = Kind::Box;
        } else {
            throw SyntaxError("unknown operator '" + word + "'", at);
        }

        expect('(');
        std::vector<Formula> args;
        skip_blank();
        if (peek() != ')') {
            for (;;) {
                args.push_back(formula(depth + 1));
                skip_blank();
                if (peek() != ',') break;
                advance();
            }
        }
        expect(')');

        switch (kind) {
            case Kind::And: return Formula::conj(std::move(args)).with_pos(at);
            case Kind::Or: return Formula::disj(std::move(args)).with_pos(at);
            case Kind::Delta: return Formula::delta(std::move(args)).with_pos(at);
            default: break;
        }
        if (args.size() != 1) throw SyntaxError("'" + word + "' takes exactly one argument", at);
        return (kind == Kind::Dia ? Formula::dia(std::move(args[0])) : Formula::box(std::move(args[0]))).with_pos(at);
    }

    std::string keyword() {
        std::string out;
        while (i_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[i_]))) {
            out += text_[i_];
            advance();
        }
        return out;
    }

    char peek() const { return i_ < text_.size() ? text_[i_] : '\0'; }

    void expect(char c) {
        skip_blank();
        if (peek() != c) {
            fail(std::string("expected '") + c + "'");
        }
        advance();
    }

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
        while (i_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[i_]))) advance();
    }

    [[noreturn]] void fail(const std::string& message) const { throw SyntaxError(message, pos_); }

    std::string_view text_;
    std::size_t i_ = 0;
    SourcePos pos_;
};

}  // namespace

Formula parse_formula(std::string_view text) { return FormulaParser(text).parse(); }

}  // namespace hyperset::modal
