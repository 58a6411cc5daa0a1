#include "qc/parser.hpp"

#include <array>
#include <optional>
#include <vector>

namespace qc {

ParseError::ParseError(std::size_t line_, std::size_t column_, const std::string& message_)
    : std::runtime_error("syntax error at line " + std::to_string(line_) + ", column " + std::to_string(column_) + ": " +
                         message_),
      line(line_),
      column(column_),
      message(message_) {}

namespace {

enum class Tok {
    Ident,
    In,
    NotIn,
    Eq,
    Neq,
    Not,
    And,
    Or,
    Imp,
    Iff,
    Forall,
    Exists,
    Dot,
    LParen,
    LBracket,
    RParen,
    RBracket,
    Reserved,
    End,
};

struct Token {
    Tok kind;
    std::string text;
    std::size_t line;
    std::size_t column;
};

struct Symbol {
    std::string_view spelling;
    Tok kind;
};

// Longest spellings first so that "<->" wins over "->".
constexpr std::array<Symbol, 22> kSymbols{{
    {"<->", Tok::Iff},   {"->", Tok::Imp},    {"!=", Tok::Neq},    {"∈", Tok::In},      {"∉", Tok::NotIn},
    {"≠", Tok::Neq},     {"¬", Tok::Not},     {"∧", Tok::And},     {"∨", Tok::Or},      {"→", Tok::Imp},
    {"↔", Tok::Iff},     {"∀", Tok::Forall},  {"∃", Tok::Exists},  {"~", Tok::Not},     {"&", Tok::And},
    {"|", Tok::Or},      {"=", Tok::Eq},      {".", Tok::Dot},     {"(", Tok::LParen},  {")", Tok::RParen},
    {"[", Tok::LBracket}, {"]", Tok::RBracket},
}};

bool ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }
bool ident_char(char c) { return ident_start(c) || (c >= '0' && c <= '9') || c == '\'' || c == '*'; }

std::vector<Token> lex(std::string_view text) {
    std::vector<Token> out;
    std::size_t line = 1;
    std::size_t column = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t bytes) {
        // Columns count code points, not bytes.
        for (std::size_t k = 0; k < bytes; ++k) {
            if ((static_cast<unsigned char>(text[i + k]) & 0xC0) != 0x80) ++column;
        }
        i += bytes;
    };
    while (i < text.size()) {
        char c = text[i];
        if (c == '\n') {
            ++line;
            column = 1;
            ++i;
            continue;
        }
        if (c == ' ' || c == '\t' || c == '\r') {
            advance(1);
            continue;
        }
        if (c == '#') {
            while (i < text.size() && text[i] != '\n') ++i;
            continue;
        }
        if (ident_start(c)) {
            std::size_t j = i;
            while (j < text.size() && ident_char(text[j])) ++j;
            std::string word{text.substr(i, j - i)};
            Tok kind = Tok::Ident;
            if (word == "in") kind = Tok::In;
            else if (word == "A" || word == "forall") kind = Tok::Forall;
            else if (word == "E" || word == "exists") kind = Tok::Exists;
            out.push_back({kind, word, line, column});
            advance(j - i);
            continue;
        }
        bool matched = false;
        for (const Symbol& s : kSymbols) {
            if (text.substr(i).starts_with(s.spelling)) {
                out.push_back({s.kind, std::string{s.spelling}, line, column});
                advance(s.spelling.size());
                matched = true;
                break;
            }
        }
        if (!matched) {
            std::size_t len = 1;
            auto lead = static_cast<unsigned char>(c);
            if (lead >= 0xF0) len = 4;
            else if (lead >= 0xE0) len = 3;
            else if (lead >= 0xC0) len = 2;
            throw ParseError(line, column, "unexpected character '" + std::string{text.substr(i, len)} + "'");
        }
    }
    out.push_back({Tok::End, "", line, column});
    return out;
}

std::string describe(const Token& t) {
    if (t.kind == Tok::End) return "end of input";
    return "'" + t.text + "'";
}

bool is_keyword_word(const Token& t) {
    return t.kind == Tok::In || t.kind == Tok::Forall || t.kind == Tok::Exists;
}

class Parser {
public:
    explicit Parser(std::string_view text) : tokens_(lex(text)) {}

    Formula parse_all() {
        Formula f = parse_iff();
        if (peek().kind != Tok::End) {
            fail(peek(), "expected end of input, found " + describe(peek()));
        }
        return f;
    }

    SurfaceStats stats;

private:
    const Token& peek() const { return tokens_[pos_]; }
    const Token& take() { return tokens_[pos_++]; }

    [[noreturn]] static void fail(const Token& at, const std::string& message) {
        throw ParseError(at.line, at.column, message);
    }

    Variable expect_variable() {
        const Token& t = take();
        if (t.kind == Tok::Ident) return Variable{t.text};
        if (is_keyword_word(t)) fail(t, "reserved word '" + t.text + "' cannot be used as a variable");
        fail(t, "expected a variable, found " + describe(t));
    }

    Formula parse_iff() {
        Formula lhs = parse_imp();
        while (peek().kind == Tok::Iff) {
            take();
            ++stats.connectives;
            Formula rhs = parse_imp();
            lhs = Formula::biconditional(std::move(lhs), std::move(rhs));
        }
        return lhs;
    }

    Formula parse_imp() {
        Formula lhs = parse_or();
        if (peek().kind != Tok::Imp) return lhs;
        take();
        ++stats.connectives;
        Formula rhs = parse_imp();
        return Formula::implication(std::move(lhs), std::move(rhs));
    }

    Formula parse_or() {
        Formula lhs = parse_and();
        while (peek().kind == Tok::Or) {
            take();
            ++stats.connectives;
            Formula rhs = parse_and();
            lhs = Formula::disjunction(std::move(lhs), std::move(rhs));
        }
        return lhs;
    }

    Formula parse_and() {
        Formula lhs = parse_unary();
        while (peek().kind == Tok::And) {
            take();
            ++stats.connectives;
            Formula rhs = parse_unary();
            lhs = Formula::conjunction(std::move(lhs), std::move(rhs));
        }
        return lhs;
    }

    Formula parse_unary() {
        const Token& t = peek();
        switch (t.kind) {
        case Tok::Not:
            take();
            ++stats.negations;
            return Formula::negation(parse_unary());
        case Tok::Forall:
        case Tok::Exists:
            return parse_quantifier();
        case Tok::LParen:
        case Tok::LBracket: {
            Tok close = t.kind == Tok::LParen ? Tok::RParen : Tok::RBracket;
            const Token& open = take();
            Formula inner = parse_iff();
            const Token& end = take();
            if (end.kind != close) {
                fail(end, "expected '" + std::string{close == Tok::RParen ? ")" : "]"} + "' to close '" + open.text +
                              "' opened at line " + std::to_string(open.line) + ", column " +
                              std::to_string(open.column) + ", found " + describe(end));
            }
            stats.parentheses += 2;
            return inner;
        }
        case Tok::Ident:
            return parse_atom();
        default:
            if (t.kind == Tok::In) fail(t, "reserved word 'in' cannot be used as a variable");
            fail(t, "expected a formula, found " + describe(t));
        }
    }

    Formula parse_atom() {
        Variable lhs = expect_variable();
        const Token& rel = take();
        switch (rel.kind) {
        case Tok::In:
        case Tok::Eq:
        case Tok::NotIn:
        case Tok::Neq:
            break;
        default:
            fail(rel, "expected 'in', '=', '∉' or '≠' after variable, found " + describe(rel));
        }
        Variable rhs = expect_variable();
        ++stats.atoms;
        switch (rel.kind) {
        case Tok::In:
            return Formula::member(std::move(lhs), std::move(rhs));
        case Tok::Eq:
            return Formula::equal(std::move(lhs), std::move(rhs));
        case Tok::NotIn:
            ++stats.negations;
            return not_member(std::move(lhs), std::move(rhs));
        default:
            ++stats.negations;
            return not_equal(std::move(lhs), std::move(rhs));
        }
    }

    Formula parse_quantifier() {
        Quantifier q = take().kind == Tok::Forall ? Quantifier::Forall : Quantifier::Exists;
        ++stats.quantifiers;
        Variable v = expect_variable();
        std::optional<Variable> bound;
        if (peek().kind == Tok::In) {
            take();
            bound = expect_variable();
            ++stats.atoms;
            ++stats.connectives;
        }
        Formula body = [&] {
            if (peek().kind == Tok::Dot) {
                take();
                return parse_iff();
            }
            return parse_unary();
        }();
        if (!bound) return Formula::quantified(q, std::move(v), std::move(body));
        if (q == Quantifier::Forall) return forall_in(std::move(v), std::move(*bound), std::move(body));
        return exists_in(std::move(v), std::move(*bound), std::move(body));
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

// Binding strength; quantifiers extend rightward and need an open right edge.
int level(Kind k) {
    switch (k) {
    case Kind::Iff: return 1;
    case Kind::Implies: return 2;
    case Kind::Or: return 3;
    case Kind::And: return 4;
    default: return 5;
    }
}

struct Spelling {
    std::string_view member, equal, negation, conj, disj, imp, iff, all, some;
};

constexpr Spelling kAscii{" in ", " = ", "~", " & ", " | ", " -> ", " <-> ", "A ", "E "};
constexpr Spelling kUnicode{" ∈ ", " = ", "¬", " ∧ ", " ∨ ", " → ", " ↔ ", "∀", "∃"};

void emit(const Formula& f, int min_level, bool open_right, const Spelling& sp, std::string& out) {
    switch (f.kind()) {
    case Kind::Member:
    case Kind::Equal:
        out += f.lhs().name();
        out += f.kind() == Kind::Member ? sp.member : sp.equal;
        out += f.rhs().name();
        return;
    case Kind::Not:
        out += sp.negation;
        emit(f.child(), 5, open_right, sp, out);
        return;
    case Kind::Forall:
    case Kind::Exists: {
        bool parens = !open_right;
        if (parens) out += '(';
        out += f.kind() == Kind::Forall ? sp.all : sp.some;
        out += f.bound().name();
        out += ". ";
        emit(f.child(), 1, true, sp, out);
        if (parens) out += ')';
        return;
    }
    default: {
        int lv = level(f.kind());
        bool parens = lv < min_level;
        bool right_assoc = f.kind() == Kind::Implies;
        if (parens) out += '(';
        emit(f.left(), right_assoc ? lv + 1 : lv, false, sp, out);
        switch (f.kind()) {
        case Kind::And: out += sp.conj; break;
        case Kind::Or: out += sp.disj; break;
        case Kind::Implies: out += sp.imp; break;
        default: out += sp.iff; break;
        }
        emit(f.right(), right_assoc ? lv : lv + 1, parens || open_right, sp, out);
        if (parens) out += ')';
    }
    }
}

}  // namespace

Formula parse(std::string_view text) {
    Parser p{text};
    return p.parse_all();
}

std::string print(const Formula& f, PrintStyle style) {
    std::string out;
    emit(f, 1, true, style == PrintStyle::Ascii ? kAscii : kUnicode, out);
    return out;
}

SurfaceStats surface_stats(std::string_view text) {
    Parser p{text};
    p.parse_all();
    return p.stats;
}

std::size_t token_count(std::string_view text) {
    SurfaceStats s = surface_stats(text);
    return 3 * s.atoms + s.connectives + s.negations + 2 * s.quantifiers + s.parentheses;
}

}  // namespace qc
