#include "trustlam/parser.hpp"

#include "trustlam/types.hpp"

#include <cctype>
#include <map>
#include <set>

namespace trustlam {

namespace {

enum class Tok {
    Ident,
    Nat,
    Lambda,
    Colon,
    Dot,
    Comma,
    Semi,
    LBrace,
    RBrace,
    LParen,
    RParen,
    LBracket,
    RBracket,
    LAngle,
    RAngle,
    Hash,
    Slash,
    At,
    Caret,
    Plus,
    Minus,
    Arrow,
    SubtypeOp,
    Equals,
    End,
};

struct Token {
    Tok kind;
    std::string text;  // ident name or digits
    int line, col;
};

const std::set<std::string> kKeywords = {"type", "subtype", "const", "main",  "true",
                                         "false", "exp",     "trust", "with", "Bool"};

class Lexer {
  public:
    explicit Lexer(const std::string& text) : src_(text) { advance(); }

    const Token& peek() const { return cur_; }
    Token take() {
        Token t = cur_;
        advance();
        return t;
    }

  private:
    void advance() {
        skip_ws();
        cur_.line = line_;
        cur_.col = col_;
        cur_.text.clear();
        if (pos_ >= src_.size()) {
            cur_.kind = Tok::End;
            return;
        }
        char c = src_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_' ||
                    src_[pos_] == '\'')) {
                cur_.text += src_[pos_];
                bump();
            }
            cur_.kind = Tok::Ident;
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                cur_.text += src_[pos_];
                bump();
            }
            cur_.kind = Tok::Nat;
            return;
        }
        auto two = [&](char a, char b) {
            return c == a && pos_ + 1 < src_.size() && src_[pos_ + 1] == b;
        };
        if (two('-', '>')) {
            bump();
            bump();
            cur_.kind = Tok::Arrow;
            return;
        }
        if (two('<', ':')) {
            bump();
            bump();
            cur_.kind = Tok::SubtypeOp;
            return;
        }
        bump();
        switch (c) {
            case '\\': cur_.kind = Tok::Lambda; return;
            case ':': cur_.kind = Tok::Colon; return;
            case '.': cur_.kind = Tok::Dot; return;
            case ',': cur_.kind = Tok::Comma; return;
            case ';': cur_.kind = Tok::Semi; return;
            case '{': cur_.kind = Tok::LBrace; return;
            case '}': cur_.kind = Tok::RBrace; return;
            case '(': cur_.kind = Tok::LParen; return;
            case ')': cur_.kind = Tok::RParen; return;
            case '[': cur_.kind = Tok::LBracket; return;
            case ']': cur_.kind = Tok::RBracket; return;
            case '<': cur_.kind = Tok::LAngle; return;
            case '>': cur_.kind = Tok::RAngle; return;
            case '#': cur_.kind = Tok::Hash; return;
            case '/': cur_.kind = Tok::Slash; return;
            case '@': cur_.kind = Tok::At; return;
            case '^': cur_.kind = Tok::Caret; return;
            case '+': cur_.kind = Tok::Plus; return;
            case '-': cur_.kind = Tok::Minus; return;
            case '=': cur_.kind = Tok::Equals; return;
            default:
                throw ParseError({"E_LEX", std::string("unexpected character '") + c + "'", line_,
                                  col_ - 1});
        }
    }

    void skip_ws() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '-') {
                while (pos_ < src_.size() && src_[pos_] != '\n') bump();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                bump();
            } else {
                break;
            }
        }
    }

    void bump() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    const std::string& src_;
    std::size_t pos_ = 0;
    int line_ = 1, col_ = 1;
    Token cur_{};
};

class Parser {
  public:
    explicit Parser(const std::string& text) : lex_(text) {}

    Program parse() {
        Program p;
        std::set<std::string> atoms, consts;
        while (true) {
            const Token& t = lex_.peek();
            if (t.kind == Tok::Ident && t.text == "type") {
                lex_.take();
                Token name = expect_ident("atomic type name");
                if (!atoms.insert(name.text).second)
                    fail(name, "E_DUP", "duplicate type declaration '" + name.text + "'");
                p.atoms.push_back(name.text);
                expect(Tok::Semi, "';'");
            } else if (t.kind == Tok::Ident && t.text == "subtype") {
                lex_.take();
                Token sub = expect_ident("atom");
                expect(Tok::SubtypeOp, "'<:'");
                Token super = expect_ident("atom");
                expect(Tok::Semi, "';'");
                if (!atoms.count(sub.text))
                    fail(sub, "E_UNDECLARED", "undeclared atom '" + sub.text + "'");
                if (!atoms.count(super.text))
                    fail(super, "E_UNDECLARED", "undeclared atom '" + super.text + "'");
                p.subtype_decls.emplace_back(sub.text, super.text);
            } else if (t.kind == Tok::Ident && t.text == "const") {
                lex_.take();
                Token name = expect_ident("constant name");
                expect(Tok::Colon, "':'");
                Token atom = expect_ident("atom");
                expect(Tok::Semi, "';'");
                if (!consts.insert(name.text).second)
                    fail(name, "E_DUP", "duplicate constant declaration '" + name.text + "'");
                if (!atoms.count(atom.text))
                    fail(atom, "E_UNDECLARED", "undeclared atom '" + atom.text + "'");
                p.const_decls.emplace_back(name.text, atom.text);
            } else {
                break;
            }
        }
        atoms_ = atoms;
        consts_ = consts;
        Token m = expect_ident("'main'");
        if (m.text != "main") fail(m, "E_SYNTAX", "expected 'main', got '" + m.text + "'");
        expect(Tok::Equals, "'='");
        p.main = parse_term();
        if (lex_.peek().kind != Tok::End)
            fail(lex_.peek(), "E_SYNTAX", "trailing input after main term");
        return p;
    }

    TypePtr parse_type_entry() { return parse_type(); }
    Dist parse_dist_tail(const Rat& epsilon) {
        Dist d = parse_dist_body();
        d.epsilon = epsilon;
        return d;
    }
    void set_atoms(std::set<std::string> atoms) { atoms_ = std::move(atoms); }
    Dist parse_bare_dist() {
        Dist d = parse_dist_body();
        d.epsilon = 0;
        if (lex_.peek().kind != Tok::End)
            fail(lex_.peek(), "E_SYNTAX", "trailing input after distribution");
        return d;
    }

  private:
    [[noreturn]] void fail(const Token& t, const std::string& code, const std::string& msg) {
        throw ParseError({code, msg, t.line, t.col});
    }

    Token expect(Tok kind, const std::string& what) {
        if (lex_.peek().kind != kind)
            fail(lex_.peek(), "E_SYNTAX", "expected " + what);
        return lex_.take();
    }

    Token expect_ident(const std::string& what) {
        if (lex_.peek().kind != Tok::Ident)
            fail(lex_.peek(), "E_SYNTAX", "expected " + what);
        return lex_.take();
    }

    int expect_nat(const std::string& what) {
        Token t = expect(Tok::Nat, what);
        try {
            return std::stoi(t.text);
        } catch (...) {
            fail(t, "E_SYNTAX", "number out of range");
        }
    }

    Rat parse_rat() {
        bool neg = false;
        if (lex_.peek().kind == Tok::Minus) {
            lex_.take();
            neg = true;
        }
        Token num = expect(Tok::Nat, "a rational");
        BigInt n(num.text), d = 1;
        if (lex_.peek().kind == Tok::Slash) {
            lex_.take();
            Token den = expect(Tok::Nat, "a denominator");
            d = BigInt(den.text);
            if (d == 0) fail(den, "E_SYNTAX", "zero denominator");
        }
        Rat r(n, d);
        return neg ? Rat(-r) : r;
    }

    // --- types ---

    TypePtr parse_type() {  // arrow, right associative
        TypePtr lhs = parse_btype();
        if (lex_.peek().kind == Tok::Arrow) {
            lex_.take();
            return mk_arrow(lhs, parse_type());
        }
        return lhs;
    }

    TypePtr parse_btype() {  // sums, flattened
        std::vector<TypePtr> parts{parse_ptype()};
        while (lex_.peek().kind == Tok::Plus) {
            lex_.take();
            parts.push_back(parse_ptype());
        }
        return parts.size() == 1 ? parts.front() : mk_sum(std::move(parts));
    }

    TypePtr parse_ptype() {
        TypePtr base = parse_atype();
        while (lex_.peek().kind == Tok::Caret) {
            lex_.take();
            int n = expect_nat("tuple power exponent");
            if (n < 1) fail(lex_.peek(), "E_SYNTAX", "tuple power needs n >= 1");
            base = mk_tuple_pow(base, n);
        }
        return base;
    }

    Dist parse_dist_body() {
        Dist d;
        while (true) {
            Rat p = parse_rat();
            TypePtr ty = parse_type();
            d.entries.emplace_back(p, ty);
            if (lex_.peek().kind == Tok::Comma)
                lex_.take();
            else
                break;
        }
        return d;
    }

    TypePtr parse_atype() {
        const Token& t = lex_.peek();
        if (t.kind == Tok::LParen) {
            lex_.take();
            TypePtr ty = parse_type();
            expect(Tok::RParen, "')'");
            return ty;
        }
        if (t.kind == Tok::Ident && t.text == "Bool") {
            Token boolTok = lex_.take();
            expect(Tok::LParen, "'('");
            Dist d = parse_dist_body();
            expect(Tok::RParen, "')'");
            expect(Tok::At, "'@'");
            d.epsilon = parse_rat();
            check_dist_sum(boolTok, d);
            return mk_bool(std::move(d));
        }
        if (t.kind == Tok::Ident) {
            Token name = lex_.take();
            if (kKeywords.count(name.text))
                fail(name, "E_SYNTAX", "keyword '" + name.text + "' is not a type");
            if (!atoms_.count(name.text))
                fail(name, "E_UNDECLARED", "undeclared atom '" + name.text + "'");
            return mk_atom(name.text);
        }
        fail(t, "E_SYNTAX", "expected a type");
    }

    void check_dist_sum(const Token& at, const Dist& d) {
        Rat total = 0;
        for (const auto& [p, ty] : d.entries) {
            if (p < 0) fail(at, "E_WEIGHTS", "distribution probabilities must be nonnegative");
            total += p;
        }
        if (total != 1)
            fail(at, "E_WEIGHTS", "distribution probabilities sum to " + rat_to_string(total) +
                                       ", expected 1");
    }

    // --- terms ---

    TermPtr parse_term() {
        const Token& t = lex_.peek();
        if (t.kind == Tok::Lambda) {
            Token lam = lex_.take();
            Token var = expect_ident("binder name");
            if (kKeywords.count(var.text))
                fail(var, "E_SYNTAX", "keyword '" + var.text + "' cannot be a variable");
            expect(Tok::Colon, "':'");
            TypePtr ann = parse_type();
            expect(Tok::Dot, "'.'");
            TermPtr body = parse_term();
            return mk_abs(var.text, ann, body, {lam.line, lam.col});
        }
        return parse_appterm();
    }

    TermPtr parse_appterm() {
        TermPtr head = parse_aterm();
        while (starts_aterm(lex_.peek())) {
            Token at = lex_.peek();
            TermPtr arg = parse_aterm();
            head = mk_app(head, arg, {at.line, at.col});
        }
        return head;
    }

    bool starts_aterm(const Token& t) const {
        switch (t.kind) {
            case Tok::LParen:
            case Tok::LBrace:
            case Tok::LAngle:
                return true;
            case Tok::Ident:
                return t.text != "with" && t.text != "main";
            default:
                return false;
        }
    }

    TermPtr parse_aterm() {
        TermPtr base = parse_primary();
        while (lex_.peek().kind == Tok::Hash) {
            Token h = lex_.take();
            int idx = expect_nat("projection index");
            if (idx < 1) fail(h, "E_SYNTAX", "projection index must be >= 1");
            base = mk_proj(base, idx, {h.line, h.col});
        }
        return base;
    }

    TermPtr parse_primary() {
        const Token& t = lex_.peek();
        Loc loc{t.line, t.col};
        if (t.kind == Tok::LParen) {
            lex_.take();
            TermPtr inner = parse_term();
            expect(Tok::RParen, "')'");
            return inner;
        }
        if (t.kind == Tok::LBrace) {
            Token open = lex_.take();
            std::vector<std::pair<Rat, TermPtr>> branches;
            while (true) {
                Rat p = parse_rat();
                TermPtr b = parse_term();
                branches.emplace_back(p, b);
                if (lex_.peek().kind == Tok::Comma)
                    lex_.take();
                else
                    break;
            }
            expect(Tok::RBrace, "'}'");
            Rat total = 0;
            for (const auto& [p, b] : branches) {
                if (p <= 0) fail(open, "E_WEIGHTS", "choice weights must be positive");
                total += p;
            }
            if (total != 1)
                fail(open, "E_WEIGHTS",
                     "choice weights sum to " + rat_to_string(total) + ", expected 1");
            return mk_choice(std::move(branches), loc);
        }
        if (t.kind == Tok::LAngle) {
            lex_.take();
            std::vector<TermPtr> elems;
            while (true) {
                elems.push_back(parse_term());
                if (lex_.peek().kind == Tok::Comma)
                    lex_.take();
                else
                    break;
            }
            expect(Tok::RAngle, "'>'");
            return mk_tuple(std::move(elems), loc);
        }
        if (t.kind == Tok::Ident) {
            if (t.text == "true") {
                lex_.take();
                return mk_true(loc);
            }
            if (t.text == "false") {
                lex_.take();
                return mk_false(loc);
            }
            if (t.text == "exp") {
                lex_.take();
                expect(Tok::LBracket, "'['");
                int n = expect_nat("experiment count");
                if (n < 1) fail(t, "E_SYNTAX", "exp needs n >= 1");
                expect(Tok::RBracket, "']'");
                TermPtr body = parse_aterm();
                return mk_exp(n, body, loc);
            }
            if (t.text == "trust") {
                Token tr = lex_.take();
                TermPtr arg = parse_aterm();
                Token w = expect_ident("'with'");
                if (w.text != "with") fail(w, "E_SYNTAX", "expected 'with'");
                expect(Tok::LParen, "'('");
                Dist d = parse_dist_body();
                expect(Tok::RParen, "')'");
                expect(Tok::At, "'@'");
                d.epsilon = parse_rat();
                check_dist_sum(tr, d);
                return mk_trust(arg, std::move(d), loc);
            }
            Token name = lex_.take();
            if (kKeywords.count(name.text))
                fail(name, "E_SYNTAX", "unexpected keyword '" + name.text + "'");
            if (consts_.count(name.text)) return mk_const(name.text, loc);
            return mk_var(name.text, loc);
        }
        fail(t, "E_SYNTAX", "expected a term");
    }

    Lexer lex_;
    std::set<std::string> atoms_;
    std::set<std::string> consts_;
};

}  // namespace

Program parse_program(const std::string& text) {
    Parser p(text);
    return p.parse();
}

Dist parse_dist_entries(const std::string& text, const std::vector<std::string>& atoms) {
    Parser p(text);
    p.set_atoms(std::set<std::string>(atoms.begin(), atoms.end()));
    return p.parse_bare_dist();
}

}  // namespace trustlam
