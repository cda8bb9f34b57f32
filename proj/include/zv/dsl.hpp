#pragma once

#include <cctype>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "verifier.hpp"

namespace zv::dsl {

struct Loc {
    int line = 1;
    int col = 1;
    std::string str() const { return std::to_string(line) + ":" + std::to_string(col); }
};

class SyntaxError : public std::runtime_error {
public:
    SyntaxError(Loc at, const std::string& what) : std::runtime_error(at.str() + ": " + what), loc(at) {}
    Loc loc;
};

class EvalError : public std::runtime_error {
public:
    EvalError(Loc at, const std::string& what) : std::runtime_error(at.str() + ": " + what), loc(at) {}
    Loc loc;
};

enum class Tok { ident, number, lparen, rparen, lbrack, rbrack, lbrace, rbrace, comma, plus, minus, star, slash, caret, at, eqeq, eq, prime, sep, end };

struct Token {
    Tok kind;
    std::string text;
    Loc loc;
};

inline std::vector<Token> lex(const std::string& src) {
    std::vector<Token> out;
    Loc at;
    std::size_t i = 0;
    auto adv = [&] {
        if (src[i] == '\n') {
            ++at.line;
            at.col = 1;
        } else {
            ++at.col;
        }
        ++i;
    };
    while (i < src.size()) {
        char ch = src[i];
        if (ch == '#') {
            while (i < src.size() && src[i] != '\n') adv();
            continue;
        }
        if (ch == '\n' || ch == ';') {
            out.push_back({Tok::sep, std::string(1, ch), at});
            adv();
            continue;
        }
        if (std::isspace((unsigned char)ch)) {
            adv();
            continue;
        }
        Loc start = at;
        if (std::isalpha((unsigned char)ch) || ch == '_') {
            std::string s;
            while (i < src.size() && (std::isalnum((unsigned char)src[i]) || src[i] == '_')) {
                s += src[i];
                adv();
            }
            out.push_back({Tok::ident, s, start});
            continue;
        }
        if (std::isdigit((unsigned char)ch)) {
            std::string s;
            while (i < src.size() && std::isdigit((unsigned char)src[i])) {
                s += src[i];
                adv();
            }
            out.push_back({Tok::number, s, start});
            continue;
        }
        Tok k;
        std::string text(1, ch);
        switch (ch) {
            case '(': k = Tok::lparen; break;
            case ')': k = Tok::rparen; break;
            case '[': k = Tok::lbrack; break;
            case ']': k = Tok::rbrack; break;
            case '{': k = Tok::lbrace; break;
            case '}': k = Tok::rbrace; break;
            case ',': k = Tok::comma; break;
            case '+': k = Tok::plus; break;
            case '-': k = Tok::minus; break;
            case '*': k = Tok::star; break;
            case '/': k = Tok::slash; break;
            case '^': k = Tok::caret; break;
            case '@': k = Tok::at; break;
            case '\'': k = Tok::prime; break;
            case '=':
                if (i + 1 < src.size() && src[i + 1] == '=') {
                    adv();
                    k = Tok::eqeq;
                    text = "==";
                } else {
                    k = Tok::eq;
                }
                break;
            default: throw SyntaxError(start, std::string("unexpected character '") + ch + "'");
        }
        adv();
        out.push_back({k, text, start});
    }
    out.push_back({Tok::end, "", at});
    return out;
}

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
    enum class K { number, s, var, call, xi, deriv, gen, binary, neg, power, coeff };
    K k = K::number;
    Loc loc;
    std::int64_t num = 0;
    std::string name;
    std::vector<int> iargs;
    char op = 0;
    Q point;
    int order = 0;
    std::vector<NodePtr> kids;
};

struct Stmt {
    enum class K { let, expand, assert_eq };
    K k = K::let;
    Loc loc;
    std::string name;
    NodePtr a, b;
    Q point;
    int lo = 0, hi = 0;
};

struct Script {
    std::vector<Stmt> stmts;
};

namespace names {

inline const std::set<std::string>& scalar_fns() {
    static const std::set<std::string> s = {"c", "crec", "d", "drec", "a", "b", "weak2", "res", "X", "Y", "phi0", "phi0c"};
    return s;
}
inline const std::set<std::string>& zeta_fns() {
    static const std::set<std::string> s = {"F", "G", "H", "beta", "lambda", "c1", "c2"};
    return s;
}
inline const std::set<std::string>& gens() {
    static const std::set<std::string> s = {"ResF", "DE", "DF", "logDE", "logDF"};
    return s;
}
inline bool xi(const std::string& n) { return n == "xiE" || n == "xiF" || n == "xiFeta"; }
inline bool keyword(const std::string& n) { return n == "let" || n == "expand" || n == "assert" || n == "at" || n == "order" || n == "s"; }

}  // namespace names

/// recursive descent, one token of lookahead
class Parser {
public:
    explicit Parser(const std::string& src) : toks_(lex(src)) {}

    Script script() {
        Script sc;
        while (peek().kind != Tok::end) {
            if (peek().kind == Tok::sep) {
                next();
                continue;
            }
            sc.stmts.push_back(statement());
            if (peek().kind != Tok::end) expect(Tok::sep, "end of statement");
        }
        return sc;
    }

    NodePtr expression_only() {
        auto e = expr();
        while (peek().kind == Tok::sep) next();
        if (peek().kind != Tok::end) fail("unexpected '" + peek().text + "' after expression");
        return e;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    Token next() { return toks_[pos_++]; }
    [[noreturn]] void fail(const std::string& what) const { throw SyntaxError(peek().loc, what); }
    Token expect(Tok k, const std::string& what) {
        if (peek().kind != k) fail("expected " + what + ", found " + (peek().kind == Tok::end ? std::string("end of input") : "'" + peek().text + "'"));
        return next();
    }
    void expect_word(const std::string& w) {
        if (!(peek().kind == Tok::ident && peek().text == w)) fail("expected '" + w + "'");
        next();
    }

    std::int64_t number() {
        Token t = expect(Tok::number, "a number");
        if (t.text.size() > 15) throw SyntaxError(t.loc, "number too large");
        return std::stoll(t.text);
    }
    int sint() {
        bool neg = false;
        if (peek().kind == Tok::minus) {
            next();
            neg = true;
        }
        auto v = number();
        return int(neg ? -v : v);
    }
    Q point() {
        bool neg = false;
        if (peek().kind == Tok::minus) {
            next();
            neg = true;
        }
        Loc at = peek().loc;
        std::int64_t n = number(), d = 1;
        if (peek().kind == Tok::slash) {
            next();
            d = number();
            if (d == 0) throw SyntaxError(at, "zero denominator");
        }
        return Q(neg ? -n : n, d);
    }

    Stmt statement() {
        Stmt st;
        st.loc = peek().loc;
        if (peek().kind != Tok::ident) fail("expected 'let', 'expand' or 'assert'");
        std::string w = peek().text;
        if (w == "let") {
            next();
            Token n = expect(Tok::ident, "a name");
            if (names::keyword(n.text) || names::xi(n.text) || names::scalar_fns().count(n.text) || names::zeta_fns().count(n.text) ||
                names::gens().count(n.text))
                throw SyntaxError(n.loc, "'" + n.text + "' is reserved");
            expect(Tok::eq, "'='");
            st.k = Stmt::K::let;
            st.name = n.text;
            st.a = expr();
            bound_.insert(n.text);
        } else if (w == "expand") {
            next();
            st.k = Stmt::K::expand;
            st.a = expr();
            expect_word("at");
            st.point = point();
            expect_word("order");
            expect(Tok::lparen, "'('");
            st.lo = sint();
            expect(Tok::comma, "','");
            st.hi = sint();
            expect(Tok::rparen, "')'");
        } else if (w == "assert") {
            next();
            st.k = Stmt::K::assert_eq;
            st.a = expr();
            expect(Tok::eqeq, "'=='");
            st.b = expr();
        } else {
            fail("expected 'let', 'expand' or 'assert', found '" + w + "'");
        }
        return st;
    }

    static NodePtr make(Node n) { return std::make_shared<const Node>(std::move(n)); }

    NodePtr expr() {
        auto l = term();
        while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
            Node n;
            n.loc = peek().loc;
            n.k = Node::K::binary;
            n.op = next().kind == Tok::plus ? '+' : '-';
            n.kids = {l, term()};
            l = make(std::move(n));
        }
        return l;
    }
    NodePtr term() {
        auto l = unary();
        while (peek().kind == Tok::star || peek().kind == Tok::slash) {
            Node n;
            n.loc = peek().loc;
            n.k = Node::K::binary;
            n.op = next().kind == Tok::star ? '*' : '/';
            n.kids = {l, unary()};
            l = make(std::move(n));
        }
        return l;
    }
    NodePtr unary() {
        if (peek().kind == Tok::minus) {
            Node n;
            n.loc = next().loc;
            n.k = Node::K::neg;
            n.kids = {unary()};
            return make(std::move(n));
        }
        return power();
    }
    NodePtr power() {
        auto base = postfix();
        if (peek().kind != Tok::caret) return base;
        Node n;
        n.loc = next().loc;
        n.k = Node::K::power;
        NodePtr ex;
        if (peek().kind == Tok::minus) {
            Node m;
            m.loc = next().loc;
            m.k = Node::K::neg;
            m.kids = {exponent_atom()};
            ex = make(std::move(m));
        } else {
            ex = exponent_atom();
        }
        n.kids = {base, ex};
        return make(std::move(n));
    }
    NodePtr exponent_atom() {
        if (peek().kind == Tok::lparen) {
            next();
            auto e = expr();
            expect(Tok::rparen, "')'");
            return e;
        }
        Node n;
        n.loc = peek().loc;
        n.k = Node::K::number;
        n.num = number();
        return make(std::move(n));
    }
    NodePtr postfix() {
        auto p = primary();
        if (peek().kind != Tok::at) return p;
        Node n;
        n.loc = next().loc;
        n.k = Node::K::coeff;
        n.point = point();
        expect(Tok::lbrack, "'['");
        n.order = sint();
        expect(Tok::rbrack, "']'");
        n.kids = {p};
        return make(std::move(n));
    }

    std::vector<int> int_args() {
        expect(Tok::lparen, "'('");
        std::vector<int> v{sint()};
        while (peek().kind == Tok::comma) {
            next();
            v.push_back(sint());
        }
        expect(Tok::rparen, "')'");
        return v;
    }

    NodePtr primary() {
        Node n;
        n.loc = peek().loc;
        if (peek().kind == Tok::number) {
            n.k = Node::K::number;
            n.num = number();
            return make(std::move(n));
        }
        if (peek().kind == Tok::lparen) {
            next();
            auto e = expr();
            expect(Tok::rparen, "')'");
            return e;
        }
        if (peek().kind != Tok::ident) fail(peek().kind == Tok::end ? "unexpected end of input" : "unexpected '" + peek().text + "'");
        Token id = next();
        n.name = id.text;
        if (id.text == "s") {
            n.k = Node::K::s;
            return make(std::move(n));
        }
        if (names::xi(id.text)) {
            if (peek().kind == Tok::prime || peek().kind == Tok::lbrack) {
                if (id.text == "xiE") fail("xiE is composite and has no derivative generators");
                n.k = Node::K::deriv;
                int k = 0;
                if (peek().kind == Tok::lbrack) {
                    next();
                    k = sint();
                    expect(Tok::rbrack, "']'");
                } else {
                    next();
                    k = 1;
                    if (peek().kind == Tok::prime) {
                        next();
                        k = 2;
                    } else if (peek().kind == Tok::lbrace) {
                        next();
                        k = sint();
                        expect(Tok::rbrace, "'}'");
                    }
                }
                n.order = k;
                expect(Tok::lparen, "'('");
                n.point = point();
                expect(Tok::rparen, "')'");
                return make(std::move(n));
            }
            n.k = Node::K::xi;
            expect(Tok::lparen, "'('");
            n.kids = {expr()};
            expect(Tok::rparen, "')'");
            return make(std::move(n));
        }
        if (names::gens().count(id.text)) {
            n.k = Node::K::gen;
            return make(std::move(n));
        }
        if (names::scalar_fns().count(id.text) || names::zeta_fns().count(id.text)) {
            n.k = Node::K::call;
            n.iargs = int_args();
            return make(std::move(n));
        }
        if (bound_.count(id.text)) {
            n.k = Node::K::var;
            return make(std::move(n));
        }
        throw SyntaxError(id.loc, "unresolved identifier '" + id.text + "'");
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::set<std::string> bound_;
};

inline Script parse_script(const std::string& text) { return Parser(text).script(); }

inline std::string render(const NodePtr& n) {
    auto args = [](const std::vector<int>& v) {
        std::string s;
        for (int x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
        return "(" + s + ")";
    };
    switch (n->k) {
        case Node::K::number: return std::to_string(n->num);
        case Node::K::s: return "s";
        case Node::K::var:
        case Node::K::gen: return n->name;
        case Node::K::call: return n->name + args(n->iargs);
        case Node::K::xi: return n->name + "(" + render(n->kids[0]) + ")";
        case Node::K::deriv: return n->name + "[" + std::to_string(n->order) + "](" + n->point.str() + ")";
        case Node::K::binary: return "(" + render(n->kids[0]) + " " + n->op + " " + render(n->kids[1]) + ")";
        case Node::K::neg: return "-" + render(n->kids[0]);
        case Node::K::power: return render(n->kids[0]) + "^(" + render(n->kids[1]) + ")";
        case Node::K::coeff: return render(n->kids[0]) + "@" + n->point.str() + "[" + std::to_string(n->order) + "]";
    }
    return "";
}

inline std::string render(const Stmt& st) {
    switch (st.k) {
        case Stmt::K::let: return "let " + st.name + " = " + render(st.a);
        case Stmt::K::expand:
            return "expand " + render(st.a) + " at " + st.point.str() + " order (" + std::to_string(st.lo) + "," + std::to_string(st.hi) + ")";
        default: return "assert " + render(st.a) + " == " + render(st.b);
    }
}

inline std::string render(const Script& sc) {
    std::string s;
    for (auto& st : sc.stmts) s += render(st) + "\n";
    return s;
}

/// affine in s, a field element, or a zeta product (possibly free of s)
struct Value {
    enum class K { affine, scalar, zeta };
    K k = K::affine;
    Affine aff;
    FieldElem f;
    ZetaExpr z;

    static Value of(const Affine& a) { Value v; v.aff = a; return v; }
    static Value of(const FieldElem& x) { Value v; v.k = K::scalar; v.f = x; return v; }
    static Value of(const ZetaExpr& x) { Value v; v.k = K::zeta; v.z = x; return v; }

    bool constant() const {
        if (k == K::scalar) return true;
        if (k == K::affine) return aff.b.is_zero();
        for (auto& f : z.factors)
            if (!f.arg.b.is_zero()) return false;
        return z.de_exp.b.is_zero() && z.df_exp.b.is_zero();
    }

    std::string render() const {
        switch (k) {
            case K::affine: return aff.render();
            case K::scalar: return f.render();
            default: return z.render();
        }
    }
};

inline FieldElem as_scalar(const Value& v, Loc at) {
    if (!v.constant()) throw EvalError(at, "expression depends on s where a constant is needed");
    if (v.k == Value::K::scalar) return v.f;
    if (v.k == Value::K::affine) return FieldElem(v.aff.a.to_mpq());
    return coeff_at(SymbolicProvider{}, v.z, Q(0), 0);
}

inline ZetaExpr as_zeta(const Value& v, Loc at) {
    if (v.k == Value::K::zeta) return v.z;
    if (v.k == Value::K::affine && v.aff.b.is_zero()) return ZetaExpr::rational(v.aff.a.to_mpq());
    throw EvalError(at, v.k == Value::K::affine ? "s may only appear inside a zeta argument or a discriminant exponent"
                                                : "a field element cannot multiply a zeta product");
}

class Evaluator {
public:
    Value eval(const NodePtr& n) const {
        try {
            return eval_node(n);
        } catch (const EvalError&) {
            throw;
        } catch (const std::exception& e) {
            throw EvalError(n->loc, e.what());
        }
    }

    void bind(const std::string& name, Value v) { env_[name] = std::move(v); }

private:
    Value eval_node(const NodePtr& n) const {
        SymbolicProvider p;
        switch (n->k) {
            case Node::K::number: return Value::of(Affine{Q(n->num), Q(0)});
            case Node::K::s: return Value::of(Affine{Q(0), Q(1)});
            case Node::K::var: {
                auto it = env_.find(n->name);
                if (it == env_.end()) throw EvalError(n->loc, "unbound name '" + n->name + "'");
                return it->second;
            }
            case Node::K::gen: {
                if (n->name == "ResF") return Value::of(p.xi_coeff(XiKind::F, Q(1), -1));
                if (n->name == "DE") return Value::of(ZetaExpr::de(Affine{Q(1), Q(0)}));
                if (n->name == "DF") return Value::of(ZetaExpr::df(Affine{Q(1), Q(0)}));
                return Value::of(p.log_disc(n->name == "logDE" ? GenKind::DE : GenKind::DF));
            }
            case Node::K::xi: {
                Value a = eval(n->kids[0]);
                if (a.k != Value::K::affine) throw EvalError(n->kids[0]->loc, "zeta argument must be affine in s");
                XiKind k = n->name == "xiE" ? XiKind::E : (n->name == "xiF" ? XiKind::F : XiKind::Feta);
                return Value::of(ZetaExpr::xi(k, a.aff));
            }
            case Node::K::deriv:
                return Value::of(xi_gen(n->name == "xiF" ? XiKind::F : XiKind::Feta, n->point, n->order));
            case Node::K::call: return call(n);
            case Node::K::neg: {
                Value v = eval(n->kids[0]);
                if (v.k == Value::K::affine) return Value::of(-v.aff);
                if (v.k == Value::K::scalar) return Value::of(-v.f);
                ZetaExpr z = v.z;
                z.prefactor = -z.prefactor;
                return Value::of(z);
            }
            case Node::K::binary: return binary(n, eval(n->kids[0]), eval(n->kids[1]));
            case Node::K::power: return power(n, eval(n->kids[0]), eval(n->kids[1]));
            case Node::K::coeff: {
                Value v = eval(n->kids[0]);
                return Value::of(coeff_at(p, as_zeta(v, n->kids[0]->loc), n->point, n->order));
            }
        }
        throw EvalError(n->loc, "bad node");
    }

    static Value call(const NodePtr& n) {
        SymbolicProvider p;
        const auto& a = n->iargs;
        const std::string& f = n->name;
        auto want = [&](std::size_t k) {
            if (a.size() != k) throw EvalError(n->loc, f + " takes " + std::to_string(k) + " argument" + (k == 1 ? "" : "s"));
        };
        if (f == "c" || f == "crec") {
            Mode m = f == "c" ? Mode::closed : Mode::recursive;
            if (a.size() == 1) return Value::of(c_r(p, a[0], m));
            want(2);
            return Value::of(c_nr(p, a[0], a[1], m));
        }
        if (f == "res") {
            want(1);
            return Value::of(siegel_residue(p, a[0]));
        }
        if (f == "H" || f == "beta") {
            want(1);
            return Value::of(f == "H" ? H_factor(a[0]) : beta_factor(a[0]));
        }
        want(2);
        int x = a[0], y = a[1];
        if (f == "d") return Value::of(d_nr(p, x, y, Mode::closed));
        if (f == "drec") return Value::of(d_nr(p, x, y, Mode::recursive));
        if (f == "a") return Value::of(a_nr_closed(p, x, y));
        if (f == "b") return Value::of(b_nr_closed(p, x, y, Mode::closed));
        if (f == "weak2") return Value::of(weak2_closed(p, x, y));
        if (f == "X" || f == "Y") {
            cst::need(x >= 2 && y >= 0 && y <= x - 2, "need r >= 2 and 0 <= j <= r-2");
            return Value::of(f == "X" ? X_closed(p, x, y) : Y_closed(p, x, y));
        }
        if (f == "phi0") return Value::of(phi0(p, x, y));
        if (f == "phi0c") return Value::of(phi0_c(p, x, y));
        if (f == "F") return Value::of(F_factor(x, y));
        if (f == "G") return Value::of(G_factor(x, y));
        if (f == "lambda") return Value::of(lambda_factor(x, y));
        if (f == "c1") return Value::of(gk::c1_closed(x, y));
        if (f == "c2") return Value::of(gk::c2_closed(x, y));
        throw EvalError(n->loc, "unknown function " + f);
    }

    static Value binary(const NodePtr& n, const Value& l, const Value& r) {
        using K = Value::K;
        char op = n->op;
        Loc ll = n->kids[0]->loc, rl = n->kids[1]->loc;
        if (l.k == K::affine && r.k == K::affine) {
            switch (op) {
                case '+': return Value::of(l.aff + r.aff);
                case '-': return Value::of(l.aff - r.aff);
                case '*':
                    if (l.aff.b.is_zero()) return Value::of(r.aff * l.aff.a);
                    if (r.aff.b.is_zero()) return Value::of(l.aff * r.aff.a);
                    throw EvalError(n->loc, "product is not affine in s");
                default:
                    if (!r.aff.b.is_zero()) throw EvalError(rl, "division by an expression in s");
                    if (r.aff.a.is_zero()) throw EvalError(rl, "division by zero");
                    return Value::of(l.aff * (Q(1) / r.aff.a));
            }
        }
        bool zeta_side = (l.k == K::zeta && !l.constant()) || (r.k == K::zeta && !r.constant()) ||
                         (l.k == K::zeta && r.k != K::scalar) || (r.k == K::zeta && l.k != K::scalar);
        if (zeta_side && (op == '*' || op == '/')) {
            ZetaExpr a = as_zeta(l, ll), b = as_zeta(r, rl);
            return Value::of(op == '*' ? a * b : a / b);
        }
        if (zeta_side && !(l.constant() && r.constant())) throw EvalError(n->loc, "sums of zeta products are not supported");
        FieldElem a = as_scalar(l, ll), b = as_scalar(r, rl);
        switch (op) {
            case '+': return Value::of(a + b);
            case '-': return Value::of(a - b);
            case '*': return Value::of(a * b);
            default:
                if (b.is_zero()) throw EvalError(rl, "division by zero");
                return Value::of(a / b);
        }
    }

    static Value power(const NodePtr& n, const Value& base, const Value& ex) {
        using K = Value::K;
        Loc el = n->kids[1]->loc;
        if (ex.k != K::affine) throw EvalError(el, "exponent must be rational or affine in s");
        bool disc = n->kids[0]->k == Node::K::gen && (n->kids[0]->name == "DE" || n->kids[0]->name == "DF");
        if (disc) return Value::of(n->kids[0]->name == "DE" ? ZetaExpr::de(ex.aff) : ZetaExpr::df(ex.aff));
        if (!ex.aff.b.is_zero() || !ex.aff.a.is_integer()) throw EvalError(el, "only DE and DF take non-integer exponents");
        int e = int(ex.aff.a.num());
        if (base.k == K::zeta) return Value::of(base.z.pow(e));
        if (base.k == K::affine) {
            if (!base.aff.b.is_zero()) throw EvalError(n->kids[0]->loc, "power of an expression in s");
            return Value::of(FieldElem(base.aff.a.to_mpq()).pow(e));
        }
        return Value::of(base.f.pow(e));
    }

    std::map<std::string, Value> env_;
};

inline Value eval_expression(const std::string& text) {
    Evaluator ev;
    return ev.eval(Parser(text).expression_only());
}

/// run a parsed script; asserts and expansions become reports
inline std::vector<verify::Report> exec_script(const Script& sc, const verify::Settings& s) {
    using verify::Report;
    using verify::RunMode;
    std::vector<Report> out;
    Evaluator ev;
    NumericProvider np(s.digits);
    for (auto& st : sc.stmts) {
        auto t0 = std::chrono::steady_clock::now();
        Report rep;
        rep.check = std::string(st.k == Stmt::K::expand ? "expand" : st.k == Stmt::K::let ? "let" : "assert") + "@" + st.loc.str();
        rep.mode = verify::run_mode_name(s.mode);
        try {
            if (st.k == Stmt::K::let) {
                ev.bind(st.name, ev.eval(st.a));
                continue;
            }
            if (st.k == Stmt::K::expand) {
                Value v = ev.eval(st.a);
                ZetaExpr z = as_zeta(v, st.a->loc);
                rep.lhs = z.render() + " at " + st.point.str();
                Window w{st.lo, st.hi};
                std::string sym, num;
                if (s.mode != RunMode::numeric) {
                    auto L = expand_expr(SymbolicProvider{}, z, st.point, w);
                    for (int d = st.lo; d <= st.hi; ++d) sym += (sym.empty() ? "" : "; ") + ("[" + std::to_string(d) + "] " + L.coefficient(d).render());
                }
                if (s.mode != RunMode::symbolic) {
                    PrecisionScope ps(np.working_digits());
                    auto L = expand_expr(np, z, st.point, w);
                    for (int d = st.lo; d <= st.hi; ++d) num += (num.empty() ? "" : "; ") + ("[" + std::to_string(d) + "] " + fmt(L.coefficient(d), 20));
                }
                rep.rhs = sym.empty() ? num : sym;
                if (!sym.empty() && !num.empty()) rep.detail = "numeric: " + num;
                rep.status = "pass";
            } else {
                Value a = ev.eval(st.a), b = ev.eval(st.b);
                rep.lhs = a.render();
                rep.rhs = b.render();
                bool ok = true;
                bool functions = !(a.constant() && b.constant());
                if (functions && s.mode != RunMode::numeric) {
                    ok = as_zeta(a, st.a->loc) == as_zeta(b, st.b->loc);
                    if (!ok) rep.detail = "zeta products differ: " + (as_zeta(a, st.a->loc) / as_zeta(b, st.b->loc)).normalized().render();
                }
                FieldElem x, y;
                if (!functions) {
                    x = as_scalar(a, st.a->loc);
                    y = as_scalar(b, st.b->loc);
                    if (s.mode != RunMode::numeric) {
                        ok = x == y;
                        if (!ok) rep.detail = "lhs - rhs = " + (x - y).render();
                    }
                } else {
                    const Q probe(10, 3);
                    x = coeff_at(SymbolicProvider{}, as_zeta(a, st.a->loc), probe, 0);
                    y = coeff_at(SymbolicProvider{}, as_zeta(b, st.b->loc), probe, 0);
                }
                if (ok && s.mode != RunMode::symbolic) {
                    PrecisionScope ps(np.working_digits());
                    Real u = bind_eval(x, np).value, w = bind_eval(y, np).value;
                    Real e = abs(u - w);
                    rep.abs_err = e.convert_to<double>();
                    Real scale = max(Real(1), max(abs(u), abs(w)));
                    if (!(e <= Real(1e-10) * scale)) {
                        ok = false;
                        rep.detail = "|lhs - rhs| = " + fmt(e, 6);
                    }
                }
                rep.status = ok ? "pass" : "fail";
            }
        } catch (const std::exception& e) {
            rep.status = "error";
            rep.detail = e.what();
        }
        rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        out.push_back(std::move(rep));
    }
    return out;
}

}  // namespace zv::dsl
