#include "wnh/cli/session.hpp"

#include <cctype>
#include <set>

#include "wnh/ring/registry.hpp"

namespace wnh {
namespace {

const std::set<std::string> kReserved = {"D", "Dinv", "tail", "x", "fields", "const", "expr", "nonlocal", "op", "metric"};

struct Token {
    enum Type { Ident, Number, Punct, End } type;
    std::string text;
    std::size_t line, col;
};

std::vector<Token> lex(const std::string& src) {
    std::vector<Token> out;
    std::size_t line = 1, col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t k) {
        for (std::size_t j = 0; j < k; ++j, ++i) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < src.size()) {
        char c = src[i];
        if (c == '#') {
            while (i < src.size() && src[i] != '\n') advance(1);
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        std::size_t l = line, cl = col, start = i;
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
            out.push_back({Token::Ident, src.substr(start, j - start), l, cl});
            advance(j - i);
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            out.push_back({Token::Number, src.substr(start, j - start), l, cl});
            advance(j - i);
        } else if (std::string(";,:()[]+-*/^=>").find(c) != std::string::npos) {
            out.push_back({Token::Punct, std::string(1, c), l, cl});
            advance(1);
        } else {
            throw ParseError(l, cl, std::string("unexpected character '") + c + "'");
        }
    }
    out.push_back({Token::End, "", line, col});
    return out;
}

// Intermediate value; scalar operators are 1x1 multiples of the identity
// that adapt to the size of the other operand.
struct Val {
    enum Kind { S, V, O } kind = S;
    Expr e;
    ExprVec vec;
    Operator op;
    bool scalar_op = false;
    std::optional<Variance> var;
};

constexpr Variance kWork = Variance::VstoV;

Operator expand_scalar(const Operator& a, std::size_t k) {
    if (k == 1) return a;
    std::vector<std::vector<Operator>> e(k, std::vector<Operator>(k, Operator(1, 1, kWork)));
    for (std::size_t i = 0; i < k; ++i) e[i][i] = a;
    return from_entries(e, kWork);
}

class Parser {
public:
    Parser(const std::string& text, const Session* session) : toks_(lex(text)), s_(session) {}

    Session parse_session() {
        Session out;
        s_ = &out;
        bool have_fields = false;
        while (peek().type != Token::End) {
            Token kw = expect_ident("a declaration");
            if (kw.text == "fields") {
                if (have_fields) throw ParseError(kw.line, kw.col, "fields declared twice");
                if (!out.order.empty()) throw ParseError(kw.line, kw.col, "fields must be the first declaration");
                do {
                    Token f = expect_ident("a field name");
                    check_new_name(out, f);
                    out.names.fields.push_back(f.text);
                } while (accept(","));
                have_fields = true;
            } else if (kw.text == "const") {
                Token name = expect_ident("a constant name");
                check_new_name(out, name);
                expect(":");
                Token again = expect_ident("the constant name");
                if (again.text != name.text) throw ParseError(again.line, again.col, "expected " + name.text);
                expect("^");
                Token two = expect_number();
                if (two.text != "2") throw ParseError(two.line, two.col, "expected 2");
                expect("=");
                Rational sq = rational_literal();
                std::uint32_t id;
                try {
                    id = declare_constant(name.text, sq);
                } catch (const PreconditionError& e) {
                    throw ParseError(name.line, name.col, e.what());
                }
                out.constants[name.text] = id;
                out.order.emplace_back(Session::Kind::Const, name.text);
            } else if (kw.text == "expr" || kw.text == "nonlocal" || kw.text == "op" || kw.text == "metric") {
                if (!have_fields) throw ParseError(kw.line, kw.col, "fields must be declared before " + kw.text);
                Token name = expect_ident("a name");
                check_new_name(out, name);
                std::optional<Variance> declared;
                if (kw.text == "op" && accept(":")) declared = variance_literal();
                expect("=");
                Token at = peek();
                Val v = parse_sum();
                if (kw.text == "expr") {
                    if (v.kind == Val::O) throw ParseError(at.line, at.col, "expected an expression, found an operator");
                    out.exprs[name.text] = v.kind == Val::S ? ExprVec{v.e} : v.vec;
                    out.order.emplace_back(Session::Kind::Expr, name.text);
                } else if (kw.text == "nonlocal") {
                    if (v.kind != Val::S || !is_bare_symbol(v.e))
                        throw ParseError(at.line, at.col, "expected Dinv(density)");
                    out.nonlocals[name.text] = v.e;
                    out.order.emplace_back(Session::Kind::Nonlocal, name.text);
                } else if (kw.text == "op") {
                    Operator op = finish_operator(v, at, out.n());
                    if (declared && v.var && *v.var != *declared)
                        throw ParseError(at.line, at.col,
                                         "variance mismatch: declared " + to_string(*declared) + ", expression is " +
                                             to_string(*v.var));
                    Variance fin = declared ? *declared : v.var.value_or(Variance::VstoV);
                    out.ops[name.text] = {op.with_variance(fin), declared.has_value()};
                    out.order.emplace_back(Session::Kind::Op, name.text);
                } else {
                    out.metrics[name.text] = finish_matrix(v, at, out.n());
                    out.order.emplace_back(Session::Kind::Metric, name.text);
                }
            } else {
                throw ParseError(kw.line, kw.col, "unknown declaration '" + kw.text + "'");
            }
            expect(";");
        }
        if (!have_fields) throw ParseError(1, 1, "no fields declared");
        return out;
    }

    Val parse_whole() {
        Val v = parse_sum();
        Token t = peek();
        if (t.type != Token::End) throw ParseError(t.line, t.col, "unexpected '" + t.text + "'");
        return v;
    }

    Token first() const { return toks_.front(); }

    static Operator finish_operator(Val v, const Token& at, std::size_t n) {
        if (v.kind == Val::V) throw ParseError(at.line, at.col, "expected an operator, found a vector");
        if (v.kind == Val::S) {
            v.op = Operator::scalar(v.e, 1, kWork);
            v.scalar_op = true;
        }
        if (v.scalar_op) return expand_scalar(v.op, n);
        if (v.op.rows() != n || v.op.cols() != n)
            throw ParseError(at.line, at.col,
                             "shape mismatch: operator is " + std::to_string(v.op.rows()) + "x" +
                                 std::to_string(v.op.cols()) + " but there are " + std::to_string(n) + " fields");
        return v.op;
    }

    static Matrix finish_matrix(Val v, const Token& at, std::size_t n) {
        Operator op = finish_operator(v, at, n);
        if (!op.is_differential()) throw ParseError(at.line, at.col, "a matrix cannot have tails");
        for (const auto& [deg, m] : op.diff())
            if (deg != 0 && !m.is_zero()) throw ParseError(at.line, at.col, "a matrix cannot contain D");
        auto it = op.diff().find(0);
        return it == op.diff().end() ? Matrix(n, n) : it->second;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    Token next() { return toks_[pos_++]; }

    bool accept(const char* p) {
        if (peek().type == Token::Punct && peek().text == p) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(const char* p) {
        if (!accept(p)) {
            const Token& t = peek();
            throw ParseError(t.line, t.col,
                             std::string("expected '") + p + "', found " + (t.type == Token::End ? "end of input" : "'" + t.text + "'"));
        }
    }
    Token expect_ident(const std::string& what) {
        Token t = peek();
        if (t.type != Token::Ident) throw ParseError(t.line, t.col, "expected " + what);
        return next();
    }
    Token expect_number() {
        Token t = peek();
        if (t.type != Token::Number) throw ParseError(t.line, t.col, "expected a number");
        return next();
    }

    Rational rational_literal() {
        bool neg = accept("-");
        Rational q(mpz_class(expect_number().text));
        if (accept("/")) {
            Token d = expect_number();
            mpz_class den(d.text);
            if (den == 0) throw ParseError(d.line, d.col, "zero denominator");
            q /= Rational(den);
        }
        q.canonicalize();
        return neg ? Rational(-q) : q;
    }

    Variance variance_literal() {
        Token a = expect_ident("V or Vs");
        expect("-");
        expect(">");
        Token b = expect_ident("V or Vs");
        auto v = parse_variance(a.text + "->" + b.text);
        if (!v) throw ParseError(a.line, a.col, "unknown variance " + a.text + "->" + b.text);
        return *v;
    }

    static bool is_bare_symbol(const Expr& e) {
        return e.is_polynomial() && e.num().size() == 1 && e.num().leading().coef == 1 &&
               e.num().leading().mono.factors.size() == 1 &&
               e.num().leading().mono.factors[0].first.kind() == VarKind::Nonlocal &&
               e.num().leading().mono.factors[0].second == 1;
    }

    void check_new_name(const Session& s, const Token& t) const {
        if (kReserved.count(t.text)) throw ParseError(t.line, t.col, "'" + t.text + "' is reserved");
        if (s.has_name(t.text)) throw ParseError(t.line, t.col, "duplicate name '" + t.text + "'");
        if (jet_of(s, t.text)) throw ParseError(t.line, t.col, "'" + t.text + "' clashes with a jet variable");
    }

    static std::optional<Expr> jet_of(const Session& s, const std::string& name) {
        for (std::uint32_t a = 0; a < s.names.fields.size(); ++a) {
            const std::string& f = s.names.fields[a];
            if (name == f) return Expr::jet(a, 0);
            if (name.size() > f.size() + 1 && name.compare(0, f.size(), f) == 0 && name[f.size()] == '_') {
                std::string digits = name.substr(f.size() + 1);
                bool ok = !digits.empty() && digits.size() < 6;
                for (char c : digits) ok = ok && std::isdigit(static_cast<unsigned char>(c));
                if (ok) return Expr::jet(a, static_cast<std::uint32_t>(std::stoul(digits)));
            }
        }
        return std::nullopt;
    }

    // Arithmetic on values.
    static Val scalar(const Expr& e) {
        Val v;
        v.kind = Val::S;
        v.e = e;
        return v;
    }
    static Val op_of(const Val& v) {
        if (v.kind == Val::O) return v;
        Val o;
        o.kind = Val::O;
        o.op = Operator::scalar(v.e, 1, kWork);
        o.scalar_op = true;
        return o;
    }
    static void unify(Val& a, Val& b, const Token& at) {
        if (a.scalar_op && !b.scalar_op) {
            a.op = expand_scalar(a.op, b.op.rows());
            a.scalar_op = false;
        } else if (b.scalar_op && !a.scalar_op) {
            b.op = expand_scalar(b.op, a.op.rows());
            b.scalar_op = false;
        }
        if (a.op.rows() != b.op.rows() || a.op.cols() != b.op.cols())
            throw ParseError(at.line, at.col, "shape mismatch between operators");
    }

    static Val add(Val a, Val b, bool minus, const Token& at) {
        if (a.kind == Val::S && b.kind == Val::S) return scalar(minus ? a.e - b.e : a.e + b.e);
        if (a.kind == Val::V || b.kind == Val::V) {
            if (a.kind != Val::V || b.kind != Val::V || a.vec.size() != b.vec.size())
                throw ParseError(at.line, at.col, "vector sum needs two vectors of the same length");
            for (std::size_t i = 0; i < a.vec.size(); ++i) a.vec[i] = minus ? a.vec[i] - b.vec[i] : a.vec[i] + b.vec[i];
            return a;
        }
        a = op_of(a);
        b = op_of(b);
        unify(a, b, at);
        if (a.var && b.var && *a.var != *b.var) throw ParseError(at.line, at.col, "sum of operators of different variance");
        Val out = a;
        out.op = minus ? a.op - b.op : a.op + b.op;
        out.scalar_op = a.scalar_op && b.scalar_op;
        out.var = a.var ? a.var : b.var;
        return out;
    }

    static Val mul(Val a, Val b, const Token& at) {
        if (a.kind == Val::S && b.kind == Val::S) return scalar(a.e * b.e);
        if (a.kind == Val::V && b.kind == Val::V) throw ParseError(at.line, at.col, "product of two vectors");
        if (a.kind == Val::V || b.kind == Val::V) {
            Val& vec = a.kind == Val::V ? a : b;
            Val& other = a.kind == Val::V ? b : a;
            if (other.kind != Val::S) throw ParseError(at.line, at.col, "operators act on vectors through apply");
            for (auto& e : vec.vec) e = other.e * e;
            return vec;
        }
        if (a.kind == Val::S) {
            Val out = b;
            out.op = a.e * b.op;
            return out;
        }
        b = op_of(b);
        unify(a, b, at);
        Val out;
        out.kind = Val::O;
        if (a.var && b.var) {
            if (domain(*a.var) != codomain(*b.var)) throw ParseError(at.line, at.col, "variance mismatch in composition");
            out.var = make_variance(domain(*b.var), codomain(*a.var));
        }
        try {
            out.op = compose_as(a.op, b.op, kWork);
        } catch (const NotWeaklyNonlocalClosure& e) {
            throw ParseError(at.line, at.col, e.what());
        }
        out.scalar_op = a.scalar_op && b.scalar_op;
        return out;
    }

    Val parse_sum() {
        Val v = parse_product();
        for (;;) {
            Token t = peek();
            if (accept("+"))
                v = add(v, parse_product(), false, t);
            else if (accept("-"))
                v = add(v, parse_product(), true, t);
            else
                return v;
        }
    }

    Val parse_product() {
        Val v = parse_unary();
        for (;;) {
            Token t = peek();
            if (accept("*")) {
                v = mul(v, parse_unary(), t);
            } else if (accept("/")) {
                Val d = parse_unary();
                if (d.kind != Val::S) throw ParseError(t.line, t.col, "division by a non-scalar");
                if (d.e.is_zero()) throw ParseError(t.line, t.col, "division by zero");
                v = mul(scalar(Expr(1) / d.e), v, t);
            } else {
                return v;
            }
        }
    }

    Val parse_unary() {
        Token t = peek();
        if (accept("-")) return mul(scalar(Expr(-1)), parse_unary(), t);
        if (accept("+")) return parse_unary();
        return parse_power();
    }

    Val parse_power() {
        Val v = parse_atom();
        Token t = peek();
        if (!accept("^")) return v;
        Token k = expect_number();
        if (k.text.size() > 4) throw ParseError(k.line, k.col, "exponent too large");
        auto e = static_cast<std::uint32_t>(std::stoul(k.text));
        if (v.kind == Val::S) return scalar(v.e.pow(e));
        if (v.kind == Val::V) throw ParseError(t.line, t.col, "power of a vector");
        Val out = op_of(scalar(Expr(1)));
        if (!v.scalar_op) {
            out.op = expand_scalar(out.op, v.op.rows());
            out.scalar_op = false;
        }
        for (std::uint32_t i = 0; i < e; ++i) out = mul(out, v, t);
        return out;
    }

    std::vector<Val> parse_list(const char* close) {
        std::vector<Val> items;
        items.push_back(parse_sum());
        while (accept(",")) items.push_back(parse_sum());
        expect(close);
        return items;
    }

    ExprVec as_vector(const Val& v, const Token& at) {
        if (v.kind == Val::S) return {v.e};
        if (v.kind == Val::V) return v.vec;
        throw ParseError(at.line, at.col, "expected a vector");
    }

    Val parse_atom() {
        Token t = peek();
        if (t.type == Token::Number) {
            next();
            return scalar(Expr(Rational(mpz_class(t.text))));
        }
        if (accept("(")) {
            auto items = parse_list(")");
            if (items.size() == 1) return items[0];
            Val v;
            v.kind = Val::V;
            for (const auto& it : items) {
                if (it.kind != Val::S) throw ParseError(t.line, t.col, "vector entries must be expressions");
                v.vec.push_back(it.e);
            }
            return v;
        }
        if (accept("[")) {
            std::vector<std::vector<Operator>> rows;
            do {
                Token rt = peek();
                expect("[");
                std::vector<Operator> row;
                for (auto& it : parse_list("]")) {
                    if (it.kind == Val::V) throw ParseError(rt.line, rt.col, "matrix entries cannot be vectors");
                    Val o = op_of(it);
                    if (o.op.rows() != 1 || o.op.cols() != 1)
                        throw ParseError(rt.line, rt.col, "matrix entries must be scalar operators");
                    row.push_back(o.op);
                }
                if (!rows.empty() && row.size() != rows[0].size())
                    throw ParseError(rt.line, rt.col, "rows of different length");
                rows.push_back(std::move(row));
            } while (accept(","));
            expect("]");
            Val v;
            v.kind = Val::O;
            v.op = from_entries(rows, kWork);
            return v;
        }
        if (t.type != Token::Ident) throw ParseError(t.line, t.col, t.type == Token::End ? "unexpected end of input" : "unexpected '" + t.text + "'");
        next();
        if (t.text == "D") {
            Val v;
            v.kind = Val::O;
            v.op = Operator::d_power(1, 1, kWork);
            v.scalar_op = true;
            return v;
        }
        if (t.text == "x") return scalar(Expr::x());
        if (t.text == "Dinv") {
            expect("(");
            Token at = peek();
            Val d = parse_sum();
            expect(")");
            if (d.kind != Val::S) throw ParseError(at.line, at.col, "Dinv needs a scalar density");
            if (d.e.is_zero()) throw ParseError(at.line, at.col, "Dinv of zero");
            return scalar(nonlocal_symbol(d.e));
        }
        if (t.text == "tail") {
            expect("(");
            Token at = peek();
            ExprVec left = as_vector(parse_sum(), at);
            expect(";");
            Token bt = peek();
            ExprVec right = as_vector(parse_sum(), bt);
            expect(")");
            if (left.size() != right.size()) throw ParseError(at.line, at.col, "tail vectors of different length");
            Val v;
            v.kind = Val::O;
            v.op = Operator::tail(left, right, kWork);
            return v;
        }
        const Session& s = *s_;
        if (auto it = s.exprs.find(t.text); it != s.exprs.end()) {
            if (it->second.size() == 1) return scalar(it->second[0]);
            Val v;
            v.kind = Val::V;
            v.vec = it->second;
            return v;
        }
        if (auto it = s.nonlocals.find(t.text); it != s.nonlocals.end()) return scalar(it->second);
        if (auto it = s.ops.find(t.text); it != s.ops.end()) {
            Val v;
            v.kind = Val::O;
            v.op = it->second.op.with_variance(kWork);
            if (it->second.explicit_variance) v.var = it->second.op.variance();
            return v;
        }
        if (auto it = s.metrics.find(t.text); it != s.metrics.end()) {
            Val v;
            v.kind = Val::O;
            v.op = Operator::multiplication(it->second, kWork);
            return v;
        }
        if (auto it = s.constants.find(t.text); it != s.constants.end()) return scalar(Expr::constant(it->second));
        if (auto j = jet_of(s, t.text)) return scalar(*j);
        throw ParseError(t.line, t.col, "unknown identifier '" + t.text + "'");
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    const Session* s_;
};

std::string matrix_string(const Matrix& m, const Names& names) {
    std::string out = "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        out += i ? ", [" : "[";
        for (std::size_t j = 0; j < m.cols(); ++j) out += (j ? ", " : "") + to_string(m(i, j), names);
        out += "]";
    }
    return out + "]";
}

}  // namespace

bool Session::has_name(const std::string& s) const {
    for (const auto& f : names.fields)
        if (f == s) return true;
    return constants.count(s) || exprs.count(s) || nonlocals.count(s) || ops.count(s) || metrics.count(s);
}

Session parse_session(const std::string& text) { return Parser(text, nullptr).parse_session(); }

std::string print_session(const Session& s) {
    std::string out = "fields ";
    for (std::size_t i = 0; i < s.names.fields.size(); ++i) out += (i ? ", " : "") + s.names.fields[i];
    out += ";\n";
    for (const auto& [kind, name] : s.order) {
        switch (kind) {
            case Session::Kind::Const:
                out += "const " + name + ": " + name + "^2 = " + constant_info(s.constants.at(name)).square.get_str() +
                       ";\n";
                break;
            case Session::Kind::Expr: {
                const ExprVec& v = s.exprs.at(name);
                out += "expr " + name + " = " + (v.size() == 1 ? to_string(v[0], s.names) : to_string(v, s.names)) +
                       ";\n";
                break;
            }
            case Session::Kind::Nonlocal:
                out += "nonlocal " + name + " = " + to_string(s.nonlocals.at(name), s.names) + ";\n";
                break;
            case Session::Kind::Op: {
                const auto& o = s.ops.at(name);
                out += "op " + name;
                if (o.explicit_variance) out += " : " + to_string(o.op.variance());
                out += " = " + to_string(o.op, s.names) + ";\n";
                break;
            }
            case Session::Kind::Metric:
                out += "metric " + name + " = " + matrix_string(s.metrics.at(name), s.names) + ";\n";
                break;
        }
    }
    return out;
}

Value parse_value(const Session& s, const std::string& text) {
    Parser p(text, &s);
    Token at = p.first();
    Val v = p.parse_whole();
    if (v.kind == Val::S) return ScalarValue{v.e};
    if (v.kind == Val::V) return VectorValue{v.vec};
    OperatorValue o{Parser::finish_operator(v, at, s.n()), v.var};
    return o;
}

Expr parse_expr(const Session& s, const std::string& text) {
    Value v = parse_value(s, text);
    if (auto* e = std::get_if<ScalarValue>(&v)) return e->value;
    throw ParseError(1, 1, "expected a scalar expression");
}

ExprVec parse_vector(const Session& s, const std::string& text) {
    Value v = parse_value(s, text);
    if (auto* e = std::get_if<ScalarValue>(&v)) return {e->value};
    if (auto* e = std::get_if<VectorValue>(&v)) return e->value;
    throw ParseError(1, 1, "expected a vector");
}

NamedOperator parse_operator(const Session& s, const std::string& text, Variance fallback) {
    if (auto it = s.ops.find(text); it != s.ops.end()) return it->second;
    Value v = parse_value(s, text);
    if (auto* o = std::get_if<OperatorValue>(&v))
        return {o->value.with_variance(o->variance.value_or(fallback)), o->variance.has_value()};
    if (auto* e = std::get_if<ScalarValue>(&v)) return {Operator::scalar(e->value, s.n(), fallback), false};
    throw ParseError(1, 1, "expected an operator");
}

Matrix parse_matrix(const Session& s, const std::string& text) {
    if (auto it = s.metrics.find(text); it != s.metrics.end()) return it->second;
    Parser p(text, &s);
    Token at = p.first();
    return Parser::finish_matrix(p.parse_whole(), at, s.n());
}

}  // namespace wnh
