#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wnh/error.hpp"
#include "wnh/opalg/operator.hpp"
#include "wnh/ring/printer.hpp"

namespace wnh {

class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& what)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line_(line),
          column_(column) {}
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_, column_;
};

struct NamedOperator {
    Operator op;
    bool explicit_variance = false;
};

struct Session {
    enum class Kind { Const, Expr, Nonlocal, Op, Metric };

    Names names;  // field names
    std::map<std::string, std::uint32_t> constants;
    std::map<std::string, ExprVec> exprs;  // scalars have length 1
    std::map<std::string, Expr> nonlocals;
    std::map<std::string, NamedOperator> ops;
    std::map<std::string, Matrix> metrics;
    std::vector<std::pair<Kind, std::string>> order;

    std::size_t n() const { return names.fields.size(); }
    bool has_name(const std::string& s) const;
};

Session parse_session(const std::string& text);
// Canonical text; parse_session(print_session(s)) prints identically.
std::string print_session(const Session& s);

// A value written in session syntax: expression, vector or operator.
struct ScalarValue {
    Expr value;
};
struct VectorValue {
    ExprVec value;
};
struct OperatorValue {
    Operator value;
    std::optional<Variance> variance;  // known when built from named operators
};
using Value = std::variant<ScalarValue, VectorValue, OperatorValue>;

Value parse_value(const Session& s, const std::string& text);
Expr parse_expr(const Session& s, const std::string& text);
// Scalars are read as vectors of length 1.
ExprVec parse_vector(const Session& s, const std::string& text);
// Scalar operators (multiples of the identity) are expanded to n x n. The
// variance is the declared one of a named operator, else `fallback`.
NamedOperator parse_operator(const Session& s, const std::string& text, Variance fallback = Variance::VstoV);
Matrix parse_matrix(const Session& s, const std::string& text);

}  // namespace wnh
