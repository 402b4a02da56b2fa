#include "doctest.h"

#include "wnh/cli/command.hpp"

using namespace wnh;

namespace {
const char* kKdv =
    "fields u;\n"
    "op P = D;\n"
    "op Pt = D^3 + 2*u*D + u_1;\n"
    "op Jinv : V->Vs = tail((1); (1));\n"
    "expr tau = -(u^2+u_2)/2;\n";

std::string error_of(const std::string& text) {
    try {
        parse_session(text);
    } catch (const ParseError& e) {
        return e.what();
    }
    return "";
}
}  // namespace

TEST_CASE("session declarations") {
    auto s = parse_session("fields u, v; const sq2: sq2^2=2; expr H1 = (u^2+v^2)/sq2;");
    CHECK(s.n() == 2);
    CHECK(s.constants.size() == 1);
    CHECK(s.exprs.size() == 1);
    CHECK(to_string(s.exprs.at("H1")[0], s.names) == "1/2*sq2*v^2 + 1/2*sq2*u^2");
}

TEST_CASE("session errors carry positions") {
    CHECK(error_of("fields u, v;\nop P : Vs->V = [[D]];") == "line 2, column 16: shape mismatch: operator is 1x1 but there are 2 fields");
    CHECK(error_of("fields u;\nexpr a = u +;") == "line 2, column 13: unexpected ';'");
    CHECK(error_of("fields u;\nexpr a = q;") == "line 2, column 10: unknown identifier 'q'");
    CHECK(error_of("fields u;\nexpr u_2 = 1;") == "line 2, column 6: 'u_2' clashes with a jet variable");
    CHECK(error_of("fields u;\nexpr a = 1;\nexpr a = 2;") == "line 3, column 6: duplicate name 'a'");
    CHECK(error_of("expr a = 1;") == "line 1, column 1: fields must be declared before expr");
    CHECK(error_of("fields u; op P : Vs->V = D; op Q : Vs->V = P*P;").find("variance mismatch") != std::string::npos);
    CHECK(error_of("fields u; op J : V->Vs = tail((1);(1)); op Q : V->Vs = J*D*J;").empty());
    CHECK(error_of("fields u; expr a = 1/0;").find("division by zero") != std::string::npos);
    CHECK(error_of("fields u; expr a = u @ 2;") == "line 1, column 22: unexpected character '@'");
}

TEST_CASE("session round trip") {
    auto s = parse_session(kKdv);
    std::string once = print_session(s);
    CHECK(print_session(parse_session(once)) == once);
    CHECK(once.find("op Pt = D^3 + 2*u*D + u_1;") != std::string::npos);
    CHECK(once.find("op Jinv : V->Vs = tail((1); (1));") != std::string::npos);
    CHECK(s.ops.at("Jinv").op.variance() == Variance::VtoVs);
    CHECK(!s.ops.at("P").explicit_variance);
}

TEST_CASE("scalar operators adapt to the session size") {
    auto s = parse_session("fields u, v; op A = D + tail((v, u); (v, u)); op B = 2*u;");
    CHECK(s.ops.at("A").op.rows() == 2);
    CHECK(to_string(s.ops.at("B").op, s.names) == "[[2*u, 0], [0, 2*u]]");
}

TEST_CASE("commands") {
    auto s = parse_session(kKdv);
    CommandArgs a;
    a.values = {{"tau", {"tau"}}, {"op", {"P"}}};
    auto o = execute(s, "lie", a);
    CHECK(o.status == "value");
    CHECK(std::get<std::string>(o.result.at("lie")) == "D^3 + 2*u*D + u_1");
    CHECK(exit_code(o) == 0);

    CommandArgs c;
    c.values = {{"p", {"P"}}, {"ptilde", {"Pt"}}, {"j", {"Jinv"}}};
    auto v = execute(s, "certify-compatible", c);
    CHECK(v.status == "verified");
    std::string js = render_json(v);
    CHECK(js.find("\"status\": \"verified\"") != std::string::npos);
    CHECK(js.find("\"tau\"") != std::string::npos);
    CHECK(js == render_json(execute(s, "certify-compatible", c)));

    CommandArgs m;
    m.values = {{"p", {"Pt"}}, {"psi", {"u"}}};
    auto cas = execute(s, "casimir", m);
    CHECK(std::get<std::vector<std::string>>(cas.result.at("witness"))[0] == "(u_1)");

    auto bad = execute(s, "nope", {});
    CHECK(bad.status == "error");
    CHECK(exit_code(bad) == 3);
    auto missing = execute(s, "lie", {});
    CHECK(missing.diagnostics[0] == "missing option --tau");
}
