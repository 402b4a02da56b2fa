// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "properties.hpp"
#include "wnh/certify/certify.hpp"
#include "wnh/certify/dn.hpp"
#include "wnh/cli/session.hpp"
#include "wnh/geom/geom.hpp"
#include "wnh/ring/registry.hpp"
#include "wnh/varcalc/calculus.hpp"

using namespace wnh;

namespace {

struct Verdict {
    bool ok = true;
    std::string detail;
    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

int failures = 0;

void criterion(int id, const char* name, double limit_ms, const std::function<Verdict()>& body) {
    Verdict v;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        v = body();
    } catch (const std::exception& e) {
        v.ok = false;
        v.detail = std::string("exception: ") + e.what();
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    if (v.ok && limit_ms > 0 && ms > limit_ms) {
        v.ok = false;
        v.detail = "over the time limit of " + std::to_string(static_cast<int>(limit_ms)) + " ms";
    }
    if (!v.ok) ++failures;
    std::printf("%s %d %s (%.1f ms)%s%s\n", v.ok ? "PASS" : "FAIL", id, name, ms, v.detail.empty() ? "" : ": ",
                v.detail.c_str());
    std::fflush(stdout);
}

Operator op(const Session& s, const std::string& text) { return parse_operator(s, text).op; }
Expr ex(const Session& s, const std::string& text) { return parse_expr(s, text); }
ExprVec vec(const Session& s, const std::string& text) { return parse_vector(s, text); }

const Session& kdv() {
    static const Session s = parse_session(
        "fields u;\n"
        "op P : Vs->V = D;\n"
        "op Pt : Vs->V = D^3 + 2*u*D + u_1;\n"
        "op Jinv : V->Vs = tail((1); (1));\n");
    return s;
}

const Session& nls() {
    static const Session s = parse_session(
        "fields u, v;\n"
        "const sq2: sq2^2 = 2;\n"
        "expr H1 = (u^2 + v^2)/sq2;\n"
        "expr Y1 = (-sq2*v, sq2*u);\n"
        "op J : V->Vs = [[0, 1], [-1, 0]];\n"
        "op Jinv : Vs->V = [[0, -1], [1, 0]];\n"
        "op Pt : Vs->V = D + tail(Y1; Y1);\n");
    return s;
}

// Searches alternating triples of simple vectors for a nonzero value of the
// closedness trilinear form; returns a description or "".
std::string non_closed_witness(const Operator& j) {
    const Session s = parse_session(j.rows() == 1 ? "fields u;" : "fields u, v;");
    const std::vector<std::string> cands =
        j.rows() == 1 ? std::vector<std::string>{"1", "u", "u^2", "u_1", "u*u_1"}
                      : std::vector<std::string>{"(1, 0)", "(0, 1)", "(u, v)", "(v, u)", "(u, 0)", "(0, v)", "(1, 1)"};
    for (std::size_t a = 0; a < cands.size(); ++a)
        for (std::size_t b = a + 1; b < cands.size(); ++b)
            for (std::size_t c = b + 1; c < cands.size(); ++c) {
                auto r = symplectic_trilinear(j, vec(s, cands[a]), vec(s, cands[b]), vec(s, cands[c]));
                if (r.value && !r.is_zero())
                    return "X = " + cands[a] + ", " + cands[b] + ", " + cands[c] + " gives " +
                           to_string(ExprVec{r.value->density()}, s.names);
            }
    return "";
}

}  // namespace

int main() {
    criterion(1, "KdV Lie derivative L_tau(D) = D^3 + 2uD + u_1", 1000, [] {
        const auto& s = kdv();
        Verdict v;
        const ExprVec tau = {ex(s, "-(u^2 + u_2)/2")};
        const Operator lie = lie_operator(tau, op(s, "P"));
        v.require(equals(lie, op(s, "Pt")), "got " + to_string(lie));
        v.require(to_string(lie) == "D^3 + 2*u*D + u_1", "normal form " + to_string(lie));
        return v;
    });

    criterion(2, "KdV second order L_tau(L_tau(D)) = L_tau~(D)", 1000, [] {
        const auto& s = kdv();
        Verdict v;
        const ExprVec tau = {ex(s, "-(u^2 + u_2)/2")};
        const ExprVec tau2 = {ex(s, "-u_4/2 - u_1^2/2 + 5*u^3/6")};
        const Operator d = op(s, "P");
        const Operator lhs = lie_operator(tau, lie_operator(tau, d));
        const Operator rhs = lie_operator(tau2, d);
        v.require(equals(lhs, rhs), "L_tau(L_tau(D)) = " + to_string(lhs) + " but L_tau~(D) = " + to_string(rhs) +
                                        "; tau~ = -(u^3 + 4*u*u_2 + 3*u_1^2 + u_4)/2 satisfies the identity");
        return v;
    });

    criterion(3, "NLS pipeline", 5000, [] {
        const auto& s = nls();
        Verdict v;
        const Operator j = op(s, "J"), jinv = op(s, "Jinv"), pt = op(s, "Pt");
        const ExprVec dh = euler(ex(s, "H1"), 2);
        auto d = jpj_decompose(j, pt);
        v.require(d.status == Status::Verified, "jpj decomposition " + to_string(d.status));
        const Operator expect =
            -Operator::d_power(2, 1, Variance::VtoVs) - Operator::tail(dh, dh, Variance::VtoVs);
        v.require(equals(d.jpj, expect), "J P~ J = " + to_string(d.jpj));
        v.require(d.h_data.size() == 1 && d.h_data[0].second == ex(s, "H1"), "H_1 not recovered");

        auto c = compatibility_certificate(jinv, pt, j);
        v.require(c.status == Status::Verified, "compatibility " + to_string(c.status));
        const Expr om = nonlocal_symbol(ex(s, "H1"));
        const ExprVec y1 = s.exprs.at("Y1");
        bool tail_ok = c.tau.size() == 2;
        for (std::size_t i = 0; tail_ok && i < 2; ++i) {
            Expr local = c.tau[i] - y1[i] * om / Expr(2);
            tail_ok = !local.has_nonlocal();
        }
        v.require(tail_ok, "tau = " + to_string(c.tau) + " lacks the tail 1/2 Y_1 Dinv(H_1)");
        v.require(equals(lie_operator(c.tau, jinv), pt), "L_tau(J^-1) != P~");
        // values of the homotopy integral
        v.require(d.gamma0 == vec(s, "(-u_1/2, -v_1/2)"), "gamma0 = " + to_string(d.gamma0));
        ExprVec tau0(2);
        for (std::size_t i = 0; i < 2 && c.tau.size() == 2; ++i) tau0[i] = c.tau[i] - y1[i] * om / Expr(2);
        v.require(tau0 == vec(s, "(-v_1/2, u_1/2)"), "tau0 = " + to_string(tau0));
        return v;
    });

    criterion(4, "homotopy formula for J = D", 1000, [] {
        Verdict v;
        const Operator d = Operator::d_power(1, 1, Variance::VtoVs);
        const ExprVec z = homotopy_potential(d);
        v.require(z == ExprVec{Expr::jet(0, 1) / Expr(2)}, "zeta = " + to_string(z));
        v.require(equals(exterior(z), d), "zeta' - zeta'^dagger = " + to_string(exterior(z)));
        return v;
    });

    criterion(5, "KdV nonlocal route", 5000, [] {
        const auto& s = kdv();
        Verdict v;
        const Operator d = op(s, "P"), pt = op(s, "Pt"), jinv = op(s, "Jinv");
        auto dec = jpj_decompose(jinv, pt);
        const Expr u = ex(s, "u");
        const Operator expect = Operator::d_power(1, 1, Variance::VtoVs) +
                                Operator::tail({u}, {Expr(1)}, Variance::VtoVs) +
                                Operator::tail({Expr(1)}, {u}, Variance::VtoVs);
        v.require(equals(dec.jpj, expect), "J P~ J = " + to_string(dec.jpj));
        v.require(dec.k.size() == 1 && dec.k[0] == ex(s, "u^2/2"), "K_1 not u^2/2");
        auto c = compatibility_certificate(d, pt, jinv);
        const Expr w = nonlocal_symbol(u);
        const ExprVec tau = {ex(s, "-u_2/2 - 3*u^2/4") - ex(s, "u_1") * w / Expr(2)};
        v.require(c.status == Status::Verified, "compatibility " + to_string(c.status));
        v.require(c.tau == tau, "tau = " + to_string(c.tau));
        v.require(equals(lie_operator(tau, d), pt), "L_tau(D) != P~");
        const ExprVec q = {ex(s, "u^2/4") + ex(s, "u_1") * w / Expr(2)};
        v.require(lie_operator(q, d).is_zero(), "L_Q(D) = " + to_string(lie_operator(q, d)));
        return v;
    });

    criterion(6, "randomized property suites", 60000, [] {
        Verdict v;
        int cases = 0;
        std::string names;
        for (const auto& suite : testing::property_suites()) {
            auto r = suite.run(1234567u, suite.cases);
            cases += r.cases;
            v.require(r.failures == 0, suite.name + ": " + r.first_failure);
        }
        v.require(cases >= 500, "only " + std::to_string(cases) + " cases");
        if (v.ok) v.detail = std::to_string(cases) + " cases";
        return v;
    });

    criterion(7, "random density lists give certified symplectic operators", 0, [] {
        Verdict v;
        testing::Gen gen(7777u);
        int certified = 0, refuted = 0, witnessed = 0, inconsistent = 0;
        std::string first;
        for (int i = 0; i < 20; ++i) {
            const std::size_t n = static_cast<std::size_t>(gen.integer(1, 2));
            const int m = gen.integer(1, 2);
            std::vector<Expr> psi, eps;
            while (static_cast<int>(psi.size()) < m) {
                Expr p = gen.poly(n, 2, 3, 2);
                if (is_zero(euler(p, n))) continue;
                psi.push_back(p);
                eps.push_back(Expr(gen.integer(0, 1) ? 1 : -1));
            }
            const Operator j = symplectic_from_densities(psi, eps, n);
            auto c = wnl_symplectic_certificate(j);
            if (c.status == Status::Verified && c.residual.is_zero()) {
                ++certified;
                // a certified operator must not have a witness either
                if (!non_closed_witness(j).empty()) ++inconsistent;
                continue;
            }
            ++refuted;
            const std::string w = non_closed_witness(j);
            if (!w.empty()) ++witnessed;
            if (first.empty()) {
                std::ostringstream os;
                os << "psi =";
                for (const auto& p : psi) os << ' ' << to_string(p, n == 1 ? Names{{"u"}} : Names{{"u", "v"}});
                os << (w.empty() ? ", no witness found" : ", not closed: " + w);
                first = os.str();
            }
        }
        v.require(inconsistent == 0, std::to_string(inconsistent) + " certified operators fail the trilinear test");
        v.require(refuted == 0, std::to_string(certified) + "/20 certified; " + std::to_string(refuted) +
                                    " refuted, " + std::to_string(witnessed) +
                                    " of them with an independent non-closedness witness; first " + first);
        return v;
    });

    criterion(8, "Dubrovin-Novikov operators", 5000, [] {
        Verdict v;
        const Session s2 = parse_session("fields u, v;");
        auto flat = dn_validate(parse_matrix(s2, "[[1, 0], [0, 1]]"));
        v.require(flat.flat, "diag(1, 1) not flat");
        for (const auto& b : flat.b) v.require(b.is_zero(), "b nonzero for diag(1, 1)");
        v.require(equals(dn_operator(flat), Operator::d_power(2, 1, Variance::VstoV)),
                  "operator " + to_string(dn_operator(flat)));

        const Session s1 = parse_session("fields u;");
        auto one = dn_validate(parse_matrix(s1, "[[u]]"));
        v.require(one.flat, "g = u not flat");
        v.require(one.b[0](0, 0) == Expr(1) / Expr(2), "b = " + to_string(ExprVec{one.b[0](0, 0)}));
        v.require(equals(dn_operator(one), op(s1, "u*D + u_1/2").with_variance(Variance::VstoV)),
                  "operator " + to_string(dn_operator(one)));

        auto curved = dn_validate(parse_matrix(s2, "[[1, 0], [0, 1/(1 + u^2)]]"));
        v.require(!curved.flat, "curved metric accepted");
        v.require(!curved.nonzero_curvature.empty(), "no curvature component reported");
        v.require(curved.riemann[0][1](0, 1) == ex(s2, "-1/(1 + u^2)"), "R^1_212 wrong");
        return v;
    });

    criterion(9, "negative controls", 1000, [] {
        Verdict v;
        const Session s = parse_session("fields u, v, w;\nop J : V->Vs = [[0, w, 0], [-w, 0, 0], [0, 0, 0]];\n");
        auto c = wnl_symplectic_certificate(op(s, "J"));
        v.require(c.status == Status::Refuted, "3x3 form " + to_string(c.status));
        const auto& k = kdv();
        auto r = casimir_check(op(k, "Pt"), {ex(k, "u")});
        v.require(r.size() == 1 && !r[0].casimir, "u reported as a Casimir");
        v.require(r.size() == 1 && r[0].witness == ExprVec{ex(k, "u_1")}, "witness differs from u_1");
        return v;
    });

    return failures ? 1 : 0;
}
