#include "wnh/cli/command.hpp"

#include <functional>
#include <json.hpp>

#include "wnh/certify/certify.hpp"
#include "wnh/certify/dn.hpp"

namespace wnh {
namespace {

using Handler = std::function<void(const Session&, const CommandArgs&, Outcome&)>;

const std::string& arg(const CommandArgs& a, const std::string& name) {
    auto it = a.values.find(name);
    if (it == a.values.end() || it->second.empty()) throw PreconditionError("missing option --" + name);
    return it->second.front();
}

std::vector<std::string> args(const CommandArgs& a, const std::string& name) {
    auto it = a.values.find(name);
    return it == a.values.end() ? std::vector<std::string>{} : it->second;
}

bool has(const CommandArgs& a, const std::string& name) { return !args(a, name).empty(); }

NonlocalPolicy policy(const CommandArgs& a) {
    return a.strict_nonlocal ? NonlocalPolicy::Strict : NonlocalPolicy::Permissive;
}

// Operators declared without a variance take the one their role requires.
Operator role(const Session& s, const std::string& text, Variance wanted, const std::string& label) {
    NamedOperator o = parse_operator(s, text, wanted);
    if (o.explicit_variance && o.op.variance() != wanted)
        throw PreconditionError(label + " must be " + to_string(wanted) + ", not " + to_string(o.op.variance()));
    return o.op.with_variance(wanted);
}

std::string str(const Session& s, const Expr& e) { return to_string(e, s.names); }
std::string str(const Session& s, const ExprVec& v) { return to_string(v, s.names); }
std::string str(const Session& s, const Operator& a) { return to_string(a, s.names); }
std::string str(const Session& s, const TruncatedSeries& t) { return to_string(t, s.names); }

std::string matrix_str(const Session& s, const Matrix& m) {
    std::string out = "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        out += i ? ", [" : "[";
        for (std::size_t j = 0; j < m.cols(); ++j) out += (j ? ", " : "") + str(s, m(i, j));
        out += "]";
    }
    return out + "]";
}

std::string verdict(Status st) {
    switch (st) {
        case Status::Verified: return "verified";
        case Status::Refuted: return "refuted";
        default: return "inconclusive";
    }
}

void created_note(const Session& s, const std::vector<std::uint32_t>& ids, Outcome& o) {
    for (auto id : ids) o.diagnostics.push_back("introduced Dinv(" + str(s, nonlocal_density(id)) + ")");
}

void cmd_eval(const Session& s, const CommandArgs& a, Outcome& o) {
    Value v = parse_value(s, arg(a, "expr"));
    o.status = "value";
    if (auto* e = std::get_if<ScalarValue>(&v)) {
        o.result["kind"] = std::string("expression");
        o.result["value"] = str(s, e->value);
    } else if (auto* e = std::get_if<VectorValue>(&v)) {
        o.result["kind"] = std::string("vector");
        o.result["value"] = str(s, e->value);
    } else {
        const auto& op = std::get<OperatorValue>(v);
        o.result["kind"] = std::string("operator");
        o.result["value"] = str(s, op.value);
        if (op.variance) o.result["variance"] = to_string(*op.variance);
    }
}

void cmd_adjoint(const Session& s, const CommandArgs& a, Outcome& o) {
    Operator op = parse_operator(s, arg(a, "op")).op;
    Operator ad = adjoint(op);
    o.status = "value";
    o.result["adjoint"] = str(s, ad);
    o.result["variance"] = to_string(ad.variance());
    o.result["skew"] = same_action(ad, -op) ? std::string("true") : std::string("false");
}

void cmd_compose(const Session& s, const CommandArgs& a, Outcome& o) {
    Operator x = parse_operator(s, arg(a, "a")).op, y = parse_operator(s, arg(a, "b")).op;
    Operator c = compose(x, y);
    o.status = "value";
    o.result["composition"] = str(s, c);
    o.result["variance"] = to_string(c.variance());
}

void cmd_apply(const Session& s, const CommandArgs& a, Outcome& o) {
    Operator op = parse_operator(s, arg(a, "op")).op;
    auto r = apply(op, parse_vector(s, arg(a, "vec")), policy(a));
    o.status = "value";
    o.result["value"] = str(s, r.value);
    created_note(s, r.created, o);
}

void cmd_lie(const Session& s, const CommandArgs& a, Outcome& o) {
    ExprVec tau = parse_vector(s, arg(a, "tau"));
    o.status = "value";
    if (has(a, "gamma")) {
        o.result["lie"] = str(s, lie_covector(tau, parse_vector(s, arg(a, "gamma")), policy(a)));
        return;
    }
    Operator op = parse_operator(s, arg(a, "op")).op;
    Operator l = lie_operator(tau, op);
    o.result["lie"] = str(s, l);
    o.result["variance"] = to_string(l.variance());
}

void cmd_euler(const Session& s, const CommandArgs& a, Outcome& o) {
    Expr f = parse_expr(s, arg(a, "expr"));
    o.status = "value";
    o.result["euler"] = str(s, euler(f, s.n()));
    o.result["exact"] = is_exact(f) ? std::string("true") : std::string("false");
}

void cmd_homotopy(const Session& s, const CommandArgs& a, Outcome& o) {
    Operator j = role(s, arg(a, "op"), Variance::VtoVs, "the operator");
    ExprVec z = homotopy_potential(j);
    Operator back = exterior(z);
    o.status = "value";
    o.result["zeta"] = str(s, z);
    o.result["exterior"] = str(s, back);
    o.result["reproduces"] = same_action(back, j) ? std::string("true") : std::string("false");
}

void put_pairs(const Session& s, Outcome& o, const std::string& weights, const std::string& dens,
               const std::vector<std::pair<Expr, Expr>>& v) {
    std::vector<std::string> w, d;
    for (const auto& [e, h] : v) {
        w.push_back(str(s, e));
        d.push_back(str(s, h));
    }
    o.result[weights] = w;
    o.result[dens] = d;
}

std::vector<std::string> strs(const Session& s, const std::vector<Expr>& v) {
    std::vector<std::string> out;
    for (const auto& e : v) out.push_back(str(s, e));
    return out;
}

void cmd_certify_symplectic(const Session& s, const CommandArgs& a, Outcome& o) {
    Operator j = role(s, arg(a, "j"), Variance::VtoVs, "J");
    std::optional<std::vector<Expr>> dens;
    if (has(a, "density")) {
        dens.emplace();
        for (const auto& t : args(a, "density")) dens->push_back(parse_expr(s, t));
    }
    auto c = wnl_symplectic_certificate(j, dens);
    o.status = verdict(c.status);
    o.diagnostics = c.diagnostics;
    if (c.status == Status::NotApplicable) return;
    o.result["gamma0"] = str(s, c.gamma0);
    o.result["gamma"] = str(s, c.gamma);
    put_pairs(s, o, "epsilon", "H", c.tail_data);
    o.residual = str(s, c.residual);
}

void fill_jpj(const Session& s, const JpjDecomposition& d, Outcome& o) {
    put_pairs(s, o, "epsilon", "psi", d.psi_data);
    o.result["K"] = strs(s, d.k);
    put_pairs(s, o, "epsilon_tilde", "H", d.h_data);
    std::vector<std::string> y;
    for (const auto& v : d.y) y.push_back(str(s, v));
    o.result["Y"] = y;
    o.result["jpj"] = str(s, d.jpj);
    o.result["tails_match"] = d.tails_match ? std::string("true") : std::string("false");
    o.result["gamma0"] = str(s, d.gamma0);
    o.result["gamma"] = str(s, d.gamma);
}

void cmd_certify_compatible(const Session& s, const CommandArgs& a, Outcome& o) {
    Operator p = role(s, arg(a, "p"), Variance::VstoV, "P");
    Operator pt = role(s, arg(a, "ptilde"), Variance::VstoV, "P~");
    Operator j = role(s, arg(a, "j"), Variance::VtoVs, "J");
    auto c = compatibility_certificate(p, pt, j, a.truncate);
    o.status = verdict(c.status);
    o.diagnostics = c.diagnostics;
    if (c.jpj.status == Status::NotApplicable) return;
    fill_jpj(s, c.jpj, o);
    if (!c.tau.empty()) {
        o.result["tau"] = str(s, c.tau);
        o.result["lie"] = str(s, c.lie);
    }
    o.residual = str(s, c.status == Status::Verified || !c.tau.empty() ? c.residual : c.jpj.residual);
}

void cmd_certify_hamiltonian(const Session& s, const CommandArgs& a, Outcome& o) {
    Operator p = role(s, arg(a, "p"), Variance::VstoV, "P");
    Operator pt = role(s, arg(a, "ptilde"), Variance::VstoV, "P~");
    Operator j = role(s, arg(a, "j"), Variance::VtoVs, "J");
    auto c = compatibility_certificate(p, pt, j, a.truncate);
    auto h = hamiltonian_pair_certificate(p, pt, j, c);
    o.status = verdict(h.status);
    o.diagnostics = c.diagnostics;
    o.diagnostics.insert(o.diagnostics.end(), h.diagnostics.begin(), h.diagnostics.end());
    if (!c.tau.empty()) o.result["tau"] = str(s, c.tau);
    if (h.status == Status::NotApplicable || c.status != Status::Verified) return;
    o.result["L"] = strs(s, h.l);
    o.result["M"] = strs(s, h.m);
    o.result["gamma"] = str(s, c.jpj.gamma);
    o.result["gamma_tilde0"] = str(s, h.gamma_tilde0);
    o.result["gamma_tilde"] = str(s, h.gamma_tilde);
    o.residual = str(s, h.residual);
    if (h.status == Status::Verified) {
        o.result["tau_tilde"] = str(s, h.tau_tilde);
        o.result["second_order"] = h.second_order_holds ? std::string("holds") : std::string("fails");
        o.result["second_order_residual"] = str(s, h.second_residual);
    }
}

void cmd_casimir(const Session& s, const CommandArgs& a, Outcome& o) {
    Operator p = role(s, arg(a, "p"), Variance::VstoV, "P");
    std::vector<Expr> psi;
    for (const auto& t : args(a, "psi")) psi.push_back(parse_expr(s, t));
    auto r = casimir_check(p, psi);
    std::vector<std::string> flags, wit;
    for (const auto& c : r) {
        flags.push_back(c.casimir ? "true" : "false");
        wit.push_back(str(s, c.witness));
    }
    o.status = "value";
    o.result["casimir"] = flags;
    o.result["witness"] = wit;
}

void cmd_zero_order(const Session& s, const CommandArgs& a, Outcome& o) {
    Operator j = role(s, arg(a, "j"), Variance::VtoVs, "J");
    auto r = zero_order_check(j);
    o.result["form_ok"] = r.form_ok ? std::string("true") : std::string("false");
    o.diagnostics = r.violations;
    if (!r.certificate) {
        o.status = "refuted";
        return;
    }
    o.status = verdict(r.certificate->status);
    o.diagnostics.insert(o.diagnostics.end(), r.certificate->diagnostics.begin(), r.certificate->diagnostics.end());
    if (r.certificate->status == Status::NotApplicable) return;
    o.result["gamma0"] = str(s, r.certificate->gamma0);
    o.residual = str(s, r.certificate->residual);
}

void cmd_dn_validate(const Session& s, const CommandArgs& a, Outcome& o) {
    auto d = dn_validate(parse_matrix(s, arg(a, "metric")));
    const std::size_t n = s.n();
    o.status = "value";
    o.result["flat"] = d.flat ? std::string("true") : std::string("false");
    o.result["g_lower"] = matrix_str(s, d.g_lower);
    std::vector<std::string> gam, b;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                auto idx = std::to_string(k + 1) + "_" + std::to_string(i + 1) + std::to_string(j + 1);
                if (!d.christoffel[k](i, j).is_zero())
                    gam.push_back("Gamma^" + idx + " = " + str(s, d.christoffel[k](i, j)));
                if (!d.b[k](i, j).is_zero())
                    b.push_back("b^" + std::to_string(i + 1) + std::to_string(j + 1) + "_" + std::to_string(k + 1) +
                                " = " + str(s, d.b[k](i, j)));
            }
    o.result["christoffel"] = gam;
    o.result["b"] = b;
    o.result["curvature"] = d.nonzero_curvature;
    o.result["operator"] = str(s, dn_operator(d));
}

void cmd_dn_canonical(const Session& s, const CommandArgs& a, Outcome& o) {
    auto c = dn_canonical(parse_matrix(s, arg(a, "metric")), parse_vector(s, arg(a, "coords")));
    o.status = "value";
    o.result["flat_chart"] = c.is_flat_chart ? std::string("true") : std::string("false");
    o.result["eta"] = matrix_str(s, c.eta);
    o.result["p_can"] = str(s, c.p_can);
}

void cmd_expand(const Session& s, const CommandArgs& a, Outcome& o) {
    Operator op = parse_operator(s, arg(a, "op")).op;
    o.status = "value";
    o.result["series"] = str(s, expand_truncated(op, a.truncate));
    auto prof = series_profile(op);
    o.result["degree"] = prof.degree ? std::to_string(*prof.degree) : std::string("none");
    o.result["nondegenerate"] = prof.nondegenerate ? std::string("true") : std::string("false");
    o.result["skew"] = prof.skew ? std::string("true") : std::string("false");
}

void cmd_invert(const Session& s, const CommandArgs& a, Outcome& o) {
    Operator op = parse_operator(s, arg(a, "op")).op;
    auto prof = series_profile(op);
    const int m = prof.degree ? std::abs(*prof.degree) : 0;
    auto inv = invert_truncated(op, a.truncate + m);
    auto check = multiply(expand_truncated(op, a.truncate + 2 * m + 2), inv, a.truncate);
    o.status = "value";
    o.result["inverse"] = str(s, inv);
    o.result["identity_through"] = is_identity_through(check, a.truncate) ? std::string("true") : std::string("false");
}

void cmd_schouten(const Session& s, const CommandArgs& a, Outcome& o) {
    Operator h = parse_operator(s, arg(a, "a")).op, k = parse_operator(s, arg(a, "b")).op;
    auto chis = args(a, "chi");
    if (chis.size() != 3) throw PreconditionError("schouten needs exactly three --chi covectors");
    auto r = schouten_eval(h, k, parse_vector(s, chis[0]), parse_vector(s, chis[1]), parse_vector(s, chis[2]),
                           policy(a));
    if (r.inconclusive()) {
        o.status = "inconclusive";
        o.result["density"] = str(s, r.residue);
        o.diagnostics.push_back("nonlocal density Dinv-reduction failed: " + str(s, r.residue));
        return;
    }
    o.status = "value";
    o.result["density"] = str(s, r.value->density());
    o.result["zero"] = r.is_zero() ? std::string("true") : std::string("false");
}

struct Entry {
    CommandSpec spec;
    Handler run;
};

const std::vector<Entry>& entries() {
    static const std::vector<Entry> table = {
        {{"eval", "Canonical form of an expression, vector or operator", {{"expr", "value"}}}, cmd_eval},
        {{"adjoint", "Formal adjoint", {{"op", "operator"}}}, cmd_adjoint},
        {{"compose", "Composition a o b", {{"a", "left operator"}, {"b", "right operator"}}}, cmd_compose},
        {{"apply", "Apply an operator to a vector", {{"op", "operator"}, {"vec", "vector"}}}, cmd_apply},
        {{"lie",
          "Lie derivative along tau of an operator or covector",
          {{"tau", "vector field"}, {"op", "operator", false}, {"gamma", "covector", false}}},
         cmd_lie},
        {{"euler", "Variational derivative", {{"expr", "density"}}}, cmd_euler},
        {{"homotopy", "Homotopy potential of a differential operator", {{"op", "operator V->Vs"}}}, cmd_homotopy},
        {{"certify-symplectic",
          "Weakly nonlocal symplecticity certificate",
          {{"j", "operator V->Vs"}, {"density", "tail density", false, true}}},
         cmd_certify_symplectic},
        {{"certify-compatible",
          "Compatibility certificate for P and P~ = L_tau(P)",
          {{"p", "operator Vs->V"}, {"ptilde", "operator Vs->V"}, {"j", "inverse of P"}}},
         cmd_certify_compatible},
        {{"certify-hamiltonian",
          "Hamiltonianity certificate for P~",
          {{"p", "operator Vs->V"}, {"ptilde", "operator Vs->V"}, {"j", "inverse of P"}}},
         cmd_certify_hamiltonian},
        {{"casimir", "Casimir check", {{"p", "operator"}, {"psi", "density", true, true}}}, cmd_casimir},
        {{"zero-order", "Zero-order symplectic structure check", {{"j", "operator V->Vs"}}}, cmd_zero_order},
        {{"dn-validate", "Dubrovin-Novikov data for a contravariant metric", {{"metric", "metric"}}}, cmd_dn_validate},
        {{"dn-canonical",
          "Push a metric forward to candidate flat coordinates",
          {{"metric", "metric"}, {"coords", "coordinates"}}},
         cmd_dn_canonical},
        {{"expand", "Expansion as a formal series", {{"op", "operator"}}}, cmd_expand},
        {{"invert", "Inverse as a truncated formal series", {{"op", "operator"}}}, cmd_invert},
        {{"schouten",
          "Schouten bracket evaluated on three covectors",
          {{"a", "first operator"}, {"b", "second operator"}, {"chi", "covector", true, true}}},
         cmd_schouten},
    };
    return table;
}

}  // namespace

const std::vector<CommandSpec>& command_table() {
    static const std::vector<CommandSpec> specs = [] {
        std::vector<CommandSpec> out;
        for (const auto& e : entries()) out.push_back(e.spec);
        return out;
    }();
    return specs;
}

Outcome execute(const Session& s, const std::string& command, const CommandArgs& a) {
    Outcome o;
    o.command = command;
    try {
        for (const auto& e : entries())
            if (e.spec.name == command) {
                e.run(s, a, o);
                return o;
            }
        throw PreconditionError("unknown command '" + command + "'");
    } catch (const std::exception& e) {
        o.status = "error";
        o.result.clear();
        o.residual.reset();
        o.diagnostics = {e.what()};
    }
    return o;
}

std::string render_json(const Outcome& o) {
    nlohmann::json j;
    j["command"] = o.command;
    j["status"] = o.status;
    nlohmann::json r = nlohmann::json::object();
    for (const auto& [k, v] : o.result) {
        if (auto* s = std::get_if<std::string>(&v))
            r[k] = *s;
        else
            r[k] = std::get<std::vector<std::string>>(v);
    }
    j["result"] = r;
    j["residual"] = o.residual ? nlohmann::json(*o.residual) : nlohmann::json(nullptr);
    j["diagnostics"] = o.diagnostics;
    j["timing_ms"] = o.timing_ms;
    return j.dump(2) + "\n";
}

std::string render_text(const Outcome& o) {
    std::string out = o.command + ": " + o.status + "\n";
    for (const auto& [k, v] : o.result) {
        if (auto* s = std::get_if<std::string>(&v)) {
            out += "  " + k + " = " + *s + "\n";
        } else {
            const auto& list = std::get<std::vector<std::string>>(v);
            for (std::size_t i = 0; i < list.size(); ++i)
                out += "  " + k + "[" + std::to_string(i + 1) + "] = " + list[i] + "\n";
        }
    }
    if (o.residual) out += "  residual = " + *o.residual + "\n";
    for (const auto& d : o.diagnostics) out += "  note: " + d + "\n";
    return out;
}

int exit_code(const Outcome& o) {
    if (o.status == "verified" || o.status == "value") return 0;
    if (o.status == "refuted") return 1;
    if (o.status == "inconclusive") return 2;
    return 3;
}

}  // namespace wnh
