#include "wnh/certify/certify.hpp"

#include <gmp.h>

#include "wnh/error.hpp"
#include "wnh/ring/registry.hpp"

namespace wnh {
namespace {

ExprVec scaled(const Expr& c, const ExprVec& v) {
    ExprVec out = v;
    for (auto& e : out) e = c * e;
    return out;
}

void add_to(ExprVec& acc, const ExprVec& v) {
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += v[i];
}

ExprVec monic(const ExprVec& v) {
    for (const auto& e : v) {
        if (e.is_zero()) continue;
        Rational lc = e.num().leading().coef;
        return scaled(Expr(Rational(1 / lc)), v);
    }
    return v;
}

std::optional<Rational> rational_sqrt(const Rational& q) {
    if (q < 0) return std::nullopt;
    const mpz_class& n = q.get_num();
    const mpz_class& d = q.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    return Rational(rn, rd);
}

// s with s^2 = a, from rationals or a declared constant.
std::optional<Expr> constant_sqrt(const Rational& a) {
    if (auto r = rational_sqrt(a)) return Expr(*r);
    for (std::uint32_t id = 0; id < constant_count(); ++id) {
        Rational sq = constant_info(id).square;
        if (sq <= 0) continue;
        if (auto r = rational_sqrt(Rational(a / sq))) return Expr(*r) * Expr::constant(id);
    }
    return std::nullopt;
}

std::string rational_string(const Rational& q) { return q.get_str(); }

std::optional<Expr> density_of(const ExprVec& w) {
    for (const auto& e : w)
        if (e.has_nonlocal()) return std::nullopt;
    try {
        return reconstruct_density(w);
    } catch (const PreconditionError&) {
        return std::nullopt;
    }
}

bool positive_leading(const Expr& h) { return h.is_zero() || h.num().leading().coef > 0; }

// D^{-1}(density), keeping the density itself as the symbol when it is not exact.
Expr dinv(const Expr& density) {
    if (density.is_zero()) return Expr(0);
    if (is_exact(density)) return antiderivative(density);
    return nonlocal_symbol(density);
}

Operator tails_only(const Operator& a) {
    Operator out(a.rows(), a.cols(), a.variance());
    for (const auto& t : a.tails()) out.add_tail(t);
    return out;
}

Operator weighted_tails(std::size_t n, const std::vector<std::tuple<Expr, ExprVec, ExprVec>>& parts) {
    Operator out(n, n, Variance::VtoVs);
    for (const auto& [c, l, r] : parts)
        if (!c.is_zero() && !wnh::is_zero(l) && !wnh::is_zero(r)) out.add_tail({scaled(c, l), r});
    return out.normalized();
}

std::optional<ExprVec> apply_local(const Operator& a, const ExprVec& v) {
    try {
        return wnh::apply(a, v, NonlocalPolicy::Strict).value;
    } catch (const NotExact&) {
        return std::nullopt;
    }
}

void require(bool ok, const char* what) {
    if (!ok) throw PreconditionError(what);
}

// Result of residual-based verification with a homotopy correction.
struct Closure {
    bool differential;
    ExprVec gamma0;
    ExprVec gamma;
    Operator residual;
};

Closure close_with_homotopy(const Operator& target, const ExprVec& gamma_nl) {
    Operator rest = (target - exterior(gamma_nl)).normalized();
    if (!rest.is_differential() || rest.has_nonlocal()) return {false, {}, gamma_nl, rest};
    ExprVec g0 = homotopy_potential(rest);
    ExprVec gamma = gamma_nl;
    add_to(gamma, g0);
    return {true, g0, gamma, (target - exterior(gamma)).normalized()};
}

}  // namespace

std::string to_string(Status s) {
    switch (s) {
        case Status::Verified: return "verified";
        case Status::Refuted: return "refuted";
        case Status::Inconclusive: return "inconclusive";
        case Status::NotApplicable: return "not_applicable";
    }
    return "";
}

SymmetricTails symmetric_tails(const std::vector<Tail>& tails, bool unit_weights) {
    SymmetricTails out;
    std::vector<ExprVec> all;
    for (const auto& t : tails) {
        all.push_back(t.left);
        all.push_back(t.right);
    }
    std::vector<ExprVec> basis;
    for (auto i : independent_subset(all)) basis.push_back(monic(all[i]));
    const std::size_t r = basis.size();
    if (r == 0) {
        out.ok = true;
        return out;
    }
    Matrix c(r, r);
    for (const auto& t : tails) {
        auto f = constant_combination(basis, t.left);
        auto g = constant_combination(basis, t.right);
        if (!f || !g) throw Error("tail vector outside its own span");
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j)
                if (!(*f)[i].is_zero() && !(*g)[j].is_zero()) c(i, j) += (*f)[i] * (*g)[j];
    }
    if (!(c == c.transpose())) {
        out.reason = "tail part is not of the form sum eps w (x) D^-1 o w";
        return out;
    }
    // Symmetric elimination c -> t c t^T, diagonal at the end.
    Matrix t = Matrix::identity(r);
    auto add_row = [&](std::size_t dst, std::size_t src, const Expr& f) {
        for (std::size_t k = 0; k < r; ++k) {
            c(dst, k) += f * c(src, k);
            t(dst, k) += f * t(src, k);
        }
        for (std::size_t k = 0; k < r; ++k) c(k, dst) += f * c(k, src);
    };
    auto swap_index = [&](std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t k = 0; k < r; ++k) {
            std::swap(c(a, k), c(b, k));
            std::swap(t(a, k), t(b, k));
        }
        for (std::size_t k = 0; k < r; ++k) std::swap(c(k, a), c(k, b));
    };
    for (std::size_t p = 0; p < r; ++p) {
        std::size_t piv = r;
        for (std::size_t i = p; i < r && piv == r; ++i)
            if (!c(i, i).is_zero()) piv = i;
        if (piv == r) {
            for (std::size_t i = p; i < r && piv == r; ++i)
                for (std::size_t j = i + 1; j < r; ++j)
                    if (!c(i, j).is_zero()) {
                        add_row(i, j, Expr(1));
                        piv = i;
                        break;
                    }
        }
        if (piv == r) break;
        swap_index(p, piv);
        for (std::size_t i = p + 1; i < r; ++i)
            if (!c(i, p).is_zero()) add_row(i, p, -(c(i, p) / c(p, p)));
    }
    Matrix tinv = inverse(t);
    for (std::size_t k = 0; k < r; ++k) {
        Expr lambda = c(k, k);
        if (lambda.is_zero()) continue;
        ExprVec w(basis[0].size(), Expr(0));
        for (std::size_t i = 0; i < r; ++i)
            if (!tinv(i, k).is_zero()) add_to(w, scaled(tinv(i, k), basis[i]));
        std::optional<Expr> s;
        if (lambda.is_rational()) {
            Rational q = lambda.rational_value();
            s = constant_sqrt(abs(q));
            if (s) {
                w = scaled(*s, w);
                lambda = Expr(q > 0 ? 1 : -1);
            } else if (unit_weights) {
                out.reason = "weight " + rational_string(q) + " needs sqrt(" + rational_string(abs(q)) +
                             "); declare a constant with that square";
                return out;
            }
        } else if (unit_weights) {
            out.reason = "weight is not rational and cannot be normalized to +1 or -1";
            return out;
        }
        out.terms.push_back({lambda, w});
    }
    out.ok = true;
    return out;
}

ExprVec homotopy_potential(const Operator& j) {
    if (!j.is_differential()) throw PreconditionError("homotopy potential of an operator with tails");
    if (j.has_nonlocal()) throw PreconditionError("homotopy potential of an operator with nonlocal coefficients");
    if (j.rows() != j.cols()) throw ShapeMismatch("homotopy potential of a non-square operator");
    ExprVec u;
    for (std::size_t a = 0; a < j.cols(); ++a) u.push_back(Expr::jet(static_cast<std::uint32_t>(a)));
    ExprVec ju = wnh::apply(j, u).value;
    for (auto& e : ju) e = homotopy_integral(e, 0);
    return ju;
}

Operator exterior(const ExprVec& gamma) {
    Operator gp = frechet(gamma, gamma.size(), Variance::VtoVs);
    return (gp - adjoint(gp)).normalized();
}

SymplecticCertificate wnl_symplectic_certificate(const Operator& j,
                                                 const std::optional<std::vector<Expr>>& densities) {
    require(j.rows() == j.cols(), "symplectic certificate needs a square operator");
    require(j.variance() == Variance::VtoVs, "symplectic certificate needs an operator V->Vs");
    require(!j.has_nonlocal(), "symplectic certificate needs local coefficients");
    if (!same_action(adjoint(j), -j)) throw PreconditionError("operator is not skew-adjoint");
    const std::size_t n = j.rows();
    SymplecticCertificate cert;
    std::vector<std::pair<Expr, ExprVec>> parts;  // (eps, w)
    if (densities) {
        std::vector<ExprVec> w;
        for (const auto& h : *densities) w.push_back(euler(h, n));
        std::vector<Tail> own = j.tails();
        SymmetricTails given;
        std::vector<ExprVec> all;
        for (const auto& t : own) {
            all.push_back(t.left);
            all.push_back(t.right);
        }
        for (const auto& v : w) all.push_back(v);
        std::vector<ExprVec> basis;
        for (auto i : independent_subset(all)) basis.push_back(all[i]);
        const std::size_t r = basis.size();
        auto coords = [&](const ExprVec& v) { return *constant_combination(basis, v); };
        ExprVec target(r * r, Expr(0));
        for (const auto& t : own) {
            ExprVec f = coords(t.left), g = coords(t.right);
            for (std::size_t a = 0; a < r; ++a)
                for (std::size_t b = 0; b < r; ++b) target[a * r + b] += f[a] * g[b];
        }
        std::vector<ExprVec> cols;
        for (const auto& v : w) {
            ExprVec f = coords(v), col(r * r);
            for (std::size_t a = 0; a < r; ++a)
                for (std::size_t b = 0; b < r; ++b) col[a * r + b] = f[a] * f[b];
            cols.push_back(col);
        }
        auto eps = r == 0 ? std::optional<ExprVec>(ExprVec(w.size(), Expr(0))) : constant_combination(cols, target);
        if (!eps) {
            cert.diagnostics.push_back("tails are not spanned by the given densities");
            return cert;
        }
        for (std::size_t a = 0; a < w.size(); ++a) {
            const Expr& e = (*eps)[a];
            if (e.is_zero()) continue;
            if (e != Expr(1) && e != Expr(-1)) {
                cert.diagnostics.push_back("weight of density " + std::to_string(a + 1) + " is not +1 or -1");
                return cert;
            }
            parts.emplace_back(e, w[a]);
            cert.tail_data.emplace_back(e, (*densities)[a]);
        }
    } else {
        auto st = symmetric_tails(j.tails(), true);
        if (!st.ok) {
            cert.diagnostics.push_back(st.reason);
            return cert;
        }
        for (auto& term : st.terms) {
            auto h = density_of(term.vec);
            if (!h) {
                cert.diagnostics.push_back("tail vector " + to_string(term.vec) + " is not a variational derivative");
                return cert;
            }
            if (!positive_leading(*h)) {
                term.vec = scaled(Expr(-1), term.vec);
                *h = -*h;
            }
            parts.emplace_back(term.weight, term.vec);
            cert.tail_data.emplace_back(term.weight, *h);
        }
    }
    ExprVec gamma_nl(n, Expr(0));
    for (std::size_t a = 0; a < parts.size(); ++a)
        add_to(gamma_nl, scaled(parts[a].first * dinv(cert.tail_data[a].second) / Expr(2), parts[a].second));
    Closure cl = close_with_homotopy(j, gamma_nl);
    cert.gamma0 = cl.gamma0;
    cert.gamma = cl.gamma;
    cert.residual = cl.residual;
    if (!cl.differential) cert.diagnostics.push_back("nonlocal remainder after removing the tail potential");
    cert.status = cl.differential && cl.residual.is_zero() ? Status::Verified : Status::Refuted;
    return cert;
}

Operator symplectic_from_densities(const std::vector<Expr>& psi, const std::vector<Expr>& eps, std::size_t n) {
    if (psi.size() != eps.size()) throw ShapeMismatch("densities and weights differ in number");
    Operator out(n, n, Variance::VtoVs);
    for (std::size_t a = 0; a < psi.size(); ++a) {
        ExprVec w = euler(psi[a], n);
        if (wnh::is_zero(w)) throw PreconditionError("density with vanishing variational derivative");
        if (eps[a].is_zero()) throw PreconditionError("zero weight");
        out.add_tail({scaled(eps[a], w), w});
    }
    return out.normalized();
}

std::vector<CasimirResult> casimir_check(const Operator& p, const std::vector<Expr>& psi) {
    std::vector<CasimirResult> out;
    for (const auto& h : psi) {
        ExprVec r = wnh::apply(p, euler(h, p.cols()), NonlocalPolicy::Permissive).value;
        out.push_back({wnh::is_zero(r), r});
    }
    return out;
}

JpjDecomposition jpj_decompose(const Operator& j, const Operator& pt) {
    require(j.rows() == j.cols() && pt.rows() == pt.cols() && j.rows() == pt.rows(),
            "J and the second operator must be square of the same size");
    require(j.variance() == Variance::VtoVs, "J must be V->Vs");
    require(pt.variance() == Variance::VstoV, "the second operator must be Vs->V");
    require(!j.has_nonlocal() && !pt.has_nonlocal(), "operators must have local coefficients");
    const std::size_t n = j.rows();
    JpjDecomposition out;
    auto fail = [&](std::string why) {
        out.status = Status::NotApplicable;
        out.diagnostics.push_back(std::move(why));
        return out;
    };

    auto js = symmetric_tails(j.tails(), false);
    if (!js.ok) return fail("J: " + js.reason);
    std::vector<ExprVec> dpsi;
    for (auto& term : js.terms) {
        auto h = density_of(term.vec);
        if (!h) return fail("tail vector " + to_string(term.vec) + " of J is not a variational derivative");
        if (!positive_leading(*h)) {
            term.vec = scaled(Expr(-1), term.vec);
            *h = -*h;
        }
        out.psi_data.emplace_back(term.weight, *h);
        dpsi.push_back(term.vec);
    }
    auto ps = symmetric_tails(pt.tails(), false);
    if (!ps.ok) return fail("second operator: " + ps.reason);
    std::vector<ExprVec> dh;
    for (auto& term : ps.terms) {
        auto jy = apply_local(j, term.vec);
        if (!jy) return fail("J(Y) is not local for Y = " + to_string(term.vec));
        auto h = density_of(*jy);
        if (!h) return fail("J(Y) = " + to_string(*jy) + " is not a variational derivative");
        if (!positive_leading(*h)) {
            term.vec = scaled(Expr(-1), term.vec);
            *jy = scaled(Expr(-1), *jy);
            *h = -*h;
        }
        out.y.push_back(term.vec);
        out.h_data.emplace_back(term.weight, *h);
        dh.push_back(*jy);
    }
    std::vector<ExprVec> dk;
    for (const auto& w : dpsi) {
        auto pw = apply_local(pt, w);
        auto jpw = pw ? apply_local(j, *pw) : std::nullopt;
        if (!jpw) return fail("J P~ (" + to_string(w) + ") is not local");
        auto k = density_of(*jpw);
        if (!k) return fail("J P~ (" + to_string(w) + ") = " + to_string(*jpw) + " is not a variational derivative");
        out.k.push_back(*k);
        dk.push_back(*jpw);
    }
    try {
        out.jpj = compose(compose(j, pt), j);
    } catch (const NotWeaklyNonlocalClosure& e) {
        return fail(e.what());
    }

    std::vector<std::tuple<Expr, ExprVec, ExprVec>> parts;
    for (std::size_t a = 0; a < dpsi.size(); ++a) {
        parts.emplace_back(out.psi_data[a].first, dk[a], dpsi[a]);
        parts.emplace_back(out.psi_data[a].first, dpsi[a], dk[a]);
    }
    for (std::size_t r = 0; r < dh.size(); ++r) parts.emplace_back(-out.h_data[r].first, dh[r], dh[r]);
    out.expected_tails = weighted_tails(n, parts);
    out.tails_match = (tails_only(out.jpj) - out.expected_tails).normalized().is_zero();
    if (!out.tails_match) out.diagnostics.push_back("nonlocal part of J P~ J differs from the predicted decomposition");

    ExprVec gamma_nl(n, Expr(0));
    for (std::size_t r = 0; r < dh.size(); ++r)
        add_to(gamma_nl, scaled(-out.h_data[r].first * dinv(out.h_data[r].second) / Expr(2), dh[r]));
    for (std::size_t a = 0; a < dpsi.size(); ++a) {
        const Expr& e = out.psi_data[a].first;
        add_to(gamma_nl, scaled(e * dinv(out.psi_data[a].second) / Expr(2), dk[a]));
        add_to(gamma_nl, scaled(e * dinv(out.k[a]) / Expr(2), dpsi[a]));
    }
    Closure cl = close_with_homotopy(out.jpj, gamma_nl);
    out.gamma0 = cl.gamma0;
    out.gamma = cl.gamma;
    out.residual = cl.residual;
    if (!cl.differential) out.diagnostics.push_back("nonlocal remainder after removing the tail potential");
    out.status = cl.differential && cl.residual.is_zero() ? Status::Verified : Status::Refuted;
    return out;
}

CompatibilityCertificate compatibility_certificate(const Operator& p, const Operator& pt, const Operator& j,
                                                   int verify_inverse_to) {
    require(p.variance() == Variance::VstoV, "P must be Vs->V");
    require(p.rows() == j.rows(), "P and J differ in size");
    if (!same_action(adjoint(pt), -pt)) throw PreconditionError("second operator is not skew-adjoint");
    {
        auto dj = series_profile(j).degree, dp = series_profile(p).degree;
        if (!dj || !dp) throw PreconditionError("inverse check: zero operator");
        const int cut = verify_inverse_to + std::abs(*dj) + std::abs(*dp) + 2;
        auto prod = multiply(expand_truncated(j, cut), expand_truncated(p, cut), verify_inverse_to);
        if (!is_identity_through(prod, verify_inverse_to))
            throw PreconditionError("J o P is not the identity through D^-" + std::to_string(verify_inverse_to));
    }
    CompatibilityCertificate out;
    out.jpj = jpj_decompose(j, pt);
    out.diagnostics = out.jpj.diagnostics;
    if (out.jpj.status == Status::NotApplicable) return out;
    if (out.jpj.status == Status::Refuted) {
        out.status = Status::Refuted;
        out.residual = out.jpj.residual;
        return out;
    }
    auto pg = symmetric_tails(p.tails(), false);
    bool local_ok = pg.ok;
    if (!pg.ok) out.diagnostics.push_back("P: " + pg.reason);
    for (std::size_t r = 0; pg.ok && r < pg.terms.size(); ++r) {
        const ExprVec& g = pg.terms[r].vec;
        for (std::size_t a = 0; a < out.jpj.psi_data.size(); ++a) {
            const std::size_t n = p.rows();
            ExprVec dk = euler(out.jpj.k[a], n), dpsi = euler(out.jpj.psi_data[a].second, n);
            ExprVec lk = lie_covector(g, dk), lp = lie_covector(g, dpsi);
            if (!wnh::is_zero(lk)) {
                local_ok = false;
                out.diagnostics.push_back("L_G" + std::to_string(r + 1) + "(dK" + std::to_string(a + 1) +
                                          ") = " + to_string(lk) + " is not zero");
            }
            if (!wnh::is_zero(lp)) {
                local_ok = false;
                out.diagnostics.push_back("L_G" + std::to_string(r + 1) + "(dpsi" + std::to_string(a + 1) +
                                          ") = " + to_string(lp) + " is not zero");
            }
        }
    }
    if (!local_ok) return out;
    out.tau = wnh::apply(p, out.jpj.gamma, NonlocalPolicy::Permissive).value;
    for (auto& e : out.tau) e = -e;
    for (const auto& e : out.tau)
        if (e.nonlocal_degree() > 1) {
            out.diagnostics.push_back("tau is not weakly nonlocal");
            return out;
        }
    out.lie = lie_operator(out.tau, p);
    out.residual = (pt - out.lie).normalized();
    out.status = out.residual.is_zero() ? Status::Verified : Status::Refuted;
    return out;
}

HamiltonianCertificate hamiltonian_pair_certificate(const Operator& p, const Operator& pt, const Operator& j,
                                                    const CompatibilityCertificate& compat) {
    HamiltonianCertificate out;
    if (compat.status != Status::Verified) {
        out.status = compat.status == Status::Refuted ? Status::Refuted : Status::NotApplicable;
        out.diagnostics.push_back("compatibility certificate is " + to_string(compat.status));
        return out;
    }
    const auto& d = compat.jpj;
    const std::size_t n = p.rows();
    auto fail = [&](std::string why) {
        out.status = Status::NotApplicable;
        out.diagnostics.push_back(std::move(why));
        return out;
    };
    auto jpt_density = [&](const ExprVec& w, std::string& why) -> std::optional<std::pair<Expr, ExprVec>> {
        auto pw = apply_local(pt, w);
        auto jpw = pw ? apply_local(j, *pw) : std::nullopt;
        if (!jpw) {
            why = "J P~ (" + to_string(w) + ") is not local";
            return std::nullopt;
        }
        auto h = density_of(*jpw);
        if (!h) {
            why = "J P~ (" + to_string(w) + ") = " + to_string(*jpw) + " is not a variational derivative";
            return std::nullopt;
        }
        return std::make_pair(*h, *jpw);
    };
    std::vector<ExprVec> dl, dm, dh, dk, dpsi;
    for (const auto& [e, h] : d.h_data) {
        dh.push_back(euler(h, n));
        std::string why;
        auto r = jpt_density(dh.back(), why);
        if (!r) return fail(why);
        out.l.push_back(r->first);
        dl.push_back(r->second);
    }
    for (std::size_t a = 0; a < d.psi_data.size(); ++a) {
        dpsi.push_back(euler(d.psi_data[a].second, n));
        dk.push_back(euler(d.k[a], n));
        std::string why;
        auto r = jpt_density(dk.back(), why);
        if (!r) return fail(why);
        out.m.push_back(r->first);
        dm.push_back(r->second);
    }
    Operator target;
    try {
        Operator jpt = compose(j, pt);
        target = compose(compose(compose(jpt, j), pt), j);
    } catch (const NotWeaklyNonlocalClosure& e) {
        return fail(e.what());
    }
    ExprVec gamma_nl(n, Expr(0));
    for (std::size_t r = 0; r < dh.size(); ++r) {
        Expr c = -d.h_data[r].first / Expr(2);
        add_to(gamma_nl, scaled(c * dinv(d.h_data[r].second), dl[r]));
        add_to(gamma_nl, scaled(c * dinv(out.l[r]), dh[r]));
    }
    for (std::size_t a = 0; a < dpsi.size(); ++a) {
        Expr c = d.psi_data[a].first / Expr(2);
        add_to(gamma_nl, scaled(c * dinv(d.psi_data[a].second), dm[a]));
        add_to(gamma_nl, scaled(c * dinv(d.k[a]), dk[a]));
        add_to(gamma_nl, scaled(c * dinv(out.m[a]), dpsi[a]));
    }
    Closure cl = close_with_homotopy(target, gamma_nl);
    out.gamma_tilde0 = cl.gamma0;
    out.gamma_tilde = cl.gamma;
    out.residual = cl.residual;
    if (!cl.differential || !cl.residual.is_zero()) {
        out.status = Status::Refuted;
        out.diagnostics.push_back("(J P~)^2 J is not of the form g' - g'^dagger");
        return out;
    }
    ExprVec a = wnh::apply(pt, d.gamma, NonlocalPolicy::Permissive).value;
    ExprVec b = wnh::apply(p, out.gamma_tilde, NonlocalPolicy::Permissive).value;
    out.tau_tilde = a;
    add_to(out.tau_tilde, scaled(Expr(-2), b));
    out.second_residual = (lie_operator(compat.tau, compat.lie) - lie_operator(out.tau_tilde, p)).normalized();
    out.second_order_holds = out.second_residual.is_zero();
    if (!out.second_order_holds)
        out.diagnostics.push_back("L_tau(L_tau(P)) differs from L_tau~(P) without a kernel correction");
    out.status = Status::Verified;
    return out;
}

ZeroOrderResult zero_order_check(const Operator& j) {
    require(j.is_differential(), "zero-order check of an operator with tails");
    ZeroOrderResult out{true, {}, std::nullopt};
    for (const auto& [deg, m] : j.diff()) {
        if (deg == 0) continue;
        if (!m.is_zero()) {
            out.form_ok = false;
            out.violations.push_back("term of degree " + std::to_string(deg));
        }
    }
    auto it = j.diff().find(0);
    if (it != j.diff().end()) {
        const Matrix& m = it->second;
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c) {
                const Expr& e = m(r, c);
                std::vector<Var> first;
                for (Var v : e.variables()) {
                    if (v.kind() == VarKind::Nonlocal) {
                        out.form_ok = false;
                        out.violations.push_back("entry (" + std::to_string(r + 1) + "," + std::to_string(c + 1) +
                                                 ") has a nonlocal symbol");
                    } else if (v.kind() == VarKind::Jet && v.order() >= 2) {
                        out.form_ok = false;
                        out.violations.push_back("entry (" + std::to_string(r + 1) + "," + std::to_string(c + 1) +
                                                 ") depends on a jet of order " + std::to_string(v.order()));
                    } else if (v.kind() == VarKind::Jet && v.order() == 1) {
                        first.push_back(v);
                    }
                }
                bool affine = true;
                for (std::size_t a = 0; a < first.size() && affine; ++a)
                    for (std::size_t b = a; b < first.size() && affine; ++b)
                        if (!e.partial(first[a]).partial(first[b]).is_zero()) affine = false;
                if (!affine) {
                    out.form_ok = false;
                    out.violations.push_back("entry (" + std::to_string(r + 1) + "," + std::to_string(c + 1) +
                                             ") is not affine in first-order jets");
                }
            }
    }
    if (out.form_ok) out.certificate = wnl_symplectic_certificate(j);
    return out;
}

}  // namespace wnh
