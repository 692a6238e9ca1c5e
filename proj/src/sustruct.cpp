#include "syzkit/sustruct.hpp"

#include <functional>

#include "syzkit/linalg.hpp"

namespace syzkit {

namespace {

GR factorial(int n) {
    GR f(1);
    for (int k = 2; k <= n; ++k) f *= GR(k);
    return f;
}

const GR kI = GR::i();

using MonoKey = std::vector<std::pair<std::string, std::uint16_t>>;

std::map<MonoKey, GR> split_monomials(const Poly& p) {
    std::map<MonoKey, GR> out;
    for (const auto& [e, c] : p.terms()) {
        MonoKey k;
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] > 0) k.emplace_back(p.vars()[i], e[i]);
        out[k] += c;
    }
    return out;
}

Poly from_key(const MonoKey& k, const GR& c) {
    VarList vars;
    Exponents e;
    for (const auto& [v, x] : k) {
        vars.push_back(v);
        e.push_back(x);
    }
    return Poly::monomial(vars, e, c);
}

bool omega_constant(const Form& w) {
    for (const auto& [m, c] : w.terms())
        if (!c.is_constant()) return false;
    return true;
}

std::string point_str(const BasePoint& p) {
    std::string s;
    for (const auto& [v, x] : p) {
        if (x.is_zero()) continue;
        if (!s.empty()) s += ",";
        s += v + "=" + x.str();
    }
    return s.empty() ? "origin" : s;
}

}  // namespace

std::optional<GR> form_ratio(const Form& a, const Form& b) {
    if (b.is_zero()) return std::nullopt;
    const auto& [m, c] = *b.terms().begin();
    Form x = convert(a, b.frame());
    auto num = x.coeff(m);
    auto ratio = PolyRatio{num, c}.as_constant();
    if (!ratio) return std::nullopt;
    if (!(x - b * Poly(*ratio)).is_zero()) return std::nullopt;
    return ratio;
}

Poly poly_determinant(const PolyMatrix& m) {
    const std::size_t n = m.size();
    if (n == 0) return Poly(1);
    if (n > 20) throw Error("poly_determinant: matrix too large");
    for (const auto& row : m)
        if (row.size() != n) throw Error("poly_determinant: matrix is not square");
    std::map<std::uint32_t, Poly> memo;
    // det of rows [k, n) against the columns in `cols`
    std::function<Poly(std::size_t, std::uint32_t)> rec = [&](std::size_t k, std::uint32_t cols) -> Poly {
        if (k == n) return Poly(1);
        auto it = memo.find(cols);
        if (it != memo.end()) return it->second;
        Poly acc;
        int sign = 1;
        for (std::size_t c = 0; c < n; ++c) {
            if (!(cols >> c & 1u)) continue;
            if (!m[k][c].is_zero()) {
                Poly sub = rec(k + 1, cols & ~(1u << c));
                acc += sign > 0 ? m[k][c] * sub : -(m[k][c] * sub);
            }
            sign = -sign;
        }
        memo.emplace(cols, acc);
        return acc;
    };
    return rec(0, (n == 32 ? 0u : (1u << n)) - 1u);
}

SUStructure SUStructure::factored(Form omega, std::vector<Form> factors, GR prefactor, std::optional<Polarization> pol) {
    if (factors.empty()) throw Error("factored structure needs at least one factor");
    for (const auto& f : factors) {
        auto d = f.homogeneous_degree();
        if (d && *d != 1) throw Error("Omega factors must be one-forms");
    }
    const int n = static_cast<int>(factors.size());
    Form Omega = wedge_all(factors, factors.front().frame()) * Poly(prefactor);
    SUStructure s(n, std::move(omega), std::move(Omega));
    s.factors = std::move(factors);
    s.prefactor = prefactor;
    s.polarization = pol;
    return s;
}

SUStructure SUStructure::general(int n, Form omega, Form Omega, std::optional<Polarization> pol) {
    SUStructure s(n, std::move(omega), std::move(Omega));
    s.polarization = pol;
    return s;
}

ConformalFactor conformal_factor(const SUStructure& s) {
    const FramePtr& f = s.omega.frame();
    if (f->size() != static_cast<std::size_t>(2 * s.n)) throw Error("conformal factor: frame size is not 2n");
    const Mask full = f->full_mask();
    Poly B = power(s.omega, s.n).coeff(full) / factorial(s.n);
    if (B.is_zero()) throw Error("omega is degenerate");
    Form top = convert(wedge(s.Omega, s.Omega.conj()), f);
    Poly A = top.coeff(full);
    ConformalFactor out;
    out.F.num = A * power(kI, -s.n);
    out.F.den = B;
    out.constant = out.F.as_constant();
    return out;
}

CheckReport check_su_structure(const SUStructure& s) {
    CheckReport r;
    Form w = expand_to_root(s.omega);
    Form W = expand_to_root(s.Omega);
    Form im = w - w.conj();
    r.add("omega-real", im.is_zero(), "", im.is_zero() ? std::nullopt : std::optional(im.str()));
    Form wn = power(w, s.n);
    r.add("omega-nondegenerate", !wn.is_zero(), "omega^n != 0");
    Form a = wedge(W, w);
    r.add("Omega-wedge-omega", a.is_zero(), "", a.is_zero() ? std::nullopt : std::optional(a.str()));
    Form b = wedge(W.conj(), w);
    r.add("omega-type-11", b.is_zero(), "omega ^ conj(Omega) = 0",
          b.is_zero() ? std::nullopt : std::optional(b.str()));
    if (s.is_factored()) {
        r.add("Omega-decomposable", !W.is_zero(), "factors are independent one-forms");
    } else {
        CheckItem it{"Omega-decomposable", Status::Undetermined, "no factorization supplied", std::nullopt, false};
        r.add(it);
    }
    if (!wn.is_zero()) {
        ConformalFactor cf = conformal_factor(s);
        // F is taken from Omega ^ Omega-bar = i^n F omega^n / n!; a sign other than this one only flips F
        r.info("conformal-factor",
               std::string(cf.constant ? "constant" : "non-constant") + ", Omega ^ Omega-bar = i^n F omega^n/n!",
               cf.F.str());
        CheckItem nv{"conformal-factor-nonvanishing", Status::Undetermined, "not decided for non-constant F",
                     std::nullopt, false};
        if (cf.constant) {
            nv.status = cf.constant->is_zero() ? Status::Fail : Status::Pass;
            nv.detail = "constant";
        }
        r.add(nv);
    }
    return r;
}

CheckReport check_iib(const SUStructure& s) {
    CheckReport r;
    Form dO = exterior_d(s.Omega);
    r.add("dOmega", dO.is_zero(), "", dO.is_zero() ? std::nullopt : std::optional(dO.str()));
    Form db = exterior_d(power(s.omega, static_cast<unsigned>(s.n - 1)));
    r.add("d-omega^{n-1}", db.is_zero(), "balanced", db.is_zero() ? std::nullopt : std::optional(db.str()));
    Form dw = exterior_d(s.omega);
    r.info("d-omega", dw.is_zero() ? "d omega = 0" : "d omega != 0", dw.is_zero() ? std::nullopt : std::optional(dw.str()));
    return r;
}

Form polarized_projection(const Form& a, GenClass fiber, int p, int q) {
    return bidegree_project(expand_to_root(a), fiber, p, GenClass::Base, q);
}

namespace {

Poly pure_fiber_coefficient(const SUStructure& s, GenClass fiber) {
    Form P = polarized_projection(s.Omega, fiber, s.n, 0);
    return P.coeff(P.frame()->leg_mask(fiber));
}

std::optional<GR> phase_unit(const mpq_class& phase) {
    mpq_class two(2);
    mpq_class q = phase / two;
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    mpq_class red = phase - two * mpq_class(fl);
    if (red == 0) return GR(1);
    if (red == mpq_class(1, 2)) return kI;
    if (red == 1) return GR(-1);
    if (red == mpq_class(3, 2)) return -kI;
    return std::nullopt;
}

}  // namespace

std::optional<mpq_class> pure_fiber_phase(const SUStructure& s) {
    if (!s.polarization) return std::nullopt;
    auto v = pure_fiber_coefficient(s, s.polarization->fiber).constant_value();
    if (!v || v->is_zero()) return std::nullopt;
    if (v->is_real()) return sgn(v->re()) > 0 ? mpq_class(0) : mpq_class(1);
    if (sgn(v->re()) == 0) return sgn(v->im()) > 0 ? mpq_class(1, 2) : mpq_class(3, 2);
    return std::nullopt;
}

CheckReport check_iia(const SUStructure& s) {
    if (!s.polarization) throw Error("check_iia needs a polarization");
    const GenClass fib = s.polarization->fiber;
    CheckReport r;
    Form dw = exterior_d(s.omega);
    r.add("d-omega", dw.is_zero(), "symplectic", dw.is_zero() ? std::nullopt : std::optional(dw.str()));
    Form a = exterior_d(polarized_projection(s.Omega, fib, s.n, 0));
    r.add("d-pi-n0-Omega", a.is_zero(), "", a.is_zero() ? std::nullopt : std::optional(a.str()));
    Form b = exterior_d(polarized_projection(s.Omega, fib, 1, s.n - 1));
    r.add("d-pi-1n1-Omega", b.is_zero(), "", b.is_zero() ? std::nullopt : std::optional(b.str()));

    Poly c = pure_fiber_coefficient(s, fib);
    auto computed = pure_fiber_phase(s);
    r.info("pure-fiber-phase", computed ? "phase/pi = " + computed->get_str() : "not a multiple of pi/2", c.str());
    CheckItem ph{"special-phase", Status::Undetermined, "", c.str()};
    auto u = phase_unit(s.polarization->phase);
    if (!u) {
        ph.detail = "phase is not a multiple of pi/2";
    } else {
        Poly v = c * u->conj();
        if (c.is_zero() || !v.is_real()) {
            ph.status = Status::Fail;
            ph.detail = "pure fiber coefficient not in R_{>0} e^{i theta}";
        } else if (auto k = v.constant_value()) {
            ph.status = sgn(k->re()) > 0 ? Status::Pass : Status::Fail;
            ph.detail = "phase/pi = " + s.polarization->phase.get_str();
        } else {
            ph.detail = "positivity of a non-constant coefficient is not decided";
        }
    }
    r.add(ph);
    return r;
}

std::string to_string(Side s) { return s == Side::IIA ? "IIA" : "IIB"; }

ComplexBasis holomorphic_basis(const SUStructure& s) {
    FramePtr root = s.Omega.frame()->root();
    for (GenClass cls : {GenClass::FiberMirror, GenClass::FiberX}) {
        int nf = 0;
        for (const auto& g : root->generators()) nf += g.cls == cls;
        if (nf != s.n) continue;
        try {
            ComplexBasis cb(root, cls);
            Form c = convert(s.Omega, cb.complex_frame());
            const Mask top = (Mask{1} << s.n) - 1;
            bool ok = !c.is_zero();
            for (const auto& [m, coeff] : c.terms()) ok = ok && m == top;
            if (ok) return cb;
        } catch (const Error&) {
        }
    }
    throw Error("Omega is not a multiple of dz_1 ^ ... ^ dz_n in a coordinate frame");
}

FluxCurrent flux_iib(const SUStructure& s) {
    ConformalFactor cf = conformal_factor(s);
    Poly finv;
    if (cf.constant) {
        if (cf.constant->is_zero()) throw Error("conformal factor vanishes");
        finv = Poly(cf.constant->inverse());
    } else if (auto inv = cf.F.inverse().as_poly()) {
        finv = *inv;
    } else {
        throw Error("flux_iib: non-constant conformal factor without exact inverse");
    }
    ComplexBasis cb = holomorphic_basis(s);
    Form x = convert(s.omega, cb.complex_frame()) * finv;
    Form rho = del(delbar(x, cb), cb) * Poly(GR(0, 2));
    return {convert(rho, cb.real_frame()), Side::IIB};
}

FluxCurrent flux_iia(const SUStructure& s) {
    if (!s.polarization) throw Error("flux_iia needs a polarization");
    SymplecticData sd(s.omega);
    if (!sd.has_pairing()) throw Error("flux_iia: " + sd.refusal());
    ConformalFactor cf = conformal_factor(s);
    Poly F;
    if (cf.constant) F = Poly(*cf.constant);
    else if (auto p = cf.F.as_poly()) F = *p;
    else throw Error("flux_iia: conformal factor is not a polynomial");
    const GenClass fib = s.polarization->fiber;
    Form src = (polarized_projection(s.Omega, fib, s.n - 1, 1) + polarized_projection(s.Omega, fib, 0, s.n)) * F;
    Form rho = exterior_d(d_lambda(src, sd)) * Poly(-kI);
    return {rho, Side::IIA};
}

PolyMatrix semiflat_mu(const Form& omega_check, const SemiflatPair& pair) {
    const int n = pair.n();
    Form w = convert(omega_check, pair.xcheck());
    PolyMatrix mu(n, std::vector<Poly>(n));
    for (const auto& [m, c] : w.terms()) {
        auto idx = mask_indices(m);
        if (idx.size() != 2 || idx[0] >= static_cast<std::size_t>(n) || idx[1] < static_cast<std::size_t>(n))
            throw Error("omega_check has a term outside dthetacheck ^ dr: " + Form::monomial(w.frame(), m, c).str());
        mu[idx[0]][idx[1] - n] = c;
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (!mu[i][j].is_real()) throw Error("mu is not real");
            if (!(mu[i][j] == mu[j][i])) throw Error("mu is not symmetric");
        }
    return mu;
}

SUStructure semiflat_iib(const Form& omega_check, const SemiflatPair& pair) {
    PolyMatrix mu = semiflat_mu(omega_check, pair);
    std::vector<Form> dz;
    for (int i = 0; i < pair.n(); ++i)
        dz.push_back(Form::generator(pair.xcheck(), pair.thetacheck(i)) +
                     Form::generator(pair.xcheck(), pair.dr(i), Poly(kI)));
    SUStructure s = SUStructure::factored(convert(omega_check, pair.xcheck()), dz);
    s.mu = std::move(mu);
    return s;
}

SUStructure mirror_transform(const Form& omega_check, const SemiflatPair& pair) {
    const int n = pair.n();
    PolyMatrix mu = semiflat_mu(omega_check, pair);
    if (poly_determinant(mu).is_zero()) throw Error("mu is degenerate");
    std::vector<Form> eta;
    for (int i = 0; i < n; ++i) {
        Form e = Form::generator(pair.x(), pair.theta(i));
        for (int j = 0; j < n; ++j)
            if (!mu[i][j].is_zero()) e += Form::generator(pair.x(), pair.dr(j), mu[i][j] * kI);
        eta.push_back(e);
    }
    const bool odd = ((n * (n - 1)) / 2) % 2 != 0;
    Polarization pol{GenClass::FiberX, odd ? mpq_class(1) : mpq_class(0)};
    SUStructure s = SUStructure::factored(pair.symplectic().omega(), eta, GR(odd ? -1 : 1), pol);
    s.mu = std::move(mu);
    return s;
}

CheckReport check_hermitian_at(const SUStructure& s, std::vector<BasePoint> points) {
    if (!s.mu) throw Error("check_hermitian_at needs the mu matrix");
    const VarList& base = s.omega.frame()->root()->base_vars();
    if (points.empty()) {
        points.emplace_back();
        for (const auto& v : base) points.push_back({{v, GR(1)}});
    }
    CheckReport r;
    const std::size_t n = s.mu->size();
    for (auto pt : points) {
        for (const auto& v : base) pt.emplace(v, GR(0));
        linalg::Matrix M(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) M(i, j) = (*s.mu)[i][j].eval(pt);
        auto minors = linalg::leading_minors(M);
        bool ok = true;
        std::string w;
        for (const auto& m : minors) {
            ok = ok && m.is_real() && sgn(m.re()) > 0;
            w += (w.empty() ? "" : ", ") + m.str();
        }
        r.add("hermitian[" + point_str(pt) + "]", ok, "leading principal minors", "minors: " + w);
    }
    return r;
}

CheckReport check_deformation_class(const SUStructure& s, const Form& delta, Side side) {
    const int n = s.n;
    CheckReport r;
    auto deg = delta.homogeneous_degree();
    if (side == Side::IIB) {
        if (n < 2) throw Error("deformation class needs n >= 2");
        if (deg && *deg != 2 * n - 2) throw Error("degree mismatch: expected a (2n-2)-form");
        const FramePtr& f = s.omega.frame();
        Form dd = convert(delta, f);
        Form d1 = exterior_d(dd);
        r.add("d-delta", d1.is_zero(), "", d1.is_zero() ? std::nullopt : std::optional(d1.str()));
        if (!omega_constant(s.omega)) {
            r.add(CheckItem{"delta-factorization", Status::Undetermined, "omega has non-constant coefficients", std::nullopt});
            return r;
        }
        const std::size_t m = f->size();
        Form L = power(s.omega, static_cast<unsigned>(n - 2));
        std::vector<Mask> cols;
        std::map<Mask, std::size_t, MaskLess> rows;
        std::vector<Form> images;
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j) {
                Mask b = (Mask{1} << i) | (Mask{1} << j);
                cols.push_back(b);
                images.push_back(wedge(L, Form::monomial(f, b)));
                for (const auto& [t, c] : images.back().terms()) rows.emplace(t, 0);
            }
        for (const auto& [t, c] : dd.terms()) rows.emplace(t, 0);
        std::size_t k = 0;
        for (auto& [t, idx] : rows) idx = k++;
        linalg::Matrix A(rows.size(), cols.size());
        for (std::size_t c = 0; c < cols.size(); ++c)
            for (const auto& [t, coeff] : images[c].terms()) A(rows.at(t), c) = *coeff.constant_value();
        std::map<MonoKey, linalg::Vector> rhs;
        for (const auto& [t, coeff] : dd.terms())
            for (const auto& [key, c] : split_monomials(coeff)) {
                auto& v = rhs[key];
                if (v.empty()) v.assign(rows.size(), GR(0));
                v[rows.at(t)] += c;
            }
        Form beta(f);
        bool solvable = true;
        for (const auto& [key, v] : rhs) {
            auto sol = linalg::solve(A, v);
            if (!sol) {
                solvable = false;
                break;
            }
            for (std::size_t c = 0; c < cols.size(); ++c)
                if (!(*sol)[c].is_zero()) beta += Form::monomial(f, cols[c], from_key(key, (*sol)[c]));
        }
        r.add("delta-factorization", solvable, "delta = omega^{n-2} ^ beta",
              solvable ? std::optional(beta.str()) : std::nullopt);
        if (solvable) {
            Form p = wedge(power(s.omega, static_cast<unsigned>(n - 1)), beta);
            r.add("beta-primitive", p.is_zero(), "omega^{n-1} ^ beta = 0",
                  p.is_zero() ? std::nullopt : std::optional(p.str()));
        }
        return r;
    }
    if (deg && *deg != n) throw Error("degree mismatch: expected an n-form");
    if (!s.polarization) throw Error("IIA deformation check needs a polarization");
    SymplecticData sd(s.omega);
    if (!sd.has_pairing()) throw Error("IIA deformation check: " + sd.refusal());
    Form a = exterior_d(polarized_projection(delta, s.polarization->fiber, 1, n - 1));
    r.add("d-pi-1n1-delta", a.is_zero(), "", a.is_zero() ? std::nullopt : std::optional(a.str()));
    Form b = d_lambda(delta, sd);
    r.add("dLambda-delta", b.is_zero(), "", b.is_zero() ? std::nullopt : std::optional(b.str()));
    Form c = lefschetz(delta, sd);
    r.add("omega-wedge-delta", c.is_zero(), "", c.is_zero() ? std::nullopt : std::optional(c.str()));
    return r;
}

}  // namespace syzkit
