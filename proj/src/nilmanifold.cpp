#include "syzkit/nilmanifold.hpp"

namespace syzkit {

namespace {

int check_k(int K) {
    if (K < 2) throw Error("K must be at least 2");
    return K;
}

std::string pair_suffix(int K, int i, int j) {
    if (K <= 9) return std::to_string(i) + std::to_string(j);
    return std::to_string(i) + "." + std::to_string(j);
}

std::vector<std::pair<int, int>> make_pairs(int K) {
    std::vector<std::pair<int, int>> p;
    for (int i = 1; i <= K; ++i)
        for (int j = i + 1; j <= K; ++j) p.emplace_back(i, j);
    return p;
}

std::vector<std::string> make_suffixes(int K) {
    std::vector<std::string> s;
    for (auto [i, j] : make_pairs(K)) s.push_back(pair_suffix(K, i, j));
    return s;
}

Generator frame_gen(const std::string& label, GenClass leg) {
    Generator g;
    g.label = label;
    g.cls = GenClass::Frame;
    g.leg = leg;
    return g;
}

Form row_form(const FramePtr& frame, const std::vector<std::string>& labels, const std::vector<Poly>& row) {
    Form out(frame);
    for (std::size_t q = 0; q < row.size(); ++q)
        if (!row[q].is_zero()) out += Form::generator(frame, labels[q], row[q]);
    return out;
}

std::optional<std::string> witness_of(const Form& f) {
    if (f.is_zero()) return std::nullopt;
    return f.str();
}

std::map<std::string, std::string> rename_suffix(const std::vector<std::string>& suffixes, const std::string& from,
                                                 const std::string& to) {
    std::map<std::string, std::string> m;
    for (const auto& s : suffixes) m[from + s] = to + s;
    return m;
}

std::string matrix_str(const PolyMatrix& m) {
    std::string s = "[";
    for (std::size_t i = 0; i < m.size(); ++i) {
        s += i ? "; " : "";
        for (std::size_t j = 0; j < m[i].size(); ++j) s += (j ? ", " : "") + m[i][j].str();
    }
    return s + "]";
}

std::string fiber_label(const SemiflatPair& pr, FiberLabels labels, bool tangent, std::size_t q) {
    const int i = static_cast<int>(q);
    return (labels == FiberLabels::Native) == tangent ? pr.theta(i) : pr.thetacheck(i);
}

}  // namespace

NilData::NilData(int K) : K_(check_k(K)), pairs_(make_pairs(K)), pair_(make_suffixes(K)) {
    const std::size_t n = pairs_.size();
    E_.assign(n, std::vector<Poly>(n));
    G_.assign(n, std::vector<Poly>(n));
    for (int gap = 1; gap < K_; ++gap)
        for (int i = 1; i + gap <= K_; ++i) {
            const int k = i + gap;
            auto& row = E_[index(i, k)];
            row[index(i, k)] = Poly(1);
            for (int j = i + 1; j < k; ++j) {
                const auto& sub = E_[index(j, k)];
                for (std::size_t q = 0; q < n; ++q)
                    if (!sub[q].is_zero()) row[q] -= r(i, j) * sub[q];
            }
        }
    // dual basis: dr_ik = e_ik + Σ_j r_ij e_jk, so fcheck_jk = dθ̌_jk + Σ_{i<j} r_ij dθ̌_ik
    Grec_ = G_;
    for (int j = 1; j <= K_; ++j)
        for (int k = j + 1; k <= K_; ++k) {
            auto& row = G_[index(j, k)];
            auto& rec = Grec_[index(j, k)];
            row[index(j, k)] = Poly(1);
            rec[index(j, k)] = Poly(1);
            for (int i = 1; i < j; ++i) {
                row[index(i, k)] += r(i, j);
                const auto& sub = Grec_[index(i, k)];
                for (std::size_t q = 0; q < n; ++q)
                    if (!sub[q].is_zero()) rec[q] += r(i, j) * sub[q];
            }
        }

    std::vector<std::string> th, thc, dr;
    for (int p = 0; p < static_cast<int>(n); ++p) {
        th.push_back(pair_.theta(p));
        thc.push_back(pair_.thetacheck(p));
        dr.push_back(pair_.dr(p));
    }
    std::vector<Generator> gb, ga;
    std::vector<Form> xb, xa;
    for (std::size_t p = 0; p < n; ++p) {
        auto [i, j] = pairs_[p];
        gb.push_back(frame_gen(f(i, j), GenClass::FiberX));
        xb.push_back(row_form(pair_.x(), th, E_[p]));
        ga.push_back(frame_gen(fcheck(i, j), GenClass::FiberMirror));
        xa.push_back(row_form(pair_.xcheck(), thc, G_[p]));
    }
    for (std::size_t p = 0; p < n; ++p) {
        auto [i, j] = pairs_[p];
        gb.push_back(frame_gen(e(i, j), GenClass::Base));
        xb.push_back(row_form(pair_.x(), dr, E_[p]));
        ga.push_back(frame_gen(e(i, j), GenClass::Base));
        xa.push_back(row_form(pair_.xcheck(), dr, E_[p]));
    }
    iib_frame_ = FrameSpec::derived(pair_.x(), gb, xb);
    iia_frame_ = FrameSpec::derived(pair_.xcheck(), ga, xa);

    std::vector<Generator> gc, gs, gh;
    std::vector<Form> xc, xs, xh;
    for (std::size_t p = 0; p < n; ++p) {
        auto [i, j] = pairs_[p];
        gc.push_back(frame_gen(f(i, j), GenClass::FiberMirror));
        xc.push_back(row_form(pair_.xcheck(), thc, E_[p]));
        gs.push_back(frame_gen(fcheck(i, j), GenClass::FiberX));
        xs.push_back(row_form(pair_.x(), th, G_[p]));
    }
    for (std::size_t p = 0; p < n; ++p) {
        auto [i, j] = pairs_[p];
        gc.push_back(frame_gen(e(i, j), GenClass::Base));
        xc.push_back(row_form(pair_.xcheck(), dr, E_[p]));
        gs.push_back(frame_gen(e(i, j), GenClass::Base));
        xs.push_back(row_form(pair_.x(), dr, E_[p]));
    }
    mc_frame_ = FrameSpec::derived(pair_.xcheck(), gc, xc);
    ms_frame_ = FrameSpec::derived(pair_.x(), gs, xs);
    for (std::size_t p = 0; p < n; ++p) xs[p] = row_form(pair_.x(), th, Grec_[p]);
    rs_frame_ = FrameSpec::derived(pair_.x(), gs, xs);
    for (int pass = 0; pass < 2; ++pass)
        for (std::size_t p = 0; p < n; ++p) {
            auto [i, j] = pairs_[p];
            gh.push_back(frame_gen((pass == 0 ? "eta_" : "etabar_") + suffix(i, j),
                                   pass == 0 ? GenClass::FiberMirror : GenClass::Base));
            GR im = pass == 0 ? GR::i() : -GR::i();
            xh.push_back(Form::generator(mc_frame_, p) + Form::generator(mc_frame_, n + p, Poly(im)));
        }
    mh_frame_ = FrameSpec::derived(mc_frame_, gh, xh);
}

std::size_t NilData::index(int i, int j) const {
    if (i < 1 || j <= i || j > K_) throw Error("index pair out of range");
    std::size_t pos = 0;
    for (int a = 1; a < i; ++a) pos += static_cast<std::size_t>(K_ - a);
    return pos + static_cast<std::size_t>(j - i - 1);
}

std::string NilData::suffix(int i, int j) const { return pair_suffix(K_, i, j); }

CheckReport structure_equations(const NilData& nd) {
    CheckReport r;
    const FramePtr& B = nd.iib_frame();
    const FramePtr& A = nd.iia_frame();
    const std::size_t n = static_cast<std::size_t>(nd.n());
    for (std::size_t p = 0; p < n; ++p) {
        auto [i, j] = nd.pairs()[p];
        Form de = frame_collect(exterior_d(B->expansion(n + p)), B);
        Form df = frame_collect(exterior_d(B->expansion(p)), B);
        Form re(B), rf(B);
        for (int k = i + 1; k < j; ++k) {
            re -= wedge(Form::generator(B, nd.e(i, k)), Form::generator(B, nd.e(k, j)));
            rf -= wedge(Form::generator(B, nd.e(i, k)), Form::generator(B, nd.f(k, j)));
        }
        bool ok_e = de == re && B->structure(n + p) == re;
        bool ok_f = df == rf && B->structure(p) == rf;
        r.add("d" + nd.e(i, j), ok_e, "d e_ij = -sum e_ik ^ e_kj", witness_of(de - re));
        r.add("d" + nd.f(i, j), ok_f, "d f_ij = -sum e_ik ^ f_kj", witness_of(df - rf));
    }
    for (std::size_t p = 0; p < n; ++p) {
        auto [i, j] = nd.pairs()[p];
        Form dc = frame_collect(exterior_d(A->expansion(p)), A);
        r.info("d" + nd.fcheck(i, j), "computed", dc.is_zero() ? std::string("0") : dc.str());
    }
    return r;
}

Form gamma_residue(const NilData& nd, const Form& a, FiberLabels labels) {
    const int K = nd.K();
    const std::size_t n = static_cast<std::size_t>(nd.n());
    Form x = expand_to_root(a);
    const FramePtr& root = x.frame();

    std::map<std::string, Poly> rmap;
    // θ' = L θ with L_{(i,k),(j,k)} = a_ij
    PolyMatrix L(n, std::vector<Poly>(n));
    for (int i = 1; i <= K; ++i)
        for (int k = i + 1; k <= K; ++k) {
            Poly img = nd.r(i, k) + nd.a(i, k);
            L[nd.index(i, k)][nd.index(i, k)] = Poly(1);
            for (int j = i + 1; j < k; ++j) {
                img += nd.a(i, j) * nd.r(j, k);
                L[nd.index(i, k)][nd.index(j, k)] = nd.a(i, j);
            }
            rmap["r_" + nd.suffix(i, k)] = img;
        }
    // L^{-1} = Σ (I − L)^m
    PolyMatrix N(n, std::vector<Poly>(n)), Linv(n, std::vector<Poly>(n)), P(n, std::vector<Poly>(n));
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = 0; q < n; ++q) N[p][q] = p == q ? Poly() : -L[p][q];
        Linv[p][p] = Poly(1);
        P[p][p] = Poly(1);
    }
    for (std::size_t m = 1; m < n; ++m) {
        PolyMatrix next(n, std::vector<Poly>(n));
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t s = 0; s < n; ++s) {
                if (P[p][s].is_zero()) continue;
                for (std::size_t q = 0; q < n; ++q)
                    if (!N[s][q].is_zero()) next[p][q] += P[p][s] * N[s][q];
            }
        P = std::move(next);
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = 0; q < n; ++q) Linv[p][q] += P[p][q];
    }

    const SemiflatPair& pr = nd.pair();
    std::vector<Form> images;
    for (const auto& g : root->generators()) {
        Form img(root);
        bool found = false;
        for (std::size_t p = 0; p < n && !found; ++p) {
            const int ip = static_cast<int>(p);
            const std::string& tangent = labels == FiberLabels::Native ? pr.theta(ip) : pr.thetacheck(ip);
            const std::string& cotangent = labels == FiberLabels::Native ? pr.thetacheck(ip) : pr.theta(ip);
            if (g.label == tangent || g.label == pr.dr(ip)) {
                const bool th = g.label == tangent;
                for (std::size_t q = 0; q < n; ++q)
                    if (!L[p][q].is_zero())
                        img += Form::generator(root, th ? fiber_label(pr, labels, true, q) : pr.dr(static_cast<int>(q)), L[p][q]);
                found = true;
            } else if (g.label == cotangent) {
                for (std::size_t q = 0; q < n; ++q)
                    if (!Linv[q][p].is_zero()) img += Form::generator(root, fiber_label(pr, labels, false, q), Linv[q][p]);
                found = true;
            }
        }
        if (!found) throw Error("gamma action: unknown generator " + g.label);
        images.push_back(img);
    }
    return substitute_generators(x.subst(rmap), images, root) - x;
}

CheckReport check_gamma_invariance(const NilData& nd) {
    CheckReport r;
    const FramePtr& B = nd.iib_frame();
    const FramePtr& A = nd.iia_frame();
    const std::size_t n = static_cast<std::size_t>(nd.n());
    for (std::size_t p = 0; p < n; ++p) {
        auto [i, j] = nd.pairs()[p];
        Form re = gamma_residue(nd, B->expansion(n + p));
        Form rf = gamma_residue(nd, B->expansion(p));
        Form rc = gamma_residue(nd, A->expansion(p));
        r.add("gamma-" + nd.e(i, j), re.is_zero(), "", witness_of(re));
        r.add("gamma-" + nd.f(i, j), rf.is_zero(), "", witness_of(rf));
        r.add("gamma-" + nd.fcheck(i, j), rc.is_zero(), "", witness_of(rc));
    }
    return r;
}

PolyMatrix pairing_matrix(const PolyMatrix& F, const PolyMatrix& G) {
    const std::size_t n = F.size();
    PolyMatrix M(n, std::vector<Poly>(n));
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q)
            for (std::size_t s = 0; s < n; ++s)
                if (!F[p][s].is_zero() && !G[q][s].is_zero()) M[p][q] += F[p][s] * G[q][s];
    return M;
}

namespace {

bool is_identity(const PolyMatrix& M) {
    for (std::size_t p = 0; p < M.size(); ++p)
        for (std::size_t q = 0; q < M.size(); ++q)
            if (!(M[p][q] == Poly(p == q ? 1 : 0))) return false;
    return true;
}

}  // namespace

CheckReport check_dual_pairing(const NilData& nd) {
    PolyMatrix M = pairing_matrix(nd.frame_matrix(), nd.dual_matrix());
    const bool ok = is_identity(M);
    CheckReport r;
    r.add("dual-pairing", ok, "<f_p, fcheck_q> = delta_pq", ok ? std::nullopt : std::optional(matrix_str(M)));
    PolyMatrix R = pairing_matrix(nd.frame_matrix(), nd.recursive_dual_matrix());
    const bool rec = is_identity(R);
    r.info("recursive-dual", rec ? "the recursion through fcheck_ik gives the same dual basis"
                                 : "the recursion through fcheck_ik is not dual to f",
           rec ? std::nullopt : std::optional(matrix_str(R)));
    return r;
}

CheckReport check_frame_volume(const NilData& nd) {
    const FramePtr& B = nd.iib_frame();
    const FramePtr& X = nd.pair().x();
    const std::size_t n = static_cast<std::size_t>(nd.n());
    std::vector<Form> es, fs;
    std::vector<std::string> drs, ths;
    for (std::size_t p = 0; p < n; ++p) {
        fs.push_back(B->expansion(p));
        es.push_back(B->expansion(n + p));
        ths.push_back(nd.pair().theta(static_cast<int>(p)));
        drs.push_back(nd.pair().dr(static_cast<int>(p)));
    }
    Form ve = wedge_all(es, X) - Form::wedge_of(X, drs);
    Form vf = wedge_all(fs, X) - Form::wedge_of(X, ths);
    CheckReport r;
    r.add("volume-e", ve.is_zero(), "wedge of e = wedge of dr", witness_of(ve));
    r.add("volume-f", vf.is_zero(), "wedge of f = wedge of dtheta", witness_of(vf));
    return r;
}

SUStructure build_iib_side(const NilData& nd) {
    const FramePtr& B = nd.iib_frame();
    const SemiflatPair& P = nd.pair();
    Form omega(B);
    std::vector<Form> dz;
    for (int p = 0; p < nd.n(); ++p) {
        auto [i, j] = nd.pairs()[p];
        omega += wedge(Form::generator(B, nd.e(i, j)), Form::generator(B, nd.f(i, j)));
        dz.push_back(Form::generator(P.x(), P.theta(p)) + Form::generator(P.x(), P.dr(p), Poly(GR::i())));
    }
    return SUStructure::factored(omega, dz);
}

SUStructure build_iia_side(const NilData& nd) {
    const FramePtr& A = nd.iia_frame();
    std::vector<Form> eta;
    for (int p = 0; p < nd.n(); ++p) {
        auto [i, j] = nd.pairs()[p];
        eta.push_back(Form::generator(A, nd.fcheck(i, j)) + Form::generator(A, nd.e(i, j), Poly(GR::i())));
    }
    Form omega = SymplecticData::darboux(nd.pair().xcheck(), GenClass::FiberMirror).omega();
    SUStructure s = SUStructure::factored(omega, eta, GR(1), Polarization{GenClass::FiberMirror, 0});
    if (auto ph = pure_fiber_phase(s)) s.polarization->phase = *ph;
    return s;
}

CheckReport check_balanced(const NilData& nd) {
    CheckReport r;
    const int n = nd.n();
    if (n < 2) {
        r.info("balanced", "n = 1: every form is balanced");
        return r;
    }
    SUStructure s = build_iib_side(nd);
    Form a = exterior_d(power(s.omega, static_cast<unsigned>(n - 1)));
    Form b = exterior_d(power(s.omega, static_cast<unsigned>(n - 2)));
    r.add("d-omega^{n-1}", a.is_zero(), "balanced", witness_of(a));
    r.add("d-omega^{n-2}-nonzero", !b.is_zero(), "not Kahler-like in degree n-2");
    return r;
}

Form mirror_omega_check(const NilData& nd) {
    const FramePtr& B = nd.iib_frame();
    Form w(B);
    for (auto [i, j] : nd.pairs()) w += wedge(Form::generator(B, nd.f(i, j)), Form::generator(B, nd.e(i, j)));
    return relabel(expand_to_root(w), nd.pair().xcheck(), rename_suffix(nd.pair().suffixes(), "dtheta_", "dthetacheck_"));
}

CheckReport check_mirror_pair(const NilData& nd) {
    const SemiflatPair& P = nd.pair();
    const int n = nd.n();
    CheckReport r;
    Form wc = mirror_omega_check(nd);
    SUStructure B = semiflat_iib(wc, P);
    SUStructure A = mirror_transform(wc, P);
    SUStructure native = build_iia_side(nd);

    Form target = relabel(expand_to_root(native.Omega), P.x(), rename_suffix(P.suffixes(), "dthetacheck_", "dtheta_"));
    const bool odd = ((n * (n - 1)) / 2) % 2 != 0;
    Form ft = fm_forward(exp_nilpotent(wc * Poly(2)), P);
    Form diff = ft - target * Poly(odd ? -1 : 1);
    r.add("FT-exp-2omega", diff.is_zero(), "FT(e^{2 omega}) = (-1)^{n(n-1)/2} Omega of the symplectic side",
          witness_of(diff));
    Form d2 = ft - A.Omega;
    r.add("mirror-transform-Omega", d2.is_zero(), "closed form of FT(e^{2 omega})", witness_of(d2));
    CheckReport ib = check_iib(B), ia = check_iia(A);
    r.add("iib-source", ib.passed(), "", ib.passed() ? std::nullopt : std::optional(ib.first_failure()->id));
    r.add("iia-mirror", ia.passed(), "", ia.passed() ? std::nullopt : std::optional(ia.first_failure()->id));

    ConformalFactor F = conformal_factor(A), Fc = conformal_factor(B);
    bool prod = F.constant && Fc.constant && *F.constant * *Fc.constant == power(GR(2), 2 * n);
    r.add("conformal-product", prod, "F * Fcheck = 2^{2n}", "F = " + F.F.str() + ", Fcheck = " + Fc.F.str());

    Form rhoA = flux_iia(A).form;
    Form rhoB = flux_iib(B).form;
    Form T = convert(fm_backward(rhoA, P), P.xcheck());
    GR c = power(GR(2), 2 * n + 2);
    Form fd = T - rhoB * Poly(c);
    r.add("flux-correspondence", fd.is_zero(), "FT(rho_A) = 2^{2n+2} rho_B", witness_of(fd));
    r.info("rho_A", "mirror side", rhoA.is_zero() ? std::string("0") : rhoA.str());
    r.info("rho_B", "complex side", rhoB.is_zero() ? std::string("0") : rhoB.str());
    if (auto k = form_ratio(T, rhoB)) r.info("flux-ratio", "FT(rho_A) / rho_B", k->str());
    Form dA = exterior_d(rhoA), dB = exterior_d(rhoB);
    r.add("rho-closed", dA.is_zero() && dB.is_zero(), "d rho_A = d rho_B = 0");
    return r;
}

CheckReport nil_campaign(const NilData& nd) {
    CheckReport r;
    r.append(structure_equations(nd), "structure/");
    r.append(check_gamma_invariance(nd), "invariance/");
    r.append(check_dual_pairing(nd), "pairing/");
    r.append(check_frame_volume(nd), "volume/");
    SUStructure b = build_iib_side(nd);
    SUStructure a = build_iia_side(nd);
    r.append(check_su_structure(b), "iib-su/");
    r.append(check_iib(b), "iib/");
    r.append(check_balanced(nd), "balanced/");
    FluxCurrent rb = flux_iib(b);
    r.add("iib/rho_B-closed", exterior_d(rb.form).is_zero(), "", rb.form.is_zero() ? std::string("0") : rb.form.str());
    r.append(check_su_structure(a), "iia-su/");
    r.append(check_iia(a), "iia/");
    r.append(check_mirror_pair(nd), "mirror/");
    return r;
}

}  // namespace syzkit
