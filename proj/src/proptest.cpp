#include "syzkit/proptest.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "syzkit/calculus.hpp"

namespace syzkit {

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

namespace {

long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

mpq_class random_rational(Rng& rng, long range) {
    mpq_class q(uniform(rng, -range, range), uniform(rng, 1, range));
    q.canonicalize();
    return q;
}

Poly random_monomial(Rng& rng, const VarList& vars, int degree, const GR& c) {
    Poly m(c);
    for (int k = 0; k < degree && !vars.empty(); ++k)
        m *= Poly::var(vars[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(vars.size()) - 1))]);
    return m;
}

Mask random_mask(Rng& rng, std::size_t size, int degree) {
    if (degree < 0) return static_cast<Mask>(uniform(rng, 0, (1L << size) - 1));
    std::vector<std::size_t> idx(size);
    for (std::size_t i = 0; i < size; ++i) idx[i] = i;
    std::shuffle(idx.begin(), idx.end(), rng);
    idx.resize(static_cast<std::size_t>(degree));
    return mask_of(idx);
}

}  // namespace

GR random_gr(Rng& rng, const RandomShape& shape) {
    mpq_class re = random_rational(rng, shape.range);
    mpq_class im = shape.complex && uniform(rng, 0, 1) ? random_rational(rng, shape.range) : mpq_class(0);
    return {re, im};
}

Poly random_poly(Rng& rng, const VarList& vars, const RandomShape& shape) {
    Poly p;
    const long terms = uniform(rng, 1, shape.max_terms);
    for (long t = 0; t < terms; ++t)
        p += random_monomial(rng, vars, static_cast<int>(uniform(rng, 0, shape.max_degree)), random_gr(rng, shape));
    return p;
}

Form random_form(Rng& rng, const FramePtr& frame, int degree, const RandomShape& shape) {
    Form a(frame);
    const long terms = uniform(rng, 1, shape.max_form_terms);
    for (long t = 0; t < terms; ++t)
        a += Form::monomial(frame, random_mask(rng, frame->size(), degree), random_poly(rng, frame->base_vars(), shape));
    return a;
}

PolyMatrix random_mu(Rng& rng, const VarList& vars, const RandomShape& shape) {
    const std::size_t n = vars.size();
    RandomShape real = shape;
    real.complex = false;
    PolyMatrix mu(n, std::vector<Poly>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            Poly p;
            const long terms = uniform(rng, 0, shape.max_terms);
            for (long t = 0; t < terms; ++t)
                p += random_monomial(rng, vars, static_cast<int>(uniform(rng, 1, std::max(1, shape.max_degree))),
                                     random_gr(rng, real));
            if (i == j) p += Poly(1);
            mu[i][j] = p;
            mu[j][i] = p;
        }
    return mu;
}

PolyMatrix random_hessian_mu(Rng& rng, const VarList& vars, int degree) {
    RandomShape real;
    real.complex = false;
    Poly phi;
    for (int t = 0; t < 3; ++t)
        phi += random_monomial(rng, vars, static_cast<int>(uniform(rng, 3, 3 + std::max(0, degree - 1))), random_gr(rng, real));
    const std::size_t n = vars.size();
    PolyMatrix mu(n, std::vector<Poly>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) mu[i][j] = phi.diff(vars[i]).diff(vars[j]) + Poly(i == j ? 1 : 0);
    return mu;
}

Form semiflat_omega(const SemiflatPair& pair, const PolyMatrix& mu) {
    Form w(pair.xcheck());
    for (int i = 0; i < pair.n(); ++i)
        for (int j = 0; j < pair.n(); ++j)
            if (!mu[i][j].is_zero())
                w += wedge(Form::generator(pair.xcheck(), pair.thetacheck(i)), Form::generator(pair.xcheck(), pair.dr(j))) *
                     mu[i][j];
    return w;
}

namespace {

class Tally {
public:
    void record(const std::string& id, int trial, bool ok, const std::function<std::string()>& witness) {
        auto it = pos_.find(id);
        if (it == pos_.end()) {
            it = pos_.emplace(id, props_.size()).first;
            props_.push_back(Prop{id, 0, 0, std::nullopt});
        }
        Prop& p = props_[it->second];
        ++p.trials;
        if (!ok && !p.witness) p.witness = "trial " + std::to_string(trial) + ": " + witness();
        if (!ok) ++p.failures;
    }
    void note(const std::string& id, int trial) {
        record(id, trial, true, [] { return std::string(); });
    }
    CheckReport report(const std::vector<std::string>& info_ids = {}) const {
        CheckReport r;
        for (const auto& p : props_) {
            bool info = std::find(info_ids.begin(), info_ids.end(), p.id) != info_ids.end();
            std::string detail = std::to_string(p.trials) + " trials";
            if (info) r.info(p.id, std::to_string(p.trials) + " cases");
            else if (p.failures) r.add(p.id, false, detail + ", " + std::to_string(p.failures) + " failed", p.witness);
            else r.add(p.id, true, detail);
        }
        return r;
    }

private:
    struct Prop {
        std::string id;
        int trials = 0;
        int failures = 0;
        std::optional<std::string> witness;
    };
    std::vector<Prop> props_;
    std::map<std::string, std::size_t> pos_;
};

int involution_sign(int n) { return ((n * (n - 1)) / 2) % 2 ? -1 : 1; }

const SemiflatPair& pair_of(int n) {
    static std::map<int, SemiflatPair> cache;
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, SemiflatPair(n)).first;
    return it->second;
}

std::vector<int> random_subset(Rng& rng, int n) {
    std::vector<int> out;
    for (int i = 1; i <= n; ++i)
        if (uniform(rng, 0, 1)) out.push_back(i);
    return out;
}

void ring_axioms(Tally& t, int trial, Rng& rng) {
    const VarList vars{"r_1", "r_2", "r_3"};
    RandomShape s;
    Poly p = random_poly(rng, vars, s), q = random_poly(rng, vars, s), w = random_poly(rng, vars, s);
    auto wit = [&] { return "p = " + p.str() + ", q = " + q.str() + ", s = " + w.str(); };
    t.record("add-commutative", trial, p + q == q + p, wit);
    t.record("mul-commutative", trial, p * q == q * p, wit);
    t.record("add-associative", trial, (p + q) + w == p + (q + w), wit);
    t.record("mul-associative", trial, (p * q) * w == p * (q * w), wit);
    t.record("distributive", trial, p * (q + w) == p * q + p * w, wit);
    t.record("additive-inverse", trial, (p - p).is_zero() && (p + (-p)).is_zero(), wit);
    const std::string& v = vars[static_cast<std::size_t>(uniform(rng, 0, 2))];
    t.record("leibniz", trial, (p * q).diff(v) == p.diff(v) * q + p * q.diff(v), wit);
    std::map<std::string, Poly> sub{{vars[0], random_poly(rng, vars, s)}, {vars[2], random_poly(rng, vars, s)}};
    t.record("subst-homomorphism", trial,
             (p * q).subst(sub) == p.subst(sub) * q.subst(sub) && (p + q).subst(sub) == p.subst(sub) + q.subst(sub), wit);
    t.record("conj-involution", trial, p.conj().conj() == p && (p * q).conj() == p.conj() * q.conj(), wit);
}

void ft_involution(Tally& t, int trial, Rng& rng) {
    const int n = 1 + trial % 4;
    const SemiflatPair& P = pair_of(n);
    RandomShape s;
    s.max_degree = 1;
    s.max_terms = 2;
    Form a = random_form(rng, P.complex_frame(), -1, s);
    Poly sign(involution_sign(n));
    t.record("xcheck-to-x-to-xcheck", trial, fm_backward(fm_forward(a, P), P) == a * sign, [&] { return a.str(); });
    Form b = random_form(rng, P.x(), -1, s);
    t.record("x-to-xcheck-to-x", trial, fm_forward(fm_backward(b, P), P) == b * sign, [&] { return b.str(); });
}

void closed_form(Tally& t, int trial, Rng& rng) {
    const int n = 1 + trial % 4;
    const SemiflatPair& P = pair_of(n);
    auto I = random_subset(rng, n), J = random_subset(rng, n);
    RandomShape s;
    Poly c = random_poly(rng, P.base_vars(), s);
    Form a = complex_monomial(I, J, P) * c;
    t.record("monomial-rule", trial, fm_forward(a, P) == fm_monomial(I, J, P) * c, [&] { return a.str(); });
}

void intertwining(Tally& t, int trial, Rng& rng) {
    const int n = 1 + trial % 3;
    const SemiflatPair& P = pair_of(n);
    RandomShape s;
    Form a = random_form(rng, P.complex_frame(), -1, s);
    IntertwiningResult r = check_intertwining(a, P);
    t.record("ft-delbar-d", trial, r.delbar_ok, [&] { return a.str() + " | difference " + r.delbar_difference.str(); });
    t.record("ft-del-dlambda", trial, r.del_ok, [&] { return a.str() + " | difference " + r.del_difference.str(); });
}

void leg_counts(Tally& t, int trial, Rng& rng) {
    const int n = 1 + trial % 4;
    const SemiflatPair& P = pair_of(n);
    const int p = static_cast<int>(uniform(rng, 0, n)), q = static_cast<int>(uniform(rng, 0, n));
    RandomShape s;
    s.max_degree = 1;
    Form a = random_form(rng, P.complex_frame(), p + q, s);
    a = bidegree_project(a, GenClass::FiberMirror, p, GenClass::Base, q);
    t.record("leg-counts", trial, check_leg_counts(a, P), [&] { return a.str(); });
}

void operator_algebra(Tally& t, int trial, Rng& rng) {
    const int n = 1 + trial % 3;
    const SemiflatPair& P = pair_of(n);
    RandomShape s;
    const int k = static_cast<int>(uniform(rng, 0, 2 * n));
    Form a = random_form(rng, P.x(), k, s);
    Form b = random_form(rng, P.x(), -1, s);
    auto wa = [&] { return a.str(); };
    auto wab = [&] { return a.str() + " ; " + b.str(); };
    const SymplecticData& S = P.symplectic();
    Form da = exterior_d(a);
    t.record("d-squared", trial, exterior_d(da).is_zero(), wa);
    Form leib = exterior_d(wedge(a, b)) - wedge(da, b) - wedge(a, exterior_d(b)) * Poly(k % 2 ? -1 : 1);
    t.record("leibniz", trial, leib.is_zero(), wab);
    Form dl = d_lambda(a, S);
    t.record("dlambda-squared", trial, d_lambda(dl, S).is_zero(), wa);
    t.record("d-dlambda-anticommute", trial, (exterior_d(dl) + d_lambda(da, S)).is_zero(), wa);
    t.record("d-frame-vs-root", trial, da == exterior_d_expanded(a), wa);

    Form c = random_form(rng, P.complex_frame(), -1, s);
    auto wc = [&] { return c.str(); };
    Dolbeault dd = dolbeault(c, P.complex());
    t.record("del-plus-delbar", trial, dd.del + dd.delbar == convert(exterior_d(c), P.complex_frame()), wc);
    t.record("del-squared", trial, del(dd.del, P.complex()).is_zero(), wc);
    t.record("delbar-squared", trial, delbar(dd.delbar, P.complex()).is_zero(), wc);
    t.record("del-delbar-anticommute", trial,
             (del(dd.delbar, P.complex()) + delbar(dd.del, P.complex())).is_zero(), wc);
    Form x = random_form(rng, P.xcheck(), -1, s);
    t.record("switch-bijective", trial,
             polarization_switch_inverse(polarization_switch(c, P.complex()), P.complex()) == c &&
                 polarization_switch(polarization_switch_inverse(x, P.complex()), P.complex()) == x,
             [&] { return c.str() + " ; " + x.str(); });
}

PolyMatrix draw_mu(Rng& rng, int trial, const VarList& vars) {
    RandomShape s;
    s.max_degree = 2;
    s.max_terms = 2;
    s.complex = false;
    return trial % 2 ? random_mu(rng, vars, s) : random_hessian_mu(rng, vars, 1 + trial % 3);
}

std::string mu_str(const PolyMatrix& mu) {
    std::string out = "mu = [";
    for (std::size_t i = 0; i < mu.size(); ++i) {
        out += i ? "; " : "";
        for (std::size_t j = 0; j < mu[i].size(); ++j) out += (j ? ", " : "") + mu[i][j].str();
    }
    return out + "]";
}

void su_biconditional(Tally& t, int trial, Rng& rng) {
    const int n = 2 + trial % 2;
    const SemiflatPair& P = pair_of(n);
    PolyMatrix mu = draw_mu(rng, trial, P.base_vars());
    auto wit = [&] { return mu_str(mu); };
    Form wc = semiflat_omega(P, mu);
    SUStructure B = semiflat_iib(wc, P);
    SUStructure A = mirror_transform(wc, P);
    const bool okB = check_su_structure(B).passed() && check_iib(B).passed();
    const bool okA = check_su_structure(A).passed() && check_iia(A).passed();
    t.record("iia-iff-iib", trial, okA == okB, wit);
    t.note(okB ? "pairs-satisfying-both" : "pairs-failing-both", trial);
    ConformalFactor FA = conformal_factor(A), FB = conformal_factor(B);
    Poly four_n = Poly(GR(1L << (2 * n)));
    t.record("conformal-product", trial, FA.F.num * FB.F.num == four_n * FA.F.den * FB.F.den,
             [&] { return wit() + " F = " + FA.F.str() + ", Fcheck = " + FB.F.str(); });
    t.record("ft-exp-2omega", trial, fm_forward(exp_nilpotent(wc * Poly(2)), P) == A.Omega, wit);
}

void re_omega(Tally& t, int trial, Rng& rng) {
    const SemiflatPair& P = pair_of(3);
    PolyMatrix mu = draw_mu(rng, trial, P.base_vars());
    auto wit = [&] { return mu_str(mu); };
    std::vector<Form> factors;
    for (int i = 0; i < 3; ++i) {
        Form f = Form::generator(P.x(), P.theta(i));
        for (int j = 0; j < 3; ++j) f += Form::generator(P.x(), P.dr(j), mu[i][j] * GR::i());
        factors.push_back(f);
    }
    SUStructure s = SUStructure::factored(P.symplectic().omega(), factors, GR(1), Polarization{GenClass::FiberX, 0});
    Form p30 = polarized_projection(s.Omega, GenClass::FiberX, 3, 0);
    Form p12 = polarized_projection(s.Omega, GenClass::FiberX, 1, 2);
    Form re = s.Omega.real_part();
    t.record("re-omega-split", trial, p30 + p12 == re, wit);
    const bool lhs = exterior_d(re).is_zero();
    const bool rhs = exterior_d(p30).is_zero() && exterior_d(p12).is_zero();
    t.record("re-omega-equivalence", trial, lhs == rhs, wit);
    t.note(lhs ? "closed-cases" : "non-closed-cases", trial);
}

using TrialFn = void (*)(Tally&, int, Rng&);

struct Suite {
    SuiteInfo info;
    TrialFn fn;
    std::vector<std::string> info_ids;
};

const std::vector<Suite>& suites() {
    static const std::vector<Suite> s = {
        {{"ring-axioms", "ring axioms, Leibniz and substitution on random polynomials"}, ring_axioms, {}},
        {{"ft-involution", "FT twice is (-1)^{n(n-1)/2}, n = 1..4"}, ft_involution, {}},
        {{"closed-form", "monomial rule against the integral transform, n = 1..4"}, closed_form, {}},
        {{"intertwining", "FT del-bar = (-1)^n (i/2) d FT and FT del = (-1)^n (i/2) d^Lambda FT, n = 1..3"},
         intertwining,
         {}},
        {{"leg-counts", "FT of a (p,q) form has n-p fiber and q base legs"}, leg_counts, {}},
        {{"operator-algebra", "d, d^Lambda, del, del-bar relations and the polarization switch"}, operator_algebra, {}},
        {{"su-biconditional", "IIA on the transform iff IIB on the source, n = 2, 3"},
         su_biconditional,
         {"pairs-satisfying-both", "pairs-failing-both"}},
        {{"re-omega", "n = 3 phase-0 structures: Re Omega = pi^{3,0} + pi^{1,2} and closedness equivalence"},
         re_omega,
         {"closed-cases", "non-closed-cases"}},
    };
    return s;
}

}  // namespace

const std::vector<SuiteInfo>& proptest_suites() {
    static const std::vector<SuiteInfo> out = [] {
        std::vector<SuiteInfo> v;
        for (const auto& s : suites()) v.push_back(s.info);
        return v;
    }();
    return out;
}

CheckReport run_suite(const std::string& name, int trials, std::uint64_t seed) {
    if (trials < 1) throw Error("trials must be positive");
    for (const auto& s : suites()) {
        if (s.info.name != name) continue;
        Tally t;
        for (int i = 0; i < trials; ++i) {
            Rng rng(trial_seed(seed, static_cast<std::uint64_t>(i)));
            s.fn(t, i, rng);
        }
        return t.report(s.info_ids);
    }
    throw Error("unknown suite '" + name + "'");
}

}  // namespace syzkit
