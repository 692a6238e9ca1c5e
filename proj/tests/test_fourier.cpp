#include <doctest.h>

#include "oracles.hpp"
#include "syzkit/fourier.hpp"
#include "syzkit/proptest.hpp"

using namespace syzkit;

namespace {

Form g(const FramePtr& f, const std::string& l, const Poly& c = Poly(1)) { return Form::generator(f, l, c); }

std::vector<int> bits(int mask, int n) {
    std::vector<int> out;
    for (int i = 0; i < n; ++i)
        if (mask >> i & 1) out.push_back(i + 1);
    return out;
}

std::vector<int> zero_based(const std::vector<int>& v) {
    std::vector<int> out;
    for (int i : v) out.push_back(i - 1);
    return out;
}

void require_suite(const std::string& name, int trials, std::uint64_t seed) {
    CheckReport rep = run_suite(name, trials, seed);
    for (const auto& it : rep.items()) {
        INFO(name << "/" << it.id << " " << it.detail << " " << it.witness.value_or(""));
        CHECK(it.status == Status::Pass);
    }
}

}  // namespace

TEST_CASE("the kernel is the sum of dthetacheck ^ dtheta") {
    SemiflatPair P(3);
    Form k(P.corr());
    for (int i = 0; i < 3; ++i) k += wedge(g(P.corr(), P.thetacheck(i)), g(P.corr(), P.theta(i)));
    CHECK(P.half_curvature() == k);
}

TEST_CASE("transform examples") {
    SemiflatPair P(3);
    const FramePtr& Z = P.complex_frame();
    Form one = Form::scalar(Z, Poly(1));
    Form t123 = Form::wedge_of(P.x(), {"dtheta_1", "dtheta_2", "dtheta_3"});
    CHECK(fm_forward(one, P) == -t123);
    CHECK(fm_forward(g(Z, "dz_1"), P) == -Form::wedge_of(P.x(), {"dtheta_2", "dtheta_3"}));
    CHECK(fm_backward(-t123, P) == -one);  // FT twice is -1 at n = 3
    CHECK(fm_monomial({1, 2, 3}, {}, P) == Form::scalar(P.x(), Poly(1)));
    CHECK(fm_monomial({}, {1}, P) == -Form::wedge_of(P.x(), {"dtheta_1", "dtheta_2", "dtheta_3", "dr_1"}));

    SemiflatPair P2(2);
    const FramePtr& Z2 = P2.complex_frame();
    Form w(Z2);
    for (int i = 0; i < 2; ++i) w += wedge(g(Z2, P2.dz(i)), g(Z2, P2.dzbar(i))) * Poly(GR(0, mpq_class(1, 2)));
    Form expected = -wedge(g(P2.x(), "dtheta_1") + g(P2.x(), "dr_1", Poly(GR::i())),
                           g(P2.x(), "dtheta_2") + g(P2.x(), "dr_2", Poly(GR::i())));
    CHECK(fm_forward(exp_nilpotent(w * Poly(2)), P2) == expected);
}

TEST_CASE("permutation sign against sorting") {
    std::vector<int> v{1, 2, 3, 4, 5};
    do {
        CHECK(permutation_sign(v) == oracle::bubble_sign(v));
    } while (std::next_permutation(v.begin(), v.end()));
    CHECK(permutation_sign({1, 1}) == 0);
    CHECK(complement({2}, 4) == std::vector<int>{1, 3, 4});
}

TEST_CASE("integral transform matches the definition oracle on every monomial, n <= 3") {
    for (int n = 1; n <= 3; ++n) {
        SemiflatPair P(n);
        for (int I = 0; I < (1 << n); ++I)
            for (int J = 0; J < (1 << n); ++J) {
                auto Iv = bits(I, n), Jv = bits(J, n);
                Form ft = fm_forward(complex_monomial(Iv, Jv, P), P);
                INFO("n=" << n << " I=" << I << " J=" << J);
                CHECK(oracle::labelled(ft) == oracle::labelled(oracle::ft_monomial(zero_based(Iv), zero_based(Jv), n), P.suffixes()));
                CHECK(ft == fm_monomial(Iv, Jv, P));
            }
    }
}

TEST_CASE("backward transform of theta/r monomials") {
    // FT_back(dθ_{I^c} ∧ dr_J) = (−1)^p (−1)^{p(p−1)/2} (−1)^{np} sign(I, I^c) dz_I ∧ dz̄_J
    for (int n = 1; n <= 3; ++n) {
        SemiflatPair P(n);
        for (int I = 0; I < (1 << n); ++I)
            for (int J = 0; J < (1 << n); ++J) {
                auto Iv = bits(I, n), Jv = bits(J, n);
                auto Ic = complement(Iv, n);
                const int p = static_cast<int>(Iv.size());
                std::vector<std::string> labels;
                for (int i : Ic) labels.push_back(P.theta(i - 1));
                for (int j : Jv) labels.push_back(P.dr(j - 1));
                Form a = Form::wedge_of(P.x(), labels);
                std::vector<int> cat = Iv;
                cat.insert(cat.end(), Ic.begin(), Ic.end());
                int sign = oracle::bubble_sign(cat);
                if (p % 2) sign = -sign;
                if ((p * (p - 1) / 2) % 2) sign = -sign;
                if ((n * p) % 2) sign = -sign;
                INFO("n=" << n << " I=" << I << " J=" << J);
                CHECK(fm_backward(a, P) == complex_monomial(Iv, Jv, P) * Poly(sign));
            }
    }
}

TEST_CASE("intertwining examples") {
    SemiflatPair P(1);
    const FramePtr& Z = P.complex_frame();
    Poly gfun = Poly::var("r_1").pow(3) + Poly(GR::i()) * Poly::var("r_1");
    Form a = g(Z, "dzbar_1", gfun);
    IntertwiningResult r = check_intertwining(a, P);
    CHECK(r.ok());
    // n = 1: FT(∂̄ g) = −(i/2) d FT(g)
    Form lhs = fm_forward(dolbeault(Form::scalar(Z, gfun), P.complex()).delbar, P);
    CHECK(lhs == exterior_d(fm_forward(Form::scalar(Z, gfun), P)) * Poly(GR(0, mpq_class(-1, 2))));

    SemiflatPair P3(3);
    Form c = Form::wedge_of(P3.complex_frame(), {"dz_1", "dzbar_2"}, Poly(GR(3, 1)));
    IntertwiningResult rc = check_intertwining(c, P3);
    CHECK(rc.ok());
    CHECK(fm_forward(delbar(c, P3.complex()), P3).is_zero());
    CHECK(exterior_d(fm_forward(c, P3)).is_zero());
}

TEST_CASE("random (1,1) forms with degree <= 2 coefficients, n = 3") {
    SemiflatPair P(3);
    RandomShape s;
    s.max_degree = 2;
    for (int t = 0; t < 100; ++t) {
        Rng rng(trial_seed(41, static_cast<std::uint64_t>(t)));
        Form a = bidegree_project(random_form(rng, P.complex_frame(), 2, s), GenClass::FiberMirror, 1, GenClass::Base, 1);
        IntertwiningResult r = check_intertwining(a, P);
        CHECK(r.ok());
        CHECK(check_leg_counts(a, P));
    }
}

TEST_CASE("property suites") {
    require_suite("ft-involution", 200, 1);
    require_suite("closed-form", 200, 2);
    require_suite("intertwining", 100, 3);
    require_suite("leg-counts", 100, 4);
}
