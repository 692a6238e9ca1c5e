#include <doctest.h>

#include "oracles.hpp"
#include "syzkit/calculus.hpp"
#include "syzkit/fourier.hpp"
#include "syzkit/nilmanifold.hpp"
#include "syzkit/proptest.hpp"

using namespace syzkit;

namespace {

Form g(const FramePtr& f, const std::string& l, const Poly& c = Poly(1)) { return Form::generator(f, l, c); }

void require_suite(const std::string& name, int trials, std::uint64_t seed) {
    CheckReport rep = run_suite(name, trials, seed);
    for (const auto& it : rep.items()) {
        INFO(name << "/" << it.id << " " << it.detail << " " << it.witness.value_or(""));
        CHECK(it.status == Status::Pass);
    }
}

}  // namespace

TEST_CASE("exterior derivative examples") {
    SemiflatPair P(2);
    const FramePtr& X = P.x();
    Poly r1 = Poly::var("r_1");
    CHECK(exterior_d(g(X, "dtheta_2", r1)) == wedge(g(X, "dr_1"), g(X, "dtheta_2")));
    CHECK(exterior_d(g(X, "dtheta_2", r1)) == -wedge(g(X, "dtheta_2"), g(X, "dr_1")));
    CHECK(exterior_d(Form::scalar(X, r1 * r1)) == g(X, "dr_1", Poly(2) * r1));

    NilData nd(3);
    const FramePtr& B = nd.iib_frame();
    CHECK(exterior_d(g(B, nd.e(1, 3))) == -wedge(g(B, nd.e(1, 2)), g(B, nd.e(2, 3))));
    CHECK(exterior_d(g(B, nd.e(1, 2))).is_zero());
    CHECK(exterior_d(g(B, nd.e(2, 3))).is_zero());
}

TEST_CASE("Iwasawa omega-check is balanced but not closed") {
    SemiflatPair P(3);
    Poly r1 = Poly::var("r_1");
    PolyMatrix mu = {{1, 0, 0}, {0, Poly(1) + r1 * r1, -r1}, {0, -r1, 1}};
    Form w = semiflat_omega(P, mu);
    CHECK_FALSE(exterior_d(w).is_zero());
    CHECK(exterior_d(wedge(w, w)).is_zero());
}

TEST_CASE("d through the frame agrees with d in coordinates") {
    NilData nd(4);
    RandomShape s;
    s.max_degree = 1;
    for (int t = 0; t < 20; ++t) {
        Rng rng(trial_seed(31, static_cast<std::uint64_t>(t)));
        for (const FramePtr& f : {nd.iib_frame(), nd.iia_frame(), nd.mirror_holomorphic_frame()}) {
            Form a = random_form(rng, f, -1, s);
            CHECK(exterior_d(a) == exterior_d_expanded(a));
        }
    }
}

TEST_CASE("dual Lefschetz operator") {
    SemiflatPair P(3);
    const SymplecticData& S = P.symplectic();
    const FramePtr& X = P.x();
    CHECK(dual_lefschetz(S.omega(), S) == Form::scalar(X, Poly(3)));
    CHECK(dual_lefschetz(wedge(g(X, "dtheta_1"), g(X, "dtheta_2")), S).is_zero());
    CHECK(dual_lefschetz(g(X, "dr_1"), S).is_zero());
    CHECK(dual_lefschetz(Form::scalar(X, Poly(5)), S).is_zero());
    // brute-force: Σ_i ι_{r_i} ι_{θ_i} applied to ω
    Form viaContract(X);
    for (int i = 0; i < 3; ++i) viaContract += contract(contract(S.omega(), P.theta(i)), P.dr(i));
    CHECK(viaContract == Form::scalar(X, Poly(3)));
    CHECK(S.has_pairing());
    // [Λ, L] = (n - k) on k-forms
    RandomShape s;
    for (int t = 0; t < 20; ++t) {
        Rng rng(trial_seed(37, static_cast<std::uint64_t>(t)));
        const int k = t % 7;
        Form a = random_form(rng, X, k, s);
        Form comm = dual_lefschetz(lefschetz(a, S), S) - lefschetz(dual_lefschetz(a, S), S);
        CHECK(comm == a * Poly(3 - k));
    }
}

TEST_CASE("d-Lambda examples") {
    SemiflatPair P(2);
    const SymplecticData& S = P.symplectic();
    Poly r1 = Poly::var("r_1"), r2 = Poly::var("r_2");
    CHECK(d_lambda(Form::scalar(P.x(), r1 * r2 + r1), S).is_zero());
    CHECK(d_lambda(S.omega(), S).is_zero());
    CHECK_THROWS_AS(SymplecticData(Form::scalar(P.x(), r1)).pairing(), Error);
}

TEST_CASE("Dolbeault operators") {
    SemiflatPair P(2);
    const ComplexBasis& C = P.complex();
    const FramePtr& Z = P.complex_frame();
    Poly r1 = Poly::var("r_1"), r2 = Poly::var("r_2");
    Poly gfun = r1 * r1 * r2;
    Form f = Form::scalar(Z, gfun);
    Form expected_bar = (g(Z, "dzbar_1", gfun.diff("r_1")) + g(Z, "dzbar_2", gfun.diff("r_2"))) * Poly(GR(0, mpq_class(1, 2)));
    Form expected = (g(Z, "dz_1", gfun.diff("r_1")) + g(Z, "dz_2", gfun.diff("r_2"))) * Poly(GR(0, mpq_class(-1, 2)));
    CHECK(delbar(f, C) == expected_bar);
    CHECK(del(f, C) == expected);
    CHECK(delbar(g(Z, "dz_1"), C).is_zero());
    CHECK(del(g(Z, "dz_1"), C).is_zero());
    // dz expansions are conjugate and invertible
    Form dz1 = frame_expand(g(Z, "dz_1"));
    CHECK(dz1.conj() == frame_expand(g(Z, "dzbar_1")));
    CHECK(frame_collect(dz1, Z) == g(Z, "dz_1"));
    CHECK(g(Z, "dz_1").conj() == g(Z, "dzbar_1"));
}

TEST_CASE("polarization switch") {
    SemiflatPair P(2);
    const ComplexBasis& C = P.complex();
    const FramePtr& Z = P.complex_frame();
    CHECK(polarization_switch(wedge(g(Z, "dz_1"), g(Z, "dzbar_2")), C) ==
          wedge(g(P.xcheck(), "dthetacheck_1"), g(P.xcheck(), "dr_2")));
    CHECK(polarization_switch(Form::scalar(Z, Poly(1)), C) == Form::scalar(P.xcheck(), Poly(1)));
    CHECK_THROWS_AS(polarization_switch_inverse(g(P.x(), "dr_1"), C), Error);
}

TEST_CASE("operator algebra on random inputs") { require_suite("operator-algebra", 200, 99); }
