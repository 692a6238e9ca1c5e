#include <doctest.h>

#include "oracles.hpp"
#include "syzkit/proptest.hpp"
#include "syzkit/sustruct.hpp"

using namespace syzkit;

namespace {

Form g(const FramePtr& f, const std::string& l, const Poly& c = Poly(1)) { return Form::generator(f, l, c); }

PolyMatrix iwasawa_mu() {
    Poly r1 = Poly::var("r_1");
    return {{1, 0, 0}, {0, Poly(1) + r1 * r1, -r1}, {0, -r1, 1}};
}

const CheckItem& item(const CheckReport& r, const std::string& id) {
    const CheckItem* it = r.find(id);
    REQUIRE_MESSAGE(it, "missing check " << id);
    return *it;
}

void require_pass(const CheckReport& r) {
    for (const auto& it : r.items()) {
        INFO(it.id << " " << it.detail << " " << it.witness.value_or(""));
        CHECK((it.status == Status::Pass || !it.required));
    }
}

Form i_times(const Form& a) { return a * Poly(GR::i()); }

}  // namespace

TEST_CASE("flat pair, n = 2") {
    SemiflatPair P(2);
    PolyMatrix id = {{1, 0}, {0, 1}};
    Form wc = semiflat_omega(P, id);
    SUStructure A = mirror_transform(wc, P);
    SUStructure B = semiflat_iib(wc, P);
    Form expected = -wedge(g(P.x(), "dtheta_1") + i_times(g(P.x(), "dr_1")), g(P.x(), "dtheta_2") + i_times(g(P.x(), "dr_2")));
    CHECK(A.Omega == expected);
    CHECK(fm_forward(exp_nilpotent(wc * Poly(2)), P) == A.Omega);
    ConformalFactor FA = conformal_factor(A), FB = conformal_factor(B);
    REQUIRE(FA.constant);
    REQUIRE(FB.constant);
    CHECK(*FA.constant == GR(-4));
    CHECK(*FB.constant == GR(-4));
    CHECK(*FA.constant * *FB.constant == GR(16));
    // Ω ∧ Ω̄ = 4 dθ1 dr1 dθ2 dr2, by hand
    Form vol = Form::wedge_of(P.x(), {"dtheta_1", "dr_1", "dtheta_2", "dr_2"});
    CHECK(wedge(A.Omega, A.Omega.conj()) == vol * Poly(4));
    require_pass(check_su_structure(A));
    require_pass(check_su_structure(B));
    require_pass(check_iib(B));
    require_pass(check_iia(A));
    CHECK(item(check_iib(B), "d-omega").detail == "d omega = 0");
    CHECK(flux_iib(B).form.is_zero());
    CHECK(flux_iia(A).form.is_zero());
}

TEST_CASE("Iwasawa pair") {
    SemiflatPair P(3);
    PolyMatrix mu = iwasawa_mu();
    Form wc = semiflat_omega(P, mu);
    CHECK(semiflat_mu(wc, P) == mu);
    SUStructure B = semiflat_iib(wc, P);
    SUStructure A = mirror_transform(wc, P);

    SUBCASE("complex side is balanced, not Kähler") {
        require_pass(check_su_structure(B));
        CheckReport r = check_iib(B);
        require_pass(r);
        CHECK(item(r, "d-omega").detail == "d omega != 0");
        ConformalFactor F = conformal_factor(B);
        REQUIRE(F.constant);
        CHECK(*F.constant == GR(8));
    }

    SUStructure A2 = A;
    SUBCASE("mirror Omega against the hand-expanded product") {
        Poly r1 = Poly::var("r_1");
        const FramePtr& X = P.x();
        Form display = wedge(wedge(g(X, "dtheta_1") + i_times(g(X, "dr_1")),
                                   g(X, "dtheta_2") + g(X, "dtheta_3", r1) + i_times(g(X, "dr_2"))),
                             g(X, "dtheta_3") + i_times(g(X, "dr_3") - g(X, "dr_2", r1)));
        CHECK(A.Omega == -display);
        std::vector<Form> factors;
        for (int i = 0; i < 3; ++i) {
            Form f = g(X, P.theta(i));
            for (int j = 0; j < 3; ++j) f += i_times(g(X, P.dr(j), mu[i][j]));
            factors.push_back(f);
        }
        CHECK(A.Omega == wedge_all(factors, X) * Poly(-1));
    }

    SUBCASE("mirror side satisfies the IIA system") {
        require_pass(check_su_structure(A2));
        CheckReport r = check_iia(A2);
        require_pass(r);
        CHECK(exterior_d(A2.Omega.real_part()).is_zero());
        Form p30 = polarized_projection(A2.Omega, GenClass::FiberX, 3, 0);
        Form p12 = polarized_projection(A2.Omega, GenClass::FiberX, 1, 2);
        CHECK(exterior_d(p30).is_zero());
        CHECK(exterior_d(p12).is_zero());
        CHECK(A2.polarization->phase == 1);
        CHECK(pure_fiber_phase(A2) == mpq_class(1));
        ConformalFactor F = conformal_factor(A2);
        REQUIRE(F.constant);
        CHECK(*F.constant == GR(8));
    }

    SUBCASE("leg components of the transform of exp(2 omega-check)") {
        Form two = wc * Poly(2);
        Form term = Form::scalar(P.xcheck(), Poly(1));
        GR fact(1);
        for (int k = 0; k <= 3; ++k) {
            if (k > 0) {
                term = wedge(term, two);
                fact *= GR(k);
            }
            Form ft = fm_forward(term * Poly(fact.inverse()), P);
            CHECK(ft == polarized_projection(A.Omega, GenClass::FiberX, 3 - k, k));
        }
    }

    SUBCASE("fluxes") {
        FluxCurrent rb = flux_iib(B), ra = flux_iia(A);
        CHECK(rb.side == Side::IIB);
        Form mono_b = Form::wedge_of(P.xcheck(), {"dr_1", "dthetacheck_1", "dr_2", "dthetacheck_2"});
        CHECK(form_ratio(convert(rb.form, P.xcheck()), mono_b) == GR::fraction(1, 4));
        Form mono_a = Form::wedge_of(P.x(), {"dr_1", "dr_2", "dtheta_3"});
        CHECK(form_ratio(ra.form, mono_a) == GR(-16));
        CHECK(convert(fm_backward(ra.form, P), P.xcheck()) == convert(rb.form, P.xcheck()) * Poly(256));
        CHECK(exterior_d(ra.form).is_zero());
        CHECK(exterior_d(rb.form).is_zero());
    }

    SUBCASE("Hermitian at sample points") {
        CheckReport r = check_hermitian_at(B);
        CHECK(r.passed());
        CheckReport five = check_hermitian_at(B, {{{"r_1", GR(5)}}});
        REQUIRE(five.items().size() == 1);
        CHECK(five.passed());
        CHECK(five.items()[0].witness == std::optional<std::string>("minors: 1, 26, 1"));
        std::vector<std::vector<GR>> m5 = {{1, 0, 0}, {0, 26, -5}, {0, -5, 1}};
        CHECK(oracle::minors(m5) == std::vector<GR>{GR(1), GR(26), GR(1)});
    }
}

TEST_CASE("indefinite mu fails the Hermitian check") {
    SemiflatPair P(2);
    PolyMatrix mu = {{1, 0}, {0, -1}};
    SUStructure B = semiflat_iib(semiflat_omega(P, mu), P);
    CheckReport r = check_hermitian_at(B, {BasePoint{}});
    CHECK_FALSE(r.passed());
    REQUIRE(r.first_failure());
    CHECK(r.first_failure()->witness == std::optional<std::string>("minors: 1, -1"));
}

TEST_CASE("semiflat mu validation") {
    SemiflatPair P(2);
    Form bad = wedge(g(P.xcheck(), "dthetacheck_1"), g(P.xcheck(), "dr_2"));
    CHECK_THROWS_AS(semiflat_mu(bad, P), Error);  // not symmetric
    CHECK_THROWS_AS(semiflat_mu(i_times(semiflat_omega(P, {{1, 0}, {0, 1}})), P), Error);
    CHECK_THROWS_AS(semiflat_mu(wedge(g(P.xcheck(), "dr_1"), g(P.xcheck(), "dr_2")), P), Error);
}

TEST_CASE("structure checks catch failures") {
    SemiflatPair P(2);
    const FramePtr& X = P.x();
    Poly r2 = Poly::var("r_2");
    Form omega = P.symplectic().omega();
    SUStructure bad = SUStructure::factored(omega, {g(X, "dtheta_1") + i_times(g(X, "dr_1", r2)), g(X, "dtheta_2") + i_times(g(X, "dr_2"))});
    CheckReport r = check_iib(bad);
    CHECK_FALSE(r.passed());
    REQUIRE(r.first_failure());
    CHECK(r.first_failure()->id == "dOmega");
    CHECK(r.first_failure()->witness.has_value());

    SUStructure degenerate = SUStructure::factored(Form(X), {g(X, "dtheta_1") + i_times(g(X, "dr_1")), g(X, "dtheta_2") + i_times(g(X, "dr_2"))});
    CHECK_THROWS_AS(conformal_factor(degenerate), Error);
    CHECK_FALSE(check_su_structure(degenerate).passed());

    // ω = Im(dz1 ∧ dz2) here, pure (2,0) + (0,2)
    SUStructure wrong_type = SUStructure::factored(omega, {g(X, "dtheta_1") + i_times(g(X, "dtheta_2")), g(X, "dr_2") + i_times(g(X, "dr_1"))});
    CHECK(item(check_su_structure(wrong_type), "omega-type-11").status == Status::Fail);
    CHECK_THROWS_AS(check_iia(SUStructure::factored(omega, {g(X, "dtheta_1"), g(X, "dtheta_2")})), Error);
}

TEST_CASE("form ratio") {
    SemiflatPair P(1);
    Form a = g(P.x(), "dr_1", Poly(3));
    CHECK(form_ratio(a, g(P.x(), "dr_1")) == GR(3));
    CHECK_FALSE(form_ratio(a, g(P.x(), "dtheta_1")));
    CHECK_FALSE(form_ratio(a, Form(P.x())));
    CHECK_FALSE(form_ratio(g(P.x(), "dr_1", Poly::var("r_1")), g(P.x(), "dr_1")));
}

TEST_CASE("deformation classes") {
    SUBCASE("complex side, flat n = 3") {
        SemiflatPair P(3);
        SUStructure B = semiflat_iib(semiflat_omega(P, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}), P);
        const FramePtr& F = B.omega.frame();
        Form w1 = wedge(g(F, "dthetacheck_1"), g(F, "dr_1")), w2 = wedge(g(F, "dthetacheck_2"), g(F, "dr_2"));
        Form beta = w1 - w2;
        require_pass(check_deformation_class(B, wedge(B.omega, beta), Side::IIB));
        Form eta = Form::wedge_of(F, {"dthetacheck_1", "dthetacheck_2"}, Poly::var("r_1") * Poly::var("r_2"));
        CHECK(item(check_deformation_class(B, exterior_d(wedge(eta, g(F, "dr_2"))), Side::IIB), "d-delta").status ==
              Status::Pass);
        CheckReport notprim = check_deformation_class(B, wedge(B.omega, w1), Side::IIB);
        CHECK(item(notprim, "beta-primitive").status == Status::Fail);
        CheckReport notclosed = check_deformation_class(B, wedge(B.omega, w1 * Poly::var("r_2")), Side::IIB);
        CHECK(item(notclosed, "d-delta").status == Status::Fail);
    }
    SUBCASE("symplectic side, flat n = 2") {
        SemiflatPair P(2);
        SUStructure A = mirror_transform(semiflat_omega(P, {{1, 0}, {0, 1}}), P);
        const FramePtr& X = P.x();
        Form w1 = wedge(g(X, "dtheta_1"), g(X, "dr_1")), w2 = wedge(g(X, "dtheta_2"), g(X, "dr_2"));
        require_pass(check_deformation_class(A, w1 - w2, Side::IIA));
        CheckReport r = check_deformation_class(A, w1, Side::IIA);
        CHECK(item(r, "omega-wedge-delta").status == Status::Fail);
        CHECK(item(r, "omega-wedge-delta").witness.has_value());
        CHECK_THROWS_AS(check_deformation_class(A, g(X, "dr_1"), Side::IIA), Error);
    }
}

TEST_CASE("IIA on the transform iff IIB on the source, random mu") {
    CheckReport r = run_suite("su-biconditional", 40, 77);
    require_pass(r);
    CHECK(r.find("pairs-satisfying-both"));
    CHECK(r.find("pairs-failing-both"));
}

TEST_CASE("n = 3 real-part equivalence on random phase-0 structures") {
    CheckReport r = run_suite("re-omega", 20, 5);
    require_pass(r);
    CHECK(r.find("closed-cases"));
    CHECK(r.find("non-closed-cases"));
}
