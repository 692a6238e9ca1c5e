#include <doctest.h>

#include "oracles.hpp"
#include "syzkit/exterior.hpp"
#include "syzkit/fourier.hpp"
#include "syzkit/nilmanifold.hpp"
#include "syzkit/proptest.hpp"
#include "syzkit/sustruct.hpp"

using namespace syzkit;

namespace {

Form g(const FramePtr& f, const std::string& l, const Poly& c = Poly(1)) { return Form::generator(f, l, c); }

PolyMatrix iwasawa_mu() {
    Poly r1 = Poly::var("r_1");
    return {{1, 0, 0}, {0, Poly(1) + r1 * r1, -r1}, {0, -r1, 1}};
}

}  // namespace

TEST_CASE("wedge signs") {
    SemiflatPair P(2);
    const FramePtr& X = P.x();
    Form a = wedge(g(X, "dtheta_1"), g(X, "dr_1"));
    CHECK(oracle::labelled(a) == std::map<std::vector<std::string>, Poly>{{{"dtheta_1", "dr_1"}, Poly(1)}});
    CHECK(wedge(g(X, "dr_1"), g(X, "dtheta_1")) == -a);
    Form b = wedge(g(X, "dtheta_2"), g(X, "dr_2"));
    CHECK(wedge(a, b) == wedge(b, a));
    CHECK(oracle::labelled(wedge(a, b)).begin()->second == Poly(-1));  // dθ1 dθ2 dr1 dr2 order
    NilData nd(3);
    Form e12 = g(nd.iib_frame(), nd.e(1, 2));
    CHECK(wedge(e12, e12).is_zero());
}

TEST_CASE("koszul sign matches sorting by transpositions") {
    for (int t = 0; t < 300; ++t) {
        Rng rng(trial_seed(3, static_cast<std::uint64_t>(t)));
        std::uniform_int_distribution<int> bit(0, 2);
        Mask a = 0, b = 0;
        for (int i = 0; i < 12; ++i) {
            int w = bit(rng);
            if (w == 1) a |= Mask(1) << i;
            if (w == 2) b |= Mask(1) << i;
        }
        std::vector<int> cat;
        for (auto i : mask_indices(a)) cat.push_back(static_cast<int>(i));
        for (auto i : mask_indices(b)) cat.push_back(static_cast<int>(i));
        CHECK(koszul_sign(a, b) == oracle::bubble_sign(cat));
    }
}

TEST_CASE("wedge is associative and graded commutative") {
    SemiflatPair P(3);
    RandomShape s;
    for (int t = 0; t < 50; ++t) {
        Rng rng(trial_seed(17, static_cast<std::uint64_t>(t)));
        const int p = t % 4, q = (t / 4) % 3;
        Form a = random_form(rng, P.x(), p, s), b = random_form(rng, P.x(), q, s), c = random_form(rng, P.x(), -1, s);
        CHECK(wedge(wedge(a, b), c) == wedge(a, wedge(b, c)));
        CHECK(wedge(a, b) == wedge(b, a) * Poly((p * q) % 2 ? -1 : 1));
    }
}

TEST_CASE("terms are stored sorted without zero coefficients") {
    SemiflatPair P(2);
    Form a = g(P.x(), "dr_1") + g(P.x(), "dtheta_2") - g(P.x(), "dr_1");
    CHECK(a.size() == 1);
    Form b = Form::wedge_of(P.x(), {"dr_2", "dtheta_1"});
    CHECK(oracle::labelled(b) == std::map<std::vector<std::string>, Poly>{{{"dtheta_1", "dr_2"}, Poly(-1)}});
    Form mixed = Form::scalar(P.x(), Poly(1)) + b;
    CHECK(mixed.max_degree() == 2);
    CHECK_FALSE(mixed.homogeneous_degree());
    CHECK(mixed.component(2) == b);
    CHECK_THROWS_AS(a + Form(P.xcheck()), Error);
}

TEST_CASE("bidegree projection") {
    SemiflatPair P(2);
    const FramePtr& X = P.x();
    Form a = wedge(g(X, "dtheta_1"), g(X, "dr_1")) + wedge(g(X, "dtheta_1"), g(X, "dtheta_2"));
    CHECK(bidegree_project(a, GenClass::FiberX, 1, GenClass::Base, 1) == wedge(g(X, "dtheta_1"), g(X, "dr_1")));
    CHECK(bidegree_project(a, GenClass::FiberX, 2, GenClass::Base, 0) == wedge(g(X, "dtheta_1"), g(X, "dtheta_2")));
    CHECK(bidegree_project(a, GenClass::FiberX, 0, GenClass::Base, 2).is_zero());
}

TEST_CASE("the real part of the Iwasawa mirror Omega is its (3,0) plus (1,2) part") {
    SemiflatPair P(3);
    SUStructure A = mirror_transform(semiflat_omega(P, iwasawa_mu()), P);
    Form split = polarized_projection(A.Omega, GenClass::FiberX, 3, 0) + polarized_projection(A.Omega, GenClass::FiberX, 1, 2);
    CHECK(split == A.Omega.real_part());
    Form odd = polarized_projection(A.Omega, GenClass::FiberX, 2, 1) + polarized_projection(A.Omega, GenClass::FiberX, 0, 3);
    CHECK(odd == A.Omega.imag_part() * Poly(GR::i()));
}

TEST_CASE("nilpotent exponential") {
    SemiflatPair P(3);
    const FramePtr& C = P.corr();
    CHECK(exp_nilpotent(Form(C)) == Form::scalar(C, Poly(1)));
    SemiflatPair P2(2);
    const FramePtr& C2 = P2.corr();
    Form k1 = wedge(g(C2, "dthetacheck_1"), g(C2, "dtheta_1"));
    Form k2 = wedge(g(C2, "dthetacheck_2"), g(C2, "dtheta_2"));
    CHECK(exp_nilpotent(k1 + k2) == Form::scalar(C2, Poly(1)) + k1 + k2 + wedge(k1, k2));
    Form top = exp_nilpotent(P.half_curvature()).component(6);
    Form expected = Form::wedge_of(C, {"dthetacheck_1", "dthetacheck_2", "dthetacheck_3", "dtheta_1", "dtheta_2", "dtheta_3"},
                                   Poly(-1));
    CHECK(top == expected);
    CHECK_THROWS_AS(exp_nilpotent(g(C, "dr_1")), Error);
    CHECK_THROWS_AS(exp_nilpotent(Form::scalar(C, Poly(1))), Error);
}

TEST_CASE("fiber pushforward") {
    SemiflatPair P(1);
    Poly gr = Poly::var("r_1") * Poly::var("r_1") + Poly(2);
    Form a = wedge(g(P.xcheck(), "dthetacheck_1"), g(P.xcheck(), "dr_1")) * gr;
    CHECK(fiber_pushforward(a, GenClass::FiberMirror, P.x()) == g(P.x(), "dr_1") * gr);
    CHECK(fiber_pushforward(g(P.xcheck(), "dr_1") * gr, GenClass::FiberMirror, P.x()).is_zero());

    std::vector<Generator> gens = {{"dtheta_1", GenClass::FiberX, GenClass::FiberX, std::nullopt},
                                   {"dthetacheck_1", GenClass::FiberMirror, GenClass::FiberMirror, std::nullopt},
                                   {"dr_2", GenClass::Base, GenClass::Base, std::string("r_2")}};
    FramePtr F = FrameSpec::coordinate(gens, {"r_2"}, 1);
    FramePtr T = FrameSpec::coordinate({gens[0], gens[2]}, {"r_2"}, 1);
    Form b = Form::wedge_of(F, {"dtheta_1", "dthetacheck_1", "dr_2"});
    Form expected = wedge(Form::generator(T, "dtheta_1"), Form::generator(T, "dr_2")) * Poly(-1);
    CHECK(fiber_pushforward(b, GenClass::FiberMirror, T) == expected);
    // oracle: θ = 0, θ̌ = 1, r = 2 with the fiber moved to the front
    oracle::Ext o = oracle::Ext::gen(0).wedge(oracle::Ext::gen(1)).wedge(oracle::Ext::gen(2));
    CHECK(oracle::integrate(o, {1}).terms.at({0, 2}) == Poly(-1));
}

TEST_CASE("frame expansion and collection on the nilmanifold frames") {
    NilData nd(3);
    const SemiflatPair& P = nd.pair();
    Poly r12 = nd.r(1, 2);
    Form e13 = g(nd.iib_frame(), nd.e(1, 3));
    CHECK(frame_expand(e13) == g(P.x(), "dr_13") - g(P.x(), "dr_23", r12));
    CHECK(frame_collect(g(P.x(), "dr_13"), nd.iib_frame()) == e13 + g(nd.iib_frame(), nd.e(2, 3), r12));
    CHECK(frame_expand(frame_collect(g(P.x(), "dr_13"), nd.iib_frame())) == g(P.x(), "dr_13"));
    Form fc23 = g(nd.iia_frame(), nd.fcheck(2, 3));
    CHECK(frame_expand(fc23) == g(P.xcheck(), "dthetacheck_23") + g(P.xcheck(), "dthetacheck_13", r12));
    CHECK(nd.iib_frame()->labels() ==
          std::vector<std::string>{"f_12", "f_13", "f_23", "e_12", "e_13", "e_23"});
    for (int t = 0; t < 20; ++t) {
        Rng rng(trial_seed(23, static_cast<std::uint64_t>(t)));
        RandomShape s;
        Form a = random_form(rng, nd.iib_frame(), -1, s);
        CHECK(convert(expand_to_root(a), nd.iib_frame()) == a);
    }
}

TEST_CASE("interior product") {
    SemiflatPair P(2);
    const FramePtr& X = P.x();
    Form a = wedge(g(X, "dtheta_1"), g(X, "dr_1"));
    CHECK(contract(a, "dtheta_1") == g(X, "dr_1"));
    CHECK(contract(g(X, "dr_2"), "dtheta_1").is_zero());
    CHECK(contract(contract(a, "dtheta_1"), "dr_1") == Form::scalar(X, Poly(1)));
    CHECK(contract(a, "dr_1") == -g(X, "dtheta_1"));
}

TEST_CASE("generator substitution and relabeling") {
    SemiflatPair P(2);
    Form a = wedge(g(P.x(), "dtheta_1"), g(P.x(), "dr_2")) * Poly::var("r_1");
    Form moved = relabel(a, P.xcheck(), {{"dtheta_1", "dthetacheck_1"}, {"dtheta_2", "dthetacheck_2"}});
    CHECK(moved == wedge(g(P.xcheck(), "dthetacheck_1"), g(P.xcheck(), "dr_2")) * Poly::var("r_1"));
    CHECK_THROWS_AS(relabel(a, P.xcheck()), Error);
}
