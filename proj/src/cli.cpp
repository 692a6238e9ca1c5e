#include "syzkit/cli.hpp"

#include <algorithm>
#include <chrono>
#include <climits>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "syzkit/cohomology.hpp"
#include "syzkit/nilmanifold.hpp"
#include "syzkit/proptest.hpp"

namespace syzkit::cli {

namespace {

int env_int(const char* name, int fallback) {
    const char* v = std::getenv(name);
    if (!v || !*v) return fallback;
    try {
        std::size_t used = 0;
        int x = std::stoi(v, &used);
        if (used != std::string(v).size() || x < 0) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw Error(std::string(name) + " must be a non-negative integer");
    }
}

json make_report(const std::string& command, json config, const CheckReport& checks, json results = json::object()) {
    json out;
    out["command"] = command;
    out["config"] = std::move(config);
    json c = check_report_to_json(checks);
    for (auto it = c.begin(); it != c.end(); ++it) out[it.key()] = it.value();
    out["results"] = std::move(results);
    return out;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot write " + path.string());
    f << content;
    if (!f) throw Error("write failed for " + path.string());
}

json read_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("cannot read " + path);
    try {
        return json::parse(f);
    } catch (const json::parse_error& e) {
        throw Error("malformed JSON in " + path + ": " + e.what());
    }
}

std::string bidegree(int p, int q) { return "[" + std::to_string(p) + "," + std::to_string(q) + "]"; }

long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long b = 1;
    for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
    return b;
}

}  // namespace

Limits Limits::from_env() { return {env_int("SYZKIT_MAX_K", 5), env_int("SYZKIT_MAX_D", 4)}; }

Outcome cmd_nil(int K, const std::filesystem::path& out, const Limits& limits) {
    if (K < 2) throw Error("K must be at least 2");
    if (K > limits.max_K) throw Error("K = " + std::to_string(K) + " exceeds the cap " + std::to_string(limits.max_K) + " (SYZKIT_MAX_K)");
    NilData nd(K);
    CheckReport r = nil_campaign(nd);
    SUStructure iib = build_iib_side(nd);
    SUStructure iia = build_iia_side(nd);

    std::error_code ec;
    std::filesystem::create_directories(out, ec);
    if (ec) throw Error("cannot create " + out.string() + ": " + ec.message());
    write_file(out / "iib.json", dump(fixture("su-structure", su_to_json(iib))));
    write_file(out / "iia.json", dump(fixture("su-structure", su_to_json(iia))));

    json config;
    config["K"] = K;
    config["n"] = nd.n();
    json results;
    results["fixtures"] = json::array({"iib.json", "iia.json"});
    Outcome o{r, make_report("nil", config, r, results)};
    write_file(out / "report.json", dump(o.report));
    return o;
}

FmOutcome cmd_fm(const json& input, bool forward, std::optional<int> n) {
    Form a = form_from_json(fixture_data(input, "form"));
    const FramePtr& frame = a.frame();
    if (n && frame->n() != *n) throw Error("--n " + std::to_string(*n) + " does not match the input frame (n = " + std::to_string(frame->n()) + ")");
    for (const auto& [m, c] : a.terms())
        for (const auto& v : c.used_vars())
            if (std::find(frame->base_vars().begin(), frame->base_vars().end(), v) == frame->base_vars().end())
                throw Error("coefficient depends on '" + v + "'; only torus-invariant forms (functions of the base variables) can be transformed");

    std::vector<std::string> ordered;
    for (const auto& g : frame->generators())
        if (g.leg == GenClass::Base && g.label.rfind("dr_", 0) == 0) ordered.push_back(g.label.substr(3));
        else if (g.label.rfind("dzbar_", 0) == 0) ordered.push_back(g.label.substr(6));
    SemiflatPair pair(ordered);

    const bool on_x = frame->root()->equivalent(*pair.x());
    const bool on_xcheck = frame->root()->equivalent(*pair.xcheck());
    if (forward && !on_xcheck) throw Error("fwd expects a form on the dthetacheck/dr or dz/dzbar frame");
    if (!forward && !on_x) throw Error("back expects a form on the dtheta/dr frame");

    const int dim = pair.n();
    const Poly sign(((dim * (dim - 1)) / 2) % 2 ? -1 : 1);
    CheckReport r;
    Form out = forward ? fm_forward(a, pair) : fm_backward(a, pair);
    if (forward) {
        r.add("leg-counts", check_leg_counts(a, pair), "FT of a (p,q) term has n-p fiber legs and q base legs");
        Form back = fm_backward(out, pair);
        r.add("round-trip", back == convert(a, pair.complex_frame()) * sign, "FT twice is (-1)^{n(n-1)/2}", back.str());
    } else {
        r.add("leg-counts", check_leg_counts(out, pair), "FT of the result has the input leg counts");
        Form again = fm_forward(out, pair);
        r.add("round-trip", again == a * sign, "FT twice is (-1)^{n(n-1)/2}", again.str());
    }
    json config;
    config["direction"] = forward ? "fwd" : "back";
    config["n"] = dim;
    json results;
    results["input"] = form_to_json(a);
    results["output"] = form_to_json(out);
    return {Outcome{r, make_report("fm", config, r, results)}, out};
}

Outcome cmd_verify(const std::string& system, const json& input) {
    if (system != "iia" && system != "iib") throw Error("--system must be iia or iib");
    SUStructure s = su_from_json(fixture_data(input, "su-structure"));
    CheckReport r;
    r.append(check_su_structure(s), "su/");
    if (system == "iib") {
        r.append(check_iib(s), "iib/");
        try {
            FluxCurrent rho = flux_iib(s);
            r.info("iib/flux", "rho_B = 2i del delbar(F^-1 omega)", rho.form.str());
        } catch (const Error& e) {
            r.info("iib/flux", std::string("not computed: ") + e.what());
        }
    } else {
        if (!s.polarization) throw Error("an IIA structure needs a polarization");
        r.append(check_iia(s), "iia/");
        try {
            FluxCurrent rho = flux_iia(s);
            r.info("iia/flux", "rho_A = -i d d^Lambda(F (pi^{n-1,1} + pi^{0,n}) Omega)", rho.form.str());
        } catch (const Error& e) {
            r.info("iia/flux", std::string("not computed: ") + e.what());
        }
    }
    json config;
    config["system"] = system;
    config["n"] = s.n;
    return {r, make_report("verify", config, r)};
}

Outcome cmd_cohomology(const CohomologyOptions& opt, const Limits& limits) {
    if (opt.K.has_value() == opt.flat.has_value()) throw Error("give exactly one of --K and --flat");
    if (opt.K && (*opt.K < 2 || *opt.K > limits.max_K))
        throw Error("--K must be in 2.." + std::to_string(limits.max_K) + " (SYZKIT_MAX_K)");
    if (opt.flat && *opt.flat < 1) throw Error("--flat must be positive");
    if (opt.degree < 0 || opt.degree > limits.max_D)
        throw Error("--degree must be in 0.." + std::to_string(limits.max_D) + " (SYZKIT_MAX_D)");
    if (opt.side != "x" && opt.side != "xcheck") throw Error("--side must be x or xcheck");
    if (opt.which != "bc" && opt.which != "ty" && opt.which != "mirror") throw Error("--which must be bc, ty or mirror");
    if (opt.which == "bc" && opt.side != "xcheck") throw Error("Bott-Chern cohomology lives on --side xcheck");
    if (opt.which == "ty" && opt.side != "x") throw Error("Tseng-Yau cohomology lives on --side x");
    if (opt.frame != "coordinate" && opt.frame != "nil" && opt.frame != "recursive")
        throw Error("--frame must be coordinate, nil or recursive");
    if (!opt.K && (opt.invariant || opt.frame != "coordinate")) throw Error("--invariant and --frame need --K");
    if (opt.frame == "recursive" && opt.which != "ty") throw Error("--frame recursive is a symplectic-side frame; use --which ty");
    if (opt.p.has_value() != opt.q.has_value()) throw Error("give both --p and --q or neither");

    std::optional<NilData> nd;
    if (opt.K) nd.emplace(*opt.K);
    const SemiflatPair pair = nd ? nd->pair() : SemiflatPair(*opt.flat);
    const int n = pair.n();
    if (opt.p && (*opt.p < 0 || *opt.p > n || *opt.q < 0 || *opt.q > n))
        throw Error("bidegree out of range 0.." + std::to_string(n));
    std::optional<GammaAction> inv;
    if (opt.invariant) inv = GammaAction{&*nd, FiberLabels::Mirror};

    json config;
    if (opt.K) config["K"] = *opt.K;
    else config["flat"] = *opt.flat;
    config["n"] = n;
    config["side"] = opt.side;
    config["which"] = opt.which;
    config["D"] = opt.degree;
    config["invariant"] = opt.invariant;
    config["frame"] = opt.frame;
    if (opt.p) config["bidegree"] = json::array({*opt.p, *opt.q});

    auto complex_side = [&] {
        if (opt.frame == "nil")
            return FiniteComplex(nd->mirror_holomorphic_frame(), opt.degree, GenClass::FiberMirror, true, std::nullopt, inv);
        return FiniteComplex::complex_side(pair, opt.degree, inv);
    };
    auto symplectic_side = [&] {
        if (opt.frame == "nil")
            return FiniteComplex(nd->mirror_symplectic_frame(), opt.degree, GenClass::FiberX, false, pair.symplectic(), inv);
        if (opt.frame == "recursive")
            return FiniteComplex(nd->recursive_symplectic_frame(), opt.degree, GenClass::FiberX, false, pair.symplectic(), inv);
        return FiniteComplex::symplectic_side(pair, opt.degree, inv);
    };

    std::vector<std::pair<int, int>> degrees;
    if (opt.p) degrees.emplace_back(*opt.p, *opt.q);
    else
        for (int p = 0; p <= n; ++p)
            for (int q = 0; q <= n; ++q) degrees.emplace_back(p, q);

    CheckReport r;
    json results = json::array();
    const bool flat_constants = opt.flat && opt.degree == 0;
    try {
        if (opt.which == "mirror") {
            FiniteComplex cx = complex_side();
            FiniteComplex sx = symplectic_side();
            for (auto [p, q] : degrees) {
                MirrorComparison m = mirror_compare(sx, cx, pair, p, q);
                r.append(m.checks, "mirror" + bidegree(p, q) + "/");
                if (flat_constants)
                    r.add("binomial" + bidegree(p, q), static_cast<long>(m.bott_chern.dim) == binomial(n, p) * binomial(n, q),
                          "C(n,p) C(n,q)", std::to_string(m.bott_chern.dim));
                json entry;
                entry["bott_chern"] = cohomology_to_json(m.bott_chern);
                entry["tseng_yau"] = cohomology_to_json(m.tseng_yau);
                results.push_back(std::move(entry));
            }
        } else {
            FiniteComplex c = opt.which == "bc" ? complex_side() : symplectic_side();
            for (auto [p, q] : degrees) {
                CohomologyReport h = opt.which == "bc" ? bott_chern(c, p, q) : tseng_yau(c, p, q);
                r.info(opt.which + bidegree(p, q), "dimension", std::to_string(h.dim));
                if (flat_constants)
                    r.add("binomial" + bidegree(p, q), static_cast<long>(h.dim) == binomial(n, p) * binomial(n, q),
                          "C(n,p) C(n,q)", std::to_string(h.dim));
                results.push_back(cohomology_to_json(h));
            }
        }
    } catch (const SpanEscape& e) {
        r.add("span-closure", false, e.what(), e.witness);
    }
    return {r, make_report("cohomology", config, r, results)};
}

Outcome cmd_proptest(const std::string& suite, int trials, std::uint64_t seed) {
    CheckReport r;
    if (suite == "all") {
        for (const auto& s : proptest_suites()) r.append(run_suite(s.name, trials, seed), s.name + "/");
    } else {
        r = run_suite(suite, trials, seed);
    }
    json config;
    config["suite"] = suite;
    config["trials"] = trials;
    config["seed"] = seed;
    return {r, make_report("proptest", config, r)};
}

namespace {

int finish(const std::string& title, const Outcome& o, const std::optional<std::string>& report_path, double seconds,
           std::ostream& out) {
    if (report_path) write_file(*report_path, dump(o.report));
    std::size_t required = 0;
    for (const auto& it : o.checks.items()) {
        if (it.required) ++required;
        std::string tag = !it.required ? "info" : it.status == Status::Pass ? "pass" : to_string(it.status);
        out << "  " << tag << "  " << it.id;
        if (!it.detail.empty()) out << "  " << it.detail;
        if (it.witness && (!it.required || it.status != Status::Pass)) {
            std::string w = *it.witness;
            if (w.size() > 200) w = w.substr(0, 200) + "...";
            out << "  [" << w << "]";
        }
        out << "\n";
    }
    std::ostringstream t;
    t.precision(3);
    t << std::fixed << seconds;
    const CheckItem* bad = o.checks.first_failure();
    out << title << ": " << required << " checks, " << (bad ? "FAIL " + bad->id : std::string("PASS")) << " (" << t.str()
        << " s)\n";
    return bad ? 1 : 0;
}

double elapsed(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact exterior calculus and mirror checks for semi-flat SU(n) systems", "syzkit"};
    app.require_subcommand(1);

    std::optional<std::string> report;
    auto add_report = [&](CLI::App* sub) { sub->add_option("--report", report, "Write the full JSON report here"); };

    int K = 0;
    std::string out_dir;
    auto* nil = app.add_subcommand("nil", "Build the nilmanifold pair of size K, check it and write fixtures");
    nil->add_option("--K", K, "Matrix size (K >= 2)")->required()->check(CLI::Range(2, INT_MAX));
    nil->add_option("--out", out_dir, "Output directory")->required();

    std::string input, direction, output;
    std::optional<int> fm_n;
    auto* fm = app.add_subcommand("fm", "Fourier-Mukai transform of a form");
    fm->add_option("--input", input, "Form JSON")->required();
    fm->add_option("--direction", direction, "fwd (X-check to X) or back")->required()->check(CLI::IsMember({"fwd", "back"}));
    fm->add_option("--n", fm_n, "Fiber rank; must match the input");
    fm->add_option("--out", output, "Write the transformed form here instead of standard output");
    add_report(fm);

    std::string system;
    auto* verify = app.add_subcommand("verify", "Check an SU(n) structure against the IIA or IIB system");
    verify->add_option("--system", system, "iia or iib")->required()->check(CLI::IsMember({"iia", "iib"}));
    verify->add_option("--input", input, "SU structure JSON")->required();
    add_report(verify);

    CohomologyOptions co;
    auto* coh = app.add_subcommand("cohomology", "Bott-Chern, Tseng-Yau and mirror comparison on degree-filtered forms");
    coh->add_option("--K", co.K, "Nilmanifold size");
    coh->add_option("--flat", co.flat, "Flat pair of rank n");
    coh->add_option("--side", co.side, "x or xcheck")->check(CLI::IsMember({"x", "xcheck"}));
    coh->add_option("--which", co.which, "bc, ty or mirror")->check(CLI::IsMember({"bc", "ty", "mirror"}));
    coh->add_option("--p", co.p, "First bidegree index");
    coh->add_option("--q", co.q, "Second bidegree index");
    coh->add_option("--degree", co.degree, "Coefficient degree bound D")->check(CLI::NonNegativeNumber);
    coh->add_flag("--invariant", co.invariant, "Restrict to lattice-invariant forms");
    coh->add_option("--frame", co.frame, "coordinate, nil or recursive")->check(CLI::IsMember({"coordinate", "nil", "recursive"}));
    add_report(coh);

    std::string suite;
    int trials = 100;
    std::uint64_t seed = 0;
    auto* prop = app.add_subcommand("proptest", "Randomized property suites");
    std::vector<std::string> names{"all"};
    for (const auto& s : proptest_suites()) names.push_back(s.name);
    prop->add_option("--suite", suite, "Suite name or all")->required()->check(CLI::IsMember(names));
    prop->add_option("--trials", trials, "Trials per suite")->check(CLI::PositiveNumber);
    prop->add_option("--seed", seed, "Seed");
    add_report(prop);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    const auto t0 = std::chrono::steady_clock::now();
    try {
        const Limits limits = Limits::from_env();
        if (*nil) {
            Outcome o = cmd_nil(K, out_dir, limits);
            return finish("nil K=" + std::to_string(K), o, report, elapsed(t0), out);
        }
        if (*fm) {
            FmOutcome o = cmd_fm(read_json_file(input), direction == "fwd", fm_n);
            std::string text = dump(form_to_json(o.form));
            if (output.empty()) {
                out << text;
                return finish("fm " + direction, o.outcome, report, elapsed(t0), err);
            }
            write_file(output, text);
            return finish("fm " + direction, o.outcome, report, elapsed(t0), out);
        }
        if (*verify) {
            Outcome o = cmd_verify(system, read_json_file(input));
            return finish("verify " + system, o, report, elapsed(t0), out);
        }
        if (*coh) {
            Outcome o = cmd_cohomology(co, limits);
            return finish("cohomology " + co.which, o, report, elapsed(t0), out);
        }
        if (*prop) {
            Outcome o = cmd_proptest(suite, trials, seed);
            return finish("proptest " + suite, o, report, elapsed(t0), out);
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace syzkit::cli
