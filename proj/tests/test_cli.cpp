#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>

#include "syzkit/cli.hpp"
#include "syzkit/nilmanifold.hpp"

using namespace syzkit;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "syzkit");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    fs::path p = fs::temp_directory_path() / ("syzkit_cli_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
}

void write(const fs::path& p, const std::string& text) {
    std::ofstream f(p, std::ios::binary);
    f << text;
}

}  // namespace

TEST_CASE("nil writes fixtures that verify") {
    fs::path dir = scratch("nil");
    Run r = run({"nil", "--K", "3", "--out", dir.string()});
    CHECK(r.code == 0);
    CHECK(r.out.find("PASS") != std::string::npos);
    for (const char* f : {"iib.json", "iia.json", "report.json"}) CHECK(fs::exists(dir / f));
    json rep = json::parse(slurp(dir / "report.json"));
    CHECK(rep["command"] == "nil");
    CHECK(rep["passed"] == true);

    Run b = run({"verify", "--system", "iib", "--input", (dir / "iib.json").string()});
    CHECK(b.code == 0);
    Run a = run({"verify", "--system", "iia", "--input", (dir / "iia.json").string()});
    CHECK(a.code == 0);
    // the complex side is not symplectic
    Run wrong = run({"verify", "--system", "iia", "--input", (dir / "iib.json").string()});
    CHECK(wrong.code != 0);
}

TEST_CASE("fm forward and back") {
    fs::path dir = scratch("fm");
    SemiflatPair P(3);
    write(dir / "one.json", dump(fixture("form", form_to_json(Form::scalar(P.xcheck(), Poly(1))))));
    Run r = run({"fm", "--input", (dir / "one.json").string(), "--direction", "fwd", "--out", (dir / "t.json").string(),
                 "--report", (dir / "rep.json").string()});
    CHECK(r.code == 0);
    Form t = form_from_json(json::parse(slurp(dir / "t.json")));
    CHECK(convert(t, P.x()) == -Form::wedge_of(P.x(), {"dtheta_1", "dtheta_2", "dtheta_3"}));
    Run back = run({"fm", "--input", (dir / "t.json").string(), "--direction", "back"});
    CHECK(back.code == 0);
    Form b = form_from_json(json::parse(back.out));
    CHECK(convert(b, P.complex_frame()) == Form::scalar(P.complex_frame(), Poly(-1)));

    Run mismatch = run({"fm", "--input", (dir / "one.json").string(), "--direction", "fwd", "--n", "2"});
    CHECK(mismatch.code == 2);
    Run wrongdir = run({"fm", "--input", (dir / "one.json").string(), "--direction", "back"});
    CHECK(wrongdir.code == 2);
}

TEST_CASE("fm rejects fiber-dependent coefficients") {
    fs::path dir = scratch("fmfiber");
    json j = {{"frame", {"dthetacheck_1", "dr_1"}},
              {"terms", json::array({{{"gens", {"dr_1"}}, {"coeff", {{"vars", {"theta_1"}}, {"terms", json::array({{{"exp", {1}}, {"re", {1, 1}}, {"im", {0, 1}}}})}}}}})}};
    write(dir / "f.json", j.dump());
    Run r = run({"fm", "--input", (dir / "f.json").string(), "--direction", "fwd"});
    CHECK(r.code == 2);
    CHECK(r.err.find("theta_1") != std::string::npos);
}

TEST_CASE("input errors exit with 2") {
    CHECK(run({}).code == 2);
    CHECK(run({"nil", "--K", "1", "--out", "x"}).code == 2);
    CHECK(run({"verify", "--system", "iib", "--input", "/nonexistent.json"}).code == 2);
    fs::path dir = scratch("bad");
    write(dir / "bad.json", "{ not json");
    CHECK(run({"verify", "--system", "iib", "--input", (dir / "bad.json").string()}).code == 2);
    CHECK(run({"cohomology", "--flat", "2", "--K", "3"}).code == 2);
    CHECK(run({"cohomology", "--flat", "2", "--which", "bc", "--side", "x"}).code == 2);
    CHECK(run({"proptest", "--suite", "nope"}).code == 2);
}

TEST_CASE("caps come from the environment") {
    setenv("SYZKIT_MAX_K", "3", 1);
    CHECK(cli::Limits::from_env().max_K == 3);
    CHECK(run({"nil", "--K", "4", "--out", scratch("cap").string()}).code == 2);
    setenv("SYZKIT_MAX_K", "abc", 1);
    CHECK_THROWS_AS(cli::Limits::from_env(), Error);
    unsetenv("SYZKIT_MAX_K");
    CHECK(cli::Limits::from_env().max_K == 5);
}

TEST_CASE("cohomology command") {
    Run r = run({"cohomology", "--flat", "2", "--which", "bc"});
    CHECK(r.code == 0);
    CHECK(r.out.find("binomial[1,1]") != std::string::npos);
    cli::CohomologyOptions o;
    o.K = 4;
    o.which = "ty";
    o.side = "x";
    o.frame = "recursive";
    o.p = 1;
    o.q = 1;
    cli::Outcome out = cli::cmd_cohomology(o);
    CHECK_FALSE(out.checks.passed());
    REQUIRE(out.checks.first_failure());
    CHECK(out.checks.first_failure()->id == "span-closure");
}

TEST_CASE("reports are byte-identical across reruns") {
    fs::path dir = scratch("det");
    for (const char* name : {"a.json", "b.json"})
        CHECK(run({"proptest", "--suite", "leg-counts", "--trials", "10", "--seed", "4", "--report", (dir / name).string()}).code == 0);
    CHECK(slurp(dir / "a.json") == slurp(dir / "b.json"));
    CHECK_FALSE(slurp(dir / "a.json").empty());
}

TEST_CASE("the installed executable") {
    const char* exe = SYZKIT_EXE;
    fs::path dir = scratch("exe");
    std::string cmd = std::string("\"") + exe + "\" proptest --suite ring-axioms --trials 5 > \"" + (dir / "o.txt").string() + "\"";
    CHECK(std::system(cmd.c_str()) == 0);
    CHECK(slurp(dir / "o.txt").find("PASS") != std::string::npos);
    std::string bad = std::string("\"") + exe + "\" nil --K 1 --out x > /dev/null 2>&1";
    int status = std::system(bad.c_str());
    CHECK(WEXITSTATUS(status) == 2);
}
