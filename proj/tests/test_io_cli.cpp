// Document serialization (rur-doc/1) and end-to-end command line checks.
// The CLI is exercised as a subprocess through RURSOLVE_PATH; fixture
// systems come from SYSTEMS_DIR.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

#include "rur/errors.hpp"
#include "rur/io.hpp"

using namespace rur;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path scratch_dir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "rursolve_cli_tests";
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream os(p, std::ios::binary);
    REQUIRE(os.good());
    os << text;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Run {
    int code = -1;
    std::string output;  // stdout and stderr interleaved
};

Run run_cli(const std::string& args) {
    std::string cmd = std::string(RURSOLVE_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    Run r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.output.append(buf, n);
    int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string sys_path(const std::string& name) { return std::string(SYSTEMS_DIR) + "/" + name; }

UPoly<Rat> qp(const std::vector<std::string>& cs) {
    std::vector<Rat> v;
    v.reserve(cs.size());
    for (const auto& s : cs) v.emplace_back(s);
    return UPoly<Rat>(std::move(v));
}

// Four points (±1, ±1) with t = x + 2y: roots {±1, ±3}.
RurDocument corners_doc() {
    RurDocument d;
    d.variables = {"x", "y"};
    d.form = {1, 2};
    d.dimension = 4;
    d.delta = 4;
    d.first = {"9", "0", "-10", "0", "1"};
    d.f0 = {"0", "-5", "0", "1"};
    d.coords = {{"3", "0", "1"}, {"-6", "0", "2"}};
    return d;
}

std::string doc_error(const std::string& text) {
    try {
        document_from_json(text);
    } catch (const ParseError& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST_CASE("json document round trip preserves every field") {
    RurDocument doc = corners_doc();
    std::string text = to_json(doc);
    CHECK(text.back() == '\n');
    CHECK(document_from_json(text) == doc);

    json j = json::parse(text);
    CHECK(j["schema"] == "rur-doc/1");
    CHECK(j["field"]["type"] == "QQ");
    CHECK(!j["field"].contains("prime"));
    CHECK(j["kind"] == "radical");
    CHECK(j["variables"] == json::array({"x", "y"}));
    CHECK(j["form"] == json::array({1, 2}));
    CHECK(j["dimension"] == 4);
    CHECK(j["delta"] == 4);
    CHECK(j["first"] == json::array({"9", "0", "-10", "0", "1"}));
    CHECK(j["f0"] == json::array({"0", "-5", "0", "1"}));
    CHECK(j["coords"][1] == json::array({"-6", "0", "2"}));

    RurDocument ff = corners_doc();
    ff.field.prime = 65521;
    ff.full = true;
    ff.first = {"9", "0", "65511", "0", "1"};
    ff.f0 = {"0", "65516", "0", "1"};
    ff.coords = {{"3", "0", "1"}, {"65515", "0", "2"}};
    std::string fftext = to_json(ff);
    json fj = json::parse(fftext);
    CHECK(fj["field"]["type"] == "FF");
    CHECK(fj["field"]["prime"] == "65521");
    CHECK(fj["kind"] == "full");
    CHECK(document_from_json(fftext) == ff);
}

TEST_CASE("make_document snapshots a rational parametrization") {
    ReducedRUR<Rat> r;
    r.first = qp({"9", "0", "-10", "0", "1"});
    r.f0 = qp({"0", "-5", "0", "1"});
    r.coords = {qp({"3", "0", "1"}), qp({"-6", "0", "2"})};
    r.form = {1, 2};
    r.delta = 4;
    r.bigD = 4;
    CHECK(make_document(r, {"x", "y"}) == corners_doc());

    r.coords[0] = qp({"1/2"});
    RurDocument d = make_document(r, {"x", "y"});
    CHECK(d.coords[0] == std::vector<std::string>{"1/2"});
}

TEST_CASE("make_document infers the prime-field modulus") {
    PrimeModulus p(101);
    ReducedRUR<Fp> r;
    r.first = UPoly<Fp>({Fp(100, p), Fp(1, p)});  // T - 1
    r.f0 = UPoly<Fp>::constant(Fp(1, p));
    r.coords = {UPoly<Fp>::constant(Fp(7, p))};
    r.form = {1};
    r.delta = 1;
    r.bigD = 1;
    RurDocument d = make_document(r, {"x"});
    CHECK(d.field.prime == 101);
    CHECK(d.first == std::vector<std::string>{"100", "1"});
    CHECK(d.coords[0] == std::vector<std::string>{"7"});

    r.first = UPoly<Fp>();  // falls back to f0 for the modulus
    CHECK(make_document(r, {"x"}).field.prime == 101);

    r.f0 = UPoly<Fp>();
    CHECK_THROWS_AS(make_document(r, {"x"}), InternalInvariantViolation);
}

TEST_CASE("document validation rejects malformed input") {
    CHECK(doc_error("{").find("invalid JSON") != std::string::npos);

    json good = json::parse(to_json(corners_doc()));

    json j = good;
    j["schema"] = "rur-doc/2";
    CHECK(doc_error(j.dump()).find("unsupported schema") != std::string::npos);

    j = good;
    j["field"]["type"] = "GF";
    CHECK(doc_error(j.dump()).find("unknown field type") != std::string::npos);

    j = good;
    j["kind"] = "maximal";
    CHECK(doc_error(j.dump()).find("unknown kind") != std::string::npos);

    j = good;
    j.erase("first");
    CHECK(doc_error(j.dump()).find("missing or mistyped") != std::string::npos);

    j = good;
    j["dimension"] = "four";
    CHECK(doc_error(j.dump()).find("missing or mistyped") != std::string::npos);

    j = good;
    j["coords"] = json::array({json::array({"1"})});
    CHECK(doc_error(j.dump()).find("one coordinate list per variable") != std::string::npos);

    j = good;
    j["form"] = json::array({1});
    CHECK(doc_error(j.dump()).find("form arity") != std::string::npos);
}

TEST_CASE("text rendering is readable and exact") {
    std::string expected =
        "rur-doc/1 (radical) over QQ\n"
        "variables: x y\n"
        "separating form: t = x + 2*y\n"
        "D = 4, delta = 4\n"
        "f(T) = T^4 - 10*T^2 + 9\n"
        "f0(T) = T^3 - 5*T\n"
        "x = (T^2 + 3) / f0\n"
        "y = (2*T^2 - 6) / f0\n";
    CHECK(to_text(corners_doc()) == expected);

    RurDocument d = corners_doc();
    d.field.prime = 65521;
    d.full = true;
    d.form = {2, -1};
    d.first = {"2", "-1"};
    d.f0 = {"0"};
    d.coords = {{}, {"-1", "1"}};
    std::string text = to_text(d);
    CHECK(text.find("rur-doc/1 (full) over FF 65521\n") != std::string::npos);
    CHECK(text.find("separating form: t = 2*x - y\n") != std::string::npos);
    CHECK(text.find("f(T) = -T + 2\n") != std::string::npos);
    CHECK(text.find("f0(T) = 0\n") != std::string::npos);
    CHECK(text.find("x = (0) / f0\n") != std::string::npos);
    CHECK(text.find("y = (T - 1) / f0\n") != std::string::npos);

    d.form = {0, 0};
    CHECK(to_text(d).find("separating form: t = 0\n") != std::string::npos);
    d.form = {-1, -3};
    CHECK(to_text(d).find("separating form: t = -x - 3*y\n") != std::string::npos);
}

TEST_CASE("documents rebuild the parametrization they describe") {
    RurDocument doc = corners_doc();
    ReducedRUR<Rat> r = rational_rur_of(doc);
    CHECK(r.first == qp({"9", "0", "-10", "0", "1"}));
    CHECK(r.f0 == qp({"0", "-5", "0", "1"}));
    CHECK(r.coords.size() == 2);
    CHECK(r.coords[1] == qp({"-6", "0", "2"}));
    CHECK(r.form == LinearForm{1, 2});
    CHECK(r.delta == 4);
    CHECK(r.bigD == 4);
    CHECK(!r.full);

    RurDocument ff = corners_doc();
    ff.field.prime = 101;
    ff.first = {"102", "-1"};  // reduces to 1 - T mod 101
    ff.f0 = {"1"};
    ff.coords = {{"1"}, {"0"}};
    ReducedRUR<Fp> s = prime_rur_of(ff);
    CHECK(s.first.coeffs()[0].value() == 1);
    CHECK(s.first.coeffs()[1].value() == 100);
    CHECK(s.bigD == 4);

    CHECK_THROWS_AS(rational_rur_of(ff), ParseError);
    CHECK_THROWS_AS(prime_rur_of(doc), ParseError);

    RurDocument bad = corners_doc();
    bad.coords[0][0] = "third";
    CHECK_THROWS_AS(rational_rur_of(bad), ParseError);
    RurDocument badff = ff;
    badff.first = {"abc"};
    CHECK_THROWS_AS(prime_rur_of(badff), ParseError);
}

TEST_CASE("cli solves a prime-field system to json") {
    Run r = run_cli("solve " + sys_path("squares11.sys") + " --prime 65521 --format json");
    REQUIRE(r.code == 0);
    json j = json::parse(r.output);
    CHECK(j["schema"] == "rur-doc/1");
    CHECK(j["tool"] == "rursolve 0.1.0");
    CHECK(j["field"]["type"] == "FF");
    CHECK(j["field"]["prime"] == "65521");
    CHECK(j["kind"] == "radical");
    CHECK(j["variables"] == json::array({"x", "y"}));
    CHECK(j["dimension"] == 4);
    CHECK(j["delta"] == 4);
    CHECK(j["form"] == json::array({2, -1}));
    CHECK(j["first"] == json::array({"9", "0", "65511", "0", "1"}));
    CHECK(j["f0"] == json::array({"0", "65516", "0", "1"}));
    CHECK(j["coords"][0] == json::array({"65515", "0", "2"}));
    CHECK(j["coords"][1] == json::array({"65518", "0", "65520"}));
}

TEST_CASE("cli solves over the rationals and writes the output file") {
    fs::path out = scratch_dir() / "corners_qq.json";
    Run r = run_cli("solve " + sys_path("squares11.sys") + " --qq --verify --format json --out " +
                    out.string());
    REQUIRE(r.code == 0);
    CHECK(r.output.empty());
    json j = json::parse(slurp(out));
    CHECK(j["field"]["type"] == "QQ");
    CHECK(j["kind"] == "radical");
    CHECK(j["dimension"] == 4);
    CHECK(j["delta"] == 4);
    CHECK(j["form"] == json::array({2, -1}));
    CHECK(j["first"] == json::array({"9", "0", "-10", "0", "1"}));
    CHECK(j["f0"] == json::array({"0", "-5", "0", "1"}));
    CHECK(j["coords"][0] == json::array({"-6", "0", "2"}));
    CHECK(j["coords"][1] == json::array({"-3", "0", "-1"}));
}

TEST_CASE("cli full variant emits the characteristic polynomial") {
    Run r = run_cli("solve " + sys_path("xy_squares.sys") + " --qq --full --format json");
    REQUIRE(r.code == 0);
    json j = json::parse(r.output);
    CHECK(j["kind"] == "full");
    CHECK(j["dimension"] == 3);
    CHECK(j["delta"] == 2);
    CHECK(j["form"] == json::array({1, -1}));
    CHECK(j["first"] == json::array({"0", "0", "0", "1"}));
    CHECK(j["f0"] == json::array({"1"}));
    CHECK(j["coords"][0].empty());
    CHECK(j["coords"][1].empty());
}

TEST_CASE("cli text output") {
    Run r = run_cli("solve " + sys_path("squares11.sys") + " --prime 65521");
    REQUIRE(r.code == 0);
    CHECK(r.output.find("rur-doc/1 (radical) over FF 65521\n") != std::string::npos);
    CHECK(r.output.find("variables: x y\n") != std::string::npos);
    CHECK(r.output.find("separating form: t = 2*x - y\n") != std::string::npos);
    CHECK(r.output.find("D = 4, delta = 4\n") != std::string::npos);
    CHECK(r.output.find("f(T) = T^4 + 65511*T^2 + 9\n") != std::string::npos);
}

TEST_CASE("cli check verifies and refutes documents") {
    fs::path doc = scratch_dir() / "check_me.json";
    Run solve = run_cli("solve " + sys_path("squares11.sys") + " --qq --format json --out " +
                        doc.string());
    REQUIRE(solve.code == 0);

    Run ok = run_cli("check " + sys_path("squares11.sys") + " " + doc.string());
    CHECK(ok.code == 0);
    CHECK(ok.output.find("verified") != std::string::npos);

    json j = json::parse(slurp(doc));
    j["coords"][0][0] = "-5";
    fs::path bad = scratch_dir() / "check_me_bad.json";
    write_file(bad, j.dump(2) + "\n");
    Run refuted = run_cli("check " + sys_path("squares11.sys") + " " + bad.string());
    CHECK(refuted.code == 5);
    CHECK(refuted.output.find("refuted") != std::string::npos);

    fs::path other = scratch_dir() / "other_vars.sys";
    write_file(other, "vars: a, b\nfield: QQ\na^2 - 1\nb^2 - 1\n");
    Run mismatch = run_cli("check " + other.string() + " " + doc.string());
    CHECK(mismatch.code == 2);
    CHECK(mismatch.output.find("parse error") != std::string::npos);
}

TEST_CASE("cli check works over a prime field") {
    fs::path doc = scratch_dir() / "check_ff.json";
    Run solve = run_cli("solve " + sys_path("squares11.sys") +
                        " --prime 65521 --format json --out " + doc.string());
    REQUIRE(solve.code == 0);
    Run ok = run_cli("check " + sys_path("squares11.sys") + " " + doc.string());
    CHECK(ok.code == 0);
    CHECK(ok.output.find("verified") != std::string::npos);

    json j = json::parse(slurp(doc));
    j["first"][0] = "10";
    fs::path bad = scratch_dir() / "check_ff_bad.json";
    write_file(bad, j.dump(2) + "\n");
    Run refuted = run_cli("check " + sys_path("squares11.sys") + " " + bad.string());
    CHECK(refuted.code == 5);
}

TEST_CASE("cli exit codes distinguish the failure classes") {
    fs::path bad = scratch_dir() / "bad.sys";
    write_file(bad, "vars: x, y\nfield: QQ\nx + (\n");
    Run parse = run_cli("solve " + bad.string());
    CHECK(parse.code == 2);
    CHECK(parse.output.find("parse error") != std::string::npos);

    fs::path zero = scratch_dir() / "zero.sys";
    write_file(zero, "vars: x\nfield: QQ\nx - x\n");
    CHECK(run_cli("solve " + zero.string()).code == 2);

    fs::path posdim = scratch_dir() / "posdim.sys";
    write_file(posdim, "vars: x, y\nfield: QQ\nx^2 - 1\n");
    Run qq = run_cli("solve " + posdim.string());
    CHECK(qq.code == 3);
    CHECK(qq.output.find("not zero-dimensional") != std::string::npos);
    CHECK(run_cli("solve " + posdim.string() + " --prime 101").code == 3);

    Run conflict = run_cli("solve " + sys_path("squares11.sys") + " --full --radical-only");
    CHECK(conflict.code == 1);
    CHECK(conflict.output.find("conflicts") != std::string::npos);
}

TEST_CASE("cli resolves the field from flags before the file header") {
    fs::path ffile = scratch_dir() / "ffield.sys";
    write_file(ffile, "vars: x\nfield: FF 101\nx^2 - 4\n");

    Run asis = run_cli("solve " + ffile.string() + " --format json");
    REQUIRE(asis.code == 0);
    json j = json::parse(asis.output);
    CHECK(j["field"]["prime"] == "101");
    CHECK(j["form"] == json::array({1}));
    CHECK(j["first"] == json::array({"97", "0", "1"}));
    CHECK(j["f0"] == json::array({"0", "1"}));
    CHECK(j["coords"][0] == json::array({"4"}));

    Run forced = run_cli("solve " + ffile.string() + " --qq --format json");
    REQUIRE(forced.code == 0);
    json q = json::parse(forced.output);
    CHECK(q["field"]["type"] == "QQ");
    CHECK(q["first"] == json::array({"-4", "0", "1"}));

    Run reprime = run_cli("solve " + ffile.string() + " --prime 103 --format json");
    REQUIRE(reprime.code == 0);
    json p = json::parse(reprime.output);
    CHECK(p["field"]["prime"] == "103");
    CHECK(p["first"] == json::array({"99", "0", "1"}));
}

TEST_CASE("cli strategy selection reaches the engine") {
    Run seq = run_cli("solve " + sys_path("squares11.sys") +
                      " --prime 65521 --strategy sequence --format json");
    REQUIRE(seq.code == 0);
    json js = json::parse(seq.output);
    CHECK(js["form"] == json::array({2, 4}));
    CHECK(js["first"] == json::array({"144", "0", "65481", "0", "1"}));

    Run rnd = run_cli("solve " + sys_path("squares11.sys") +
                      " --prime 65521 --strategy random --seed 5 --bound 3 --format json");
    REQUIRE(rnd.code == 0);
    json jr = json::parse(rnd.output);
    REQUIRE(jr["form"].size() == 2);
    bool nonzero = false;
    for (const auto& c : jr["form"]) {
        long v = c.get<long>();
        CHECK(v >= -3);
        CHECK(v <= 3);
        if (v != 0) nonzero = true;
    }
    CHECK(nonzero);
    CHECK(jr["first"].size() == 5);
}

TEST_CASE("cli metrics report sizes and sparsity") {
    Run basic = run_cli("solve " + sys_path("squares11.sys") +
                        " --prime 65521 --format json --metrics");
    REQUIRE(basic.code == 0);
    json j = json::parse(basic.output);
    REQUIRE(j.contains("metrics"));
    CHECK(j["metrics"].contains("bitsize"));
    CHECK(!j["metrics"].contains("bitsize_integer"));
    CHECK(j["metrics"]["mt_sparsity"].get<double>() == doctest::Approx(0.5));
    CHECK(j["metrics"]["form_support"] == "2/2");

    Run integer = run_cli("solve " + sys_path("squares11.sys") +
                          " --qq --format json --metrics=integer");
    REQUIRE(integer.code == 0);
    json ji = json::parse(integer.output);
    CHECK(ji["metrics"].contains("bitsize_integer"));

    Run text = run_cli("solve " + sys_path("squares11.sys") + " --prime 65521 --metrics");
    REQUIRE(text.code == 0);
    CHECK(text.output.find("bitsize = ") != std::string::npos);
    CHECK(text.output.find("M_t sparsity = ") != std::string::npos);
}

TEST_CASE("cli handles the unit ideal") {
    fs::path unit = scratch_dir() / "unit.sys";
    write_file(unit, "vars: x\nfield: QQ\nx\nx + 1\n");

    Run ff = run_cli("solve " + unit.string() + " --prime 101 --format json");
    REQUIRE(ff.code == 0);
    json j = json::parse(ff.output);
    CHECK(j["dimension"] == 0);
    CHECK(j["delta"] == 0);
    CHECK(j["first"] == json::array({"1"}));
    CHECK(j["f0"] == json::array({"1"}));
    CHECK(j["coords"][0].empty());

    Run qq = run_cli("solve " + unit.string() + " --qq --format json");
    REQUIRE(qq.code == 0);
    json q = json::parse(qq.output);
    CHECK(q["field"]["type"] == "QQ");
    CHECK(q["dimension"] == 0);
    CHECK(q["first"] == json::array({"1"}));
}

TEST_CASE("cli drives a larger rational system with worker threads") {
    Run r = run_cli("solve " + sys_path("katsura3.sys") +
                    " --qq --threads 2 --verify --format json");
    REQUIRE(r.code == 0);
    json j = json::parse(r.output);
    CHECK(j["field"]["type"] == "QQ");
    CHECK(j["kind"] == "radical");
    CHECK(j["dimension"] == 8);
    CHECK(j["delta"] == 8);
    CHECK(j["first"].size() == 9);
    CHECK(j["coords"].size() == 4);
}

TEST_CASE("cli bench prints one row per system") {
    fs::path dir = scratch_dir() / "benchdir";
    fs::create_directories(dir);
    fs::copy_file(sys_path("squares11.sys"), dir / "squares11.sys",
                  fs::copy_options::overwrite_existing);
    fs::copy_file(sys_path("nonrad1.sys"), dir / "nonrad1.sys",
                  fs::copy_options::overwrite_existing);

    Run r = run_cli("bench " + dir.string() + " --prime 65521");
    REQUIRE(r.code == 0);
    CHECK(r.output.find("system") != std::string::npos);
    CHECK(r.output.find("bitsize") != std::string::npos);
    CHECK(r.output.find("squares11") != std::string::npos);
    CHECK(r.output.find("nonrad1") != std::string::npos);
    CHECK(r.output.find("radical") != std::string::npos);
    CHECK(r.output.find("multiple") != std::string::npos);
    CHECK(r.output.find("certified") != std::string::npos);

    Run empty = run_cli("bench " + (scratch_dir() / "no_such_dir").string());
    CHECK(empty.code != 0);
}
