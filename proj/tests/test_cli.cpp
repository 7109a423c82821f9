#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

using std::string;

namespace {

struct RunResult {
    int code;
    string out;
};

RunResult run(const string& args) {
    string cmd = string(SUSYMS_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    string out;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof(buf), p)) > 0)
        out.append(buf, n);
    int status = pclose(p);
    return {WEXITSTATUS(status), out};
}

string slurp(const string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

string golden(const string& name) {
    return slurp(string(SUSYMS_DATA_DIR) + "/golden/v1/" + name);
}

} // namespace

TEST_CASE("classification counts and golden lists") {
    auto full = run("classify --stage full --count-only");
    CHECK(full.code == 0);
    CHECK(full.out == "255\n");
    auto dedupe = run("classify --stage full --dedupe-reflection --count-only");
    CHECK(dedupe.code == 0);
    CHECK(dedupe.out == "143\n");
    CHECK(run("classify --stage s1 --count-only").out == "7\n");
    CHECK(run("classify --stage s --count-only").out == "63\n");
    CHECK(run("classify --stage tilde-s --count-only").out == "127\n");

    CHECK(run("classify --stage full").out == golden("classification_full.json"));
    CHECK(run("classify --stage full --dedupe-reflection").out ==
          golden("classification_deduped.json"));
}

TEST_CASE("outputs are byte-stable across runs") {
    auto a = run("tables --format json");
    auto b = run("tables --format json");
    CHECK(a.out == b.out);
    CHECK(a.out == golden("table_susy.json"));
    CHECK(run("tables --algebra classical --format json").out == golden("table_classical.json"));
    CHECK(run("tables --format latex").out == golden("table_susy.tex"));
}

TEST_CASE("reductions print the expected equations") {
    auto l74 = run("reduce --subalgebra L74 --ansatz bodiless");
    CHECK(l74.code == 0);
    CHECK(l74.out == "(w^2 + xi^2 + 1)*w'' = 0\n");
    CHECK(run("reduce --subalgebra L72").out == golden("ode_L72.txt"));
    CHECK(run("reduce --subalgebra G136").out == golden("ode_G136.txt"));
    auto e4 = run("reduce --subalgebra e4");
    CHECK(e4.code == 0);
    CHECK(e4.out == golden("ode_e4.txt"));
    CHECK(run("reduce --subalgebra e4+me3").out == golden("ode_e4me3.txt"));
    CHECK(run("reduce --subalgebra bogus").code == 2);
}

TEST_CASE("verification commands and exit codes") {
    CHECK(run("verify-extension").code == 0);
    CHECK(run("verify-identities").code == 0);
    CHECK(run("verify-identities").out == golden("identities.json"));

    string sol = string(SUSYMS_DATA_DIR) + "/solutions/";
    auto good = run("verify-solution --file " + sol + "radial.expr");
    CHECK(good.code == 0);
    CHECK(good.out.find("identically zero") != string::npos);

    // the quadratic family needs a = M: verification failure exit
    auto constrained = run("verify-solution --file " + sol + "quadratic-body.expr");
    CHECK(constrained.code == 1);
    CHECK(constrained.out.find("constraint") != string::npos);
    CHECK(constrained.out.find("M - a = 0") != string::npos);

    // usage errors exit 2
    CHECK(run("verify-solution").code == 2);
    CHECK(run("classify --stage nowhere").code == 2);
    CHECK(run("frobnicate").code == 2);
    CHECK(run("elliptic F --phi 0.5").code == 2);
}

TEST_CASE("numeric solution check on a grid") {
    auto r = run("verify-solution --name centered-wave --numeric --grid 0.5,3,-2,2,9,9");
    CHECK(r.code == 0);
    CHECK(r.out.find("max_abs_residual") != string::npos);
}

TEST_CASE("elliptic evaluation") {
    auto f = run("elliptic F --phi 1.5707963267948966 --k 0.7071067811865476");
    CHECK(f.code == 0);
    CHECK(f.out.substr(0, 12) == "1.8540746773");
    auto e = run("elliptic E --phi 1.5707963267948966 --k 0.7071067811865476");
    CHECK(e.out.substr(0, 12) == "1.3506438810");
    CHECK(run("elliptic F --phi 0.3 --k 1.5").code == 1);
}

TEST_CASE("classical pipeline") {
    CHECK(run("classical symmetries").code == 0);
    auto c = run("classical classify");
    CHECK(c.code == 0);
    CHECK(c.out.find("\"count\": 4") != string::npos);
    CHECK(run("classical verify").code == 0);
}

TEST_CASE("classification cache round trip") {
    string dir = "/tmp/susyms-cache-test";
    std::system(("rm -rf " + dir + " && mkdir -p " + dir).c_str());
    string cmd = "SUSYMS_CACHE_DIR=" + dir + " " + string(SUSYMS_CLI_PATH) +
                 " classify --stage full --count-only";
    FILE* p = popen(cmd.c_str(), "r");
    char buf[64];
    REQUIRE(fgets(buf, sizeof(buf), p) != nullptr);
    pclose(p);
    CHECK(string(buf) == "255\n");
    // cache file now exists and the second run agrees
    std::ifstream cache(dir + "/classification_full.v1.json");
    CHECK(cache.good());
    FILE* p2 = popen(cmd.c_str(), "r");
    REQUIRE(fgets(buf, sizeof(buf), p2) != nullptr);
    pclose(p2);
    CHECK(string(buf) == "255\n");
}
