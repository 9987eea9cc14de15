#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>

// end-to-end checks of the installed command line: exit codes and
// deterministic output

namespace {

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run(const std::string& args)
{
    std::string cmd = std::string(TAUCHARTS_CLI_PATH) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf{};
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        r.out.append(buf.data(), n);
    int status = pclose(pipe);
    r.code = WEXITSTATUS(status);
    return r;
}

}  // namespace

TEST_CASE("bounds subcommand prints the table values")
{
    auto r = run("--decimals 2 bounds --prime 3 --n 32");
    CHECK(r.code == 0);
    CHECK(r.out.find("A_3 = 55") != std::string::npos);
    CHECK(r.out.find("B_3 = 54.42") != std::string::npos);

    auto exact = run("bounds --prime 2 --n 17");
    CHECK(exact.out.find("B_2 = 95/2") != std::string::npos);

    auto stem = run("bounds --prime 2 --stem 127");
    CHECK(stem.code == 0);
    CHECK(stem.out.find("gamma_dm = 491/10") != std::string::npos);
    auto stem5 = run("--decimals 2 bounds --prime 5 --stem 119");
    CHECK(stem5.out.find("gamma_gonzalez = 10.05") != std::string::npos);
    CHECK(stem5.out.find("exponent_bound = 10.05") != std::string::npos);
}

TEST_CASE("gamma subcommand and the two routes")
{
    auto burklund = run("gamma --prime 3 --stem 255 --method burklund");
    auto descent = run("gamma --prime 3 --stem 255 --method descent");
    CHECK(burklund.code == 0);
    CHECK(burklund.out == descent.out);
    auto dec = run("--decimals 2 gamma --prime 3 --stem 255 --method burklund");
    CHECK(dec.out == "54.42\n");
}

TEST_CASE("classify exit codes")
{
    CHECK(run("classify --n 12 --sig 0 --chisq 0").code == 0);
    CHECK(run("classify --n 12 --sig 8 --chisq 0").code == 1);
    CHECK(run("classify --n 11 --sig 0 --chisq 0").code == 2);  // bad input
}

TEST_CASE("usage errors exit 2")
{
    CHECK(run("bogus-subcommand").code == 2);
    CHECK(run("bounds --prime 4 --n 10").code == 2);  // not a prime
    CHECK(run("bounds --prime 3").code == 2);         // neither --n nor --stem
}

TEST_CASE("verify is deterministic and green")
{
    auto first = run("verify table1");
    auto second = run("verify table1");
    CHECK(first.code == 0);
    CHECK(first.out == second.out);

    // the thread cap must not change any output
    RunResult capped;
    {
        std::string cmd = std::string("TAUCHARTS_THREADS=1 ") + TAUCHARTS_CLI_PATH +
                          " verify table1 2>/dev/null";
        std::array<char, 4096> buf{};
        FILE* pipe = popen(cmd.c_str(), "r");
        REQUIRE(pipe != nullptr);
        size_t n;
        while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
            capped.out.append(buf.data(), n);
        capped.code = WEXITSTATUS(pclose(pipe));
    }
    CHECK(capped.code == 0);
    CHECK(capped.out == first.out);

    auto banded = run("verify banded");
    CHECK(banded.code == 0);

    auto all = run("fold moore");
    CHECK(all.out.find("C(8~),-25/2,3,275/3,1/5,15,15") != std::string::npos);
}

TEST_CASE("verify fails loudly against a corrupted golden")
{
    std::string tmp = "/tmp/taucharts-verify-XXXXXX";
    REQUIRE(mkdtemp(tmp.data()) != nullptr);
    std::string setup = "mkdir -p " + tmp + "/golden && cp " + TAUCHARTS_DATA_DIR +
                        "/golden/table1.csv " + tmp + "/golden/ && cp " + TAUCHARTS_DATA_DIR +
                        "/sphere19.chart " + tmp + "/ && echo corrupted >> " + tmp +
                        "/golden/table1.csv";
    REQUIRE(std::system(setup.c_str()) == 0);
    auto r = run("--data " + tmp + " verify table1");
    CHECK(r.code == 1);
    CHECK(r.out.find("FAIL table1") != std::string::npos);
    CHECK(std::system(("rm -rf " + tmp).c_str()) == 0);
}

TEST_CASE("chart subcommands run on the bundled file")
{
    std::string chart = std::string(TAUCHARTS_DATA_DIR) + "/sphere19.chart";
    auto pages = run("chart pages --input " + chart + " --page 4");
    CHECK(pages.code == 0);
    CHECK(pages.out.find("E_4(14,2) dim 1") != std::string::npos);
    CHECK(pages.out.find("E_4(14,3)") == std::string::npos);  // killed by d2

    auto synth = run("chart synthetic --input " + chart);
    CHECK(synth.code == 0);
    CHECK(synth.out.find("tau h0d0 order=2") != std::string::npos);

    auto svg = run("chart synthetic --input " + chart + " --svg /dev/stdout --out /dev/null");
    CHECK(svg.code == 0);
    CHECK(svg.out.find("#0000FF") != std::string::npos);  // tau-torsion dots
    CHECK(svg.out.find("#FF0000") != std::string::npos);  // tau^2-torsion dots

    auto render = run("chart render --input " + chart + " --out /dev/null");
    CHECK(render.code == 0);
}

TEST_CASE("resolution demo prints the worked rewrite")
{
    auto r = run("resolution demo");
    CHECK(r.code == 0);
    CHECK(r.out.find("[ C[5,10] ; C[0,4]+D[6,10] ; D[0,5] | X ]") != std::string::npos);
}
