#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>

#include "montes/error.hpp"
#include "montes/fixtures.hpp"
#include "montes_cli/cli.hpp"

using namespace montes;
using namespace montes::cli;

namespace {

struct CliRun {
    int code;
    std::string out, err;
};

CliRun run(const std::vector<std::string>& args) {
    std::ostringstream o, e;
    int c = main_entry(args, o, e);
    return {c, o.str(), e.str()};
}

const char* kGolden = "x^12+4*x^6+16*x^3+64";

}  // namespace

TEST(Cli, ParseInputForms) {
    JobSpec a = parse_input({"index", kGolden, "-p", "2"});
    JobSpec b = parse_input({"index", "-f", "[64,0,0,16,0,0,4,0,0,0,0,0,1]", "-p", "2"});
    EXPECT_EQ(a.f, b.f);
    EXPECT_EQ(a.p, 2);
    EXPECT_EQ(a.command, Command::Index);
    JobSpec c = parse_input({"decompose", "(x^2+x+1)^2 - 7^11", "-p", "7", "--jobs", "2", "--seed", "9"});
    EXPECT_EQ(c.f, fixtures::quartic(7, 5));
    EXPECT_EQ(c.jobs, 2);
    EXPECT_EQ(c.seed, 9u);
}

TEST(Cli, ParseInputRejections) {
    EXPECT_THROW(parse_input({"index", "2*x^2+1", "-p", "3"}), InputError);
    EXPECT_THROW(parse_input({"index", "x^2+1", "-p", "15"}), InputError);
    EXPECT_THROW(parse_input({"index", "x^2+", "-p", "3"}), ParseError);
    EXPECT_THROW(parse_input({"index", "x^2+1"}), InputError);
    EXPECT_THROW(parse_input({"frobnicate"}), InputError);
    EXPECT_THROW(parse_input({"index", "7", "-p", "3"}), InputError);
}

TEST(Cli, SeedFromEnvironment) {
    setenv("MONTES_SEED", "1234", 1);
    JobSpec a = parse_input({"index", kGolden, "-p", "2"});
    JobSpec b = parse_input({"index", kGolden, "-p", "2", "--seed", "5"});
    unsetenv("MONTES_SEED");
    EXPECT_EQ(a.seed, 1234u);
    EXPECT_EQ(b.seed, 5u);
}

TEST(Cli, IndexText) {
    CliRun r = run({"index", kGolden, "-p", "2"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "ind=27 vdisc_f=69 vdisc_K=15");
}

TEST(Cli, PStemEndsWithVerdict) {
    CliRun r = run({"pstem", kGolden, "-p", "2"});
    EXPECT_EQ(r.code, 0);
    ASSERT_GE(r.out.size(), 14u);
    EXPECT_EQ(r.out.substr(r.out.size() - 14), "maximal order\n");
    EXPECT_NE(r.out.find("(t^11 + 4*t^5 + 16*t^2)/2^5"), std::string::npos);
}

TEST(Cli, DecomposeInertCase) {
    CliRun r = run({"decompose", "x^5+x^2+1", "-p", "2"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 1);
    EXPECT_EQ(r.out.rfind("e=1 f=5", 0), 0u);
}

TEST(Cli, PBasisAndCheck) {
    CliRun b = run({"pbasis", kGolden, "-p", "2"});
    EXPECT_EQ(b.code, 0);
    EXPECT_NE(b.out.find("numerator criterion: holds (sum nu=39 ind_num=12 ind=27)"), std::string::npos);
    CliRun c = run({"check", kGolden, "-p", "2"});
    EXPECT_EQ(c.code, 0);
    EXPECT_NE(c.out.find("integrality: 12/12"), std::string::npos);
}

TEST(Cli, JsonSchemaOrderAndRoundTrip) {
    CliRun r = run({"index", kGolden, "-p", "2", "--json"});
    ASSERT_EQ(r.code, 0);
    auto j = nlohmann::ordered_json::parse(r.out);
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    EXPECT_EQ(keys, (std::vector<std::string>{"p", "f", "ind", "vdisc_f", "vdisc_K", "primes", "basis", "stem",
                                              "maximal", "seed", "timings_ms"}));
    EXPECT_EQ(j.dump() + "\n", r.out);
    EXPECT_EQ(j["p"], "2");
    EXPECT_EQ(j["f"][0], "64");
    EXPECT_EQ(j["ind"], 27);
    EXPECT_EQ(j["primes"][0]["e"], 3);
    EXPECT_EQ(j["basis"][0]["nu"], 5);
    EXPECT_EQ(j["stem"].size(), 6u);
    EXPECT_EQ(j["maximal"], true);
}

TEST(Cli, TextAndJsonReportSameNumbers) {
    for (std::uint64_t s = 0; s < 10; ++s) {
        auto g = fixtures::random_mixed(s);
        std::string poly = g.f.to_string(), p = g.p.get_str();
        CliRun t = run({"index", poly, "-p", p});
        CliRun j = run({"index", poly, "-p", p, "--json"});
        ASSERT_EQ(t.code, j.code);
        auto js = nlohmann::ordered_json::parse(j.out);
        std::ostringstream want;
        want << "ind=" << js["ind"].get<long>() << " vdisc_f=" << js["vdisc_f"].get<long>()
             << " vdisc_K=" << js["vdisc_K"].get<long>();
        EXPECT_EQ(t.out.substr(0, t.out.find('\n')), want.str());
        CliRun d = run({"decompose", poly, "-p", p});
        std::string lines;
        for (const auto& pr : js["primes"])
            lines += "e=" + std::to_string(pr["e"].get<long>()) + " f=" + std::to_string(pr["f"].get<long>());
        std::string got;
        std::istringstream is(d.out);
        for (std::string line; std::getline(is, line);) got += line.substr(0, line.find(" type="));
        EXPECT_EQ(got, lines);
    }
}

TEST(Cli, ErrorsGoToStderrOnly) {
    CliRun r = run({"index", "x^2+2*x+1", "-p", "3", "--json"});
    EXPECT_EQ(r.code, 1);
    EXPECT_TRUE(r.out.empty());
    EXPECT_NE(r.err.find("squarefree"), std::string::npos);
    CliRun q = run({"index", "x^2+(", "-p", "3"});
    EXPECT_EQ(q.code, 1);
    EXPECT_NE(q.err.find("position"), std::string::npos);
}

TEST(Cli, HelpExitsZero) {
    CliRun r = run({"--help"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("pstem"), std::string::npos);
}

TEST(Cli, TraceGoesToStderr) {
    CliRun r = run({"index", kGolden, "-p", "2", "--trace"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.err.find("side 0 slope -2/3"), std::string::npos);
    EXPECT_EQ(r.out.find("type ("), std::string::npos);
}
