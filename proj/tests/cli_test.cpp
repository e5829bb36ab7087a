#include <gtest/gtest.h>

#include <cstdio>
#include <random>
#include <sstream>
#include <sys/wait.h>

#include "jordan/cli.hpp"

using namespace jordan;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

/// Value of a "key: value" line in text output.
std::string field(const std::string& text, const std::string& key) {
    std::istringstream is(text);
    for (std::string line; std::getline(is, line);) {
        if (line.rfind(key + ": ", 0) == 0) return line.substr(key.size() + 2);
    }
    return {};
}

std::vector<Int> split_ints(const std::string& s, char sep) {
    std::vector<Int> out;
    std::istringstream is(s);
    for (std::string tok; std::getline(is, tok, sep);)
        if (!tok.empty()) out.push_back(std::stoll(tok));
    return out;
}

int exit_code_of(const std::string& args) {
    const std::string cmd = std::string(JORDAN_CLI_PATH) + ' ' + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(CmdCompute, TextOutput) {
    const auto r = run({"compute", "--m", "3", "--n", "6", "--p", "2"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(field(r.out, "composition"), "1+1+1");
    EXPECT_EQ(field(r.out, "partition"), "8 6 4");
    EXPECT_EQ(field(r.out, "multiplicity_form"), "1*8 1*6 1*4");
    EXPECT_EQ(field(r.out, "standard"), "true");
}

TEST(CmdCompute, Examples) {
    auto r = run({"compute", "--m", "1", "--n", "5", "--p", "3"});
    EXPECT_EQ(field(r.out, "partition"), "5");
    EXPECT_EQ(field(r.out, "standard"), "true");

    r = run({"compute", "--m", "2", "--n", "4", "--p", "2"});
    EXPECT_EQ(field(r.out, "composition"), "2");
    EXPECT_EQ(field(r.out, "partition"), "4 4");
    EXPECT_EQ(field(r.out, "standard"), "false");
}

TEST(CmdCompute, ArgumentOrderIsNormalized) {
    const auto r = run({"compute", "--m", "6", "--n", "3", "--p", "2"});
    EXPECT_EQ(field(r.out, "m"), "3");
    EXPECT_EQ(field(r.out, "partition"), "8 6 4");
}

TEST(CmdCompute, JsonDocument) {
    const auto r = run({"compute", "--m", "3", "--n", "5", "--p", "2", "--format", "json"});
    ASSERT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    for (const char* key : {"m", "n", "p", "composition", "partition", "multiplicity_form", "standard"})
        EXPECT_TRUE(j.contains(key)) << key;
    EXPECT_EQ(j["composition"].get<std::vector<Int>>(), (std::vector<Int>{1, 2}));
    EXPECT_EQ(j["partition"].get<std::vector<Int>>(), (std::vector<Int>{7, 4, 4}));
    EXPECT_EQ(j["multiplicity_form"][1]["multiplicity"], 2);
    EXPECT_EQ(j["multiplicity_form"][1]["part"], 4);
    EXPECT_FALSE(j["standard"].get<bool>());
}

TEST(CmdCompute, CsvFixture) {
    const auto r = run({"compute", "--m", "3", "--n", "6", "--p", "2", "--format", "csv"});
    EXPECT_EQ(r.out, "m,n,p,composition,partition,standard\n3,6,2,\"1+1+1\",\"8 6 4\",true\n");
}

TEST(CmdCompute, JsonRoundTripsTextOnRandomTriples) {
    std::mt19937_64 rng(31337);
    const std::vector<Int> primes{2, 3, 5, 7, 11, 13};
    for (int trial = 0; trial < 100; ++trial) {
        const Int m = std::uniform_int_distribution<Int>(1, 200)(rng);
        const Int n = std::uniform_int_distribution<Int>(1, 200)(rng);
        const Int p = primes[std::uniform_int_distribution<std::size_t>(0, primes.size() - 1)(rng)];
        const std::vector<std::string> base{"compute", "--m", std::to_string(m), "--n", std::to_string(n), "--p",
                                            std::to_string(p)};
        const auto text = run(base);
        auto json_args = base;
        json_args.insert(json_args.end(), {"--format", "json"});
        const auto doc = nlohmann::json::parse(run(json_args).out);
        ASSERT_EQ(doc["composition"].get<std::vector<Int>>(), split_ints(field(text.out, "composition"), '+'));
        ASSERT_EQ(doc["partition"].get<std::vector<Int>>(), split_ints(field(text.out, "partition"), ' '));
        ASSERT_EQ(doc["standard"].get<bool>(), field(text.out, "standard") == "true");
    }
}

TEST(CmdTable, RowsAndFixtures) {
    auto r = run({"table", "--m-max", "3", "--n-max", "7", "--p", "2", "--format", "csv"});
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("3,4,2,\"3\",\"4 4 4\",false\n"), std::string::npos);
    EXPECT_NE(r.out.find("3,5,2,\"1+2\",\"7 4 4\",false\n"), std::string::npos);
    EXPECT_NE(r.out.find("3,6,2,\"1+1+1\",\"8 6 4\",true\n"), std::string::npos);
    EXPECT_NE(r.out.find("3,7,2,\"2+1\",\"8 8 5\",false\n"), std::string::npos);

    r = run({"table", "--m-max", "1", "--n-max", "3", "--p", "2", "--format", "json"});
    const auto rows = nlohmann::json::parse(r.out);
    ASSERT_EQ(rows.size(), 3U);
    for (const auto& row : rows) EXPECT_TRUE(row["standard"].get<bool>());
}

TEST(CmdTable, RowsSortedByMThenN) {
    const auto r = run({"table", "--m-max", "4", "--n-max", "6", "--p", "3", "--format", "json"});
    const auto rows = nlohmann::json::parse(r.out);
    ASSERT_EQ(rows.size(), 6U + 5U + 4U + 3U);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto prev = std::pair(rows[i - 1]["m"].get<Int>(), rows[i - 1]["n"].get<Int>());
        const auto cur = std::pair(rows[i]["m"].get<Int>(), rows[i]["n"].get<Int>());
        EXPECT_LT(prev, cur);
    }
}

TEST(CmdOracle, Examples) {
    auto r = run({"oracle", "--m", "2", "--n", "2", "--p", "2"});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(field(r.out, "partition"), "2 2");
    EXPECT_EQ(field(r.out, "ranks"), "4 2 0");

    r = run({"oracle", "--m", "2", "--n", "2", "--p", "3"});
    EXPECT_EQ(field(r.out, "partition"), "3 1");

    r = run({"oracle", "--m", "1", "--n", "1", "--p", "2", "--format", "json"});
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["partition"].get<std::vector<Int>>(), std::vector<Int>{1});
    EXPECT_EQ(j["ranks"].get<std::vector<Int>>(), (std::vector<Int>{1, 0}));
}

TEST(CmdOracle, SizeBoundIsAUsageError) {
    const auto r = run({"oracle", "--m", "10", "--n", "10", "--p", "2", "--max-entries", "50"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("50"), std::string::npos);
}

TEST(CmdOracle, AgreesWithCompute) {
    for (Int p : {2, 3, 5}) {
        for (Int m = 1; m <= 7; ++m) {
            for (Int n = m; n <= 9; ++n) {
                const std::vector<std::string> tail{"--m", std::to_string(m), "--n", std::to_string(n), "--p",
                                                    std::to_string(p)};
                std::vector<std::string> a{"compute"}, b{"oracle"};
                a.insert(a.end(), tail.begin(), tail.end());
                b.insert(b.end(), tail.begin(), tail.end());
                ASSERT_EQ(field(run(a).out, "partition"), field(run(b).out, "partition")) << m << ' ' << n << ' ' << p;
            }
        }
    }
}

TEST(CmdVerify, Examples) {
    auto r = run({"verify", "--suite", "theorem1", "--m-max", "32", "--n-max", "128"});
    EXPECT_EQ(r.code, 0) << r.out << r.err;
    EXPECT_EQ(field(r.out, "result"), "PASS");

    r = run({"verify", "--suite", "oracle", "--m-max", "16", "--n-max", "16", "--p", "2", "--p", "3"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(field(r.out, "cases_checked"), "272");

    r = run({"verify", "--suite", "periodicity", "--m", "3", "--t", "2", "--p", "2", "--n-max", "64"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(field(r.out, "cases_checked"), "62");

    r = run({"verify", "--suite", "reflection", "--format", "json"});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(nlohmann::json::parse(r.out)["passed"].get<bool>());
}

TEST(CmdVerify, FailuresGiveExitCodeOne) {
    // An undersized oracle bound turns every large pair into a reported failure.
    const auto r = run({"verify", "--suite", "oracle", "--m-max", "4", "--n-max", "4", "--max-entries", "9",
                        "--format", "json"});
    EXPECT_EQ(r.code, 1);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["failure_count"], 2);
    EXPECT_EQ(j["failures"].size(), 2U);
}

TEST(CmdVerify, UsageErrors) {
    EXPECT_EQ(run({"verify", "--suite", "bogus"}).code, 2);
    EXPECT_EQ(run({"verify", "--suite", "periodicity", "--m", "5", "--t", "2", "--p", "2"}).code, 2);
    EXPECT_EQ(run({"verify", "--suite", "periodicity", "--m", "3"}).code, 2);
    EXPECT_EQ(run({"verify", "--suite", "theorem1", "--p", "3"}).code, 2);
    EXPECT_EQ(run({"verify", "--suite", "oracle", "--m-max", "9", "--n-max", "4"}).code, 2);
}

TEST(ExitCodes, UsageErrorsAreTwo) {
    EXPECT_EQ(run({"compute", "--m", "0", "--n", "5", "--p", "2"}).code, 2);
    EXPECT_EQ(run({"compute", "--m", "3", "--n", "5", "--p", "4"}).code, 2);
    EXPECT_EQ(run({"compute", "--m", "3", "--n", "5"}).code, 2);
    EXPECT_EQ(run({"compute", "--m", "x", "--n", "5", "--p", "2"}).code, 2);
    EXPECT_EQ(run({"compute", "--m", "3", "--n", "5", "--p", "2", "--format", "xml"}).code, 2);
    EXPECT_EQ(run({"table", "--m-max", "0", "--n-max", "5", "--p", "2"}).code, 2);
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(ExitCodes, BinaryProcessExitStatus) {
    EXPECT_EQ(exit_code_of("compute --m 3 --n 6 --p 2"), 0);
    EXPECT_EQ(exit_code_of("compute --m 3 --n 6 --p 9"), 2);
    EXPECT_EQ(exit_code_of("verify --suite nope"), 2);
    EXPECT_EQ(exit_code_of("verify --suite oracle --m-max 4 --n-max 4 --max-entries 9"), 1);
    EXPECT_EQ(exit_code_of("verify --suite corollary1 --m-max 10 --n-max 20 --p 2 --p 3"), 0);
}
