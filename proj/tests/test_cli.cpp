#include <k3fib/cli.hpp>

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace k3fib;
using io::json;

namespace {

struct Result {
    int code;
    std::string out, err;
    json parsed() const { return json::parse(out); }
};

Result run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& body)
{
    auto path = std::filesystem::temp_directory_path() / ("k3fib_test_" + name);
    std::ofstream(path) << body;
    return path.string();
}

struct EnvGuard {
    explicit EnvGuard(const std::string& v) { ::setenv(cli::config_env, v.c_str(), 1); }
    ~EnvGuard() { ::unsetenv(cli::config_env); }
};

} // namespace

TEST(Cli, DualJson)
{
    auto r = run({"--json", "dual", "2", "3", "8"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = r.parsed();
    EXPECT_EQ(j["dual"], json::array({2, 4, 5}));
    EXPECT_EQ(j["alpha_v"], "2+sqrt(3)");
    EXPECT_EQ(j["cycle"], json::array({4}));
    EXPECT_TRUE(j["ok"].get<bool>());
    EXPECT_EQ(io::quad_from_json(j["alpha_v_exact"]), QuadIrrational(2, 1, 1, 3));
    auto cert = io::certificate_from_json(j["monodromy_vs_dual_inverse"]);
    EXPECT_TRUE(cert.verify());
    EXPECT_EQ(cert.source, monodromy_matrix(2, 3, 8));
    // flag after the subcommand works too
    EXPECT_EQ(run({"dual", "2", "3", "8", "--json"}).out, r.out);
}

TEST(Cli, DualText)
{
    auto r = run({"dual", "2", "3", "7"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("(2,3,7)"), std::string::npos);
    EXPECT_NE(r.out.find("OK"), std::string::npos);
}

TEST(Cli, Monodromy)
{
    auto r = run({"--json", "monodromy", "2", "3", "7"});
    ASSERT_EQ(r.code, 0);
    auto j = r.parsed();
    EXPECT_EQ(io::sl2_from_json(j["matrix"]), SL2(5, -11, 1, -2));
    EXPECT_EQ(j["class"], "hyperbolic");
    EXPECT_EQ(j["trace"], 3);
    auto p = run({"--json", "monodromy", "3", "3", "3"}).parsed();
    EXPECT_EQ(p["class"], "parabolic");
    EXPECT_FALSE(p.contains("rl_word"));
}

TEST(Cli, Lattice)
{
    auto r = run({"--json", "lattice", "2", "3", "7"});
    ASSERT_EQ(r.code, 0);
    auto j = r.parsed();
    EXPECT_EQ(j["det"], -1);
    EXPECT_TRUE(j["discriminant_law"].get<bool>());
    EXPECT_EQ(io::lattice_from_json(j["lattice"]), t_lattice(2, 3, 7));
    auto s = run({"--json", "lattice", "2", "3", "7", "--generator", "Sprime"}).parsed();
    EXPECT_EQ(s["rank"], 11);
    EXPECT_EQ(s["radical"].size(), 1u);
    EXPECT_EQ(run({"lattice", "2", "3", "5", "--generator", "S"}).code, cli::usage_error);
    EXPECT_EQ(run({"lattice", "2", "3", "7", "--generator", "X"}).code, cli::usage_error);
}

TEST(Cli, K3)
{
    auto r = run({"--json", "k3", "--pair", "2,3,7"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = r.parsed();
    EXPECT_EQ(j["signature"], json::array({3, 0, 19}));
    EXPECT_EQ(j["critical_count"], 24);
    EXPECT_TRUE(j["iso_2e8_3h"].get<bool>());
    // a non-unimodular pair is reported faithfully and is not a failure
    auto z = run({"--json", "k3", "--pair", "2,4,5"});
    EXPECT_EQ(z.code, 0);
    EXPECT_FALSE(z.parsed()["unimodular"].get<bool>());
    EXPECT_EQ(run({"k3", "--pair", "2,3,10"}).code, cli::usage_error);
}

TEST(Cli, Inose)
{
    const std::pair<std::string, std::string> cases[] = {
        {"0,0,2,2", "X_{2,3,7}"}, {"0,2,0,2", "X_{2,5,5}"}, {"0,1,0,2", "X_{2,4,5}"}, {"0,2,1,2", "X_{2,3,8}"}};
    for (auto& [c, name] : cases) {
        auto r = run({"--json", "inose", "--case", c});
        ASSERT_EQ(r.code, 0) << c;
        auto j = r.parsed();
        EXPECT_EQ(j["boundary"], name);
        EXPECT_EQ(j["inverse_matches"].size(), 1u);
        EXPECT_TRUE(io::certificate_from_json(j["certificate"]).verify());
    }
    EXPECT_EQ(run({"inose", "--case", "0,0,2"}).code, cli::usage_error);
    EXPECT_EQ(run({"inose", "--case", "0,0,2,x"}).code, cli::usage_error);
    EXPECT_EQ(run({"inose", "--case", "0,0,2,5"}).code, cli::usage_error);
}

TEST(Cli, TableDeterministic)
{
    auto a = run({"--json", "table"});
    auto b = run({"--json", "table"});
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    auto j = a.parsed();
    ASSERT_EQ(j["rows"].size(), 10u);
    for (auto& row : j["rows"]) {
        EXPECT_TRUE(row["ok"].get<bool>());
        EXPECT_EQ(row["table_dual"], row["computed_dual"]);
    }
    auto text = run({"table"});
    EXPECT_EQ(text.code, 0);
    EXPECT_NE(text.out.find("OK"), std::string::npos);
}

TEST(Cli, VerifyFibration)
{
    auto r = run({"--json", "--samples", "200", "verify-fibration"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = r.parsed();
    EXPECT_TRUE(j["ok"].get<bool>());
    EXPECT_EQ(j["critical_points"]["verified"], 12);
    EXPECT_EQ(j["symplectic"]["samples"], 200);
    EXPECT_EQ(run({"verify-fibration", "--a", "1"}).code, cli::usage_error);
    EXPECT_EQ(run({"verify-fibration", "--t", "2"}).code, cli::usage_error);
    EXPECT_EQ(run({"--samples", "0", "verify-fibration"}).code, cli::usage_error);
}

TEST(Cli, SeedChangesSamplesOnly)
{
    auto a = run({"--json", "--samples", "50", "--seed", "1", "verify-fibration"}).parsed();
    auto b = run({"--json", "--samples", "50", "--seed", "2", "verify-fibration"}).parsed();
    EXPECT_TRUE(a["ok"].get<bool>());
    EXPECT_TRUE(b["ok"].get<bool>());
    EXPECT_EQ(a["critical_points"], b["critical_points"]);
}

TEST(Cli, UsageErrors)
{
    EXPECT_EQ(run({}).code, cli::usage_error);
    EXPECT_EQ(run({"bogus"}).code, cli::usage_error);
    EXPECT_EQ(run({"dual", "2", "3", "6"}).code, cli::usage_error);
    EXPECT_EQ(run({"dual", "2", "3"}).code, cli::usage_error);
    EXPECT_EQ(run({"dual", "1", "3", "9"}).code, cli::usage_error);
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Config, FileAndEnvironment)
{
    num::NumericalConfig cfg;
    std::istringstream in("# tolerances\nresidual_tolerance = 1e-8\nsamples=64\n\nseed = 5\n");
    cli::apply_config(in, cfg);
    EXPECT_EQ(cfg.residual_tol, 1e-8);
    EXPECT_EQ(cfg.samples, 64);
    EXPECT_EQ(cfg.seed, 5u);
    std::istringstream bad("nonsense = 3\n");
    EXPECT_THROW(cli::apply_config(bad, cfg), cli::UsageError);
    std::istringstream neg("samples = -3\n");
    EXPECT_THROW(cli::apply_config(neg, cfg), cli::UsageError);

    auto path = temp_file("cfg", "samples = 30\n");
    auto r = run({"--json", "--tolerance-file", path, "verify-fibration"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.parsed()["symplectic"]["samples"], 30);
    {
        EnvGuard g(path);
        auto e = run({"--json", "verify-fibration"});
        ASSERT_EQ(e.code, 0) << e.err;
        EXPECT_EQ(e.parsed()["symplectic"]["samples"], 30);
        // the command line beats the file
        EXPECT_EQ(run({"--json", "--samples", "40", "verify-fibration"}).parsed()["symplectic"]["samples"], 40);
    }
    auto broken = temp_file("broken", "fd_step = abc\n");
    EXPECT_EQ(run({"--tolerance-file", broken, "table"}).code, cli::usage_error);
    EXPECT_EQ(run({"--tolerance-file", "/nonexistent/k3fib.cfg", "table"}).code, cli::usage_error);
}

TEST(JsonIo, RoundTrips)
{
    Int big = Int(1) << 100;
    EXPECT_TRUE(io::to_json(big).is_string());
    EXPECT_EQ(io::int_from_json(io::to_json(big)), big);
    EXPECT_EQ(io::int_from_json(io::to_json(Int(-7))), -7);
    SL2 m(5, -11, 1, -2);
    EXPECT_EQ(io::sl2_from_json(io::to_json(m)), m);
    auto l = t_tilde_lattice(2, 3, 7, Generator::Sprime);
    EXPECT_EQ(io::lattice_from_json(io::to_json(l)), l);
    auto w = inose_word(InoseCase(0, 2, 0, 2));
    auto w2 = io::twist_word_from_json(io::to_json(w));
    EXPECT_EQ(evaluate_word(w2), evaluate_word(w));
    EXPECT_EQ(io::cycle_from_json(io::to_json(CycleData({3, 2}))), CycleData({3, 2}));
    EXPECT_EQ(io::triple_from_json(io::to_json(Triple(2, 4, 5))), Triple(2, 4, 5));
    num::C3Point pt{{0.1, 0.2}, {-0.3, 0}, {0, 1e-7}};
    EXPECT_EQ(io::point_from_json(io::to_json(pt)).real6(), pt.real6());
    EXPECT_THROW(io::twist_word_from_json(json::parse(R"([{"class":[2,2],"exp":1}])")), Error);
    EXPECT_THROW(io::point_from_json(json::array({1, 2})), Error);
}

TEST(Binary, ExitCodes)
{
    const char* exe = std::getenv("K3FIB_CLI");
    if (!exe) GTEST_SKIP() << "K3FIB_CLI not set";
    auto status = [&](const std::string& args) {
        int s = std::system((std::string(exe) + " " + args + " > /dev/null 2>&1").c_str());
        return WEXITSTATUS(s);
    };
    EXPECT_EQ(status("monodromy 2 3 7"), 0);
    EXPECT_EQ(status("dual 2 3 6"), 2);
    EXPECT_EQ(status("bogus"), 2);
    FILE* p = ::popen((std::string(exe) + " --json dual 2 3 8").c_str(), "r");
    ASSERT_TRUE(p);
    std::string text;
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof buf, p)) text.append(buf, n);
    EXPECT_EQ(::pclose(p), 0);
    EXPECT_EQ(json::parse(text)["alpha_v"], "2+sqrt(3)");
}
