#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_support.hpp"

#include <cstdlib>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

struct CliRun {
    int exit_code = -1;
    std::string out;
    std::string err;
};

// Runs the installed binary through the shell, capturing exit code and both
// streams.  NORDFREQ_CLI_PATH is injected by the build.
CliRun cli(const testutil::TempDir& tmp, const std::string& args) {
    const fs::path out_file = tmp.path() / "stdout.txt";
    const fs::path err_file = tmp.path() / "stderr.txt";
    const std::string command = std::string("\"") + NORDFREQ_CLI_PATH + "\" " + args + " > \"" +
                                out_file.string() + "\" 2> \"" + err_file.string() + "\"";

    CliRun r;
    const int status = std::system(command.c_str());
    REQUIRE(status != -1);
    REQUIRE(WIFEXITED(status));
    r.exit_code = WEXITSTATUS(status);
    r.out = testutil::read_file(out_file);
    r.err = testutil::read_file(err_file);
    return r;
}

std::string config_arg(const char* name) {
    return "-c \"" + testutil::data_file(name).string() + "\"";
}

} // namespace

TEST_CASE("run: violations found exits 1 and prints the comparison") {
    testutil::TempDir tmp;
    const auto r =
        cli(tmp, "run " + config_arg("config_2018.ini") + " -o \"" +
                     (tmp.path() / "out").string() + "\"");
    CHECK(r.exit_code == 1);
    CHECK(r.out.find("screened 2208 h: 166 violated, 3 event(s)") != std::string::npos);
    CHECK(r.out.find("988640.00") != std::string::npos);
    CHECK(r.out.find("272227.76") != std::string::npos);
    CHECK(r.out.find("716412.24") != std::string::npos);
    CHECK(r.out.find("72.46") != std::string::npos);
    CHECK(fs::exists(tmp.path() / "out" / "summary.txt"));
    CHECK(fs::exists(tmp.path() / "out" / "costs.json"));
}

TEST_CASE("run: a clean horizon exits 0") {
    testutil::TempDir tmp;
    const auto r =
        cli(tmp, "run " + config_arg("config_novio.ini") + " -o \"" +
                     (tmp.path() / "out").string() + "\"");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("screened 48 h: 0 violated, 0 event(s)") != std::string::npos);
}

TEST_CASE("screen stops after events and still reports violations in the code") {
    testutil::TempDir tmp;
    const auto out = (tmp.path() / "out").string();
    const auto r = cli(tmp, "screen " + config_arg("config_2018.ini") + " -o \"" + out + "\"");
    CHECK(r.exit_code == 1);
    CHECK(fs::exists(tmp.path() / "out" / "events.csv"));
    CHECK_FALSE(fs::exists(tmp.path() / "out" / "plan_di.csv"));
}

TEST_CASE("price runs the market branch alone") {
    testutil::TempDir tmp;
    const auto out = (tmp.path() / "out").string();
    const auto r = cli(tmp, "price " + config_arg("config_boot.ini") + " -o \"" + out + "\"");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("wrote 9 price artifact(s)") != std::string::npos);
    CHECK(fs::exists(tmp.path() / "out" / "prices.json"));
    CHECK(fs::exists(tmp.path() / "out" / "histogram_regulating_power.csv"));
}

TEST_CASE("compare prints the per-level table") {
    testutil::TempDir tmp;
    const auto out = (tmp.path() / "out").string();
    const auto r =
        cli(tmp, "compare " + config_arg("config_2018.ini") + " -o \"" + out + "\"");
    CHECK(r.exit_code == 1);
    CHECK(r.out.find("level    di_total_eur") != std::string::npos);
    CHECK(r.out.find("median") != std::string::npos);
}

TEST_CASE("simulate writes the trajectory and reports the nadir") {
    testutil::TempDir tmp;
    const auto out = (tmp.path() / "out").string();
    const auto r =
        cli(tmp, "simulate " + config_arg("config_2018.ini") + " -o \"" + out + "\"");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("nadir ") != std::string::npos);
    CHECK(r.out.find("initial RoCoF") != std::string::npos);
    CHECK(fs::exists(tmp.path() / "out" / "trajectory.csv"));
    CHECK(testutil::read_file(tmp.path() / "out" / "trajectory.csv")
              .rfind("time_s,frequency_hz\n", 0) == 0);
}

TEST_CASE("usage errors exit 2") {
    testutil::TempDir tmp;
    CHECK(cli(tmp, "").exit_code == 2);                    // subcommand required
    CHECK(cli(tmp, "frobnicate").exit_code == 2);          // unknown subcommand
    CHECK(cli(tmp, "run").exit_code == 2);                 // --config is required
    CHECK(cli(tmp, "run -c /nonexistent.ini").exit_code == 2);
    CHECK(cli(tmp, "--help").exit_code == 0);
}

TEST_CASE("input and domain errors map to distinct exit codes") {
    testutil::TempDir tmp;

    // fixed prices cannot serve a non-median level: input error, exit 2
    const auto level = cli(tmp, "run " + config_arg("config_2018.ini") + " --level low -o \"" +
                                    (tmp.path() / "o1").string() + "\"");
    CHECK(level.exit_code == 2);
    CHECK(level.err.find("error: ") != std::string::npos);

    // a curve below the validated range fails the mathematics: exit 3
    testutil::write_file(tmp.path() / "low_ek.csv", "timestamp,ek_gws\n0,75\n1,75\n");
    testutil::write_file(tmp.path() / "low.ini",
                         "[inputs]\nkinetic_energy_csv = low_ek.csv\n"
                         "[links]\nKO = DE 680\n[prices]\nregulating = 1\n");
    const auto domain = cli(tmp, "run -c \"" + (tmp.path() / "low.ini").string() + "\" -o \"" +
                                     (tmp.path() / "o2").string() + "\"");
    CHECK(domain.exit_code == 3);
    CHECK(domain.err.find("below the validated curve range") != std::string::npos);
}

TEST_CASE("seed and mode overrides are accepted on the command line") {
    testutil::TempDir tmp;
    const auto r = cli(tmp, "run " + config_arg("config_novio.ini") +
                                " --mode regression --seed 7 -o \"" +
                                (tmp.path() / "out").string() + "\"");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("0 violated") != std::string::npos);

    const auto bad_mode = cli(tmp, "run " + config_arg("config_novio.ini") +
                                       " --mode fuzzy -o \"" +
                                       (tmp.path() / "o3").string() + "\"");
    CHECK(bad_mode.exit_code == 2);
}
