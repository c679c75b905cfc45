#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Result {
    int code = -1;
    std::string output;  // stdout and stderr
};

Result run(const std::string& args)
{
    const std::string cmd = std::string(SHELTER_CLI) + " " + args + " 2>&1";
    Result r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    while (size_t n = fread(buf, 1, sizeof buf, pipe)) {
        r.output.append(buf, n);
    }
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const std::string kBaseline = std::string(SHELTER_CONFIG_DIR) + "/baseline.json";
const std::string kQuick = " --config " + kBaseline +
                           " --reps 2 --set warmup_days=30 --set stats_window_days=60";

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / "shelter_cli_test")
    {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_SUITE("cli")
{
    TEST_CASE("usage errors exit with 2")
    {
        CHECK(run("--help").code == 0);
        CHECK(run("").code == 2);
        CHECK(run("frobnicate").code == 2);
        CHECK(run("simulate --config " + kBaseline).code == 2);  // --out missing
    }

    TEST_CASE("validate prints a config that validates to itself")
    {
        TempDir tmp;
        const auto first = run("validate --config " + kBaseline);
        REQUIRE(first.code == 0);
        const auto dumped = tmp.path / "effective.json";
        std::ofstream(dumped) << first.output;
        const auto second = run("validate --config " + dumped.string());
        CHECK(second.code == 0);
        CHECK(second.output == first.output);
        CHECK(nlohmann::json::parse(first.output)["bed_capacity"] == 66);
    }

    TEST_CASE("a missing config exits with 2 and writes nothing")
    {
        TempDir tmp;
        const auto out = tmp.path / "r.csv";
        const auto r = run("simulate --config " + (tmp.path / "absent.json").string() + " --out " + out.string());
        CHECK(r.code == 2);
        CHECK(fs::is_empty(tmp.path));
    }

    TEST_CASE("invalid overrides name the offending fields")
    {
        const auto r = run("validate --config " + kBaseline + " --set bsy_fraction=1.5 --set services.medical.appt_max=0");
        CHECK(r.code == 2);
        CHECK(r.output.find("bsy_fraction") != std::string::npos);
        CHECK(r.output.find("services[4].appt_max") != std::string::npos);
    }

    TEST_CASE("simulate writes CSV and manifest")
    {
        TempDir tmp;
        const auto out = tmp.path / "r.csv";
        const auto r = run("simulate" + kQuick + " --set bed_capacity=81 --out " + out.string());
        REQUIRE(r.code == 0);
        CHECK(r.output.find("psychiatric") != std::string::npos);

        const auto csv = slurp(out);
        CHECK(csv.find("\nresource,bed,81,") != std::string::npos);

        const auto manifest = nlohmann::json::parse(slurp(out.string() + ".manifest.json"));
        CHECK(manifest["tool"] == "shelter-sim");
        CHECK(manifest["command"] == "simulate");
        CHECK(manifest["config_digest"].get<std::string>().size() == 64);
        CHECK(manifest["effective_config"]["bed_capacity"] == 81);
        CHECK(manifest["effective_config"]["replications"] == 2);
        CHECK(manifest["master_seed"] == 20230101);

        // Same inputs, same bytes.
        const auto out2 = tmp.path / "r2.csv";
        REQUIRE(run("simulate" + kQuick + " --set bed_capacity=81 --jobs 2 --out " + out2.string()).code == 0);
        CHECK(slurp(out2) == csv);

        const auto out3 = tmp.path / "r3.csv";
        REQUIRE(run("simulate" + kQuick + " --set bed_capacity=81 --seed 5 --out " + out3.string()).code == 0);
        CHECK(slurp(out3) != csv);
    }

    TEST_CASE("an unwritable output exits with 3")
    {
        TempDir tmp;
        const auto out = tmp.path / "missing_dir" / "r.csv";
        const auto r = run("simulate" + kQuick + " --out " + out.string());
        CHECK(r.code == 3);
        CHECK_FALSE(fs::exists(out));
    }

    TEST_CASE("sweep")
    {
        TempDir tmp;
        const auto out = tmp.path / "s.csv";
        CHECK(run("sweep" + kQuick + " --param bed_capacity --values '' --out " + out.string()).code == 2);
        CHECK(run("sweep" + kQuick + " --param beds --values 66 --out " + out.string()).code == 2);
        CHECK_FALSE(fs::exists(out));

        const auto r = run("sweep" + kQuick + " --param service:psychiatric --values 56,72 --out " + out.string());
        REQUIRE(r.code == 0);
        const auto csv = slurp(out);
        CHECK(csv.rfind("param,param_value,record,", 0) == 0);
        CHECK(csv.find("service:psychiatric,72,resource,psychiatric,72,") != std::string::npos);
        const auto manifest = nlohmann::json::parse(slurp(out.string() + ".manifest.json"));
        CHECK(manifest["sweep"]["param"] == "service:psychiatric");
    }
}
