#include <doctest.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <thread>

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string stdout_text;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(RSEDGE_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult result;
    std::array<char, 512> buf{};
    while (fgets(buf.data(), buf.size(), pipe) != nullptr) result.stdout_text += buf.data();
    int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::string artifact_dir(const RunResult& r) {
    std::string line = r.stdout_text;
    while (!line.empty() && (line.back() == '\n' || line.back() == '\r')) line.pop_back();
    return line;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("spectrum output is byte-identical across worker counts") {
    fs::path out = fs::temp_directory_path() / "rsedge_cli_det";
    fs::remove_all(out);

    auto r1 = run_cli("spectrum --seed 41 --workers 1 --out " + (out / "w1").string() +
                      " --n 200 --replicas 24 --k 2");
    REQUIRE(r1.exit_code == 0);
    // distinct timestamp directories can collide within a second; workers
    // differ, so only the payload bytes are compared
    std::this_thread::sleep_for(std::chrono::milliseconds(1100));
    auto r4 = run_cli("spectrum --seed 41 --workers 4 --out " + (out / "w4").string() +
                      " --n 200 --replicas 24 --k 2");
    REQUIRE(r4.exit_code == 0);

    std::string csv1 = slurp(fs::path(artifact_dir(r1)) / "samples.csv");
    std::string csv4 = slurp(fs::path(artifact_dir(r4)) / "samples.csv");
    CHECK(csv1 == csv4);
    CHECK(csv1.find("replica,lambda_side_rank0,lambda_side_rank1\n") == 0);
    fs::remove_all(out);
}

TEST_CASE("summary embeds the full configuration") {
    fs::path out = fs::temp_directory_path() / "rsedge_cli_sum";
    fs::remove_all(out);
    auto r = run_cli("theta --seed 7 --out " + out.string() + " --replicas 500 --T 1.0");
    std::string summary = slurp(fs::path(artifact_dir(r)) / "summary.json");
    CHECK(summary.find("\"seed\": 7") != std::string::npos);
    CHECK(summary.find("\"replicas\": 500") != std::string::npos);
    CHECK(summary.find("lhs_series") != std::string::npos);
    fs::remove_all(out);
}

TEST_CASE("config file keys are overridden by flags") {
    fs::path out = fs::temp_directory_path() / "rsedge_cli_cfg";
    fs::remove_all(out);
    fs::create_directories(out);
    {
        std::ofstream cfg(out / "cfg.json");
        cfg << "{\"n\": 100, \"replicas\": 10, \"k\": 1, \"seed\": 5}\n";
    }
    auto r = run_cli("spectrum --config " + (out / "cfg.json").string() + " --out " +
                     out.string() + " --replicas 6");
    REQUIRE(r.exit_code == 0);
    std::string summary = slurp(fs::path(artifact_dir(r)) / "summary.json");
    CHECK(summary.find("\"replicas\": 6") != std::string::npos);  // flag wins
    CHECK(summary.find("\"n\": 100") != std::string::npos);       // file key survives
    CHECK(summary.find("\"seed\": 5") != std::string::npos);      // file seed honored
    fs::remove_all(out);
}

TEST_CASE("exit codes") {
    fs::path out = fs::temp_directory_path() / "rsedge_cli_exit";
    fs::remove_all(out);

    // 1: config errors
    CHECK(run_cli("spectrum --config /nonexistent.json --out " + out.string()).exit_code == 1);
    CHECK(run_cli("spectrum --family martian --replicas 4 --n 20 --out " + out.string())
              .exit_code == 1);
    CHECK(run_cli("continuum --method sideways --replicas 2 --out " + out.string()).exit_code ==
          1);

    // 2: gate failure (cross-method tolerance impossibly tight)
    auto gate = run_cli("continuum --seed 3 --method both --replicas 2 --m 256 "
                        "--riccati_tol 1e-4 --cross_method_tol 1e-12 --out " +
                        out.string());
    CHECK(gate.exit_code == 2);
    // the artifact is still written with the flagged inconsistency
    std::string summary = slurp(fs::path(artifact_dir(gate)) / "summary.json");
    CHECK(summary.find("\"pass\": false") != std::string::npos);

    fs::remove_all(out);
}
