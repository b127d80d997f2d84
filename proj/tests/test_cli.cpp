#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "test_helpers.hpp"

#include "qcorr/state_io.hpp"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace qcorr;
using namespace qcorr::test;

namespace {

namespace fs = std::filesystem;

const fs::path work_dir = fs::temp_directory_path() / "qcorr_cli_tests";

int run_cli(const std::string& args) {
    const std::string command = std::string(QCORR_CLI_PATH) + " " + args + " 2>/dev/null";
    const int status = std::system(command.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

nlohmann::json last_record(const fs::path& path) {
    std::ifstream in(path);
    std::string line, last;
    while (std::getline(in, line))
        if (!line.empty()) last = line;
    return nlohmann::json::parse(last);
}

struct Workspace {
    Workspace() {
        fs::remove_all(work_dir);
        fs::create_directories(work_dir);
    }
};

const Workspace workspace;

} // namespace

TEST_CASE("compute discord on the rho_cc fixture reports zero") {
    const fs::path state = work_dir / "rho_cc.json";
    save_state(rho_cc(), state.string());
    const fs::path report = work_dir / "rho_cc_discord.jsonl";
    const int code = run_cli("compute --state " + state.string() +
                             " --quantity discord --seed 7 --out " + report.string());
    CHECK(code == 0);
    const nlohmann::json summary = last_record(report);
    CHECK(summary.at("record") == "summary");
    CHECK(std::abs(summary.at("value").get<double>()) <= 1e-7);
}

TEST_CASE("compute deficit on the Bell fixture reports one bit") {
    const fs::path state = work_dir / "bell.json";
    save_state(bell_phi_plus(), state.string());
    const fs::path report = work_dir / "bell_deficit.jsonl";
    const int code = run_cli("compute --state " + state.string() +
                             " --quantity deficit --seed 7 --out " + report.string());
    CHECK(code == 0);
    CHECK(std::abs(last_record(report).at("value").get<double>() - 1.0) <= 1e-6);
}

TEST_CASE("compute rejects a non-PSD state file with exit 2") {
    const fs::path state = work_dir / "bad.json";
    nlohmann::json doc = state_to_json(rho_cc());
    doc["matrix"][0][0][0] = 0.6;
    doc["matrix"][3][3][0] = 0.5;
    doc["matrix"][0][3][0] = 0.7; // large coherence makes the matrix non-PSD
    doc["matrix"][3][0][0] = 0.7;
    {
        std::ofstream out(state);
        out << doc.dump(2);
    }
    CHECK(run_cli("compute --state " + state.string() + " --quantity discord --seed 1") == 2);
}

TEST_CASE("compute rejects unknown quantities with exit 4") {
    const fs::path state = work_dir / "w.json";
    save_state(werner(0.3), state.string());
    CHECK(run_cli("compute --state " + state.string() + " --quantity entanglement --seed 1") ==
          4);
}

TEST_CASE("reports embed schema, version, config and seed") {
    const fs::path state = work_dir / "w2.json";
    save_state(werner(0.2), state.string());
    const fs::path report = work_dir / "w2.jsonl";
    REQUIRE(run_cli("compute --state " + state.string() +
                    " --quantity discord --seed 11 --out " + report.string()) == 0);
    std::ifstream in(report);
    std::string line;
    REQUIRE(std::getline(in, line));
    const nlohmann::json header = nlohmann::json::parse(line);
    CHECK(header.at("record") == "header");
    CHECK(header.at("schema") == "qcorr.report/1");
    CHECK(header.at("tool_version").is_string());
    CHECK(header.at("seed") == 11);
    CHECK(header.at("config").contains("quantity"));
    REQUIRE(std::getline(in, line));
    const nlohmann::json record = nlohmann::json::parse(line);
    CHECK(record.at("record") == "case");
    CHECK(record.contains("provenance"));
    CHECK(record.contains("diagnostics"));
}

TEST_CASE("identical seeds reproduce byte-identical reports") {
    const fs::path state = work_dir / "g.json";
    save_state(ginibre_mixed({2, 2}, 4, 3), state.string());
    const fs::path a = work_dir / "a.jsonl";
    const fs::path b = work_dir / "b.jsonl";
    REQUIRE(run_cli("compute --state " + state.string() + " --quantity discord --seed 5 --out " +
                    a.string()) == 0);
    REQUIRE(run_cli("compute --state " + state.string() + " --quantity discord --seed 5 --out " +
                    b.string()) == 0);
    const std::string left = slurp(a);
    CHECK(!left.empty());
    CHECK(left == slurp(b));
}

TEST_CASE("csv export mirrors the case records") {
    const fs::path report = work_dir / "rewriting.csv";
    REQUIRE(run_cli("verify --suite rewriting --count 5 --seed 3 --format csv --out " +
                    report.string()) == 0);
    std::ifstream in(report);
    std::string header_line;
    REQUIRE(std::getline(in, header_line));
    CHECK(header_line.find("residual") != std::string::npos);
    CHECK(header_line.find("status") != std::string::npos);
    int rows = 0;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 5);
}

TEST_CASE("verify rejects unknown suites with exit 4") {
    CHECK(run_cli("verify --suite thm3 --seed 1") == 4);
}

TEST_CASE("verify passes on a small rewriting ensemble") {
    CHECK(run_cli("verify --suite rewriting --count 10 --dims 2x3 --seed 5") == 0);
}

TEST_CASE("random generates a reproducible werner sweep") {
    const fs::path dir_a = work_dir / "sweep_a";
    const fs::path dir_b = work_dir / "sweep_b";
    REQUIRE(run_cli("random --kind werner --count 11 --seed 9 --out " + dir_a.string()) == 0);
    REQUIRE(run_cli("random --kind werner --count 11 --seed 9 --out " + dir_b.string()) == 0);

    int files = 0;
    for (const auto& entry : fs::directory_iterator(dir_a))
        if (entry.path().extension() == ".json" &&
            entry.path().filename() != "manifest.json")
            ++files;
    CHECK(files == 11);
    CHECK(slurp(dir_a / "manifest.json") == slurp(dir_b / "manifest.json"));
    CHECK(slurp(dir_a / "state_0003.json") == slurp(dir_b / "state_0003.json"));

    const nlohmann::json manifest = nlohmann::json::parse(slurp(dir_a / "manifest.json"));
    CHECK(manifest.at("count") == 11);
    CHECK(manifest.at("files").size() == 11);
    CHECK(std::abs(manifest.at("files")[10].at("p").get<double>() - 1.0) < 1e-12);

    // The sweep endpooints load back into valid states.
    const DensityMatrix p0 = load_state((dir_a / "state_0000.json").string());
    CHECK(max_abs_diff(p0.matrix(), Matrix::Identity(4, 4) / 4.0) < 1e-12);
}

TEST_CASE("random cq output passes the classicality test") {
    const fs::path dir = work_dir / "cq";
    REQUIRE(run_cli("random --kind cq --dims 2x2 --count 5 --seed 21 --out " + dir.string()) ==
            0);
    for (int i = 0; i < 5; ++i) {
        char name[32];
        std::snprintf(name, sizeof(name), "state_%04d.json", i);
        const DensityMatrix state = load_state((dir / name).string());
        CHECK(is_classical_quantum(state).classical);
    }
}

TEST_CASE("run-configuration files feed the optimizer") {
    const fs::path state = work_dir / "cfg_state.json";
    save_state(ginibre_mixed({2, 2}, 4, 8), state.string());
    const fs::path cfg = work_dir / "run.cfg";
    {
        std::ofstream out(cfg);
        out << "# optimizer settings\n"
            << "restarts = 4\n"
            << "max_iterations = 1500\n"
            << "tol = 1e-9\n"
            << "step_scale = 0.3\n"
            << "seed = 77\n";
    }
    const fs::path report = work_dir / "cfg.jsonl";
    REQUIRE(run_cli("compute --state " + state.string() + " --quantity discord --config " +
                    cfg.string() + " --out " + report.string()) == 0);
    std::ifstream in(report);
    std::string line;
    REQUIRE(std::getline(in, line));
    const nlohmann::json header = nlohmann::json::parse(line);
    CHECK(header.at("seed") == 77);
    CHECK(header.at("config").at("restarts") == 4);
    CHECK(header.at("config").at("max_iterations") == 1500);

    // Explicit flags win over the file.
    const fs::path report2 = work_dir / "cfg2.jsonl";
    REQUIRE(run_cli("compute --state " + state.string() + " --quantity discord --config " +
                    cfg.string() + " --seed 5 --restarts 3 --out " + report2.string()) == 0);
    std::ifstream in2(report2);
    REQUIRE(std::getline(in2, line));
    const nlohmann::json header2 = nlohmann::json::parse(line);
    CHECK(header2.at("seed") == 5);
    CHECK(header2.at("config").at("restarts") == 3);

    const fs::path bad = work_dir / "bad.cfg";
    {
        std::ofstream out(bad);
        out << "unknown_key = 3\n";
    }
    CHECK(run_cli("compute --state " + state.string() + " --quantity discord --config " +
                  bad.string()) == 2);
}

TEST_CASE("starved optimizers exit 3 but still write the report") {
    const fs::path state = work_dir / "starved.json";
    save_state(ginibre_mixed({2, 2}, 4, 12), state.string());
    const fs::path cfg = work_dir / "starved.cfg";
    {
        std::ofstream out(cfg);
        out << "max_iterations = 1\ntol = 1e-15\nrestarts = 2\n";
    }
    const fs::path report = work_dir / "starved.jsonl";
    CHECK(run_cli("compute --state " + state.string() + " --quantity discord --config " +
                  cfg.string() + " --seed 4 --out " + report.string()) == 3);
    const nlohmann::json summary = last_record(report);
    CHECK(summary.at("record") == "summary");
    CHECK(summary.at("converged") == false);
}

TEST_CASE("the oracle flag records the qubit grid gap") {
    const fs::path state = work_dir / "oracle_state.json";
    save_state(werner(0.6), state.string());
    const fs::path report = work_dir / "oracle.jsonl";
    REQUIRE(run_cli("compute --state " + state.string() +
                    " --quantity discord --seed 2 --oracle --out " + report.string()) == 0);
    std::ifstream in(report);
    std::string line, case_line;
    std::getline(in, line);
    std::getline(in, case_line);
    const nlohmann::json record = nlohmann::json::parse(case_line);
    REQUIRE(record.contains("oracle_gap"));
    CHECK(record.at("oracle_gap").get<double>() <= 1e-5);
}

TEST_CASE("the default povm computation sweeps the extension dims") {
    const fs::path state = work_dir / "povm.json";
    save_state(ginibre_mixed({2, 2}, 4, 14), state.string());
    const fs::path report = work_dir / "povm.jsonl";
    REQUIRE(run_cli("compute --state " + state.string() +
                    " --quantity povm-discord --seed 6 --restarts 8 --out " + report.string()) ==
            0);
    std::ifstream in(report);
    std::string line, case_line;
    std::getline(in, line);
    std::getline(in, case_line);
    const nlohmann::json record = nlohmann::json::parse(case_line);
    REQUIRE(record.contains("sweep"));
    CHECK(record.at("sweep").size() == 3); // dims 2, 3, 4
    double best = 1e300;
    for (const auto& entry : record.at("sweep"))
        best = std::min(best, entry.at("value").get<double>());
    CHECK(record.at("value").get<double>() == best);
}

TEST_CASE("random rejects invalid parameters with exit 2") {
    CHECK(run_cli("random --kind nonsense --count 2 --seed 1 --out " +
                  (work_dir / "x").string()) == 2);
    CHECK(run_cli("random --kind ginibre --dims 2x2 --rank 9 --count 1 --seed 1 --out " +
                  (work_dir / "y").string()) == 2);
}
