#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <sys/wait.h>

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(QMET_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    while (std::size_t got = fread(buf, 1, sizeof(buf), pipe)) out.append(buf, got);
    int status = pclose(pipe);
    int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return {code, out};
}

std::string preset(const std::string& name) {
    return std::string(QMET_PRESET_DIR) + "/" + name;
}

std::string write_temp(const std::string& name, const std::string& content) {
    std::string path = "/tmp/qmet_test_" + name;
    std::ofstream out(path);
    out << content;
    return path;
}

} // namespace

TEST_CASE("analyze the ten-vertex preset") {
    RunResult r = run("analyze --input " + preset("fig1a.json"));
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"bound\": 26") != std::string::npos);
    CHECK(r.out.find("\"connected\": true") != std::string::npos);
}

TEST_CASE("search with a forced subset reproduces the worked protocol") {
    RunResult r = run("search --input " + preset("fig1a.json") + " --alpha C,F,I,J");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"qfi\": 24") != std::string::npos);
    CHECK(r.out.find("ZZXZZXZZYY") != std::string::npos);
    CHECK(r.out.find("\"attainable\": false") != std::string::npos);
}

TEST_CASE("search output is deterministic") {
    std::string args = "search --input " + preset("fig1a.json") + " --mode exhaustive --seed 5";
    RunResult a = run(args), b = run(args);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("malformed JSON exits 1 with a diagnostic") {
    std::string bad = write_temp("bad.json", "{\"n\": 3, \"edges\": [[0,");
    CHECK(run("analyze --input " + bad).exit_code == 1);
    CHECK(run("analyze --input /nonexistent.json").exit_code == 1);
}

TEST_CASE("exhaustive search above the size limit exits 2") {
    std::string edges;
    for (int i = 0; i < 25; ++i) {
        if (i) edges += ",";
        edges += "[" + std::to_string(i) + "," + std::to_string((i + 1) % 25) + "]";
    }
    std::string big = write_temp("c25.json", "{\"n\": 25, \"edges\": [" + edges + "]}");
    CHECK(run("search --input " + big + " --mode exhaustive").exit_code == 2);
    CHECK(run("search --input " + big + " --mode greedy").exit_code == 0);
}

TEST_CASE("verify saturates on the worked protocol and fails when corrupted") {
    std::string base = "verify --input " + preset("fig1a.json") + " --alpha C,F,I,J";
    RunResult good = run(base + " --theta 0 0.3 1.0");
    CHECK(good.exit_code == 0);
    CHECK(good.out.find("\"saturated\": true") != std::string::npos);

    // all-X measurement commutes with the X drive terms: condition broken
    RunResult bad = run(base + " --measurement XXXXXXXXXX");
    CHECK(bad.exit_code == 3);
    CHECK(bad.out.find("\"saturated\": false") != std::string::npos);
}

TEST_CASE("protocol2 reports the subspace extremes") {
    RunResult r = run("protocol2 --partition " + preset("k333.json"));
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"qfi\": 81.0") != std::string::npos);
    CHECK(r.out.find("\"r_min\": 0.1111") != std::string::npos);

    std::string bad = write_temp("badpart.json", "{\"n\": 3, \"blocks\": [[0,1],[2]]}");
    CHECK(run("protocol2 --partition " + bad).exit_code == 1);
}

TEST_CASE("noise sweep presets") {
    RunResult r = run("noise --input " + preset("fig3b.json") + " --format csv");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("probe_id,n,p,theta,f_dap,method") != std::string::npos);
    CHECK(r.out.find("separable,9,") != std::string::npos);

    std::string bad = write_temp(
        "badnoise.json",
        "{\"probes\":[{\"id\":\"g\",\"kind\":\"ghz\"}],\"p_grid\":[1.5],\"n_grid\":[4]}");
    CHECK(run("noise --input " + bad).exit_code == 1);
}

TEST_CASE("construct rejects rule violations and short scaling grids") {
    std::string ybad = write_temp("ybad.json",
                                  R"({"meta": {"type": "B",
        "meta_edges": [[0,1],[1,2],[2,3],[3,0]],
        "assignment": [{"kind":"s1","size":2},{"kind":"s3","size":4},
                       {"kind":"s3","size":4},{"kind":"s1","size":2}],
        "meta_stabilizer": "YZZY"}})");
    CHECK(run("construct --input " + ybad).exit_code == 1);

    std::string short_fit = write_temp(
        "short.json", "{\"scaling\": {\"builder\": \"star\", \"n_values\": [6, 8]}}");
    CHECK(run("construct --input " + short_fit).exit_code == 1);
}

TEST_CASE("csv is refused where there is no table") {
    CHECK(run("analyze --input " + preset("fig1a.json") + " --format csv").exit_code == 1);
}
