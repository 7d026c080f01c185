#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/stat.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gloss/csv_io.hpp"

using namespace gloss;

namespace {

struct TempDir {
    std::string path;
    std::vector<std::string> files;
    TempDir() : path("/tmp/gloss_cli_" + std::to_string(getpid())) { mkdir(path.c_str(), 0755); }
    ~TempDir() {
        for (const auto& f : files) std::remove(f.c_str());
        rmdir(path.c_str());
    }
    std::string file(const std::string& name) {
        files.push_back(path + "/" + name);
        return files.back();
    }
};

int run(const std::string& args, const std::string& stderr_file = "/dev/null") {
    const std::string cmd = std::string(GLOSS_CLI_PATH) + " " + args +
                            " > /dev/null 2> \"" + stderr_file + "\"";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    REQUIRE(WIFEXITED(status));
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

std::size_t line_count(const std::string& text) {
    std::size_t n = 0;
    for (const char c : text) n += c == '\n' ? 1 : 0;
    return n;
}

} // namespace

TEST_CASE("exit codes: help, usage errors, data errors") {
    CHECK(run("--help") == 0);
    CHECK(run("") == 1);                      // a subcommand is required
    CHECK(run("detect") == 1);                // missing required flags
    CHECK(run("frobnicate") == 1);            // unknown subcommand
    TempDir dir;
    CHECK(run("detect --algo nonsense -i x.csv -o " + dir.file("s.csv")) == 1);
    CHECK(run("detect -i /nonexistent.csv -o " + dir.file("s2.csv") +
              " --subspaces /also-missing.json") == 2);

    const std::string bad = dir.file("bad.csv");
    std::ofstream(bad) << "a,b\n1,oops\n";
    CHECK(run("detect -i " + bad + " -o " + dir.file("s3.csv") + " --algo lof") == 2);
}

TEST_CASE("generate: deterministic file with labels and a provenance sidecar") {
    TempDir dir;
    const std::string data_path = dir.file("gen.csv");
    dir.file("gen.csv.meta.json");
    CHECK(run("generate --n 80 --d 6 --clusters 2 --outliers 8 --seed 3 -o " + data_path) == 0);

    CsvOptions opts;
    opts.id_column = "id";
    opts.label_column = "outlier";
    const Dataset data = load_csv(data_path, opts);
    CHECK(data.n() == 80);
    CHECK(data.dims() == 6);
    REQUIRE(data.labels.has_value());
    CHECK(data.labels->count() == 8);

    std::ifstream meta(data_path + ".meta.json");
    REQUIRE(meta.good());
    const nlohmann::json j = nlohmann::json::parse(meta);
    CHECK(j["n"] == 80);
    CHECK(j["dims"] == 6);
    CHECK(j["seed"] == 3);

    const std::string again = dir.file("gen2.csv");
    dir.file("gen2.csv.meta.json");
    CHECK(run("generate --n 80 --d 6 --clusters 2 --outliers 8 --seed 3 -o " + again) == 0);
    CHECK(slurp(again) == slurp(data_path));
}

TEST_CASE("an omitted seed is drawn and echoed for reproduction") {
    TempDir dir;
    const std::string err = dir.file("stderr.txt");
    const std::string out = dir.file("gen.csv");
    dir.file("gen.csv.meta.json");
    CHECK(run("generate --n 30 --d 4 --outliers 0 -o " + out, err) == 0);
    CHECK(slurp(err).find("seed: ") != std::string::npos);
}

TEST_CASE("search: ranked subspace JSON, optional contrast report, reproducible") {
    TempDir dir;
    const std::string data_path = dir.file("gen.csv");
    dir.file("gen.csv.meta.json");
    REQUIRE(run("generate --n 120 --d 6 --clusters 2 --outliers 10 --seed 4 -o " + data_path) ==
            0);

    const std::string subs_path = dir.file("subs.json");
    const std::string contrast_path = dir.file("contrast.csv");
    CHECK(run("search -i " + data_path + " -o " + subs_path + " --mode hics --seed 2 -M 20" +
              " --contrast-csv " + contrast_path) == 0);

    const auto subs = load_subspaces_json(subs_path, 6);
    CHECK(!subs.empty());
    CHECK(subs.size() <= 100);
    for (const auto& s : subs) CHECK(s.size() >= 2); // paired mode starts at pairs

    const std::string contrast = slurp(contrast_path);
    CHECK(contrast.rfind("subspace,contrast\n", 0) == 0);
    CHECK(line_count(contrast) == subs.size() + 1);

    const std::string subs2 = dir.file("subs2.json");
    CHECK(run("search -i " + data_path + " -o " + subs2 + " --mode hics --seed 2 -M 20") == 0);
    CHECK(slurp(subs2) == slurp(subs_path));
}

TEST_CASE("detect: every algorithm writes one score per point") {
    TempDir dir;
    const std::string data_path = dir.file("gen.csv");
    dir.file("gen.csv.meta.json");
    REQUIRE(run("generate --n 90 --d 5 --clusters 2 --outliers 9 --seed 6 -o " + data_path) == 0);

    for (const std::string algo : {"gloss", "hics", "lof", "loop", "local-loop"}) {
        const std::string out = dir.file("scores_" + algo + ".csv");
        CHECK(run("detect -i " + data_path + " -o " + out + " --algo " + algo +
                  " -k 10 --seed 1 -M 10") == 0);
        const std::string text = slurp(out);
        CHECK(text.rfind("point_id,score\n", 0) == 0);
        CHECK(line_count(text) == 91);
    }
}

TEST_CASE("detect: an explicit subspace list bypasses the search") {
    TempDir dir;
    const std::string data_path = dir.file("gen.csv");
    dir.file("gen.csv.meta.json");
    REQUIRE(run("generate --n 70 --d 6 --clusters 2 --outliers 7 --seed 8 -o " + data_path) == 0);

    const std::string subs_path = dir.file("subs.json");
    std::ofstream(subs_path) << "[[0,1],[2,3],[4,5]]\n";

    const std::string details = dir.file("details.csv");
    const std::string matrix = dir.file("matrix.csv");
    const std::string knn = dir.file("knn.csv");
    const std::string out = dir.file("scores.csv");
    CHECK(run("detect -i " + data_path + " -o " + out + " --subspaces " + subs_path +
              " --details " + details + " --score-matrix " + matrix + " --knn-dump " + knn +
              " -k 10 --seed 1") == 0);

    CHECK(slurp(details).rfind("point_id,aggregate_score,best_subspace\n", 0) == 0);
    CHECK(slurp(matrix).rfind("point_id,0|1,2|3,4|5\n", 0) == 0);
    CHECK(slurp(knn).rfind("point_id,rank,neighbor_id,distance\n", 0) == 0);
    CHECK(line_count(slurp(knn)) == 1 + 70 * 10);
}

TEST_CASE("detect: reruns and thread counts do not change a seeded result") {
    TempDir dir;
    const std::string data_path = dir.file("gen.csv");
    dir.file("gen.csv.meta.json");
    REQUIRE(run("generate --n 100 --d 6 --clusters 3 --outliers 10 --seed 9 -o " + data_path) ==
            0);

    const std::string a = dir.file("a.csv");
    const std::string b = dir.file("b.csv");
    const std::string c = dir.file("c.csv");
    CHECK(run("detect -i " + data_path + " -o " + a + " --algo gloss -k 10 --seed 17 -M 20") == 0);
    CHECK(run("detect -i " + data_path + " -o " + b + " --algo gloss -k 10 --seed 17 -M 20") == 0);
    CHECK(run("detect -i " + data_path + " -o " + c +
              " --algo gloss -k 10 --seed 17 -M 20 --threads 1") == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(slurp(a) == slurp(c));
}

TEST_CASE("evaluate: matrix JSON in, report with mean rows out") {
    TempDir dir;
    const std::string matrix_path = dir.file("matrix.json");
    {
        nlohmann::json j;
        j["algorithms"] = {"lof", "loop"};
        j["seeds"] = {1, 2};
        j["k"] = 8;
        j["output_dir"] = dir.path;
        j["datasets"] = nlohmann::json::array(
            {{{"id", "blob"},
              {"synth",
               {{"n", 100}, {"dims", 4}, {"n_clusters", 2}, {"n_outliers", 10}}}}});
        std::ofstream(matrix_path) << j.dump(1);
    }
    for (const std::string algo : {"lof", "loop"})
        for (const std::string seed : {"1", "2"})
            dir.file("roc_" + algo + "_blob_" + seed + ".csv");

    const std::string report_path = dir.file("report.csv");
    CHECK(run("evaluate -m " + matrix_path + " -o " + report_path) == 0);

    const std::string report = slurp(report_path);
    CHECK(report.rfind("algorithm,config_id,seed,auc,runtime_seconds\n", 0) == 0);
    CHECK(line_count(report) == 7); // header + 2 algos * (2 cells + 1 mean row)
    CHECK(report.find("lof,blob,mean,") != std::string::npos);
    CHECK(report.find("loop,blob,mean,") != std::string::npos);
    for (const std::string algo : {"lof", "loop"}) {
        std::ifstream roc(dir.path + "/roc_" + algo + "_blob_1.csv");
        CHECK(roc.good());
    }
}
