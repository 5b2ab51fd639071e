#include "doctest.h"

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include "embias/bias.hpp"
#include "embias/manifest.hpp"
#include "embias/sha256.hpp"
#include "fixture_corpus.hpp"
#include "test_support.hpp"

using namespace embias;
namespace fs = std::filesystem;

namespace {

/// Runs the installed binary, returns its exit code. Output is captured
/// into `log` when given, discarded otherwise.
int embias_cli(const std::string& args, const fs::path& log = {}) {
    std::string cmd = std::string(EMBIAS_BIN_PATH) + " " + args;
    if (log.empty()) {
        cmd += " >/dev/null 2>&1";
    } else {
        cmd += " >" + log.string() + " 2>&1";
    }
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    REQUIRE(WIFEXITED(status));
    return WEXITSTATUS(status);
}

std::string q(const fs::path& p) { return p.string(); }

/// Shared pipeline fixture: corpus, term files, and two trained spaces
/// (d=12 and d=16) in one temp directory. Built once; the CLI tests
/// exercise different subcommands against it.
struct Pipeline {
    test::TempDir dir;
    fs::path corpus = dir.file("corpus.txt");
    fs::path pairs = dir.file("pairs.txt");
    fs::path professions = dir.file("professions.txt");
    fs::path emb12 = dir.file("c12.emb");
    fs::path emb16 = dir.file("c16.emb");
    fs::path report12 = dir.file("report12.json");
    fs::path report16 = dir.file("report16.json");

    Pipeline() {
        test::write_file(corpus, test::fixture_corpus_text(120000, 11));
        std::string pair_lines;
        for (const auto& [a, b] : test::fixture_gender_pairs())
            pair_lines += a + " " + b + "\n";
        test::write_file(pairs, pair_lines);
        std::string prof_lines;
        for (const auto& p : test::fixture_professions())
            prof_lines += p.name + "\n";
        test::write_file(professions, prof_lines);

        REQUIRE(embias_cli("train --corpus " + q(corpus) +
                           " --dim 12 --epochs 2 --subsample 0 --min-count 2"
                           " --seed 7 --out " + q(emb12)) == 0);
        REQUIRE(embias_cli("train --corpus " + q(corpus) +
                           " --dim 16 --epochs 2 --subsample 0 --min-count 2"
                           " --seed 7 --out " + q(emb16)) == 0);
        REQUIRE(embias_cli("bias --embeddings " + q(emb12) + " --pairs " + q(pairs) +
                           " --neutral " + q(professions) + " --out " + q(report12)) == 0);
        REQUIRE(embias_cli("bias --embeddings " + q(emb16) + " --pairs " + q(pairs) +
                           " --neutral " + q(professions) + " --out " + q(report16)) == 0);
    }
};

Pipeline& pipeline() {
    static Pipeline p;
    return p;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("usage errors exit 1, data errors exit 2") {
    test::TempDir dir;
    CHECK(embias_cli("--help") == 0);
    CHECK(embias_cli("--version") == 0);
    CHECK(embias_cli("") == 1);                  // subcommand required
    CHECK(embias_cli("frobnicate") == 1);        // unknown subcommand
    CHECK(embias_cli("train --bogus x") == 1);   // unknown flag
    CHECK(embias_cli("train --corpus a.txt --out b.emb") == 1);  // --seed required
    CHECK(embias_cli("bias --embeddings " + q(dir.file("nope.emb")) +
                     " --pairs p --neutral n --out r.json") == 2);
    test::write_file(dir.file("c.txt"), "only one line of text here\n");
    // min_count 5 on a six-token corpus leaves nothing.
    CHECK(embias_cli("train --corpus " + q(dir.file("c.txt")) + " --seed 1 --out " +
                     q(dir.file("o.emb"))) == 2);
}

TEST_CASE("train writes the space, sidecar, and manifest") {
    auto& p = pipeline();
    CHECK(fs::exists(p.emb12));
    CHECK(fs::exists(fs::path(p.emb12.string() + ".meta.json")));
    const fs::path manifest_path(p.emb12.string() + ".manifest.json");
    REQUIRE(fs::exists(manifest_path));

    const auto manifest = RunManifest::from_json(test::read_file(manifest_path));
    CHECK(manifest.command == "train");
    CHECK(manifest.seeds == std::vector<std::uint64_t>{7});
    CHECK(manifest.args.at("dim") == "12");
    CHECK(manifest.args.at("subsample") == "0");
    CHECK(manifest.tool_version.find("0.") != std::string::npos);
    CHECK(manifest.input_hashes.at(p.corpus.string()) ==
          sha256_file_hex(p.corpus));
}

TEST_CASE("train is byte-reproducible for a fixed seed") {
    auto& p = pipeline();
    test::TempDir dir;
    const fs::path again = dir.file("again.emb");
    REQUIRE(embias_cli("train --corpus " + q(p.corpus) +
                       " --dim 12 --epochs 2 --subsample 0 --min-count 2"
                       " --seed 7 --out " + q(again)) == 0);
    CHECK(test::read_file(again) == test::read_file(p.emb12));

    const fs::path other = dir.file("other.emb");
    REQUIRE(embias_cli("train --corpus " + q(p.corpus) +
                       " --dim 12 --epochs 2 --subsample 0 --min-count 2"
                       " --seed 8 --out " + q(other)) == 0);
    CHECK(test::read_file(other) != test::read_file(p.emb12));
}

TEST_CASE("bias reports parse and re-running is byte-identical") {
    auto& p = pipeline();
    const auto report = BiasReport::load(p.report12);
    CHECK(report.direct_bias >= 0.0);
    CHECK(report.direct_bias <= 1.0);
    CHECK(report.space_meta.dimension == 12);
    CHECK(!report.word_biases.empty());

    test::TempDir dir;
    const fs::path again = dir.file("again.json");
    REQUIRE(embias_cli("bias --embeddings " + q(p.emb12) + " --pairs " + q(p.pairs) +
                       " --neutral " + q(p.professions) + " --out " + q(again)) == 0);
    CHECK(test::read_file(again) == test::read_file(p.report12));

    const auto manifest = RunManifest::from_json(
        test::read_file(fs::path(again.string() + ".manifest.json")));
    CHECK(manifest.command == "bias");
    // The embedding, its sidecar, and both term files are all pinned.
    CHECK(manifest.input_hashes.size() == 4);
}

TEST_CASE("tau subcommand emits the rank matrix CSV") {
    auto& p = pipeline();
    test::TempDir dir;
    const fs::path out = dir.file("tau.csv");
    REQUIRE(embias_cli("tau --reports " + q(p.report12) + " " + q(p.report16) +
                       " --out " + q(out)) == 0);
    const std::string csv = test::read_file(out);
    CHECK(csv.rfind("label_a,label_b,tau,common_terms\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);  // header + 2x2
    CHECK(fs::exists(fs::path(out.string() + ".manifest.json")));

    CHECK(embias_cli("tau --reports " + q(p.report12) + " --out " + q(out)) == 2);
}

TEST_CASE("density subcommand bins one report") {
    auto& p = pipeline();
    test::TempDir dir;
    const fs::path out = dir.file("density.csv");
    REQUIRE(embias_cli("density --report " + q(p.report12) + " --out " + q(out)) == 0);
    const std::string csv = test::read_file(out);
    CHECK(csv.rfind("bin_lo,bin_hi,count,mass\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 65);  // header + 64 bins
}

TEST_CASE("sweep subcommand accepts repeated and comma-joined paths") {
    auto& p = pipeline();
    test::TempDir dir;
    const fs::path out = dir.file("sweep.csv");
    REQUIRE(embias_cli("sweep --embeddings " + q(p.emb12) + " " + q(p.emb16) +
                       " --pairs " + q(p.pairs) + " --neutral " + q(p.professions) +
                       " --out " + q(out)) == 0);
    const std::string csv = test::read_file(out);
    CHECK(csv.rfind("corpus,dimension,direct_bias\n", 0) == 0);
    CHECK(csv.find("corpus,12,") != std::string::npos);
    CHECK(csv.find("corpus,16,") != std::string::npos);

    const fs::path out2 = dir.file("sweep2.csv");
    REQUIRE(embias_cli("sweep --embeddings " + q(p.emb12) + "," + q(p.emb16) +
                       " --pairs " + q(p.pairs) + " --neutral " + q(p.professions) +
                       " --out " + q(out2)) == 0);
    CHECK(test::read_file(out2) == csv);
}

TEST_CASE("bootstrap subcommand writes result and manifest") {
    auto& p = pipeline();
    test::TempDir dir;
    const fs::path out = dir.file("boot.json");
    REQUIRE(embias_cli("bootstrap --embeddings " + q(p.emb12) + " --pairs " + q(p.pairs) +
                       " --neutral " + q(p.professions) +
                       " --replicates 50 --seed 9 --out " + q(out)) == 0);
    const fs::path manifest_path(out.string() + ".manifest.json");
    REQUIRE(fs::exists(manifest_path));
    const auto manifest = RunManifest::from_json(test::read_file(manifest_path));
    CHECK(manifest.command == "bootstrap");
    CHECK(manifest.seeds == std::vector<std::uint64_t>{9});

    const fs::path again = dir.file("boot2.json");
    REQUIRE(embias_cli("bootstrap --embeddings " + q(p.emb12) + " --pairs " + q(p.pairs) +
                       " --neutral " + q(p.professions) +
                       " --replicates 50 --seed 9 --out " + q(again)) == 0);
    CHECK(test::read_file(again) == test::read_file(out));
}

TEST_CASE("compare subcommand prints p_value and honors --out") {
    auto& p = pipeline();
    test::TempDir dir;
    const fs::path log = dir.file("log.txt");
    const fs::path out = dir.file("cmp.json");
    REQUIRE(embias_cli("compare --a " + q(p.emb12) + " --b " + q(p.emb16) +
                       " --pairs " + q(p.pairs) + " --neutral " + q(p.professions) +
                       " --replicates 40 --seed 4 --out " + q(out), log) == 0);
    CHECK(test::read_file(log).rfind("p_value ", 0) == 0);
    CHECK(fs::exists(out));
    CHECK(fs::exists(fs::path(out.string() + ".manifest.json")));
}

TEST_CASE("random-cos measures every space with one sample seed") {
    auto& p = pipeline();
    test::TempDir dir;
    const fs::path out = dir.file("rc.csv");
    REQUIRE(embias_cli("random-cos --embeddings " + q(p.emb12) + " " + q(p.emb16) +
                       " --pairs 200 --seed 5 --out " + q(out)) == 0);
    const std::string csv = test::read_file(out);
    CHECK(csv.rfind("label,dimension,avg_abs_cosine,pairs\n", 0) == 0);
    CHECK(csv.find(",12,") != std::string::npos);
    CHECK(csv.find(",16,") != std::string::npos);
    CHECK(csv.find(",200\n") != std::string::npos);
}

TEST_CASE("convert composed with its inverse is the identity") {
    auto& p = pipeline();
    test::TempDir dir;
    const fs::path as_bin = dir.file("x.bin");
    const fs::path as_txt = dir.file("x.txt");
    const fs::path back_bin = dir.file("y.bin");
    REQUIRE(embias_cli("convert --input " + q(p.emb12) + " --output " + q(as_bin)) == 0);
    REQUIRE(embias_cli("convert --input " + q(as_bin) + " --output " + q(as_txt)) == 0);
    REQUIRE(embias_cli("convert --input " + q(as_txt) + " --output " + q(back_bin)) == 0);
    CHECK(test::read_file(back_bin) == test::read_file(as_bin));
}

TEST_CASE("validate accepts every pipeline artifact and rejects junk") {
    auto& p = pipeline();
    test::TempDir dir;
    const fs::path log = dir.file("log.txt");
    CHECK(embias_cli("validate " + q(p.emb12) + " " + q(p.report12) + " " +
                     q(fs::path(p.emb12.string() + ".manifest.json")), log) == 0);
    const std::string out = test::read_file(log);
    CHECK(out.find("OK native embedding") != std::string::npos);
    CHECK(out.find("OK bias report") != std::string::npos);
    CHECK(out.find("OK manifest") != std::string::npos);

    test::write_file(dir.file("junk.json"), "{not json");
    CHECK(embias_cli("validate " + q(dir.file("junk.json"))) == 2);
    test::write_file(dir.file("ragged.csv"), "a,b\n1,2,3\n");
    CHECK(embias_cli("validate " + q(dir.file("ragged.csv"))) == 2);
}

}  // TEST_SUITE
