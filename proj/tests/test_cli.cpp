/*
 * Copyright 2026 the otalearn authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "doctest.h"

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "otalearn/cli.hpp"
#include "otalearn/serialize.hpp"

#include "support.hpp"

using namespace otal;
using otal::test::fig_automaton;

namespace {

const std::string kFig = std::string(OTA_FIXTURE_DIR) + "/fig1.json";

struct CliRun {
    int code = 0;
    std::string out;
    std::string err;
};

CliRun cli(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    CliRun r;
    r.code = run_cli(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// A scratch directory, unique per test run, removed on destruction.
struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("otalearn-cli-" + std::to_string(::getpid()) + "-" +
                std::to_string(counter()++));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
    static int& counter() {
        static int n = 0;
        return n;
    }
};

} // namespace

TEST_CASE("usage errors exit with 2") {
    CHECK(cli({}).code == 2);
    CHECK(cli({"bogus"}).code == 2);
    CHECK(cli({"member", kFig}).code == 2);              // --word missing
    CHECK(cli({"learn", "--target", kFig}).code == 2);   // --mode missing
    CHECK(cli({"equiv", kFig}).code == 2);
}

TEST_CASE("member classifies words") {
    CHECK(cli({"member", kFig, "--word", "(a,1.1)"}).out == "+\n");
    CHECK(cli({"member", kFig, "--word", "(b,0)"}).out == "-\n");
    CHECK(cli({"member", kFig, "--word", "(a,3)"}).out == "x\n");
    CHECK(cli({"member", kFig, "--word", "(a,3)", "--no-trick"}).out == "-\n");
    CHECK(cli({"member", kFig, "--word", "(a,1.1)(b,0.9)", "--kind", "delay"}).out == "+\n");
    CHECK(cli({"member", kFig, "--word", "(a,1.1,N)(b,2,R)", "--kind", "reset-logical"}).out ==
          "+\n");

    CliRun bad = cli({"member", kFig, "--word", "(a,oops)"});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("error:") == 0);

    CliRun kind = cli({"member", kFig, "--word", "(a,1.1,N)", "--kind", "delay"});
    CHECK(kind.code == 2);
}

TEST_CASE("equiv reports both answers") {
    CHECK(cli({"equiv", kFig, kFig}).code == 0);
    CHECK(cli({"equiv", kFig, kFig}).out == "equivalent\n");

    TempDir dir;
    Ota other = fig_automaton();
    other.accepting = {0};
    std::ofstream(dir.file("other.json")) << automaton_to_json(other);

    CliRun r = cli({"equiv", kFig, dir.file("other.json")});
    CHECK(r.code == 1);
    CHECK(r.out.find("equivalent") == std::string::npos);

    CliRun w = cli({"equiv", kFig, dir.file("other.json"), "--witness"});
    CHECK(w.code == 1);
    CHECK(w.out.find("accepted only by") != std::string::npos);
}

TEST_CASE("learn writes the hypothesis and the stats") {
    TempDir dir;
    for (std::string mode : {"smart", "normal"}) {
        CAPTURE(mode);
        CliRun r = cli({"learn", "--mode", mode, "--target", kFig, "--out",
                        dir.file(mode + ".json"), "--stats", dir.file(mode + "-stats.json")});
        REQUIRE(r.code == 0);

        Ota h = automaton_from_json(slurp(dir.file(mode + ".json")));
        CHECK(h.locations.size() == 3);   // two learned plus the trap
        bool loop = false;
        for (const auto& t : h.transitions) {
            if (t.action == "b" && t.source == t.target &&
                guard_text(t.guard) == "[2,4)" && h.accepting.count(t.source)) {
                loop = true;
            }
        }
        CHECK(loop);

        nlohmann::json stats = nlohmann::json::parse(slurp(dir.file(mode + "-stats.json")));
        CHECK(stats["mode"] == mode);
        CHECK(stats["locations_learned"] == 2);
        CHECK(stats["membership_count"].get<long long>() > 0);
        CHECK(stats["equivalence_count"].get<long long>() >= 5);
        if (mode == "normal") {
            CHECK(stats["explored_instances"].get<long long>() > 0);
            CHECK(stats["discarded_instances"].get<long long>() >= 0);
            CHECK(stats["cache_hits"].get<long long>() >= 0);
        } else {
            CHECK(!stats.contains("explored_instances"));
        }
    }
}

TEST_CASE("learn respects the instance budget") {
    TempDir dir;
    CliRun r = cli({"learn", "--mode", "normal", "--target", kFig, "--max-instances", "3",
                    "--out", dir.file("h.json"), "--stats", dir.file("s.json")});
    CHECK(r.code == 3);
    CHECK(r.err.find("error:") == 0);
}

TEST_CASE("generate is reproducible byte for byte") {
    TempDir a;
    TempDir b;
    for (const TempDir* d : {&a, &b}) {
        CliRun r = cli({"generate", "--locations", "4", "--alphabet", "3", "--kappa", "9",
                        "--seed", "21", "--count", "3", "--out", d->path.string()});
        REQUIRE(r.code == 0);
    }
    for (const char* name : {"target_000.json", "target_001.json", "target_002.json"}) {
        CHECK(slurp(a.file(name)) == slurp(b.file(name)));
    }
    nlohmann::json manifest = nlohmann::json::parse(slurp(a.file("manifest.json")));
    CHECK(manifest["count"] == 3);
    CHECK(manifest["files"].size() == 3);
}

TEST_CASE("bench aggregates a directory") {
    TempDir dir;
    REQUIRE(cli({"generate", "--locations", "3", "--alphabet", "2", "--kappa", "6", "--seed",
                 "5", "--count", "2", "--out", dir.path.string()})
                .code == 0);
    CliRun r = cli({"bench", "--dir", dir.path.string(), "--stats", dir.file("agg.json"),
                    "--mode", "smart"});
    REQUIRE(r.code == 0);

    nlohmann::json agg = nlohmann::json::parse(slurp(dir.file("agg.json")));
    CHECK(agg["mode"] == "smart");
    CHECK(agg["failed"] == 0);
    CHECK(agg["runs"].size() == 2);
    CHECK(agg["mean_membership"].get<double>() > 0.0);
}
