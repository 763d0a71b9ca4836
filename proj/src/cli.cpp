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

#include "otalearn/cli.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "otalearn/equivalence.hpp"
#include "otalearn/errors.hpp"
#include "otalearn/generator.hpp"
#include "otalearn/learner.hpp"
#include "otalearn/serialize.hpp"
#include "otalearn/teacher.hpp"

namespace otal {
namespace {

namespace fs = std::filesystem;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read " + path, 0);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write " + path, 0);
    out << content;
    if (!out) throw ParseError("cannot write " + path, 0);
}

struct LearnArgs {
    std::string mode;
    std::string target;
    std::string out;
    std::string stats;
    bool no_trick = false;
    bool evidence = false;
    long long seed = 0;
    long long max_instances = 1000000;
};

int do_learn(const LearnArgs& a, std::ostream& out) {
    Ota target = automaton_from_json(read_file(a.target));
    Teacher teacher(target, !a.no_trick);
    LearnResult result;
    if (a.mode == "smart") {
        result = learn_smart(teacher);
    } else {
        NormalOptions options;
        options.trick = !a.no_trick;
        options.evidence_closed = a.evidence;
        options.max_explored = a.max_instances;
        options.max_resident = a.max_instances;
        result = learn_normal(teacher, options);
    }
    std::string doc = automaton_to_json(result.hypothesis);
    if (a.out.empty())
        out << doc;
    else
        write_file(a.out, doc);
    std::string stats = stats_to_json(result.stats);
    if (a.stats.empty())
        out << stats;
    else
        write_file(a.stats, stats);
    return 0;
}

struct EquivArgs {
    std::string first;
    std::string second;
    bool witness = false;
};

int do_equiv(const EquivArgs& a, std::ostream& out) {
    Ota first = automaton_from_json(read_file(a.first));
    Ota second = automaton_from_json(read_file(a.second));
    EquivResult r = check_equivalence(first, second);
    if (r.equivalent) {
        out << "equivalent\n";
        return 0;
    }
    out << word_text(r.witness) << "\n";
    if (a.witness)
        out << (r.sign == '-' ? "accepted only by the first automaton\n"
                              : "accepted only by the second automaton\n");
    return 1;
}

struct MemberArgs {
    std::string file;
    std::string word;
    std::string kind = "delay";
    bool no_trick = false;
};

int do_member(const MemberArgs& a, std::ostream& out) {
    Ota target = complete(automaton_from_json(read_file(a.file)));
    WordKind kind = parse_word_kind(a.kind);
    bool trick = !a.no_trick;
    Verdict v;
    if (kind == WordKind::delay) {
        v = run_delay(target, parse_plain_word(a.word), trick).verdict;
    } else if (kind == WordKind::logical) {
        v = run_logical(target, parse_plain_word(a.word), trick).verdict;
    } else {
        // A reset-annotated word claims a specific run.  It holds only when
        // the automaton makes the same reset choices.
        ResetDelayWord w = parse_reset_word(a.word);
        if (kind == WordKind::reset_delay) {
            DelayRun run = run_delay(target, project_delay(w), trick);
            v = run.annotated == w ? run.verdict : Verdict::reject;
        } else {
            LogicalRun run = run_logical(target, project(w), trick);
            v = run.annotated == w ? run.verdict : Verdict::reject;
        }
    }
    out << verdict_char(v) << "\n";
    return 0;
}

struct GenerateArgs {
    long long locations = 4;
    long long alphabet = 4;
    long long kappa = 20;
    long long seed = 1;
    long long count = 1;
    std::string out;
};

int do_generate(const GenerateArgs& a, std::ostream& out) {
    fs::create_directories(a.out);
    nlohmann::json manifest;
    manifest["locations"] = a.locations;
    manifest["alphabet"] = a.alphabet;
    manifest["kappa"] = a.kappa;
    manifest["seed"] = a.seed;
    manifest["count"] = a.count;
    nlohmann::json files = nlohmann::json::array();
    for (long long i = 0; i < a.count; ++i) {
        GeneratorConfig config;
        config.locations = static_cast<int>(a.locations);
        config.alphabet = static_cast<int>(a.alphabet);
        config.kappa = static_cast<int>(a.kappa);
        config.seed = static_cast<std::uint64_t>(a.seed + i);
        Ota target = generate_automaton(config);
        char name[32];
        std::snprintf(name, sizeof name, "target_%03lld.json", i);
        write_file((fs::path(a.out) / name).string(), automaton_to_json(target));
        files.push_back(name);
    }
    manifest["files"] = files;
    write_file((fs::path(a.out) / "manifest.json").string(),
               manifest.dump(2) + "\n");
    out << "wrote " << a.count << " automata to " << a.out << "\n";
    return 0;
}

struct BenchArgs {
    std::string dir;
    std::string stats;
    std::string mode = "smart";
    long long jobs = 1;
};

int do_bench(const BenchArgs& a, std::ostream& out) {
    std::vector<std::string> files;
    for (const auto& entry : fs::directory_iterator(a.dir)) {
        std::string name = entry.path().filename().string();
        if (name.rfind("target_", 0) == 0 && entry.path().extension() == ".json")
            files.push_back(entry.path().string());
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw ParseError("no target_*.json files in " + a.dir, 0);

    std::vector<LearnStats> stats(files.size());
    std::vector<std::string> failures(files.size());
    std::atomic<std::size_t> cursor{0};
    auto worker = [&]() {
        for (;;) {
            std::size_t i = cursor.fetch_add(1);
            if (i >= files.size()) return;
            try {
                Ota target = automaton_from_json(read_file(files[i]));
                Teacher teacher(target, true);
                LearnResult r;
                if (a.mode == "smart") {
                    r = learn_smart(teacher);
                } else {
                    NormalOptions options;
                    r = learn_normal(teacher, options);
                }
                EquivResult check =
                    check_equivalence(r.hypothesis, teacher.completed_target());
                if (!check.equivalent)
                    failures[i] = "hypothesis differs from target";
                stats[i] = r.stats;
            } catch (const OtaError& e) {
                failures[i] = e.what();
            }
        }
    };
    long long jobs = std::max(1LL, a.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (long long t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    nlohmann::json doc;
    doc["mode"] = a.mode;
    doc["targets"] = files.size();
    nlohmann::json runs = nlohmann::json::array();
    double mem_sum = 0, eq_sum = 0, loc_sum = 0, explored_sum = 0;
    long long failed = 0;
    for (std::size_t i = 0; i < files.size(); ++i) {
        nlohmann::json run;
        run["file"] = fs::path(files[i]).filename().string();
        if (!failures[i].empty()) {
            run["error"] = failures[i];
            ++failed;
        } else {
            run["stats"] = nlohmann::json::parse(stats_to_json(stats[i]));
            mem_sum += static_cast<double>(stats[i].membership_count);
            eq_sum += static_cast<double>(stats[i].equivalence_count);
            loc_sum += static_cast<double>(stats[i].locations_learned);
            if (stats[i].explored_instances >= 0)
                explored_sum += static_cast<double>(stats[i].explored_instances);
        }
        runs.push_back(run);
    }
    doc["runs"] = runs;
    doc["failed"] = failed;
    double ok = static_cast<double>(files.size() - static_cast<std::size_t>(failed));
    if (ok > 0) {
        doc["mean_membership"] = mem_sum / ok;
        doc["mean_equivalence"] = eq_sum / ok;
        doc["mean_locations"] = loc_sum / ok;
        if (a.mode == "normal") doc["mean_explored"] = explored_sum / ok;
    }
    write_file(a.stats, doc.dump(2) + "\n");
    out << "benchmarked " << files.size() << " targets, " << failed
        << " failed\n";
    return failed == 0 ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
    CLI::App app{"active learning of one-clock timed automata"};
    app.name("ota");
    app.require_subcommand(1);

    LearnArgs learn_args;
    CLI::App* learn = app.add_subcommand("learn", "learn a target automaton");
    learn->add_option("--mode", learn_args.mode, "smart or normal")
        ->required()
        ->check(CLI::IsMember({"smart", "normal"}));
    learn->add_option("--target", learn_args.target, "target automaton JSON")
        ->required();
    learn->add_flag("--no-trick", learn_args.no_trick,
                    "answer queries without the trap shortcut");
    learn->add_flag("--evidence-closed", learn_args.evidence,
                    "also keep tables evidence closed");
    learn->add_option("--out", learn_args.out, "hypothesis output file");
    learn->add_option("--stats", learn_args.stats, "statistics output file");
    learn->add_option("--seed", learn_args.seed, "reserved; accepted for scripts");
    learn->add_option("--max-instances", learn_args.max_instances,
                      "table instance budget in normal mode");

    EquivArgs equiv_args;
    CLI::App* equiv = app.add_subcommand("equiv", "compare two automata");
    equiv->add_option("first", equiv_args.first, "automaton JSON")->required();
    equiv->add_option("second", equiv_args.second, "automaton JSON")->required();
    equiv->add_flag("--witness", equiv_args.witness,
                    "explain which side accepts the witness");

    MemberArgs member_args;
    CLI::App* member = app.add_subcommand("member", "classify one timed word");
    member->add_option("file", member_args.file, "automaton JSON")->required();
    member->add_option("--word", member_args.word, "timed word")->required();
    member->add_option("--kind", member_args.kind,
                       "delay, logical, reset-delay, or reset-logical");
    member->add_flag("--no-trick", member_args.no_trick,
                     "report plain verdicts instead of trap exits");

    GenerateArgs generate_args;
    CLI::App* generate =
        app.add_subcommand("generate", "draw random target automata");
    generate->add_option("--locations", generate_args.locations, "location count")
        ->required();
    generate->add_option("--alphabet", generate_args.alphabet, "action count")
        ->required();
    generate->add_option("--kappa", generate_args.kappa, "largest guard constant")
        ->required();
    generate->add_option("--seed", generate_args.seed, "seed of the first file")
        ->required();
    generate->add_option("--count", generate_args.count, "number of automata")
        ->required();
    generate->add_option("--out", generate_args.out, "output directory")
        ->required();

    BenchArgs bench_args;
    CLI::App* bench = app.add_subcommand("bench", "learn a directory of targets");
    bench->add_option("--dir", bench_args.dir, "directory of target_*.json")
        ->required();
    bench->add_option("--stats", bench_args.stats, "aggregate output file")
        ->required();
    bench->add_option("--mode", bench_args.mode, "smart or normal")
        ->check(CLI::IsMember({"smart", "normal"}));
    bench->add_option("--jobs", bench_args.jobs, "parallel workers");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
        if (learn->parsed()) return do_learn(learn_args, out);
        if (equiv->parsed()) return do_equiv(equiv_args, out);
        if (member->parsed()) return do_member(member_args, out);
        if (generate->parsed()) return do_generate(generate_args, out);
        if (bench->parsed()) return do_bench(bench_args, out);
        err << "error: no subcommand\n";
        return 2;
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return 0;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    } catch (const ResourceLimit& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << " (offset " << e.offset() << ")\n";
        return 2;
    } catch (const OtaError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace otal
