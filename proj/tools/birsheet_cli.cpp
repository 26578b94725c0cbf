// birsheet: enumerate, verify and decide for simply connected classical groups.
//
// Exit codes: 0 ok, 2 usage or domain error, 3 verification failure, 4 undecided.

#include "birsheet/cache.hpp"
#include "birsheet/report.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using namespace birsheet;

namespace {

enum Exit { kOk = 0, kUsage = 2, kVerifyFailed = 3, kUndecided = 4 };

struct RunConfig {
    std::string group;
    std::string output = "json";
    std::string fixtures;
    std::string cache_dir;
    std::string parallelism = "auto";
    bool wide = false;
};

Exec apply_parallelism(const std::string& p) {
    if (p == "auto") return Exec::Parallel;
    int n = 0;
    try {
        std::size_t used = 0;
        n = std::stoi(p, &used);
        if (used != p.size()) n = 0;
    } catch (const std::exception&) {
    }
    if (n < 1) throw CLI::ValidationError("--parallelism", "expected a positive integer or auto");
    omp_set_num_threads(n);
    return n == 1 ? Exec::Serial : Exec::Parallel;
}

FixtureSet load_fixtures(const std::string& path) {
    if (path.empty()) return builtin_fixtures();
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Malformed, "cannot read fixture file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_fixtures(ss.str());
}

std::vector<int> parse_levi(const std::string& s) {
    std::vector<int> out;
    std::string tok;
    auto flush = [&] {
        if (tok.empty()) return;
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != tok.size()) throw Error(ErrorCode::Malformed, "bad simple-root number '" + tok + "'");
        out.push_back(v);
        tok.clear();
    };
    for (char c : s) {
        if (c == ',' || c == ' ' || c == '{' || c == '}')
            flush();
        else
            tok += c;
    }
    flush();
    return out;
}

void emit(const RunConfig& cfg, const nlohmann::ordered_json& j, const std::string& table) {
    std::cout << (cfg.output == "table" ? table : dump(j));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Birational sheets of simply connected classical groups"};
    app.require_subcommand(1);
    RunConfig cfg;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--group", cfg.group, "group, e.g. C3, Sp6, SL4, Spin7")->required();
        sub->add_option("--output", cfg.output, "json or table")->check(CLI::IsMember({"json", "table"}));
        sub->add_option("--fixtures", cfg.fixtures, "fixture file replacing the built-in one");
        sub->add_option("--cache-dir", cfg.cache_dir, "directory for cached W-class partitions");
        sub->add_option("--parallelism", cfg.parallelism, "worker count or auto");
        sub->add_flag("--wide", cfg.wide, "do not truncate table cells");
    };
    auto* enumerate = app.add_subcommand("enumerate", "pseudo-Levis, decomposition data and birational sheets");
    auto* verify = app.add_subcommand("verify", "partition check, transitivity suite and poset laws");
    auto* decide = app.add_subcommand("decide", "birationality of one induction from a standard Levi");
    add_common(enumerate);
    add_common(verify);
    add_common(decide);
    std::string levi, orbit = "trivial";
    decide->add_option("--levi", levi, "simple-root numbers of the Levi, e.g. \"2,3\"")->required();
    decide->add_option("--orbit", orbit, "orbit on the Levi factors, e.g. \"[2]x[1,1]\" or trivial");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        const Exec exec = apply_parallelism(cfg.parallelism);
        FixtureSet fixtures = load_fixtures(cfg.fixtures);
        const GroupSpec spec = parse_group_spec(cfg.group);
        if (spec.rank > kRankCap)
            throw Error(ErrorCode::CapExceeded, "rank " + std::to_string(spec.rank) + " exceeds the cap " + std::to_string(kRankCap));

        if (decide->parsed()) {
            BirationalEngine eng(spec.rank, std::move(fixtures));
            const auto d = run_decide(eng, spec, parse_levi(levi), orbit);
            emit(cfg, to_json(d), to_table(d, cfg.wide));
            return d.verdict.definite() ? kOk : kUndecided;
        }

        std::optional<std::filesystem::path> dir;
        if (!cfg.cache_dir.empty()) dir = cfg.cache_dir;
        const auto g = build_group(spec, exec, dir);
        BirationalEngine eng(g->spec().rank, std::move(fixtures));
        if (enumerate->parsed()) {
            const auto e = run_enumeration(*g, eng, exec);
            emit(cfg, to_json(e), to_table(e, cfg.wide));
            return kOk;
        }
        const auto v = run_verify(*g, eng, exec);
        emit(cfg, to_json(v), to_table(v, cfg.wide));
        return v.pass() ? kOk : kVerifyFailed;
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << error_name(e.code()) << ": " << e.what() << "\n";
        return e.code() == ErrorCode::Undecidable ? kUndecided : kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
}
