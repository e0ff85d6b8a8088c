// champs: k-tuple jumping champion census and Hardy-Littlewood comparison CLI.
//
// Subcommands:
//   census   scan primes, write pattern-count snapshots and champion tables
//   predict  rank candidate patterns by corrected predictions
//   verify   run verification suites (exact identities, bounds, averages)
//
// Exit codes: 0 success, 1 hard verification failure, 2 usage error, 3 I/O error.

#include "champs/errors.hpp"
#include "champs/gap_census.hpp"
#include "champs/hl_model.hpp"
#include "champs/pattern.hpp"
#include "champs/prime_engine.hpp"
#include "champs/reports.hpp"
#include "champs/series_average.hpp"
#include "champs/singular_series.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace champs;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

// Counts accept plain integers and scientific notation (1e6, 2.5e3).
std::uint64_t parse_count(const std::string& text) {
    std::size_t used = 0;
    long double v;
    try {
        v = std::stold(text, &used);
    } catch (const std::exception&) {
        throw std::domain_error("not a number: '" + text + "'");
    }
    if (used != text.size()) throw std::domain_error("trailing characters in number: '" + text + "'");
    if (!(v >= 0)) throw std::domain_error("number must be nonnegative: '" + text + "'");
    if (v > static_cast<long double>(kMaxSieveLimit))
        throw CapacityError("value '" + text + "' exceeds the supported integer range (2^62)");
    const auto r = static_cast<std::uint64_t>(v);
    if (static_cast<long double>(r) != v)
        throw std::domain_error("number must be an integer: '" + text + "'");
    return r;
}

std::vector<std::uint64_t> parse_count_list(const std::string& text) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ','))
        if (!part.empty()) out.push_back(parse_count(part));
    if (out.empty()) throw std::domain_error("empty list: '" + text + "'");
    return out;
}

GapPattern parse_pattern_arg(const std::string& text) {
    const auto values = parse_count_list(text);
    std::vector<std::uint32_t> diffs;
    for (std::uint64_t v : values) {
        if (v == 0 || v > UINT32_MAX) throw std::domain_error("bad pattern difference in '" + text + "'");
        diffs.push_back(static_cast<std::uint32_t>(v));
    }
    return GapPattern(std::move(diffs));
}

std::string command_line(int argc, char** argv) {
    std::string s;
    for (int i = 0; i < argc; ++i) {
        if (i) s.push_back(' ');
        s += argv[i];
    }
    return s;
}

std::ofstream open_output(const fs::path& path) {
    if (path.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(path.parent_path(), ec);
    }
    std::ofstream os(path);
    if (!os) throw IoError("cannot write to " + path.string());
    return os;
}

struct CensusArgs {
    std::string limit;
    int k = 1;
    std::string checkpoints;
    std::string anchor = "largest";
    std::string out_dir = ".";
    std::string format = "both";
    std::string resume_file;
    bool resume = false;
    std::string dump_primes;
    std::string segment_size = "1048576";
    unsigned threads = 0;
};

int run_census_cmd(const CensusArgs& args, const std::string& cmdline) {
    const std::uint64_t limit = parse_count(args.limit);
    std::vector<std::uint64_t> checkpoints =
        args.checkpoints.empty() ? std::vector<std::uint64_t>{limit} : parse_count_list(args.checkpoints);
    std::sort(checkpoints.begin(), checkpoints.end());
    if (checkpoints.back() > limit)
        throw std::domain_error("checkpoint beyond --limit");
    const Anchor anchor = anchor_from_string(args.anchor);

    SieveConfig cfg;
    cfg.segment_size = parse_count(args.segment_size);
    cfg.threads = args.threads;

    const fs::path out_dir(args.out_dir);
    {
        std::error_code ec;
        fs::create_directories(out_dir, ec);
        if (!fs::is_directory(out_dir)) throw IoError("cannot create output directory " + out_dir.string());
    }
    const fs::path resume_path =
        args.resume_file.empty() ? out_dir / "census_resume.json" : fs::path(args.resume_file);

    if (!args.dump_primes.empty()) {
        auto os = open_output(args.dump_primes);
        SegmentStream stream(limit, cfg.segment_size, cfg.threads);
        while (auto seg = stream.next())
            for (std::uint64_t p : seg->primes) os << p << "\n";
    }

    CensusScanner scanner(args.k, anchor);
    if (args.resume && fs::exists(resume_path)) {
        std::ifstream is(resume_path);
        std::stringstream buf;
        buf << is.rdbuf();
        scanner = CensusScanner::deserialize(buf.str());
        if (scanner.k() != args.k || scanner.anchor() != anchor)
            throw std::domain_error("resume journal does not match --k/--anchor");
        std::cerr << "resuming census from prime " << scanner.last_prime() << "\n";
    }

    std::vector<ChampionRecord> champions;
    const bool write_csv = args.format == "csv" || args.format == "both";
    const bool write_json = args.format == "json" || args.format == "both";
    bool processed_any = false;
    for (std::uint64_t cp : checkpoints) {
        if (cp < scanner.last_prime()) {
            std::cerr << "checkpoint " << cp << " already covered by resume journal, skipping\n";
            continue;
        }
        processed_any = true;
        auto snaps = run_census(scanner, {cp}, cfg);
        const CensusSnapshot& snap = snaps.front();
        if (write_csv) {
            auto os = open_output(out_dir / ("snapshot_k" + std::to_string(args.k) + "_x" +
                                             std::to_string(cp) + ".csv"));
            write_snapshot_csv(snap, os, cmdline);
        }
        if (write_json) {
            auto os = open_output(out_dir / ("snapshot_k" + std::to_string(args.k) + "_x" +
                                             std::to_string(cp) + ".json"));
            write_snapshot_json(snap, os, cmdline);
        }
        if (!snap.counts.empty()) champions.push_back(champions_of(snap));
        auto os = open_output(resume_path);
        os << scanner.serialize() << "\n";
    }

    if (!processed_any) return kExitOk; // nothing new; keep existing outputs
    auto os = open_output(out_dir / "champions.csv");
    write_champions_csv(champions, os, cmdline);
    for (const auto& rec : champions)
        for (const auto& pat : rec.champions)
            std::cout << "x=" << rec.x << " k=" << rec.k << " champion=" << pat.to_string()
                      << " count=" << rec.max_count << " gcd=" << rec.gcds.at(pat) << "\n";
    return kExitOk;
}

struct PredictArgs {
    std::string x;
    int k = 1;
    std::string dmax;
    std::vector<std::string> patterns;
    std::string truncation = "1e5";
    std::string out;
};

int run_predict_cmd(const PredictArgs& args, const std::string& cmdline) {
    const std::uint64_t x = parse_count(args.x);
    const std::uint64_t truncation = parse_count(args.truncation);

    PatternFamily family;
    if (!args.patterns.empty()) {
        std::vector<GapPattern> pats;
        for (const auto& text : args.patterns) pats.push_back(parse_pattern_arg(text));
        family = PatternFamily::explicit_list(std::move(pats));
    } else {
        const std::uint32_t dmax = args.dmax.empty()
                                       ? 0
                                       : static_cast<std::uint32_t>(parse_count(args.dmax));
        family = PatternFamily::default_family(static_cast<double>(x), args.k, dmax);
    }

    const auto ranked = predict_champion(static_cast<double>(x), args.k, family, truncation);
    if (ranked.empty())
        std::cerr << "warning: every candidate pattern has a vanishing singular series\n";

    std::ostringstream body;
    body << metadata_header(cmdline) << "\n";
    body << "pattern,singular_series,main,corrected,rank\n";
    for (const auto& r : ranked)
        body << r.pattern.to_string() << "," << r.prediction.series.value << ","
             << r.prediction.main_term << "," << r.prediction.corrected << "," << r.rank << "\n";
    if (args.out.empty()) {
        std::cout << body.str();
    } else {
        auto os = open_output(args.out);
        os << body.str();
    }
    if (!ranked.empty())
        std::cerr << "top pattern: " << ranked.front().pattern.to_string() << "\n";
    return kExitOk;
}

struct VerifyArgs {
    std::string suite;
    std::string x;
    std::string pattern;
    int I = 1;
    std::string H;
    std::string truncation;
    std::string budget;
    std::string h_grid;
    int k = 2;
    std::string d_limit = "100";
    unsigned cases = 100;
    unsigned seed = 20260808;
    std::string pmax = "1000";
    bool strict = false;
    std::string out;
};

int verify_a_identity(const VerifyArgs& args) {
    const std::uint64_t pmax = parse_count(args.pmax);
    const auto primes = small_primes_up_to(pmax);
    std::mt19937_64 rng(args.seed);
    std::uniform_int_distribution<int> size_dist(1, 5);
    std::uniform_int_distribution<std::uint64_t> elem_dist(0, 200);

    std::uint64_t checked = 0, violations = 0, trivial = 0, ratio_checked = 0;
    for (unsigned c = 0; c < args.cases; ++c) {
        std::vector<std::uint64_t> D;
        const int sz = size_dist(rng);
        while (static_cast<int>(D.size()) < sz) {
            const std::uint64_t e = elem_dist(rng);
            if (std::find(D.begin(), D.end(), e) == D.end()) D.push_back(e);
        }
        std::uint64_t d0 = elem_dist(rng);
        while (std::find(D.begin(), D.end(), d0) != D.end()) ++d0;

        for (std::uint64_t p : primes) {
            const auto w = verify_A_identity(p, D);
            ++checked;
            if (w.trivial_zero) { ++trivial; continue; }
            if (!w.sum.is_zero()) ++violations;
            // Per-prime ratio identity on the same grid.
            const auto t = ratio_term(D, d0, p);
            const Rational lhs = (Rational(1) + t.a_value) * local_factor(D, p);
            std::vector<std::uint64_t> united = D;
            united.push_back(d0);
            if (lhs != local_factor(united, p)) ++violations;
            ++ratio_checked;
        }
    }
    std::cout << "a-identity: " << checked << " identity checks (" << trivial << " trivial), "
              << ratio_checked << " ratio-factor checks, " << violations << " violations\n";
    return violations == 0 ? kExitOk : kExitVerifyFail;
}

int verify_bonferroni(const VerifyArgs& args) {
    const std::uint64_t x = args.x.empty() ? 10000 : parse_count(args.x);
    const GapPattern D = args.pattern.empty() ? GapPattern({6}) : parse_pattern_arg(args.pattern);
    const std::uint32_t H =
        args.H.empty() ? D.last() : static_cast<std::uint32_t>(parse_count(args.H));
    const std::uint64_t budget =
        args.budget.empty() ? kDefaultBonferroniBudget : parse_count(args.budget);

    bool ok = true;
    std::int64_t prev_lower = INT64_MIN, prev_upper = INT64_MAX;
    for (int i = 0; i <= args.I; ++i) {
        const auto rep = bonferroni_check(x, D, i, H, budget);
        std::cout << "bonferroni x=" << x << " D=" << D.to_string() << " I=" << i << ": "
                  << rep.lower << " <= " << rep.census_count << " <= " << rep.upper
                  << (rep.holds() ? "" : "  VIOLATED") << "\n";
        if (!rep.holds()) ok = false;
        if (rep.lower < prev_lower || rep.upper > prev_upper) {
            std::cout << "  bounds failed to tighten at I=" << i << "\n";
            ok = false;
        }
        prev_lower = rep.lower;
        prev_upper = rep.upper;
    }
    return ok ? kExitOk : kExitVerifyFail;
}

int verify_sieve_bound(const VerifyArgs& args) {
    const std::uint64_t x = args.x.empty() ? 1000000 : parse_count(args.x);
    const auto offsets = args.pattern.empty() ? std::vector<std::uint64_t>{0, 2}
                                              : parse_count_list(args.pattern);
    const std::uint64_t truncation = args.truncation.empty() ? 100000 : parse_count(args.truncation);

    const std::uint64_t empirical = pi_tuple_empirical(x, offsets);
    const double bound = sieve_upper_bound(static_cast<double>(x), offsets, truncation);
    const double ratio = static_cast<double>(empirical) / bound;
    std::cout << "sieve-bound x=" << x << ": empirical=" << empirical << " bound=" << bound
              << " empirical/bound=" << ratio << "\n";
    return static_cast<double>(empirical) <= bound ? kExitOk : kExitVerifyFail;
}

int verify_average(const VerifyArgs& args) {
    const auto D = args.pattern.empty() ? std::vector<std::uint64_t>{0}
                                        : parse_count_list(args.pattern);
    const auto grid = args.h_grid.empty() ? std::vector<std::uint64_t>{100, 1000}
                                          : parse_count_list(args.h_grid);
    const std::uint64_t truncation = args.truncation.empty() ? 100000 : parse_count(args.truncation);

    std::ostringstream csv;
    csv << "D,H,sum,deviation,normalized\n";
    bool trend_ok = true;
    double prev_norm = -1.0;
    std::string dstr;
    for (std::size_t i = 0; i < D.size(); ++i) dstr += (i ? "-" : "") + std::to_string(D[i]);
    for (std::uint64_t H : grid) {
        const auto rep = average_ratio_sum(D, H, truncation);
        csv << dstr << "," << H << "," << rep.sum << "," << rep.deviation << ","
            << rep.normalized << "\n";
        std::cout << "average D={" << dstr << "} H=" << H << ": sum=" << rep.sum
                  << " deviation=" << rep.deviation << " normalized=" << rep.normalized
                  << (rep.trivial ? " (trivial: series vanishes)" : "") << "\n";
        if (prev_norm >= 0.0 && rep.normalized > 2.0 * prev_norm) trend_ok = false;
        prev_norm = rep.normalized;
    }
    if (!args.out.empty()) {
        auto os = open_output(args.out);
        os << csv.str();
    }
    if (!trend_ok) {
        std::cout << "average: normalized deviation grew by more than 2x across the grid"
                  << (args.strict ? " (hard failure under --strict)" : " (soft warning)") << "\n";
        if (args.strict) return kExitVerifyFail;
    }
    return kExitOk;
}

int verify_gallagher(const VerifyArgs& args) {
    const std::uint64_t d_limit = parse_count(args.d_limit);
    const std::uint64_t truncation = args.truncation.empty() ? 10000 : parse_count(args.truncation);
    const auto rep = gallagher_ms_average(args.k, d_limit, truncation);
    std::cout << "gallagher k=" << rep.k << " D=" << rep.d_limit << ": brute=" << rep.brute_sum
              << " leading=" << rep.leading << " (rel err " << rep.rel_err_leading << ")"
              << " ms=" << rep.ms_three_term << " (rel err " << rep.rel_err_ms << ")\n";
    const bool ms_better = rep.rel_err_ms < rep.rel_err_leading;
    if (!ms_better) {
        std::cout << "gallagher: three-term expansion did not beat the leading term"
                  << (args.strict ? " (hard failure under --strict)" : " (soft warning)") << "\n";
        if (args.strict) return kExitVerifyFail;
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"k-tuple jumping champion toolkit"};
    app.set_config("--config", "", "Config file (key = value lines)");
    const std::string cmdline = command_line(argc, argv);

    CensusArgs census_args;
    auto* census = app.add_subcommand("census", "Count consecutive-prime patterns up to checkpoints");
    census->add_option("--limit", census_args.limit, "Sieve limit, e.g. 1e6")->required()
        ->envname("CHAMPS_LIMIT");
    census->add_option("--k", census_args.k, "Pattern length k (1..8)")->required()
        ->check(CLI::Range(1, 8))->envname("CHAMPS_K");
    census->add_option("--checkpoints", census_args.checkpoints, "Comma list, e.g. 1e4,1e5,1e6");
    census->add_option("--anchor", census_args.anchor, "largest|smallest (window attribution)")
        ->check(CLI::IsMember({"largest", "smallest", "largest_le_x", "smallest_le_x"}));
    census->add_option("--out", census_args.out_dir, "Output directory")->envname("CHAMPS_OUT");
    census->add_option("--format", census_args.format, "csv|json|both")
        ->check(CLI::IsMember({"csv", "json", "both"}));
    census->add_option("--resume-file", census_args.resume_file, "Checkpoint journal path");
    census->add_flag("--resume", census_args.resume, "Continue from the journal if present");
    census->add_option("--dump-primes", census_args.dump_primes,
                       "Debug: dump primes as newline-delimited text to this path");
    census->add_option("--segment-size", census_args.segment_size, "Sieve segment size (integers)")
        ->envname("CHAMPS_SEGMENT_SIZE");
    census->add_option("--threads", census_args.threads, "Sieve worker threads (0 = hardware)")
        ->envname("CHAMPS_THREADS");

    PredictArgs predict_args;
    auto* predict = app.add_subcommand("predict", "Rank patterns by corrected predictions");
    predict->add_option("--x", predict_args.x, "Evaluation point x")->required();
    predict->add_option("--k", predict_args.k, "Pattern length k (1..8)")->required()
        ->check(CLI::Range(1, 8));
    predict->add_option("--dmax", predict_args.dmax, "Candidate cutoff for d_k");
    predict->add_option("--patterns", predict_args.patterns,
                        "Explicit patterns as comma-joined diffs, e.g. 2,6");
    predict->add_option("--truncation", predict_args.truncation, "Euler product truncation prime");
    predict->add_option("--out", predict_args.out, "Output CSV path (default stdout)");

    VerifyArgs verify_args;
    auto* verify = app.add_subcommand("verify", "Run a verification suite");
    verify->add_option("suite", verify_args.suite, "bonferroni|sieve-bound|average|a-identity|gallagher")
        ->required();
    verify->add_option("--x", verify_args.x, "Evaluation point");
    verify->add_option("--pattern", verify_args.pattern, "Comma-separated diffs or offsets");
    verify->add_option("--I", verify_args.I, "Bonferroni truncation depth");
    verify->add_option("--H", verify_args.H, "Bonferroni upper-bound position cutoff");
    verify->add_option("--truncation", verify_args.truncation, "Euler product truncation prime");
    verify->add_option("--budget", verify_args.budget, "Bonferroni work budget");
    verify->add_option("--h-grid", verify_args.h_grid, "Average suite H grid, e.g. 1e2,1e3");
    verify->add_option("--k", verify_args.k, "Tuple size for gallagher");
    verify->add_option("--D", verify_args.d_limit, "Range limit for gallagher");
    verify->add_option("--cases", verify_args.cases, "Random cases for a-identity");
    verify->add_option("--seed", verify_args.seed, "Random seed for a-identity");
    verify->add_option("--pmax", verify_args.pmax, "Prime cutoff for a-identity");
    verify->add_flag("--strict", verify_args.strict, "Soft trend checks become hard failures");
    verify->add_option("--out", verify_args.out, "CSV output path for the average suite");

    app.require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (census->parsed()) return run_census_cmd(census_args, cmdline);
        if (predict->parsed()) return run_predict_cmd(predict_args, cmdline);
        if (verify->parsed()) {
            if (verify_args.suite == "a-identity") return verify_a_identity(verify_args);
            if (verify_args.suite == "bonferroni") return verify_bonferroni(verify_args);
            if (verify_args.suite == "sieve-bound") return verify_sieve_bound(verify_args);
            if (verify_args.suite == "average") return verify_average(verify_args);
            if (verify_args.suite == "gallagher") return verify_gallagher(verify_args);
            std::cerr << "unknown suite '" << verify_args.suite
                      << "' (expected bonferroni|sieve-bound|average|a-identity|gallagher)\n";
            return kExitUsage;
        }
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kExitIo;
    } catch (const BudgetError& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return kExitUsage;
    } catch (const CapacityError& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
