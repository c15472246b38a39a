#include "cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "cli/report.hpp"
#include "linrank/equivalence.hpp"
#include "linrank/ms.hpp"
#include "linrank/pr.hpp"
#include "linrank/random_loops.hpp"

namespace linrank::cli {

namespace fs = std::filesystem;

namespace {

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Method { Ms, Pr, PrAlt, Svg, Both };
enum class Format { Text, Json };

std::string method_name(Method m) {
    switch (m) {
    case Method::Ms: return "ms";
    case Method::Pr: return "pr";
    case Method::PrAlt: return "pr-alt";
    case Method::Svg: return "svg";
    case Method::Both: return "both";
    }
    return "?";
}

LoopModel load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError(path + ": cannot open file");
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse_loop(ss.str());
    } catch (const ParseError& e) {
        throw InputError(path + ":" + e.what());
    }
}

void require_guarded(const LoopModel& l, Method m) {
    if (m == Method::PrAlt && !l.is_guarded())
        throw InputError("--method=pr-alt needs a loop with guard: and update: sections");
}

Verdict analyze(const LoopModel& l, Method m) {
    switch (m) {
    case Method::Ms: return ms_analyze(l);
    case Method::Pr: return pr_analyze(l);
    case Method::PrAlt: return pr_alt_analyze(l);
    case Method::Svg: return svg_analyze(merge_guarded(l));
    case Method::Both: break;
    }
    throw std::logic_error("analyze: method 'both' is handled by the caller");
}

int exit_for(const Verdict& v) { return is_terminating(v) ? kOk : kUnknown; }

/// Runs the selected engine(s). For `both` the MS verdict is reported and a
/// disagreement is signalled through `disagree`.
Verdict decide(const LoopModel& l, Method m, bool& disagree) {
    disagree = false;
    if (m != Method::Both)
        return analyze(l, m);
    Verdict ms = ms_analyze(l);
    Verdict pr = pr_analyze(l);
    disagree = verdict_name(ms) != verdict_name(pr);
    return ms;
}

struct Options {
    std::string file;
    bool conditional = false;
    std::uint64_t seed = 1;
    std::size_t count = 200;
    Method m = Method::Both;
    Format f = Format::Text;
};

int cmd_check(const Options& o, std::ostream& out, std::ostream& err) {
    LoopModel l = load(o.file);
    require_guarded(l, o.m);
    bool disagree = false;
    Verdict v = decide(l, o.m, disagree);
    if (o.f == Format::Json)
        out << json{{"status", disagree ? "disagreement" : std::string(verdict_name(v))}, {"method", method_name(o.m)}}.dump(2)
            << '\n';
    else
        out << (disagree ? "disagreement" : verdict_name(v)) << '\n';
    if (disagree) {
        err << "ms and pr verdicts disagree\n";
        return kDisagreement;
    }
    return exit_for(v);
}

int cmd_rank(const Options& o, std::ostream& out, std::ostream& err) {
    LoopModel l = load(o.file);
    require_guarded(l, o.m);
    bool disagree = false;
    Verdict v = decide(l, o.m, disagree);
    const auto* t = std::get_if<verdict::Terminating>(&v);
    if (o.f == Format::Json) {
        json j = {{"status", disagree ? "disagreement" : std::string(verdict_name(v))}, {"method", method_name(o.m)}};
        if (t)
            j["ranking_function"] = to_json(t->witness);
        out << j.dump(2) << '\n';
    } else {
        out << (disagree ? "disagreement" : verdict_name(v)) << '\n';
        if (t)
            out << render(t->witness, l.space.names());
    }
    if (disagree) {
        err << "ms and pr verdicts disagree\n";
        return kDisagreement;
    }
    return exit_for(v);
}

RankingSpace space_for(const LoopModel& l, Method m) {
    switch (m) {
    case Method::Ms: return ms_space(l);
    case Method::Pr: return pr_space(l);
    case Method::PrAlt: return pr_alt_space(l);
    case Method::Svg: return svg_space(merge_guarded(l));
    case Method::Both: break;
    }
    throw std::logic_error("space_for: method 'both' is handled by the caller");
}

int cmd_space(const Options& o, std::ostream& out, std::ostream& err) {
    if (o.conditional && o.m != Method::Ms && o.m != Method::Both)
        throw InputError("--conditional is only available with --method=ms");
    LoopModel l = load(o.file);
    require_guarded(l, o.m);
    const Method m = o.conditional ? Method::Ms : o.m;

    const bool satisfiable =
        m == Method::Svg ? !std::holds_alternative<verdict::TriviallyTerminating>(svg_analyze(merge_guarded(l)))
                         : is_satisfiable(merge_guarded(l));
    if (!satisfiable) {
        if (o.f == Format::Json)
            out << json{{"status", "trivially-terminating"}, {"method", method_name(m)}}.dump(2) << '\n';
        else
            out << "trivially-terminating\n";
        return kOk;
    }

    std::vector<std::pair<std::string, RankingSpace>> spaces;
    if (o.conditional) {
        spaces.emplace_back("decreasing", ms_decreasing_space(l));
        spaces.emplace_back("bounded", ms_bounded_space(l));
    } else if (m == Method::Both) {
        spaces.emplace_back("ms", ms_space(l));
        spaces.emplace_back("pr", pr_space(l));
    } else {
        spaces.emplace_back(method_name(m), space_for(l, m));
    }

    bool empty = false;
    bool disagree = false;
    if (o.conditional) {
        ConstraintSystem both = spaces[0].second.constraints;
        both.append(spaces[1].second.constraints);
        empty = is_empty_set(both);
    } else {
        empty = spaces[0].second.is_empty();
        if (m == Method::Both)
            disagree = empty != spaces[1].second.is_empty();
    }
    const std::string status = disagree ? "disagreement" : empty ? "unknown" : "terminating";

    if (o.f == Format::Json) {
        json j = {{"status", status}, {"method", method_name(m)}, {"space", to_json(spaces[0].second)}};
        if (spaces.size() > 1) {
            json all = json::object();
            for (const auto& [name, s] : spaces)
                all[name] = to_json(s);
            j["spaces"] = all;
        }
        out << j.dump(2) << '\n';
    } else {
        out << status << '\n';
        for (const auto& [name, s] : spaces) {
            if (spaces.size() > 1)
                out << name << ":\n";
            out << render(s);
        }
    }
    if (disagree) {
        err << "ms and pr spaces disagree on emptiness\n";
        return kDisagreement;
    }
    return empty ? kUnknown : kOk;
}

int cmd_compare(const Options& o, std::ostream& out, std::ostream&) {
    LoopModel l = load(o.file);
    CrossCheckReport r = cross_check(l);
    if (o.f == Format::Json)
        out << to_json(r).dump(2) << '\n';
    else
        out << render(r);
    return r.agree ? kOk : kDisagreement;
}

int cmd_bench(const Options& o, std::ostream& out, std::ostream& err) {
    if (!fs::is_directory(o.file))
        throw InputError(o.file + ": not a directory");
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(o.file))
        if (e.is_regular_file() && e.path().extension() == ".loop")
            files.push_back(e.path());
    std::sort(files.begin(), files.end());

    using clock = std::chrono::steady_clock;
    auto micros = [](clock::duration d) { return std::chrono::duration_cast<std::chrono::microseconds>(d).count(); };
    out << "file,n,m,verdict_ms,verdict_pr,agree,us_ms,us_pr\n";
    bool all_agree = true;
    for (const auto& p : files) {
        const std::string name = p.filename().string();
        LoopModel l;
        try {
            l = load(p.string());
        } catch (const InputError& e) {
            err << e.what() << '\n';
            out << name << ",,,parse-error,parse-error,,,\n";
            continue;
        }
        auto t0 = clock::now();
        Verdict ms = ms_analyze(l);
        auto t1 = clock::now();
        Verdict pr = pr_analyze(l);
        auto t2 = clock::now();
        const bool agree = verdict_name(ms) == verdict_name(pr);
        all_agree = all_agree && agree;
        out << name << ',' << l.space.n() << ',' << merge_guarded(l).size() << ',' << verdict_name(ms) << ','
            << verdict_name(pr) << ',' << (agree ? "true" : "false") << ',' << micros(t1 - t0) << ','
            << micros(t2 - t1) << '\n';
    }
    return all_agree ? kOk : kDisagreement;
}

int cmd_selftest(const Options& o, std::ostream& out, std::ostream&) {
    std::mt19937_64 rng(o.seed);
    std::size_t agree = 0, terminating = 0, memberships = 0;
    for (std::size_t i = 0; i < o.count; ++i) {
        RandomLoopOptions opt;
        opt.guarded = i % 2 == 1;
        CrossCheckReport r = cross_check(random_loop(rng, opt), false);
        agree += r.agree;
        if (r.ms_witness_in_pr) {
            ++terminating;
            memberships += *r.ms_witness_in_pr && *r.pr_witness_in_ms;
        }
    }
    const bool ok = agree == o.count && memberships == terminating;
    if (o.f == Format::Json)
        out << json{{"status", ok ? "pass" : "fail"}, {"seed", o.seed},       {"loops", o.count},
                    {"agree", agree},                 {"terminating", terminating}, {"memberships", memberships}}
                   .dump(2)
            << '\n';
    else
        out << (ok ? "pass" : "fail") << ": " << agree << '/' << o.count << " verdicts agree, " << memberships << '/'
            << terminating << " witness pairs cross-verified (seed " << o.seed << ")\n";
    return ok ? kOk : kDisagreement;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"linrank: linear ranking functions for linear-constraint loops"};
    app.require_subcommand(1);
    Options o;

    const std::map<std::string, Method> methods{
        {"ms", Method::Ms}, {"pr", Method::Pr}, {"pr-alt", Method::PrAlt}, {"svg", Method::Svg}, {"both", Method::Both}};
    const std::map<std::string, Format> formats{{"text", Format::Text}, {"json", Format::Json}};

    auto add_common = [&](CLI::App* sub, bool with_method) {
        if (with_method)
            sub->add_option("--method", o.m, "ms, pr, pr-alt, svg or both")
                ->transform(CLI::CheckedTransformer(methods))
                ->default_str("both");
        sub->add_option("--format", o.f, "text or json")->transform(CLI::CheckedTransformer(formats))->default_str("text");
    };

    auto* check = app.add_subcommand("check", "termination test");
    check->add_option("file", o.file, "loop file")->required();
    add_common(check, true);

    auto* rank = app.add_subcommand("rank", "termination test with one ranking function");
    rank->add_option("file", o.file, "loop file")->required();
    add_common(rank, true);

    auto* space = app.add_subcommand("space", "space of all ranking functions");
    space->add_option("file", o.file, "loop file")->required();
    space->add_flag("--conditional", o.conditional, "decreasing and bounded spaces separately (ms only)");
    add_common(space, true);

    auto* compare = app.add_subcommand("compare", "cross-check the ms and pr engines");
    compare->add_option("file", o.file, "loop file")->required();
    add_common(compare, false);

    auto* bench = app.add_subcommand("bench", "CSV timings for every .loop file in a directory");
    bench->add_option("dir", o.file, "directory")->required();

    auto* selftest = app.add_subcommand("selftest", "random-loop agreement check");
    selftest->group("");
    selftest->add_option("--seed", o.seed, "random seed");
    selftest->add_option("--count", o.count, "number of loops");
    add_common(selftest, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (*check)
            return cmd_check(o, out, err);
        if (*rank)
            return cmd_rank(o, out, err);
        if (*space)
            return cmd_space(o, out, err);
        if (*compare)
            return cmd_compare(o, out, err);
        if (*bench)
            return cmd_bench(o, out, err);
        if (*selftest)
            return cmd_selftest(o, out, err);
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
    return kInputError;
}

} // namespace linrank::cli
