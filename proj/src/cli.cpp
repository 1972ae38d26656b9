#include "toric/cli.hpp"

#include "toric/cache.hpp"
#include "toric/error.hpp"
#include "toric/io.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <optional>

namespace toric::cli {

namespace {

struct JobSpec {
    std::string command;
    std::string fan_path;
    std::string out_path;
    bool no_cache = false;

    std::string cls;
    std::string divisor;
    std::string window;
    std::string candidate;
    std::string table_path;
    std::string twist;
    std::vector<std::string> samples;
    std::size_t sample_count = 3;
    long denominator = 0;
};

struct Report {
    json body;
    int code = kOk;
};

std::pair<long, long> parse_window(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw InputError("window must look like LO:HI, got '" + text + "'");
    try {
        std::size_t a = 0, b = 0;
        const long lo = std::stol(text.substr(0, colon), &a);
        const long hi = std::stol(text.substr(colon + 1), &b);
        if (a != colon || b != text.size() - colon - 1) throw std::invalid_argument("trailing");
        if (lo > hi) throw InputError("window is empty: " + text);
        return {lo, hi};
    } catch (const std::logic_error& e) {
        if (dynamic_cast<const InputError*>(&e)) throw;
        throw InputError("window must look like LO:HI, got '" + text + "'");
    }
}

DivisorClass class_arg(const ToricVariety& x, const JobSpec& job) {
    if (!job.cls.empty() && !job.divisor.empty()) throw InputError("give either --class or --divisor, not both");
    if (!job.cls.empty()) {
        DivisorClass c{parse_int_vector(job.cls)};
        x.check_class(c);
        return c;
    }
    if (!job.divisor.empty()) {
        TDivisor d{parse_int_vector(job.divisor)};
        x.check_divisor(d);
        return x.class_of(d);
    }
    throw InputError("--class or --divisor is required");
}

Report cmd_validate(const Fan& fan) {
    const FanReport r = validate_fan(fan);
    json body = report_to_json(r);
    body["rays"] = fan.ray_count();
    body["max_cones"] = fan.max_cones.size();
    if (r.smooth && r.complete) body["pic_rank"] = fan.ray_count() - fan.rank;
    return {body, r.smooth && r.complete ? kOk : kMathFailure};
}

Report cmd_cones(const ToricVariety& x, const JobSpec& job) {
    const DivisorClass c = class_arg(x, job);
    return {json{{"class", to_json(c)},
                 {"nef", x.is_nef(c)},
                 {"ample", x.is_ample(c)},
                 {"effective", x.is_effective(c)}},
            kOk};
}

Report cmd_coh(const ToricVariety& x, const JobSpec& job) {
    if (!job.window.empty()) {
        const auto [lo, hi] = parse_window(job.window);
        const auto classes = class_window(x.pic_rank(), lo, hi);
        if (job.candidate.empty()) return {table_to_json(cohomology_table(x, classes)), kOk};
        const Candidate cand = parse_candidate(job.candidate);
        for (const auto& s : cand.summands) x.check_class(s.cls);
        CohomologyTable t;
        for (const auto& c : classes) t.values.emplace(c, cand.cohomology(x, c));
        return {table_to_json(t), kOk};
    }
    if (!job.candidate.empty()) throw InputError("--candidate needs --window");
    const DivisorClass c = class_arg(x, job);
    return {json{{"class", to_json(c)}, {"h", class_cohomology(x, c)}}, kOk};
}

Report cmd_thomsen(const ToricVariety& x, const JobSpec& job) {
    json classes = json::array();
    const auto collection = thomsen_collection(x);
    for (const auto& c : collection) classes.push_back(to_json(c));
    json body{{"classes", classes}};
    if (job.denominator > 0) {
        const auto sampled = thomsen_by_sampling(x, job.denominator);
        json s = json::array();
        for (const auto& c : sampled) s.push_back(to_json(c));
        body["sampled"] = json{{"denominator", job.denominator}, {"classes", s}, {"agrees", sampled == collection}};
        return {body, sampled == collection ? kOk : kMathFailure};
    }
    return {body, kOk};
}

Report cmd_diagonal(const ToricVariety& x) {
    const auto k = build_k_terms(x);
    long euler = 0;
    const auto ranks = k.ranks();
    for (std::size_t p = 0; p < ranks.size(); ++p) euler += (p % 2 == 0) ? ranks[p] : -ranks[p];
    return {json{{"terms", terms_to_json(k)},
                 {"ranks", ranks},
                 {"degree_zero_trivial", k.degree_zero_is_trivial()},
                 {"strata_euler", euler}},
            kOk};
}

Report cmd_audit(const ToricVariety& x) {
    const auto audits = audit_terms(x, build_k_terms(x));
    const bool ok = std::all_of(audits.begin(), audits.end(), [](const TermAudit& a) { return a.passed(); });
    return {json{{"audits", audits_to_json(audits)}, {"passed", ok}}, ok ? kOk : kMathFailure};
}

std::vector<TDivisor> support_samples(const ToricVariety& x, const JobSpec& job) {
    std::vector<TDivisor> out;
    for (const auto& s : job.samples) {
        TDivisor d{parse_int_vector(s)};
        x.check_divisor(d);
        out.push_back(std::move(d));
    }
    if (out.empty()) {
        for (const auto& c : ample_classes(x, 4)) {
            if (out.size() == job.sample_count) break;
            out.push_back(x.section(c));
        }
        if (out.empty()) throw PreconditionError("no ample class found in [-4,4]^rank; pass --sample");
    }
    return out;
}

Report cmd_support(const ToricVariety& x, const JobSpec& job) {
    const auto report = certify_ample_support(x, build_k_terms(x), support_samples(x, job));
    int code = kOk;
    if (report.inconsistent()) code = kInconsistent;
    else if (!report.all_symbolic() || !report.all_empirical()) code = kMathFailure;
    return {support_to_json(report), code};
}

CohomologyTable load_table(const JobSpec& job) { return table_from_json(load_json(job.table_path)); }

Report cmd_e1(const ToricVariety& x, const JobSpec& job) {
    DivisorClass twist{IntVector(x.pic_rank(), Integer(0))};
    if (!job.twist.empty()) {
        twist = DivisorClass{parse_int_vector(job.twist)};
        x.check_class(twist);
    }
    const auto k = build_k_terms(x);
    E1Page page;
    if (!job.table_path.empty() == !job.candidate.empty()) throw InputError("give exactly one of --table or --candidate");
    if (!job.table_path.empty()) {
        page = build_e1(load_table(job), k, twist);
    } else {
        const Candidate cand = parse_candidate(job.candidate);
        for (const auto& s : cand.summands) x.check_class(s.cls);
        page = build_e1(k, twist, [&](const DivisorClass& c) { return cand.cohomology(x, c); });
    }
    return {e1_to_json(page), kOk};
}

Report cmd_split(const ToricVariety& x, const JobSpec& job) {
    if (job.table_path.empty() || job.candidate.empty()) throw InputError("split needs --table and --candidate");
    SplitOptions options;
    if (!job.window.empty()) {
        const auto [lo, hi] = parse_window(job.window);
        options.strict_window = class_window(x.pic_rank(), lo, hi);
    }
    const Verdict v = check_splitting(x, load_table(job), parse_candidate(job.candidate), build_k_terms(x), options);
    return {verdict_to_json(v), std::holds_alternative<Split>(v) ? kOk : kMathFailure};
}

std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return sha256_hex(buf.str());
}

std::string cache_key(const JobSpec& job, const Fan& fan) {
    json args{{"class", job.cls},
              {"divisor", job.divisor},
              {"window", job.window},
              {"candidate", job.candidate},
              {"twist", job.twist},
              {"samples", job.samples},
              {"sample_count", job.sample_count},
              {"denominator", job.denominator}};
    if (!job.table_path.empty()) args["table"] = file_digest(job.table_path);
    return std::string(kToolVersion) + "\n" + job.command + "\n" + fan.key() + "\n" + fan.canonical_form() + "\n" +
           args.dump();
}

void log_line(const std::filesystem::path& dir, const JobSpec& job, bool hit) {
    std::error_code ec;
    if (!std::filesystem::is_directory(dir, ec)) return;
    std::ofstream log(dir / "log.txt", std::ios::app);
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    log << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ") << ' ' << job.command << ' ' << job.fan_path << ' '
        << (hit ? "hit" : "miss") << '\n';
}

Report compute(const JobSpec& job, const Fan& fan) {
    if (job.command == "validate") return cmd_validate(fan);
    const ToricVariety x(fan);
    if (job.command == "cones") return cmd_cones(x, job);
    if (job.command == "coh") return cmd_coh(x, job);
    if (job.command == "thomsen") return cmd_thomsen(x, job);
    if (job.command == "diagonal") return cmd_diagonal(x);
    if (job.command == "audit") return cmd_audit(x);
    if (job.command == "support") return cmd_support(x, job);
    if (job.command == "e1") return cmd_e1(x, job);
    if (job.command == "split") return cmd_split(x, job);
    throw InputError("unknown command " + job.command);
}

int execute(const JobSpec& job, std::ostream& out, std::ostream& err) {
    const Fan fan = load_fan(job.fan_path);
    std::string payload;
    int code = kOk;
    const bool cacheable = !job.no_cache && job.command != "validate";
    if (cacheable) {
        const auto dir = default_cache_dir();
        Cache cache(dir, kToolVersion, &err);
        const auto result = cache.get_or_compute(cache_key(job, fan), [&] {
            const Report r = compute(job, fan);
            return dump(json{{"exit", r.code}, {"report", r.body}});
        });
        log_line(dir, job, result.hit);
        const json stored = json::parse(result.payload);
        payload = dump(stored.at("report"));
        code = stored.at("exit").get<int>();
    } else {
        const Report r = compute(job, fan);
        payload = dump(r.body);
        code = r.code;
    }
    if (job.out_path.empty()) {
        out << payload;
    } else {
        std::ofstream file(job.out_path, std::ios::binary);
        if (!file) throw InputError("cannot write " + job.out_path);
        file << payload;
    }
    return code;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact toric line-bundle cohomology, diagonal resolutions and splitting checks", "toric"};
    app.require_subcommand(1);
    JobSpec job;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--fan", job.fan_path, "fan JSON file")->required()->check(CLI::ExistingFile);
        sub->add_option("-o,--out", job.out_path, "write the report here instead of stdout");
        sub->add_flag("--no-cache", job.no_cache, "bypass the result cache");
    };
    auto class_opts = [&](CLI::App* sub) {
        sub->add_option("--class", job.cls, "divisor class, e.g. [1,0]");
        sub->add_option("--divisor", job.divisor, "torus-invariant divisor by ray, e.g. [1,0,0]");
    };

    auto* validate = app.add_subcommand("validate", "check smoothness and completeness of a fan");
    common(validate);
    auto* cones = app.add_subcommand("cones", "nef, ample and effective tests for a class");
    common(cones);
    class_opts(cones);
    auto* coh = app.add_subcommand("coh", "line bundle cohomology of a class or over a window");
    common(coh);
    class_opts(coh);
    coh->add_option("--window", job.window, "class box LO:HI; prints a table");
    coh->add_option("--candidate", job.candidate, "with --window: table of a sum of line bundles");
    auto* thomsen = app.add_subcommand("thomsen", "Thomsen collection of labels");
    common(thomsen);
    thomsen->add_option("--denominator", job.denominator, "also sample the grid with this denominator")
        ->check(CLI::PositiveNumber);
    auto* diagonal = app.add_subcommand("diagonal", "terms of the resolution of the diagonal");
    common(diagonal);
    auto* audit = app.add_subcommand("audit", "effectivity, Frobenius and dimension audits of the terms");
    common(audit);
    auto* support = app.add_subcommand("support", "ample-cone cohomological support certificate");
    common(support);
    support->add_option("--sample", job.samples, "ample divisor by ray; repeatable")->allow_extra_args(false);
    support->add_option("--samples", job.sample_count, "number of automatic ample samples")->check(CLI::PositiveNumber);
    auto* e1 = app.add_subcommand("e1", "E1 page for a table or a sum of line bundles");
    common(e1);
    e1->add_option("--table", job.table_path, "cohomology table JSON")->check(CLI::ExistingFile);
    e1->add_option("--candidate", job.candidate, "sum of line bundles, e.g. [[0],1;[1],1]");
    e1->add_option("--twist", job.twist, "class to twist by");
    auto* split = app.add_subcommand("split", "decide the splitting criterion for a table and a candidate");
    common(split);
    split->add_option("--table", job.table_path, "cohomology table JSON")->check(CLI::ExistingFile);
    split->add_option("--candidate", job.candidate, "sum of line bundles, e.g. [[0],1;[1],1]");
    split->add_option("--window", job.window, "strict mode: also check every class in LO:HI");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n" << app.help();
        return kUsage;
    }
    job.command = app.get_subcommands().front()->get_name();

    try {
        return execute(job, out, err);
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const PreconditionError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const InconsistencyError& e) {
        err << "internal inconsistency: " << e.what() << "\n";
        return kInconsistent;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kInconsistent;
    }
}

}  // namespace toric::cli
