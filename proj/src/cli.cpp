#include "egzlab/cli.hpp"

#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "egzlab/bounds.hpp"
#include "egzlab/construct.hpp"
#include "egzlab/cycles.hpp"
#include "egzlab/decompose.hpp"
#include "egzlab/errors.hpp"
#include "egzlab/fp.hpp"
#include "egzlab/json_io.hpp"
#include "egzlab/search.hpp"
#include "egzlab/sumfree.hpp"

namespace egz::cli {

namespace {

using io::json;

constexpr int kOk = 0;
constexpr int kVerifyFail = 1;
constexpr int kUsage = 2;

constexpr std::uint64_t kDefaultBudget = 100'000'000;

struct Flags {
    // shared
    std::uint64_t budget = kDefaultBudget;
    std::string input;
    std::string output;
    double tol = 1e-12;
    // bounds
    std::int64_t p = 0;
    int k = 3;
    int n = 0;
    bool reference = false;
    bool theorem = false;
    // cycles
    std::string pattern;
    std::size_t limit = 0;  // 0 = unlimited
    // sumfree verify
    bool sampled = false;
    std::uint64_t samples = 10'000'000;
    std::uint64_t seed = 0x5eed;
    // decompose
    std::int64_t l_override = 0;  // 0 = default L
    std::string cert_path;
    // construct
    std::string diagonal;  // set file; when empty, half-support mode
    bool skip_verify = false;
    // search
    std::int64_t m = 0;
    bool symmetry = false;
    // report
    std::int64_t pmax = 97;
    bool csv = false;
};

void add_budget(CLI::App* cmd, Flags& f) {
    cmd->add_option("--budget", f.budget, "node budget for exhaustive steps")
        ->envname("EGZLAB_BUDGET")
        ->capture_default_str();
}

// Emits the JSON payload (with its embedded config) to stdout and, when
// --output was given, atomically to that path too.
void emit(const json& payload, const Flags& f, std::ostream& out) {
    const std::string text = payload.dump(2) + "\n";
    out << text;
    if (!f.output.empty()) io::atomic_write_text(f.output, text);
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

json config_json(const std::string& command, const Flags& f, json extra = json::object()) {
    json c;
    c["schema"] = 1;
    c["command"] = command;
    c["budget"] = f.budget;
    for (auto& [key, value] : extra.items()) c[key] = value;
    return c;
}

int run_bounds(const Flags& f, std::ostream& out) {
    json extra{{"p", f.p}, {"k", f.k}, {"n", f.n}, {"tol", f.tol}};
    json payload;
    if (f.theorem) {
        payload = io::theorem_bounds_to_json(theorem_bounds(f.p, f.n < 1 ? 1 : f.n, f.tol));
    } else if (f.reference) {
        payload = io::reference_values_to_json(reference_values(f.p, f.n < 1 ? 1 : f.n, f.tol));
    } else {
        payload = io::bound_report_to_json(gamma_pk(f.p, f.k, f.tol));
    }
    payload["config"] = config_json("bounds", f, extra);
    emit(payload, f, out);
    return kOk;
}

int run_cycles(const Flags& f, std::ostream& out, std::ostream& err) {
    const PointSet a = io::point_set_from_json(io::load_json(f.input));
    std::optional<MultiplicityPattern> filter;
    if (!f.pattern.empty()) filter = MultiplicityPattern::parse(f.pattern);
    EnumLimits limits;
    limits.budget = f.budget;
    if (f.limit > 0) limits.limit = f.limit;
    const CycleEnumeration result = enumerate_cycles(a, filter, limits);

    json payload;
    payload["p"] = a.modulus().p();
    payload["n"] = a.modulus().n();
    payload["complete"] = !result.budget_exhausted;
    payload["hit_limit"] = result.hit_limit;
    payload["nodes"] = result.nodes;
    payload["count"] = result.cycles.size();
    json rows = json::array();
    for (const auto& c : result.cycles) {
        json row = json::array();
        for (auto idx : c.entries) row.push_back(io::coords_of(a.modulus(), idx));
        rows.push_back(std::move(row));
    }
    payload["cycles"] = rows;
    payload["config"] = config_json(
        "cycles", f,
        json{{"input", f.input}, {"pattern", f.pattern}, {"limit", f.limit}});
    emit(payload, f, out);
    if (result.budget_exhausted) {
        err << "cycles: budget exhausted after " << result.nodes
            << " nodes; listing is incomplete\n";
        return kUsage;
    }
    return kOk;
}

int run_sumfree_verify(const Flags& f, std::ostream& out, std::ostream& err) {
    const SumFreeCollection c = io::collection_from_json(io::load_json(f.input));
    SumFreeVerdict v;
    json extra{{"input", f.input}, {"sampled", f.sampled}};
    if (f.sampled) {
        extra["samples"] = f.samples;
        extra["seed"] = f.seed;
        v = verify_colored_sumfree_sampled(c, f.samples, f.seed);
    } else {
        v = verify_colored_sumfree(c, f.budget);
    }
    json payload = io::verdict_to_json(v);
    payload["config"] = config_json("sumfree verify", f, extra);
    emit(payload, f, out);
    if (!v.ok) {
        err << "sumfree: collection is not " << c.k << "-colored sum-free\n";
        return kVerifyFail;
    }
    return kOk;
}

int run_sumfree_bound(const Flags& f, std::ostream& out) {
    json payload;
    payload["p"] = f.p;
    payload["k"] = f.k;
    payload["n"] = f.n;
    payload["bound"] = slice_rank_bound(f.p, f.k, f.n, f.tol);
    payload["config"] =
        config_json("sumfree bound", f, json{{"p", f.p}, {"k", f.k}, {"n", f.n}, {"tol", f.tol}});
    emit(payload, f, out);
    return kOk;
}

int run_decompose_run(const Flags& f, std::ostream& out, std::ostream& err) {
    const PointSet a = io::point_set_from_json(io::load_json(f.input));
    PipelineOptions opts;
    opts.budget = f.budget;
    opts.tol = f.tol;
    if (f.l_override > 0) opts.l_override = f.l_override;
    json extra{{"input", f.input}, {"tol", f.tol}};
    if (f.l_override > 0) extra["l"] = f.l_override;
    try {
        const Certificate cert = run_theorem_pipeline(a, opts);
        json payload = io::certificate_to_json(cert);
        payload["config"] = config_json("decompose run", f, extra);
        emit(payload, f, out);
        return kOk;
    } catch (const BudgetExceeded&) {
        throw;  // handled by the dispatcher: exit 2
    } catch (const StripExhausted& e) {
        err << "decompose: " << e.what() << "\n";
        return kVerifyFail;
    } catch (const std::invalid_argument& e) {
        err << "decompose: " << e.what() << "\n";
        return kVerifyFail;
    } catch (const std::logic_error& e) {
        err << "decompose: internal consistency failure: " << e.what() << "\n";
        return kVerifyFail;
    }
}

int run_decompose_certify(const Flags& f, std::ostream& out, std::ostream& err) {
    Certificate cert;
    try {
        cert = io::certificate_from_json(io::load_json(f.cert_path));
    } catch (const std::exception& e) {
        err << "certify: certificate rejected (malformed): " << e.what() << "\n";
        return kVerifyFail;
    }
    const CertifyReport report = certify(cert, f.budget);
    json payload;
    payload["valid"] = report.valid;
    payload["first_failure"] = report.first_failure;
    payload["flags"] = io::flags_to_json(report.flags);
    payload["config"] =
        config_json("decompose certify", f, json{{"certificate", f.cert_path}});
    emit(payload, f, out);
    if (!report.valid) {
        err << "certify: certificate rejected at check '" << report.first_failure << "'\n";
        return kVerifyFail;
    }
    return kOk;
}

int run_construct(const Flags& f, std::ostream& out, std::ostream& err) {
    json extra{{"skip_verify", f.skip_verify}};
    std::optional<MulticoloredInstance> inst;
    if (!f.diagonal.empty()) {
        extra["diagonal"] = f.diagonal;
        inst = diagonal_instance(io::point_set_from_json(io::load_json(f.diagonal)));
    } else {
        extra["p"] = f.p;
        extra["n"] = f.n;
        inst = half_support_construction(f.p, f.n);
    }
    json payload = io::collection_to_json(inst->collection);
    payload["column_distinct"] = inst->column_distinct;
    int code = kOk;
    if (!f.skip_verify) {
        const Theorem7Verdict v = verify_theorem7_conditions(*inst, f.budget);
        payload["verdict"] = io::theorem7_to_json(v);
        if (!v.ok) {
            err << "construct: instance failed the distinct-index conditions\n";
            code = kVerifyFail;
        }
    }
    payload["config"] = config_json("construct", f, extra);
    emit(payload, f, out);
    return code;
}

int run_search_egz(const Flags& f, std::ostream& out, std::ostream& err) {
    const SearchResult r = egz_constant(f.m, f.n, f.budget);
    json payload = io::search_result_to_json(r, CyclicGroup(f.m, f.n));
    payload["config"] = config_json("search egz", f, json{{"m", f.m}, {"n", f.n}});
    emit(payload, f, out);
    if (!r.exhaustive) {
        err << "search: budget exhausted; value is only a lower bound\n";
        return kUsage;
    }
    return kOk;
}

int run_search_maxset(const Flags& f, std::ostream& out, std::ostream& err) {
    MaxSetOptions opts;
    opts.budget = f.budget;
    opts.translation_symmetry = f.symmetry;
    const SearchResult r = max_distinct_zero_sum_free(f.p, f.n, opts);
    json payload = io::search_result_to_json(r, CyclicGroup(f.p, f.n));
    payload["config"] = config_json(
        "search maxset", f, json{{"p", f.p}, {"n", f.n}, {"symmetry", f.symmetry}});
    emit(payload, f, out);
    if (!r.exhaustive) {
        err << "search: budget exhausted; value is only a lower bound\n";
        return kUsage;
    }
    return kOk;
}

int run_report(const Flags& f, std::ostream& out) {
    std::vector<ReferenceValues> rows;
    for (std::int64_t p = 5; p <= f.pmax; ++p)
        if (is_prime(p)) rows.push_back(reference_values(p, 1, f.tol));

    if (f.csv) {
        std::string text =
            "p,gamma_p,gamma_p3,ratio,sqrt_gamma_p_times_p,edel_rate,"
            "ratio_in_range,sqrt_below_gamma_p3,gamma_p_below_4\n";
        for (const auto& r : rows) {
            text += std::to_string(r.p) + "," + format_double(r.gamma_p) + "," +
                    format_double(r.gamma_p3) + "," + format_double(r.ratio) + "," +
                    format_double(r.sqrt_gamma_p_times_p) + "," + format_double(r.edel_rate) +
                    "," + (r.ratio_in_range ? "true" : "false") + "," +
                    (r.sqrt_below_gamma_p3 ? "true" : "false") + "," +
                    (r.gamma_p < 4.0 ? "true" : "false") + "\n";
        }
        out << text;
        if (!f.output.empty()) io::atomic_write_text(f.output, text);
        return kOk;
    }

    json payload;
    payload["pmax"] = f.pmax;
    json jrows = json::array();
    for (const auto& r : rows) {
        json row = io::reference_values_to_json(r);
        row.erase("n");
        row.erase("edel_value");
        row["gamma_p_below_4"] = r.gamma_p < 4.0;
        jrows.push_back(std::move(row));
    }
    payload["rows"] = jrows;
    payload["config"] = config_json("report", f, json{{"pmax", f.pmax}, {"tol", f.tol}});
    emit(payload, f, out);
    return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Flags f;
    CLI::App app{"laboratory for zero-sum problems over F_p^n"};
    app.require_subcommand(1);

    auto* bounds = app.add_subcommand("bounds", "slice-rank bound constants");
    bounds->add_option("--p", f.p, "prime p")->required();
    bounds->add_option("--k", f.k, "arity k (default 3)");
    bounds->add_option("--n", f.n, "dimension for --theorem/--reference");
    bounds->add_option("--tol", f.tol, "minimizer tolerance");
    bounds->add_flag("--reference", f.reference, "comparison values for one p");
    bounds->add_flag("--theorem", f.theorem, "theorem-level bounds for (p, n)");
    bounds->add_option("--output", f.output, "also write JSON here");

    auto* cycles = app.add_subcommand("cycles", "enumerate zero-sum p-tuples of a set");
    cycles->add_option("--input", f.input, "point-set JSON file")->required();
    cycles->add_option("--pattern", f.pattern, "restrict to one multiplicity pattern, e.g. 2,2,1");
    cycles->add_option("--limit", f.limit, "stop after this many cycles");
    cycles->add_option("--output", f.output, "also write JSON here");
    add_budget(cycles, f);

    auto* sumfree = app.add_subcommand("sumfree", "k-colored sum-free checks");
    sumfree->require_subcommand(1);
    auto* sf_verify = sumfree->add_subcommand("verify", "check a collection file");
    sf_verify->add_option("--input", f.input, "collection JSON file")->required();
    sf_verify->add_flag("--sampled", f.sampled, "sampled check instead of exhaustive");
    sf_verify->add_option("--samples", f.samples, "sample count for --sampled");
    sf_verify->add_option("--seed", f.seed, "seed for --sampled");
    sf_verify->add_option("--output", f.output, "also write JSON here");
    add_budget(sf_verify, f);
    auto* sf_bound = sumfree->add_subcommand("bound", "slice-rank size ceiling");
    sf_bound->add_option("--p", f.p, "prime p")->required();
    sf_bound->add_option("--k", f.k, "arity k")->required();
    sf_bound->add_option("--n", f.n, "dimension n")->required();
    sf_bound->add_option("--tol", f.tol, "minimizer tolerance");
    sf_bound->add_option("--output", f.output, "also write JSON here");

    auto* decompose = app.add_subcommand("decompose", "stripping pipeline and certificates");
    decompose->require_subcommand(1);
    auto* dc_run = decompose->add_subcommand("run", "run the pipeline on a point set");
    dc_run->add_option("--input", f.input, "point-set JSON file")->required();
    dc_run->add_option("--l", f.l_override, "override the target L");
    dc_run->add_option("--tol", f.tol, "minimizer tolerance");
    dc_run->add_option("--output", f.output, "write the certificate here");
    add_budget(dc_run, f);
    auto* dc_certify = decompose->add_subcommand("certify", "re-verify a certificate file");
    dc_certify->add_option("certificate", f.cert_path, "certificate JSON file")->required();
    dc_certify->add_option("--output", f.output, "also write the report here");
    add_budget(dc_certify, f);

    auto* construct = app.add_subcommand("construct", "lower-bound witness instances");
    construct->add_option("--p", f.p, "prime p (half-support mode)");
    construct->add_option("--n", f.n, "even dimension n (half-support mode)");
    construct->add_option("--diagonal", f.diagonal, "build the diagonal instance of this set file");
    construct->add_flag("--skip-verify", f.skip_verify, "emit without verifying");
    construct->add_option("--output", f.output, "also write JSON here");
    add_budget(construct, f);

    auto* search = app.add_subcommand("search", "exact brute-force searches");
    search->require_subcommand(1);
    auto* se_egz = search->add_subcommand("egz", "exact EGZ constant of Z_m^n");
    se_egz->add_option("--m", f.m, "modulus m >= 2")->required();
    se_egz->add_option("--n", f.n, "dimension n >= 1")->required();
    se_egz->add_option("--output", f.output, "also write JSON here");
    add_budget(se_egz, f);
    auto* se_max = search->add_subcommand("maxset", "max set without p distinct summing to zero");
    se_max->add_option("--p", f.p, "prime p")->required();
    se_max->add_option("--n", f.n, "dimension n >= 1")->required();
    se_max->add_flag("--symmetry", f.symmetry, "restrict to sets containing 0");
    se_max->add_option("--output", f.output, "also write JSON here");
    add_budget(se_max, f);

    auto* report = app.add_subcommand("report", "comparison table over primes 5..pmax");
    report->add_option("--pmax", f.pmax, "largest prime to include");
    report->add_option("--tol", f.tol, "minimizer tolerance");
    report->add_flag("--csv", f.csv, "CSV instead of JSON");
    report->add_option("--output", f.output, "also write the table here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    }

    try {
        if (bounds->parsed()) return run_bounds(f, out);
        if (cycles->parsed()) return run_cycles(f, out, err);
        if (sumfree->parsed()) {
            if (sf_verify->parsed()) return run_sumfree_verify(f, out, err);
            return run_sumfree_bound(f, out);
        }
        if (decompose->parsed()) {
            if (dc_run->parsed()) return run_decompose_run(f, out, err);
            return run_decompose_certify(f, out, err);
        }
        if (construct->parsed()) return run_construct(f, out, err);
        if (search->parsed()) {
            if (se_egz->parsed()) return run_search_egz(f, out, err);
            return run_search_maxset(f, out, err);
        }
        if (report->parsed()) return run_report(f, out);
        err << "usage error: no subcommand\n";
        return kUsage;
    } catch (const BudgetExceeded& e) {
        err << "budget exceeded: " << e.what() << "\n";
        return kUsage;
    } catch (const io::json::exception& e) {
        err << "input error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        err << "invalid input: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
}

}  // namespace egz::cli
