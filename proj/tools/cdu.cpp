// cdu: build finite fields and S-box style functions, run difference-table
// analyses, check bound claims, and sweep parameter grids.
//
// Exit codes: 0 success, 1 claim/job failure, 2 config or violated-premise
// error, 3 engine error (division by zero, mixed fields, domain too large).
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

#include <CLI11.hpp>

#include "cdu/constructions.hpp"
#include "cdu/ddt.hpp"
#include "cdu/errors.hpp"
#include "cdu/field.hpp"
#include "cdu/func.hpp"
#include "cdu/io.hpp"
#include "cdu/pool.hpp"
#include "cdu/verify.hpp"

namespace {

using cdu::elem_t;
using cdu::Errc;
using nlohmann::json;

int exit_code_for(Errc code) {
    switch (code) {
        case Errc::DivisionByZero:
        case Errc::MixedFields:
        case Errc::DomainTooLarge:
            return 3;
        default:
            return 2;
    }
}

unsigned default_workers() {
    if (const char* env = std::getenv("CDU_WORKERS")) {
        char* end = nullptr;
        unsigned long v = std::strtoul(env, &end, 10);
        if (end && *end == '\0') return (unsigned)v;
    }
    return 1;
}

struct CommonOpts {
    std::uint32_t p = 2;
    std::uint32_t n = 0;
    std::string modulus;      // comma-separated coefficients, constant first
    std::string spec_path;    // field spec JSON file
    std::string construction; // kind name, inline JSON, or path to JSON
    std::uint32_t s = 0;
    std::uint32_t k = 0;
    std::uint64_t e = 0;
    std::string alpha;        // element index or "all"
    std::string cset;         // comma list, "all", or "all-not-1"
    unsigned workers = default_workers();
    std::string format = "json";
    std::string out;
    std::uint64_t seed = 1;
    std::uint64_t full_ddt_cap = 1ull << 12;
    std::uint64_t logtable_cap = 1ull << 20;
};

std::vector<std::uint32_t> parse_u32_list(const std::string& text) {
    std::vector<std::uint32_t> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) cdu::fail(Errc::ParseError, "empty entry in list \"" + text + '"');
        out.push_back((std::uint32_t)std::stoul(tok));
    }
    if (out.empty()) cdu::fail(Errc::ParseError, "empty list");
    return out;
}

cdu::FieldRef load_field(const CommonOpts& o) {
    cdu::FieldOptions opt;
    opt.logtable_cap = o.logtable_cap;
    if (!o.spec_path.empty()) {
        cdu::FieldSpec spec = cdu::io::field_spec_from_json(cdu::io::load_json(o.spec_path));
        return cdu::make_field(spec, opt);
    }
    if (o.n == 0) cdu::fail(Errc::ParseError, "need --n or --spec");
    std::vector<std::uint32_t> mod;
    if (!o.modulus.empty()) mod = parse_u32_list(o.modulus);
    return cdu::make_field(o.p, o.n, mod, opt);
}

// Accepts a construction as a kind name driven by flags, inline JSON
// (starting with '{'), or a path to a JSON file.
json construction_json(const CommonOpts& o) {
    if (o.construction.empty()) cdu::fail(Errc::ParseError, "need --construction");
    if (o.construction.front() == '{') {
        json j = json::parse(o.construction, nullptr, false);
        if (j.is_discarded())
            cdu::fail(Errc::ParseError, "bad inline construction JSON");
        return j;
    }
    if (std::filesystem::exists(o.construction)) return cdu::io::load_json(o.construction);
    json j{{"kind", o.construction}};
    if (o.construction == "gold" || o.construction == "kasami") {
        j["k"] = o.k;
    } else if (o.construction == "power") {
        j["e"] = o.e;
    } else if (o.construction == "gold_shift") {
        j["s"] = o.s;
        j["k"] = o.k;
        if (o.alpha.empty() || o.alpha == "all")
            cdu::fail(Errc::ParseError, "gold_shift needs a single --alpha");
        j["alpha"] = std::stoull(o.alpha);
    } else if (o.construction == "constant") {
        j["v"] = o.e;
    }
    // "identity" and "inverse" need no parameters; unknown kinds are
    // rejected by the builder.
    return j;
}

std::vector<elem_t> expand_cset(const cdu::Field& K, const std::string& cset) {
    std::vector<elem_t> cs;
    if (cset.empty() || cset == "all") {
        for (elem_t c = 0; c < K.order(); ++c) cs.push_back(c);
    } else if (cset == "all-not-1") {
        for (elem_t c = 0; c < K.order(); ++c)
            if (c != 1) cs.push_back(c);
    } else {
        for (auto v : parse_u32_list(cset)) {
            if (!K.is_valid(v)) cdu::fail(Errc::ParseError, "c=" + std::to_string(v) +
                                                                " is not a field element");
            cs.push_back(v);
        }
    }
    return cs;
}

void emit(const CommonOpts& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
    } else {
        cdu::io::save_text(o.out, text.back() == '\n' ? text : text + '\n');
    }
}

std::string modulus_pretty(const cdu::FieldSpec& spec) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = spec.modulus.size(); i-- > 0;) {
        std::uint32_t cf = spec.modulus[i];
        if (!cf) continue;
        if (!first) os << " + ";
        first = false;
        if (i == 0 || cf != 1) os << cf;
        if (i == 1)
            os << (cf != 1 ? "*x" : "x");
        else if (i > 1)
            os << (cf != 1 ? "*x^" : "x^") << i;
    }
    return os.str();
}

int cmd_field(const CommonOpts& o) {
    cdu::FieldRef K = load_field(o);
    std::vector<std::uint32_t> subs;
    for (std::uint32_t s = 1; s <= K->n(); ++s)
        if (K->n() % s == 0) subs.push_back(s);
    if (o.format == "json") {
        json j = cdu::io::field_spec_to_json(K->spec());
        j["order"] = K->order();
        j["generator"] = K->generator();
        j["subfield_degrees"] = subs;
        j["log_tables"] = K->has_log_tables();
        emit(o, j.dump(2));
        return 0;
    }
    std::ostringstream os;
    os << "p = " << K->p() << "\n"
       << "n = " << K->n() << "\n"
       << "order = " << K->order() << "\n"
       << "modulus = " << modulus_pretty(K->spec()) << "\n"
       << "generator = " << K->generator() << "\n"
       << "subfield degrees:";
    for (auto s : subs) os << ' ' << s;
    os << "\nlog tables = " << (K->has_log_tables() ? "yes" : "no") << "\n";
    emit(o, os.str());
    return 0;
}

int cmd_uniformity(const CommonOpts& o, bool want_ddt, bool want_nl) {
    cdu::FieldRef K = load_field(o);
    cdu::FuncTable F = cdu::io::build_function(K, construction_json(o));
    if (want_ddt) {
        auto cs = expand_cset(*K, o.cset.empty() ? "0" : o.cset);
        if (cs.size() != 1)
            cdu::fail(Errc::ParseError, "--ddt wants exactly one c");
        cdu::DdtTable table = cdu::c_ddt(F, cs[0], o.full_ddt_cap);
        emit(o, cdu::io::ddt_csv(table));
        return 0;
    }
    if (want_nl) {
        std::uint64_t nl = cdu::nonlinearity(F, o.workers);
        if (o.format == "csv")
            emit(o, "nonlinearity\n" + std::to_string(nl) + "\n");
        else
            emit(o, json{{"nonlinearity", nl}}.dump(2));
        return 0;
    }
    auto cs = expand_cset(*K, o.cset);
    if (o.format == "csv") {
        std::ostringstream os;
        os << "c,delta\n";
        for (elem_t c : cs)
            os << c << ',' << cdu::c_uniformity(F, c, o.workers, 0).delta << '\n';
        emit(o, os.str());
        return 0;
    }
    json profile = json::array();
    for (elem_t c : cs)
        profile.push_back(cdu::io::uniformity_to_json(cdu::c_uniformity(F, c, o.workers)));
    emit(o, profile.dump(2));
    return 0;
}

int cmd_verify(const CommonOpts& o, const std::string& suite_path) {
    cdu::verify::RunConfig cfg;
    cfg.workers = o.workers;
    cfg.ddt_cap = o.full_ddt_cap;
    cfg.logtable_cap = o.logtable_cap;
    cfg.default_seed = o.seed;
    json suite = cdu::io::load_json(suite_path);
    cdu::verify::SuiteResult result = cdu::verify::run_suite(suite, cfg);
    emit(o, cdu::verify::to_json(result).dump(2));
    for (const auto& rep : result.reports) {
        std::cerr << (rep.pass ? "PASS " : "FAIL ") << rep.claim;
        if (!rep.pass) {
            std::cerr << " -- " << rep.details;
            for (const auto& cc : rep.cases)
                if (!cc.skipped && !cc.pass)
                    std::cerr << " [c=" << cc.c << " observed=" << cc.observed << ' '
                              << cc.relation << ' ' << cc.bound << ']';
        }
        std::cerr << '\n';
    }
    if (result.engine_error) return 3;
    if (result.config_error) return 2;
    return result.pass ? 0 : 1;
}

struct SweepJob {
    std::string kind;
    std::uint32_t n = 0, s = 0, k = 0;
    bool has_s = false, has_k = false, has_alpha = false;
    elem_t alpha = 0;
    elem_t c = 0;
};

int cmd_sweep(const CommonOpts& o, const std::string& nlist, const std::string& slist,
              const std::string& klist, std::uint64_t shard) {
    if (o.construction.empty() || o.construction.front() == '{')
        cdu::fail(Errc::ParseError, "sweep wants --construction as a kind name");
    const std::string kind = o.construction;
    const bool needs_s = kind == "gold_shift";
    const bool needs_k = kind == "gold" || kind == "kasami" || kind == "gold_shift";

    std::vector<std::uint32_t> ns = parse_u32_list(nlist.empty() ? std::to_string(o.n) : nlist);
    std::vector<std::uint32_t> ss =
        needs_s ? parse_u32_list(slist.empty() ? std::to_string(o.s) : slist)
                : std::vector<std::uint32_t>{0};
    std::vector<std::uint32_t> ks =
        needs_k ? parse_u32_list(klist.empty() ? std::to_string(o.k) : klist)
                : std::vector<std::uint32_t>{0};

    cdu::FieldOptions fopt;
    fopt.logtable_cap = o.logtable_cap;
    std::map<std::uint32_t, cdu::FieldRef> fields;
    for (auto n : ns) {
        if (n == 0) cdu::fail(Errc::ParseError, "sweep needs --n");
        fields.emplace(n, cdu::make_field(o.p, n, {}, fopt));
    }

    // Deterministic lexicographic expansion: n, s, k, alpha, c.
    std::vector<SweepJob> jobs;
    for (auto n : ns)
        for (auto s : ss)
            for (auto k : ks) {
                const cdu::FieldRef& K = fields.at(n);
                std::vector<elem_t> alphas{0};
                bool has_alpha = false;
                if (needs_s) {
                    has_alpha = true;
                    if (o.alpha.empty() || o.alpha == "all") {
                        alphas.clear();
                        for (elem_t x : K->subfield(s)->elements())
                            if (x != 0) alphas.push_back(x);
                    } else {
                        alphas = {std::stoull(o.alpha)};
                    }
                }
                for (elem_t a : alphas)
                    for (elem_t c : expand_cset(*K, o.cset)) {
                        SweepJob j;
                        j.kind = kind;
                        j.n = n;
                        j.s = s;
                        j.k = k;
                        j.has_s = needs_s;
                        j.has_k = needs_k;
                        j.has_alpha = has_alpha;
                        j.alpha = a;
                        j.c = c;
                        jobs.push_back(j);
                    }
            }
    if (jobs.empty()) cdu::fail(Errc::ParseError, "the grid is empty");

    struct Row {
        std::uint64_t delta = 0;
        std::string status = "ok";
    };
    std::vector<Row> rows(jobs.size());
    if (shard == 0) shard = 16;
    const std::size_t nblocks = (jobs.size() + shard - 1) / shard;
    cdu::parallel_for_blocks(nblocks, o.workers, [&](std::size_t blk) {
        const std::size_t lo = blk * shard;
        const std::size_t hi = std::min(jobs.size(), lo + shard);
        for (std::size_t i = lo; i < hi; ++i) {
            const SweepJob& j = jobs[i];
            try {
                const cdu::FieldRef& K = fields.at(j.n);
                cdu::FuncTable F = [&] {
                    if (j.kind == "gold") return cdu::cons::gold(K, j.k);
                    if (j.kind == "kasami") return cdu::cons::kasami(K, j.k);
                    if (j.kind == "inverse") return cdu::cons::inverse_perm(K);
                    if (j.kind == "identity") return cdu::FuncTable::identity(K);
                    if (j.kind == "gold_shift")
                        return cdu::cons::gold_shift(K, j.s, j.k, j.alpha);
                    if (j.kind == "power") return cdu::cons::power_map(K, o.e);
                    cdu::fail(Errc::ParseError, "unknown sweep construction \"" + j.kind + '"');
                }();
                rows[i].delta = cdu::c_uniformity(F, j.c, 1, 0).delta;
            } catch (const std::exception& e) {
                rows[i].status = std::string("error: ") + e.what();
            }
        }
    });

    std::ostringstream os;
    os << "construction,p,n,s,k,alpha,c,delta,status\n";
    bool any_error = false;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        const SweepJob& j = jobs[i];
        os << j.kind << ',' << o.p << ',' << j.n << ',';
        if (j.has_s) os << j.s;
        os << ',';
        if (j.has_k) os << j.k;
        os << ',';
        if (j.has_alpha) os << j.alpha;
        os << ',' << j.c << ',';
        if (rows[i].status == "ok")
            os << rows[i].delta;
        else
            any_error = true;
        std::string st = rows[i].status;
        for (auto& ch : st)
            if (ch == ',' || ch == '\n') ch = ';';
        os << ',' << st << '\n';
    }
    emit(o, os.str());
    return any_error ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-field difference-table laboratory"};
    app.require_subcommand(1);

    CommonOpts o;
    auto add_common = [&](CLI::App* cmd, bool field_only) {
        cmd->add_option("--p", o.p, "field characteristic");
        cmd->add_option("--n", o.n, "extension degree");
        cmd->add_option("--modulus", o.modulus, "modulus coefficients, constant term first");
        cmd->add_option("--spec", o.spec_path, "field spec JSON file");
        cmd->add_option("--workers", o.workers, "worker threads (0 = all cores)");
        cmd->add_option("--format", o.format, "output format: json or csv")
            ->check(CLI::IsMember({"json", "csv"}));
        cmd->add_option("--out", o.out, "write output to this file instead of stdout");
        cmd->add_option("--logtable-cap", o.logtable_cap,
                        "largest order that gets log/exp tables");
        if (field_only) return;
        cmd->add_option("--construction", o.construction,
                        "kind name, inline JSON ({...}), or JSON file path");
        cmd->add_option("--s", o.s, "subfield degree parameter");
        cmd->add_option("--k", o.k, "exponent parameter (gold/kasami)");
        cmd->add_option("--e", o.e, "exponent for the power construction");
        cmd->add_option("--alpha", o.alpha, "shift element, or \"all\"");
        cmd->add_option("--c", o.cset, "c values: list, \"all\", or \"all-not-1\"");
        cmd->add_option("--seed", o.seed, "seed for sampled checks");
        cmd->add_option("--full-ddt-cap", o.full_ddt_cap,
                        "largest order for full table materialization");
    };

    CLI::App* field = app.add_subcommand("field", "print a field summary");
    add_common(field, true);

    CLI::App* uni = app.add_subcommand("uniformity", "difference-table analyses");
    add_common(uni, false);
    bool want_ddt = false, want_nl = false;
    uni->add_flag("--ddt", want_ddt, "emit the full difference table as CSV for one c");
    uni->add_flag("--nl", want_nl, "report nonlinearity instead of a profile");

    CLI::App* ver = app.add_subcommand("verify", "run a claim suite");
    add_common(ver, false);
    std::string suite_path;
    ver->add_option("--suite", suite_path, "claim suite JSON file")->required();

    CLI::App* sweep = app.add_subcommand("sweep", "grid of uniformity jobs, CSV out");
    add_common(sweep, false);
    std::string nlist, slist, klist;
    std::uint64_t shard = 16;
    sweep->add_option("--n-list", nlist, "comma list of extension degrees");
    sweep->add_option("--s-list", slist, "comma list of subfield degrees");
    sweep->add_option("--k-list", klist, "comma list of exponents");
    sweep->add_option("--shard", shard, "jobs per scheduling block");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*field) return cmd_field(o);
        if (*uni) return cmd_uniformity(o, want_ddt, want_nl);
        if (*ver) return cmd_verify(o, suite_path);
        return cmd_sweep(o, nlist, slist, klist, shard);
    } catch (const cdu::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
