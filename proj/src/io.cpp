#include "cdu/io.hpp"

#include <fstream>
#include <sstream>

#include "cdu/constructions.hpp"
#include "cdu/errors.hpp"

namespace cdu {
namespace io {

namespace {

[[noreturn]] void parse_fail(const std::string& what) { fail(Errc::ParseError, what); }

const nlohmann::json& need(const nlohmann::json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) parse_fail(std::string("missing key \"") + key + '"');
    return *it;
}

template <typename T>
T get_as(const nlohmann::json& j, const char* key) {
    try {
        return need(j, key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        parse_fail(std::string("bad value for \"") + key + "\": " + e.what());
    }
}

template <typename T>
T get_or(const nlohmann::json& j, const char* key, T fallback) {
    auto it = j.find(key);
    if (it == j.end()) return fallback;
    try {
        return it->get<T>();
    } catch (const nlohmann::json::exception& e) {
        parse_fail(std::string("bad value for \"") + key + "\": " + e.what());
    }
}

}  // namespace

FieldSpec field_spec_from_json(const nlohmann::json& j) {
    if (!j.is_object()) parse_fail("field spec must be an object");
    FieldSpec spec;
    spec.p = get_as<std::uint32_t>(j, "p");
    spec.n = get_as<std::uint32_t>(j, "n");
    spec.modulus = get_or<std::vector<std::uint32_t>>(j, "modulus", {});
    return spec;
}

nlohmann::json field_spec_to_json(const FieldSpec& spec) {
    return {{"p", spec.p}, {"n", spec.n}, {"modulus", spec.modulus}};
}

FieldRef field_from_json(const nlohmann::json& j, const FieldOptions& opt) {
    return make_field(field_spec_from_json(j), opt);
}

FuncTable parse_table_text(const std::string& text, const FieldOptions& opt) {
    std::istringstream in(text);
    std::string header;
    if (!std::getline(in, header)) parse_fail("empty table file");
    std::istringstream hs(header);
    FieldSpec spec;
    if (!(hs >> spec.p >> spec.n)) parse_fail("table header needs \"p n c0,c1,...\"");
    std::string mods;
    if (!(hs >> mods)) parse_fail("table header is missing the modulus");
    std::istringstream ms(mods);
    std::string tok;
    while (std::getline(ms, tok, ',')) {
        try {
            spec.modulus.push_back(static_cast<std::uint32_t>(std::stoul(tok)));
        } catch (const std::exception&) {
            parse_fail("bad modulus coefficient \"" + tok + '"');
        }
    }
    FieldRef ctx = make_field(spec, opt);
    std::vector<std::uint32_t> values(ctx->order());
    for (elem_t x = 0; x < ctx->order(); ++x) {
        if (!(in >> values[x]))
            parse_fail("table needs " + std::to_string(ctx->order()) + " values");
    }
    return FuncTable(ctx, std::move(values));
}

std::string format_table_text(const FuncTable& F) {
    const FieldSpec& spec = F.ctx()->spec();
    std::ostringstream out;
    out << spec.p << ' ' << spec.n << ' ';
    for (std::size_t i = 0; i < spec.modulus.size(); ++i) {
        if (i) out << ',';
        out << spec.modulus[i];
    }
    out << '\n';
    for (elem_t x = 0; x < F.size(); ++x) out << F(x) << '\n';
    return out.str();
}

FuncTable table_from_json(const nlohmann::json& j, const FieldOptions& opt) {
    FieldRef ctx = field_from_json(need(j, "field"), opt);
    auto values = get_as<std::vector<std::uint32_t>>(j, "values");
    return FuncTable(ctx, std::move(values));
}

nlohmann::json table_to_json(const FuncTable& F) {
    return {{"field", field_spec_to_json(F.ctx()->spec())}, {"values", F.values()}};
}

FuncTable load_table(const std::string& path, const FieldOptions& opt) {
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".json")
        return table_from_json(load_json(path), opt);
    return parse_table_text(load_text(path), opt);
}

void save_table(const FuncTable& F, const std::string& path) {
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".json")
        save_text(path, table_to_json(F).dump(2) + "\n");
    else
        save_text(path, format_table_text(F));
}

FuncTable build_function(FieldRef ctx, const nlohmann::json& spec) {
    if (!spec.is_object()) parse_fail("construction spec must be an object");
    const std::string kind = get_as<std::string>(spec, "kind");
    if (kind == "gold") return cons::gold(ctx, get_as<std::uint32_t>(spec, "k"));
    if (kind == "kasami") return cons::kasami(ctx, get_as<std::uint32_t>(spec, "k"));
    if (kind == "inverse") return cons::inverse_perm(ctx);
    if (kind == "power") return cons::power_map(ctx, get_as<std::uint64_t>(spec, "e"));
    if (kind == "identity") return FuncTable::identity(ctx);
    if (kind == "constant") return FuncTable::constant(ctx, get_as<elem_t>(spec, "v"));
    if (kind == "poly") {
        UnivariatePoly f{get_as<std::vector<elem_t>>(spec, "coeffs")};
        return from_poly(ctx, f);
    }
    if (kind == "affine") {
        LinearizedPoly L{get_as<std::vector<elem_t>>(spec, "coeffs"),
                         get_or<std::uint32_t>(spec, "step", 1)};
        return affine_map(ctx, L, get_or<elem_t>(spec, "shift", 0));
    }
    if (kind == "gold_shift") {
        return cons::gold_shift(ctx, get_as<std::uint32_t>(spec, "s"),
                                get_as<std::uint32_t>(spec, "k"), get_as<elem_t>(spec, "alpha"));
    }
    if (kind == "piecewise2") {
        return cons::piecewise_two(build_function(ctx, need(spec, "f")),
                                   build_function(ctx, need(spec, "g")),
                                   get_as<std::uint32_t>(spec, "s"));
    }
    if (kind == "piecewise3") {
        return cons::piecewise_three(
            build_function(ctx, need(spec, "f")), build_function(ctx, need(spec, "g")),
            build_function(ctx, need(spec, "h")), get_as<std::uint32_t>(spec, "s"),
            get_as<std::uint32_t>(spec, "t"));
    }
    if (kind == "chain") {
        cons::PieceSpec chain;
        chain.ks = get_as<std::vector<std::uint32_t>>(spec, "ks");
        const auto& fs = need(spec, "fs");
        if (!fs.is_array()) parse_fail("\"fs\" must be an array of constructions");
        for (const auto& f : fs) chain.fs.push_back(build_function(ctx, f));
        return cons::piecewise_chain(chain);
    }
    if (kind == "concat") {
        const std::uint32_t s = get_as<std::uint32_t>(spec, "s");
        const auto& ps = need(spec, "pieces");
        if (!ps.is_array()) parse_fail("\"pieces\" must be an array of constructions");
        std::vector<FuncTable> pieces;
        for (const auto& p : ps) pieces.push_back(build_function(ctx, p));
        return cons::concat(ctx->subfield(s)->projection(), pieces);
    }
    if (kind == "table") {
        return FuncTable(ctx, get_as<std::vector<std::uint32_t>>(spec, "values"));
    }
    if (kind == "table_file") {
        FuncTable loaded = load_table(get_as<std::string>(spec, "path"));
        if (loaded.ctx()->spec().p != ctx->p() || loaded.ctx()->spec().n != ctx->n() ||
            loaded.ctx()->spec().modulus != ctx->spec().modulus)
            fail(Errc::MixedFields, "table file was built over a different field");
        return FuncTable(ctx, loaded.values());
    }
    parse_fail("unknown construction kind \"" + kind + '"');
}

nlohmann::json uniformity_to_json(const UniformityReport& rep) {
    nlohmann::json w = nlohmann::json::array();
    for (const auto& [a, b] : rep.witnesses) w.push_back({a, b});
    return {{"c", rep.c}, {"delta", rep.delta}, {"witnesses", w}};
}

nlohmann::json scan_to_json(const OutsideScanReport& rep) {
    nlohmann::json samples = nlohmann::json::array();
    for (const auto& hit : rep.samples)
        samples.push_back({{"a", hit.a}, {"b", hit.b}, {"x", hit.x}});
    return {{"c", rep.c},
            {"a0_included", rep.a0_included},
            {"checked_pairs", rep.checked_pairs},
            {"violations", rep.violations},
            {"samples", samples}};
}

std::string ddt_csv(const DdtTable& table) {
    std::ostringstream out;
    out << "a";
    for (elem_t b = 0; b < table.q(); ++b) out << ',' << b;
    out << '\n';
    for (elem_t a = 0; a < table.q(); ++a) {
        out << a;
        for (elem_t b = 0; b < table.q(); ++b) out << ',' << table.at(a, b);
        out << '\n';
    }
    return out.str();
}

nlohmann::json load_json(const std::string& path) {
    std::string text = load_text(path);
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        parse_fail(path + ": " + e.what());
    }
}

std::string load_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) parse_fail("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void save_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) parse_fail("cannot open " + path + " for writing");
    out << text;
}

}  // namespace io
}  // namespace cdu
