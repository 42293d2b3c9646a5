#pragma once

// Fibration and equivariant-pair config files (YAML).
//
//   family: user              # optional label
//   params:                   # optional; rationals as numbers or "p/q" strings
//     lambda: 1
//   base:                     # generators of A; even ones need `truncate`
//     - {name: x, degree: 4, truncate: 3}
//   fiber:
//     - {name: e, degree: 4}
//     - {name: "e'", degree: 7}
//   differential:             # D on fiber generators; omitted entries are 0
//     "e'": "e^2 + lambda*x*e"
//   cutoff: 16                # optional
//
// A pair file adds
//
//   fixed_model:
//     generators: [{name: z, degree: 2}]
//     differential: {}
//   psi:                      # ψ(v) over the base and fixed-model generators
//     e: "z"
//
// Differential strings use the polynomial grammar of parse.hpp.

#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include <yaml-cpp/yaml.h>

#include "hfp/fixed_locus.hpp"

namespace hfp {

class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& field, int line, const std::string& msg)
        : std::runtime_error((line > 0 ? "line " + std::to_string(line) + ", " : std::string()) + "field '" + field +
                             "': " + msg),
          field_(field),
          line_(line)
    {
    }
    const std::string& field() const { return field_; }
    int line() const { return line_; }

private:
    std::string field_;
    int line_;
};

struct ModelConfig {
    FibrationModel fibration;
    std::optional<int> cutoff;
    std::optional<EquivariantPair> pair;
};

namespace detail {

inline int line_of(const YAML::Node& n) { return n.Mark().line + 1; }

template <class T>
T scalar_as(const YAML::Node& n, const std::string& field)
{
    if (!n || !n.IsScalar()) throw ConfigError(field, n ? line_of(n) : 0, "expected a scalar");
    try {
        return n.as<T>();
    } catch (const YAML::Exception&) {
        throw ConfigError(field, line_of(n), "cannot read '" + n.Scalar() + "'");
    }
}

inline std::vector<GeneratorSpec> read_generators(const YAML::Node& list, const std::string& field, bool allow_truncate)
{
    std::vector<GeneratorSpec> out;
    if (!list) return out;
    if (!list.IsSequence()) throw ConfigError(field, line_of(list), "expected a list of generators");
    for (std::size_t i = 0; i < list.size(); ++i) {
        const auto& g = list[i];
        const std::string where = field + "[" + std::to_string(i) + "]";
        if (!g.IsMap()) throw ConfigError(where, line_of(g), "expected {name, degree}");
        GeneratorSpec s;
        s.name = scalar_as<std::string>(g["name"], where + ".name");
        s.degree = scalar_as<int>(g["degree"], where + ".degree");
        if (g["truncate"]) {
            if (!allow_truncate) throw ConfigError(where + ".truncate", line_of(g["truncate"]), "only base generators are truncated");
            s.truncate = scalar_as<int>(g["truncate"], where + ".truncate");
            if (s.truncate < 1) throw ConfigError(where + ".truncate", line_of(g["truncate"]), "must be >= 1");
        }
        out.push_back(s);
    }
    return out;
}

inline std::map<std::string, std::pair<std::string, int>> read_polys(const YAML::Node& m, const std::string& field)
{
    std::map<std::string, std::pair<std::string, int>> out;
    if (!m) return out;
    if (!m.IsMap()) throw ConfigError(field, line_of(m), "expected a map generator -> polynomial");
    for (const auto& kv : m) {
        const auto key = kv.first.as<std::string>();
        out[key] = {scalar_as<std::string>(kv.second, field + "." + key), line_of(kv.second)};
    }
    return out;
}

inline ParamMap read_params(const YAML::Node& m)
{
    ParamMap out;
    if (!m) return out;
    if (!m.IsMap()) throw ConfigError("params", line_of(m), "expected a map");
    for (const auto& kv : m) {
        const auto key = kv.first.as<std::string>();
        const auto text = scalar_as<std::string>(kv.second, "params." + key);
        try {
            out[key] = parse_rational(text);
        } catch (const std::exception&) {
            throw ConfigError("params." + key, line_of(kv.second), "not a rational: '" + text + "'");
        }
    }
    return out;
}

inline Polynomial parse_at(const std::string& text, const GeneratorSetPtr& set, const ParamMap& params,
                           const std::string& field, int line)
{
    try {
        return parse_polynomial(text, set, params);
    } catch (const ParseError& e) {
        throw ConfigError(field, line, e.what());
    }
}

}  // namespace detail

/// Parses a config document. Throws ConfigError naming the line and field.
inline ModelConfig load_config_string(const std::string& text)
{
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::ParserException& e) {
        throw ConfigError("<document>", e.mark.line + 1, e.msg);
    }
    if (!root.IsMap()) throw ConfigError("<document>", 1, "expected a mapping at top level");

    ModelConfig out;
    const ParamMap params = detail::read_params(root["params"]);
    const std::string family = root["family"] ? detail::scalar_as<std::string>(root["family"], "family") : "user";
    const auto base = detail::read_generators(root["base"], "base", true);
    const auto fiber = detail::read_generators(root["fiber"], "fiber", false);
    if (fiber.empty()) throw ConfigError("fiber", detail::line_of(root), "at least one fiber generator is required");
    if (root["cutoff"]) out.cutoff = detail::scalar_as<int>(root["cutoff"], "cutoff");

    std::vector<Generator> tg;
    TruncationIdeal ideal;
    for (std::size_t i = 0; i < base.size(); ++i) {
        tg.push_back({base[i].name, base[i].degree});
        if (base[i].truncate > 0) ideal.push_back({i, base[i].truncate});
    }
    for (const auto& g : fiber) tg.push_back({g.name, g.degree});
    GeneratorSetPtr tset;
    try {
        tset = make_generator_set(tg, ideal);
    } catch (const std::exception& e) {
        throw ConfigError("base/fiber", detail::line_of(root["fiber"]), e.what());
    }
    std::map<std::string, Polynomial> d;
    for (const auto& [name, entry] : detail::read_polys(root["differential"], "differential")) {
        if (!tset->find(name))
            throw ConfigError("differential." + name, entry.second, "unknown generator '" + name + "'");
        d.emplace(name, detail::parse_at(entry.first, tset, params, "differential." + name, entry.second));
    }
    try {
        out.fibration = make_fibration(family, params, base, fiber, d);
    } catch (const ValidationError& e) {
        throw ConfigError("differential", detail::line_of(root["differential"] ? root["differential"] : root), e.what());
    }

    if (root["fixed_model"] || root["psi"]) {
        const auto fm = root["fixed_model"];
        if (!fm || !fm.IsMap()) throw ConfigError("fixed_model", detail::line_of(root), "pair files need a fixed_model map");
        const auto zg = detail::read_generators(fm["generators"], "fixed_model.generators", false);
        std::vector<Generator> zgens;
        for (const auto& g : zg) zgens.push_back({g.name, g.degree});
        auto zset = make_generator_set(zgens);
        std::vector<Polynomial> zd(zset->size(), Polynomial(zset));
        for (const auto& [name, entry] : detail::read_polys(fm["differential"], "fixed_model.differential")) {
            auto id = zset->find(name);
            if (!id) throw ConfigError("fixed_model.differential." + name, entry.second, "unknown generator");
            zd[*id] = detail::parse_at(entry.first, zset, params, "fixed_model.differential." + name, entry.second);
        }
        int ztop = 0;
        for (const auto& g : zgens) ztop = std::max(ztop, g.degree);
        Cdga fixed(zset, std::move(zd), 2 * std::max(ztop, out.fibration.top_fiber_degree()) + 2);
        const auto psi_text = detail::read_polys(root["psi"], "psi");
        try {
            out.pair = make_equivariant_pair(out.fibration, fixed, [&](const Cdga& bf, const std::string& v) {
                auto it = psi_text.find(v);
                if (it == psi_text.end()) return Polynomial(bf.set());
                return detail::parse_at(it->second.first, bf.set(), params, "psi." + v, it->second.second);
            });
        } catch (const ValidationError& e) {
            throw ConfigError("psi", detail::line_of(root["psi"] ? root["psi"] : root), e.what());
        } catch (const UnsupportedInput& e) {
            throw ConfigError("base", detail::line_of(root["base"] ? root["base"] : root), e.what());
        }
    }
    return out;
}

inline ModelConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("file", 0, "cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return load_config_string(ss.str());
}

inline FibrationModel load_fibration(const std::string& path) { return load_config(path).fibration; }

/// Writes a fibration in the config format; load_config_string inverts it.
inline std::string serialize(const FibrationModel& f)
{
    YAML::Emitter out;
    out << YAML::BeginMap;
    out << YAML::Key << "family" << YAML::Value << f.family;
    if (!f.params.empty()) {
        out << YAML::Key << "params" << YAML::Value << YAML::BeginMap;
        for (const auto& [k, v] : f.params) out << YAML::Key << k << YAML::Value << v.get_str();
        out << YAML::EndMap;
    }
    const auto& bs = f.base.generators();
    out << YAML::Key << "base" << YAML::Value << YAML::BeginSeq;
    for (std::size_t i = 0; i < bs.size(); ++i) {
        out << YAML::Flow << YAML::BeginMap << YAML::Key << "name" << YAML::Value << bs[i].name << YAML::Key
            << "degree" << YAML::Value << bs[i].degree;
        if (bs.truncation(i) > 0) out << YAML::Key << "truncate" << YAML::Value << bs.truncation(i);
        out << YAML::EndMap;
    }
    out << YAML::EndSeq;
    const auto& fs = f.fiber.generators();
    out << YAML::Key << "fiber" << YAML::Value << YAML::BeginSeq;
    for (std::size_t i = 0; i < fs.size(); ++i)
        out << YAML::Flow << YAML::BeginMap << YAML::Key << "name" << YAML::Value << fs[i].name << YAML::Key
            << "degree" << YAML::Value << fs[i].degree << YAML::EndMap;
    out << YAML::EndSeq;
    out << YAML::Key << "differential" << YAML::Value << YAML::BeginMap;
    for (std::size_t i = 0; i < fs.size(); ++i) {
        const auto& p = f.total.d(f.total_index(i));
        if (!p.is_zero()) out << YAML::Key << fs[i].name << YAML::Value << p.to_string();
    }
    out << YAML::EndMap;
    out << YAML::EndMap;
    return std::string(out.c_str()) + "\n";
}

}  // namespace hfp
