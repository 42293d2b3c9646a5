#pragma once

// Report documents for the command line: a text form and a JSON form built
// from the same fields.
//
// JSON schema (version 1):
//   { "schema": 1, "engine": str, "command": str, "cutoff": int, "status": str,
//     "models":   [ { "label", "generators": [str], "degrees": [int],
//                     "differential": { gen: str } } ],
//     "tables":   [ { "label", "kind", "dims": { "<degree>": int } } ],
//     "verdicts": [ { "label", "expected", "actual", "ok": bool } ],
//     "notes":    [ str ] }

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "hfp/cdga.hpp"
#include "hfp/minimal.hpp"

namespace hfp {

inline constexpr const char* kEngineVersion = "hfp 1.0.0";

struct ModelListing {
    std::string label;
    std::vector<std::string> generators;
    std::vector<int> degrees;
    std::vector<std::pair<std::string, std::string>> differential;  // generator order
};

struct TableListing {
    std::string label;
    std::string kind;  // "pi" or "betti"
    std::map<int, std::size_t> dims;  // nonzero entries only
};

struct VerdictListing {
    std::string label;
    std::string expected;
    std::string actual;
    bool ok = false;
};

struct ReportDocument {
    std::string command;
    int cutoff = 0;
    std::string status = "ok";
    std::vector<ModelListing> models;
    std::vector<TableListing> tables;
    std::vector<VerdictListing> verdicts;
    std::vector<std::string> notes;

    void add_model(const std::string& label, const Cdga& c)
    {
        ModelListing m{label, {}, {}, {}};
        const auto& set = c.generators();
        for (std::size_t i = 0; i < set.size(); ++i) {
            m.generators.push_back(set[i].name);
            m.degrees.push_back(set[i].degree);
            m.differential.emplace_back(set[i].name, c.d(i).to_string());
        }
        models.push_back(std::move(m));
    }

    void add_table(const std::string& label, const PiTable& t)
    {
        TableListing out{label, "pi", {}};
        for (int k = 0; k <= t.cutoff(); ++k)
            if (t[k]) out.dims[k] = t[k];
        tables.push_back(std::move(out));
    }

    void add_table(const std::string& label, const BettiTable& t)
    {
        TableListing out{label, "betti", {}};
        for (int k = 0; k <= t.max_degree(); ++k)
            if (t[k]) out.dims[k] = t[k];
        tables.push_back(std::move(out));
    }

    bool add_verdict(const std::string& label, const std::string& expected, const std::string& actual, bool ok)
    {
        verdicts.push_back({label, expected, actual, ok});
        return ok;
    }

    void add_note(const std::string& n)
    {
        for (const auto& e : notes)
            if (e == n) return;
        notes.push_back(n);
    }

    bool all_ok() const
    {
        for (const auto& v : verdicts)
            if (!v.ok) return false;
        return true;
    }

    nlohmann::ordered_json to_json() const
    {
        nlohmann::ordered_json j;
        j["schema"] = 1;
        j["engine"] = kEngineVersion;
        j["command"] = command;
        j["cutoff"] = cutoff;
        j["status"] = status;
        j["models"] = nlohmann::ordered_json::array();
        for (const auto& m : models) {
            nlohmann::ordered_json d = nlohmann::ordered_json::object();
            for (const auto& [g, p] : m.differential) d[g] = p;
            j["models"].push_back({{"label", m.label}, {"generators", m.generators}, {"degrees", m.degrees},
                                   {"differential", d}});
        }
        j["tables"] = nlohmann::ordered_json::array();
        for (const auto& t : tables) {
            nlohmann::ordered_json d = nlohmann::ordered_json::object();
            for (const auto& [k, v] : t.dims) d[std::to_string(k)] = v;
            j["tables"].push_back({{"label", t.label}, {"kind", t.kind}, {"dims", d}});
        }
        j["verdicts"] = nlohmann::ordered_json::array();
        for (const auto& v : verdicts)
            j["verdicts"].push_back({{"label", v.label}, {"expected", v.expected}, {"actual", v.actual}, {"ok", v.ok}});
        j["notes"] = notes;
        return j;
    }

    std::string to_text() const
    {
        std::ostringstream out;
        out << "engine: " << kEngineVersion << "\n";
        out << "command: " << command << "\n";
        out << "cutoff: " << cutoff << " (all claims hold up to degree " << cutoff << ")\n";
        out << "status: " << status << "\n";
        for (const auto& m : models) {
            out << "\nmodel " << m.label << "\n";
            if (m.generators.empty()) out << "  (no generators)\n";
            for (std::size_t i = 0; i < m.generators.size(); ++i)
                out << "  " << m.generators[i] << " (" << m.degrees[i] << ")  d = " << m.differential[i].second << "\n";
        }
        if (!tables.empty()) out << "\n";
        for (const auto& t : tables) out << t.kind << " " << t.label << ": " << dims_string(t.dims) << "\n";
        if (!verdicts.empty()) out << "\n";
        for (const auto& v : verdicts)
            out << (v.ok ? "[ok]   " : "[FAIL] ") << v.label << ": expected " << v.expected << ", got " << v.actual
                << "\n";
        if (!notes.empty()) out << "\n";
        for (const auto& n : notes) out << "note: " << n << "\n";
        return out.str();
    }

    std::string render(const std::string& format) const
    {
        return format == "json" ? to_json().dump(2) + "\n" : to_text();
    }

    static std::string dims_string(const std::map<int, std::size_t>& dims)
    {
        std::string s = "{";
        bool first = true;
        for (const auto& [k, v] : dims) {
            s += (first ? "" : ", ") + std::to_string(k) + ":" + std::to_string(v);
            first = false;
        }
        return s + "}";
    }
};

/// 64-bit FNV-1a, used to key persisted reports by invocation.
inline std::uint64_t fnv1a(const std::string& s)
{
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

/// Writes the rendered report under dir/<hash>.<ext>; returns the path.
inline std::filesystem::path persist_report(const std::filesystem::path& dir, const std::string& invocation,
                                            const std::string& format, const std::string& rendered)
{
    std::filesystem::create_directories(dir);
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a(std::string(kEngineVersion) + "\n" + invocation + "\n" + format)));
    auto path = dir / (std::string(buf) + (format == "json" ? ".json" : ".txt"));
    std::ofstream(path, std::ios::binary) << rendered;
    return path;
}

}  // namespace hfp
