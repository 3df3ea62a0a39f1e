#pragma once

#include <cctype>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "frontlab/core.hpp"

namespace frontlab {

/// Minimal TOML-style config: [sections], key = value, values being strings,
/// numbers, booleans, or flat arrays. Keys are reported as "section.key".
class Config {
  public:
    struct Entry {
        std::string raw;
        int line = 0;
    };

    static Config parse(const std::string& text) {
        Config c;
        std::istringstream in(text);
        std::string line, section;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            std::string s = strip(line);
            if (s.empty() || s[0] == '#') continue;
            if (s.front() == '[') {
                auto close = s.find(']');
                if (close == std::string::npos)
                    throw ConfigError("line " + std::to_string(lineno) +
                                      ": unterminated section header");
                section = strip(s.substr(1, close - 1));
                continue;
            }
            auto eq = s.find('=');
            if (eq == std::string::npos)
                throw ConfigError("line " + std::to_string(lineno) +
                                  ": expected key = value");
            std::string key = strip(s.substr(0, eq));
            std::string val = strip(s.substr(eq + 1));
            if (key.empty() || val.empty())
                throw ConfigError("line " + std::to_string(lineno) +
                                  ": empty key or value");
            std::string full = section.empty() ? key : section + "." + key;
            c.entries_[full] = Entry{val, lineno};
        }
        return c;
    }

    bool has(const std::string& key) const { return entries_.count(key) != 0; }

    double get_double(const std::string& key, double fallback) const {
        auto it = entries_.find(key);
        if (it == entries_.end()) return fallback;
        return to_double(it->second, key);
    }
    double require_double(const std::string& key) const {
        auto it = entries_.find(key);
        if (it == entries_.end()) throw ConfigError("missing required key '" + key + "'");
        return to_double(it->second, key);
    }
    long get_int(const std::string& key, long fallback) const {
        return static_cast<long>(std::llround(get_double(key, static_cast<double>(fallback))));
    }
    bool get_bool(const std::string& key, bool fallback) const {
        auto it = entries_.find(key);
        if (it == entries_.end()) return fallback;
        const std::string& v = it->second.raw;
        if (v == "true") return true;
        if (v == "false") return false;
        throw ConfigError("line " + std::to_string(it->second.line) + ": key '" + key +
                          "' is not a boolean");
    }
    std::string get_string(const std::string& key, const std::string& fallback) const {
        auto it = entries_.find(key);
        if (it == entries_.end()) return fallback;
        return unquote(it->second.raw, it->second.line, key);
    }
    std::vector<double> get_array(const std::string& key,
                                  const std::vector<double>& fallback) const {
        auto it = entries_.find(key);
        if (it == entries_.end()) return fallback;
        const std::string& v = it->second.raw;
        if (v.size() < 2 || v.front() != '[' || v.back() != ']')
            throw ConfigError("line " + std::to_string(it->second.line) + ": key '" + key +
                              "' is not an array");
        std::vector<double> out;
        std::string body = v.substr(1, v.size() - 2);
        std::istringstream bs(body);
        std::string tok;
        while (std::getline(bs, tok, ',')) {
            tok = strip(tok);
            if (tok.empty()) continue;
            out.push_back(to_double(Entry{tok, it->second.line}, key));
        }
        return out;
    }

    /// Every present key must be in the allowed set; names the offender.
    void validate_keys(const std::set<std::string>& allowed) const {
        for (const auto& [k, e] : entries_) {
            if (!allowed.count(k))
                throw ConfigError("line " + std::to_string(e.line) + ": unknown key '" +
                                  k + "'");
        }
    }

    /// Canonical serialization (sorted keys) used for hashing and re-runs.
    std::string canonical() const {
        std::string out;
        for (const auto& [k, e] : entries_) out += k + "=" + e.raw + "\n";
        return out;
    }

    std::uint64_t hash() const {  // FNV-1a
        std::uint64_t h = 1469598103934665603ull;
        for (char ch : canonical()) {
            h ^= static_cast<unsigned char>(ch);
            h *= 1099511628211ull;
        }
        return h;
    }

  private:
    static std::string strip(const std::string& s) {
        std::size_t a = 0, b = s.size();
        while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
        while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
        return s.substr(a, b - a);
    }
    static std::string unquote(const std::string& v, int line, const std::string& key) {
        if (v.size() >= 2 && v.front() == '"' && v.back() == '"')
            return v.substr(1, v.size() - 2);
        if (v.find(' ') != std::string::npos)
            throw ConfigError("line " + std::to_string(line) + ": key '" + key +
                              "' needs quotes");
        return v;
    }
    static double to_double(const Entry& e, const std::string& key) {
        try {
            std::size_t pos = 0;
            double v = std::stod(e.raw, &pos);
            if (pos != e.raw.size()) throw std::invalid_argument("trailing");
            return v;
        } catch (const std::exception&) {
            throw ConfigError("line " + std::to_string(e.line) + ": key '" + key +
                              "' is not a number (got '" + e.raw + "')");
        }
    }

    std::map<std::string, Entry> entries_;
};

}  // namespace frontlab
