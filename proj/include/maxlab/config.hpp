#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "maxlab/errors.hpp"

namespace maxlab {

/// Plain-text key=value configuration with [section] headers. Keys are
/// addressed as "section.key". Parsing against a schema is strict: the first
/// key not in the schema is a fatal error.
class Config {
public:
    static Config parse_file(const std::string& path, const std::set<std::string>& schema);
    static Config parse_string(const std::string& text, const std::set<std::string>& schema);

    bool has(const std::string& key) const { return values_.count(key) > 0; }
    std::string get(const std::string& key, const std::string& fallback) const;
    double get(const std::string& key, double fallback) const;
    int get(const std::string& key, int fallback) const;
    long long get(const std::string& key, long long fallback) const;
    std::vector<double> get_list(const std::string& key, const std::vector<double>& fallback) const;

    void set(const std::string& key, const std::string& value) { values_[key] = value; }
    const std::map<std::string, std::string>& values() const { return values_; }

private:
    std::map<std::string, std::string> values_;
};

class ConfigError : public InvalidInput {
public:
    explicit ConfigError(const std::string& what) : InvalidInput(what) {}
};

} // namespace maxlab
