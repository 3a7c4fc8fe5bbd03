#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace isr {

// Minimal sectioned key/value config file:
//   [section]
//   key = value        # comment
// Values are bare words, numbers, booleans or comma-separated number lists.
class Config {
public:
    static Config parse(const std::string& text);
    static Config parse_file(const std::string& path);

    bool has(const std::string& section, const std::string& key) const;
    std::string get_string(const std::string& section, const std::string& key,
                           const std::string& fallback) const;
    double get_double(const std::string& section, const std::string& key, double fallback) const;
    double require_double(const std::string& section, const std::string& key) const;
    long get_long(const std::string& section, const std::string& key, long fallback) const;
    bool get_bool(const std::string& section, const std::string& key, bool fallback) const;
    std::vector<double> get_double_list(const std::string& section, const std::string& key,
                                        const std::vector<double>& fallback) const;

private:
    std::map<std::string, std::map<std::string, std::string>> sections_;
    const std::string* find(const std::string& section, const std::string& key) const;
};

}  // namespace isr
