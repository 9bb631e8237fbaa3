#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mami/errors.hpp"

namespace mami {

// Flat key=value configuration. '#' starts a comment, blank lines are
// skipped. Every key must be consumed by the reader; leftovers are rejected
// so typos fail loudly instead of silently using defaults.
class KeyValueConfig {
  public:
    static KeyValueConfig from_file(const std::string& path);
    static KeyValueConfig from_string(const std::string& text);

    // "key=value" override, applied on top of the file
    void set_override(const std::string& assignment);

    bool has(const std::string& key) const;

    std::string get_string(const std::string& key);
    std::string get_string(const std::string& key, const std::string& fallback);
    double get_double(const std::string& key);
    double get_double(const std::string& key, double fallback);
    std::int64_t get_int(const std::string& key);
    std::int64_t get_int(const std::string& key, std::int64_t fallback);
    // space-separated list of numbers
    std::vector<double> get_double_list(const std::string& key);
    std::vector<double> get_double_list(const std::string& key,
                                        const std::vector<double>& fallback);

    // throws ConfigError when any key was never consumed
    void finish() const;

    bool empty() const { return values_.empty(); }

  private:
    std::map<std::string, std::string> values_;
    mutable std::map<std::string, bool> consumed_;

    std::string take(const std::string& key);
    void insert_line(const std::string& line);
};

}  // namespace mami
