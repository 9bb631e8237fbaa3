#include "mami/config.hpp"

#include <fstream>
#include <sstream>

namespace mami {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

}  // namespace

void KeyValueConfig::insert_line(const std::string& raw) {
    std::string line = raw;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) return;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
        throw ConfigError("config: expected key=value, got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("config: empty key");
    values_[key] = value;
}

KeyValueConfig KeyValueConfig::from_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("config: cannot open " + path);
    KeyValueConfig cfg;
    std::string line;
    while (std::getline(f, line)) cfg.insert_line(line);
    return cfg;
}

KeyValueConfig KeyValueConfig::from_string(const std::string& text) {
    KeyValueConfig cfg;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) cfg.insert_line(line);
    return cfg;
}

void KeyValueConfig::set_override(const std::string& assignment) {
    insert_line(assignment);
    consumed_.erase(assignment.substr(0, assignment.find('=')));
}

bool KeyValueConfig::has(const std::string& key) const { return values_.count(key) > 0; }

std::string KeyValueConfig::take(const std::string& key) {
    auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("config: missing key '" + key + "'");
    consumed_[key] = true;
    return it->second;
}

std::string KeyValueConfig::get_string(const std::string& key) { return take(key); }

std::string KeyValueConfig::get_string(const std::string& key, const std::string& fallback) {
    return has(key) ? take(key) : fallback;
}

double KeyValueConfig::get_double(const std::string& key) {
    const std::string v = take(key);
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "' is not a number: '" + v + "'");
    }
}

double KeyValueConfig::get_double(const std::string& key, double fallback) {
    return has(key) ? get_double(key) : fallback;
}

std::int64_t KeyValueConfig::get_int(const std::string& key) {
    const std::string v = take(key);
    try {
        std::size_t pos = 0;
        const long long i = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return i;
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "' is not an integer: '" + v + "'");
    }
}

std::int64_t KeyValueConfig::get_int(const std::string& key, std::int64_t fallback) {
    return has(key) ? get_int(key) : fallback;
}

std::vector<double> KeyValueConfig::get_double_list(const std::string& key) {
    const std::string v = take(key);
    std::istringstream is(v);
    std::vector<double> out;
    std::string tok;
    while (is >> tok) {
        try {
            out.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw ConfigError("config: key '" + key + "' has a non-numeric entry '" + tok + "'");
        }
    }
    if (out.empty()) throw ConfigError("config: key '" + key + "' has no entries");
    return out;
}

std::vector<double> KeyValueConfig::get_double_list(const std::string& key,
                                                    const std::vector<double>& fallback) {
    return has(key) ? get_double_list(key) : fallback;
}

void KeyValueConfig::finish() const {
    for (const auto& [key, value] : values_) {
        (void)value;
        if (!consumed_.count(key)) throw ConfigError("config: unknown key '" + key + "'");
    }
}

}  // namespace mami
