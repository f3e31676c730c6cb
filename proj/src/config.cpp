#include "shilnikov/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "shilnikov/errors.hpp"

namespace shilnikov {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

} // namespace

Config Config::parse(const std::string& text) {
    Config c;
    std::istringstream is(text);
    std::string line, section;
    long lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                throw Error("config line " + std::to_string(lineno) + ": unterminated section");
            section = trim(t.substr(1, t.size() - 2));
            c.sections_[section];
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw Error("config line " + std::to_string(lineno) + ": expected key = value");
        c.sections_[section][trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
    }
    return c;
}

Config Config::load(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("cannot open config file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse(ss.str());
}

void Config::set(const std::string& section, const std::string& key, const std::string& value) {
    sections_[section][key] = value;
}

std::optional<std::string> Config::get(const std::string& section, const std::string& key) const {
    const auto s = sections_.find(section);
    if (s == sections_.end()) return std::nullopt;
    const auto k = s->second.find(key);
    if (k == s->second.end()) return std::nullopt;
    return k->second;
}

double Config::get_double(const std::string& section, const std::string& key,
                          double fallback) const {
    const auto v = get(section, key);
    if (!v) return fallback;
    char* end = nullptr;
    const double d = std::strtod(v->c_str(), &end);
    if (end == v->c_str()) throw Error("config: " + section + "." + key + " is not a number");
    return d;
}

long Config::get_long(const std::string& section, const std::string& key, long fallback) const {
    return static_cast<long>(get_double(section, key, static_cast<double>(fallback)));
}

std::string Config::get_string(const std::string& section, const std::string& key,
                               const std::string& fallback) const {
    return get(section, key).value_or(fallback);
}

bool Config::has_section(const std::string& section) const {
    return sections_.count(section) > 0;
}

std::string Config::dump() const {
    std::ostringstream os;
    for (const auto& [name, kv] : sections_) {
        os << '[' << name << "]\n";
        for (const auto& [k, v] : kv) os << k << " = " << v << '\n';
        os << '\n';
    }
    return os.str();
}

} // namespace shilnikov
