#ifndef SHILNIKOV_CONFIG_HPP
#define SHILNIKOV_CONFIG_HPP

#include <map>
#include <optional>
#include <string>

// Line-oriented configuration: `[section]` headers over `key = value` pairs,
// `#` comments. Deliberately dependency-free so configs are writable from any
// language.

namespace shilnikov {

class Config {
public:
    Config() = default;

    static Config parse(const std::string& text);
    static Config load(const std::string& path);

    void set(const std::string& section, const std::string& key, const std::string& value);
    std::optional<std::string> get(const std::string& section, const std::string& key) const;
    double get_double(const std::string& section, const std::string& key, double fallback) const;
    long get_long(const std::string& section, const std::string& key, long fallback) const;
    std::string get_string(const std::string& section, const std::string& key,
                           const std::string& fallback) const;

    bool has_section(const std::string& section) const;

    /// Serializes back to the same format; parse(dump()) is equivalent.
    std::string dump() const;

private:
    std::map<std::string, std::map<std::string, std::string>> sections_;
};

} // namespace shilnikov

#endif
