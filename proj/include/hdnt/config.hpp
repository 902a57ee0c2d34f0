#ifndef HDNT_CONFIG_HPP
#define HDNT_CONFIG_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace hdnt {

/// Parsed `key = value` configuration: one assignment per line, `#` starts
/// a comment, blank lines ignored. Entries keep file order.
struct KeyValueConfig {
  std::vector<std::pair<std::string, std::string>> entries;
};

KeyValueConfig parse_key_value_config(const std::string& text);

int config_int(const std::string& key, const std::string& value);
std::uint64_t config_uint64(const std::string& key, const std::string& value);
double config_double(const std::string& key, const std::string& value);

/// Shortest representation that round-trips the double exactly.
std::string format_double(double v);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace hdnt

#endif  // HDNT_CONFIG_HPP
