#include "kummer/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "kummer/error.hpp"

namespace kummer::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& v) {
  T out{};
  const char* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end)
    throw InvalidInput("bad value for " + key + ": '" + v + "'");
  return out;
}

template <class T>
std::vector<T> parse_list(const std::string& key, const std::string& v) {
  std::vector<T> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    out.push_back(parse_number<T>(key, item));
  }
  return out;
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw InvalidInput("bad boolean for " + key + ": '" + v + "'");
}

template <class T>
std::string join(const std::vector<T>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(xs[i]);
  }
  return out;
}

std::string format_double(double d) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, d);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace

OutputFormat parse_format(const std::string& s) {
  if (s == "csv") return OutputFormat::csv;
  if (s == "jsonl") return OutputFormat::jsonl;
  if (s == "text") return OutputFormat::text;
  throw InvalidInput("unknown output format: " + s);
}

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  if (key == "precision.initial")
    cfg.precision.initial = parse_number<long>(key, v);
  else if (key == "precision.max")
    cfg.precision.max = parse_number<long>(key, v);
  else if (key == "oracle_ceiling")
    cfg.oracle_ceiling = parse_number<std::uint64_t>(key, v);
  else if (key == "hminus_cap")
    cfg.hminus_cap = parse_number<std::uint64_t>(key, v);
  else if (key == "x_multiples")
    cfg.x_multiples = parse_list<std::uint64_t>(key, v);
  else if (key == "x_p_squared")
    cfg.x_p_squared = parse_bool(key, v);
  else if (key == "x_absolute")
    cfg.x_absolute = parse_list<std::uint64_t>(key, v);
  else if (key == "nus")
    cfg.nus = parse_list<unsigned>(key, v);
  else if (key == "lemma22_steps")
    cfg.lemma22_steps = parse_list<long>(key, v);
  else if (key == "lemma23_steps")
    cfg.lemma23_steps = parse_list<long>(key, v);
  else if (key == "c")
    cfg.c = (v == "default") ? std::nullopt : std::optional<double>(parse_number<double>(key, v));
  else if (key == "force_beta")
    cfg.force_beta = parse_bool(key, v);
  else if (key == "eq2_sigma")
    cfg.eq2_sigma = parse_number<long>(key, v);
  else if (key == "eq2_truncation")
    cfg.eq2_truncation = parse_number<std::uint64_t>(key, v);
  else if (key == "format")
    cfg.format = parse_format(v);
  else if (key == "cache")
    cfg.cache_path = v;
  else if (key == "jobs")
    cfg.jobs = parse_number<int>(key, v);
  else
    throw InvalidInput("unknown config key: " + key);
}

void apply_config_text(RunConfig& cfg, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw InvalidInput("config line " + std::to_string(lineno) + ": expected key = value");
    try {
      apply_setting(cfg, trim(line.substr(0, eq)), line.substr(eq + 1));
    } catch (const InvalidInput& e) {
      throw InvalidInput("config line " + std::to_string(lineno) + ": " + e.what());
    }
  }
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  apply_config_text(cfg, ss.str());
}

void apply_environment(RunConfig& cfg) {
  if (const char* env = std::getenv("KUMMER_CACHE"); env && *env) cfg.cache_path = env;
}

void RunConfig::validate() const {
  if (precision.initial < 64) throw InvalidInput("precision.initial must be at least 64");
  if (precision.initial > precision.max)
    throw InvalidInput("precision.initial must not exceed precision.max");
  if (c && !(*c >= bounds::kMinC)) throw InvalidInput("c must be at least 6.4355");
  if (eq2_sigma < 2) throw InvalidInput("eq2_sigma must be at least 2");
  if (hminus_cap > 4001) throw InvalidInput("hminus_cap is limited to 4001");
  for (long k : lemma22_steps)
    if (k != 1) throw InvalidInput("lemma22_steps must lie in {1}");
  for (long k : lemma23_steps)
    if (k < 1 || k > 2) throw InvalidInput("lemma23_steps must lie in {1, 2}");
  if (jobs < 0) throw InvalidInput("jobs must be non-negative");
}

std::vector<std::string> RunConfig::canonical() const {
  std::vector<std::string> lines{
      "c=" + (c ? format_double(*c) : std::string("default")),
      "eq2_sigma=" + std::to_string(eq2_sigma),
      "eq2_truncation=" + std::to_string(eq2_truncation),
      "force_beta=" + std::string(force_beta ? "true" : "false"),
      "hminus_cap=" + std::to_string(hminus_cap),
      "lemma22_steps=" + join(lemma22_steps),
      "lemma23_steps=" + join(lemma23_steps),
      "nus=" + join(nus),
      "oracle_ceiling=" + std::to_string(oracle_ceiling),
      "precision.initial=" + std::to_string(precision.initial),
      "precision.max=" + std::to_string(precision.max),
      "x_absolute=" + join(x_absolute),
      "x_multiples=" + join(x_multiples),
      "x_p_squared=" + std::string(x_p_squared ? "true" : "false"),
  };
  std::sort(lines.begin(), lines.end());
  return lines;
}

std::string RunConfig::fingerprint() const {
  std::uint64_t h = 1469598103934665603ULL;
  for (const auto& line : canonical()) {
    for (unsigned char ch : line + "\n") {
      h ^= ch;
      h *= 1099511628211ULL;
    }
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

bounds::VerifyConfig RunConfig::verify_config() const {
  bounds::VerifyConfig v;
  v.precision = precision;
  v.x_multiples = x_multiples;
  v.include_p_squared = x_p_squared;
  v.x_absolute = x_absolute;
  v.nus = nus;
  v.lemma22_steps = lemma22_steps;
  v.lemma23_steps = lemma23_steps;
  v.c = c;
  v.force_beta = force_beta;
  v.eq2_sigma = eq2_sigma;
  v.eq2_truncation = eq2_truncation;
  v.hminus_cap = hminus_cap;
  return v;
}

}  // namespace kummer::cli
