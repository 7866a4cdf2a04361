#pragma once

// Run configuration: built from defaults, then a key = value file, then the
// KUMMER_CACHE environment variable (cache path only), then command-line
// flags. Later sources win.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kummer/bounds.hpp"
#include "kummer/precision.hpp"

namespace kummer::cli {

enum class OutputFormat { csv, jsonl, text };

struct RunConfig {
  PrecisionPolicy precision;
  std::uint64_t oracle_ceiling = 199;
  std::uint64_t hminus_cap = 4001;
  std::vector<std::uint64_t> x_multiples{2, 10};
  bool x_p_squared = true;
  std::vector<std::uint64_t> x_absolute{10000000};
  std::vector<unsigned> nus{0, 1, 2, 3};
  std::vector<long> lemma22_steps{1};
  std::vector<long> lemma23_steps{1, 2};
  std::optional<double> c;
  bool force_beta = false;
  long eq2_sigma = 2;
  std::uint64_t eq2_truncation = 10000000;
  std::optional<OutputFormat> format;  // scan defaults to csv, the rest to text
  std::string cache_path = "kummer_cache.jsonl";
  int jobs = 0;  // 0: OpenMP default

  // Throws InvalidInput on inconsistent settings.
  void validate() const;

  // Canonical "key=value" lines of every setting that affects results,
  // sorted by key. Output format, cache path and jobs are excluded.
  std::vector<std::string> canonical() const;

  // FNV-1a 64 of the canonical lines, as 16 hex digits.
  std::string fingerprint() const;

  bounds::VerifyConfig verify_config() const;
};

// Applies "key = value" lines; '#' starts a comment. Unknown keys and bad
// values throw InvalidInput naming the line.
void apply_config_text(RunConfig& cfg, const std::string& text);
void apply_config_file(RunConfig& cfg, const std::string& path);

// Sets one key; shared by the file parser and tests.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

void apply_environment(RunConfig& cfg);

OutputFormat parse_format(const std::string& s);

}  // namespace kummer::cli
