#pragma once

// Append-only result cache: one JSON object per line with the fields kind,
// p, payload, config_fingerprint and timestamp. Big integers are decimal
// strings; balls are {mid, rad, bits} with decimal strings that read back to
// the identical midpoint and radius.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include <json.hpp>

#include "kummer/ball.hpp"
#include "kummer/classnumber.hpp"
#include "kummer/lfunc.hpp"

namespace kummer::cli {

using nlohmann::json;

json ball_to_json(const BallReal& b);
BallReal ball_from_json(const json& j);

// Exact decimal rendering of a midpoint or radius, and its inverse.
std::string mpfr_to_decimal(mpfr_srcptr x);
void mpfr_from_decimal(mpfr_ptr out, const std::string& s);

json record_to_json(const classnumber::RelativeClassNumberRecord& r);
classnumber::RelativeClassNumberRecord record_from_json(const json& j);

// Payload of a scan entry: the class number record plus the Siegel verdict.
json scan_payload(const classnumber::RelativeClassNumberRecord& r,
                  const lfunc::SiegelZeroReport& siegel);

struct CacheEntry {
  std::string kind;
  std::uint64_t p = 0;
  json payload;
  std::string config_fingerprint;
  std::string timestamp;
};

json entry_to_json(const CacheEntry& e);
CacheEntry entry_from_json(const json& j);

// Current UTC time as YYYY-MM-DDTHH:MM:SSZ.
std::string utc_timestamp();

class Cache {
 public:
  // Reads existing entries; a missing file is an empty cache. Lines that do
  // not parse (a torn final write, say) are skipped and counted.
  explicit Cache(std::string path);

  const std::string& path() const { return path_; }
  std::size_t size() const { return entries_.size(); }
  std::size_t skipped_lines() const { return skipped_; }

  // Latest entry for (kind, p) carrying this fingerprint.
  const CacheEntry* find(const std::string& kind, std::uint64_t p,
                         const std::string& fingerprint) const;

  // Appends one line and flushes; the only writer is the calling thread.
  void append(const CacheEntry& e);

 private:
  std::string path_;
  std::map<std::tuple<std::string, std::uint64_t, std::string>, CacheEntry> entries_;
  std::size_t skipped_ = 0;
};

}  // namespace kummer::cli
