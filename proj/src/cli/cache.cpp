#include "kummer/cli/cache.hpp"

#include <ctime>
#include <fstream>

#include "kummer/error.hpp"

namespace kummer::cli {

std::string mpfr_to_decimal(mpfr_srcptr x) {
  if (mpfr_nan_p(x)) return "nan";
  if (mpfr_inf_p(x)) return mpfr_sgn(x) > 0 ? "inf" : "-inf";
  if (mpfr_zero_p(x)) return "0";
  mpfr_exp_t e = 0;
  // n = 0 asks for enough digits to read back the same value at this precision.
  char* digits = mpfr_get_str(nullptr, &e, 10, 0, x, MPFR_RNDN);
  std::string s(digits);
  mpfr_free_str(digits);
  std::string sign;
  if (s[0] == '-') {
    sign = "-";
    s.erase(0, 1);
  }
  // digits = 0.DDDD x 10^e; emit D.DDDe(e-1).
  std::string out = sign + s.substr(0, 1);
  if (s.size() > 1) out += "." + s.substr(1);
  out += "e" + std::to_string(static_cast<long>(e) - 1);
  return out;
}

void mpfr_from_decimal(mpfr_ptr out, const std::string& s) {
  if (s == "inf") return mpfr_set_inf(out, 1);
  if (s == "-inf") return mpfr_set_inf(out, -1);
  char* end = nullptr;
  mpfr_strtofr(out, s.c_str(), &end, 10, MPFR_RNDN);
  if (end == s.c_str() || *end != '\0') throw InvalidInput("bad decimal in cache: " + s);
}

json ball_to_json(const BallReal& b) {
  mpfr_t r;
  mpfr_init2(r, 64);
  b.rad().get_mpfr(r);
  json j{{"mid", mpfr_to_decimal(b.mid())}, {"rad", mpfr_to_decimal(r)}, {"bits", b.prec()}};
  mpfr_clear(r);
  return j;
}

BallReal ball_from_json(const json& j) {
  const mpfr_prec_t bits = j.at("bits").get<long>();
  if (bits < MPFR_PREC_MIN || bits > MPFR_PREC_MAX) throw InvalidInput("bad precision in cache");
  BallReal b(bits);
  mpfr_from_decimal(b.mid_mut(), j.at("mid").get<std::string>());
  mpfr_t r;
  mpfr_init2(r, 64);
  mpfr_from_decimal(r, j.at("rad").get<std::string>());
  b.set_rad(Mag::from_mpfr(r));
  mpfr_clear(r);
  return b;
}

json record_to_json(const classnumber::RelativeClassNumberRecord& r) {
  json j{{"p", r.p},
         {"h_minus", r.h_minus.get_str()},
         {"log_G", ball_to_json(r.log_G)},
         {"log_ratio", ball_to_json(r.log_ratio)},
         {"method", classnumber::to_string(r.method)},
         {"precision_bits", r.precision_bits},
         {"certified", r.certified}};
  j["integrality_gap"] = r.integrality_gap ? json(*r.integrality_gap) : json(nullptr);
  return j;
}

classnumber::RelativeClassNumberRecord record_from_json(const json& j) {
  classnumber::RelativeClassNumberRecord r;
  r.p = j.at("p").get<std::uint64_t>();
  if (r.h_minus.set_str(j.at("h_minus").get<std::string>(), 10) != 0)
    throw InvalidInput("bad integer in cache");
  r.log_G = ball_from_json(j.at("log_G"));
  r.log_ratio = ball_from_json(j.at("log_ratio"));
  r.method = classnumber::parse_method(j.at("method").get<std::string>());
  r.precision_bits = j.at("precision_bits").get<long>();
  r.certified = j.at("certified").get<bool>();
  if (const auto& g = j.at("integrality_gap"); !g.is_null()) r.integrality_gap = g.get<double>();
  return r;
}

json scan_payload(const classnumber::RelativeClassNumberRecord& r,
                  const lfunc::SiegelZeroReport& siegel) {
  json j = record_to_json(r);
  j["siegel"] = json{{"present", siegel.present},
                     {"certified", siegel.certified},
                     {"method", lfunc::to_string(siegel.method)},
                     {"c", siegel.c},
                     {"beta", siegel.beta ? ball_to_json(*siegel.beta) : json(nullptr)}};
  return j;
}

json entry_to_json(const CacheEntry& e) {
  return json{{"kind", e.kind},
              {"p", e.p},
              {"payload", e.payload},
              {"config_fingerprint", e.config_fingerprint},
              {"timestamp", e.timestamp}};
}

CacheEntry entry_from_json(const json& j) {
  CacheEntry e;
  e.kind = j.at("kind").get<std::string>();
  e.p = j.at("p").get<std::uint64_t>();
  e.payload = j.at("payload");
  e.config_fingerprint = j.at("config_fingerprint").get<std::string>();
  e.timestamp = j.at("timestamp").get<std::string>();
  return e;
}

std::string utc_timestamp() {
  std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Cache::Cache(std::string path) : path_(std::move(path)) {
  std::ifstream in(path_);
  if (!in) return;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      CacheEntry e = entry_from_json(json::parse(line));
      auto key = std::make_tuple(e.kind, e.p, e.config_fingerprint);
      entries_[key] = std::move(e);
    } catch (const std::exception&) {
      ++skipped_;
    }
  }
}

const CacheEntry* Cache::find(const std::string& kind, std::uint64_t p,
                              const std::string& fingerprint) const {
  auto it = entries_.find(std::make_tuple(kind, p, fingerprint));
  return it == entries_.end() ? nullptr : &it->second;
}

void Cache::append(const CacheEntry& e) {
  std::ofstream out(path_, std::ios::app);
  if (!out) throw InvalidInput("cannot write cache file: " + path_);
  out << entry_to_json(e).dump() << '\n';
  out.flush();
  if (!out) throw InvalidInput("cannot write cache file: " + path_);
  entries_[std::make_tuple(e.kind, e.p, e.config_fingerprint)] = e;
}

}  // namespace kummer::cli
