#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "kummer/cli/cache.hpp"
#include "kummer/cli/commands.hpp"
#include "kummer/cli/config.hpp"
#include "kummer/error.hpp"
#include "support.hpp"

using namespace kummer;
using namespace kummer::cli;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Sandbox {
  fs::path dir;
  Sandbox() {
    dir = fs::temp_directory_path() / ("kummer_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~Sandbox() {
    std::error_code ec;
    fs::remove_all(dir, ec);
  }
  fs::path cache() const { return dir / "cache.jsonl"; }

  Run run(const std::string& args, const std::string& env = "") const {
    const char* bin = std::getenv("KUMMER_BIN");
    REQUIRE_MESSAGE(bin, "KUMMER_BIN must point at the kummer executable");
    const fs::path o = dir / "stdout", e = dir / "stderr";
    const std::string cmd = "env KUMMER_CACHE='" + cache().string() + "' " + env + " '" + bin +
                            "' " + args + " >'" + o.string() + "' 2>'" + e.string() + "'";
    const int status = std::system(cmd.c_str());
    Run r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(o);
    r.err = slurp(e);
    return r;
  }
};

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string l;
  while (std::getline(ss, l)) out.push_back(l);
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string f;
  while (std::getline(ss, f, sep)) out.push_back(f);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

}  // namespace

TEST_CASE("config file, environment and validation") {
  RunConfig cfg;
  apply_config_text(cfg,
                    "# comment\n"
                    "precision.initial = 256\n"
                    "x_multiples = 3, 5\n"
                    "c = 7.25\n"
                    "force_beta = true\n"
                    "format = jsonl\n");
  CHECK(cfg.precision.initial == 256);
  CHECK(cfg.x_multiples == std::vector<std::uint64_t>{3, 5});
  REQUIRE(cfg.c);
  CHECK(*cfg.c == 7.25);
  CHECK(cfg.force_beta);
  CHECK(cfg.format == OutputFormat::jsonl);
  CHECK_NOTHROW(cfg.validate());

  CHECK_THROWS_AS(apply_config_text(cfg, "nonsense = 1\n"), InvalidInput);
  CHECK_THROWS_AS(apply_config_text(cfg, "precision.initial = fast\n"), InvalidInput);
  CHECK_THROWS_AS(apply_config_text(cfg, "no equals sign\n"), InvalidInput);

  RunConfig bad;
  bad.precision.initial = 8192;
  CHECK_THROWS_AS(bad.validate(), InvalidInput);
  bad = RunConfig{};
  bad.c = 5.0;
  CHECK_THROWS_AS(bad.validate(), InvalidInput);
  bad = RunConfig{};
  bad.lemma23_steps = {3};
  CHECK_THROWS_AS(bad.validate(), InvalidInput);

  ::setenv("KUMMER_CACHE", "/tmp/elsewhere.jsonl", 1);
  RunConfig env;
  apply_environment(env);
  CHECK(env.cache_path == "/tmp/elsewhere.jsonl");
  ::unsetenv("KUMMER_CACHE");
}

TEST_CASE("fingerprint covers computation settings only") {
  RunConfig a, b;
  CHECK(a.fingerprint() == b.fingerprint());
  CHECK(a.fingerprint().size() == 16);
  b.format = OutputFormat::text;
  b.cache_path = "x";
  b.jobs = 3;
  CHECK(a.fingerprint() == b.fingerprint());
  b.precision.initial = 192;
  CHECK(a.fingerprint() != b.fingerprint());
  RunConfig c;
  c.c = 6.5;
  CHECK(a.fingerprint() != c.fingerprint());
}

TEST_CASE("cache round trip is field-identical") {
  auto rec = classnumber::compute(41, classnumber::Method::both);
  lfunc::SiegelZeroReport siegel = lfunc::siegel_scan(43, 6.4355);
  json payload = scan_payload(rec, siegel);
  auto back = record_from_json(json::parse(payload.dump()));
  CHECK(back.p == rec.p);
  CHECK(back.h_minus == rec.h_minus);
  CHECK(testsupport::identical(back.log_G, rec.log_G));
  CHECK(testsupport::identical(back.log_ratio, rec.log_ratio));
  CHECK(back.method == rec.method);
  CHECK(back.precision_bits == rec.precision_bits);
  CHECK(back.certified == rec.certified);
  CHECK(back.integrality_gap == rec.integrality_gap);

  // Awkward radii and precisions survive too.
  for (mpfr_prec_t prec : {53L, 64L, 333L, 4096L}) {
    BallReal b = log_ui(7, prec) / BallReal(3, prec);
    b.add_error(Mag::pow2(-123457));
    CHECK(testsupport::identical(ball_from_json(json::parse(ball_to_json(b).dump())), b));
  }
  BallReal inf_rad(1, 64);
  inf_rad.set_rad(Mag::inf());
  CHECK(ball_from_json(ball_to_json(inf_rad)).rad().is_inf());

  Sandbox box;
  {
    Cache c(box.cache().string());
    c.append({"scan", 41, payload, "abc", utc_timestamp()});
  }
  {
    std::ofstream torn(box.cache(), std::ios::app);
    torn << "{\"kind\": \"scan\", \"p\":";
  }
  Cache c(box.cache().string());
  CHECK(c.skipped_lines() == 1);
  const CacheEntry* e = c.find("scan", 41, "abc");
  REQUIRE(e);
  CHECK(e->payload == payload);
  CHECK(e->timestamp.size() == 20);
  CHECK(c.find("scan", 41, "other") == nullptr);
}

TEST_CASE("hminus command") {
  Sandbox box;
  Run r = box.run("hminus --p 23 --method both");
  CHECK(r.code == 0);
  CHECK(r.out.find("h_minus=3 ") != std::string::npos);
  CHECK(r.out.find("certified=true") != std::string::npos);
  CHECK(slurp(box.cache()).find("\"h_minus\":\"3\"") != std::string::npos);

  r = box.run("hminus --p 5");
  CHECK(r.code == 0);
  CHECK(r.out.find("h_minus=1 ") != std::string::npos);

  CHECK(box.run("hminus --p 9").code == 2);
  CHECK(box.run("hminus --p 23 --method guess").code == 2);
  CHECK(box.run("hminus").code == 2);
  CHECK(box.run("hminus --p 4007").code == 2);
  // A policy that cannot certify.
  CHECK(box.run("hminus --p 199 --prec 64 --prec-initial 64 --prec-max 64").code == 3);
}

TEST_CASE("scan command is resumable and byte-stable") {
  Sandbox box;
  Run first = box.run("scan --from 3 --to 100");
  CHECK(first.code == 0);
  auto rows = lines(first.out);
  REQUIRE(rows.size() == 25);
  CHECK(rows[0] == "p,h_minus,log_G,log_ratio,siegel_beta,precision_bits,method,certified");
  const auto& table = testsupport::published_hminus();
  for (std::size_t i = 1; i < rows.size(); ++i) {
    auto f = split(rows[i], ',');
    REQUIRE(f.size() == 8);
    const std::uint64_t p = std::stoull(f[0]);
    CHECK(table.at(p) == f[1]);
    CHECK(f[4].empty());
    CHECK(f[6] == "both");
    CHECK(f[7] == "true");
    if (p <= 19) CHECK(f[1] == "1");
  }
  CHECK(first.err.find("computed 24, reused 0") != std::string::npos);

  Run second = box.run("scan --from 3 --to 100");
  CHECK(second.code == 0);
  CHECK(second.out == first.out);
  CHECK(second.err.find("computed 0, reused 24") != std::string::npos);

  // A different configuration does not reuse stale entries.
  Run other = box.run("scan --from 3 --to 19 --prec-initial 192");
  CHECK(other.err.find("computed 7, reused 0") != std::string::npos);

  Run json = box.run("scan --from 20 --to 30 --format jsonl");
  auto jl = lines(json.out);
  REQUIRE(jl.size() == 2);
  CHECK(json::parse(jl[0]).at("h_minus") == "3");
  CHECK(json::parse(jl[1]).at("h_minus") == "8");

  Run out_file = box.run("scan --from 3 --to 7 --out '" + (box.dir / "o.csv").string() + "'");
  CHECK(out_file.out.empty());
  CHECK(lines(slurp(box.dir / "o.csv")).size() == 4);

  Run empty = box.run("scan --from 24 --to 28");
  CHECK(empty.code == 0);
  CHECK(empty.out.empty());
}

TEST_CASE("verify command") {
  Sandbox box;
  Run t = box.run("verify --bound thm31 --from 503 --to 509");
  CHECK(t.code == 0);
  auto ls = lines(t.out);
  REQUIRE(ls.size() == 2);
  CHECK(ls[0].find("PASS") != std::string::npos);
  CHECK(ls[1].find("PASS") != std::string::npos);

  Run l = box.run("verify --bound lemma21 --from 503 --to 600 --format csv");
  CHECK(l.code == 0);
  CHECK(l.out.find("FAIL") == std::string::npos);

  Run c = box.run("verify --bound cor33 --from 9001 --to 11000");
  CHECK(c.code == 0);
  CHECK(c.out.find("largest_failing=9649 first_permanent_pass=9661") != std::string::npos);

  Run e = box.run("verify --bound eq2 --from 3 --to 7");
  CHECK(e.code == 0);

  CHECK(box.run("verify --bound lemma99 --from 3 --to 7").code == 2);
  CHECK(box.run("verify --bound lemma22 --from 503 --to 503 --c 5").code == 2);
}

TEST_CASE("siegel and pi commands") {
  Sandbox box;
  Run s13 = box.run("siegel --p 13");
  CHECK(s13.code == 0);
  CHECK(s13.out.find("absent") != std::string::npos);
  CHECK(s13.out.find("method=parity") != std::string::npos);
  Run s7 = box.run("siegel --p 7");
  CHECK(s7.out.find("absent certified=true method=endpoint-positivity") != std::string::npos);
  Run range = box.run("siegel --from 3 --to 60 --format csv");
  CHECK(range.code == 0);
  CHECK(lines(range.out).size() == 17);
  CHECK(range.out.find("present") == std::string::npos);
  CHECK(box.run("siegel --p 15").code == 2);

  Run pi = box.run("pi --p 5 --x 50 --class +1");
  CHECK(pi.code == 0);
  CHECK(pi.out.find("pi=0.163182") != std::string::npos);
  CHECK(pi.out.find("bound=") == std::string::npos);
  CHECK(pi.out.find("bound omitted") != std::string::npos);
  Run big = box.run("pi --p 503 --x 1000000 --class -1");
  CHECK(big.code == 0);
  CHECK(big.out.find("PASS") != std::string::npos);
  CHECK(box.run("pi --p 5 --x 3 --class +1").code == 2);
  CHECK(box.run("pi --p 5 --x 50 --class 2").code == 2);
}

TEST_CASE("config file and flag precedence") {
  Sandbox box;
  const fs::path conf = box.dir / "run.conf";
  std::ofstream(conf) << "format = csv\ncache = " << (box.dir / "from_config.jsonl").string()
                      << "\n";
  // KUMMER_CACHE wins over the file, and --cache over both.
  Run r = box.run("hminus --p 7 --config '" + conf.string() + "'");
  CHECK(r.code == 0);
  CHECK(r.out.rfind("p,h_minus", 0) == 0);
  CHECK(fs::exists(box.cache()));
  CHECK_FALSE(fs::exists(box.dir / "from_config.jsonl"));
  const fs::path flag_cache = box.dir / "flag.jsonl";
  r = box.run("hminus --p 7 --format text --cache '" + flag_cache.string() + "' --config '" +
              conf.string() + "'");
  CHECK(r.out.rfind("p=7", 0) == 0);
  CHECK(fs::exists(flag_cache));
  CHECK(box.run("hminus --p 7 --config /nonexistent/file").code == 2);
}
