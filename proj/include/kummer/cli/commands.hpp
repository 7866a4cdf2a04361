#pragma once

// Subcommand bodies. Each writes its report to `out`, diagnostics to `log`,
// and returns 0 (all pass) or 1 (some verification failed). Errors propagate
// as exceptions; exit_code() maps them onto the remaining codes.

#include <cstdint>
#include <exception>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "kummer/bounds.hpp"
#include "kummer/classnumber.hpp"
#include "kummer/cli/config.hpp"

namespace kummer::cli {

// The prime after which the crossover comparison is claimed to hold.
constexpr std::uint64_t kCrossoverPrime = 9649;

// 2 for invalid input, domain and unsupported errors; 3 for precision
// exhaustion; 1 for anything else.
int exit_code(const std::exception_ptr& e);

// Odd primes in [from, to], ascending.
std::vector<std::uint64_t> primes_in_range(std::uint64_t from, std::uint64_t to);

int cmd_hminus(const RunConfig& cfg, std::uint64_t p, classnumber::Method method,
               std::optional<long> prec, std::ostream& out);

// Reuses cache entries whose fingerprint matches and appends the rest.
// Prints "computed N, reused M" to `log`.
int cmd_scan(const RunConfig& cfg, std::uint64_t from, std::uint64_t to, std::ostream& out,
             std::ostream& log);

int cmd_verify(const RunConfig& cfg, bounds::BoundId id, std::uint64_t from, std::uint64_t to,
               std::ostream& out);

int cmd_siegel(const RunConfig& cfg, std::uint64_t from, std::uint64_t to, std::ostream& out);

// x must exceed p; the bound column appears only for p > 500.
int cmd_pi(const RunConfig& cfg, std::uint64_t p, std::uint64_t x, int residue, std::ostream& out);

}  // namespace kummer::cli
