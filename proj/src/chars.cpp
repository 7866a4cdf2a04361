#include "kummer/chars.hpp"

#include <string>

#include "kummer/arith.hpp"
#include "kummer/error.hpp"

namespace kummer::chars {

Character Character::conjugate() const {
  return Character{p, (p - 1 - j) % (p - 1), parity};
}

CharacterTable::CharacterTable(std::uint64_t p)
    : p_(p), g_(arith::primitive_root(p)), dlog_(p, 0), pow_(p - 1, 0) {
  std::uint64_t v = 1;
  for (std::uint64_t k = 0; k + 1 < p; ++k) {
    pow_[k] = v;
    dlog_[v] = k;
    v = v * g_ % p;
  }
}

CharacterTable build_table(std::uint64_t p) { return CharacterTable(p); }

Character make_character(std::uint64_t p, std::uint64_t j) {
  if (p < 3 || !arith::is_prime(p)) throw InvalidInput("character modulus must be an odd prime");
  if (j >= p - 1) throw InvalidInput("character index out of range: " + std::to_string(j));
  return Character{p, j, j % 2 == 1 ? Parity::odd : Parity::even};
}

CharacterValue character_value(const Character& chi, const CharacterTable& table, std::int64_t n,
                               mpfr_prec_t prec) {
  const auto p = static_cast<std::int64_t>(chi.p);
  std::int64_t r = ((n % p) + p) % p;
  if (r == 0) return {std::nullopt, BallComplex(prec)};
  const std::uint64_t m = chi.p - 1;
  const auto k = table.dlog(static_cast<std::uint64_t>(r));
  const std::uint64_t e = static_cast<std::uint64_t>(
      static_cast<unsigned __int128>(chi.j) * k % m);
  return {e, root_of_unity(static_cast<long>(e), static_cast<long>(m), prec)};
}

std::vector<Character> odd_characters(std::uint64_t p) {
  std::vector<Character> out;
  for (std::uint64_t j = 1; j + 1 < p; j += 2) out.push_back(make_character(p, j));
  return out;
}

Character quadratic_character(std::uint64_t p) { return make_character(p, (p - 1) / 2); }

int legendre(std::int64_t n, std::uint64_t p) {
  const auto ps = static_cast<std::int64_t>(p);
  std::int64_t r = ((n % ps) + ps) % ps;
  if (r == 0) return 0;
  return arith::powmod(static_cast<std::uint64_t>(r), (p - 1) / 2, p) == 1 ? 1 : -1;
}

RootTable::RootTable(std::uint64_t m, mpfr_prec_t prec) : m_(m), prec_(prec) {
  if (m == 0 || m % 2 != 0) throw InvalidInput("root table order must be even and positive");
  roots_.reserve(m);
  for (std::uint64_t e = 0; e < m; ++e) roots_.emplace_back(prec);
  const std::uint64_t half = m / 2;
  const std::uint64_t quarter = m / 4;
  for (std::uint64_t e = 0; e <= quarter; ++e)
    roots_[e] = root_of_unity(static_cast<long>(e), static_cast<long>(m), prec);
  for (std::uint64_t e = quarter + 1; e <= half; ++e) roots_[e] = -conj(roots_[half - e]);
  for (std::uint64_t e = half + 1; e < m; ++e) roots_[e] = conj(roots_[m - e]);
}

}  // namespace kummer::chars
