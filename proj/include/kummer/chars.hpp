#pragma once

// Dirichlet characters modulo an odd prime p.
//
// Characters are indexed against the smallest primitive root g: the
// character with index j sends g^k to e^(2 pi i j k / (p - 1)). Values are
// tracked as exact exponents modulo p - 1 and only turned into balls at the
// evaluation boundary.

#include <cstdint>
#include <optional>
#include <vector>

#include "kummer/ball.hpp"

namespace kummer::chars {

enum class Parity { even, odd };

struct Character {
  std::uint64_t p = 0;
  std::uint64_t j = 0;  // index in [0, p - 2]
  Parity parity = Parity::even;

  bool is_principal() const { return j == 0; }
  Character conjugate() const;
};

class CharacterTable {
 public:
  explicit CharacterTable(std::uint64_t p);

  std::uint64_t p() const { return p_; }
  std::uint64_t g() const { return g_; }
  std::uint64_t order() const { return p_ - 1; }
  // k with g^k = n (mod p), for n in [1, p - 1].
  std::uint64_t dlog(std::uint64_t n) const { return dlog_[n % p_]; }
  // g^k mod p, for k in [0, p - 2].
  std::uint64_t power(std::uint64_t k) const { return pow_[k % (p_ - 1)]; }

 private:
  std::uint64_t p_;
  std::uint64_t g_;
  std::vector<std::uint64_t> dlog_;
  std::vector<std::uint64_t> pow_;
};

CharacterTable build_table(std::uint64_t p);

Character make_character(std::uint64_t p, std::uint64_t j);

struct CharacterValue {
  std::optional<std::uint64_t> exponent;  // j*k mod (p-1); empty when p | n
  BallComplex value;
};

// chi(n) = e^(2 pi i * exponent / (p - 1)), or 0 when p divides n.
CharacterValue character_value(const Character& chi, const CharacterTable& table, std::int64_t n,
                               mpfr_prec_t prec);

// Characters with odd index j, ascending; exactly (p - 1)/2 of them.
std::vector<Character> odd_characters(std::uint64_t p);

// The Legendre symbol: index (p - 1)/2.
Character quadratic_character(std::uint64_t p);

// Exact +1 / 0 / -1 value of the quadratic character.
int legendre(std::int64_t n, std::uint64_t p);

// e^(2 pi i e / m) for e in [0, m), built from sin/cos on one quadrant and
// the symmetries of the circle.
class RootTable {
 public:
  RootTable(std::uint64_t m, mpfr_prec_t prec);
  std::uint64_t order() const { return m_; }
  mpfr_prec_t prec() const { return prec_; }
  const BallComplex& operator[](std::uint64_t e) const { return roots_[e % m_]; }

 private:
  std::uint64_t m_;
  mpfr_prec_t prec_;
  std::vector<BallComplex> roots_;
};

}  // namespace kummer::chars
