#pragma once

#include <cstdint>
#include <vector>

#include "heatsum/cyclotomic.hpp"

namespace heatsum {

/// Dirichlet character mod m in exponent-table form: value_exp[a] is -1
/// when gcd(a, m) > 1, otherwise the exponent e with chi(a) = zeta_order^e.
/// order is the multiplicative order of the character, so the table is
/// canonical (exponents are reduced by their common gcd).
struct DirichletCharacter {
  std::uint32_t modulus = 1;
  std::uint32_t order = 1;
  std::vector<std::int64_t> value_exp;
};

/// All phi(m) characters mod m, principal character first, in a stable
/// deterministic order.
std::vector<DirichletCharacter> enumerate_dirichlet_characters(std::uint32_t m);

/// chi(a) as an exact cyclotomic number (0 for non-units).
CycloNumber character_eval(const DirichletCharacter& chi, std::int64_t a);

bool is_real_character(const DirichletCharacter& chi);    // order <= 2
bool is_even_character(const DirichletCharacter& chi);    // chi(-1) = 1

/// True when chi is not induced by any character of smaller modulus,
/// decided by the induced-character test over proper divisor moduli.
bool is_primitive(const DirichletCharacter& chi);

/// Gauss sum tau(chi) = sum_r chi(r) zeta_m^r in Q(zeta_lcm(m, order)).
CycloNumber gauss_sum(const DirichletCharacter& chi);

}  // namespace heatsum
