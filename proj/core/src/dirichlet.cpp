#include "heatsum/dirichlet.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace heatsum {

namespace {

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
  std::uint64_t acc = 1 % mod;
  base %= mod;
  while (exp) {
    if (exp & 1) acc = acc * base % mod;
    base = base * base % mod;
    exp >>= 1;
  }
  return acc;
}

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      unsigned e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      out.emplace_back(p, e);
    }
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::uint64_t primitive_root_mod_prime_power(std::uint64_t p, unsigned e) {
  std::uint64_t phi_p = p - 1;
  auto prime_factors = factorize(phi_p);
  std::uint64_t g = 0;
  for (std::uint64_t cand = 2; cand < p; ++cand) {
    bool ok = true;
    for (const auto& [q, _] : prime_factors) {
      if (pow_mod(cand, phi_p / q, p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) {
      g = cand;
      break;
    }
  }
  if (g == 0) throw std::logic_error("no primitive root found");
  if (e == 1) return g;
  // lift to p^e: g works unless g^{p-1} = 1 mod p^2, in which case g + p does
  std::uint64_t p2 = p * p;
  if (pow_mod(g, p - 1, p2) == 1) g += p;
  return g;
}

// One cyclic component of (Z/m)^*: a generator (as a residue mod m via CRT
// lifting) together with its order.
struct UnitComponent {
  std::uint64_t generator;
  std::uint64_t order;
};

// Solves x = r mod q, x = 1 mod (m/q) for coprime q, m/q.
std::uint64_t crt_lift(std::uint64_t r, std::uint64_t q, std::uint64_t m) {
  std::uint64_t rest = m / q;
  if (rest == 1) return r % m;
  // x = r + q*t with t = (1 - r) * q^{-1} mod rest; extended euclid for the inverse
  std::int64_t x0 = 0, x1 = 1, r0 = static_cast<std::int64_t>(rest), r1 = static_cast<std::int64_t>(q % rest);
  while (r1 != 0) {
    std::int64_t quo = r0 / r1;
    std::int64_t tmp = r0 - quo * r1;
    r0 = r1;
    r1 = tmp;
    tmp = x0 - quo * x1;
    x0 = x1;
    x1 = tmp;
  }
  if (r0 != 1) throw std::logic_error("crt_lift: moduli not coprime");
  std::int64_t inv = x0 % static_cast<std::int64_t>(rest);
  if (inv < 0) inv += static_cast<std::int64_t>(rest);
  std::int64_t diff = (1 - static_cast<std::int64_t>(r % rest)) % static_cast<std::int64_t>(rest);
  if (diff < 0) diff += static_cast<std::int64_t>(rest);
  std::uint64_t t = static_cast<std::uint64_t>(diff) * static_cast<std::uint64_t>(inv) % rest;
  return (r + q * t) % m;
}

std::vector<UnitComponent> unit_group_components(std::uint64_t m) {
  std::vector<UnitComponent> comps;
  for (const auto& [p, e] : factorize(m)) {
    std::uint64_t q = 1;
    for (unsigned i = 0; i < e; ++i) q *= p;
    if (p == 2) {
      if (e == 1) continue;  // trivial
      if (e == 2) {
        comps.push_back({crt_lift(3 % q, q, m), 2});
      } else {
        comps.push_back({crt_lift(q - 1, q, m), 2});
        comps.push_back({crt_lift(5, q, m), q / 4});
      }
    } else {
      std::uint64_t g = primitive_root_mod_prime_power(p, e);
      comps.push_back({crt_lift(g % q, q, m), q / p * (p - 1)});
    }
  }
  return comps;
}

}  // namespace

std::vector<DirichletCharacter> enumerate_dirichlet_characters(std::uint32_t m) {
  if (m == 0) throw std::invalid_argument("modulus must be positive");
  auto comps = unit_group_components(m);

  // discrete logs: for every unit a, the exponent tuple over the components
  std::uint64_t exponent = 1;
  for (const auto& c : comps) exponent = std::lcm(exponent, c.order);

  std::vector<std::vector<std::uint64_t>> dlog(m);  // empty = not a unit
  std::vector<std::uint64_t> units;
  for (std::uint64_t a = 0; a < m; ++a)
    if (std::gcd(a, static_cast<std::uint64_t>(m)) == 1) units.push_back(a);

  // enumerate the group as products of generator powers
  {
    std::vector<std::uint64_t> idx(comps.size(), 0);
    while (true) {
      std::uint64_t a = 1 % m;
      for (std::size_t i = 0; i < comps.size(); ++i) a = a * pow_mod(comps[i].generator, idx[i], m) % m;
      dlog[a] = idx;
      std::size_t carry = 0;
      while (carry < idx.size()) {
        if (++idx[carry] < comps[carry].order) break;
        idx[carry] = 0;
        ++carry;
      }
      if (carry == idx.size()) break;
    }
  }

  std::vector<DirichletCharacter> out;
  std::vector<std::uint64_t> tuple(comps.size(), 0);
  while (true) {
    DirichletCharacter chi;
    chi.modulus = m;
    chi.value_exp.assign(m, -1);
    std::uint64_t g = exponent;  // gcd of value exponents and the group exponent
    std::vector<std::uint64_t> raw(m, 0);
    for (auto a : units) {
      const auto& ex = dlog[a];
      std::uint64_t v = 0;
      for (std::size_t i = 0; i < comps.size(); ++i)
        v = (v + tuple[i] * ex[i] % exponent * (exponent / comps[i].order)) % exponent;
      raw[a] = v;
      g = std::gcd(g, v);
    }
    std::uint64_t order = exponent / g;
    chi.order = static_cast<std::uint32_t>(order);
    for (auto a : units) chi.value_exp[a] = static_cast<std::int64_t>(raw[a] / g);
    out.push_back(std::move(chi));

    std::size_t carry = 0;
    while (carry < tuple.size()) {
      if (++tuple[carry] < comps[carry].order) break;
      tuple[carry] = 0;
      ++carry;
    }
    if (carry == tuple.size()) break;
  }
  // principal character first, then lexicographic by value table
  std::stable_sort(out.begin(), out.end(), [](const DirichletCharacter& a, const DirichletCharacter& b) {
    if (a.order != b.order) return a.order < b.order;
    return a.value_exp < b.value_exp;
  });
  return out;
}

CycloNumber character_eval(const DirichletCharacter& chi, std::int64_t a) {
  std::int64_t r = a % static_cast<std::int64_t>(chi.modulus);
  if (r < 0) r += chi.modulus;
  std::int64_t e = chi.value_exp[static_cast<std::size_t>(r)];
  if (e < 0) return CycloNumber(Rational(0));
  return root_of_unity(chi.order, e);
}

bool is_real_character(const DirichletCharacter& chi) { return chi.order <= 2; }

bool is_even_character(const DirichletCharacter& chi) {
  std::size_t neg_one = chi.modulus == 1 ? 0 : chi.modulus - 1;
  return chi.value_exp[neg_one] == 0;
}

bool is_primitive(const DirichletCharacter& chi) {
  std::uint32_t m = chi.modulus;
  for (auto f64 : divisors(m)) {
    auto f = static_cast<std::uint32_t>(f64);
    if (f == m) continue;
    bool induced = true;
    for (std::uint32_t a = 1; a < m && induced; ++a) {
      if (std::gcd(a, m) != 1) continue;
      if (a % f == 1 % f && chi.value_exp[a] != 0) induced = false;
    }
    if (induced) return false;
  }
  return true;
}

CycloNumber gauss_sum(const DirichletCharacter& chi) {
  std::uint32_t m = chi.modulus;
  std::uint32_t N = static_cast<std::uint32_t>(std::lcm<std::uint64_t>(m, chi.order));
  std::vector<std::pair<std::int64_t, Rational>> terms;
  for (std::uint32_t r = 0; r < m; ++r) {
    std::int64_t e = chi.value_exp[r];
    if (e < 0) continue;
    std::int64_t expo = e * (N / chi.order) + static_cast<std::int64_t>(r) * (N / m);
    terms.emplace_back(expo, Rational(1));
  }
  return CycloNumber::from_monomials(N, terms);
}

}  // namespace heatsum
