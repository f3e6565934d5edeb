#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "heatsum/cyclotomic.hpp"
#include "heatsum/dirichlet.hpp"
#include "heatsum/kernel_value.hpp"
#include "heatsum/rational.hpp"

namespace heatsum {

/// Which trigonometric function a factor or evaluator variant uses.
enum class TrigKind { Cos, Sin };

/// Affine form in the summation indices, measured in turns (one turn =
/// an angle of 2*pi, or a full unit of phase). The value at an index tuple
/// is constant + sum_i coeff[i] * idx[i]; missing trailing coefficients
/// count as zero.
struct AffineTurns {
  Rational constant;
  std::vector<Rational> coeff;

  Rational eval(const std::vector<std::int64_t>& idx) const;
};

/// One factor cos^power(2*pi*angle) or sin^power(2*pi*angle) with an affine
/// angle in turns.
struct TrigFactor {
  TrigKind kind = TrigKind::Cos;
  std::int64_t power = 1;
  AffineTurns angle;
};

/// One additive term: a product of trigonometric factors.
struct TrigAtom {
  std::vector<TrigFactor> factors;
};

/// Optional multiplicative-character weight chi(idx[index]) (or its complex
/// conjugate) applied to every summand.
struct CharacterFactor {
  DirichletCharacter chi;
  std::size_t index = 0;
  bool conjugate = false;
};

/// A finite trigonometric sum in explicit form:
///
///   sum over idx[i] in [lo[i], hi[i]] of
///     e^{2*pi*i*weight_turns(idx)} * chi(idx[character.index])
///       * (atom_1(idx) + ... + atom_k(idx))^outer_power
///
/// where each atom is a product of cos/sin powers with affine angles.
/// Every angle and phase is an exact rational number of turns, so the sum
/// has an exact cyclotomic value.
struct TrigSumSpec {
  std::vector<std::int64_t> lo;
  std::vector<std::int64_t> hi;
  AffineTurns weight_turns;
  std::optional<CharacterFactor> character;
  std::vector<TrigAtom> atoms;
  std::int64_t outer_power = 1;
};

/// Evaluates a TrigSumSpec term by term with exact cyclotomic arithmetic.
/// This is the independent reference evaluator: it never uses a binomial
/// closed form, only direct summation of cos/sin powers.
/// Throws std::invalid_argument for inconsistent ranges or negative powers.
CycloNumber brute_force_trig_sum(const TrigSumSpec& spec);

/// sum_{j=0}^{m-1} cos^n(2*pi*(j+beta)/m), computed from the binomial
/// closed form 2^{-n} m sum_{k: |km|<=n, km+n even} e^{-2*pi*i*k*beta}
/// * C(n, (km+n)/2). With kind == Sin the summand is sin^n(2*pi*(j+beta)/m)
/// (internally the shift beta -> beta - m/4 turns cosine into sine).
/// The value is rational whenever beta is an integer.
CycloNumber cos_power_sum(std::int64_t m, std::int64_t n, const Rational& beta,
                          TrigKind kind = TrigKind::Cos);

/// sum_{j=0}^{m-1} e^{2*pi*i*j*r/m} cos^n(2*pi*j*b/m + alpha) for
/// b, r in {1,...,m-1}, with alpha = alpha_over_pi * pi. Computed from the
/// closed form (m/2^n) sum over d in {0..n} with m | (2d-n)b - r of
/// C(n,d) e^{i*alpha*(n-2d)}; an empty divisibility set gives 0.
/// With kind == Sin the trigonometric factor is sin^n(2*pi*j*b/m + alpha)
/// and each term carries the extra quarter-turn phase e^{-i*(pi/2)*(n-2d)}.
CycloNumber additive_twisted_cos_sum(std::int64_t m, std::int64_t b, std::int64_t r,
                                     const Rational& alpha_over_pi, std::int64_t n,
                                     TrigKind kind = TrigKind::Cos);

/// Same sum with an arbitrary real shift alpha (radians); floating point.
FloatComplex additive_twisted_cos_sum_approx(std::int64_t m, std::int64_t b, std::int64_t r,
                                             double alpha, std::int64_t n,
                                             TrigKind kind = TrigKind::Cos);

/// S(n, m) = sum_{k=1}^{m} (-1)^k cos^{2n}(k*pi/(2m+2)), via the closed form
/// -1/2 + ((m+1)/4^n) * sum over d in {0..2n} with 2(m+1) | d-n-(m+1) of
/// C(2n, d). Always an exact rational; an empty divisibility set leaves -1/2.
Rational alternating_cos_S(std::int64_t n, std::int64_t m);

/// sum_{j=0}^{m-1} conj(chi(j)) cos^n(2*pi*j*b/m + alpha) for a primitive
/// Dirichlet character chi mod m, b in {1,...,m-1}, alpha = alpha_over_pi*pi.
/// Computed from the closed form (m / (2^n tau(chi))) * sum_{d in {0..n}}
/// chi((2d-n)b mod m) C(n,d) e^{i*alpha*(n-2d)}, where tau is the Gauss sum;
/// non-unit residues contribute nothing. With kind == Sin each term carries
/// the extra factor i^{2d-n}. Throws std::invalid_argument when chi is not
/// primitive.
CycloNumber multiplicative_twisted_sum(const DirichletCharacter& chi, std::int64_t b,
                                       const Rational& alpha_over_pi, std::int64_t n,
                                       TrigKind kind = TrigKind::Cos);

/// Same sum with an arbitrary real shift alpha (radians); floating point.
FloatComplex multiplicative_twisted_sum_approx(const DirichletCharacter& chi, std::int64_t b,
                                               double alpha, std::int64_t n,
                                               TrigKind kind = TrigKind::Cos);

/// sum over (l_1,...,l_d) in prod [0, m_j) of prod_j cos^n(2*pi*(l_j+beta_j)/m_j),
/// computed from the binomial closed form 2^{-dn} m_1...m_d * sum over mode
/// tuples k of e^{-2*pi*i*(k_1*beta_1+...+k_d*beta_d)} prod_j C(n, (n+k_j m_j)/2)
/// restricted to tuples with every n + k_j m_j even. The mode sum factors
/// into per-coordinate sums, which is how it is evaluated. Rational whenever
/// every beta_j is an integer.
CycloNumber product_cos_power_sum(const std::vector<std::int64_t>& m, std::int64_t n,
                                  const std::vector<Rational>& beta);

/// sum_{a=0}^{m1-1} sum_{b=0}^{m2-1}
///   (cos(2*pi*(a+beta1)/m1) + cos(2*pi*(b+beta2)/m2))^n,
/// computed from the binomial closed form (m1*m2/2^n) * sum_{c=0}^{n}
/// C(n,c) * (sum_{k1} e^{-2*pi*i*k1*beta1} C(c, (c+k1*m1)/2))
///        * (sum_{k2} e^{-2*pi*i*k2*beta2} C(n-c, (n-c+k2*m2)/2)),
/// where each inner sum ranges over the k with integral, in-range binomial
/// lower index (c + k1*m1 even and |k1*m1| <= c, and likewise for k2).
CycloNumber linear_combo_power_sum(std::int64_t m1, std::int64_t m2, std::int64_t n,
                                   const Rational& beta1, const Rational& beta2);

/// sum_{j=0}^{2*m1-1} sum_{l=0}^{m2-1}
///   (-1)^j cos^k(pi*j*a/m1 + alpha1) sin^k(2*pi*l*b/m2 + alpha2),
/// with alpha_j = alpha_j_over_pi * pi, computed from the binomial closed
/// form (2*m1*m2/4^k) e^{i*k*(alpha1+alpha2)} * sum over pairs (d1, d2) in
/// {0..k}^2 with a*(2*d1-k)/m1 an odd integer and b*(2*d2-k)/m2 an integer of
/// C(k,d1) C(k,d2) i^{2*d2-k} e^{-2*i*(alpha1*d1+alpha2*d2)}.
/// An empty constraint set gives 0.
CycloNumber mixed_cos_sin_2d(std::int64_t m1, std::int64_t m2, std::int64_t a,
                             std::int64_t b, std::int64_t k,
                             const Rational& alpha1_over_pi,
                             const Rational& alpha2_over_pi);

/// Same sum with arbitrary real shifts alpha1, alpha2 (radians); floating point.
FloatComplex mixed_cos_sin_2d_approx(std::int64_t m1, std::int64_t m2, std::int64_t a,
                                     std::int64_t b, std::int64_t k,
                                     double alpha1, double alpha2);

/// Defining-sum specifications: the explicit finite sums the evaluators
/// above compute in closed form. Feeding one to brute_force_trig_sum
/// re-evaluates the sum term by term, giving a two-sided check that shares
/// no arithmetic with the evaluator. Each builder validates the same
/// structural preconditions as its evaluator's domain (positive moduli,
/// nonnegative powers) but leaves value constraints (e.g. primitivity) to
/// the evaluator.
TrigSumSpec cos_power_sum_spec(std::int64_t m, std::int64_t n, const Rational& beta,
                               TrigKind kind = TrigKind::Cos);
TrigSumSpec additive_twisted_cos_sum_spec(std::int64_t m, std::int64_t b, std::int64_t r,
                                          const Rational& alpha_over_pi, std::int64_t n,
                                          TrigKind kind = TrigKind::Cos);
TrigSumSpec alternating_cos_S_spec(std::int64_t n, std::int64_t m);
TrigSumSpec multiplicative_twisted_sum_spec(const DirichletCharacter& chi, std::int64_t b,
                                            const Rational& alpha_over_pi, std::int64_t n,
                                            TrigKind kind = TrigKind::Cos);
TrigSumSpec product_cos_power_sum_spec(const std::vector<std::int64_t>& m, std::int64_t n,
                                       const std::vector<Rational>& beta);
TrigSumSpec linear_combo_power_sum_spec(std::int64_t m1, std::int64_t m2, std::int64_t n,
                                        const Rational& beta1, const Rational& beta2);
TrigSumSpec mixed_cos_sin_2d_spec(std::int64_t m1, std::int64_t m2, std::int64_t a,
                                  std::int64_t b, std::int64_t k,
                                  const Rational& alpha1_over_pi,
                                  const Rational& alpha2_over_pi);

}  // namespace heatsum
