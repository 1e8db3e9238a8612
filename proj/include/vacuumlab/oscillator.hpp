#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "vacuumlab/quadrature.hpp"
#include "vacuumlab/vacuum.hpp"

namespace vacuumlab::oscillator {

using cdouble = std::complex<double>;
using SparseMatrix = Eigen::SparseMatrix<cdouble>;

inline constexpr std::int64_t kDefaultDimensionCap = 200000;
inline constexpr std::int64_t kDefaultCombinatorialCap = 5000000;

// N indefinite-frequency oscillators, each truncated at n_max excitations.
// A single oscillator lives in span{|ω, n⟩}, index ω_index·(n_max + 1) + n;
// the N-fold space is the tensor power with the first factor most significant.
//
// The N-fold operators are Kronecker sums of single-site blocks:
//   a_ω(N) = N^{-1/2} Σ_j a_ω^{(j)},  I_ω(N) = N^{-1} Σ_j I_ω^{(j)},
//   ñ_ω(N) = Σ_j n_ω^{(j)}.
// They are stored sparse; the single-site blocks are dense.
struct TruncatedRep {
  std::vector<double> omegas;
  std::vector<double> weights;
  int n_max = 0;
  int N = 0;
  std::int64_t site_dim = 0;
  std::int64_t dim = 0;

  std::vector<Eigen::MatrixXcd> site_a, site_I, site_n;
  std::vector<SparseMatrix> a, a_dag, I, n_tilde;

  Eigen::VectorXcd vacuum;  // (Σ_ω √p_ω |ω, 0⟩)^{⊗N}

  // Total excitation number and frequency index of factor j for a basis index.
  int excitations(std::int64_t index) const;
  int frequency_index(std::int64_t index, int factor) const;
};

// Throws DimensionCap when (|omegas|·(n_max + 1))^N exceeds `dimension_cap`.
TruncatedRep build_rep(const std::vector<double>& omegas, const std::vector<double>& weights,
                       int n_max, int N, std::int64_t dimension_cap = kDefaultDimensionCap);

// Largest residual of [a_ω, a_ω'†] − δ I_ω and [a_ω, ñ_ω'] − δ a_ω over all
// frequency pairs, on states with fewer than n_max total excitations. The
// Frobenius norm is used, which bounds the operator norm from above.
double commutator_residual(const TruncatedRep& rep);

// |α, N⟩ = exp(−½Σ|α_ω|² I_ω(N)) exp(Σ α_ω a_ω(N)†)|O, N⟩ built from the
// rep matrices. Components with at most n_max excitations per oscillator are
// exact; the rest of the coherent state is cut off.
Eigen::VectorXcd coherent_state(const TruncatedRep& rep, const std::vector<cdouble>& alphas);

// ⟨ψ|Π(n, N)|ψ⟩, the probability of n excitations in total.
double excitation_probability(const TruncatedRep& rep, const Eigen::VectorXcd& psi, int n);

// ⟨ψ|Π_ω(s/N)|ψ⟩, the probability that exactly s of the N oscillators have
// frequency omegas[omega_index].
double frequency_count_probability(const TruncatedRep& rep, const Eigen::VectorXcd& psi,
                                   int omega_index, int s);

// Binomial(N, p) mass at s.
double binomial_projector_prob(double p, int N, int s);

// Σ_s F(s/N)·Binom(N, s, p) = ⟨ψ,N|F(I_ω(N))|ψ,N⟩.
double wlln_average(const std::function<double(double)>& F, double p, int N);

// (1/n!) dⁿ/dλⁿ (Σ_i p_i e^{λ w_i/N})^N at λ = −1, by expanding the power over
// occupation patterns s (Σ s_i = N): a multinomial mixture of Poisson masses
// with parameters Σ s_i w_i / N. Throws CombinatorialCap when the number of
// patterns exceeds `pattern_cap`.
double renyi_poisson_pmf(const std::vector<double>& probs, const std::vector<double>& intensities,
                         int N, int n, std::int64_t pattern_cap = kDefaultCombinatorialCap);

// Poisson mass with parameter Σ_i p_i w_i.
double shannon_poisson_pmf(const std::vector<double>& probs,
                           const std::vector<double>& intensities, int n);

// (1/(1 − q)) ln Σ p e^{(1 − q)A}; Σ pA when |1 − q| < 1e-8.
double kn_average(double q, const std::vector<double>& probs, const std::vector<double>& values);

// (1/(1 − q)) ln Σ p^q, i.e. kn_average of ln(1/p).
double renyi_entropy(double q, const std::vector<double>& probs);

// |α_k|² = q² sin²(k dt/2)/(k/2)² for a charge switched on for a time dt.
double source_intensity(double q_charge, double k_abs, double dt);

// Vacuum average of the radiative shift of a classical charge q. Free space:
// q²∫dk density/|𝐤|. With a Dirichlet plane at distance `plane_gap`, the
// angular average of (1 − cos 2k_z L) gives an extra
// −q²∫dk density·sin(2|𝐤|L)/(2|𝐤|²L). Both are radial quadratures.
// Requires the infrared condition at order 2.
double radiative_shift(const vacuum::VacuumProfile& profile, double q_charge,
                       std::optional<double> plane_gap = std::nullopt,
                       const QuadratureSpec& spec = {});

}  // namespace vacuumlab::oscillator
