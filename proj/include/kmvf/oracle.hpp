#pragma once

#include "kmvf/representation.hpp"

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace kmvf {

/// Every matrix with unit diagonal and off-diagonal entries in {0,-1} that
/// meets the normalized conditions for N, found by exhaustive search with
/// only sound pruning. Results are in lexicographic order of the off-diagonal
/// assignment. Throws TooLarge for r > 8.
std::vector<RationalMatrix> brute_force_normalized(const Gcm &n);

/// Generators built directly from a candidate matrix a:
/// delta_i = sum_k a(k,i) D_k, H_i = sum_j n(i,j) D_j,
/// delta_{-i} = (-H_i + delta_i / a(i,i)) / a(i,i), X_{+-i} = z_i^{+-n_i} delta_{+-i},
/// with D_j replaced by D_j/n_j throughout.
struct ProbeGenerators
{
	std::vector<Derivation> h;
	std::vector<Derivation> x_plus;
	std::vector<Derivation> x_minus;
};

/// Throws ZeroDiagonal. An empty n means all ones.
ProbeGenerators probe_generators(const Gcm &n, const RationalMatrix &a, std::span<const std::int64_t> index = {});

/// Whether [X_i, X_{-j}] = delta_ij H_i holds for the probe generators, by
/// direct bracket computation.
bool relation_b_probe(const Gcm &n, const RationalMatrix &a);

/// Serre relations ad(X_{+-i})^{1-n(i,j)} X_{+-j} = 0 for the probe generators.
bool b_implies_de(const Gcm &n, const SolutionMatrix &a, std::span<const std::int64_t> index = {});

/// B(i,j) = -alpha_i(delta_{-j}).
struct BMatrix
{
	RationalMatrix b;
};

/// Throws IdentityViolated(i,j) if B(j,i)/B(i,i) != A(i,j)/A(j,j).
BMatrix b_matrix_identity(const CartanData &cd, const SolutionMatrix &a);

/// Candidate matrices a(i,j) = e * d_j off the diagonal and a(j,j) = d_j,
/// with d_j drawn from diag_values and e from off_multipliers.
struct CandidateGrid
{
	std::vector<Rational> diag_values{1, 2, Rational(1, 2)};
	std::vector<std::int64_t> off_multipliers{-2, -1, 0, 1, 2};

	/// Number of candidates for rank r, or nullopt on overflow.
	std::optional<std::uint64_t> size(std::size_t r) const;
};

/// Calls f on every candidate; f returns false to stop early.
void for_each_candidate(std::size_t r, const CandidateGrid &grid, const std::function<bool(const RationalMatrix &)> &f);

/// Calls f on every GCM of size r with off-diagonal entries in [min_entry, 0]
/// (symmetric zero pattern). Decomposable matrices are included.
void for_each_gcm(std::size_t r, std::int64_t min_entry, const std::function<void(const IntMatrix &)> &f);

struct EquivalenceReport
{
	std::size_t gcms_checked = 0;
	std::size_t with_solutions = 0;
	std::vector<IntMatrix> mismatches;

	bool passed() const { return mismatches.empty(); }
};

/// Compares brute_force_normalized with normalized_solution_matrices on every
/// indecomposable GCM with 1 <= r <= max_rank and entries >= min_entry.
EquivalenceReport compare_enumerators(std::size_t max_rank, std::int64_t min_entry);

struct SearchOptions
{
	CandidateGrid grid;
	std::uint64_t max_candidates = 200000;
};

/// For one GCM: brute force versus structured enumeration, and relation_b_probe
/// versus validate_solution_matrix over the candidate grid. Every disagreement
/// is listed under "discrepancies". Throws TooLarge when the grid is too big.
nlohmann::ordered_json discrepancy_report(const Gcm &n, const SearchOptions &options = {});

} // namespace kmvf
