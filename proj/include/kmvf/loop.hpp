#pragma once

#include "kmvf/representation.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace kmvf {

/// Inclusive range of loop degrees m, n tested in the bracket law.
struct MRange
{
	std::int64_t lo = -3;
	std::int64_t hi = 3;
};

/// Parses "lo:hi".
MRange parse_m_range(std::string_view text);

/// Basis of the Lie algebra generated by F(X_{+-i}) over the finite nodes of
/// an affine representation (every node except the affine node 0).
/// Throws ClosureDiverged once the span exceeds max_dim.
std::vector<Derivation> finite_part_closure(const Representation &rep, std::size_t max_dim);

struct HighestRootVectors
{
	/// [X_{o1}, [X_{o2}, ... X_{ok}]] along the finite path.
	Derivation plus{1};
	/// scale * [X_{-o1}, [X_{-o2}, ... X_{-ok}]].
	Derivation minus{1};
	Rational scale;
	/// F(H_phi), the sum of the finite H images.
	Derivation h_phi{1};
};

/// Rescales the negative vector so that [plus, minus] = F(H_phi).
/// Throws NormalizationImpossible if the bracket is not a nonzero multiple.
HighestRootVectors highest_root_vectors(const Representation &rep);

/// The Laurent polynomial T with target = T * base. Throws NotProportional.
LaurentPoly extract_T(const Derivation &target, const Derivation &base);

struct LoopCheck
{
	std::string label;
	bool passed = false;
};

struct LoopCertificate
{
	std::vector<std::size_t> finite_nodes;
	std::vector<Derivation> sl_basis;
	HighestRootVectors phi;
	/// From F(X_0) = T * phi.minus.
	LaurentPoly T{1};
	/// From phi.plus = T * F(X_{-0}); must agree with T.
	LaurentPoly T_from_minus{1};
	std::vector<LoopCheck> checks;

	bool passed() const;
};

/// Exhibits an affine representation as a loop algebra over sl(r):
/// T is a unit, annihilated by the finite part, an eigenvector of F(d), and
/// [T^m A, T^n B] = T^{m+n} [A, B] for basis elements A, B and m, n in range.
/// Throws UnsupportedType for finite types.
LoopCertificate verify_loop_law(const Representation &rep, MRange range = {});

struct RestrictionReport
{
	std::vector<std::string> mismatches;
	bool passed() const { return mismatches.empty(); }
};

/// Drops the affine coordinate from the finite-node images and compares them
/// with the finite representation built from the principal submatrix of A.
RestrictionReport finite_restriction_check(const Representation &rep);

nlohmann::ordered_json to_json(const LoopCertificate &cert);

} // namespace kmvf
