#pragma once

#include "kmvf/vectorfield.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace kmvf::testing {

using Rng = std::mt19937_64;

inline std::int64_t uniform(Rng &rng, std::int64_t lo, std::int64_t hi)
{
	return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

/// Small nonzero rational p/q.
inline Rational random_rational(Rng &rng, bool nonzero = true)
{
	for (;;)
	{
		Rational q(static_cast<long>(uniform(rng, -6, 6)), static_cast<unsigned long>(uniform(rng, 1, 4)));
		q.canonicalize();
		if (!nonzero || q != 0)
			return q;
	}
}

inline Monomial random_monomial(Rng &rng, std::size_t rank, std::int64_t spread = 3)
{
	Monomial m{std::vector<std::int64_t>(rank)};
	for (auto &e : m.exps)
		e = uniform(rng, -spread, spread);
	return m;
}

inline LaurentPoly random_poly(Rng &rng, std::size_t rank, std::size_t max_terms = 4)
{
	LaurentPoly p(rank);
	const auto terms = uniform(rng, 0, static_cast<std::int64_t>(max_terms));
	for (std::int64_t k = 0; k < terms; ++k)
		p.add_term(random_monomial(rng, rank), random_rational(rng));
	return p;
}

inline LaurentPoly random_unit(Rng &rng, std::size_t rank)
{
	return LaurentPoly::monomial(random_monomial(rng, rank), random_rational(rng));
}

inline Derivation random_derivation(Rng &rng, std::size_t rank, std::size_t max_terms = 3)
{
	std::vector<LaurentPoly> coords;
	for (std::size_t j = 0; j < rank; ++j)
		coords.push_back(random_poly(rng, rank, max_terms));
	return Derivation(std::move(coords));
}

inline std::vector<Rational> random_vector(Rng &rng, std::size_t rank)
{
	std::vector<Rational> v(rank);
	for (auto &x : v)
		x = random_rational(rng, false);
	return v;
}

/// Value of p at a point with nonzero rational coordinates, computed term by
/// term from the exponent vectors. Used as an independent check of ring
/// operations: evaluation is a ring homomorphism.
inline Rational evaluate(const LaurentPoly &p, const std::vector<Rational> &x)
{
	Rational total = 0;
	for (auto &[m, c] : p.terms())
	{
		Rational v = c;
		for (std::size_t j = 0; j < m.rank(); ++j)
		{
			const std::int64_t e = m.exps[j];
			for (std::int64_t k = 0; k < (e < 0 ? -e : e); ++k)
				v = e < 0 ? Rational(v / x[j]) : Rational(v * x[j]);
		}
		total += v;
	}
	return total;
}

/// Single-term field c * z^m * D_j, built coordinate by coordinate.
inline Derivation term_field(std::size_t rank, const Monomial &m, std::size_t j, const Rational &c)
{
	std::vector<LaurentPoly> coords(rank, LaurentPoly(rank));
	coords[j] = LaurentPoly::monomial(m, c);
	return Derivation(std::move(coords));
}

} // namespace kmvf::testing
