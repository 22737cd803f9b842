#include "kmvf/matrix.hpp"

#include <utility>

namespace kmvf {

RationalMatrix to_rational(const IntMatrix &m)
{
	RationalMatrix out(m.rows(), m.cols());
	for (std::size_t i = 0; i < m.rows(); ++i)
		for (std::size_t j = 0; j < m.cols(); ++j)
			out(i, j) = Rational(m(i, j));
	return out;
}

std::size_t rank(const IntMatrix &m)
{
	const std::size_t rows = m.rows(), cols = m.cols();
	std::vector<mpz_class> a(rows * cols);
	for (std::size_t i = 0; i < rows; ++i)
		for (std::size_t j = 0; j < cols; ++j)
			a[i * cols + j] = m(i, j);
	auto at = [&](std::size_t i, std::size_t j) -> mpz_class & { return a[i * cols + j]; };

	mpz_class prev = 1;
	std::size_t r = 0;
	for (std::size_t c = 0; c < cols && r < rows; ++c)
	{
		std::size_t p = r;
		while (p < rows && at(p, c) == 0)
			++p;
		if (p == rows)
			continue;
		if (p != r)
			for (std::size_t j = 0; j < cols; ++j)
				std::swap(at(p, j), at(r, j));
		for (std::size_t i = r + 1; i < rows; ++i)
		{
			for (std::size_t j = c + 1; j < cols; ++j)
			{
				at(i, j) = at(r, c) * at(i, j) - at(i, c) * at(r, j);
				mpz_divexact(at(i, j).get_mpz_t(), at(i, j).get_mpz_t(), prev.get_mpz_t());
			}
			at(i, c) = 0;
		}
		prev = at(r, c);
		++r;
	}
	return r;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(RationalMatrix &a)
{
	std::vector<std::size_t> pivots;
	std::size_t r = 0;
	for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c)
	{
		std::size_t p = r;
		while (p < a.rows() && a(p, c) == 0)
			++p;
		if (p == a.rows())
			continue;
		if (p != r)
			for (std::size_t j = 0; j < a.cols(); ++j)
				std::swap(a(p, j), a(r, j));
		Rational inv = 1 / a(r, c);
		for (std::size_t j = c; j < a.cols(); ++j)
			a(r, j) *= inv;
		for (std::size_t i = 0; i < a.rows(); ++i)
		{
			if (i == r || a(i, c) == 0)
				continue;
			Rational f = a(i, c);
			for (std::size_t j = c; j < a.cols(); ++j)
				a(i, j) -= f * a(r, j);
		}
		pivots.push_back(c);
		++r;
	}
	return pivots;
}

} // namespace

std::size_t rank(const RationalMatrix &m)
{
	RationalMatrix a = m;
	return rref(a).size();
}

std::vector<std::vector<Rational>> nullspace(const RationalMatrix &m)
{
	RationalMatrix a = m;
	auto pivots = rref(a);
	std::vector<bool> is_pivot(a.cols(), false);
	for (auto c : pivots)
		is_pivot[c] = true;

	std::vector<std::vector<Rational>> basis;
	for (std::size_t f = 0; f < a.cols(); ++f)
	{
		if (is_pivot[f])
			continue;
		std::vector<Rational> v(a.cols(), Rational(0));
		v[f] = 1;
		for (std::size_t k = 0; k < pivots.size(); ++k)
			v[pivots[k]] = -a(k, f);
		basis.push_back(std::move(v));
	}
	return basis;
}

std::optional<std::vector<Rational>> solve(const RationalMatrix &m, std::span<const Rational> b)
{
	if (b.size() != m.rows())
		throw Error(ErrorCode::DimensionMismatch, "right-hand side length differs from row count");
	RationalMatrix aug(m.rows(), m.cols() + 1);
	for (std::size_t i = 0; i < m.rows(); ++i)
	{
		for (std::size_t j = 0; j < m.cols(); ++j)
			aug(i, j) = m(i, j);
		aug(i, m.cols()) = b[i];
	}
	auto pivots = rref(aug);
	if (!pivots.empty() && pivots.back() == m.cols())
		return std::nullopt;
	std::vector<Rational> x(m.cols(), Rational(0));
	for (std::size_t k = 0; k < pivots.size(); ++k)
		x[pivots[k]] = aug(k, m.cols());
	return x;
}

} // namespace kmvf
