#pragma once

#include "kmvf/error.hpp"
#include "kmvf/scalar.hpp"

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

namespace kmvf {

/// Dense row-major matrix with value semantics.
template <class T> class Matrix
{
  public:
	Matrix() = default;
	Matrix(std::size_t rows, std::size_t cols, const T &fill = T{}) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
	Matrix(std::initializer_list<std::initializer_list<T>> rows)
	{
		rows_ = rows.size();
		cols_ = rows_ ? rows.begin()->size() : 0;
		data_.reserve(rows_ * cols_);
		for (auto &row : rows)
		{
			if (row.size() != cols_)
				throw Error(ErrorCode::DimensionMismatch, "ragged matrix literal");
			data_.insert(data_.end(), row.begin(), row.end());
		}
	}

	static Matrix from_rows(const std::vector<std::vector<T>> &rows)
	{
		Matrix m;
		m.rows_ = rows.size();
		m.cols_ = m.rows_ ? rows.front().size() : 0;
		for (auto &row : rows)
		{
			if (row.size() != m.cols_)
				throw Error(ErrorCode::DimensionMismatch, "ragged matrix rows");
			m.data_.insert(m.data_.end(), row.begin(), row.end());
		}
		return m;
	}

	static Matrix identity(std::size_t n)
	{
		Matrix m(n, n, T(0));
		for (std::size_t i = 0; i < n; ++i)
			m(i, i) = T(1);
		return m;
	}

	std::size_t rows() const noexcept { return rows_; }
	std::size_t cols() const noexcept { return cols_; }
	bool is_square() const noexcept { return rows_ == cols_; }

	T &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
	const T &operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

	std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

	std::vector<std::vector<T>> to_rows() const
	{
		std::vector<std::vector<T>> out(rows_);
		for (std::size_t i = 0; i < rows_; ++i)
			out[i].assign(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
		return out;
	}

	Matrix transposed() const
	{
		Matrix t(cols_, rows_);
		for (std::size_t i = 0; i < rows_; ++i)
			for (std::size_t j = 0; j < cols_; ++j)
				t(j, i) = (*this)(i, j);
		return t;
	}

	bool operator==(const Matrix &other) const = default;

  private:
	std::size_t rows_ = 0;
	std::size_t cols_ = 0;
	std::vector<T> data_;
};

using IntMatrix = Matrix<std::int64_t>;
using RationalMatrix = Matrix<Rational>;

RationalMatrix to_rational(const IntMatrix &m);

/// Simultaneous row/column permutation: result(i,j) = m(perm[i], perm[j]).
template <class T> Matrix<T> permuted(const Matrix<T> &m, std::span<const std::size_t> perm)
{
	Matrix<T> out(m.rows(), m.cols());
	for (std::size_t i = 0; i < m.rows(); ++i)
		for (std::size_t j = 0; j < m.cols(); ++j)
			out(i, j) = m(perm[i], perm[j]);
	return out;
}

/// Rank of an integer matrix by fraction-free (Bareiss) elimination.
std::size_t rank(const IntMatrix &m);

/// Rank over the rationals by Gaussian elimination.
std::size_t rank(const RationalMatrix &m);

/// Basis of {x : m x = 0}.
std::vector<std::vector<Rational>> nullspace(const RationalMatrix &m);

/// Some solution of m x = b (free variables set to zero), if one exists.
std::optional<std::vector<Rational>> solve(const RationalMatrix &m, std::span<const Rational> b);

} // namespace kmvf
