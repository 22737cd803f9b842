#include "kmvf/solution.hpp"

namespace kmvf {

SolutionMatrix::SolutionMatrix(RationalMatrix a, Orientation orientation)
    : a_(std::move(a)), normalized_(a_.rows(), a_.cols()), orientation_(orientation)
{
	const std::size_t r = a_.rows();
	for (std::size_t i = 0; i < r; ++i)
		diag_.push_back(a_(i, i));
	for (std::size_t i = 0; i < r; ++i)
		for (std::size_t j = 0; j < r; ++j)
			normalized_(i, j) = a_(i, j) / diag_[j];
	for (std::size_t i = 0; i < r; ++i)
		for (std::size_t j = 0; j < r; ++j)
			if (i != j && normalized_(j, i) == -1)
				incidence_.emplace(i, j);
}

RationalMatrix forward_pattern(const CartanType &type, std::size_t r)
{
	RationalMatrix p = RationalMatrix::identity(r);
	const auto &o = type.order;
	for (std::size_t k = 0; k + 1 < o.size(); ++k)
		p(o[k], o[k + 1]) = -1;
	if (type.kind == CartanKind::AffineA && o.size() >= 3)
		p(o.back(), o.front()) = -1;
	return p;
}

namespace {

Orientation orientation_of(const Gcm &n, const RationalMatrix &normalized)
{
	if (n.rank() < 2 || !is_indecomposable(n))
		return Orientation::Symmetric;
	auto type = classify(n);
	if (type.kind == CartanKind::Other || (type.kind == CartanKind::AffineA && n.rank() == 2))
		return Orientation::Symmetric;
	auto forward = forward_pattern(type, n.rank());
	if (normalized == forward)
		return Orientation::Forward;
	if (normalized == forward.transposed())
		return Orientation::Backward;
	return Orientation::Symmetric;
}

} // namespace

SolutionMatrix validate_solution_matrix(const Gcm &n, const RationalMatrix &a)
{
	const std::size_t r = n.rank();
	if (a.rows() != r || a.cols() != r)
		throw Error(ErrorCode::DimensionMismatch, "solution matrix must be " + std::to_string(r) + "x" + std::to_string(r));
	for (std::size_t i = 0; i < r; ++i)
		if (a(i, i) == 0)
			throw Error(ErrorCode::ZeroDiagonal, "", {i});

	RationalMatrix p(r, r);
	for (std::size_t i = 0; i < r; ++i)
		for (std::size_t j = 0; j < r; ++j)
			p(i, j) = a(i, j) / a(j, j);

	for (std::size_t i = 0; i < r; ++i)
		for (std::size_t j = 0; j < r; ++j)
			if (i != j && p(i, j) != 0 && p(i, j) != -1)
				throw Error(ErrorCode::BadNormalizedEntry, "A(i,j)/A(j,j) = " + to_string(p(i, j)), {i, j});

	for (std::size_t i = 0; i < r; ++i)
		for (std::size_t j = 0; j < r; ++j)
			if (i != j && p(i, j) + p(j, i) != Rational(n(j, i)))
				throw Error(ErrorCode::SumMismatch,
				            "A'(i,j) + A'(j,i) = " + to_string(p(i, j) + p(j, i)) + " but n(j,i) = " +
				                std::to_string(n(j, i)),
				            {i, j});

	for (std::size_t i = 0; i < r; ++i)
		for (std::size_t j = 0; j < r; ++j)
		{
			if (i == j || p(i, j) != -1)
				continue;
			for (std::size_t k = 0; k < r; ++k)
			{
				if (k != j && k != i && p(i, k) == -1)
					throw Error(ErrorCode::ExclusionViolated, "second -1 in row", {i, j, k});
				if (k != i && k != j && p(k, j) == -1)
					throw Error(ErrorCode::ExclusionViolated, "second -1 in column", {i, j, k});
			}
		}

	return SolutionMatrix(a, orientation_of(n, p));
}

std::vector<SolutionMatrix> normalized_solution_matrices(const Gcm &n)
{
	auto type = classify(n);
	const std::size_t r = n.rank();
	switch (type.kind)
	{
	case CartanKind::Other:
		return {};
	case CartanKind::FiniteA:
		if (r == 1)
			return {SolutionMatrix(RationalMatrix::identity(1), Orientation::Symmetric)};
		break;
	case CartanKind::AffineA:
		if (r == 2)
			return {SolutionMatrix(RationalMatrix{{1, -1}, {-1, 1}}, Orientation::Symmetric)};
		break;
	}
	auto forward = forward_pattern(type, r);
	auto backward = forward.transposed();
	return {SolutionMatrix(std::move(forward), Orientation::Forward),
	        SolutionMatrix(std::move(backward), Orientation::Backward)};
}

SolutionMatrix scale(const SolutionMatrix &a, std::span<const Rational> d)
{
	const std::size_t r = a.rank();
	if (d.size() != r)
		throw Error(ErrorCode::DimensionMismatch, "need one scale factor per column");
	for (std::size_t j = 0; j < r; ++j)
		if (d[j] == 0)
			throw Error(ErrorCode::ZeroScale, "", {j});
	RationalMatrix m = a.matrix();
	for (std::size_t i = 0; i < r; ++i)
		for (std::size_t j = 0; j < r; ++j)
			m(i, j) *= d[j];
	return SolutionMatrix(std::move(m), a.orientation());
}

SolutionMatrix transpose_involution(const SolutionMatrix &a)
{
	Orientation o = a.orientation();
	if (o == Orientation::Forward)
		o = Orientation::Backward;
	else if (o == Orientation::Backward)
		o = Orientation::Forward;
	const auto &m = a.matrix();
	const std::size_t r = a.rank();
	RationalMatrix t(r, r);
	for (std::size_t i = 0; i < r; ++i)
		for (std::size_t j = 0; j < r; ++j)
			t(i, j) = m(j, i) / (m(i, i) * m(j, j));
	return SolutionMatrix(std::move(t), o);
}

std::string to_string(Orientation o)
{
	switch (o)
	{
	case Orientation::Symmetric: return "symmetric";
	case Orientation::Forward: return "forward";
	case Orientation::Backward: return "backward";
	}
	return "?";
}

nlohmann::json to_json(const RationalMatrix &m)
{
	auto out = nlohmann::json::array();
	for (std::size_t i = 0; i < m.rows(); ++i)
	{
		auto row = nlohmann::json::array();
		for (auto &x : m.row(i))
			row.push_back(to_string(x));
		out.push_back(std::move(row));
	}
	return out;
}

RationalMatrix rational_matrix_from_json(const nlohmann::json &j)
{
	if (!j.is_array())
		throw Error(ErrorCode::ParseError, "matrix must be an array of rows");
	std::vector<std::vector<Rational>> rows;
	for (auto &row : j)
	{
		if (!row.is_array())
			throw Error(ErrorCode::ParseError, "matrix row must be an array");
		auto &out = rows.emplace_back();
		for (auto &x : row)
		{
			if (x.is_string())
				out.push_back(parse_rational(x.get<std::string>()));
			else if (x.is_number_integer())
				out.push_back(Rational(x.get<std::int64_t>()));
			else
				throw Error(ErrorCode::ParseError, "entries must be integers or rational strings");
		}
	}
	return RationalMatrix::from_rows(rows);
}

nlohmann::json to_json(const SolutionMatrix &a)
{
	nlohmann::json j;
	j["matrix"] = to_json(a.matrix());
	j["normalized"] = to_json(a.normalized());
	auto diag = nlohmann::json::array();
	for (auto &d : a.diag())
		diag.push_back(to_string(d));
	j["diag"] = diag;
	auto inc = nlohmann::json::array();
	for (auto [i, k] : a.incidence())
		inc.push_back({i + 1, k + 1});
	j["incidence"] = inc;
	j["orientation"] = to_string(a.orientation());
	j["epsilon"] = a.epsilon();
	return j;
}

} // namespace kmvf
