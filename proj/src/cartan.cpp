#include "kmvf/cartan.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

namespace kmvf {

Gcm validate_gcm(const IntMatrix &m)
{
	if (!m.is_square())
		throw Error(ErrorCode::NotSquare, std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + " matrix");
	if (m.rows() == 0)
		throw Error(ErrorCode::InvalidArgument, "empty matrix");
	const std::size_t r = m.rows();
	for (std::size_t i = 0; i < r; ++i)
		if (m(i, i) != 2)
			throw Error(ErrorCode::DiagonalNotTwo, "n(i,i) = " + std::to_string(m(i, i)), {i});
	for (std::size_t i = 0; i < r; ++i)
		for (std::size_t j = 0; j < r; ++j)
		{
			if (i == j)
				continue;
			if (m(i, j) > 0)
				throw Error(ErrorCode::PositiveOffDiagonal, "n(i,j) = " + std::to_string(m(i, j)), {i, j});
			if ((m(i, j) == 0) != (m(j, i) == 0))
				throw Error(ErrorCode::ZeroPatternAsymmetric, "", {i, j});
		}
	return Gcm(m, r - rank(m));
}

std::vector<std::vector<std::size_t>> connected_components(const Gcm &n)
{
	const std::size_t r = n.rank();
	std::vector<std::size_t> label(r, r);
	std::vector<std::vector<std::size_t>> components;
	for (std::size_t start = 0; start < r; ++start)
	{
		if (label[start] != r)
			continue;
		std::vector<std::size_t> component, stack{start};
		label[start] = components.size();
		while (!stack.empty())
		{
			auto v = stack.back();
			stack.pop_back();
			component.push_back(v);
			for (std::size_t w = 0; w < r; ++w)
				if (w != v && n(v, w) != 0 && label[w] == r)
				{
					label[w] = components.size();
					stack.push_back(w);
				}
		}
		std::sort(component.begin(), component.end());
		components.push_back(std::move(component));
	}
	return components;
}

bool is_indecomposable(const Gcm &n) { return connected_components(n).size() == 1; }

std::string CartanType::name() const
{
	switch (kind)
	{
	case CartanKind::FiniteA: return "A" + std::to_string(index);
	case CartanKind::AffineA: return "A" + std::to_string(index) + "^(1)";
	case CartanKind::Other: break;
	}
	return "Other";
}

CartanType classify(const Gcm &n)
{
	if (!is_indecomposable(n))
		throw Error(ErrorCode::Decomposable, "split the matrix into components before classifying");

	const std::size_t r = n.rank();
	CartanType type;
	for (std::size_t i = 0; i < r; ++i)
		for (std::size_t j = i + 1; j < r; ++j)
			if (n(i, j) != 0)
				type.edges.push_back({i, j, n(i, j) * n(j, i)});

	if (r == 1)
	{
		type.kind = CartanKind::FiniteA;
		type.index = 1;
		type.order = {0};
		return type;
	}

	bool has_double = false;
	for (std::size_t i = 0; i < r; ++i)
		for (std::size_t j = 0; j < r; ++j)
		{
			if (i == j)
				continue;
			if (n(i, j) != n(j, i) || n(i, j) < -2)
				return type;
			has_double |= n(i, j) == -2;
		}

	if (has_double)
	{
		if (r == 2)
		{
			type.kind = CartanKind::AffineA;
			type.index = 1;
			type.order = {0, 1};
		}
		return type;
	}

	std::vector<std::vector<std::size_t>> nbrs(r);
	for (auto &e : type.edges)
	{
		nbrs[e.i].push_back(e.j);
		nbrs[e.j].push_back(e.i);
	}
	const bool max_deg_two = std::all_of(nbrs.begin(), nbrs.end(), [](auto &v) { return v.size() <= 2; });
	if (!max_deg_two)
		return type;

	auto walk = [&](std::size_t start) {
		std::vector<std::size_t> order{start};
		std::size_t prev = r, cur = start;
		while (order.size() < r)
		{
			std::size_t next = r;
			for (auto w : nbrs[cur])
				if (w != prev && (next == r || w < next))
					next = w;
			order.push_back(next);
			prev = cur;
			cur = next;
		}
		return order;
	};

	if (type.edges.size() == r - 1)
	{
		std::size_t start = 0;
		while (nbrs[start].size() != 1)
			++start;
		type.kind = CartanKind::FiniteA;
		type.index = r;
		type.order = walk(start);
	}
	else if (type.edges.size() == r && r >= 3)
	{
		type.kind = CartanKind::AffineA;
		type.index = r - 1;
		type.order = walk(0);
	}
	return type;
}

IntMatrix cartan_matrix_finite_a(std::size_t r)
{
	IntMatrix m(r, r, 0);
	for (std::size_t i = 0; i < r; ++i)
	{
		m(i, i) = 2;
		if (i + 1 < r)
			m(i, i + 1) = m(i + 1, i) = -1;
	}
	return m;
}

IntMatrix cartan_matrix_affine_a(std::size_t k)
{
	const std::size_t r = k + 1;
	if (r == 2)
		return IntMatrix{{2, -2}, {-2, 2}};
	IntMatrix m = cartan_matrix_finite_a(r);
	m(0, r - 1) = m(r - 1, 0) = -1;
	return m;
}

IntMatrix named_cartan_matrix(std::string_view name)
{
	auto bad = [&] { return Error(ErrorCode::InvalidArgument, "unknown matrix type '" + std::string(name) + "'"); };
	if (name == "B2")
		return IntMatrix{{2, -1}, {-2, 2}};
	if (name == "C2")
		return IntMatrix{{2, -2}, {-1, 2}};
	if (name == "G2")
		return IntMatrix{{2, -1}, {-3, 2}};
	if (name == "D4")
		return IntMatrix{{2, -1, 0, 0}, {-1, 2, -1, -1}, {0, -1, 2, 0}, {0, -1, 0, 2}};
	if (name == "F4")
		return IntMatrix{{2, -1, 0, 0}, {-1, 2, -2, 0}, {0, -1, 2, -1}, {0, 0, -1, 2}};
	if (name.size() < 2 || name.front() != 'A')
		throw bad();
	auto body = name.substr(1);
	const bool affine = body.ends_with("affine");
	if (affine)
		body.remove_suffix(6);
	std::size_t k = 0;
	auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), k);
	if (ec != std::errc() || ptr != body.data() + body.size() || k == 0 || k > 64)
		throw bad();
	return affine ? cartan_matrix_affine_a(k) : cartan_matrix_finite_a(k);
}

IntMatrix parse_int_matrix(std::string_view text)
{
	auto first = text.find_first_not_of(" \t\r\n");
	if (first == std::string_view::npos)
		throw Error(ErrorCode::ParseError, "empty matrix text");
	std::vector<std::vector<std::int64_t>> rows;
	if (text[first] == '[')
	{
		nlohmann::json j;
		try
		{
			j = nlohmann::json::parse(text);
		}
		catch (const nlohmann::json::exception &e)
		{
			throw Error(ErrorCode::ParseError, e.what());
		}
		if (!j.is_array())
			throw Error(ErrorCode::ParseError, "matrix must be an array of rows");
		for (auto &row : j)
		{
			if (!row.is_array())
				throw Error(ErrorCode::ParseError, "matrix row must be an array");
			auto &out = rows.emplace_back();
			for (auto &x : row)
			{
				if (!x.is_number_integer())
					throw Error(ErrorCode::ParseError, "matrix entries must be integers");
				out.push_back(x.get<std::int64_t>());
			}
		}
	}
	else
	{
		std::istringstream in{std::string(text)};
		std::string line;
		while (std::getline(in, line))
		{
			std::istringstream ls(line);
			std::vector<std::int64_t> row;
			std::string tok;
			while (ls >> tok)
			{
				std::int64_t v = 0;
				auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
				if (ec != std::errc() || ptr != tok.data() + tok.size())
					throw Error(ErrorCode::ParseError, "not an integer: '" + tok + "'");
				row.push_back(v);
			}
			if (!row.empty())
				rows.push_back(std::move(row));
		}
	}
	return IntMatrix::from_rows(rows);
}

} // namespace kmvf
