#include "kmvf/oracle.hpp"

#include "kmvf/solution.hpp"

#include <algorithm>

namespace kmvf {

namespace {

using Pattern = std::vector<std::vector<int>>;

/// Conditions on a normalized candidate, checked entry by entry with no
/// shortcuts: unit diagonal, off-diagonal entries in {0,-1}, the pair sums,
/// and at most one -1 per row and per column off the diagonal.
bool satisfies_normalized_conditions(const Gcm &n, const Pattern &p)
{
	const std::size_t r = n.rank();
	for (std::size_t i = 0; i < r; ++i)
		if (p[i][i] != 1)
			return false;
	for (std::size_t i = 0; i < r; ++i)
		for (std::size_t j = 0; j < r; ++j)
			if (i != j && p[i][j] != 0 && p[i][j] != -1)
				return false;
	for (std::size_t i = 0; i < r; ++i)
		for (std::size_t j = 0; j < r; ++j)
			if (i != j && p[i][j] + p[j][i] != n(j, i))
				return false;
	for (std::size_t i = 0; i < r; ++i)
		for (std::size_t j = 0; j < r; ++j)
		{
			if (i == j || p[i][j] != -1)
				continue;
			for (std::size_t k = 0; k < r; ++k)
			{
				if (k != i && k != j && p[i][k] == -1)
					return false;
				if (k != i && k != j && p[k][j] == -1)
					return false;
			}
		}
	return true;
}

struct BruteForce
{
	const Gcm &n;
	std::size_t r;
	std::vector<std::pair<std::size_t, std::size_t>> pairs;
	Pattern p;
	std::vector<int> row_minus, col_minus;
	std::vector<RationalMatrix> found;

	void place(std::size_t i, std::size_t j, int v, int delta)
	{
		p[i][j] = v;
		if (v == -1)
		{
			row_minus[i] += delta;
			col_minus[j] += delta;
		}
	}

	void run(std::size_t k)
	{
		if (k == pairs.size())
		{
			if (satisfies_normalized_conditions(n, p))
			{
				RationalMatrix m(r, r);
				for (std::size_t i = 0; i < r; ++i)
					for (std::size_t j = 0; j < r; ++j)
						m(i, j) = p[i][j];
				found.push_back(std::move(m));
			}
			return;
		}
		auto [i, j] = pairs[k];
		for (int u : {0, -1})
			for (int v : {0, -1})
			{
				// Both ordered sums are fixed by N; a second -1 in a row or
				// column can never be undone further down.
				if (u + v != n(j, i) || u + v != n(i, j))
					continue;
				place(i, j, u, 1);
				place(j, i, v, 1);
				if (row_minus[i] <= 1 && row_minus[j] <= 1 && col_minus[i] <= 1 && col_minus[j] <= 1)
					run(k + 1);
				place(i, j, u, -1);
				place(j, i, v, -1);
				p[i][j] = p[j][i] = 0;
			}
	}
};

LaurentPoly z_power(std::size_t rank, std::size_t i, std::int64_t e)
{
	Monomial m{std::vector<std::int64_t>(rank, 0)};
	m.exps[i] = e;
	return LaurentPoly::monomial(std::move(m));
}

} // namespace

std::vector<RationalMatrix> brute_force_normalized(const Gcm &n)
{
	const std::size_t r = n.rank();
	if (r > 8)
		throw Error(ErrorCode::TooLarge, "brute force is limited to r <= 8");
	BruteForce bf{n, r, {}, Pattern(r, std::vector<int>(r, 0)), std::vector<int>(r, 0), std::vector<int>(r, 0), {}};
	for (std::size_t i = 0; i < r; ++i)
	{
		bf.p[i][i] = 1;
		for (std::size_t j = i + 1; j < r; ++j)
			bf.pairs.emplace_back(i, j);
	}
	bf.run(0);
	return std::move(bf.found);
}

ProbeGenerators probe_generators(const Gcm &n, const RationalMatrix &a, std::span<const std::int64_t> index)
{
	const std::size_t r = n.rank();
	if (a.rows() != r || a.cols() != r)
		throw Error(ErrorCode::DimensionMismatch, "candidate size differs from the Cartan matrix");
	std::vector<std::int64_t> ones(r, 1);
	if (index.empty())
		index = ones;
	if (index.size() != r)
		throw Error(ErrorCode::DimensionMismatch, "n must have one entry per node");
	for (std::size_t i = 0; i < r; ++i)
		if (a(i, i) == 0)
			throw Error(ErrorCode::ZeroDiagonal, "", {i});

	ProbeGenerators g;
	for (std::size_t i = 0; i < r; ++i)
	{
		std::vector<Rational> h(r), delta(r);
		for (std::size_t j = 0; j < r; ++j)
		{
			h[j] = n(i, j);
			delta[j] = a(j, i);
		}
		auto hi = scaled_constant_field(h, index);
		auto di = scaled_constant_field(delta, index);
		const Rational inv = Rational(1) / a(i, i);
		auto dmi = inv * (-hi + inv * di);
		g.x_plus.push_back(z_power(r, i, index[i]) * di);
		g.x_minus.push_back(z_power(r, i, -index[i]) * dmi);
		g.h.push_back(std::move(hi));
	}
	return g;
}

bool relation_b_probe(const Gcm &n, const RationalMatrix &a)
{
	auto g = probe_generators(n, a);
	const std::size_t r = n.rank();
	for (std::size_t i = 0; i < r; ++i)
		for (std::size_t j = 0; j < r; ++j)
		{
			auto b = bracket(g.x_plus[i], g.x_minus[j]);
			if (i == j ? b != g.h[i] : !b.is_zero())
				return false;
		}
	return true;
}

bool b_implies_de(const Gcm &n, const SolutionMatrix &a, std::span<const std::int64_t> index)
{
	auto g = probe_generators(n, a.matrix(), index);
	const std::size_t r = n.rank();
	for (std::size_t i = 0; i < r; ++i)
		for (std::size_t j = 0; j < r; ++j)
		{
			if (i == j)
				continue;
			const auto k = static_cast<unsigned>(1 - n(i, j));
			if (!ad_pow(g.x_plus[i], k, g.x_plus[j]).is_zero() || !ad_pow(g.x_minus[i], k, g.x_minus[j]).is_zero())
				return false;
		}
	return true;
}

BMatrix b_matrix_identity(const CartanData &cd, const SolutionMatrix &a)
{
	const std::size_t r = cd.rank();
	auto deltas = build_deltas(cd, a);
	BMatrix out{RationalMatrix(r, r)};
	for (std::size_t j = 0; j < r; ++j)
	{
		auto c = deltas.minus[j].constant_coords();
		if (!c)
			throw Error(ErrorCode::IdentityViolated, "delta_{-j} is not a constant field", {j});
		for (std::size_t i = 0; i < r; ++i)
			out.b(i, j) = -(*c)[i];
	}
	const auto &A = a.matrix();
	for (std::size_t i = 0; i < r; ++i)
		for (std::size_t j = 0; j < r; ++j)
			if (out.b(i, i) == 0 || out.b(j, i) / out.b(i, i) != A(i, j) / A(j, j))
				throw Error(ErrorCode::IdentityViolated, "B(j,i)/B(i,i) differs from A(i,j)/A(j,j)", {i, j});
	return out;
}

std::optional<std::uint64_t> CandidateGrid::size(std::size_t r) const
{
	std::uint64_t total = 1;
	auto mul = [&](std::uint64_t f) {
		if (f != 0 && total > UINT64_MAX / f)
			return false;
		total *= f;
		return true;
	};
	for (std::size_t j = 0; j < r; ++j)
		if (!mul(diag_values.size()))
			return std::nullopt;
	for (std::size_t k = 0; k < r * (r - 1); ++k)
		if (!mul(off_multipliers.size()))
			return std::nullopt;
	return total;
}

void for_each_candidate(std::size_t r, const CandidateGrid &grid, const std::function<bool(const RationalMatrix &)> &f)
{
	if (grid.diag_values.empty() || grid.off_multipliers.empty())
		return;
	std::vector<std::size_t> d(r, 0), e(r * (r - 1), 0);
	RationalMatrix a(r, r);
	for (;;)
	{
		std::size_t k = 0;
		for (std::size_t i = 0; i < r; ++i)
			for (std::size_t j = 0; j < r; ++j)
				a(i, j) = i == j ? grid.diag_values[d[j]]
				                 : Rational(static_cast<long>(grid.off_multipliers[e[k++]])) * grid.diag_values[d[j]];
		if (!f(a))
			return;
		// Odometer over the off-diagonal multipliers, then the diagonal.
		std::size_t p = 0;
		for (; p < e.size(); ++p)
		{
			if (++e[p] < grid.off_multipliers.size())
				break;
			e[p] = 0;
		}
		if (p < e.size())
			continue;
		std::size_t q = 0;
		for (; q < r; ++q)
		{
			if (++d[q] < grid.diag_values.size())
				break;
			d[q] = 0;
		}
		if (q == r)
			return;
	}
}

void for_each_gcm(std::size_t r, std::int64_t min_entry, const std::function<void(const IntMatrix &)> &f)
{
	if (min_entry > 0)
		min_entry = 0;
	std::vector<std::pair<std::size_t, std::size_t>> pairs;
	for (std::size_t i = 0; i < r; ++i)
		for (std::size_t j = i + 1; j < r; ++j)
			pairs.emplace_back(i, j);
	// Each pair is either (0,0) or a pair of negative entries.
	std::vector<std::pair<std::int64_t, std::int64_t>> choices{{0, 0}};
	for (std::int64_t x = -1; x >= min_entry; --x)
		for (std::int64_t y = -1; y >= min_entry; --y)
			choices.emplace_back(x, y);

	IntMatrix m = IntMatrix::identity(r);
	for (std::size_t i = 0; i < r; ++i)
		m(i, i) = 2;
	std::vector<std::size_t> idx(pairs.size(), 0);
	for (;;)
	{
		for (std::size_t k = 0; k < pairs.size(); ++k)
		{
			auto [i, j] = pairs[k];
			m(i, j) = choices[idx[k]].first;
			m(j, i) = choices[idx[k]].second;
		}
		f(m);
		std::size_t p = 0;
		for (; p < idx.size(); ++p)
		{
			if (++idx[p] < choices.size())
				break;
			idx[p] = 0;
		}
		if (p == idx.size())
			return;
	}
}

EquivalenceReport compare_enumerators(std::size_t max_rank, std::int64_t min_entry)
{
	EquivalenceReport report;
	for (std::size_t r = 1; r <= max_rank; ++r)
		for_each_gcm(r, min_entry, [&](const IntMatrix &m) {
			auto n = validate_gcm(m);
			if (!is_indecomposable(n))
				return;
			++report.gcms_checked;
			auto brute = brute_force_normalized(n);
			auto structured = normalized_solution_matrices(n);
			if (!brute.empty())
				++report.with_solutions;
			bool same = brute.size() == structured.size();
			for (auto &s : structured)
				same = same && std::find(brute.begin(), brute.end(), s.normalized()) != brute.end();
			if (!same)
				report.mismatches.push_back(m);
		});
	return report;
}

nlohmann::ordered_json discrepancy_report(const Gcm &n, const SearchOptions &options)
{
	const std::size_t r = n.rank();
	auto grid_size = options.grid.size(r);
	if (!grid_size || *grid_size > options.max_candidates)
		throw Error(ErrorCode::TooLarge, "candidate grid exceeds the configured limit of " +
		                                     std::to_string(options.max_candidates));

	nlohmann::ordered_json j;
	j["cartan_matrix"] = n.matrix().to_rows();
	j["indecomposable"] = is_indecomposable(n);
	j["type"] = is_indecomposable(n) ? classify(n).name() : "decomposable";
	auto discrepancies = nlohmann::ordered_json::array();

	auto brute = brute_force_normalized(n);
	std::size_t structured_count = 0;
	if (is_indecomposable(n))
	{
		auto structured = normalized_solution_matrices(n);
		structured_count = structured.size();
		for (auto &s : structured)
			if (std::find(brute.begin(), brute.end(), s.normalized()) == brute.end())
				discrepancies.push_back({{"kind", "enumeration"}, {"matrix", to_json(s.normalized())},
				                         {"brute_force", false}, {"structured", true}});
		for (auto &b : brute)
			if (std::none_of(structured.begin(), structured.end(),
			                 [&](const SolutionMatrix &s) { return s.normalized() == b; }))
				discrepancies.push_back(
				    {{"kind", "enumeration"}, {"matrix", to_json(b)}, {"brute_force", true}, {"structured", false}});
	}
	j["brute_force_count"] = brute.size();
	j["structured_count"] = structured_count;

	std::uint64_t candidates = 0, probe_positive = 0, structured_positive = 0;
	for_each_candidate(r, options.grid, [&](const RationalMatrix &a) {
		++candidates;
		bool probe = relation_b_probe(n, a);
		bool valid = true;
		try
		{
			validate_solution_matrix(n, a);
		}
		catch (const Error &)
		{
			valid = false;
		}
		probe_positive += probe;
		structured_positive += valid;
		if (probe != valid)
			discrepancies.push_back(
			    {{"kind", "probe"}, {"matrix", to_json(a)}, {"relation_b", probe}, {"structured", valid}});
		return true;
	});
	j["candidates"] = candidates;
	j["probe_positive"] = probe_positive;
	j["structured_positive"] = structured_positive;
	j["discrepancies"] = std::move(discrepancies);
	return j;
}

} // namespace kmvf
