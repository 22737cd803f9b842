#include "kmvf/solution.hpp"

#include "support.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>

using namespace kmvf;

namespace {

RationalMatrix Q(std::initializer_list<std::initializer_list<Rational>> rows)
{
	return RationalMatrix(rows);
}

Gcm G(const char *name)
{
	return validate_gcm(named_cartan_matrix(name));
}

ErrorCode code_of(const std::function<void()> &f)
{
	try
	{
		f();
	}
	catch (const Error &e)
	{
		return e.code();
	}
	FAIL("expected an error");
	return ErrorCode::InvalidArgument;
}

using Incidence = std::set<std::pair<std::size_t, std::size_t>>;

} // namespace

TEST_CASE("normalized solution matrices of small types", "[solution]")
{
	auto a2 = normalized_solution_matrices(G("A2"));
	REQUIRE(a2.size() == 2);
	CHECK(a2[0].matrix() == Q({{1, -1}, {0, 1}}));
	CHECK(a2[1].matrix() == Q({{1, 0}, {-1, 1}}));
	CHECK(a2[0].orientation() == Orientation::Forward);
	CHECK(a2[0].epsilon() == 1);
	CHECK(a2[1].epsilon() == -1);

	auto aff = normalized_solution_matrices(G("A1affine"));
	REQUIRE(aff.size() == 1);
	CHECK(aff[0].matrix() == Q({{1, -1}, {-1, 1}}));

	auto a1 = normalized_solution_matrices(G("A1"));
	REQUIRE(a1.size() == 1);
	CHECK(a1[0].matrix() == Q({{1}}));

	for (auto name : {"B2", "C2", "G2", "D4", "F4"})
		CHECK(normalized_solution_matrices(G(name)).empty());
	CHECK(code_of([] { normalized_solution_matrices(validate_gcm(IntMatrix{{2, 0}, {0, 2}})); }) ==
	      ErrorCode::Decomposable);
}

TEST_CASE("counts and transposes for A_r and affine A", "[solution]")
{
	for (std::size_t r = 2; r <= 6; ++r)
	{
		auto all = normalized_solution_matrices(validate_gcm(cartan_matrix_finite_a(r)));
		REQUIRE(all.size() == 2);
		CHECK(all[1].matrix() == all[0].matrix().transposed());
	}
	for (std::size_t r = 3; r <= 6; ++r)
	{
		auto all = normalized_solution_matrices(validate_gcm(cartan_matrix_affine_a(r - 1)));
		REQUIRE(all.size() == 2);
		CHECK(all[1].matrix() == all[0].matrix().transposed());
	}
}

TEST_CASE("incidence sets are Hamiltonian paths and cycles", "[solution]")
{
	for (std::size_t r = 2; r <= 6; ++r)
	{
		auto all = normalized_solution_matrices(validate_gcm(cartan_matrix_finite_a(r)));
		Incidence path;
		for (std::size_t i = 0; i + 1 < r; ++i)
			path.emplace(i, i + 1);
		Incidence back;
		for (auto [i, j] : path)
			back.emplace(j, i);
		CHECK(((all[0].incidence() == path && all[1].incidence() == back) ||
		       (all[0].incidence() == back && all[1].incidence() == path)));
	}
	for (std::size_t r = 3; r <= 6; ++r)
	{
		auto all = normalized_solution_matrices(validate_gcm(cartan_matrix_affine_a(r - 1)));
		Incidence cycle;
		for (std::size_t i = 0; i < r; ++i)
			cycle.emplace(i, (i + 1) % r);
		Incidence back;
		for (auto [i, j] : cycle)
			back.emplace(j, i);
		CHECK(((all[0].incidence() == cycle && all[1].incidence() == back) ||
		       (all[0].incidence() == back && all[1].incidence() == cycle)));
	}
}

TEST_CASE("validation of explicit matrices", "[solution]")
{
	auto sm = validate_solution_matrix(G("A2"), Q({{5, -7}, {0, 7}}));
	CHECK(sm.diag() == std::vector<Rational>{5, 7});
	CHECK(sm.normalized() == Q({{1, -1}, {0, 1}}));
	// (i,j) is incident when A(j,i)/A(i,i) = -1: here A(1,2)/A(2,2) = -1, so the pair is (2,1).
	CHECK(sm.incidence() == Incidence{{1, 0}});
	CHECK(transpose_involution(sm).incidence() == Incidence{{0, 1}});

	CHECK(code_of([] { validate_solution_matrix(G("A2"), Q({{1, -1}, {-1, 1}})); }) == ErrorCode::SumMismatch);
	CHECK(code_of([] { validate_solution_matrix(G("A2"), Q({{0, -1}, {0, 1}})); }) == ErrorCode::ZeroDiagonal);
	CHECK(code_of([] { validate_solution_matrix(G("A2"), Q({{1, -2}, {1, 1}})); }) == ErrorCode::BadNormalizedEntry);
	CHECK(code_of([] { validate_solution_matrix(G("A2"), Q({{1, -1, 0}, {0, 1, 0}, {0, 0, 1}})); }) ==
	      ErrorCode::DimensionMismatch);
	CHECK_NOTHROW(validate_solution_matrix(G("A1affine"), Q({{1, -1}, {-1, 1}})));
	CHECK_NOTHROW(validate_solution_matrix(G("A1affine"), Q({{3, Rational(-1, 2)}, {-3, Rational(1, 2)}})));
	// Non-symmetric N: one of the two ordered pair sums always fails.
	CHECK(code_of([] { validate_solution_matrix(G("B2"), Q({{1, -1}, {-1, 1}})); }) == ErrorCode::SumMismatch);
}

TEST_CASE("row and column exclusion", "[solution]")
{
	// A 3-cycle read as a path type would need two -1 in one row.
	auto n = validate_gcm(IntMatrix{{2, -1, -1}, {-1, 2, 0}, {-1, 0, 2}});
	try
	{
		validate_solution_matrix(n, Q({{1, -1, -1}, {0, 1, 0}, {0, 0, 1}}));
		FAIL("no error");
	}
	catch (const Error &e)
	{
		CHECK(e.code() == ErrorCode::ExclusionViolated);
		CHECK(e.indices().size() == 3);
	}
}

TEST_CASE("scaling action", "[solution]")
{
	auto base = normalized_solution_matrices(G("A2"))[0];
	std::vector<Rational> d{2, 3};
	auto s = scale(base, d);
	CHECK(s.matrix() == Q({{2, -3}, {0, 3}}));
	CHECK(s.normalized() == base.normalized());
	CHECK(s.orientation() == base.orientation());
	std::vector<Rational> ones{1, 1};
	CHECK(scale(base, ones).matrix() == base.matrix());
	std::vector<Rational> zero{1, 0};
	CHECK(code_of([&] { scale(base, zero); }) == ErrorCode::ZeroScale);
}

TEST_CASE("scaling keeps validity and decomposes as normalized times diagonal", "[solution][property]")
{
	testing::Rng rng(808);
	std::vector<IntMatrix> types;
	for (std::size_t r = 1; r <= 5; ++r)
		types.push_back(cartan_matrix_finite_a(r));
	for (std::size_t k = 1; k <= 4; ++k)
		types.push_back(cartan_matrix_affine_a(k));
	for (auto &m : types)
	{
		auto n = validate_gcm(m);
		for (auto &base : normalized_solution_matrices(n))
			for (int trial = 0; trial < 10; ++trial)
			{
				std::vector<Rational> d(n.rank());
				for (auto &x : d)
					x = testing::random_rational(rng);
				auto s = scale(base, d);
				auto checked = validate_solution_matrix(n, s.matrix());
				CHECK(checked.normalized() == base.normalized());
				CHECK(checked.orientation() == base.orientation());
				CHECK(scale(validate_solution_matrix(n, checked.normalized()), checked.diag()).matrix() == s.matrix());
				auto t = transpose_involution(s);
				CHECK_NOTHROW(validate_solution_matrix(n, t.matrix()));
				CHECK(transpose_involution(t).matrix() == s.matrix());
				Incidence flipped;
				for (auto [i, j] : s.incidence())
					flipped.emplace(j, i);
				CHECK(t.incidence() == flipped);
			}
	}
}

TEST_CASE("enumeration uses the input labeling", "[solution][property]")
{
	testing::Rng rng(909);
	for (std::size_t k = 2; k <= 5; ++k)
	{
		IntMatrix base = cartan_matrix_affine_a(k);
		std::vector<std::size_t> perm(base.rows());
		std::iota(perm.begin(), perm.end(), 0);
		for (int trial = 0; trial < 5; ++trial)
		{
			std::shuffle(perm.begin(), perm.end(), rng);
			auto n = validate_gcm(permuted(base, perm));
			auto all = normalized_solution_matrices(n);
			REQUIRE(all.size() == 2);
			for (auto &s : all)
				CHECK_NOTHROW(validate_solution_matrix(n, s.matrix()));
		}
	}
}

TEST_CASE("json layout", "[solution]")
{
	auto sm = validate_solution_matrix(G("A2"), Q({{5, -7}, {0, 7}}));
	auto j = to_json(sm);
	CHECK(j["matrix"] == nlohmann::json::parse(R"([["5","-7"],["0","7"]])"));
	CHECK(j["diag"] == nlohmann::json::parse(R"(["5","7"])"));
	CHECK(j["incidence"] == nlohmann::json::parse("[[2,1]]"));
	CHECK(j["orientation"] == "forward");
	CHECK(rational_matrix_from_json(j["matrix"]) == sm.matrix());
	CHECK(rational_matrix_from_json(nlohmann::json::parse("[[1,\"-1/2\"],[0,3]]")) ==
	      Q({{1, Rational(-1, 2)}, {0, 3}}));
	CHECK_THROWS_AS(rational_matrix_from_json(nlohmann::json::parse("[[1.5]]")), Error);
}
