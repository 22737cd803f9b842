#include "kmvf/representation.hpp"

#include <functional>
#include <map>
#include <sstream>

namespace kmvf {

CartanData::CartanData(Gcm gcm, CartanType type, RationalMatrix alpha, std::vector<std::vector<Rational>> primed)
    : gcm_(std::move(gcm)), type_(std::move(type)), alpha_(std::move(alpha)), primed_(std::move(primed))
{
}

std::optional<std::size_t> CartanData::affine_node() const
{
	if (is_affine())
		return type_.order.empty() ? 0 : type_.order.front();
	return std::nullopt;
}

std::vector<std::vector<Rational>> CartanData::center_basis() const
{
	return nullspace(alpha_.transposed());
}

std::string CartanData::h_name(std::size_t a) const
{
	if (a < rank())
		return "H" + std::to_string(a + 1);
	return a == rank() ? "d" : "d" + std::to_string(a - rank() + 1);
}

CartanData build_cartan_data(const Gcm &n)
{
	if (!is_indecomposable(n))
		throw Error(ErrorCode::Decomposable, "Cartan matrix is decomposable");
	auto type = classify(n);
	if (type.kind == CartanKind::Other)
		throw Error(ErrorCode::UnsupportedType, "only A_r and affine A_r are supported");

	const std::size_t r = n.rank();
	const std::size_t s = n.corank();
	RationalMatrix alpha(r + s, r, Rational(0));
	for (std::size_t a = 0; a < r; ++a)
		for (std::size_t j = 0; j < r; ++j)
			alpha(a, j) = n(a, j);
	if (s == 1)
		alpha(r, type.order.empty() ? 0 : type.order.front()) = 1;
	else if (s > 1)
		throw Error(ErrorCode::UnsupportedType, "corank above one");

	auto at = alpha.transposed();
	std::vector<std::vector<Rational>> primed;
	for (std::size_t j = 0; j < r; ++j)
	{
		std::vector<Rational> e(r, Rational(0));
		e[j] = 1;
		auto c = solve(at, e);
		if (!c)
			throw Error(ErrorCode::RankMismatch, "simple roots are not independent on the Cartan generators", {j});
		primed.push_back(std::move(*c));
	}
	return CartanData(n, std::move(type), std::move(alpha), std::move(primed));
}

Derivation scaled_constant_field(std::span<const Rational> c, std::span<const std::int64_t> n)
{
	if (c.size() != n.size())
		throw Error(ErrorCode::DimensionMismatch, "coefficient and index vectors differ in length");
	std::vector<Rational> s(c.size());
	for (std::size_t j = 0; j < c.size(); ++j)
	{
		if (n[j] == 0)
			throw Error(ErrorCode::ZeroIndex, "n_j must be nonzero", {j});
		s[j] = c[j] / Rational(static_cast<long>(n[j]));
	}
	return Derivation::constant(s);
}

namespace {

void check_indices(std::size_t r, std::span<const std::int64_t> n)
{
	if (n.size() != r)
		throw Error(ErrorCode::DimensionMismatch, "n must have " + std::to_string(r) + " entries");
	for (std::size_t i = 0; i < r; ++i)
		if (n[i] == 0)
			throw Error(ErrorCode::ZeroIndex, "n_i must be nonzero", {i});
}

Deltas raw_deltas(const RationalMatrix &a, std::span<const std::int64_t> n)
{
	const std::size_t r = a.rows();
	Deltas d;
	for (std::size_t i = 0; i < r; ++i)
	{
		if (a(i, i) == 0)
			throw Error(ErrorCode::ZeroDiagonal, "", {i});
		std::vector<Rational> plus(r), minus(r);
		for (std::size_t j = 0; j < r; ++j)
		{
			plus[j] = a(j, i);
			minus[j] = -a(i, j) / (a(i, i) * a(j, j));
		}
		d.plus.push_back(scaled_constant_field(plus, n));
		d.minus.push_back(scaled_constant_field(minus, n));
	}
	return d;
}

LaurentPoly z_power(std::size_t rank, std::size_t i, std::int64_t e)
{
	Monomial m{std::vector<std::int64_t>(rank, 0)};
	m.exps[i] = e;
	return LaurentPoly::monomial(std::move(m));
}

Representation assemble(const CartanData &cd, const RationalMatrix &a, std::span<const std::int64_t> n,
                        std::vector<Derivation> h_images, Deltas deltas)
{
	const std::size_t r = cd.rank();
	Representation rep{cd, a, std::vector<std::int64_t>(n.begin(), n.end()), std::move(h_images), {}, {}, {}};
	for (std::size_t i = 0; i < r; ++i)
	{
		rep.x_plus.push_back(z_power(r, i, n[i]) * deltas.plus[i]);
		rep.x_minus.push_back(z_power(r, i, -n[i]) * deltas.minus[i]);
	}
	rep.deltas = std::move(deltas);
	return rep;
}

} // namespace

Deltas build_deltas(const CartanData &cd, const SolutionMatrix &a)
{
	if (a.rank() != cd.rank())
		throw Error(ErrorCode::DimensionMismatch, "solution matrix size differs from the Cartan matrix");
	std::vector<std::int64_t> ones(cd.rank(), 1);
	return raw_deltas(a.matrix(), ones);
}

Representation build_representation_unchecked(const CartanData &cd, const RationalMatrix &a,
                                              std::span<const std::int64_t> n)
{
	const std::size_t r = cd.rank();
	if (a.rows() != r || a.cols() != r)
		throw Error(ErrorCode::DimensionMismatch, "matrix size differs from the Cartan matrix");
	check_indices(r, n);

	std::vector<Derivation> h;
	for (std::size_t b = 0; b < cd.num_cartan_generators(); ++b)
		h.push_back(scaled_constant_field(cd.alpha().row(b), n));
	return assemble(cd, a, n, std::move(h), raw_deltas(a, n));
}

Representation build_representation(const CartanData &cd, const SolutionMatrix &a, std::span<const std::int64_t> n)
{
	if (a.rank() != cd.rank())
		throw Error(ErrorCode::DimensionMismatch, "solution matrix size differs from the Cartan matrix");
	return build_representation_unchecked(cd, a.matrix(), n);
}

Representation build_representation_via_primed_basis(const CartanData &cd, const SolutionMatrix &a,
                                                     std::span<const std::int64_t> n)
{
	const std::size_t r = cd.rank();
	const std::size_t g = cd.num_cartan_generators();
	if (a.rank() != r)
		throw Error(ErrorCode::DimensionMismatch, "solution matrix size differs from the Cartan matrix");
	check_indices(r, n);
	const auto &alpha = cd.alpha();
	const auto &A = a.matrix();

	// Unscaled F(H_b) = sum_k alpha_k(H_b) D_k, then F(H'_i) by linearity and
	// the rescaled F_n(H'_i) = F(H'_i) / n_i.
	std::vector<Derivation> f;
	for (std::size_t b = 0; b < g; ++b)
		f.push_back(Derivation::constant(alpha.row(b)));
	std::vector<Derivation> fn_primed;
	for (std::size_t i = 0; i < r; ++i)
	{
		Derivation d(r);
		for (std::size_t b = 0; b < g; ++b)
			d += cd.primed()[i][b] * f[b];
		d *= Rational(1) / Rational(static_cast<long>(n[i]));
		fn_primed.push_back(std::move(d));
	}

	// H_a differs from sum_i alpha_i(H_a) H'_i by a central element.
	std::vector<Derivation> h;
	for (std::size_t b = 0; b < g; ++b)
	{
		Derivation d(r);
		for (std::size_t i = 0; i < r; ++i)
			d += alpha(b, i) * fn_primed[i];
		h.push_back(std::move(d));
	}

	Deltas deltas;
	for (std::size_t i = 0; i < r; ++i)
	{
		if (A(i, i) == 0)
			throw Error(ErrorCode::ZeroDiagonal, "", {i});
		Derivation plus(r);
		for (std::size_t k = 0; k < r; ++k)
			plus += A(k, i) * fn_primed[k];
		const Rational inv = Rational(1) / A(i, i);
		Derivation minus = inv * (-h[i] + inv * plus);
		deltas.plus.push_back(std::move(plus));
		deltas.minus.push_back(std::move(minus));
	}
	return assemble(cd, A, n, std::move(h), std::move(deltas));
}

bool RelationReport::all_passed() const
{
	for (auto &c : checks)
		if (!c.passed())
			return false;
	return true;
}

std::size_t RelationReport::count(char relation) const
{
	std::size_t k = 0;
	for (auto &c : checks)
		k += c.relation == relation;
	return k;
}

std::vector<RelationCheck> RelationReport::failures() const
{
	std::vector<RelationCheck> out;
	for (auto &c : checks)
		if (!c.passed())
			out.push_back(c);
	return out;
}

RelationReport verify_relations(const Representation &rep)
{
	const auto &cd = rep.cartan;
	const std::size_t r = cd.rank();
	const std::size_t g = cd.num_cartan_generators();
	const auto x = [](const char *sign, std::size_t i) { return std::string("X") + sign + std::to_string(i + 1); };
	RelationReport report;

	for (std::size_t a = 0; a < g; ++a)
		for (std::size_t b = a + 1; b < g; ++b)
			report.checks.push_back({'a', {a, b}, "[" + cd.h_name(a) + "," + cd.h_name(b) + "]",
			                         bracket(rep.h_images[a], rep.h_images[b])});

	for (std::size_t i = 0; i < r; ++i)
		for (std::size_t j = 0; j < r; ++j)
		{
			auto residual = bracket(rep.x_plus[i], rep.x_minus[j]);
			if (i == j)
				residual -= rep.h_images[i];
			report.checks.push_back({'b', {i, j}, "[" + x("", i) + "," + x("-", j) + "]", std::move(residual)});
		}

	for (std::size_t a = 0; a < g; ++a)
		for (std::size_t j = 0; j < r; ++j)
		{
			const Rational &w = cd.alpha()(a, j);
			report.checks.push_back({'c', {a, j}, "[" + cd.h_name(a) + "," + x("", j) + "]",
			                         bracket(rep.h_images[a], rep.x_plus[j]) - w * rep.x_plus[j]});
			report.checks.push_back({'c', {a, j}, "[" + cd.h_name(a) + "," + x("-", j) + "]",
			                         bracket(rep.h_images[a], rep.x_minus[j]) + w * rep.x_minus[j]});
		}

	for (std::size_t i = 0; i < r; ++i)
		for (std::size_t j = 0; j < r; ++j)
		{
			if (i == j)
				continue;
			const auto k = static_cast<unsigned>(1 - cd.gcm()(i, j));
			const std::string power = "^" + std::to_string(k);
			report.checks.push_back({'d', {i, j}, "ad(" + x("", i) + ")" + power + "(" + x("", j) + ")",
			                         ad_pow(rep.x_plus[i], k, rep.x_plus[j])});
			report.checks.push_back({'e', {i, j}, "ad(" + x("-", i) + ")" + power + "(" + x("-", j) + ")",
			                         ad_pow(rep.x_minus[i], k, rep.x_minus[j])});
		}
	return report;
}

KernelReport kernel_check(const Representation &rep)
{
	const auto &cd = rep.cartan;
	const std::size_t r = cd.rank();
	const std::size_t g = cd.num_cartan_generators();
	auto image = [&](std::span<const Rational> c) {
		Derivation d(r);
		for (std::size_t b = 0; b < g; ++b)
			d += c[b] * rep.h_images[b];
		return d;
	};

	KernelReport k;
	k.affine = cd.is_affine();
	k.center_vanishes = true;
	for (auto &z : cd.center_basis())
	{
		k.center_images.push_back(image(z));
		k.center_vanishes = k.center_vanishes && k.center_images.back().is_zero();
	}
	std::vector<Rational> sum(g, Rational(0));
	for (std::size_t i = 0; i < r; ++i)
		sum[i] = 1;
	k.sum_image = image(sum);

	DerivationSpan span(r);
	k.primed_independent = true;
	k.primed_are_scaled_basis = true;
	for (std::size_t j = 0; j < r; ++j)
	{
		k.primed_images.push_back(image(cd.primed()[j]));
		k.primed_independent = span.insert(k.primed_images.back()) && k.primed_independent;
		auto expected = Derivation::basis(r, j);
		expected *= Rational(1) / Rational(static_cast<long>(rep.n.at(j)));
		k.primed_are_scaled_basis = k.primed_are_scaled_basis && k.primed_images.back() == expected;
	}
	return k;
}

std::vector<std::string> generator_names(const Representation &rep)
{
	std::vector<std::string> names;
	for (std::size_t a = 0; a < rep.cartan.num_cartan_generators(); ++a)
		names.push_back(rep.cartan.h_name(a));
	for (std::size_t i = 0; i < rep.rank(); ++i)
		names.push_back("X" + std::to_string(i + 1));
	for (std::size_t i = 0; i < rep.rank(); ++i)
		names.push_back("X-" + std::to_string(i + 1));
	return names;
}

const Derivation &generator_image(const Representation &rep, std::size_t index)
{
	const std::size_t g = rep.cartan.num_cartan_generators();
	const std::size_t r = rep.rank();
	if (index < g)
		return rep.h_images.at(index);
	if (index < g + r)
		return rep.x_plus.at(index - g);
	return rep.x_minus.at(index - g - r);
}

namespace {

std::string latex_rational(const Rational &q)
{
	Rational a = abs(q);
	std::string body = a.get_den() == 1 ? a.get_num().get_str() : "\\frac{" + a.get_num().get_str() + "}{" + a.get_den().get_str() + "}";
	return (q < 0 ? "-" : "") + body;
}

/// Coefficient in front of a symbol: 1 and -1 collapse to "" and "-".
std::string latex_coefficient(const Rational &q)
{
	if (q == 1)
		return "";
	if (q == -1)
		return "-";
	return latex_rational(q);
}

std::string latex_index(std::int64_t k)
{
	auto s = std::to_string(k);
	return s.size() == 1 ? s : "{" + s + "}";
}

std::string latex_monomial(const Monomial &m, std::span<const std::int64_t> n, std::size_t base)
{
	std::string out;
	for (std::size_t j = 0; j < m.rank(); ++j)
	{
		const std::int64_t e = m.exps[j];
		if (e == 0)
			continue;
		const std::string idx = latex_index(static_cast<std::int64_t>(j + base));
		std::string exponent;
		if (n[j] != 0 && e % n[j] == 0)
		{
			const std::int64_t k = e / n[j];
			exponent = (k == 1 ? "" : k == -1 ? "-" : std::to_string(k)) + "n_" + idx;
		}
		else
			exponent = std::to_string(e);
		out += "z_" + idx + "^{" + exponent + "}";
	}
	return out;
}

} // namespace

std::string to_latex(const Derivation &d, std::span<const std::int64_t> n, std::size_t index_base)
{
	const std::size_t r = d.rank();
	if (n.size() != r)
		throw Error(ErrorCode::DimensionMismatch, "n must match the rank of the field");
	std::map<Monomial, std::vector<Rational>, std::greater<>> groups;
	for (std::size_t j = 0; j < r; ++j)
		for (auto &[m, c] : d.coord(j).terms())
		{
			auto &g = groups.try_emplace(m, std::vector<Rational>(r, Rational(0))).first->second;
			g[j] = c * Rational(static_cast<long>(n[j]));
		}
	if (groups.empty())
		return "0";

	std::string out;
	for (auto &[m, coeffs] : groups)
	{
		std::string inner;
		for (std::size_t j = 0; j < r; ++j)
		{
			if (coeffs[j] == 0)
				continue;
			std::string c = latex_coefficient(coeffs[j]);
			if (!inner.empty() && c.empty())
				c = "+";
			else if (!inner.empty() && c[0] != '-')
				c = "+" + c;
			const std::string idx = latex_index(static_cast<std::int64_t>(j + index_base));
			inner += c + "\\frac{D_" + idx + "}{n_" + idx + "}";
		}
		std::string term;
		if (m.is_one() && groups.size() == 1)
			term = inner;
		else if (m.is_one())
			term = "\\left(" + inner + "\\right)";
		else
			term = latex_monomial(m, n, index_base) + "\\left(" + inner + "\\right)";
		if (!out.empty())
			out += term[0] == '-' ? "" : "+";
		out += term;
	}
	return out;
}

std::string to_text(const Representation &rep)
{
	std::ostringstream os;
	os << "type: " << rep.cartan.type().name() << "\n";
	os << "n:";
	for (auto v : rep.n)
		os << " " << v;
	os << "\n";
	auto names = generator_names(rep);
	for (std::size_t k = 0; k < names.size(); ++k)
		os << names[k] << " -> " << to_string(generator_image(rep, k)) << "\n";
	return os.str();
}

std::string to_latex(const Representation &rep)
{
	const auto &cd = rep.cartan;
	const std::size_t base = cd.is_affine() ? 0 : 1;
	const std::size_t r = rep.rank();
	auto label = [&](std::size_t i) { return std::to_string(i + base); };
	auto sub = [&](std::size_t i) { return latex_index(static_cast<std::int64_t>(i + base)); };

	std::ostringstream os;
	os << "\\begin{aligned}\n";
	auto line = [&](const std::string &name, const Derivation &d) {
		os << "  " << name << " &\\mapsto " << to_latex(d, rep.n, base) << " \\\\\n";
	};
	for (std::size_t a = 0; a < cd.num_cartan_generators(); ++a)
		line(a < r ? "H_" + sub(a) : std::string("d"), rep.h_images[a]);
	for (std::size_t i = 0; i < r; ++i)
		line("X_" + sub(i), rep.x_plus[i]);
	for (std::size_t i = 0; i < r; ++i)
		line("X_{-" + label(i) + "}", rep.x_minus[i]);
	os << "\\end{aligned}\n";
	return os.str();
}

nlohmann::ordered_json to_json(const Representation &rep)
{
	nlohmann::ordered_json j;
	j["type"] = rep.cartan.type().name();
	j["rank"] = rep.rank();
	j["cartan_matrix"] = rep.cartan.gcm().matrix().to_rows();
	j["alpha"] = to_json(rep.cartan.alpha());
	j["solution_matrix"] = to_json(rep.a);
	j["n"] = rep.n;
	auto gens = nlohmann::ordered_json::array();
	auto names = generator_names(rep);
	for (std::size_t k = 0; k < names.size(); ++k)
	{
		nlohmann::ordered_json g;
		g["name"] = names[k];
		g["coords"] = to_json(generator_image(rep, k));
		gens.push_back(std::move(g));
	}
	j["generators"] = std::move(gens);
	return j;
}

Representation representation_from_json(const nlohmann::json &j)
{
	try
	{
		auto rows = j.at("cartan_matrix").get<std::vector<std::vector<std::int64_t>>>();
		auto cd = build_cartan_data(validate_gcm(IntMatrix::from_rows(rows)));
		const std::size_t r = cd.rank();
		if (j.contains("alpha") && rational_matrix_from_json(j.at("alpha")) != cd.alpha())
			throw Error(ErrorCode::DimensionMismatch, "stored alpha table does not match the Cartan matrix");
		auto a = rational_matrix_from_json(j.at("solution_matrix"));
		auto n = j.at("n").get<std::vector<std::int64_t>>();
		if (a.rows() != r || a.cols() != r)
			throw Error(ErrorCode::DimensionMismatch, "solution matrix size differs from the Cartan matrix");
		check_indices(r, n);

		std::map<std::string, Derivation> images;
		for (auto &g : j.at("generators"))
			images.insert_or_assign(g.at("name").get<std::string>(), derivation_from_json(g.at("coords"), r));

		std::vector<Derivation> h;
		Deltas deltas = raw_deltas(a, n);
		Representation rep{cd, a, n, {}, {}, {}, std::move(deltas)};
		auto take = [&](const std::string &name) {
			auto it = images.find(name);
			if (it == images.end())
				throw Error(ErrorCode::ParseError, "missing generator " + name);
			return it->second;
		};
		for (std::size_t b = 0; b < cd.num_cartan_generators(); ++b)
			rep.h_images.push_back(take(cd.h_name(b)));
		for (std::size_t i = 0; i < r; ++i)
			rep.x_plus.push_back(take("X" + std::to_string(i + 1)));
		for (std::size_t i = 0; i < r; ++i)
			rep.x_minus.push_back(take("X-" + std::to_string(i + 1)));
		return rep;
	}
	catch (const nlohmann::json::exception &e)
	{
		throw Error(ErrorCode::ParseError, std::string("malformed representation document: ") + e.what());
	}
}

nlohmann::ordered_json to_json(const RelationReport &report)
{
	nlohmann::ordered_json j;
	j["all_passed"] = report.all_passed();
	auto counts = nlohmann::ordered_json::object();
	for (char c : std::string("abcde"))
		counts[std::string(1, c)] = report.count(c);
	j["counts"] = counts;
	auto failures = nlohmann::ordered_json::array();
	for (auto &f : report.failures())
	{
		nlohmann::ordered_json e;
		e["relation"] = std::string(1, f.relation);
		e["check"] = f.label;
		e["residual"] = to_string(f.residual);
		failures.push_back(std::move(e));
	}
	j["failures"] = std::move(failures);
	return j;
}

nlohmann::ordered_json to_json(const KernelReport &report)
{
	nlohmann::ordered_json j;
	j["affine"] = report.affine;
	j["center_vanishes"] = report.center_vanishes;
	j["sum_image"] = to_string(report.sum_image);
	auto primed = nlohmann::ordered_json::array();
	for (auto &d : report.primed_images)
		primed.push_back(to_string(d));
	j["primed_images"] = std::move(primed);
	j["primed_independent"] = report.primed_independent;
	j["primed_are_scaled_basis"] = report.primed_are_scaled_basis;
	j["passed"] = report.passed();
	return j;
}

} // namespace kmvf
