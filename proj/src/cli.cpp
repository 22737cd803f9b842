#include "kmvf/cli.hpp"

#include "kmvf/loop.hpp"
#include "kmvf/oracle.hpp"
#include "kmvf/representation.hpp"
#include "kmvf/solution.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace kmvf {

std::optional<CommandConfig> parse_command_line(int argc, const char *const *argv, std::ostream &out,
                                                std::ostream &err, int &status)
{
	CLI::App app{"Kac-Moody vector field representations on the torus", "kmvf"};
	app.require_subcommand(1);
	CommandConfig config;
	std::string m_range = config.m_range;

	const std::map<std::string, OutputFormat> formats{
	    {"text", OutputFormat::Text}, {"json", OutputFormat::Json}, {"latex", OutputFormat::Latex}};

	auto add_source = [&](CLI::App *sub) {
		auto *m = sub->add_option("--matrix", config.matrix, "Cartan matrix as JSON rows or whitespace rows");
		auto *f = sub->add_option("--file", config.file, "file holding the Cartan matrix");
		auto *t = sub->add_option("--type", config.type, "built-in matrix: A<r>, A<k>affine, B2, C2, G2, D4, F4");
		m->excludes(f)->excludes(t);
		f->excludes(t);
	};
	auto add_common = [&](CLI::App *sub) {
		sub->add_option("--format", config.format, "text, json or latex")
		    ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
		sub->add_option("--out", config.out, "write the result to this path");
	};
	auto add_family = [&](CLI::App *sub) {
		sub->add_option("--sm", config.sm, "index of the normalized solution matrix (0 = forward)");
		sub->add_option("--a", config.a, "explicit solution matrix, JSON rows of integers or \"p/q\" strings");
		sub->add_option("--diag", config.diag, "diagonal scaling d_1,...,d_r");
		sub->add_option("--n", config.n, "nonzero integers n_1,...,n_r");
	};

	auto *classify_cmd = app.add_subcommand("classify", "identify the type of a Cartan matrix");
	add_source(classify_cmd);
	add_common(classify_cmd);

	auto *solutions_cmd = app.add_subcommand("solutions", "list the normalized solution matrices");
	add_source(solutions_cmd);
	add_common(solutions_cmd);
	solutions_cmd->add_option("--diag", config.diag, "diagonal scaling applied to every matrix");

	auto *represent_cmd = app.add_subcommand("represent", "print the generator images of one family member");
	add_source(represent_cmd);
	add_common(represent_cmd);
	add_family(represent_cmd);

	auto *verify_cmd = app.add_subcommand("verify", "check the defining relations symbolically");
	add_source(verify_cmd);
	add_common(verify_cmd);
	add_family(verify_cmd);
	verify_cmd->add_flag("--unchecked", config.unchecked, "use --a even if it is not a solution matrix");
	verify_cmd->add_option("--rep", config.rep, "representation JSON written by `represent --format json`");

	auto *loop_cmd = app.add_subcommand("loop-check", "certify the loop algebra structure of an affine family");
	add_source(loop_cmd);
	add_common(loop_cmd);
	add_family(loop_cmd);
	loop_cmd->add_option("--m-range", m_range, "loop degrees lo:hi");

	auto *search_cmd = app.add_subcommand("search", "cross-check the enumerator against the brute-force oracle");
	add_source(search_cmd);
	add_common(search_cmd);
	search_cmd->add_option("--max-candidates", config.max_candidates, "largest candidate grid to scan");
	search_cmd->add_option("--exhaustive", config.exhaustive_rank, "compare on every GCM up to this size");
	search_cmd->add_option("--min-entry", config.min_entry, "smallest off-diagonal entry for --exhaustive");

	std::vector<std::string> args;
	for (int i = argc - 1; i > 0; --i)
		args.emplace_back(argv[i]);
	try
	{
		app.parse(args);
	}
	catch (const CLI::ParseError &e)
	{
		const int code = app.exit(e, out, err);
		status = code == 0 ? exit_code::ok : exit_code::input_error;
		return std::nullopt;
	}
	config.command = app.get_subcommands().front()->get_name();
	config.m_range = m_range;
	status = exit_code::ok;
	return config;
}

namespace {

std::string read_file(const std::string &path)
{
	std::ifstream in(path);
	if (!in)
		throw Error(ErrorCode::InvalidArgument, "cannot read " + path);
	std::ostringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

Gcm load_gcm(const CommandConfig &c)
{
	if (c.matrix)
		return validate_gcm(parse_int_matrix(*c.matrix));
	if (c.file)
		return validate_gcm(parse_int_matrix(read_file(*c.file)));
	if (c.type)
		return validate_gcm(named_cartan_matrix(*c.type));
	throw Error(ErrorCode::InvalidArgument, "one of --matrix, --file or --type is required");
}

std::vector<std::int64_t> load_n(const CommandConfig &c, std::size_t r)
{
	if (!c.n)
		return std::vector<std::int64_t>(r, 1);
	return parse_integer_list(*c.n);
}

RationalMatrix parse_explicit(const std::string &text)
{
	return rational_matrix_from_json(nlohmann::json::parse(text));
}

SolutionMatrix select_solution(const CommandConfig &c, const Gcm &n)
{
	if (c.a)
	{
		if (c.diag)
			throw Error(ErrorCode::InvalidArgument, "--diag cannot be combined with --a");
		return validate_solution_matrix(n, parse_explicit(*c.a));
	}
	auto all = normalized_solution_matrices(n);
	if (all.empty())
		throw Error(ErrorCode::UnsupportedType, "this Cartan matrix has no solution matrices");
	if (c.sm >= all.size())
		throw Error(ErrorCode::InvalidArgument, "--sm must be below " + std::to_string(all.size()));
	if (!c.diag)
		return all[c.sm];
	return scale(all[c.sm], parse_rational_list(*c.diag));
}

Representation load_representation(const CommandConfig &c)
{
	if (c.rep)
		return representation_from_json(nlohmann::json::parse(read_file(*c.rep)));
	auto n = load_gcm(c);
	auto cd = build_cartan_data(n);
	auto index = load_n(c, n.rank());
	if (c.unchecked)
	{
		if (!c.a)
			throw Error(ErrorCode::InvalidArgument, "--unchecked needs --a");
		return build_representation_unchecked(cd, parse_explicit(*c.a), index);
	}
	return build_representation(cd, select_solution(c, n), index);
}

std::string kind_label(const CartanType &t)
{
	switch (t.kind)
	{
	case CartanKind::FiniteA: return "FiniteA(" + std::to_string(t.index) + ")";
	case CartanKind::AffineA: return "AffineA(" + std::to_string(t.index) + ")";
	case CartanKind::Other: break;
	}
	return "Other";
}

std::string matrix_text(const RationalMatrix &m)
{
	std::string s;
	for (std::size_t i = 0; i < m.rows(); ++i)
	{
		s += "  [";
		for (std::size_t j = 0; j < m.cols(); ++j)
			s += (j ? ", " : "") + to_string(m(i, j));
		s += "]\n";
	}
	return s;
}

int cmd_classify(const CommandConfig &c, std::ostream &os)
{
	auto n = load_gcm(c);
	auto t = classify(n);
	if (c.format == OutputFormat::Json)
	{
		nlohmann::ordered_json j;
		j["name"] = t.name();
		j["kind"] = kind_label(t);
		j["rank"] = n.rank();
		j["corank"] = n.corank();
		auto order = nlohmann::ordered_json::array();
		for (auto v : t.order)
			order.push_back(v + 1);
		j["order"] = order;
		auto edges = nlohmann::ordered_json::array();
		for (auto &e : t.edges)
			edges.push_back({{"i", e.i + 1}, {"j", e.j + 1}, {"multiplicity", e.multiplicity}});
		j["edges"] = edges;
		os << j.dump(2) << "\n";
		return exit_code::ok;
	}
	os << "type: " << t.name() << "\n";
	os << "kind: " << kind_label(t) << "\n";
	os << "rank: " << n.rank() << "\n";
	os << "corank: " << n.corank() << "\n";
	if (!t.order.empty())
	{
		os << "order:";
		for (auto v : t.order)
			os << " " << v + 1;
		os << "\n";
	}
	if (t.kind == CartanKind::AffineA)
		os << "affine node: 1\n";
	for (auto &e : t.edges)
		os << "edge: " << e.i + 1 << "-" << e.j + 1 << " multiplicity " << e.multiplicity << "\n";
	return exit_code::ok;
}

int cmd_solutions(const CommandConfig &c, std::ostream &os)
{
	auto n = load_gcm(c);
	auto all = normalized_solution_matrices(n);
	if (c.diag)
	{
		auto d = parse_rational_list(*c.diag);
		for (auto &s : all)
			s = scale(s, d);
	}
	if (c.format == OutputFormat::Json)
	{
		nlohmann::ordered_json j;
		j["type"] = classify(n).name();
		j["count"] = all.size();
		auto list = nlohmann::ordered_json::array();
		for (auto &s : all)
			list.push_back(nlohmann::ordered_json(to_json(s)));
		j["solutions"] = list;
		os << j.dump(2) << "\n";
		return exit_code::ok;
	}
	os << "type: " << classify(n).name() << "\n";
	os << "count: " << all.size() << "\n";
	for (std::size_t k = 0; k < all.size(); ++k)
	{
		const auto &s = all[k];
		os << "solution " << k << " (" << to_string(s.orientation()) << ", epsilon " << (s.epsilon() > 0 ? "+1" : "-1")
		   << ")\n"
		   << matrix_text(s.matrix());
		os << "  incidence:";
		for (auto [i, j] : s.incidence())
			os << " (" << i + 1 << "," << j + 1 << ")";
		os << "\n";
	}
	return exit_code::ok;
}

int cmd_represent(const CommandConfig &c, std::ostream &os)
{
	auto rep = load_representation(c);
	switch (c.format)
	{
	case OutputFormat::Text: os << to_text(rep); break;
	case OutputFormat::Json: os << to_json(rep).dump(2) << "\n"; break;
	case OutputFormat::Latex: os << to_latex(rep); break;
	}
	return exit_code::ok;
}

int cmd_verify(const CommandConfig &c, std::ostream &os)
{
	auto rep = load_representation(c);
	auto relations = verify_relations(rep);
	auto kernel = kernel_check(rep);
	const bool passed = relations.all_passed() && kernel.passed();
	if (c.format == OutputFormat::Json)
	{
		nlohmann::ordered_json j;
		j["relations"] = to_json(relations);
		j["kernel"] = to_json(kernel);
		j["passed"] = passed;
		os << j.dump(2) << "\n";
	}
	else
	{
		os << "relations: " << (relations.all_passed() ? "pass" : "FAIL");
		for (char r : std::string("abcde"))
			os << (r == 'a' ? " (" : ", ") << r << ": " << relations.count(r);
		os << ")\n";
		for (auto &f : relations.failures())
			os << "  FAIL (" << f.relation << ") " << f.label << " residual " << to_string(f.residual) << "\n";
		os << "kernel: " << (kernel.passed() ? "pass" : "FAIL") << "\n";
		os << "  F(H1+...+Hr) = " << to_string(kernel.sum_image) << "\n";
		if (!kernel.center_vanishes)
			os << "  centre is not killed\n";
		if (!kernel.primed_independent)
			os << "  primed images are dependent\n";
		if (!kernel.primed_are_scaled_basis)
			os << "  primed images differ from D_j/n_j\n";
	}
	return passed ? exit_code::ok : exit_code::verification_failed;
}

int cmd_loop_check(const CommandConfig &c, std::ostream &os)
{
	auto rep = load_representation(c);
	auto range = parse_m_range(c.m_range);
	auto cert = verify_loop_law(rep, range);
	auto restriction = finite_restriction_check(rep);
	const bool passed = cert.passed() && restriction.passed();
	if (c.format == OutputFormat::Json)
	{
		nlohmann::ordered_json j;
		j["certificate"] = to_json(cert);
		j["restriction"] = {{"passed", restriction.passed()}, {"mismatches", restriction.mismatches}};
		j["passed"] = passed;
		os << j.dump(2) << "\n";
	}
	else
	{
		os << "affine node: 1 (coordinate z1; labeled 0 in the LaTeX output)\n";
		os << "T = " << to_string(cert.T) << "\n";
		os << "X_phi = " << to_string(cert.phi.plus) << "\n";
		os << "X_-phi = " << to_string(cert.phi.minus) << "\n";
		for (auto &chk : cert.checks)
			os << (chk.passed ? "PASS " : "FAIL ") << chk.label << "\n";
		os << (restriction.passed() ? "PASS " : "FAIL ") << "finite nodes restrict to the finite family\n";
		for (auto &m : restriction.mismatches)
			os << "  " << m << "\n";
	}
	return passed ? exit_code::ok : exit_code::verification_failed;
}

int cmd_search(const CommandConfig &c, std::ostream &os)
{
	if (c.exhaustive_rank)
	{
		auto report = compare_enumerators(*c.exhaustive_rank, c.min_entry);
		if (c.format == OutputFormat::Json)
		{
			nlohmann::ordered_json j;
			j["max_rank"] = *c.exhaustive_rank;
			j["min_entry"] = c.min_entry;
			j["gcms_checked"] = report.gcms_checked;
			j["with_solutions"] = report.with_solutions;
			auto mismatches = nlohmann::ordered_json::array();
			for (auto &m : report.mismatches)
				mismatches.push_back(m.to_rows());
			j["mismatches"] = mismatches;
			os << j.dump(2) << "\n";
		}
		else
		{
			os << "indecomposable GCMs checked: " << report.gcms_checked << "\n";
			os << "with solution matrices: " << report.with_solutions << "\n";
			os << "mismatches: " << report.mismatches.size() << "\n";
		}
		return report.passed() ? exit_code::ok : exit_code::verification_failed;
	}

	SearchOptions options;
	options.max_candidates = c.max_candidates;
	auto j = discrepancy_report(load_gcm(c), options);
	const bool clean = j["discrepancies"].empty();
	if (c.format == OutputFormat::Json)
		os << j.dump(2) << "\n";
	else
	{
		os << "type: " << j["type"].get<std::string>() << "\n";
		os << "brute force: " << j["brute_force_count"] << ", structured: " << j["structured_count"] << "\n";
		os << "candidates: " << j["candidates"] << ", relation (b) holds: " << j["probe_positive"]
		   << ", valid solution matrix: " << j["structured_positive"] << "\n";
		os << "discrepancies: " << j["discrepancies"].size() << "\n";
	}
	return clean ? exit_code::ok : exit_code::verification_failed;
}

} // namespace

int run(const CommandConfig &config, std::ostream &out, std::ostream &err)
{
	std::ostringstream buffer;
	int status = exit_code::ok;
	try
	{
		if (config.command == "classify")
			status = cmd_classify(config, buffer);
		else if (config.command == "solutions")
			status = cmd_solutions(config, buffer);
		else if (config.command == "represent")
			status = cmd_represent(config, buffer);
		else if (config.command == "verify")
			status = cmd_verify(config, buffer);
		else if (config.command == "loop-check")
			status = cmd_loop_check(config, buffer);
		else if (config.command == "search")
			status = cmd_search(config, buffer);
		else
			throw Error(ErrorCode::InvalidArgument, "unknown command " + config.command);
	}
	catch (const Error &e)
	{
		err << "error: " << e.what() << "\n";
		return is_internal(e.code()) ? exit_code::internal_error : exit_code::input_error;
	}
	catch (const nlohmann::json::exception &e)
	{
		err << "error: ParseError: " << e.what() << "\n";
		return exit_code::input_error;
	}
	catch (const std::exception &e)
	{
		err << "error: " << e.what() << "\n";
		return exit_code::internal_error;
	}

	if (config.out)
	{
		std::ofstream file(*config.out);
		if (!file)
		{
			err << "error: InvalidArgument: cannot write " << *config.out << "\n";
			return exit_code::input_error;
		}
		file << buffer.str();
	}
	else
		out << buffer.str();
	return status;
}

int run_main(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
	int status = exit_code::ok;
	auto config = parse_command_line(argc, argv, out, err, status);
	if (!config)
		return status;
	return run(*config, out, err);
}

} // namespace kmvf
