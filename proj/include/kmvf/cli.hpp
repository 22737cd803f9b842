#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace kmvf {

enum class OutputFormat
{
	Text,
	Json,
	Latex,
};

struct CommandConfig
{
	/// classify, solutions, represent, verify, loop-check or search.
	std::string command;
	// Exactly one matrix source.
	std::optional<std::string> matrix;
	std::optional<std::string> file;
	std::optional<std::string> type;
	/// Index into the normalized solution matrices (0 = forward orientation).
	std::size_t sm = 0;
	/// Explicit solution matrix, JSON array of rows.
	std::optional<std::string> a;
	/// Accept a matrix that fails validation (verify only).
	bool unchecked = false;
	std::optional<std::string> diag;
	std::optional<std::string> n;
	OutputFormat format = OutputFormat::Text;
	std::string m_range = "-3:3";
	/// Representation document to verify instead of building one.
	std::optional<std::string> rep;
	std::optional<std::string> out;
	/// search: grid limit, and an optional exhaustive comparison bound.
	std::uint64_t max_candidates = 200000;
	std::optional<std::size_t> exhaustive_rank;
	std::int64_t min_entry = -3;
};

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int input_error = 1;
inline constexpr int verification_failed = 2;
inline constexpr int internal_error = 3;
} // namespace exit_code

/// Parses argv. On --help or a usage error the returned config is empty and
/// `status` holds the exit code.
std::optional<CommandConfig> parse_command_line(int argc, const char *const *argv, std::ostream &out,
                                                std::ostream &err, int &status);

/// Executes one command; diagnostics go to err, results to out or config.out.
int run(const CommandConfig &config, std::ostream &out, std::ostream &err);

int run_main(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace kmvf
