#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace dnaimg {

struct PoolRecord {
  std::string id;
  std::string sequence;
  friend bool operator==(const PoolRecord&, const PoolRecord&) = default;
};

using Pool = std::vector<PoolRecord>;

/// One `>id` line and one unwrapped sequence line per record.
std::string format_fasta(const Pool& pool);
/// Accepts wrapped sequences and blank lines. Throws DataError on
/// sequence data before the first header.
Pool parse_fasta(std::string_view text);

/// One sequence per line, no identifiers.
std::string format_sequence_lines(const Pool& pool);
/// Records get positional ids "seq<k>".
Pool parse_sequence_lines(std::string_view text);

Pool read_fasta(const std::filesystem::path& path);
void write_fasta(const std::filesystem::path& path, const Pool& pool);
void write_sequence_lines(const std::filesystem::path& path, const Pool& pool);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace dnaimg
