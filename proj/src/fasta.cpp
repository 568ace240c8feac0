#include "dnaimg/fasta.hpp"

#include <fstream>
#include <iterator>
#include <sstream>

#include "dnaimg/error.hpp"

namespace dnaimg {

std::string format_fasta(const Pool& pool) {
  std::string out;
  for (const auto& r : pool) {
    out += '>';
    out += r.id;
    out += '\n';
    out += r.sequence;
    out += '\n';
  }
  return out;
}

namespace {

template <class F>
void for_each_line(std::string_view text, F&& f) {
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    f(line);
    start = end + 1;
  }
}

}  // namespace

Pool parse_fasta(std::string_view text) {
  Pool pool;
  for_each_line(text, [&](std::string_view line) {
    if (line.empty()) return;
    if (line.front() == '>') {
      pool.push_back({std::string(line.substr(1)), {}});
    } else {
      if (pool.empty()) throw DataError("FASTA sequence data before the first header");
      pool.back().sequence += line;
    }
  });
  return pool;
}

std::string format_sequence_lines(const Pool& pool) {
  std::string out;
  for (const auto& r : pool) {
    out += r.sequence;
    out += '\n';
  }
  return out;
}

Pool parse_sequence_lines(std::string_view text) {
  Pool pool;
  for_each_line(text, [&](std::string_view line) {
    if (line.empty()) return;
    pool.push_back({"seq" + std::to_string(pool.size()), std::string(line)});
  });
  return pool;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open file: " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write file: " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

Pool read_fasta(const std::filesystem::path& path) { return parse_fasta(read_text_file(path)); }
void write_fasta(const std::filesystem::path& path, const Pool& pool) { write_text_file(path, format_fasta(pool)); }
void write_sequence_lines(const std::filesystem::path& path, const Pool& pool) {
  write_text_file(path, format_sequence_lines(pool));
}

}  // namespace dnaimg
