#include "dnaimg/huffman.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>

namespace dnaimg {

std::map<Symbol, std::uint64_t> symbol_frequencies(std::span<const DiffStream> streams) {
  std::map<Symbol, std::uint64_t> freq;
  for (const auto& s : streams)
    for (Symbol v : s.symbols) ++freq[v];
  return freq;
}

HuffmanTable HuffmanTable::build(std::span<const DiffStream> streams) { return build(symbol_frequencies(streams)); }

HuffmanTable HuffmanTable::build(const std::map<Symbol, std::uint64_t>& frequencies) {
  if (frequencies.empty()) throw DataError("cannot build a Huffman code over an empty alphabet");
  std::vector<Entry> entries;
  if (frequencies.size() == 1) {
    entries.push_back({frequencies.begin()->first, 1});
    return from_lengths(std::move(entries));
  }

  // Leaves 0..n-1 in symbol order, internal nodes appended. Ties in weight
  // are broken by node id, which keeps the construction deterministic.
  struct Node {
    std::uint64_t weight;
    std::int64_t parent = -1;
  };
  std::vector<Node> nodes;
  nodes.reserve(frequencies.size() * 2);
  std::vector<Symbol> symbols;
  for (const auto& [sym, f] : frequencies) {
    nodes.push_back({f == 0 ? 1 : f});
    symbols.push_back(sym);
  }
  using Item = std::pair<std::uint64_t, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  for (std::size_t i = 0; i < nodes.size(); ++i) heap.push({nodes[i].weight, i});
  while (heap.size() > 1) {
    const auto a = heap.top();
    heap.pop();
    const auto b = heap.top();
    heap.pop();
    const std::size_t id = nodes.size();
    nodes.push_back({a.first + b.first});
    nodes[a.second].parent = static_cast<std::int64_t>(id);
    nodes[b.second].parent = static_cast<std::int64_t>(id);
    heap.push({a.first + b.first, id});
  }
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    unsigned depth = 0;
    for (std::int64_t p = nodes[i].parent; p >= 0; p = nodes[static_cast<std::size_t>(p)].parent) ++depth;
    entries.push_back({symbols[i], depth});
  }
  return from_lengths(std::move(entries));
}

HuffmanTable HuffmanTable::from_lengths(std::vector<Entry> entries) {
  if (entries.empty()) throw DataError("Huffman table has no entries");
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return a.length != b.length ? a.length < b.length : a.symbol < b.symbol;
  });
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].length == 0 || entries[i].length > 63) throw DataError("invalid Huffman code length");
    if (i > 0 && entries[i].symbol == entries[i - 1].symbol && entries[i].length == entries[i - 1].length)
      throw DataError("duplicate symbol in Huffman table");
  }
  HuffmanTable t;
  t.entries_ = std::move(entries);
  if (t.kraft_sum() > 1.0 + 1e-12) throw DataError("Huffman lengths violate the Kraft inequality");
  t.assign_codes();
  if (t.codes_.size() != t.entries_.size()) throw DataError("duplicate symbol in Huffman table");
  return t;
}

void HuffmanTable::assign_codes() {
  max_length_ = entries_.back().length;
  first_code_.assign(max_length_ + 2, 0);
  first_index_.assign(max_length_ + 2, 0);
  count_.assign(max_length_ + 2, 0);
  for (const auto& e : entries_) ++count_[e.length];

  std::uint64_t code = 0;
  std::uint32_t index = 0;
  for (unsigned len = 1; len <= max_length_; ++len) {
    first_code_[len] = code;
    first_index_[len] = index;
    code = (code + count_[len]) << 1;
    index += count_[len];
  }
  codes_.clear();
  std::vector<std::uint64_t> next(first_code_);
  for (const auto& e : entries_) codes_[e.symbol] = {next[e.length]++, e.length};
}

std::pair<std::uint64_t, unsigned> HuffmanTable::code(Symbol s) const {
  auto it = codes_.find(s);
  if (it == codes_.end()) throw DataError("symbol not in Huffman table: " + std::to_string(s));
  return it->second;
}

double HuffmanTable::kraft_sum() const {
  double s = 0.0;
  for (const auto& e : entries_) s += std::ldexp(1.0, -static_cast<int>(e.length));
  return s;
}

std::optional<Symbol> HuffmanTable::decode_one(const BitBuffer& bits, std::size_t& pos, std::size_t end) const {
  std::uint64_t code = 0;
  std::size_t p = pos;
  for (unsigned len = 1; len <= max_length_; ++len) {
    if (p >= end) return std::nullopt;
    code = (code << 1) | static_cast<std::uint64_t>(bits.bit(p++));
    if (count_[len] != 0 && code >= first_code_[len] && code - first_code_[len] < count_[len]) {
      pos = p;
      return entries_[first_index_[len] + (code - first_code_[len])].symbol;
    }
  }
  return std::nullopt;
}

double mean_code_length(const HuffmanTable& table, const std::map<Symbol, std::uint64_t>& frequencies) {
  double total = 0.0, bits = 0.0;
  for (const auto& [sym, f] : frequencies) {
    total += static_cast<double>(f);
    bits += static_cast<double>(f) * table.code(sym).second;
  }
  return total > 0 ? bits / total : 0.0;
}

double empirical_entropy(const std::map<Symbol, std::uint64_t>& frequencies) {
  double total = 0.0;
  for (const auto& kv : frequencies) total += static_cast<double>(kv.second);
  double h = 0.0;
  for (const auto& kv : frequencies) {
    if (kv.second == 0) continue;
    const double p = static_cast<double>(kv.second) / total;
    h -= p * std::log2(p);
  }
  return h;
}

BitBuffer huffman_encode(const DiffStream& stream, const HuffmanTable& table) {
  BitBuffer out;
  for (Symbol s : stream.symbols) {
    const auto [code, len] = table.code(s);
    out.push_bits(code, len);
  }
  return out;
}

HuffmanDecodeResult huffman_decode(const BitBuffer& bits, const HuffmanTable& table, Color color,
                                   std::uint8_t level) {
  HuffmanDecodeResult r;
  r.stream.color = color;
  r.stream.level = level;
  std::size_t pos = 0;
  while (auto s = table.decode_one(bits, pos, bits.size())) {
    r.stream.symbols.push_back(*s);
    if (*s == kTerminator) {
      r.terminated = true;
      break;
    }
  }
  r.bits_consumed = pos;
  return r;
}

}  // namespace dnaimg
