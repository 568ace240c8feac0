#include "dnaimg/dna_layer.hpp"

#include <algorithm>
#include <cstdlib>
#include <random>
#include <string>

namespace dnaimg {

std::size_t hamming_distance(std::string_view a, std::string_view b) noexcept {
  std::size_t d = a.size() > b.size() ? a.size() - b.size() : b.size() - a.size();
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) d += a[i] != b[i];
  return d;
}

std::size_t gc_count(std::string_view s) noexcept {
  return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [](char c) { return c == 'G' || c == 'C'; }));
}

std::size_t longest_run(std::string_view s, char n) noexcept {
  std::size_t best = 0, cur = 0;
  for (char c : s) {
    cur = c == n ? cur + 1 : 0;
    best = std::max(best, cur);
  }
  return best;
}

namespace {

int nt_index(char c) noexcept {
  switch (c) {
    case 'A': return 0;
    case 'C': return 1;
    case 'G': return 2;
    case 'T': return 3;
    default: return -1;
  }
}

bool is_dna(std::string_view s) noexcept {
  return std::all_of(s.begin(), s.end(), [](char c) { return nt_index(c) >= 0; });
}

}  // namespace

// ---------------------------------------------------------------------------
// ConstrainedCodebook

int ConstrainedCodebook::next_state(int state, char n) noexcept {
  switch (n) {
    case 'C':
      if (state >= 1 && state <= 3) return state == 3 ? -1 : state + 1;
      return 1;
    case 'G':
      if (state >= 4 && state <= 6) return state == 6 ? -1 : state + 1;
      return 4;
    default:
      return 0;
  }
}

ConstrainedCodebook::ConstrainedCodebook(BlockGeometry geometry)
    : geometry_(geometry),
      gc_min_((4 * geometry.length + 9) / 10),  // ceil(0.4 L)
      gc_max_((6 * geometry.length) / 10) {     // floor(0.6 L)
  const unsigned L = geometry.length;
  table_.assign(static_cast<std::size_t>(L + 1) * (L + 1) * kStates, 0);
  auto at = [&](unsigned r, unsigned g, int s) -> std::uint64_t& {
    return table_[(static_cast<std::size_t>(r) * (L + 1) + g) * kStates + static_cast<std::size_t>(s)];
  };
  for (unsigned g = 0; g <= L; ++g)
    for (int s = 0; s < kStates; ++s) at(0, g, s) = (g >= gc_min_ && g <= gc_max_) ? 1 : 0;
  for (unsigned r = 1; r <= L; ++r)
    for (unsigned g = 0; g <= L; ++g)
      for (int s = 0; s < kStates; ++s) {
        std::uint64_t n = 0;
        for (char c : kNucleotides) {
          const int ns = next_state(s, c);
          const unsigned ng = g + (c == 'C' || c == 'G');
          if (ns >= 0 && ng <= L) n += at(r - 1, ng, ns);
        }
        at(r, g, s) = n;
      }
  total_ = at(L, 0, 0);
  if (total_ < capacity()) throw DataError("constrained code lacks capacity for the requested geometry");
}

std::uint64_t ConstrainedCodebook::completions(unsigned remaining, unsigned gc, int state) const noexcept {
  const unsigned L = geometry_.length;
  if (gc > L) return 0;
  return table_[(static_cast<std::size_t>(remaining) * (L + 1) + gc) * kStates + static_cast<std::size_t>(state)];
}

bool ConstrainedCodebook::satisfies_constraints(std::string_view word) const noexcept {
  if (word.size() != geometry_.length || !is_dna(word)) return false;
  const auto gc = gc_count(word);
  return gc >= gc_min_ && gc <= gc_max_ && longest_run(word, 'C') <= kMaxRun && longest_run(word, 'G') <= kMaxRun;
}

std::optional<std::uint64_t> ConstrainedCodebook::rank(std::string_view word) const {
  if (!satisfies_constraints(word)) return std::nullopt;
  const unsigned L = geometry_.length;
  std::uint64_t r = 0;
  unsigned gc = 0;
  int state = 0;
  for (unsigned i = 0; i < L; ++i) {
    for (char c : kNucleotides) {
      if (c == word[i]) break;
      const int ns = next_state(state, c);
      if (ns >= 0) r += completions(L - i - 1, gc + (c == 'C' || c == 'G'), ns);
    }
    state = next_state(state, word[i]);
    gc += word[i] == 'C' || word[i] == 'G';
  }
  return r;
}

std::string ConstrainedCodebook::unrank(std::uint64_t index) const {
  if (index >= total_) throw DataError("codeword index out of range");
  const unsigned L = geometry_.length;
  std::string word;
  word.reserve(L);
  unsigned gc = 0;
  int state = 0;
  for (unsigned i = 0; i < L; ++i) {
    for (char c : kNucleotides) {
      const int ns = next_state(state, c);
      if (ns < 0) continue;
      const unsigned ng = gc + (c == 'C' || c == 'G');
      const std::uint64_t n = completions(L - i - 1, ng, ns);
      if (index < n) {
        word.push_back(c);
        state = ns;
        gc = ng;
        break;
      }
      index -= n;
    }
  }
  return word;
}

std::string ConstrainedCodebook::encode(std::uint64_t value) const {
  if (value >= capacity()) throw DataError("block value exceeds codebook payload width");
  return unrank(value);
}

BlockDecode ConstrainedCodebook::decode(std::string_view word) const {
  if (word.size() != geometry_.length || !is_dna(word)) throw DataError("block is not a nucleotide word of the right length");
  if (auto r = rank(word); r && *r < capacity()) return {static_cast<std::uint32_t>(*r), false, 0};

  // Search Hamming spheres of growing radius; within a sphere the
  // smallest rank is the lexicographically smallest codeword.
  const unsigned L = geometry_.length;
  std::string probe(word);
  std::optional<std::uint64_t> best;
  std::vector<unsigned> pos;
  auto visit = [&](auto&& self, unsigned start, unsigned left) -> void {
    if (left == 0) {
      if (auto r = rank(probe); r && *r < capacity() && (!best || *r < *best)) best = r;
      return;
    }
    for (unsigned p = start; p + left <= L; ++p) {
      const char orig = probe[p];
      for (char c : kNucleotides) {
        if (c == orig) continue;
        probe[p] = c;
        self(self, p + 1, left - 1);
      }
      probe[p] = orig;
    }
  };
  for (unsigned radius = 1; radius <= L; ++radius) {
    visit(visit, 0, radius);
    if (best) return {static_cast<std::uint32_t>(*best), true, radius};
  }
  throw DataError("codebook is empty");  // unreachable: capacity >= 1
}

const Codebooks& codebooks() {
  static const Codebooks books;
  return books;
}

// ---------------------------------------------------------------------------
// Color code and addresses

std::string_view encode_color(Color c) noexcept { return kColorCodewords[color_index(c)]; }

ColorDecode decode_color(std::string_view nt3) {
  if (nt3.size() != kColorCodeLength) throw DataError("color code must be 3 nt");
  unsigned best = ~0u;
  std::size_t best_i = 0, ties = 0;
  for (std::size_t i = 0; i < kColorCodewords.size(); ++i) {
    const auto d = static_cast<unsigned>(hamming_distance(nt3, kColorCodewords[i]));
    if (d < best) {
      best = d;
      best_i = i;
      ties = 1;
    } else if (d == best) {
      ++ties;
    }
  }
  ColorDecode out;
  out.distance = best;
  out.corrected = best > 0;
  if (ties == 1) out.color = kColors[best_i];
  return out;
}

unsigned color_code_min_distance() noexcept {
  std::size_t d = ~std::size_t{0};
  for (std::size_t i = 0; i < kColorCodewords.size(); ++i)
    for (std::size_t j = i + 1; j < kColorCodewords.size(); ++j)
      d = std::min(d, hamming_distance(kColorCodewords[i], kColorCodewords[j]));
  return static_cast<unsigned>(d);
}

std::uint32_t pack_address(const AddressFields& f) {
  const auto& L = kAddressLayout;
  if (f.image >= (1u << L.image_bits)) throw DataError("image index exceeds address space");
  if (f.level >= (1u << L.level_bits)) throw DataError("level index exceeds address space");
  if (f.block >= (1u << L.block_bits)) throw DataError("block index exceeds address space");
  return (f.image << (L.level_bits + L.block_bits)) | (f.level << L.block_bits) | f.block;
}

AddressFields unpack_address(std::uint32_t packed) {
  const auto& L = kAddressLayout;
  if (packed >= (1u << L.total())) throw DataError("packed address exceeds 18 bits");
  return {packed >> (L.level_bits + L.block_bits), (packed >> L.block_bits) & ((1u << L.level_bits) - 1),
          packed & ((1u << L.block_bits) - 1)};
}

std::string address_string(Color color, const AddressFields& fields) {
  std::string s(encode_color(color));
  s += codebooks().address.encode(pack_address(fields));
  return s;
}

// ---------------------------------------------------------------------------
// Primers

int wallace_tm(std::string_view s) noexcept {
  const auto gc = static_cast<int>(gc_count(s));
  return 2 * (static_cast<int>(s.size()) - gc) + 4 * gc;
}

namespace {

bool primer_ok(std::string_view p) {
  const auto gc = gc_count(p);
  if (gc < 8 || gc > 12) return false;
  for (char n : kNucleotides)
    if (longest_run(p, n) > 3) return false;
  return true;
}

}  // namespace

PrimerSet design_primers(std::uint64_t seed, std::size_t attempt_budget) {
  std::mt19937_64 rng(seed);
  std::size_t attempts = 0;
  std::vector<std::string> accepted;
  auto draw = [&](auto&& accept) {
    while (attempts < attempt_budget) {
      ++attempts;
      std::string p(kPrimerLength, 'A');
      for (auto& c : p) c = kNucleotides[static_cast<std::size_t>(rng() >> 62)];
      if (!primer_ok(p) || !accept(p)) continue;
      const bool far = std::all_of(accepted.begin(), accepted.end(),
                                   [&](const std::string& q) { return hamming_distance(p, q) >= kPrimerMinDistance; });
      if (!far) continue;
      accepted.push_back(p);
      return p;
    }
    throw DataError("primer search exhausted its attempt budget");
  };

  PrimerSet set;
  for (auto& pair : set.pairs) {
    pair.forward = draw([](const std::string&) { return true; });
    const int tm = wallace_tm(pair.forward);
    pair.reverse = draw([tm](const std::string& p) { return std::abs(wallace_tm(p) - tm) <= 2; });
  }
  return set;
}

// ---------------------------------------------------------------------------
// Oligos

std::string assemble_oligo(const PrimerPair& primers, std::string_view address, const BitBuffer& payload) {
  if (payload.size() != kPayloadBits) throw DataError("oligo payload must be exactly 242 bits");
  if (address.size() != kAddressLength) throw DataError("oligo address must be 13 nt");
  if (primers.forward.size() != kPrimerLength || primers.reverse.size() != kPrimerLength)
    throw DataError("primers must be 20 nt");
  std::string s;
  s.reserve(kOligoLength);
  s += primers.forward;
  s += address;
  const auto& book = codebooks().payload;
  for (std::size_t b = 0; b < kPayloadBlocks; ++b) s += book.encode(payload.read_bits(b * kPayloadBlockBits, kPayloadBlockBits));
  s += primers.reverse;
  return s;
}

unsigned ParsedOligo::corrected_blocks() const noexcept {
  return static_cast<unsigned>(std::count(corrected.begin(), corrected.end(), true));
}

ParsedOligo parse_oligo(std::string_view oligo, const PrimerSet& primers) {
  if (oligo.size() != kOligoLength) throw DataError("oligo must be 196 nt, got " + std::to_string(oligo.size()));
  if (!is_dna(oligo)) throw DataError("oligo contains characters outside ACGT");
  ParsedOligo p;
  p.prefix_primer = oligo.substr(0, kPrimerLength);
  p.address = oligo.substr(kPrimerLength, kAddressLength);
  const std::string_view payload = oligo.substr(kPrimerLength + kAddressLength, kPayloadLength);
  p.suffix_primer = oligo.substr(kOligoLength - kPrimerLength);

  unsigned best = ~0u;
  for (std::size_t lvl = 0; lvl < primers.pairs.size(); ++lvl) {
    const auto d = static_cast<unsigned>(hamming_distance(p.prefix_primer, primers.pairs[lvl].forward) +
                                         hamming_distance(p.suffix_primer, primers.pairs[lvl].reverse));
    if (d < best) {
      best = d;
      p.primer_level = static_cast<std::uint8_t>(lvl);
    }
  }
  p.primer_distance = best;
  // Pairs sit >= 20 apart summed over both primers; beyond half of that the
  // match is not trustworthy.
  if (best >= kPrimerMinDistance) p.primer_level.reset();

  const auto& book = codebooks().payload;
  for (std::size_t b = 0; b < kPayloadBlocks; ++b) {
    const auto dec = book.decode(payload.substr(b * kPayloadBlockLength, kPayloadBlockLength));
    p.payload.push_bits(dec.value, kPayloadBlockBits);
    p.corrected[b] = dec.corrected;
  }
  return p;
}

}  // namespace dnaimg
