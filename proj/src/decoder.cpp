#include "dnaimg/decoder.hpp"

#include <json.hpp>

#include "dnaimg/dna_layer.hpp"
#include "dnaimg/error.hpp"
#include "dnaimg/hilbert_scan.hpp"

namespace dnaimg {

AddressBook::AddressBook(const Manifest& manifest) {
  for (const auto& img : manifest.images) {
    for (Color c : kColors) {
      for (int j = 0; j < kLevelCount; ++j) {
        const auto& info = img.stream(c, j);
        for (std::uint32_t b = 0; b < info.blocks; ++b) {
          const AddressFields f{img.index, static_cast<std::uint32_t>(j), b};
          lookup_.emplace(address_string(c, f), addresses_.size());
          addresses_.push_back(address_string(c, f));
          targets_.push_back({{img.index, c, static_cast<std::uint8_t>(j)}, b});
        }
      }
    }
  }
}

std::optional<std::size_t> AddressBook::find_exact(std::string_view address) const {
  auto it = lookup_.find(std::string(address));
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

IdentifierMatch correct_identifier(std::string_view address, const AddressBook& book) {
  IdentifierMatch m;
  if (auto i = book.find_exact(address)) {
    m.target = book.target(*i);
    return m;
  }
  std::size_t best = ~std::size_t{0};
  std::size_t best_index = 0;
  bool tied = false;
  for (std::size_t i = 0; i < book.size(); ++i) {
    const std::size_t d = hamming_distance(address, book.addresses()[i]);
    if (d < best) {
      best = d;
      best_index = i;
      tied = false;
    } else if (d == best) {
      tied = true;
    }
  }
  m.corrected = true;
  m.distance = static_cast<unsigned>(best);
  if (book.size() != 0 && !tied) m.target = book.target(best_index);
  return m;
}

std::size_t RecoveredStream::gaps() const noexcept {
  std::size_t n = 0;
  for (const auto& b : blocks) n += !b.has_value();
  return n;
}

std::size_t RecoveredStream::corrected_blocks() const noexcept {
  std::size_t n = 0;
  for (const auto& b : blocks)
    if (b) n += b->corrected_blocks;
  return n;
}

std::size_t RecoveredStreams::total_gaps() const noexcept {
  std::size_t n = 0;
  for (const auto& kv : streams) n += kv.second.gaps();
  return n;
}

RecoveredStreams recover_streams(const Pool& pool, const Manifest& manifest) {
  RecoveredStreams out;
  for (const auto& img : manifest.images) {
    for (Color c : kColors) {
      for (int j = 0; j < kLevelCount; ++j) {
        const StreamKey key{img.index, c, static_cast<std::uint8_t>(j)};
        RecoveredStream s;
        s.key = key;
        s.bits = img.stream(c, j).bits;
        s.blocks.resize(img.stream(c, j).blocks);
        out.streams.emplace(key, std::move(s));
      }
    }
  }

  const AddressBook book(manifest);
  for (const auto& rec : pool) {
    ++out.stats.records;
    ParsedOligo parsed;
    try {
      parsed = parse_oligo(rec.sequence, manifest.primers);
    } catch (const DataError&) {
      ++out.stats.discarded_malformed;
      continue;
    }
    const auto match = correct_identifier(parsed.address, book);
    if (!match.target) {
      ++out.stats.discarded_ambiguous;
      continue;
    }
    if (match.corrected) ++out.stats.identifiers_corrected;
    const auto& t = *match.target;
    if (parsed.primer_level && *parsed.primer_level != t.key.level) ++out.stats.primer_mismatches;

    auto& slot = out.streams.at(t.key).blocks.at(t.block);
    RecoveredBlock blk{std::move(parsed.payload), parsed.corrected_blocks()};
    if (!slot) {
      slot = std::move(blk);
      ++out.stats.routed;
    } else {
      ++out.stats.duplicates;
      if (blk.corrected_blocks < slot->corrected_blocks) slot = std::move(blk);
    }
  }
  return out;
}

namespace {

struct BitView {
  BitBuffer bits;
  std::vector<std::uint8_t> present;  // per block

  std::size_t blocks() const noexcept { return present.size(); }
  /// End of the run of present blocks containing bit `pos`.
  std::size_t segment_end(std::size_t pos) const noexcept {
    std::size_t b = pos / kPayloadBits;
    while (b < present.size() && present[b]) ++b;
    return b * kPayloadBits;
  }
};

class Realigner {
public:
  Realigner(const BitView& view, const HuffmanTable& table, std::uint64_t limit, std::uint64_t end_bits,
            std::size_t period)
      : view_(view), table_(table), limit_(limit), end_bits_(end_bits), period_(period) {}

  /// Bit position of the earliest confirmed resync marker in [start, end).
  std::optional<std::size_t> find(std::size_t start, std::size_t end, std::optional<std::uint32_t> last) const {
    std::optional<std::size_t> best;
    for (std::size_t o = 0; o < kPayloadBits && start + o < end; ++o) {
      if (best && start + o >= *best) break;
      if (auto m = probe(start + o, end, last); m && (!best || *m < *best)) best = m;
    }
    return best;
  }

private:
  static constexpr int kConfirmRuns = 2;

  bool plausible_absolute(Symbol v, std::optional<std::uint32_t> last) const noexcept {
    return v >= 0 && static_cast<std::uint64_t>(v) < limit_ && (!last || v > static_cast<Symbol>(*last));
  }

  std::optional<std::size_t> probe(std::size_t pos, std::size_t end, std::optional<std::uint32_t> last) const {
    std::optional<std::size_t> marker;
    for (std::size_t n = 0; n < kRealignProbeBudget; ++n) {
      std::size_t q = pos;
      const auto s = table_.decode_one(view_.bits, q, end);
      if (!s) return std::nullopt;
      if (marker && plausible_absolute(*s, last) && run_is_consistent(q, end, *s, kConfirmRuns)) return marker;
      marker = *s == kResyncMarker ? std::optional<std::size_t>(pos) : std::nullopt;
      pos = q;
    }
    return std::nullopt;
  }

  // A run after a marker is exactly period - 1 positive steps within bounds
  // when another marker follows, at most that many before the terminator,
  // which must sit exactly at the stream end. Running out of bits is
  // accepted. `runs` consecutive runs are checked.
  bool run_is_consistent(std::size_t pos, std::size_t end, Symbol value, int runs) const {
    for (std::size_t diffs = 0;; ++diffs) {
      std::size_t q = pos;
      const auto s = table_.decode_one(view_.bits, q, end);
      if (!s) return true;
      if (*s == kTerminator) return q == end_bits_;
      if (*s == kResyncMarker) {
        if (diffs + 1 != period_) return false;
        const auto next = table_.decode_one(view_.bits, q, end);
        if (!next) return true;
        if (*next <= value || static_cast<std::uint64_t>(*next) >= limit_) return false;
        return runs <= 1 || run_is_consistent(q, end, *next, runs - 1);
      }
      if (*s <= 0 || diffs + 1 >= period_) return false;
      value += *s;
      if (static_cast<std::uint64_t>(value) >= limit_) return false;
      pos = q;
    }
  }

  const BitView& view_;
  const HuffmanTable& table_;
  std::uint64_t limit_;
  std::uint64_t end_bits_;
  std::size_t period_;
};

}  // namespace

StreamDecodeResult decode_stream_with_realignment(const RecoveredStream& stream, const HuffmanTable& table,
                                                  std::uint64_t limit, double resync_rate) {
  StreamDecodeResult r;
  r.list.color = stream.key.color;
  r.list.level = stream.key.level;
  r.report.gaps = stream.gaps();

  BitView view;
  for (const auto& b : stream.blocks) {
    view.present.push_back(b.has_value());
    if (b) {
      if (b->bits.size() != kPayloadBits) throw DataError("recovered block must hold 242 bits");
      view.bits.append(b->bits);
    } else {
      for (std::size_t i = 0; i < kPayloadBits; ++i) view.bits.push_bit(false);
    }
  }
  const Realigner realigner(view, table, limit, stream.bits, resync_period(resync_rate));

  DiffRunDecoder dec(limit);
  std::size_t pos = 0;
  bool aligned = view.blocks() > 0 && view.present[0];
  std::size_t from_block = 0;

  while (true) {
    if (aligned) {
      const std::size_t seg_end = view.segment_end(pos);
      bool done = false;
      while (true) {
        std::size_t q = pos;
        const auto s = table.decode_one(view.bits, q, seg_end);
        if (!s) break;
        if (*s == kTerminator) {
          if (q == stream.bits) {
            dec.feed(*s);
            done = true;
          } else {
            ++r.report.premature_terminators;
          }
          break;
        }
        dec.feed(*s);
        pos = q;
      }
      if (done) break;
      aligned = false;
      from_block = pos == seg_end ? pos / kPayloadBits : pos / kPayloadBits + 1;
      continue;
    }

    std::size_t b = from_block;
    while (b < view.blocks() && !view.present[b]) ++b;
    if (b >= view.blocks()) break;
    ++r.report.realign_attempts;
    const std::size_t seg_start = b * kPayloadBits;
    const std::size_t seg_end = view.segment_end(seg_start);
    if (auto m = realigner.find(seg_start, seg_end, dec.last_index())) {
      ++r.report.realign_successes;
      pos = *m;
      aligned = true;
    } else {
      ++r.report.realign_failures;
      from_block = seg_end / kPayloadBits;
    }
  }

  r.report.terminated = dec.finished();
  r.report.dropped_symbols = dec.dropped_symbols();
  r.report.retracted_indices = dec.retracted_indices();
  r.list.indices = dec.take_indices();
  return r;
}

DecodedImage reconstruct_image(const ImageEntry& entry,
                               const std::array<std::array<LevelIndexList, kLevelCount>, 3>& lists) {
  DecodedImage img;
  img.index = entry.index;
  img.name = entry.name;
  img.lists = lists;
  const std::size_t n = entry.width * entry.height;
  for (Color c : kColors) {
    const auto ci = color_index(c);
    const auto merged = merge_levels(lists[ci], n);
    img.channels[ci] = delinearize(merged.values, entry.height, entry.width, c);
    const auto unknown = delinearize(merged.unknown, entry.height, entry.width, c);
    img.masks[ci] = PixelMask(entry.height, entry.width);
    std::copy(unknown.levels.values().begin(), unknown.levels.values().end(), img.masks[ci].values().begin());
  }
  return img;
}

DecodeResult decode_pool(const Pool& pool, const Manifest& manifest) {
  DecodeResult result;
  const auto recovered = recover_streams(pool, manifest);
  result.routing = recovered.stats;
  result.gaps = recovered.total_gaps();
  for (const auto& entry : manifest.images) {
    std::array<std::array<LevelIndexList, kLevelCount>, 3> lists;
    std::array<std::array<StreamDecodeReport, kLevelCount>, 3> reports;
    const std::uint64_t limit = entry.width * entry.height;
    for (Color c : kColors) {
      for (int j = 0; j < kLevelCount; ++j) {
        const StreamKey key{entry.index, c, static_cast<std::uint8_t>(j)};
        auto d = decode_stream_with_realignment(recovered.streams.at(key), entry.table, limit, manifest.resync_rate);
        lists[color_index(c)][j] = std::move(d.list);
        reports[color_index(c)][j] = d.report;
      }
    }
    DecodedImage img = reconstruct_image(entry, lists);
    img.streams = reports;
    result.images.push_back(std::move(img));
  }
  return result;
}

std::string decode_report_json(const DecodeResult& result) {
  nlohmann::json j;
  const auto& r = result.routing;
  j["routing"] = {{"records", r.records},
                  {"routed", r.routed},
                  {"identifiers_corrected", r.identifiers_corrected},
                  {"discarded_ambiguous", r.discarded_ambiguous},
                  {"discarded_malformed", r.discarded_malformed},
                  {"duplicates", r.duplicates},
                  {"primer_mismatches", r.primer_mismatches}};
  j["gaps"] = result.gaps;
  j["images"] = nlohmann::json::array();
  for (const auto& img : result.images) {
    nlohmann::json ji;
    ji["index"] = img.index;
    ji["name"] = img.name;
    ji["height"] = img.channels[0].height();
    ji["width"] = img.channels[0].width();
    std::size_t attempts = 0, successes = 0, failures = 0;
    for (Color c : kColors) {
      const auto ci = color_index(c);
      ji["masked_pixels"][std::string(1, color_letter(c))] = img.masks[ci].count();
      for (int l = 0; l < kLevelCount; ++l) {
        const auto& s = img.streams[ci][l];
        attempts += s.realign_attempts;
        successes += s.realign_successes;
        failures += s.realign_failures;
        if (s.gaps == 0 && s.realign_attempts == 0 && s.premature_terminators == 0 && s.terminated) continue;
        ji["damaged_streams"].push_back({{"color", std::string(1, color_letter(c))},
                                         {"level", l},
                                         {"gaps", s.gaps},
                                         {"realign_attempts", s.realign_attempts},
                                         {"realign_successes", s.realign_successes},
                                         {"realign_failures", s.realign_failures},
                                         {"premature_terminators", s.premature_terminators},
                                         {"dropped_symbols", s.dropped_symbols},
                                         {"retracted_indices", s.retracted_indices},
                                         {"terminated", s.terminated}});
      }
    }
    if (!ji.contains("damaged_streams")) ji["damaged_streams"] = nlohmann::json::array();
    ji["realignment"] = {{"attempts", attempts}, {"successes", successes}, {"failures", failures}};
    j["images"].push_back(std::move(ji));
  }
  return j.dump(2) + "\n";
}

}  // namespace dnaimg
