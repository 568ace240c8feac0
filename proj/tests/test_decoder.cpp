#include <algorithm>
#include <doctest.h>

#include <set>

#include "dnaimg/channel_sim.hpp"
#include "dnaimg/decoder.hpp"
#include "dnaimg/dna_layer.hpp"
#include "dnaimg/encoder.hpp"
#include "dnaimg/pixel_pipeline.hpp"
#include "fixtures.hpp"

using namespace dnaimg;

namespace {

const EncodeResult& chelsea_encode() {
  static const EncodeResult r = [] {
    std::vector<RgbImage> imgs{fixtures::natural("chelsea")};
    return encode_images(imgs);
  }();
  return r;
}

// Indices whose value symbol lies entirely inside [0, lost_begin), plus
// those from the first marker that starts at or after `resume_from`.
std::vector<std::uint32_t> expected_after_gap(const DiffStream& stream, const LevelIndexList& truth,
                                              const HuffmanTable& table, std::size_t lost_begin,
                                              std::size_t resume_from) {
  std::vector<std::uint32_t> out;
  std::size_t bit = 0, value = 0;
  bool resumed = false;
  for (std::size_t k = 0; k < stream.symbols.size(); ++k) {
    const Symbol s = stream.symbols[k];
    const std::size_t begin = bit;
    bit += table.code(s).second;
    if (s == kResyncMarker && begin >= resume_from) resumed = true;
    if (s < 0) continue;
    // Absolute value after a marker, or a difference: both yield one index.
    if (bit <= lost_begin || resumed) out.push_back(truth.indices[value]);
    ++value;
  }
  return out;
}

}  // namespace

TEST_CASE("identifier correction") {
  const auto& enc = chelsea_encode();
  const AddressBook book(enc.manifest);
  CHECK(book.size() == enc.pool.size());
  const auto exact = correct_identifier(book.addresses()[17], book);
  REQUIRE(exact.target);
  CHECK(*exact.target == book.target(17));
  CHECK_FALSE(exact.corrected);

  // Single substitutions are corrected whenever the nearest address is unique.
  std::size_t unique = 0, corrected_ok = 0;
  for (std::size_t i = 0; i < book.size(); i += 37) {
    for (std::size_t pos = 0; pos < kAddressLength; ++pos) {
      std::string a = book.addresses()[i];
      a[pos] = a[pos] == 'A' ? 'T' : 'A';
      std::size_t at1 = 0;
      for (const auto& other : book.addresses()) at1 += hamming_distance(a, other) <= 1;
      const bool is_unique = at1 == 1;
      const auto m = correct_identifier(a, book);
      if (is_unique) {
        ++unique;
        corrected_ok += m.target && *m.target == book.target(i);
      } else {
        CHECK((!m.target || m.distance == 0));
      }
    }
  }
  CHECK(unique > 0);
  CHECK(corrected_ok == unique);
}

TEST_CASE("equidistant identifiers are discarded") {
  const auto& enc = chelsea_encode();
  const AddressBook book(enc.manifest);
  // Two addresses one substitution apart; a third symbol at that position
  // sits at distance 1 from both.
  std::string a = book.addresses()[0], b;
  for (std::size_t i = 1; i < book.size(); ++i)
    if (hamming_distance(a, book.addresses()[i]) == 1) {
      b = book.addresses()[i];
      break;
    }
  REQUIRE_FALSE(b.empty());
  std::string t = a;
  for (std::size_t p = 0; p < a.size(); ++p)
    if (a[p] != b[p])
      for (char n : kNucleotides)
        if (n != a[p] && n != b[p]) t[p] = n;
  CHECK(hamming_distance(t, a) == 1);
  CHECK(hamming_distance(t, b) == 1);
  CHECK_FALSE(correct_identifier(t, book).target.has_value());

  Pool pool = enc.pool;
  pool[0].sequence.replace(kPrimerLength, kAddressLength, t);
  const auto rec = recover_streams(pool, enc.manifest);
  CHECK(rec.stats.discarded_ambiguous == 1);
}

TEST_CASE("clean pool: zero gaps and streams identical to encoder output") {
  const auto& enc = chelsea_encode();
  const auto rec = recover_streams(enc.pool, enc.manifest);
  CHECK(rec.total_gaps() == 0);
  CHECK(rec.stats.routed == enc.pool.size());
  CHECK(rec.stats.identifiers_corrected == 0);
  for (Color c : kColors)
    for (int j = 0; j < kLevelCount; ++j) {
      BitBuffer joined;
      for (const auto& b : rec.streams.at({0, c, std::uint8_t(j)}).blocks) joined.append(b->bits);
      BitBuffer expect = enc.images[0].bits[color_index(c)][j];
      expect.pad_to_multiple(kPayloadBits);
      CHECK(joined == expect);
    }
}

TEST_CASE("duplicates keep one copy and dropped oligos become gaps") {
  const auto& enc = chelsea_encode();
  Pool pool = enc.pool;
  pool.push_back(pool[5]);
  auto rec = recover_streams(pool, enc.manifest);
  CHECK(rec.stats.duplicates == 1);
  CHECK(rec.total_gaps() == 0);

  // The cleaner copy wins regardless of order.
  Pool noisy = enc.pool;
  std::string bad = noisy[5].sequence;
  bool made = false;
  for (std::size_t pos = 33; pos < 46 && !made; ++pos)
    for (char n : kNucleotides) {
      std::string trial = bad;
      trial[pos] = n;
      const auto rk = codebooks().payload.rank(trial.substr(33, 13));
      if (!rk || *rk >= codebooks().payload.capacity()) {
        bad = trial;
        made = true;
        break;
      }
    }
  REQUIRE(made);
  noisy.insert(noisy.begin(), {"dup", bad});
  rec = recover_streams(noisy, enc.manifest);
  const auto d = decode_pool(noisy, enc.manifest);
  CHECK(d.images[0].channels == enc.images[0].quantized);

  const auto dropped = drop_oligos(enc.pool, 10, 77);
  CHECK(recover_streams(dropped.pool, enc.manifest).total_gaps() == 10);
}

TEST_CASE("lossless round trip over several shapes") {
  std::vector<RgbImage> imgs{fixtures::random_image(1, 1, 1), fixtures::random_image(1, 37, 2),
                             fixtures::random_image(23, 1, 3), fixtures::random_image(31, 17, 4),
                             fixtures::smooth_image(64, 48, 5), fixtures::crop(fixtures::natural("coffee"), 201, 333)};
  const auto enc = encode_images(imgs);
  const auto dec = decode_pool(enc.pool, enc.manifest);
  REQUIRE(dec.images.size() == imgs.size());
  for (std::size_t i = 0; i < imgs.size(); ++i) {
    CHECK(dec.images[i].channels == quantize_image(imgs[i]));
    for (const auto& m : dec.images[i].masks) CHECK(m.empty_mask());
    for (const auto& row : dec.images[i].streams)
      for (const auto& s : row) {
        CHECK(s.terminated);
        CHECK(s.realign_attempts == 0);
      }
  }
}

TEST_CASE("single mid-stream gap: exact recovery before the gap and from the next marker") {
  const auto& enc = chelsea_encode();
  const auto& img = enc.manifest.images[0];
  std::size_t checked = 0;
  for (Color c : kColors)
    for (int j = 0; j < kLevelCount; ++j) {
      const auto& info = img.stream(c, j);
      if (info.blocks < 4) continue;
      const auto recovered = recover_streams(enc.pool, enc.manifest);
      RecoveredStream s = recovered.streams.at({0, c, std::uint8_t(j)});
      const std::size_t gap = info.blocks / 2;
      s.blocks[gap].reset();
      const auto d = decode_stream_with_realignment(s, img.table, img.width * img.height, enc.manifest.resync_rate);
      const auto truth = partition_levels(enc.images[0].linearized[color_index(c)], c)[j];
      const auto expect = expected_after_gap(enc.images[0].diff[color_index(c)][j], truth, img.table,
                                             gap * kPayloadBits, (gap + 1) * kPayloadBits);
      const auto first_diff = std::mismatch(d.list.indices.begin(), d.list.indices.end(), expect.begin(), expect.end());
      INFO("color " << color_letter(c) << " level " << j << " blocks " << info.blocks << ": got " << d.list.indices.size()
                    << " indices, expected " << expect.size() << ", first difference at "
                    << (first_diff.first - d.list.indices.begin()));
      CHECK(d.list.indices == expect);
      CHECK(d.report.realign_successes == 1);
      CHECK(d.report.terminated);
      ++checked;
    }
  CHECK(checked > 0);
}

TEST_CASE("gap in the final block truncates the stream without a terminator") {
  const auto& enc = chelsea_encode();
  const auto& img = enc.manifest.images[0];
  const auto recovered = recover_streams(enc.pool, enc.manifest);
  for (Color c : kColors)
    for (int j = 0; j < kLevelCount; ++j) {
      RecoveredStream s = recovered.streams.at({0, c, std::uint8_t(j)});
      if (s.blocks.size() < 2) continue;
      const std::size_t last = s.blocks.size() - 1;
      s.blocks[last].reset();
      const auto d = decode_stream_with_realignment(s, img.table, img.width * img.height, enc.manifest.resync_rate);
      const auto truth = partition_levels(enc.images[0].linearized[color_index(c)], c)[j];
      const auto expect = expected_after_gap(enc.images[0].diff[color_index(c)][j], truth, img.table,
                                             last * kPayloadBits, ~std::size_t{0});
      CHECK(d.list.indices == expect);
      CHECK_FALSE(d.report.terminated);
    }
}

TEST_CASE("missing first block realigns from the second") {
  const auto& enc = chelsea_encode();
  const auto& img = enc.manifest.images[0];
  const auto recovered = recover_streams(enc.pool, enc.manifest);
  for (Color c : kColors)
    for (int j = 0; j < kLevelCount; ++j) {
      RecoveredStream s = recovered.streams.at({0, c, std::uint8_t(j)});
      if (s.blocks.size() < 3) continue;
      s.blocks[0].reset();
      const auto d = decode_stream_with_realignment(s, img.table, img.width * img.height, enc.manifest.resync_rate);
      const auto truth = partition_levels(enc.images[0].linearized[color_index(c)], c)[j];
      CHECK(d.list.indices == expected_after_gap(enc.images[0].diff[color_index(c)][j], truth, img.table, 0,
                                                 kPayloadBits));
    }
}

TEST_CASE("loss locality and ground-truth containment") {
  const auto& enc = chelsea_encode();
  const auto truth = enc.images[0].quantized;
  Pool pool;
  for (const auto& r : enc.pool)
    // Drop every other block of G level 3 and one block of B level 5.
    if (!(r.id.rfind("img0_G3_blk", 0) == 0 && std::stoi(r.id.substr(11)) % 2 == 1) && r.id != "img0_B5_blk1")
      pool.push_back(r);
  const auto dec = decode_pool(pool, enc.manifest);
  const auto& out = dec.images[0];
  for (Color c : kColors)
    for (int j = 0; j < kLevelCount; ++j) {
      if ((c == Color::G && j == 3) || (c == Color::B && j == 5)) continue;
      CHECK(out.lists[color_index(c)][j].indices == partition_levels(enc.images[0].linearized[color_index(c)], c)[j].indices);
    }
  std::size_t wrong = 0;
  for (std::size_t c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < truth[c].levels.size(); ++i)
      if (truth[c].levels[i] != out.channels[c].levels[i]) {
        ++wrong;
        CHECK(out.masks[c][i] == 1);
      }
  CHECK(wrong > 0);
  CHECK(out.masks[0].empty_mask());
}

TEST_CASE("dropping a whole level masks every pixel of that level") {
  const auto& enc = chelsea_encode();
  Pool pool;
  for (const auto& r : enc.pool)
    if (r.id.rfind("img0_R2_", 0) != 0) pool.push_back(r);
  const auto dec = decode_pool(pool, enc.manifest);
  const auto& q = enc.images[0].quantized[0];
  for (std::size_t i = 0; i < q.levels.size(); ++i)
    if (q.levels[i] == 2) REQUIRE(dec.images[0].masks[0][i] == 1);
  CHECK(dec.images[0].masks[1].empty_mask());
}

TEST_CASE("noisy pools decode without throwing and report consistently") {
  const auto& enc = chelsea_encode();
  const auto noisy = simulate_channel(enc.pool, ChannelConfig{5, 2e-3, 0.0, 0.0, 3});
  const auto dec = decode_pool(noisy.pool, enc.manifest);
  CHECK(dec.routing.records == noisy.pool.size());
  CHECK(dec.routing.routed + dec.routing.duplicates + dec.routing.discarded_ambiguous +
            dec.routing.discarded_malformed ==
        dec.routing.records);
  const auto report = decode_report_json(dec);
  CHECK(report.find("\"gaps\"") != std::string::npos);

  Pool garbage = enc.pool;
  garbage[0].sequence = "ACGT";
  CHECK(recover_streams(garbage, enc.manifest).stats.discarded_malformed == 1);
}
