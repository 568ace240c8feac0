#include "dnaimg/manifest.hpp"

#include <json.hpp>

#include "dnaimg/fasta.hpp"

namespace dnaimg {

using nlohmann::json;

std::size_t Manifest::expected_oligo_count() const noexcept {
  std::size_t n = 0;
  for (const auto& img : images)
    for (const auto& s : img.streams) n += s.blocks;
  return n;
}

namespace {

Color color_from_letter(const std::string& s) {
  if (s == "R") return Color::R;
  if (s == "G") return Color::G;
  if (s == "B") return Color::B;
  throw DataError("manifest: unknown color '" + s + "'");
}

}  // namespace

std::string serialize_manifest(const Manifest& m) {
  json doc;
  doc["format"] = "dnaimg-pool-manifest";
  doc["version"] = m.version;
  doc["quantization"] = {{"bits", 3}, {"levels", kLevelCount}, {"dequantize", "midpoint"}};
  doc["resync_rate"] = m.resync_rate;
  doc["resync_period"] = resync_period(m.resync_rate);
  doc["address_layout"] = {{"image_bits", m.address_layout.image_bits},
                           {"level_bits", m.address_layout.level_bits},
                           {"block_bits", m.address_layout.block_bits}};
  doc["oligo_layout"] = {{"primer_nt", kPrimerLength},
                         {"address_nt", kAddressLength},
                         {"payload_blocks", kPayloadBlocks},
                         {"block_nt", kPayloadBlockLength},
                         {"block_bits", kPayloadBlockBits},
                         {"oligo_nt", kOligoLength}};
  doc["primer_seed"] = m.primer_seed;
  json primers = json::array();
  for (std::size_t l = 0; l < m.primers.pairs.size(); ++l)
    primers.push_back({{"level", l}, {"forward", m.primers.pairs[l].forward}, {"reverse", m.primers.pairs[l].reverse}});
  doc["primers"] = primers;

  json images = json::array();
  for (const auto& img : m.images) {
    json symbols = json::array(), lengths = json::array();
    for (const auto& e : img.table.entries()) {
      symbols.push_back(e.symbol);
      lengths.push_back(e.length);
    }
    json streams = json::array();
    for (const auto& s : img.streams)
      streams.push_back({{"color", std::string(1, color_letter(s.color))},
                         {"level", s.level},
                         {"bits", s.bits},
                         {"blocks", s.blocks}});
    images.push_back({{"index", img.index},
                      {"name", img.name},
                      {"width", img.width},
                      {"height", img.height},
                      {"huffman", {{"symbols", symbols}, {"lengths", lengths}}},
                      {"streams", streams}});
  }
  doc["images"] = images;
  return doc.dump(2) + "\n";
}

Manifest parse_manifest(std::string_view text) {
  try {
    const json doc = json::parse(text);
    if (doc.at("format").get<std::string>() != "dnaimg-pool-manifest") throw DataError("manifest: wrong format tag");
    Manifest m;
    m.version = doc.at("version").get<int>();
    if (m.version != Manifest::kVersion) throw DataError("manifest: unsupported version");
    m.resync_rate = doc.at("resync_rate").get<double>();
    const auto& al = doc.at("address_layout");
    m.address_layout = {al.at("image_bits").get<unsigned>(), al.at("level_bits").get<unsigned>(),
                        al.at("block_bits").get<unsigned>()};
    if (m.address_layout != kAddressLayout) throw DataError("manifest: unsupported address layout");
    m.primer_seed = doc.at("primer_seed").get<std::uint64_t>();
    const auto& primers = doc.at("primers");
    if (primers.size() != kLevelCount) throw DataError("manifest: expected 8 primer pairs");
    for (const auto& p : primers) {
      const auto lvl = p.at("level").get<std::size_t>();
      if (lvl >= kLevelCount) throw DataError("manifest: primer level out of range");
      m.primers.pairs[lvl] = {p.at("forward").get<std::string>(), p.at("reverse").get<std::string>()};
    }
    for (const auto& ji : doc.at("images")) {
      ImageEntry img;
      img.index = ji.at("index").get<std::uint32_t>();
      img.name = ji.value("name", "");
      img.width = ji.at("width").get<std::size_t>();
      img.height = ji.at("height").get<std::size_t>();
      const auto& hs = ji.at("huffman").at("symbols");
      const auto& hl = ji.at("huffman").at("lengths");
      if (hs.size() != hl.size()) throw DataError("manifest: Huffman symbol/length count mismatch");
      std::vector<HuffmanTable::Entry> entries;
      for (std::size_t i = 0; i < hs.size(); ++i) entries.push_back({hs[i].get<Symbol>(), hl[i].get<unsigned>()});
      img.table = HuffmanTable::from_lengths(std::move(entries));
      const auto& js = ji.at("streams");
      if (js.size() != img.streams.size()) throw DataError("manifest: expected 24 streams per image");
      for (const auto& s : js) {
        const Color c = color_from_letter(s.at("color").get<std::string>());
        const int lvl = s.at("level").get<int>();
        if (lvl < 0 || lvl >= kLevelCount) throw DataError("manifest: stream level out of range");
        img.stream(c, lvl) = {c, static_cast<std::uint8_t>(lvl), s.at("bits").get<std::uint64_t>(),
                              s.at("blocks").get<std::uint32_t>()};
      }
      m.images.push_back(std::move(img));
    }
    return m;
  } catch (const json::exception& e) {
    throw DataError(std::string("manifest: ") + e.what());
  }
}

Manifest load_manifest(const std::filesystem::path& path) { return parse_manifest(read_text_file(path)); }
void save_manifest(const std::filesystem::path& path, const Manifest& m) { write_text_file(path, serialize_manifest(m)); }

}  // namespace dnaimg
