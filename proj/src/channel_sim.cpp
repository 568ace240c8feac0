#include "dnaimg/channel_sim.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "dnaimg/dna_layer.hpp"
#include "dnaimg/error.hpp"
#include "dnaimg/key_value.hpp"

namespace dnaimg {
namespace {

enum Stage : std::uint64_t { kDropStage = 1, kSubstituteStage = 2, kReadStage = 3 };

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

char substitute(Engine& rng, char original) {
  const auto pos = kNucleotides.find(original);
  const auto shift = 1 + uniform_below(rng, 3);
  if (pos == std::string_view::npos) return kNucleotides[uniform_below(rng, 4)];
  return kNucleotides[(pos + shift) % 4];
}

std::size_t mutate(Engine& rng, std::string& s, double rate) {
  std::size_t n = 0;
  for (char& c : s) {
    if (rate >= 1.0 || uniform01(rng) < rate) {
      c = substitute(rng, c);
      ++n;
    }
  }
  return n;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stage, std::uint64_t index) noexcept {
  return splitmix64(splitmix64(splitmix64(seed) ^ stage) ^ index);
}

double uniform01(Engine& rng) noexcept { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::uint64_t uniform_below(Engine& rng, std::uint64_t n) noexcept {
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return v % n;
}

std::uint64_t sample_poisson(Engine& rng, double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) throw UsageError("Poisson mean must be finite and non-negative");
  // Knuth's product method, applied to chunks small enough that exp(-chunk)
  // stays well away from underflow; a sum of Poissons is Poisson.
  std::uint64_t total = 0;
  while (mean > 0.0) {
    const double chunk = std::min(mean, 30.0);
    mean -= chunk;
    const double limit = std::exp(-chunk);
    double p = uniform01(rng);
    while (p > limit) {
      ++total;
      p *= uniform01(rng);
    }
  }
  return total;
}

DropResult drop_oligos(const Pool& pool, std::size_t count, std::uint64_t seed) {
  if (count > pool.size()) throw UsageError("cannot drop more oligos than the pool holds");
  Engine rng(derive_seed(seed, kDropStage));
  std::vector<std::size_t> order(pool.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  for (std::size_t i = 0; i < count; ++i) std::swap(order[i], order[i + uniform_below(rng, order.size() - i)]);
  std::vector<std::uint8_t> removed(pool.size(), 0);
  for (std::size_t i = 0; i < count; ++i) removed[order[i]] = 1;

  DropResult r;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (removed[i])
      r.removed_ids.push_back(pool[i].id);
    else
      r.pool.push_back(pool[i]);
  }
  return r;
}

SubstitutionResult substitute_symbols(const Pool& pool, double rate, std::uint64_t seed) {
  if (!(rate >= 0.0 && rate <= 1.0)) throw UsageError("substitution rate must lie in [0, 1]");
  SubstitutionResult r;
  r.pool = pool;
  if (rate == 0.0) return r;
  for (std::size_t i = 0; i < r.pool.size(); ++i) {
    Engine rng(derive_seed(seed, kSubstituteStage, i));
    const std::size_t n = mutate(rng, r.pool[i].sequence, rate);
    r.substitutions += n;
    if (n) r.changed_ids.push_back(r.pool[i].id);
  }
  return r;
}

std::size_t ReadSet::total_reads() const noexcept {
  std::size_t n = 0;
  for (const auto& g : by_source) n += g.size();
  return n;
}

namespace {

template <class Depth>
ReadSet make_reads(const Pool& pool, double per_base_error, std::uint64_t seed, Depth depth) {
  if (!(per_base_error >= 0.0 && per_base_error <= 1.0)) throw UsageError("read error rate must lie in [0, 1]");
  ReadSet set;
  set.by_source.resize(pool.size());
  for (std::size_t i = 0; i < pool.size(); ++i) {
    Engine rng(derive_seed(seed, kReadStage, i));
    const std::uint64_t n = depth(rng);
    auto& group = set.by_source[i];
    group.reserve(n);
    for (std::uint64_t k = 0; k < n; ++k) {
      std::string read = pool[i].sequence;
      if (per_base_error > 0.0) mutate(rng, read, per_base_error);
      group.push_back(std::move(read));
    }
  }
  return set;
}

}  // namespace

ReadSet generate_reads(const Pool& pool, double coverage, double per_base_error, std::uint64_t seed) {
  if (!(coverage >= 1.0) || !std::isfinite(coverage)) throw UsageError("coverage must be at least 1");
  return make_reads(pool, per_base_error, seed, [coverage](Engine& rng) { return sample_poisson(rng, coverage); });
}

ReadSet generate_reads_at_depth(const Pool& pool, std::size_t depth, double per_base_error, std::uint64_t seed) {
  return make_reads(pool, per_base_error, seed, [depth](Engine&) { return std::uint64_t{depth}; });
}

std::optional<std::string> consensus(std::span<const std::string> reads) {
  if (reads.empty()) return std::nullopt;
  const std::size_t len = reads.front().size();
  std::vector<std::array<std::uint32_t, 4>> counts(len, {0, 0, 0, 0});
  for (const auto& r : reads) {
    if (r.size() != len) throw DataError("consensus requires equal-length reads");
    for (std::size_t i = 0; i < len; ++i) {
      const auto k = kNucleotides.find(r[i]);
      if (k != std::string_view::npos) ++counts[i][k];
    }
  }
  std::string out(len, 'A');
  for (std::size_t i = 0; i < len; ++i) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < 4; ++k)
      if (counts[i][k] > counts[i][best]) best = k;
    out[i] = kNucleotides[best];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Config

void validate(const ChannelConfig& c) {
  if (!(c.sub_rate >= 0.0 && c.sub_rate <= 1.0)) throw UsageError("sub_rate must lie in [0, 1]");
  if (!(c.read_error >= 0.0 && c.read_error <= 1.0)) throw UsageError("read_error must lie in [0, 1]");
  if (!(c.coverage == 0.0 || c.coverage >= 1.0)) throw UsageError("coverage must be 0 (off) or at least 1");
}

std::string format_channel_config(const ChannelConfig& c) {
  return "# channel simulation parameters\n"
         "drop = " + std::to_string(c.drop_count) + "\n" +
         "sub_rate = " + format_double(c.sub_rate) + "\n" +
         "coverage = " + format_double(c.coverage) + "\n" +
         "read_error = " + format_double(c.read_error) + "\n" +
         "seed = " + std::to_string(c.seed) + "\n";
}

bool apply_channel_key(ChannelConfig& c, const std::string& key, const std::string& value) {
  if (key == "drop")
    c.drop_count = parse_uint(key, value);
  else if (key == "sub_rate")
    c.sub_rate = parse_double(key, value);
  else if (key == "coverage")
    c.coverage = parse_double(key, value);
  else if (key == "read_error")
    c.read_error = parse_double(key, value);
  else if (key == "seed")
    c.seed = parse_uint(key, value);
  else
    return false;
  return true;
}

ChannelConfig parse_channel_config(std::string_view text) {
  ChannelConfig c;
  for (const auto& [key, value] : parse_key_values(text))
    if (!apply_channel_key(c, key, value)) throw UsageError("unknown config key: " + key);
  validate(c);
  return c;
}

std::string serialize_damage_log(const DamageLog& log) {
  nlohmann::json j;
  j["config"] = {{"drop", log.config.drop_count},
                 {"sub_rate", log.config.sub_rate},
                 {"coverage", log.config.coverage},
                 {"read_error", log.config.read_error},
                 {"seed", log.config.seed}};
  j["total"] = log.total;
  j["clean"] = log.clean;
  j["erroneous"] = log.erroneous;
  j["missing"] = log.missing;
  j["synthesis_substitutions"] = log.synthesis_substitutions;
  j["dropped_ids"] = log.dropped_ids;
  j["unsequenced_ids"] = log.unsequenced_ids;
  j["erroneous_ids"] = log.erroneous_ids;
  return j.dump(2) + "\n";
}

DamageLog parse_damage_log(std::string_view text) {
  try {
    const auto j = nlohmann::json::parse(text);
    DamageLog log;
    const auto& c = j.at("config");
    log.config = {c.at("drop").get<std::size_t>(), c.at("sub_rate").get<double>(), c.at("coverage").get<double>(),
                  c.at("read_error").get<double>(), c.at("seed").get<std::uint64_t>()};
    log.total = j.at("total").get<std::size_t>();
    log.clean = j.at("clean").get<std::size_t>();
    log.erroneous = j.at("erroneous").get<std::size_t>();
    log.missing = j.at("missing").get<std::size_t>();
    log.synthesis_substitutions = j.value("synthesis_substitutions", std::size_t{0});
    log.dropped_ids = j.at("dropped_ids").get<std::vector<std::string>>();
    log.unsequenced_ids = j.at("unsequenced_ids").get<std::vector<std::string>>();
    log.erroneous_ids = j.at("erroneous_ids").get<std::vector<std::string>>();
    return log;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("damage log: ") + e.what());
  }
}

ChannelOutcome simulate_channel(const Pool& pool, const ChannelConfig& config) {
  validate(config);
  ChannelOutcome out;
  out.log.config = config;
  out.log.total = pool.size();

  auto dropped = drop_oligos(pool, config.drop_count, config.seed);
  out.log.dropped_ids = dropped.removed_ids;
  auto synthesized = substitute_symbols(dropped.pool, config.sub_rate, config.seed);
  out.log.synthesis_substitutions = synthesized.substitutions;

  if (config.coverage > 0.0) {
    const auto reads = generate_reads(synthesized.pool, config.coverage, config.read_error, config.seed);
    for (std::size_t i = 0; i < synthesized.pool.size(); ++i) {
      const auto& group = reads.by_source[i];
      for (std::size_t k = 0; k < group.size(); ++k)
        out.reads.push_back({"read" + std::to_string(out.reads.size()) + "_src_" + synthesized.pool[i].id, group[k]});
      if (auto cons = consensus(group))
        out.pool.push_back({synthesized.pool[i].id, std::move(*cons)});
      else
        out.log.unsequenced_ids.push_back(synthesized.pool[i].id);
    }
  } else {
    out.pool = std::move(synthesized.pool);
  }

  std::unordered_map<std::string, const std::string*> source;
  for (const auto& r : pool) source.emplace(r.id, &r.sequence);
  for (const auto& r : out.pool) {
    auto it = source.find(r.id);
    if (it != source.end() && *it->second == r.sequence) {
      ++out.log.clean;
    } else {
      ++out.log.erroneous;
      out.log.erroneous_ids.push_back(r.id);
    }
  }
  out.log.missing = out.log.dropped_ids.size() + out.log.unsequenced_ids.size();
  return out;
}

}  // namespace dnaimg
