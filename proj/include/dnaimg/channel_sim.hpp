#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dnaimg/fasta.hpp"

namespace dnaimg {

// All randomness flows through explicitly seeded std::mt19937_64 engines.
// Per-record work derives its own engine from (seed, stage, record index),
// so results do not depend on evaluation order.
using Engine = std::mt19937_64;

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stage, std::uint64_t index = 0) noexcept;
double uniform01(Engine& rng) noexcept;
/// Uniform in [0, n) by rejection; n must be positive.
std::uint64_t uniform_below(Engine& rng, std::uint64_t n) noexcept;
std::uint64_t sample_poisson(Engine& rng, double mean);

struct DropResult {
  Pool pool;
  std::vector<std::string> removed_ids;
};
/// Uniform removal without replacement. Throws UsageError if count exceeds the pool.
DropResult drop_oligos(const Pool& pool, std::size_t count, std::uint64_t seed);

struct SubstitutionResult {
  Pool pool;
  std::size_t substitutions = 0;
  std::vector<std::string> changed_ids;
};
/// Each position independently becomes a different nucleotide with
/// probability `rate`. Throws UsageError unless 0 <= rate <= 1.
SubstitutionResult substitute_symbols(const Pool& pool, double rate, std::uint64_t seed);

struct ReadSet {
  std::vector<std::vector<std::string>> by_source;  // ground-truth grouping
  std::size_t total_reads() const noexcept;
};
/// Poisson(coverage) reads per record with i.i.d. substitutions. Throws
/// UsageError if coverage < 1 or the error rate is outside [0, 1].
ReadSet generate_reads(const Pool& pool, double coverage, double per_base_error, std::uint64_t seed);
/// Exactly `depth` reads per record; otherwise as generate_reads.
ReadSet generate_reads_at_depth(const Pool& pool, std::size_t depth, double per_base_error, std::uint64_t seed);

/// Position-wise plurality with ties to A < C < G < T. Returns nullopt
/// for an empty group (a missing oligo). Throws DataError on unequal lengths.
std::optional<std::string> consensus(std::span<const std::string> reads);

struct ChannelConfig {
  std::size_t drop_count = 0;
  double sub_rate = 0.0;
  double coverage = 0.0;  // 0 skips read simulation and consensus
  double read_error = 0.0;
  std::uint64_t seed = 1;
  friend bool operator==(const ChannelConfig&, const ChannelConfig&) = default;
};

/// `key = value` lines; '#' starts a comment.
std::string format_channel_config(const ChannelConfig& config);
/// Throws UsageError on unknown keys or bad values.
ChannelConfig parse_channel_config(std::string_view text);
void validate(const ChannelConfig& config);
/// Applies one config key; returns false for keys it does not own.
bool apply_channel_key(ChannelConfig& config, const std::string& key, const std::string& value);

/// Ground truth of one simulated run; evaluation code only.
struct DamageLog {
  ChannelConfig config;
  std::size_t total = 0;
  std::size_t clean = 0;      // present and identical to the source
  std::size_t erroneous = 0;  // present with at least one symbol error
  std::size_t missing = 0;    // dropped, or never sequenced
  std::size_t synthesis_substitutions = 0;
  std::vector<std::string> dropped_ids;
  std::vector<std::string> unsequenced_ids;
  std::vector<std::string> erroneous_ids;
  bool any_damage() const noexcept { return missing + erroneous > 0; }
};

std::string serialize_damage_log(const DamageLog& log);
DamageLog parse_damage_log(std::string_view json_text);

struct ChannelOutcome {
  Pool pool;   // consensus pool, in source order
  Pool reads;  // empty when coverage is 0
  DamageLog log;
};

/// dropout -> synthesis substitutions -> reads -> consensus.
ChannelOutcome simulate_channel(const Pool& pool, const ChannelConfig& config);

}  // namespace dnaimg
