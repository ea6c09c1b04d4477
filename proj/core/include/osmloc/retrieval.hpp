#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "osmloc/descriptor.hpp"
#include "osmloc/reference_map.hpp"

namespace osmloc {

/// Default number of keys kept by the first stage.
inline constexpr std::size_t kDefaultTopK = 200;

struct RankedCandidate {
  std::size_t map_index = 0;
  PlanarPoint position;
  double distance = 0.0;
  /// Left circular shift (degrees) of the query that best matches the entry.
  int shift = 0;
};

struct KeyCandidate {
  std::size_t map_index = 0;
  std::int64_t key_distance = 0;
};

struct LocalizationResult {
  /// Ascending distance, ties by ascending map index.
  std::vector<RankedCandidate> ranked;
  /// Stage-one survivors, ordered by key distance then index.
  std::vector<std::size_t> stage1_candidates;
};

/// Stage one: the k entries whose keys are closest (L1) to the query key.
/// Ties at the cut-off keep the lowest indices. Throws InputError for an empty
/// map or k == 0.
std::vector<KeyCandidate> rank_keys(const Key& query_key, const ReferenceMap& map, std::size_t k);
std::vector<std::size_t> stage1_candidates(const Key& query_key, const ReferenceMap& map, std::size_t k);

/// Stage two: rotation-swept L1 between the query and each candidate descriptor.
/// Throws InputError for an empty candidate list or an out-of-range index.
LocalizationResult stage2_rerank(const Descriptor& query, const ReferenceMap& map,
                                 std::span<const std::size_t> candidates);

/// Both stages with the map's context parameters.
LocalizationResult localize(const Descriptor& query, const ReferenceMap& map, std::size_t k = kDefaultTopK);

}  // namespace osmloc

namespace osmloc {

/// Ranking by key distance alone (the one-stage baseline): the top-k keys in
/// stage-one order, reported with their key distance and shift 0.
LocalizationResult localize_keys_only(const Descriptor& query, const ReferenceMap& map,
                                      std::size_t k = kDefaultTopK);

}  // namespace osmloc
