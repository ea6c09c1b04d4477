#include "osmloc/retrieval.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "osmloc/error.hpp"

namespace osmloc {

namespace {

bool key_order(const KeyCandidate& a, const KeyCandidate& b) {
  return a.key_distance != b.key_distance ? a.key_distance < b.key_distance : a.map_index < b.map_index;
}

}  // namespace

std::vector<KeyCandidate> rank_keys(const Key& query_key, const ReferenceMap& map, std::size_t k) {
  if (map.empty()) throw InputError("stage1: reference map is empty");
  if (k == 0) throw InputError("stage1: k must be at least 1");
  const auto dims = static_cast<std::size_t>(map.key_length());
  if (query_key.counts.size() != dims) {
    throw InputError("stage1: query key has " + std::to_string(query_key.counts.size()) +
                     " rows, map keys have " + std::to_string(dims));
  }

  const auto keys = map.key_matrix();
  std::vector<KeyCandidate> all(map.size());
  for (std::size_t i = 0; i < map.size(); ++i) {
    const std::int32_t* row = keys.data() + i * dims;
    std::int64_t sum = 0;
    for (std::size_t d = 0; d < dims; ++d) sum += std::abs(row[d] - query_key.counts[d]);
    all[i] = {i, sum};
  }

  const std::size_t keep = std::min(k, all.size());
  // (distance, index) is a strict total order, so the selected set is unique.
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(keep), all.end(), key_order);
  all.resize(keep);
  return all;
}

std::vector<std::size_t> stage1_candidates(const Key& query_key, const ReferenceMap& map, std::size_t k) {
  const auto ranked = rank_keys(query_key, map, k);
  std::vector<std::size_t> out;
  out.reserve(ranked.size());
  for (const KeyCandidate& c : ranked) out.push_back(c.map_index);
  return out;
}

LocalizationResult stage2_rerank(const Descriptor& query, const ReferenceMap& map,
                                 std::span<const std::size_t> candidates) {
  if (candidates.empty()) throw InputError("stage2: no candidates");
  LocalizationResult result;
  result.stage1_candidates.assign(candidates.begin(), candidates.end());
  result.ranked.reserve(candidates.size());

  const RotatedQuery rotated(query);
  for (std::size_t idx : candidates) {
    if (idx >= map.size()) {
      throw InputError("stage2: candidate index " + std::to_string(idx) + " out of range (map size " +
                       std::to_string(map.size()) + ")");
    }
    const RotatedMatch m = rotated.match(map[idx].descriptor);
    result.ranked.push_back({idx, map[idx].position, m.distance, m.shift});
  }
  std::sort(result.ranked.begin(), result.ranked.end(), [](const RankedCandidate& a, const RankedCandidate& b) {
    return a.distance != b.distance ? a.distance < b.distance : a.map_index < b.map_index;
  });
  return result;
}

LocalizationResult localize(const Descriptor& query, const ReferenceMap& map, std::size_t k) {
  const Key key = make_key(query, map.params().context());
  const auto candidates = stage1_candidates(key, map, k);
  return stage2_rerank(query, map, candidates);
}

}  // namespace osmloc

namespace osmloc {

LocalizationResult localize_keys_only(const Descriptor& query, const ReferenceMap& map, std::size_t k) {
  const Key key = make_key(query, map.params().context());
  LocalizationResult result;
  for (const KeyCandidate& c : rank_keys(key, map, k)) {
    result.stage1_candidates.push_back(c.map_index);
    result.ranked.push_back({c.map_index, map[c.map_index].position, static_cast<double>(c.key_distance), 0});
  }
  return result;
}

}  // namespace osmloc
