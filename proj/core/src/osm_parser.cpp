#include <expat.h>

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>

#include "osmloc/error.hpp"
#include "osmloc/osm.hpp"

namespace osmloc {

namespace {

using NodeId = std::int64_t;

struct RawWay {
  NodeId id = 0;
  std::vector<NodeId> refs;
  bool building = false;
  bool highway = false;
};

struct RawMember {
  NodeId ref = 0;
  bool inner = false;
};

struct RawRelation {
  std::vector<RawMember> way_members;
  bool multipolygon = false;
  bool building = false;
};

struct Bounds {
  double min_lon = 0.0;
  double max_lon = 0.0;
};

enum class Element { kNone, kWay, kRelation };

struct ParseState {
  XML_Parser parser = nullptr;
  std::unordered_map<NodeId, GeoPoint> nodes;
  std::vector<RawWay> ways;
  std::vector<RawRelation> relations;
  std::optional<Bounds> bounds;
  double lon_sum = 0.0;
  std::size_t lon_count = 0;
  Element open = Element::kNone;
  int depth = 0;
  int open_depth = 0;
  RawWay way;
  RawRelation relation;
  std::optional<std::string> error;
  std::size_t error_offset = 0;
};

const char* find_attr(const XML_Char** attrs, const char* name) {
  for (int i = 0; attrs[i] != nullptr; i += 2) {
    if (std::strcmp(attrs[i], name) == 0) return attrs[i + 1];
  }
  return nullptr;
}

template <typename T>
std::optional<T> parse_number(const char* text) {
  if (text == nullptr) return std::nullopt;
  const char* end = text + std::strlen(text);
  // from_chars rejects a leading '+', which OSM never writes anyway.
  T value{};
  auto [ptr, ec] = std::from_chars(text, end, value);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  return value;
}

void fail(ParseState& st, std::string message) {
  if (st.error) return;
  st.error = std::move(message);
  st.error_offset = static_cast<std::size_t>(XML_GetCurrentByteIndex(st.parser));
  XML_StopParser(st.parser, XML_FALSE);
}

void on_tag(const XML_Char** attrs, bool& building, bool& highway, bool* multipolygon) {
  const char* k = find_attr(attrs, "k");
  const char* v = find_attr(attrs, "v");
  if (k == nullptr || v == nullptr) return;
  if (std::strcmp(k, "building") == 0 && std::strcmp(v, "no") != 0) building = true;
  if (std::strcmp(k, "highway") == 0) highway = true;
  if (multipolygon != nullptr && std::strcmp(k, "type") == 0 && std::strcmp(v, "multipolygon") == 0) {
    *multipolygon = true;
  }
}

void XMLCALL start_element(void* user, const XML_Char* name, const XML_Char** attrs) {
  auto& st = *static_cast<ParseState*>(user);
  ++st.depth;
  if (st.error) return;

  if (std::strcmp(name, "node") == 0) {
    const auto id = parse_number<NodeId>(find_attr(attrs, "id"));
    const auto lat = parse_number<double>(find_attr(attrs, "lat"));
    const auto lon = parse_number<double>(find_attr(attrs, "lon"));
    if (!id) return fail(st, "node without a valid id");
    // Deleted/redacted nodes in history extracts carry no coordinates.
    if (!lat || !lon) return;
    st.nodes[*id] = {*lat, *lon};
    st.lon_sum += *lon;
    ++st.lon_count;
  } else if (std::strcmp(name, "way") == 0) {
    const auto id = parse_number<NodeId>(find_attr(attrs, "id"));
    if (!id) return fail(st, "way without a valid id");
    st.way = RawWay{};
    st.way.id = *id;
    st.open = Element::kWay;
    st.open_depth = st.depth;
  } else if (std::strcmp(name, "relation") == 0) {
    st.relation = RawRelation{};
    st.open = Element::kRelation;
    st.open_depth = st.depth;
  } else if (std::strcmp(name, "nd") == 0 && st.open == Element::kWay) {
    const auto ref = parse_number<NodeId>(find_attr(attrs, "ref"));
    if (!ref) return fail(st, "nd without a valid ref");
    st.way.refs.push_back(*ref);
  } else if (std::strcmp(name, "tag") == 0) {
    if (st.open == Element::kWay) {
      on_tag(attrs, st.way.building, st.way.highway, nullptr);
    } else if (st.open == Element::kRelation) {
      bool unused_highway = false;
      on_tag(attrs, st.relation.building, unused_highway, &st.relation.multipolygon);
    }
  } else if (std::strcmp(name, "member") == 0 && st.open == Element::kRelation) {
    const char* type = find_attr(attrs, "type");
    if (type == nullptr || std::strcmp(type, "way") != 0) return;
    const auto ref = parse_number<NodeId>(find_attr(attrs, "ref"));
    if (!ref) return fail(st, "member without a valid ref");
    const char* role = find_attr(attrs, "role");
    st.relation.way_members.push_back({*ref, role != nullptr && std::strcmp(role, "inner") == 0});
  } else if (std::strcmp(name, "bounds") == 0) {
    const auto min_lon = parse_number<double>(find_attr(attrs, "minlon"));
    const auto max_lon = parse_number<double>(find_attr(attrs, "maxlon"));
    if (min_lon && max_lon) st.bounds = Bounds{*min_lon, *max_lon};
  }
}

void XMLCALL end_element(void* user, const XML_Char* /*name*/) {
  auto& st = *static_cast<ParseState*>(user);
  if (st.open != Element::kNone && st.depth == st.open_depth) {
    if (st.open == Element::kWay) {
      if (!st.way.refs.empty()) st.ways.push_back(std::move(st.way));
    } else if (st.relation.multipolygon && st.relation.building) {
      st.relations.push_back(std::move(st.relation));
    }
    st.open = Element::kNone;
  }
  --st.depth;
}

void tokenize(std::string_view xml, ParseState& st) {
  std::unique_ptr<std::remove_pointer_t<XML_Parser>, decltype(&XML_ParserFree)> parser(
      XML_ParserCreate("UTF-8"), &XML_ParserFree);
  if (!parser) throw Error("parse_osm: cannot allocate XML parser");
  st.parser = parser.get();
  XML_SetUserData(st.parser, &st);
  XML_SetElementHandler(st.parser, start_element, end_element);

  constexpr std::size_t kChunk = std::size_t{1} << 26;
  std::size_t pos = 0;
  do {
    const std::size_t len = std::min(kChunk, xml.size() - pos);
    const bool last = pos + len == xml.size();
    const XML_Status status =
        XML_Parse(st.parser, xml.data() + pos, static_cast<int>(len), last ? XML_TRUE : XML_FALSE);
    if (st.error) throw ParseError("parse_osm: " + *st.error, st.error_offset);
    if (status != XML_STATUS_OK) {
      throw ParseError(std::string("parse_osm: ") + XML_ErrorString(XML_GetErrorCode(st.parser)),
                       static_cast<std::size_t>(XML_GetCurrentByteIndex(st.parser)));
    }
    pos += len;
  } while (pos < xml.size());
}

// Drops consecutive repeated node ids, which would become zero-length edges.
std::vector<NodeId> squeeze(const std::vector<NodeId>& refs) {
  std::vector<NodeId> out;
  out.reserve(refs.size());
  for (NodeId r : refs) {
    if (out.empty() || out.back() != r) out.push_back(r);
  }
  return out;
}

// Joins way fragments end to end into closed rings. Fragments that never close
// are dropped.
std::vector<std::vector<NodeId>> assemble_rings(std::vector<std::vector<NodeId>> parts) {
  std::vector<std::vector<NodeId>> rings;
  std::vector<bool> used(parts.size(), false);
  for (std::size_t start = 0; start < parts.size(); ++start) {
    if (used[start] || parts[start].size() < 2) continue;
    used[start] = true;
    std::vector<NodeId> ring = parts[start];
    bool extended = true;
    while (ring.front() != ring.back() && extended) {
      extended = false;
      for (std::size_t j = 0; j < parts.size(); ++j) {
        if (used[j] || parts[j].size() < 2) continue;
        auto& p = parts[j];
        if (p.front() == ring.back()) {
          ring.insert(ring.end(), p.begin() + 1, p.end());
        } else if (p.back() == ring.back()) {
          ring.insert(ring.end(), p.rbegin() + 1, p.rend());
        } else {
          continue;
        }
        used[j] = true;
        extended = true;
        break;
      }
    }
    if (ring.front() == ring.back()) rings.push_back(std::move(ring));
  }
  return rings;
}

}  // namespace

std::vector<Edge> building_edges(const std::vector<Ring>& rings) {
  std::vector<Edge> edges;
  for (const Ring& ring : rings) {
    for (std::size_t i = 1; i < ring.size(); ++i) {
      if (ring[i - 1] == ring[i]) continue;
      edges.push_back({ring[i - 1], ring[i]});
    }
  }
  return edges;
}

OsmData parse_osm(std::string_view xml, const OsmParseOptions& options) {
  ParseState st;
  tokenize(xml, st);

  OsmData data;
  if (st.bounds) {
    data.zone = utm_zone_for(0.5 * (st.bounds->min_lon + st.bounds->max_lon));
  } else if (st.lon_count > 0) {
    data.zone = utm_zone_for(st.lon_sum / static_cast<double>(st.lon_count));
  } else {
    data.zone = 31;
  }

  std::unordered_map<NodeId, PlanarPoint> projected;
  projected.reserve(st.nodes.size());
  for (const auto& [id, p] : st.nodes) projected[id] = wgs84_to_planar(p, data.zone).point;

  auto resolve = [&](const std::vector<NodeId>& refs) -> std::optional<std::vector<PlanarPoint>> {
    std::vector<PlanarPoint> pts;
    pts.reserve(refs.size());
    for (NodeId r : refs) {
      const auto it = projected.find(r);
      if (it == projected.end()) return std::nullopt;
      pts.push_back(it->second);
    }
    return pts;
  };

  // Drops repeated planar vertices (distinct nodes sharing a coordinate).
  auto dedup = [](std::vector<PlanarPoint> pts) {
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
  };

  std::unordered_map<NodeId, const RawWay*> way_by_id;
  for (const RawWay& w : st.ways) way_by_id[w.id] = &w;

  for (const RawWay& w : st.ways) {
    const auto refs = squeeze(w.refs);
    if (w.building && refs.size() >= 4 && refs.front() == refs.back()) {
      if (auto pts = resolve(refs)) {
        auto ring = dedup(std::move(*pts));
        if (ring.size() >= 4) data.buildings.push_back(std::move(ring));
      } else {
        ++data.skipped_ways;
      }
    }
    if (w.highway && refs.size() >= 2) {
      if (auto pts = resolve(refs)) {
        auto line = dedup(std::move(*pts));
        if (line.size() >= 2) data.roads.push_back(std::move(line));
      } else {
        ++data.skipped_ways;
      }
    }
  }

  for (const RawRelation& rel : st.relations) {
    std::vector<std::vector<NodeId>> parts;
    for (const RawMember& m : rel.way_members) {
      const auto it = way_by_id.find(m.ref);
      if (it == way_by_id.end()) continue;
      parts.push_back(squeeze(it->second->refs));
    }
    for (const auto& ring_refs : assemble_rings(std::move(parts))) {
      if (ring_refs.size() < 4) continue;
      if (auto pts = resolve(ring_refs)) {
        auto ring = dedup(std::move(*pts));
        if (ring.size() >= 4) data.buildings.push_back(std::move(ring));
      } else {
        ++data.skipped_ways;
      }
    }
  }

  if (options.require_buildings && data.buildings.empty()) throw EmptyLayerError("buildings");
  if (options.require_roads && data.roads.empty()) throw EmptyLayerError("roads");
  return data;
}

OsmData load_osm(const std::string& path, const OsmParseOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("no such file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_osm(buffer.str(), options);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.message(), e.byte_offset());
  }
}

}  // namespace osmloc
