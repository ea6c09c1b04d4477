#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>

#include "osmloc/error.hpp"
#include "osmloc/reference_map.hpp"

namespace osmloc {

namespace {

constexpr std::string_view kMagic = "osmloc-map";
constexpr std::string_view kVersion = "v1";

void append_double(std::string& out, double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, ptr);
}

template <typename T>
T parse_field(std::string_view token, std::string_view what, std::size_t line) {
  T value{};
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw FormatError("reference map line " + std::to_string(line) + ": invalid " +
                      std::string(what) + " '" + std::string(token) + "'");
  }
  return value;
}

// Splits on single spaces; the writer never emits anything else.
std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos <= line.size()) {
    const std::size_t next = line.find(' ', pos);
    const std::size_t end = next == std::string_view::npos ? line.size() : next;
    if (end > pos) out.push_back(line.substr(pos, end - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

std::string_view header_value(std::string_view token, std::string_view name) {
  if (token.size() <= name.size() + 1 || token.substr(0, name.size()) != name || token[name.size()] != '=') {
    throw FormatError("reference map header: expected '" + std::string(name) + "=...', got '" +
                      std::string(token) + "'");
  }
  return token.substr(name.size() + 1);
}

}  // namespace

void write_reference_map(std::ostream& out, const ReferenceMap& map) {
  const MapParams& p = map.params();
  std::string line;
  line.append(kMagic).append(" ").append(kVersion).append(" R=");
  append_double(line, p.range);
  line.append(" lb=");
  append_double(line, p.bin_length);
  line.append(" bins=").append(std::to_string(kAngularBins)).append(" interval=");
  append_double(line, p.interval);
  line.append(" zone=").append(std::to_string(p.zone));
  line.append(" count=").append(std::to_string(map.size())).append("\n");
  out << line;

  for (const MapEntry& e : map.entries()) {
    line.clear();
    append_double(line, e.position.x);
    line.push_back(' ');
    append_double(line, e.position.y);
    for (double d : e.descriptor.values()) {
      line.push_back(' ');
      append_double(line, d);
    }
    line.push_back('\n');
    out << line;
  }
  if (!out) throw Error("write_reference_map: stream write failed");
}

ReferenceMap read_reference_map(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("reference map: missing header");
  const auto head = split(line);
  if (head.size() != 8 || head[0] != kMagic) throw FormatError("reference map: bad header '" + line + "'");
  if (head[1] != kVersion) throw FormatError("reference map: unsupported version '" + std::string(head[1]) + "'");

  MapParams params;
  params.range = parse_field<double>(header_value(head[2], "R"), "R", 1);
  params.bin_length = parse_field<double>(header_value(head[3], "lb"), "lb", 1);
  const int bins = parse_field<int>(header_value(head[4], "bins"), "bins", 1);
  params.interval = parse_field<double>(header_value(head[5], "interval"), "interval", 1);
  params.zone = parse_field<int>(header_value(head[6], "zone"), "zone", 1);
  const auto count = parse_field<std::size_t>(header_value(head[7], "count"), "count", 1);
  if (bins != kAngularBins) throw FormatError("reference map: bins=" + std::to_string(bins) + ", expected 360");

  std::vector<PlanarPoint> positions;
  std::vector<Descriptor> descriptors;
  positions.reserve(count);
  descriptors.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t line_no = i + 2;
    if (!std::getline(in, line)) {
      throw FormatError("reference map: expected " + std::to_string(count) + " records, found " + std::to_string(i));
    }
    const auto fields = split(line);
    if (fields.size() != 2 + kAngularBins) {
      throw FormatError("reference map line " + std::to_string(line_no) + ": expected " +
                        std::to_string(2 + kAngularBins) + " fields, found " + std::to_string(fields.size()));
    }
    positions.push_back({parse_field<double>(fields[0], "x", line_no), parse_field<double>(fields[1], "y", line_no)});
    Descriptor d;
    for (int b = 0; b < kAngularBins; ++b) {
      const double v = parse_field<double>(fields[2 + b], "distance", line_no);
      if (v < 0.0 || v > params.range) {
        throw FormatError("reference map line " + std::to_string(line_no) + ": distance outside [0, R]");
      }
      d[b] = v;
    }
    descriptors.push_back(d);
  }
  if (std::getline(in, line) && !line.empty()) throw FormatError("reference map: trailing data after records");
  return ReferenceMap(params, std::move(positions), std::move(descriptors));
}

void save_reference_map(const std::string& path, const ReferenceMap& map) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  write_reference_map(out, map);
}

ReferenceMap load_reference_map(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("no such file: " + path);
  return read_reference_map(in);
}

}  // namespace osmloc
