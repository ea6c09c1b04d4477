#include "csv_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "osmloc/error.hpp"

namespace osmloc::cli {

namespace {

template <typename T>
T parse(const std::string& token, const std::string& path, std::size_t line) {
  T value{};
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw FormatError(path + ":" + std::to_string(line) + ": invalid field '" + token + "'");
  }
  return value;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

void write_results_rows(std::ostream& out, std::size_t frame, const LocalizationResult& result, std::size_t limit) {
  const std::size_t n = std::min(limit, result.ranked.size());
  for (std::size_t r = 0; r < n; ++r) {
    const RankedCandidate& c = result.ranked[r];
    out << frame << ',' << r + 1 << ',' << c.map_index << ',' << format_double(c.position.x) << ','
        << format_double(c.position.y) << ',' << format_double(c.distance) << ',' << c.shift << '\n';
  }
}

std::map<std::size_t, LocalizationResult> read_results(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("no such file: " + path);
  std::string line;
  if (!std::getline(in, line) || line != kResultsHeader) {
    throw FormatError(path + ": expected header '" + std::string(kResultsHeader) + "'");
  }
  std::map<std::size_t, LocalizationResult> out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split_csv(line);
    if (f.size() != 7) throw FormatError(path + ":" + std::to_string(line_no) + ": expected 7 fields");
    const auto frame = parse<std::size_t>(f[0], path, line_no);
    const auto rank = parse<std::size_t>(f[1], path, line_no);
    auto& result = out[frame];
    if (rank != result.ranked.size() + 1) {
      throw FormatError(path + ":" + std::to_string(line_no) + ": ranks of frame " + std::to_string(frame) +
                        " must be consecutive from 1");
    }
    RankedCandidate c;
    c.map_index = parse<std::size_t>(f[2], path, line_no);
    c.position = {parse<double>(f[3], path, line_no), parse<double>(f[4], path, line_no)};
    c.distance = parse<double>(f[5], path, line_no);
    c.shift = parse<int>(f[6], path, line_no);
    result.ranked.push_back(c);
    result.stage1_candidates.push_back(c.map_index);
  }
  return out;
}

std::map<std::size_t, PlanarPoint> read_ground_truth(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("no such file: " + path);
  std::map<std::size_t, PlanarPoint> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ss(line);
    std::string frame, x, y, extra;
    if (!(ss >> frame) || frame.front() == '#') continue;
    if (!(ss >> x >> y) || (ss >> extra)) {
      throw FormatError(path + ":" + std::to_string(line_no) + ": expected 'frame_index x y'");
    }
    const auto id = parse<std::size_t>(frame, path, line_no);
    if (!out.emplace(id, PlanarPoint{parse<double>(x, path, line_no), parse<double>(y, path, line_no)}).second) {
      throw FormatError(path + ":" + std::to_string(line_no) + ": duplicate frame " + frame);
    }
  }
  return out;
}

void write_descriptor(std::ostream& out, const Descriptor& d) {
  for (int i = 0; i < kAngularBins; ++i) out << (i == 0 ? "" : " ") << format_double(d[i]);
  out << '\n';
}

}  // namespace osmloc::cli
