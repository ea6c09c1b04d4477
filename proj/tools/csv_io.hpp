#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "osmloc/descriptor.hpp"
#include "osmloc/geo.hpp"
#include "osmloc/retrieval.hpp"

namespace osmloc::cli {

/// Shortest round-trip decimal form.
std::string format_double(double v);

/// `frame,rank,map_index,x,y,distance,shift`
inline constexpr const char* kResultsHeader = "frame,rank,map_index,x,y,distance,shift";

void write_results_rows(std::ostream& out, std::size_t frame, const LocalizationResult& result, std::size_t limit);

/// Reads a results CSV back into per-frame ranked lists (ordered by rank).
std::map<std::size_t, LocalizationResult> read_results(const std::string& path);

/// Ground truth: one `frame_index x y` line per frame (whitespace separated;
/// blank lines and lines starting with '#' are skipped).
std::map<std::size_t, PlanarPoint> read_ground_truth(const std::string& path);

/// One line of 360 space-separated values.
void write_descriptor(std::ostream& out, const Descriptor& d);

}  // namespace osmloc::cli
