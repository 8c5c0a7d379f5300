#pragma once

#include <string>

#include "knub/graph.hpp"

namespace fixtures {

inline std::string data_path(const std::string& name) { return std::string(KNUB_TEST_DATA_DIR) + "/" + name; }

/// The 14-vertex, 27-edge worked example.
inline knub::Graph worked_example() { return knub::read_edge_list(data_path("worked_example.txt"), knub::EdgeListFormat::snap); }

}  // namespace fixtures
