#pragma once

#include <cstdint>
#include <string>

#include "knub/binomial.hpp"
#include "knub/graph.hpp"
#include "knub/participation.hpp"

namespace knub {

/// Target clique order k and participation order r, 2 <= r <= k.
struct ReductionParams {
  std::uint32_t k = 0;
  int r = 0;
};

struct Thresholds {
  BigInt e_bound;  // C(k-2, r-2)
  BigInt v_bound;  // C(k-1, r-1)
};

/// Throws DomainError unless 2 <= r <= k.
Thresholds participation_thresholds(std::uint32_t k, int r);

struct ReductionReport {
  std::size_t edges_removed_step1 = 0;
  std::size_t vertices_removed_step2 = 0;
  std::size_t vertices_removed_step3 = 0;
  /// The k-nub; survivor.to_parent maps back into the input graph.
  Subgraph survivor;
  BigInt e_bound;
  BigInt v_bound;
};

/// The k-nub: drop edges with EP_r < e_bound, drop vertices with
/// VP_r < v_bound, then peel to the (k-1)-core. All participation values come
/// from `stats` as computed on g; nothing is recounted. Every clique of order
/// >= k in g survives.
ReductionReport k_nub(const Graph& g, const CliqueStats& stats, ReductionParams params);

/// False only when fewer than k vertices have degree >= k-1, in which case g
/// has no k-clique. True is inconclusive.
bool has_k_clique_prefilter(const Graph& g, std::uint32_t k);

/// Report as JSON. `survivor_path`, when given, is recorded as the location of
/// the survivor's snap-txt file.
std::string report_to_json(const ReductionReport& report, ReductionParams params,
                           const std::string& survivor_path = {});

}  // namespace knub
