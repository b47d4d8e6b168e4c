#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "distcsp/model.hpp"

namespace distcsp {

/// Distance profile of a template's Gaifman graph on Z.
struct AnalysisReport {
    std::vector<Offset> distances; // strictly increasing, all positive
    Offset max_distance = 0;       // 0 when the Gaifman graph has no edges
    bool connected = false;
    /// Shortest walk length from 0 to q, for 0 < q < max_distance.
    /// Only filled for connected templates.
    std::map<Offset, Offset> path_lengths;
    /// max over q of max_distance * path_lengths[q]; 0 when max_distance == 1.
    std::optional<Offset> stretch_bound;
    /// 2 * (stretch_bound + 1): size bound on generated finite ranges.
    std::optional<Offset> finite_range_bound;
};

/// All positive |v_j - v_i| over every tuple relation, member and coordinate
/// pair. Throws DomainError when the template has no tuple relation.
std::vector<Offset> gaifman_distances(const Template& t);

/// Largest Gaifman distance, or 0 if the template has no tuple relation or
/// only the diagonal.
Offset max_distance_or_zero(const Template& t);

/// gcd(distances) == 1. An edgeless graph is not connected.
bool is_connected(std::span<const Offset> distances);
bool is_connected(const Template& t);

/// Length of a shortest walk 0 -> q using steps +-d for d in `distances`,
/// by breadth-first search on a window that widens on demand. q = 0 gives 0.
/// Throws DomainError when the distances are not connected.
Offset realizing_path_length(std::span<const Offset> distances, Offset q);
Offset realizing_path_length(const Template& t, Offset q);

/// Graph distance between x and y in the Gaifman graph on Z.
Offset gaifman_graph_distance(std::span<const Offset> distances, Offset x, Offset y);

/// max over 0 < q < D of D * l_q (0 when D == 1). Throws DomainError when
/// the template is disconnected.
Offset stretch_constant(std::span<const Offset> distances);
Offset stretch_constant(const Template& t);

AnalysisReport analyze_template(const Template& t);

} // namespace distcsp
