#pragma once

#include <span>
#include <vector>

namespace acs {

using ObjectiveVector = std::vector<double>;

/// Minimization: a dominates b if a <= b everywhere and a < b somewhere.
bool dominates(std::span<const double> a, std::span<const double> b);

/// Pareto rank per point (0 = non-dominated front), via fast non-dominated sorting.
/// Throws std::invalid_argument on mixed dimensions.
std::vector<int> nondominated_sort(const std::vector<ObjectiveVector>& points);

/// NSGA-II crowding distance within one front. Fronts of at most two points are
/// all infinite; per objective the extreme points are infinite and interior points
/// add the range-normalised gap between their neighbours. Objectives with zero
/// range contribute nothing.
std::vector<double> crowding_distance(const std::vector<ObjectiveVector>& front);

/// Crowding distance of every point, computed front by front from `ranks`.
std::vector<double> crowding_by_front(const std::vector<ObjectiveVector>& points, const std::vector<int>& ranks);

}  // namespace acs
