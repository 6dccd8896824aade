#pragma once

#include <string>
#include <vector>

#include "capdrift/drift/drift.hpp"
#include "capdrift/drift/sweep.hpp"

namespace capdrift {

// Radar chart of per-capability drift severity. One axis per comparable
// capability in taxonomy order; the vertex sits on the ring named by the
// axis's forgetting regime (ring 0 = None ... ring 4 = Catastrophic), so
// severity is encoded purely by radius. Group membership is shown as
// translucent background sectors. Every vertex carries machine-readable
// data-cap / data-ring / data-delta attributes.
//
// Fewer than 3 comparable axes cannot span a polygon; the chart then
// degrades to horizontal severity bars plus an explanatory note (the data-*
// attributes survive).
//
// Deterministic by construction: no timestamps, all numbers through
// fmt_fixed/fmt_double.
std::string spider_svg(const DriftReport& rep);

// Stability-plasticity trade-off curves over the merge-weight sweep: two
// series (S and P, in percent) against w. Points carry data-series /
// data-w / data-value attributes.
std::string sweep_svg(const std::vector<SweepPoint>& points);

}  // namespace capdrift
