#pragma once

#include "betatile/boundary.hpp"
#include "betatile/natext.hpp"
#include "betatile/periodic.hpp"
#include "betatile/tile.hpp"

#include <json.hpp>

namespace betatile {

using json = nlohmann::json;

// Every number in emitted JSON carries an exact representation (coefficient
// vector) or a rational enclosure; decimal strings are for human eyes.
json json_rat(const Rat& q);
json json_interval(const QInterval& iv);
json json_element(const FieldElement& x);
json json_field(const BetaField& f);
json json_parry(const ParryData& p);
json json_cloud(const TileCloud& c, bool include_points = true);
json json_graph(const BoundaryGraph& g);
json json_gamma(const GammaResult& r);
json json_purity(const PurityReport& r);
json json_covering(const CoveringReport& r);

// Deterministic SVG scatter of tile clouds in the plane
// (non-dominant archimedean coordinate, finite-place address value); points
// are drawn as rectangles covering their certified outer boxes.
std::string svg_tile_patch(const ParryData& parry, const std::vector<TileCloud>& clouds,
                           const std::string& config_comment);

// Natural extension slices: dominant coordinate horizontal, conjugate
// coordinate vertical.
std::string svg_natext(const ParryData& parry, const std::vector<DomainSlice>& slices,
                       const std::string& config_comment);

}  // namespace betatile
