#ifndef V2X_MOBILITY_HPP
#define V2X_MOBILITY_HPP

#include <cmath>
#include <vector>

#include "v2x/config.hpp"
#include "v2x/rng.hpp"

namespace v2x {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline double distance(const Vec2& a, const Vec2& b) { return std::hypot(a.x - b.x, a.y - b.y); }

/// Travel direction along a street; streets are axis-aligned.
enum class Heading { PosX, NegX, PosY, NegY };

inline bool heading_is_x(Heading h) { return h == Heading::PosX || h == Heading::NegX; }
inline int heading_sign(Heading h) { return (h == Heading::PosX || h == Heading::PosY) ? 1 : -1; }
inline Heading reverse(Heading h) {
    switch (h) {
        case Heading::PosX: return Heading::NegX;
        case Heading::NegX: return Heading::PosX;
        case Heading::PosY: return Heading::NegY;
        default: return Heading::PosY;
    }
}

/// Manhattan grid clipped to a circular arena.
struct GridLayout {
    double grid_spacing;
    double area_radius;

    /// Lattice index range covering the circle on one axis.
    int max_index() const { return static_cast<int>(std::floor(area_radius / grid_spacing)); }
};

struct VehicleKinematics {
    Vec2 position;
    Heading heading = Heading::PosX;
    double speed = 0.0;  // constant for the whole run
    // The street currently traveled: if heading is along x, street_offset is
    // the fixed y coordinate (a lattice multiple), and vice versa.
    double street_offset = 0.0;
};

std::vector<VehicleKinematics> spawn_vehicles(const ScenarioConfig& cfg, RngStream& rng);

/// Advance one vehicle by dt. Turns at intersections with probability
/// 1 - p_straight (split equally left/right); reflects at the arena boundary
/// and at lattice dead ends.
VehicleKinematics step(const VehicleKinematics& v, double dt, const GridLayout& layout, double p_straight,
                       RngStream& rng);

/// Fixed RSU placement: four RSUs at (+-R/2, 0), (0, +-R/2) snapped to the
/// nearest intersection; other counts are spaced evenly on the R/2 circle.
std::vector<Vec2> rsu_positions(const ScenarioConfig& cfg);

}  // namespace v2x

#endif
