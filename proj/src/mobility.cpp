#include "v2x/mobility.hpp"

#include <cmath>
#include <stdexcept>

namespace v2x {

namespace {

constexpr double kEps = 1e-9;

Heading turn_left(Heading h) {
    switch (h) {
        case Heading::PosX: return Heading::PosY;
        case Heading::PosY: return Heading::NegX;
        case Heading::NegX: return Heading::NegY;
        default: return Heading::PosX;
    }
}

Heading turn_right(Heading h) { return reverse(turn_left(h)); }

struct Street {
    bool horizontal;
    double offset;    // fixed coordinate, lattice multiple
    double half_len;  // chord half-length inside the circle
};

std::vector<Street> enumerate_streets(double spacing, double radius) {
    std::vector<Street> out;
    int kmax = static_cast<int>(std::floor(radius / spacing));
    for (int axis = 0; axis < 2; ++axis) {
        for (int k = -kmax; k <= kmax; ++k) {
            double off = k * spacing;
            double half = std::sqrt(std::max(0.0, radius * radius - off * off));
            if (half > kEps) out.push_back({axis == 0, off, half});
        }
    }
    return out;
}

}  // namespace

std::vector<VehicleKinematics> spawn_vehicles(const ScenarioConfig& cfg, RngStream& rng) {
    auto streets = enumerate_streets(cfg.grid_spacing, cfg.area_radius);
    double total = 0.0;
    for (const auto& s : streets) total += 2.0 * s.half_len;

    std::vector<VehicleKinematics> out;
    out.reserve(cfg.n_vehicles);
    for (int i = 0; i < cfg.n_vehicles; ++i) {
        double r = rng.uniform(0.0, total);
        const Street* chosen = &streets.back();
        for (const auto& s : streets) {
            double len = 2.0 * s.half_len;
            if (r < len) {
                chosen = &s;
                break;
            }
            r -= len;
        }
        double along = -chosen->half_len + rng.uniform(0.0, 2.0 * chosen->half_len);
        VehicleKinematics v;
        v.street_offset = chosen->offset;
        bool forward = rng.uniform() < 0.5;
        if (chosen->horizontal) {
            v.position = {along, chosen->offset};
            v.heading = forward ? Heading::PosX : Heading::NegX;
        } else {
            v.position = {chosen->offset, along};
            v.heading = forward ? Heading::PosY : Heading::NegY;
        }
        v.speed = rng.uniform(cfg.speed_min, cfg.speed_max);
        out.push_back(v);
    }
    return out;
}

VehicleKinematics step(const VehicleKinematics& vin, double dt, const GridLayout& layout, double p_straight,
                       RngStream& rng) {
    if (dt <= 0.0) throw std::invalid_argument("mobility step requires dt > 0");
    VehicleKinematics v = vin;
    double remaining = v.speed * dt;
    const double g = layout.grid_spacing;
    const double radius = layout.area_radius;

    // Iterate segment by segment: advance to the nearest of the next
    // intersection or the arena boundary, act there, repeat.
    int guard = 0;
    while (remaining > kEps && ++guard < 100000) {
        bool along_x = heading_is_x(v.heading);
        double cur = along_x ? v.position.x : v.position.y;
        double fixed = v.street_offset;
        int dir = heading_sign(v.heading);
        double chord = std::sqrt(std::max(0.0, radius * radius - fixed * fixed));
        double boundary = dir > 0 ? chord : -chord;

        // next lattice point strictly ahead of cur
        double kf = cur / g;
        int k = dir > 0 ? static_cast<int>(std::floor(kf + 1e-7)) + 1 : static_cast<int>(std::ceil(kf - 1e-7)) - 1;
        double next_int = k * g;
        bool int_inside = std::abs(next_int) <= chord + kEps;

        double dist_boundary = (boundary - cur) * dir;
        double dist_int = (next_int - cur) * dir;

        if (int_inside && dist_int <= dist_boundary + kEps) {
            if (remaining < dist_int - kEps) {
                cur += dir * remaining;
                remaining = 0.0;
            } else {
                cur = next_int;
                remaining -= dist_int;
                double u = rng.uniform();
                if (u >= p_straight) {
                    Heading nh = (u < p_straight + (1.0 - p_straight) * 0.5) ? turn_left(v.heading)
                                                                             : turn_right(v.heading);
                    // swap axes: the old travel coordinate becomes the new street offset
                    v.street_offset = next_int;
                    if (along_x) v.position = {next_int, fixed};
                    else v.position = {fixed, next_int};
                    v.heading = nh;
                    continue;
                }
            }
        } else {
            // no intersection before the boundary: reflect there (dead ends included)
            if (remaining < dist_boundary - kEps) {
                cur += dir * remaining;
                remaining = 0.0;
            } else {
                cur = boundary;
                remaining -= dist_boundary;
                v.heading = reverse(v.heading);
            }
        }
        if (along_x) v.position = {cur, fixed};
        else v.position = {fixed, cur};
    }
    return v;
}

std::vector<Vec2> rsu_positions(const ScenarioConfig& cfg) {
    std::vector<Vec2> out;
    const double g = cfg.grid_spacing;
    const double r = cfg.area_radius / 2.0;
    auto snap = [g](double x) { return std::round(x / g) * g; };
    for (int i = 0; i < cfg.n_rsu; ++i) {
        double ang = 2.0 * M_PI * i / std::max(1, cfg.n_rsu);
        out.push_back({snap(r * std::cos(ang)), snap(r * std::sin(ang))});
    }
    return out;
}

}  // namespace v2x
