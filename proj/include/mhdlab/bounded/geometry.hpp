// Model geometries for the bounded-domain program. Closed-form Neumann
// spectra make every downstream quantity independently checkable:
//   interval(0,pi)            - every mode has vanishing boundary gradient
//   channel [0,2pi]p x [0,pi] - tangential modes generate wall layers
//   rectangle [0,pi]^2        - all modes carry boundary gradient
#pragma once

#include <numbers>
#include <stdexcept>
#include <string>

namespace mhdlab {

enum class GeometryKind { interval, channel, rectangle };

struct Geometry {
    GeometryKind kind = GeometryKind::channel;
    int wall_nodes = 128; // Chebyshev polynomial degree for wall-normal solves

    static Geometry interval(int nodes = 128) { return {GeometryKind::interval, nodes}; }
    static Geometry channel(int nodes = 128) { return {GeometryKind::channel, nodes}; }
    static Geometry rectangle(int nodes = 128) { return {GeometryKind::rectangle, nodes}; }

    std::string name() const {
        switch (kind) {
            case GeometryKind::interval: return "interval";
            case GeometryKind::channel: return "channel";
            case GeometryKind::rectangle: return "rectangle";
        }
        return "?";
    }

    static Geometry parse(const std::string& s, int nodes = 128) {
        if (s == "interval") return interval(nodes);
        if (s == "channel") return channel(nodes);
        if (s == "rectangle") return rectangle(nodes);
        throw std::invalid_argument("unknown geometry '" + s + "'");
    }
};

} // namespace mhdlab
