#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace lssim {

/// Thrown for invalid configuration or arguments (maps to CLI exit code 2).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown for failures during a run (maps to CLI exit code 1).
class SimError : public std::runtime_error {
public:
    explicit SimError(const std::string& what) : std::runtime_error(what) {}
};

/// Surface-code distance. Must be odd and at least 3.
struct Distance {
    int value = 3;

    Distance() = default;
    explicit Distance(int v) : value(v) {
        if (v < 3 || v % 2 == 0)
            throw ConfigError("code distance must be odd and >= 3, got " + std::to_string(v));
    }

    bool operator==(const Distance&) const = default;
};

enum class CellRole : std::uint8_t { Data, Ancilla, Pool, Factory };

enum class LayoutKind : std::uint8_t { OneLayerD, TwoLayerDD, TwoLayerDP, Bypass };

enum class PatternKind : std::uint8_t { Sparse25, Dense44, Dense50 };

/// Data-cell arrangement pattern plus region shape. `wide` is only meaningful
/// for the Bypass layout; wide_height is the interior pattern height in cells
/// (excluding the ancilla frame), 0 selects the height optimizer.
struct ArrangementPattern {
    PatternKind kind = PatternKind::Dense44;
    bool wide = false;
    int wide_height = 0;

    bool operator==(const ArrangementPattern&) const = default;
};

struct Coord {
    int row = 0;
    int col = 0;

    auto operator<=>(const Coord&) const = default;
};

/// Cell reference on a layered plane.
struct CellRef {
    int layer = 0;
    int row = 0;
    int col = 0;

    auto operator<=>(const CellRef&) const = default;
};

const char* to_string(CellRole role);
const char* to_string(LayoutKind layout);
const char* to_string(PatternKind kind);

LayoutKind layout_from_string(const std::string& s);
PatternKind pattern_from_string(const std::string& s);

/// Nominal data-cell ratio a pattern converges to as the region grows.
double nominal_r_data(PatternKind kind);

} // namespace lssim
