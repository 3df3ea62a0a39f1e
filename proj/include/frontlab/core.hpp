#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace frontlab {

// Named error conditions. Everything downstream throws one of these.
struct SingularSystem : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NonConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct WindowOutOfRange : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct CFLViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NoFront : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InsufficientData : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct GridMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SandwichViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct StiffnessFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct WindowEmpty : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Frame { lab, moving, selfsimilar };

inline const char* frame_name(Frame f) {
    switch (f) {
        case Frame::lab: return "lab";
        case Frame::moving: return "moving";
        default: return "selfsimilar";
    }
}

/// Uniform 1D grid with n cells (n+1 points).
struct Grid1D {
    double x_min = 0.0;
    double x_max = 1.0;
    std::size_t n = 2;  // cell count; points = n+1

    Grid1D() = default;
    Grid1D(double a, double b, std::size_t cells) : x_min(a), x_max(b), n(cells) {
        if (!(x_min < x_max)) throw ConfigError("Grid1D: x_min must be < x_max");
        if (n < 2) throw ConfigError("Grid1D: need n >= 2");
    }
    static Grid1D with_spacing(double a, double b, double h) {
        auto cells = static_cast<std::size_t>(std::llround((b - a) / h));
        return Grid1D(a, a + static_cast<double>(cells) * h, cells);
    }
    double h() const { return (x_max - x_min) / static_cast<double>(n); }
    std::size_t points() const { return n + 1; }
    double point(std::size_t i) const { return x_min + static_cast<double>(i) * h(); }
    std::vector<double> coords() const {
        std::vector<double> xs(points());
        for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = point(i);
        return xs;
    }
    /// Index of the last grid point <= x (clamped to valid range).
    std::size_t floor_index(double x) const {
        double s = (x - x_min) / h();
        if (s <= 0.0) return 0;
        auto i = static_cast<std::size_t>(s);
        return i >= n ? n - 1 : i;
    }
    bool operator==(const Grid1D& o) const {
        return x_min == o.x_min && x_max == o.x_max && n == o.n;
    }
};

struct Grid2D {
    Grid1D gx;  // x-axis
    Grid1D gy;  // y-axis
    std::size_t points() const { return gx.points() * gy.points(); }
    bool operator==(const Grid2D& o) const { return gx == o.gx && gy == o.gy; }
};

struct Field1D {
    Grid1D grid;
    std::vector<double> values;
    Frame frame = Frame::lab;

    Field1D() = default;
    Field1D(const Grid1D& g, Frame f = Frame::lab)
        : grid(g), values(g.points(), 0.0), frame(f) {}
    double& operator[](std::size_t i) { return values[i]; }
    double operator[](std::size_t i) const { return values[i]; }
    std::size_t size() const { return values.size(); }
};

/// 2D field; values stored row-major with y as the slow index
/// (row iy = contiguous x-line).
struct Field2D {
    Grid2D grid;
    std::vector<double> values;
    Frame frame = Frame::lab;

    Field2D() = default;
    Field2D(const Grid2D& g, Frame f = Frame::lab)
        : grid(g), values(g.points(), 0.0), frame(f) {}
    std::size_t nx() const { return grid.gx.points(); }
    std::size_t ny() const { return grid.gy.points(); }
    double& at(std::size_t ix, std::size_t iy) { return values[iy * nx() + ix]; }
    double at(std::size_t ix, std::size_t iy) const { return values[iy * nx() + ix]; }
    double* row(std::size_t iy) { return values.data() + iy * nx(); }
    const double* row(std::size_t iy) const { return values.data() + iy * nx(); }
    /// Copy of one y-row as a Field1D on the x-grid.
    Field1D row_field(std::size_t iy) const {
        Field1D f(grid.gx, frame);
        const double* r = row(iy);
        std::copy(r, r + nx(), f.values.begin());
        return f;
    }
};

inline bool all_finite(const std::vector<double>& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

}  // namespace frontlab
