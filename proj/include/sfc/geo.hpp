#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "sfc/canonical.hpp"
#include "sfc/errors.hpp"

namespace sfc {

// Axis-aligned lat/lon bounding box in degrees. Arbitrary polygons are out
// of scope; a box is what the protocol records for a preservation parcel.
struct Parcel {
    double lat_min = 0;
    double lat_max = 0;
    double lon_min = 0;
    double lon_max = 0;

    void validate() const {
        if (!(lat_min < lat_max) || !(lon_min < lon_max))
            fail(Errc::invalid_parcel, "parcel bounds must satisfy min < max");
        if (lat_min < -90.0 || lat_max > 90.0)
            fail(Errc::invalid_parcel, "latitude out of [-90, 90]");
        if (lon_min < -180.0 || lon_max > 180.0)
            fail(Errc::invalid_parcel, "longitude out of [-180, 180]");
    }

    bool operator==(const Parcel&) const = default;

    static Parcel from_json(const Json& j) {
        for (const char* key : {"lat_min", "lat_max", "lon_min", "lon_max"})
            if (!j.contains(key) || !j.at(key).is_number())
                fail(Errc::invalid_parcel, std::string("parcel is missing numeric '") + key + "'");
        Parcel p{j.at("lat_min").get<double>(), j.at("lat_max").get<double>(),
                 j.at("lon_min").get<double>(), j.at("lon_max").get<double>()};
        p.validate();
        return p;
    }

    Json to_json() const {
        return Json{{"lat_min", lat_min}, {"lat_max", lat_max}, {"lon_min", lon_min}, {"lon_max", lon_max}};
    }
};

inline double interval_overlap(double a_lo, double a_hi, double b_lo, double b_hi) {
    return std::max(0.0, std::min(a_hi, b_hi) - std::max(a_lo, b_lo));
}

// Synthetic raster of vegetation fractions over a bounding box. Cells are
// row-major: row 0 borders lat_min (south), column 0 borders lon_min (west).
struct LandCoverGrid {
    Parcel bbox;
    std::uint32_t rows = 0;
    std::uint32_t cols = 0;
    std::vector<double> cells;  // vegetation fraction in [0, 1]
    std::int64_t epoch = 0;     // SimTime label of the snapshot

    void validate() const {
        bbox.validate();
        if (rows == 0 || cols == 0) fail(Errc::invalid_grid, "grid must have positive rows and cols");
        if (cells.size() != static_cast<std::size_t>(rows) * cols)
            fail(Errc::invalid_grid, "grid has " + std::to_string(cells.size()) + " cells, expected " +
                                         std::to_string(static_cast<std::size_t>(rows) * cols));
        for (double v : cells)
            if (!(v >= 0.0 && v <= 1.0)) fail(Errc::invalid_grid, "cell vegetation fraction outside [0, 1]");
    }

    double at(std::uint32_t row, std::uint32_t col) const {
        return cells[static_cast<std::size_t>(row) * cols + col];
    }

    double lat_edge(std::uint32_t row) const {
        return bbox.lat_min + (bbox.lat_max - bbox.lat_min) * row / rows;
    }
    double lon_edge(std::uint32_t col) const {
        return bbox.lon_min + (bbox.lon_max - bbox.lon_min) * col / cols;
    }

    bool same_extent(const LandCoverGrid& other) const {
        return bbox == other.bbox && rows == other.rows && cols == other.cols;
    }

    static LandCoverGrid from_json(const Json& j) {
        if (!j.is_object()) fail(Errc::invalid_grid, "grid must be a JSON object");
        for (const char* key : {"bbox", "rows", "cols", "cells", "epoch"})
            if (!j.contains(key)) fail(Errc::invalid_grid, std::string("grid is missing '") + key + "'");
        LandCoverGrid grid;
        grid.bbox = Parcel::from_json(j.at("bbox"));
        if (!j.at("rows").is_number_unsigned() || !j.at("cols").is_number_unsigned())
            fail(Errc::invalid_grid, "rows and cols must be positive integers");
        grid.rows = j.at("rows").get<std::uint32_t>();
        grid.cols = j.at("cols").get<std::uint32_t>();
        if (!j.at("cells").is_array()) fail(Errc::invalid_grid, "cells must be an array");
        for (const auto& cell : j.at("cells")) {
            if (!cell.is_number()) fail(Errc::invalid_grid, "cells must be numbers");
            grid.cells.push_back(cell.get<double>());
        }
        if (!j.at("epoch").is_number_integer())
            fail(Errc::invalid_grid, "epoch must be an integer day");
        grid.epoch = j.at("epoch").get<std::int64_t>();
        grid.validate();
        return grid;
    }

    Json to_json() const {
        return Json{{"bbox", bbox.to_json()}, {"rows", rows}, {"cols", cols}, {"cells", cells}, {"epoch", epoch}};
    }
};

// Geometric intersection area (degree^2) of one grid cell with the parcel.
inline double cell_parcel_overlap(const LandCoverGrid& grid, std::uint32_t row, std::uint32_t col,
                                  const Parcel& parcel) {
    double lat = interval_overlap(grid.lat_edge(row), grid.lat_edge(row + 1), parcel.lat_min, parcel.lat_max);
    double lon = interval_overlap(grid.lon_edge(col), grid.lon_edge(col + 1), parcel.lon_min, parcel.lon_max);
    return lat * lon;
}

// Ratio of area-weighted vegetation inside the parcel at t1 versus t0:
//
//   [sum_cells overlap_area * veg_t1] / [sum_cells overlap_area * veg_t0]
//
// May exceed 1 under regrowth; reported unclamped.
inline double preserved_fraction(const Parcel& parcel, const LandCoverGrid& grid_t0,
                                 const LandCoverGrid& grid_t1) {
    parcel.validate();
    grid_t0.validate();
    grid_t1.validate();
    if (!grid_t0.same_extent(grid_t1))
        fail(Errc::grid_mismatch, "snapshots must share bounding box and resolution");

    double total_overlap = 0.0;
    double weighted_t0 = 0.0;
    double weighted_t1 = 0.0;
    for (std::uint32_t row = 0; row < grid_t0.rows; ++row) {
        for (std::uint32_t col = 0; col < grid_t0.cols; ++col) {
            double area = cell_parcel_overlap(grid_t0, row, col, parcel);
            if (area <= 0.0) continue;
            total_overlap += area;
            weighted_t0 += area * grid_t0.at(row, col);
            weighted_t1 += area * grid_t1.at(row, col);
        }
    }
    if (total_overlap <= 0.0) fail(Errc::no_intersection, "parcel does not intersect the grid");
    if (weighted_t0 <= 0.0) fail(Errc::degenerate_parcel, "parcel had no vegetation at t0");
    return weighted_t1 / weighted_t0;
}

} // namespace sfc
