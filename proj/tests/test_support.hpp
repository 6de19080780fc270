#pragma once

// Shared test machinery: independent oracles the implementation is checked
// against (a naive reference ledger, a dense point-sampling estimate of the
// preserved fraction) plus deterministic random-case generators.

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "sfc/sfc.hpp"

namespace sfc::test {

inline TokenAmount amt(std::uint64_t units) { return TokenAmount::from_units(units); }

// Runs `fn`, expecting it to throw sfc::Error; returns the code.
template <typename Fn>
Errc errc_of(Fn&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    throw std::logic_error("expected sfc::Error, none was thrown");
}

// Naive map-based shadow ledger. Applies the same operation sequence as the
// engine with none of the engine's structure; used to cross-check balances
// and conservation after randomized runs.
struct ReferenceLedger {
    std::map<std::string, std::uint64_t> balances;
    std::uint64_t total_supply = 0;

    void mint(const std::string& fund, std::uint64_t units) {
        balances[fund] += units;
        total_supply += units;
    }
    void move(const std::string& from, const std::string& to, std::uint64_t units) {
        balances[from] -= units;
        balances[to] += units;
    }
    std::uint64_t sum() const {
        std::uint64_t s = 0;
        for (const auto& [id, units] : balances) s += units;
        return s;
    }
};

// Dense point-sampling estimate of the preserved fraction, independent of
// the analytic interval-clipping route. Samples an n-by-n midpoint lattice
// over the parcel; the per-axis counts are computed separately and combined,
// which for an axis-aligned grid is identical to classifying all n*n points.
inline double sampled_fraction(const Parcel& parcel, const LandCoverGrid& t0, const LandCoverGrid& t1,
                               std::uint64_t n_per_axis = 1'000'000) {
    const double lat_step = (parcel.lat_max - parcel.lat_min) / static_cast<double>(n_per_axis);
    const double lon_step = (parcel.lon_max - parcel.lon_min) / static_cast<double>(n_per_axis);

    std::vector<std::uint64_t> row_hits(t0.rows, 0);
    std::vector<std::uint64_t> col_hits(t0.cols, 0);

    const double lat_span = t0.bbox.lat_max - t0.bbox.lat_min;
    const double lon_span = t0.bbox.lon_max - t0.bbox.lon_min;
    for (std::uint64_t i = 0; i < n_per_axis; ++i) {
        double lat = parcel.lat_min + (static_cast<double>(i) + 0.5) * lat_step;
        if (lat <= t0.bbox.lat_min || lat >= t0.bbox.lat_max) continue;
        auto row = static_cast<std::uint32_t>((lat - t0.bbox.lat_min) / lat_span * t0.rows);
        if (row < t0.rows) ++row_hits[row];
    }
    for (std::uint64_t i = 0; i < n_per_axis; ++i) {
        double lon = parcel.lon_min + (static_cast<double>(i) + 0.5) * lon_step;
        if (lon <= t0.bbox.lon_min || lon >= t0.bbox.lon_max) continue;
        auto col = static_cast<std::uint32_t>((lon - t0.bbox.lon_min) / lon_span * t0.cols);
        if (col < t0.cols) ++col_hits[col];
    }

    double num = 0.0, den = 0.0;
    for (std::uint32_t r = 0; r < t0.rows; ++r) {
        for (std::uint32_t c = 0; c < t0.cols; ++c) {
            double weight = static_cast<double>(row_hits[r]) * static_cast<double>(col_hits[c]);
            den += weight * t0.at(r, c);
            num += weight * t1.at(r, c);
        }
    }
    return num / den;
}

// Literal 2D sampling (no separability shortcut); for small n only.
inline double sampled_fraction_2d(const Parcel& parcel, const LandCoverGrid& t0, const LandCoverGrid& t1,
                                  std::uint32_t n_per_axis = 1000) {
    const double lat_step = (parcel.lat_max - parcel.lat_min) / n_per_axis;
    const double lon_step = (parcel.lon_max - parcel.lon_min) / n_per_axis;
    const double lat_span = t0.bbox.lat_max - t0.bbox.lat_min;
    const double lon_span = t0.bbox.lon_max - t0.bbox.lon_min;
    double num = 0.0, den = 0.0;
    for (std::uint32_t i = 0; i < n_per_axis; ++i) {
        double lat = parcel.lat_min + (i + 0.5) * lat_step;
        if (lat <= t0.bbox.lat_min || lat >= t0.bbox.lat_max) continue;
        auto row = static_cast<std::uint32_t>((lat - t0.bbox.lat_min) / lat_span * t0.rows);
        if (row >= t0.rows) continue;
        for (std::uint32_t j = 0; j < n_per_axis; ++j) {
            double lon = parcel.lon_min + (j + 0.5) * lon_step;
            if (lon <= t0.bbox.lon_min || lon >= t0.bbox.lon_max) continue;
            auto col = static_cast<std::uint32_t>((lon - t0.bbox.lon_min) / lon_span * t0.cols);
            if (col >= t0.cols) continue;
            den += t0.at(row, col);
            num += t1.at(row, col);
        }
    }
    return num / den;
}

// Unit square grid with the given cells; rows*cols must match.
inline LandCoverGrid unit_grid(std::uint32_t rows, std::uint32_t cols, std::vector<double> cells,
                               std::int64_t epoch = 0) {
    LandCoverGrid grid;
    grid.bbox = Parcel{0.0, 1.0, 0.0, 1.0};
    grid.rows = rows;
    grid.cols = cols;
    grid.cells = std::move(cells);
    grid.epoch = epoch;
    grid.validate();
    return grid;
}

struct RandomGeoCase {
    Parcel parcel;
    LandCoverGrid grid_t0;
    LandCoverGrid grid_t1;
};

// Random grid pair on the unit square plus a parcel strictly inside it.
// t0 vegetation is kept >= 0.2 so the denominator stays well-conditioned.
inline RandomGeoCase random_geo_case(std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint32_t> dim(1, 6);
    std::uniform_real_distribution<double> veg0(0.2, 1.0);
    std::uniform_real_distribution<double> veg1(0.0, 1.0);
    std::uniform_real_distribution<double> coord(0.0, 1.0);

    RandomGeoCase out;
    std::uint32_t rows = dim(rng), cols = dim(rng);
    out.grid_t0.bbox = Parcel{0.0, 1.0, 0.0, 1.0};
    out.grid_t0.rows = rows;
    out.grid_t0.cols = cols;
    for (std::uint32_t i = 0; i < rows * cols; ++i) out.grid_t0.cells.push_back(veg0(rng));
    out.grid_t1 = out.grid_t0;
    for (auto& cell : out.grid_t1.cells) cell = veg1(rng);

    double a, b;
    do {
        a = coord(rng);
        b = coord(rng);
    } while (std::abs(a - b) < 0.05);
    out.parcel.lat_min = std::min(a, b);
    out.parcel.lat_max = std::max(a, b);
    do {
        a = coord(rng);
        b = coord(rng);
    } while (std::abs(a - b) < 0.05);
    out.parcel.lon_min = std::min(a, b);
    out.parcel.lon_max = std::max(a, b);
    return out;
}

} // namespace sfc::test
