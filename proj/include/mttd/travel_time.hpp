#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mttd/piecewise.hpp"

namespace mttd {

// Stepwise-constant travel speed over time zones. boundaries has one more
// entry than speeds; zone k covers [boundaries[k], boundaries[k+1]) and the
// last zone's speed extends past the final boundary indefinitely.
struct SpeedProfile {
    std::vector<double> boundaries;
    std::vector<double> speeds;

    void validate() const {
        if (speeds.empty() || boundaries.size() != speeds.size() + 1) {
            throw std::invalid_argument("SpeedProfile: boundaries must be speeds+1");
        }
        for (std::size_t k = 0; k + 1 < boundaries.size(); ++k) {
            if (boundaries[k + 1] <= boundaries[k]) {
                throw std::invalid_argument("SpeedProfile: boundaries not increasing");
            }
        }
        for (double s : speeds) {
            if (s <= 0.0) throw std::invalid_argument("SpeedProfile: nonpositive speed");
        }
    }

    std::size_t zone_index(double t) const {
        if (t >= boundaries[boundaries.size() - 2]) return speeds.size() - 1;
        std::size_t k = 0;
        while (k + 1 < speeds.size() && t >= boundaries[k + 1]) ++k;
        return k;
    }

    // Arrival time when departing at t and driving `dist`, rolling over zone
    // boundaries at the zone speeds.
    double drive(double dist, double t) const {
        double remaining = dist;
        double cur = t;
        std::size_t k = zone_index(cur);
        while (true) {
            const double s = speeds[k];
            const double eta = cur + remaining / s;
            if (k + 1 >= speeds.size() || eta <= boundaries[k + 1]) return eta;
            remaining -= s * (boundaries[k + 1] - cur);
            cur = boundaries[k + 1];
            ++k;
        }
    }

    // Departure time whose drive over `dist` arrives exactly at `arrival`.
    // Integrates backward; may return a time before the first boundary, in
    // which case the first zone's speed is extended leftward (callers drop
    // such preimages).
    double drive_back(double dist, double arrival) const {
        double remaining = dist;
        double cur = arrival;
        std::size_t k = zone_index(cur);
        // zone_index uses departure convention; arrivals exactly on a
        // boundary belong to the zone they end.
        while (k > 0 && cur <= boundaries[k]) --k;
        while (true) {
            const double s = speeds[k];
            const double start = cur - remaining / s;
            if (k == 0 || start >= boundaries[k]) return start;
            remaining -= s * (cur - boundaries[k]);
            cur = boundaries[k];
            --k;
        }
    }

    // Duration-weighted mean speed over the profile span.
    double mean_speed() const {
        double num = 0.0, den = 0.0;
        for (std::size_t k = 0; k < speeds.size(); ++k) {
            const double w = boundaries[k + 1] - boundaries[k];
            num += speeds[k] * w;
            den += w;
        }
        return num / den;
    }
};

// Piecewise-linear map from departure time to travel time on one arc. FIFO
// holds by construction: every slope is > -1, so t + tau(t) is strictly
// increasing.
class TravelTimeFn {
  public:
    TravelTimeFn() = default;
    TravelTimeFn(PiecewiseLinear fn, double dist) : fn_(std::move(fn)), dist_(dist) {}

    double eval(double t) const { return fn_.eval(t); }
    double distance() const { return dist_; }
    const PiecewiseLinear& fn() const { return fn_; }

    // arrival(t) = t + tau(t)
    double arrival(double t) const { return t + fn_.eval(t); }

    std::size_t breakpoint_count() const { return fn_.breakpoint_count(); }

  private:
    PiecewiseLinear fn_;
    double dist_ = 0.0;
};

// tau breakpoints sit at the zone boundaries themselves plus the departure
// times whose arrival lands exactly on a boundary; between consecutive
// candidates the arrival map is affine.
inline TravelTimeFn build_travel_time(double dist, const SpeedProfile& profile) {
    if (dist < 0.0) throw std::invalid_argument("build_travel_time: negative distance");
    profile.validate();
    const double lo = profile.boundaries.front();
    if (dist == 0.0) {
        return TravelTimeFn(PiecewiseLinear({lo}, {0.0}, 0.0), 0.0);
    }
    std::vector<double> xs;
    for (double b : profile.boundaries) {
        if (b >= lo) xs.push_back(b);
        const double pre = profile.drive_back(dist, b);
        if (pre >= lo) xs.push_back(pre);
    }
    xs.push_back(lo);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end(),
                         [](double a, double b) { return std::abs(a - b) <= kBreakpointEps; }),
             xs.end());
    std::vector<double> ys;
    ys.reserve(xs.size());
    for (double x : xs) ys.push_back(profile.drive(dist, x) - x);
    PiecewiseLinear fn(std::move(xs), std::move(ys), 0.0);
    fn.prune_collinear();
    return TravelTimeFn(std::move(fn), dist);
}

// Departure at i -> earliest departure-ready time at j: f(t) = t + tau(t) + W_j.
// Strictly increasing, hence invertible on its range.
class ReadyTimeFn {
  public:
    ReadyTimeFn() = default;
    explicit ReadyTimeFn(PiecewiseLinear fn) : fn_(std::move(fn)) {}

    ReadyTimeFn(const TravelTimeFn& tau, double service_at_dest) {
        std::vector<double> xs = tau.fn().breakpoints();
        std::vector<double> ys;
        ys.reserve(xs.size());
        for (std::size_t k = 0; k < xs.size(); ++k) {
            ys.push_back(xs[k] + tau.fn().values()[k] + service_at_dest);
        }
        const double tail = 1.0 + tau.fn().slope_in_segment(xs.size() - 1);
        fn_ = PiecewiseLinear(std::move(xs), std::move(ys), tail);
    }

    double eval(double t) const { return fn_.eval(t); }
    double domain_start() const { return fn_.domain_start(); }
    double range_start() const { return fn_.values().front(); }
    const PiecewiseLinear& fn() const { return fn_; }

    // Departure time at the tail node given a required ready time at the
    // head node. Errors below range: no departure can be that early.
    double invert(double y) const {
        auto t = fn_.inverse(y);
        if (!t) throw std::domain_error("ReadyTimeFn: no feasible departure for requested ready time");
        return *t;
    }

    std::optional<double> try_invert(double y) const { return fn_.inverse(y); }
};

inline ReadyTimeFn compose_ready(const ReadyTimeFn& f_ab, const ReadyTimeFn& f_bc) {
    return ReadyTimeFn(PiecewiseLinear::compose(f_bc.fn(), f_ab.fn()));
}

}  // namespace mttd
