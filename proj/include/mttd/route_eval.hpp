#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "mttd/instance.hpp"

namespace mttd {

enum class Infeasibility {
    None,
    BadStructure,
    Capacity,
    SdlRefused,
    AevRefused,
    DuplicateCustomer,
    Range,
    TimeWindow,
    WorkingHours,
};

inline const char* to_string(Infeasibility r) {
    switch (r) {
        case Infeasibility::None: return "none";
        case Infeasibility::BadStructure: return "bad-structure";
        case Infeasibility::Capacity: return "capacity";
        case Infeasibility::SdlRefused: return "sdl-refused";
        case Infeasibility::AevRefused: return "aev-refused";
        case Infeasibility::DuplicateCustomer: return "duplicate-customer";
        case Infeasibility::Range: return "range";
        case Infeasibility::TimeWindow: return "time-window";
        case Infeasibility::WorkingHours: return "working-hours";
    }
    return "?";
}

// One vehicle's trip. `nodes` holds the interior visits (delivery or SDL
// node ids); the origin and destination depots are implicit.
struct Route {
    VehicleType type = VehicleType::Fuel;
    int vehicle_index = 0;
    std::vector<int> nodes;

    bool empty() const { return nodes.empty(); }

    friend bool operator==(const Route&, const Route&) = default;
};

struct EvalResult {
    bool feasible = false;
    Infeasibility reason = Infeasibility::None;
    double departure_time = 0.0;
    double min_duration = 0.0;
    double total_distance = 0.0;
    double load = 0.0;
    // Surviving depot-level breakpoints; the optimal departure is one of them.
    std::vector<double> depot_breakpoints;
};

struct StaticVerdict {
    bool ok = true;
    Infeasibility reason = Infeasibility::None;
    double load = 0.0;
    double distance = 0.0;
};

// Node-based requirements: capacity, customer preferences, pairing
// uniqueness, and the AEV range bound (inclusive).
inline StaticVerdict check_static(const Instance& inst, const Route& route) {
    StaticVerdict v;
    const FleetSpec& fleet = inst.fleet(route.type);
    std::vector<bool> seen(static_cast<std::size_t>(inst.num_customers()) + 1, false);
    int prev = inst.origin();
    for (int node : route.nodes) {
        if (node < 1 || node >= inst.destination() || inst.is_depot(node)) {
            return {false, Infeasibility::BadStructure, 0.0, 0.0};
        }
        const int cid = inst.customer_of(node);
        if (seen[static_cast<std::size_t>(cid)]) {
            return {false, Infeasibility::DuplicateCustomer, 0.0, 0.0};
        }
        seen[static_cast<std::size_t>(cid)] = true;
        const Customer& c = inst.customer(cid);
        if (inst.is_sdl(node) && !c.accepts_sdl) {
            return {false, Infeasibility::SdlRefused, 0.0, 0.0};
        }
        if (route.type == VehicleType::Aev && !c.accepts_aev) {
            return {false, Infeasibility::AevRefused, 0.0, 0.0};
        }
        v.load += c.demand;
        v.distance += inst.distance(prev, node);
        prev = node;
    }
    v.distance += inst.distance(prev, inst.destination());
    if (v.load > fleet.capacity + 1e-9) {
        return {false, Infeasibility::Capacity, v.load, v.distance};
    }
    if (route.type == VehicleType::Aev && v.distance > fleet.max_distance + 1e-9) {
        return {false, Infeasibility::Range, v.load, v.distance};
    }
    return v;
}

namespace detail {

// Departure-level window of a node: service must start inside
// [e, l], so the vehicle leaves inside [e + s, l + s].
inline TimeWindow departure_window(const Instance& inst, int node) {
    const TimeWindow w = inst.node_window(node);
    const double s = inst.node_service(node);
    return {w.earliest + s, w.latest == kInfinity ? kInfinity : w.latest + s};
}

}  // namespace detail

// Backward propagation tightens the feasible depot-departure interval and
// collects the breakpoint set; forward propagation evaluates the route
// duration at every surviving depot breakpoint and keeps the earliest
// minimizer. Requires check_static to have passed.
inline EvalResult evaluate_temporal(const Instance& inst, const Route& route) {
    EvalResult res;
    {
        StaticVerdict sv;
        int prev = inst.origin();
        for (int node : route.nodes) {
            sv.load += inst.node_demand(node);
            sv.distance += inst.distance(prev, node);
            prev = node;
        }
        sv.distance += inst.distance(prev, inst.destination());
        res.load = sv.load;
        res.total_distance = sv.distance;
    }

    std::vector<int> seq;
    seq.reserve(route.nodes.size() + 2);
    seq.push_back(inst.origin());
    seq.insert(seq.end(), route.nodes.begin(), route.nodes.end());
    seq.push_back(inst.destination());
    const std::size_t v = seq.size() - 1;

    // Backward pass, all quantities at the departure level of the node
    // currently processed.
    double latest = kInfinity;
    double earliest = inst.depot_window().earliest;
    std::vector<double> bps;
    for (std::size_t idx = v; idx-- > 0;) {
        const int node = seq[idx];
        const int next = seq[idx + 1];
        const ReadyTimeFn& f = inst.ready(node, next);
        const TimeWindow own = detail::departure_window(inst, node);

        double latest_pull = kInfinity;
        if (latest != kInfinity) {
            auto t = f.try_invert(latest);
            if (!t) {
                res.feasible = false;
                res.reason = Infeasibility::TimeWindow;
                return res;
            }
            latest_pull = *t;
        }
        const double new_latest = std::min(latest_pull, own.latest);
        if (own.earliest > new_latest + kBreakpointEps) {
            res.feasible = false;
            res.reason = Infeasibility::TimeWindow;
            return res;
        }

        double earliest_pull = -kInfinity;
        if (earliest > f.range_start()) {
            earliest_pull = f.invert(earliest);
        }
        double new_earliest = std::max(earliest_pull, own.earliest);
        new_earliest = std::min(new_earliest, new_latest);

        // Pull inherited breakpoints through the leg, add the leg's own arc
        // breakpoints and this node's window kinks, prune to the interval.
        std::vector<double> pulled;
        pulled.reserve(bps.size() + f.fn().breakpoint_count() + 2);
        for (double bp : bps) {
            if (auto t = f.try_invert(bp)) pulled.push_back(*t);
        }
        for (double bp : f.fn().breakpoints()) pulled.push_back(bp);
        pulled.push_back(own.earliest);
        if (own.latest != kInfinity) pulled.push_back(own.latest);
        bps.clear();
        for (double bp : pulled) {
            if (bp >= new_earliest - kBreakpointEps && bp <= new_latest + kBreakpointEps) {
                bps.push_back(std::clamp(bp, new_earliest, new_latest));
            }
        }
        latest = new_latest;
        earliest = new_earliest;
    }

    bps.push_back(earliest);
    if (latest != kInfinity) bps.push_back(latest);
    std::sort(bps.begin(), bps.end());
    bps.erase(std::unique(bps.begin(), bps.end(),
                          [](double a, double b) { return std::abs(a - b) <= kBreakpointEps; }),
              bps.end());

    // Forward pass over the surviving depot breakpoints. Ascending scan with
    // strict improvement keeps the earliest optimal departure.
    double best_duration = kInfinity;
    double best_departure = earliest;
    for (double bp : bps) {
        double t = bp;
        bool ok = true;
        for (std::size_t k = 0; k + 1 < seq.size(); ++k) {
            const ReadyTimeFn& f = inst.ready(seq[k], seq[k + 1]);
            const TimeWindow next_win = detail::departure_window(inst, seq[k + 1]);
            const double ready = f.eval(t);
            if (ready > next_win.latest + 1e-7) {
                ok = false;
                break;
            }
            t = std::max(ready, next_win.earliest);
        }
        if (!ok) continue;
        const double duration = t - bp;
        if (duration < best_duration - kBreakpointEps) {
            best_duration = duration;
            best_departure = bp;
        }
    }
    if (best_duration == kInfinity) {
        res.feasible = false;
        res.reason = Infeasibility::TimeWindow;
        return res;
    }

    const FleetSpec& fleet = inst.fleet(route.type);
    if (route.type == VehicleType::Fuel && best_duration > fleet.max_duration + 1e-9) {
        res.feasible = false;
        res.reason = Infeasibility::WorkingHours;
        return res;
    }

    res.feasible = true;
    res.reason = Infeasibility::None;
    res.departure_time = best_departure;
    res.min_duration = best_duration;
    res.depot_breakpoints = std::move(bps);
    return res;
}

// Static checks plus temporal evaluation in one call.
inline EvalResult evaluate_route(const Instance& inst, const Route& route) {
    const StaticVerdict sv = check_static(inst, route);
    if (!sv.ok) {
        EvalResult res;
        res.feasible = false;
        res.reason = sv.reason;
        res.load = sv.load;
        res.total_distance = sv.distance;
        return res;
    }
    return evaluate_temporal(inst, route);
}

// Objective contribution of one route: minimal duration plus the vehicle's
// fixed cost when it actually serves someone. An unused vehicle (empty
// route) contributes nothing.
inline double route_cost(const EvalResult& result, bool serves_customers, const FleetSpec& fleet) {
    if (!result.feasible) throw std::logic_error("route_cost: infeasible route");
    if (!serves_customers) return 0.0;
    return result.min_duration + fleet.fixed_cost;
}

}  // namespace mttd
