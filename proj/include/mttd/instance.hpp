#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mttd/travel_time.hpp"

namespace mttd {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

inline double euclidean(const Point& a, const Point& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

enum class VehicleType : int { Fuel = 1, Aev = 2 };

struct Customer {
    int id = 0;  // 1-based
    double demand = 0.0;
    Point home;
    Point sdl;
    double e_home = 0.0, l_home = 0.0;
    double e_sdl = 0.0, l_sdl = 0.0;
    double service_home = 0.0;
    double service_sdl = 0.0;
    bool accepts_aev = false;
    bool accepts_sdl = false;

    friend bool operator==(const Customer&, const Customer&) = default;
};

struct FleetSpec {
    VehicleType type = VehicleType::Fuel;
    int count = 0;
    double capacity = 0.0;
    double fixed_cost = 0.0;
    // Fuel vehicles: driver working-time cap. AEVs: battery range cap.
    double max_duration = kInfinity;
    double max_distance = kInfinity;

    friend bool operator==(const FleetSpec&, const FleetSpec&) = default;
};

struct TimeWindow {
    double earliest = 0.0;
    double latest = 0.0;

    friend bool operator==(const TimeWindow&, const TimeWindow&) = default;
};

class ValidationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// How arc speed profiles were assigned; kept so serialization round-trips.
struct ProfileAssignment {
    enum class Mode { Uniform, RandomClasses, Matrix };
    Mode mode = Mode::Uniform;
    int uniform_profile = 0;
    std::vector<int> class_profiles;  // RandomClasses pool
    std::uint64_t seed = 0;
    std::vector<std::uint16_t> matrix;  // Matrix mode, row-major (2n+2)^2

    friend bool operator==(const ProfileAssignment&, const ProfileAssignment&) = default;
};

// Immutable problem datum. Nodes are indexed 0 (origin depot), 1..n
// (delivery/home), n+1..2n (SDL, paired i <-> i+n), 2n+1 (destination
// depot, colocated with the origin unless a distance matrix says otherwise).
class Instance {
  public:
    struct Data {
        std::vector<Customer> customers;
        TimeWindow depot_window;
        Point depot;
        std::vector<FleetSpec> fleets;
        std::vector<SpeedProfile> profiles;
        ProfileAssignment assignment;
        std::optional<std::vector<double>> distance_matrix;  // row-major (2n+2)^2
        std::string name;
    };

    explicit Instance(Data data) : d_(std::move(data)) {
        validate();
        materialize_profiles();
        build_travel_cache();
    }

    const std::string& name() const { return d_.name; }
    int num_customers() const { return static_cast<int>(d_.customers.size()); }
    int num_nodes() const { return 2 * num_customers() + 2; }
    int origin() const { return 0; }
    int destination() const { return num_nodes() - 1; }
    const TimeWindow& depot_window() const { return d_.depot_window; }
    double horizon_end() const { return d_.depot_window.latest; }
    const std::vector<Customer>& customers() const { return d_.customers; }
    const Customer& customer(int id) const { return d_.customers[static_cast<std::size_t>(id - 1)]; }
    const std::vector<SpeedProfile>& profiles() const { return d_.profiles; }
    const ProfileAssignment& profile_assignment() const { return d_.assignment; }
    const Data& data() const { return d_; }

    bool is_delivery(int node) const { return node >= 1 && node <= num_customers(); }
    bool is_sdl(int node) const { return node > num_customers() && node < destination(); }
    bool is_depot(int node) const { return node == origin() || node == destination(); }

    // Customer id behind a delivery or SDL node.
    int customer_of(int node) const { return is_sdl(node) ? node - num_customers() : node; }
    int paired_node(int node) const {
        return is_sdl(node) ? node - num_customers() : node + num_customers();
    }
    int home_node(int customer_id) const { return customer_id; }
    int sdl_node(int customer_id) const { return customer_id + num_customers(); }

    Point node_coord(int node) const {
        if (is_depot(node)) return d_.depot;
        const Customer& c = customer(customer_of(node));
        return is_sdl(node) ? c.sdl : c.home;
    }

    // Service-start window. The destination depot is open-ended above: the
    // objective already charges lateness through duration.
    TimeWindow node_window(int node) const {
        if (node == origin()) return d_.depot_window;
        if (node == destination()) return {d_.depot_window.earliest, kInfinity};
        const Customer& c = customer(customer_of(node));
        return is_sdl(node) ? TimeWindow{c.e_sdl, c.l_sdl} : TimeWindow{c.e_home, c.l_home};
    }

    double node_service(int node) const {
        if (is_depot(node)) return 0.0;
        const Customer& c = customer(customer_of(node));
        return is_sdl(node) ? c.service_sdl : c.service_home;
    }

    double node_demand(int node) const {
        return is_depot(node) ? 0.0 : customer(customer_of(node)).demand;
    }

    bool arc_exists(int i, int j) const {
        return i != j && i != destination() && j != origin();
    }

    double distance(int i, int j) const {
        if (d_.distance_matrix) {
            return (*d_.distance_matrix)[static_cast<std::size_t>(i) * num_nodes() + j];
        }
        return euclidean(node_coord(i), node_coord(j));
    }

    const FleetSpec& fleet(VehicleType t) const {
        for (const auto& f : d_.fleets) {
            if (f.type == t) return f;
        }
        static const FleetSpec empty_fuel{VehicleType::Fuel, 0, 0.0, 0.0, kInfinity, kInfinity};
        static const FleetSpec empty_aev{VehicleType::Aev, 0, 0.0, 0.0, kInfinity, kInfinity};
        return t == VehicleType::Fuel ? empty_fuel : empty_aev;
    }

    int total_vehicles() const { return fleet(VehicleType::Fuel).count + fleet(VehicleType::Aev).count; }

    int profile_of_arc(int i, int j) const {
        return arc_profile_[static_cast<std::size_t>(i) * num_nodes() + j];
    }

    const TravelTimeFn& travel(int i, int j) const {
        return travel_[static_cast<std::size_t>(i) * num_nodes() + j];
    }

    // Ready-time map of arc (i, j): departure at i -> earliest departure at
    // j, service at j included.
    const ReadyTimeFn& ready(int i, int j) const {
        return ready_[static_cast<std::size_t>(i) * num_nodes() + j];
    }

    double mean_speed(int i, int j) const {
        return d_.profiles[static_cast<std::size_t>(profile_of_arc(i, j))].mean_speed();
    }

    bool operator==(const Instance& other) const {
        return d_.customers == other.d_.customers && d_.depot_window == other.d_.depot_window &&
               d_.depot == other.d_.depot && d_.fleets == other.d_.fleets &&
               profiles_equal(other) && d_.assignment == other.d_.assignment &&
               d_.distance_matrix == other.d_.distance_matrix && d_.name == other.d_.name;
    }

  private:
    bool profiles_equal(const Instance& other) const {
        if (d_.profiles.size() != other.d_.profiles.size()) return false;
        for (std::size_t k = 0; k < d_.profiles.size(); ++k) {
            if (d_.profiles[k].boundaries != other.d_.profiles[k].boundaries ||
                d_.profiles[k].speeds != other.d_.profiles[k].speeds) {
                return false;
            }
        }
        return true;
    }

    void validate() const {
        const auto& dw = d_.depot_window;
        if (!(dw.earliest <= dw.latest)) throw ValidationError("meta: depot window inverted");
        if (d_.profiles.empty()) throw ValidationError("profiles: at least one profile required");
        for (std::size_t p = 0; p < d_.profiles.size(); ++p) {
            try {
                d_.profiles[p].validate();
            } catch (const std::exception& e) {
                throw ValidationError("profile " + std::to_string(p) + ": " + e.what());
            }
            if (d_.profiles[p].boundaries.front() > dw.earliest ||
                d_.profiles[p].boundaries.back() < dw.latest) {
                throw ValidationError("profile " + std::to_string(p) +
                                      ": zones do not cover the planning horizon");
            }
        }
        int expected = 1;
        for (const auto& c : d_.customers) {
            const std::string who = "customer " + std::to_string(c.id);
            if (c.id != expected++) throw ValidationError(who + ": ids must be 1..n in order");
            if (c.demand < 0.0) throw ValidationError(who + ": negative demand");
            if (c.service_home < 0.0 || c.service_sdl < 0.0) {
                throw ValidationError(who + ": negative service time");
            }
            if (c.e_home > c.l_home) throw ValidationError(who + ": home window inverted (e > l)");
            if (c.e_sdl > c.l_sdl) throw ValidationError(who + ": sdl window inverted (e > l)");
            if (c.e_home < dw.earliest || c.l_home > dw.latest) {
                throw ValidationError(who + ": home window outside planning horizon");
            }
            if (c.e_sdl < dw.earliest || c.l_sdl > dw.latest) {
                throw ValidationError(who + ": sdl window outside planning horizon");
            }
        }
        bool seen[3] = {false, false, false};
        for (const auto& f : d_.fleets) {
            const int t = static_cast<int>(f.type);
            if (t != 1 && t != 2) throw ValidationError("fleets: vehicle type must be 1 or 2");
            if (seen[t]) throw ValidationError("fleets: duplicate entry for type " + std::to_string(t));
            seen[t] = true;
            if (f.count < 0) throw ValidationError("fleets: negative count");
            if (f.capacity < 0.0) throw ValidationError("fleets: negative capacity");
            if (f.type == VehicleType::Fuel && f.max_duration <= 0.0) {
                throw ValidationError("fleets: max_duration must be positive for type 1");
            }
            if (f.type == VehicleType::Aev && f.max_distance <= 0.0) {
                throw ValidationError("fleets: max_distance must be positive for type 2");
            }
        }
        const std::size_t nn = static_cast<std::size_t>(2 * d_.customers.size() + 2);
        if (d_.distance_matrix && d_.distance_matrix->size() != nn * nn) {
            throw ValidationError("distance_matrix: wrong dimension");
        }
        if (d_.distance_matrix) {
            for (double v : *d_.distance_matrix) {
                if (v < 0.0) throw ValidationError("distance_matrix: negative entry");
            }
        }
        if (d_.assignment.mode == ProfileAssignment::Mode::Matrix &&
            d_.assignment.matrix.size() != nn * nn) {
            throw ValidationError("assignment: profile matrix has wrong dimension");
        }
        const int np = static_cast<int>(d_.profiles.size());
        if (d_.assignment.mode == ProfileAssignment::Mode::Uniform &&
            (d_.assignment.uniform_profile < 0 || d_.assignment.uniform_profile >= np)) {
            throw ValidationError("assignment: profile index out of range");
        }
        for (int p : d_.assignment.class_profiles) {
            if (p < 0 || p >= np) throw ValidationError("assignment: class profile index out of range");
        }
        for (std::uint16_t p : d_.assignment.matrix) {
            if (p >= d_.profiles.size()) throw ValidationError("assignment: matrix profile index out of range");
        }
    }

    void materialize_profiles() {
        const std::size_t nn = static_cast<std::size_t>(num_nodes());
        arc_profile_.assign(nn * nn, 0);
        switch (d_.assignment.mode) {
            case ProfileAssignment::Mode::Uniform:
                std::fill(arc_profile_.begin(), arc_profile_.end(),
                          static_cast<std::uint16_t>(d_.assignment.uniform_profile));
                break;
            case ProfileAssignment::Mode::Matrix:
                arc_profile_ = d_.assignment.matrix;
                break;
            case ProfileAssignment::Mode::RandomClasses: {
                if (d_.assignment.class_profiles.empty()) {
                    throw ValidationError("assignment: random mode needs a profile pool");
                }
                // splitmix64 per arc keyed on (seed, i, j): reproducible and
                // order-independent.
                for (std::size_t i = 0; i < nn; ++i) {
                    for (std::size_t j = 0; j < nn; ++j) {
                        std::uint64_t z = d_.assignment.seed + 0x9e3779b97f4a7c15ULL * (i * nn + j + 1);
                        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
                        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
                        z ^= z >> 31;
                        const auto pick = d_.assignment.class_profiles[z % d_.assignment.class_profiles.size()];
                        arc_profile_[i * nn + j] = static_cast<std::uint16_t>(pick);
                    }
                }
                break;
            }
        }
    }

    void build_travel_cache() {
        const int nn = num_nodes();
        travel_.resize(static_cast<std::size_t>(nn) * nn);
        ready_.resize(static_cast<std::size_t>(nn) * nn);
        for (int i = 0; i < nn; ++i) {
            for (int j = 0; j < nn; ++j) {
                if (!arc_exists(i, j)) continue;
                const std::size_t at = static_cast<std::size_t>(i) * nn + j;
                travel_[at] = build_travel_time(distance(i, j),
                                                d_.profiles[static_cast<std::size_t>(profile_of_arc(i, j))]);
                ready_[at] = ReadyTimeFn(travel_[at], node_service(j));
            }
        }
    }

    Data d_;
    std::vector<std::uint16_t> arc_profile_;
    std::vector<TravelTimeFn> travel_;
    std::vector<ReadyTimeFn> ready_;
};

}  // namespace mttd
