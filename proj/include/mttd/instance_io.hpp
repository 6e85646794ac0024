#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "mttd/instance.hpp"

namespace mttd {

// Instance files are JSON documents with sections `meta`, `fleets`,
// `profiles`, `assignment`, `customers` and an optional `distance_matrix`.
// Times, distances and demands are plain decimal numbers; the schema is
// documented in the README.

inline Instance parse_instance(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("instance file: malformed JSON: ") + e.what());
    }
    Instance::Data d;
    try {
        const auto& meta = j.at("meta");
        d.name = meta.value("name", std::string{});
        const auto horizon = meta.at("horizon");
        d.depot_window = {horizon.at(0).get<double>(), horizon.at(1).get<double>()};
        const auto depot = meta.at("depot");
        d.depot = {depot.at(0).get<double>(), depot.at(1).get<double>()};
        const int n = meta.at("n").get<int>();

        for (const auto& jf : j.at("fleets")) {
            FleetSpec f;
            f.type = static_cast<VehicleType>(jf.at("type").get<int>());
            f.count = jf.at("count").get<int>();
            f.capacity = jf.at("capacity").get<double>();
            f.fixed_cost = jf.at("fixed_cost").get<double>();
            if (jf.contains("max_duration")) f.max_duration = jf.at("max_duration").get<double>();
            if (jf.contains("max_distance")) f.max_distance = jf.at("max_distance").get<double>();
            d.fleets.push_back(f);
        }

        for (const auto& jp : j.at("profiles")) {
            SpeedProfile p;
            p.boundaries = jp.at("boundaries").get<std::vector<double>>();
            p.speeds = jp.at("speeds").get<std::vector<double>>();
            d.profiles.push_back(std::move(p));
        }

        if (j.contains("assignment")) {
            const auto& ja = j.at("assignment");
            const std::string mode = ja.at("mode").get<std::string>();
            if (mode == "uniform") {
                d.assignment.mode = ProfileAssignment::Mode::Uniform;
                d.assignment.uniform_profile = ja.value("profile", 0);
            } else if (mode == "random") {
                d.assignment.mode = ProfileAssignment::Mode::RandomClasses;
                d.assignment.class_profiles = ja.at("profiles").get<std::vector<int>>();
                d.assignment.seed = ja.at("seed").get<std::uint64_t>();
            } else if (mode == "matrix") {
                d.assignment.mode = ProfileAssignment::Mode::Matrix;
                d.assignment.matrix = ja.at("matrix").get<std::vector<std::uint16_t>>();
            } else {
                throw ValidationError("assignment: unknown mode '" + mode + "'");
            }
        }

        for (const auto& jc : j.at("customers")) {
            Customer c;
            c.id = jc.at("id").get<int>();
            c.home = {jc.at("x").get<double>(), jc.at("y").get<double>()};
            c.sdl = {jc.at("sdl_x").get<double>(), jc.at("sdl_y").get<double>()};
            c.demand = jc.at("demand").get<double>();
            c.e_home = jc.at("e").get<double>();
            c.l_home = jc.at("l").get<double>();
            c.e_sdl = jc.at("e_sdl").get<double>();
            c.l_sdl = jc.at("l_sdl").get<double>();
            c.service_home = jc.at("s").get<double>();
            c.service_sdl = jc.at("s_sdl").get<double>();
            c.accepts_aev = jc.at("A").get<int>() != 0;
            c.accepts_sdl = jc.at("S").get<int>() != 0;
            d.customers.push_back(c);
        }
        if (n != static_cast<int>(d.customers.size())) {
            throw ValidationError("meta: n does not match the customer list length");
        }

        if (j.contains("distance_matrix")) {
            d.distance_matrix = j.at("distance_matrix").get<std::vector<double>>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("instance file: ") + e.what());
    }
    return Instance(std::move(d));
}

inline std::string serialize_instance(const Instance& inst) {
    const auto& d = inst.data();
    nlohmann::json j;
    j["meta"] = {{"name", d.name},
                 {"n", inst.num_customers()},
                 {"horizon", {d.depot_window.earliest, d.depot_window.latest}},
                 {"depot", {d.depot.x, d.depot.y}}};
    j["fleets"] = nlohmann::json::array();
    for (const auto& f : d.fleets) {
        nlohmann::json jf = {{"type", static_cast<int>(f.type)},
                             {"count", f.count},
                             {"capacity", f.capacity},
                             {"fixed_cost", f.fixed_cost}};
        if (f.type == VehicleType::Fuel && f.max_duration != kInfinity) {
            jf["max_duration"] = f.max_duration;
        }
        if (f.type == VehicleType::Aev && f.max_distance != kInfinity) {
            jf["max_distance"] = f.max_distance;
        }
        j["fleets"].push_back(jf);
    }
    j["profiles"] = nlohmann::json::array();
    for (const auto& p : d.profiles) {
        j["profiles"].push_back({{"boundaries", p.boundaries}, {"speeds", p.speeds}});
    }
    switch (d.assignment.mode) {
        case ProfileAssignment::Mode::Uniform:
            j["assignment"] = {{"mode", "uniform"}, {"profile", d.assignment.uniform_profile}};
            break;
        case ProfileAssignment::Mode::RandomClasses:
            j["assignment"] = {{"mode", "random"},
                               {"profiles", d.assignment.class_profiles},
                               {"seed", d.assignment.seed}};
            break;
        case ProfileAssignment::Mode::Matrix:
            j["assignment"] = {{"mode", "matrix"}, {"matrix", d.assignment.matrix}};
            break;
    }
    j["customers"] = nlohmann::json::array();
    for (const auto& c : d.customers) {
        j["customers"].push_back({{"id", c.id},
                                  {"x", c.home.x},
                                  {"y", c.home.y},
                                  {"sdl_x", c.sdl.x},
                                  {"sdl_y", c.sdl.y},
                                  {"demand", c.demand},
                                  {"e", c.e_home},
                                  {"l", c.l_home},
                                  {"e_sdl", c.e_sdl},
                                  {"l_sdl", c.l_sdl},
                                  {"s", c.service_home},
                                  {"s_sdl", c.service_sdl},
                                  {"A", c.accepts_aev ? 1 : 0},
                                  {"S", c.accepts_sdl ? 1 : 0}});
    }
    if (d.distance_matrix) j["distance_matrix"] = *d.distance_matrix;
    return j.dump(2) + "\n";
}

inline Instance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open instance file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_instance(ss.str());
}

inline void save_instance(const Instance& inst, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write instance file: " + path);
    out << serialize_instance(inst);
}

}  // namespace mttd
