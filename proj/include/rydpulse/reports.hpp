#pragma once

#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "rydpulse/core.hpp"

namespace rydpulse {

enum class Protocol { gate3, gate2, sbs, triangle, triangle_fast };

inline std::string to_string(Protocol p) {
    switch (p) {
        case Protocol::gate3: return "gate3";
        case Protocol::gate2: return "gate2";
        case Protocol::sbs: return "sbs";
        case Protocol::triangle: return "triangle";
        case Protocol::triangle_fast: return "triangle_fast";
    }
    return "?";
}

inline Protocol protocol_from_string(const std::string& s) {
    if (s == "gate3") return Protocol::gate3;
    if (s == "gate2") return Protocol::gate2;
    if (s == "sbs") return Protocol::sbs;
    if (s == "triangle") return Protocol::triangle;
    if (s == "triangle_fast") return Protocol::triangle_fast;
    throw std::invalid_argument("unknown protocol '" + s + "'");
}

/// Result for one computational input class.
struct ClassResult {
    std::string name;                 // "uu", "ud", ..., "uud", ...
    Complex target_amplitude{};      // overlap with the designated target
    double final_population = 0.0;    // |target_amplitude|^2
    double final_phase = 0.0;         // arg(target_amplitude), wrapped
    double leakage = 0.0;             // 1 - final_population
    StateVector final_state;          // full final state on the class basis
};

struct ProtocolReport {
    Protocol protocol = Protocol::gate3;
    std::vector<ClassResult> classes;
    double t_ryd = 0.0;               // us, equal-weight average over inputs
    double total_duration = 0.0;      // us
    std::map<std::string, double> derived_angles;  // rad

    const ClassResult& cls(const std::string& name) const {
        for (const auto& c : classes)
            if (c.name == name) return c;
        throw std::invalid_argument("ProtocolReport: no class '" + name + "'");
    }
    double angle(const std::string& key) const {
        auto it = derived_angles.find(key);
        if (it == derived_angles.end())
            throw std::invalid_argument("ProtocolReport: no angle '" + key + "'");
        return it->second;
    }
};

}  // namespace rydpulse
