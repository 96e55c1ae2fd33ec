#pragma once

#include <cmath>
#include <stdexcept>

namespace uavsim {

// Rotary-wing propulsion constants. The defaults follow the standard
// reference rotary-wing model; every value is configurable.
struct EnergyParams {
    double p0 = 79.86;        // W, blade profile power in hover
    double pi = 88.63;        // W, induced power in hover
    double u_tip = 120.0;     // m/s, rotor tip speed
    double v0 = 4.03;         // m/s, mean rotor induced velocity in hover
    double d0_drag = 0.6;     // fuselage drag ratio
    double rho = 1.225;       // kg/m^3, air density
    double s_solidity = 0.05; // rotor solidity
    double rotor_area = 0.503;// m^2, rotor disc area
    double initial_j = 50e3;  // J, battery budget
};

// Propulsion power at constant speed v:
//   P(v) = P0 (1 + 3 v^2 / U_tip^2)
//        + Pi (sqrt(1 + v^4 / (4 v0^4)) - v^2 / (2 v0^2))^(1/2)
//        + 1/2 d0 rho s A v^3
inline double propulsion_power(double v, const EnergyParams& p) {
    if (v < 0.0) throw std::domain_error("propulsion_power: negative speed");
    const double blade = p.p0 * (1.0 + 3.0 * v * v / (p.u_tip * p.u_tip));
    const double v2 = v * v;
    const double v4 = v2 * v2;
    const double v04 = p.v0 * p.v0 * p.v0 * p.v0;
    const double induced = p.pi * std::sqrt(std::sqrt(1.0 + v4 / (4.0 * v04)) - v2 / (2.0 * p.v0 * p.v0));
    const double parasite = 0.5 * p.d0_drag * p.rho * p.s_solidity * p.rotor_area * v2 * v;
    return blade + induced + parasite;
}

inline double propulsion_energy(double v, double t_move, const EnergyParams& p) {
    if (t_move < 0.0) throw std::domain_error("propulsion_energy: negative duration");
    return propulsion_power(v, p) * t_move;
}

inline double comm_energy(double p_t, double t_packet) {
    return p_t * t_packet;
}

enum class EnergyCategory { propulsion, comm };

// Per-UAV energy ledger. residual + spent_propulsion + spent_comm equals the
// initial budget at all times; a depleted UAV freezes in place.
struct EnergyLedger {
    double initial = 0.0;
    double residual = 0.0;
    double spent_propulsion = 0.0;
    double spent_comm = 0.0;
    bool depleted = false;

    static EnergyLedger with_budget(double joules) {
        EnergyLedger l;
        l.initial = joules;
        l.residual = joules;
        return l;
    }

    void debit(double amount, EnergyCategory cat) {
        if (amount < 0.0) throw std::domain_error("debit: negative amount");
        const double charged = std::min(amount, residual);
        if (cat == EnergyCategory::propulsion) spent_propulsion += charged;
        else spent_comm += charged;
        residual -= charged;
        if (residual <= 0.0) {
            residual = 0.0;
            depleted = true;
        }
    }
};

} // namespace uavsim
