#pragma once

#include "uavsim/event_queue.hpp"
#include "uavsim/frame.hpp"
#include "uavsim/geometry.hpp"
#include "uavsim/time.hpp"

#include <cstdint>
#include <vector>

namespace uavsim {

inline constexpr double kSpeedOfLight = 299792458.0; // m/s

struct ChannelParams {
    double carrier_frequency = 2.4e9;  // Hz
    double noise_power = 4e-11;        // W
    double sinr_threshold_db = 6.0;
    double bit_rate = 2e6;             // bit/s
    double bandwidth = 22e6;           // Hz (not consumed by the path-loss model)
    double path_loss_exponent = 2.0;   // free space
    double tx_power = 0.1;             // W, shared by all UAVs
    // Energy-detection carrier sense level; <= 0 selects the decode level
    // (threshold * noise), i.e. carrier-sense range == communication range.
    double cs_threshold_w = 0.0;
    // Hard receiver floor for the below_sensitivity verdict; 0 disables it.
    double sensitivity_w = 0.0;

    double sinr_threshold_linear() const;
    double effective_cs_threshold() const;
    SimTime airtime(int total_bytes) const;
};

// One on-air emission. Transmitter position is frozen at emission start;
// frames last at most a few ms, so the geometry error is centimetres.
struct Transmission {
    int tx_id = -1;
    std::int64_t frame_seq = 0; // unique per emission
    double tx_power = 0.0;      // W
    Vector3 tx_position;
    SimTime start;
    SimTime end;
};

enum class ReceptionVerdict { success, sinr_failure, below_sensitivity };

struct ReceptionOutcome {
    ReceptionVerdict verdict = ReceptionVerdict::sinr_failure;
    double min_sinr_db = 0.0;             // worst SINR over the reception window
    std::vector<int> interferer_ids;      // transmitters overlapping the window
};

// --- pure link physics -----------------------------------------------------

// Friis free-space power with configurable exponent, unit antenna gains.
double received_power(double p_t, const Vector3& tx_pos, const Vector3& rx_pos,
                      const ChannelParams& c);

SimTime propagation_delay(const Vector3& tx_pos, const Vector3& rx_pos);

// Largest distance at which an interference-free reception still clears the
// SINR threshold (closed-form inversion of the path-loss law).
double max_comm_range(const ChannelParams& c, double p_t);

// Worst-case SINR over the full reception window of `target` at rx_pos,
// against every concurrent transmission that overlaps the window (own
// transmissions of the receiver must already be excluded by the caller).
ReceptionOutcome evaluate_reception(const Transmission& target, const Vector3& rx_pos,
                                    const std::vector<Transmission>& concurrent,
                                    const ChannelParams& c);

// --- shared medium ---------------------------------------------------------

// A node attached to the medium. Implemented by the UAV; the channel uses it
// for geometry queries, carrier-sense edges and frame delivery.
class RadioNode {
public:
    virtual ~RadioNode() = default;
    virtual int node_id() const = 0;
    virtual Vector3 position() const = 0;
    virtual void medium_state_changed(bool busy) = 0;
    virtual void own_transmission_finished(const Frame& frame) = 0;
    virtual void frame_arrival(const Frame& frame, const ReceptionOutcome& outcome) = 0;
};

// Registry of on-air transmissions: schedules per-receiver reception
// evaluations, notifies carrier-sense changes, and answers band-occupancy
// queries. Mutated only from kernel callbacks.
class Channel {
public:
    Channel(EventQueue& kernel, const ChannelParams& params)
        : kernel_(kernel), params_(params) {}

    void attach(RadioNode* node);

    // Emits `frame` from `node` starting now. The frame's hop-trace tail
    // must already describe this attempt (tx timestamps are stamped here).
    void transmit(RadioNode* node, const Frame& frame);

    bool sensed_busy(int node_id) const;
    bool transmitting(int node_id) const;

    const ChannelParams& params() const { return params_; }
    double comm_range() const { return max_comm_range(params_, params_.tx_power); }

private:
    struct OnAir {
        Transmission tx;
        Frame frame;
    };

    void refresh_carrier_sense();
    void deliver(std::int64_t frame_seq, RadioNode* rx);
    void prune();

    EventQueue& kernel_;
    ChannelParams params_;
    std::vector<RadioNode*> nodes_;
    std::vector<char> last_busy_;
    std::vector<OnAir> on_air_;      // active + recently ended, pruned lazily
    std::int64_t next_frame_seq_ = 0;
    SimTime longest_airtime_{0};
};

} // namespace uavsim
