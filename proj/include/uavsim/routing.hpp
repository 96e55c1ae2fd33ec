#pragma once

#include "uavsim/event_queue.hpp"
#include "uavsim/frame.hpp"
#include "uavsim/geometry.hpp"
#include "uavsim/rng.hpp"
#include "uavsim/time.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <vector>

namespace uavsim {

enum class RoutingProtocolId { greedy, dsdv, opar, q_routing };

const char* to_string(RoutingProtocolId id);

struct RoutingParams {
    RoutingProtocolId protocol = RoutingProtocolId::greedy;
    double hello_interval = 0.5;      // s; 0 disables hello beaconing
    double neighbor_ttl = 1.25;       // s
    double dsdv_update_interval = 1.0;// s
    double q_eta = 0.5;               // Q-routing learning rate
    double q_epsilon = 0.05;          // Q-routing exploration probability
    int ttl_hops = 15;                // per-packet forwarding budget
    double opar_traversal_time = 0.0; // s per hop; 0 selects the derived default
};

struct NeighborEntry {
    int uav_id = -1;
    Vector3 position;
    Vector3 velocity;
    SimTime last_heard;
};

// Hello-maintained neighbor view with TTL expiry. Entries are kept sorted by
// id (std::map) so every traversal is deterministic.
class NeighborTable {
public:
    explicit NeighborTable(SimTime ttl) : ttl_(ttl) {}

    void upsert(int id, const Vector3& pos, const Vector3& vel, SimTime now);
    const NeighborEntry* get(int id, SimTime now) const;
    bool contains(int id, SimTime now) const { return get(id, now) != nullptr; }
    std::vector<NeighborEntry> alive(SimTime now) const;
    std::vector<int> evict_expired(SimTime now);
    void clear() { entries_.clear(); }
    std::size_t size() const { return entries_.size(); }

private:
    bool expired(const NeighborEntry& e, SimTime now) const {
        return (now - e.last_heard) > ttl_;
    }

    std::map<int, NeighborEntry> entries_;
    SimTime ttl_;
};

struct RouteDecision {
    enum class Verdict { forward, deliver_local, no_route };
    Verdict verdict = Verdict::no_route;
    int next_hop = -1;
    DropReason drop_reason = DropReason::no_route;
    double dist_self = -1.0; // greedy audit fields
    double dist_next = -1.0;
};

// --- DSDV ------------------------------------------------------------------

struct DsdvEntry {
    int destination = -1;
    int next_hop = -1;
    int hop_metric = -1; // -1 encodes unreachable
    std::int64_t sequence_number = 0;
    SimTime installed_at;

    bool reachable() const { return hop_metric >= 0; }
};

// Route set with the sequence-number discipline: newer sequence wins, equal
// sequence only on a strictly better metric. Installing an older sequence is
// counted as a violation (audited by tests, never expected).
class DsdvTable {
public:
    const DsdvEntry* get(int destination) const;
    bool install(const DsdvEntry& entry, SimTime now);
    std::vector<DsdvEntry> all() const;
    std::int64_t monotonicity_violations() const { return violations_; }

private:
    std::map<int, DsdvEntry> routes_;
    std::int64_t violations_ = 0;
};

// --- OPAR helpers ------------------------------------------------------------

// Residual time two constant-velocity nodes stay within `range`; infinity
// when the relative velocity is zero.
double link_lifetime(const Vector3& p_i, const Vector3& v_i,
                     const Vector3& p_j, const Vector3& v_j, double range);

struct WorldSnapshot {
    std::vector<Vector3> positions;
    std::vector<Vector3> velocities;
    std::vector<char> alive;
    double comm_range = 0.0;
};

// Minimum-hop path (ties by total geometric length) whose link i, counted
// 1-based from the source, survives at least i * per_hop_traversal seconds.
// Falls back to the unconstrained minimum-hop path when no lifetime-feasible
// path exists; empty result when disconnected.
std::vector<int> opar_compute_path(const WorldSnapshot& snap, int src, int dst,
                                   double per_hop_traversal_s);

// --- protocol interface ------------------------------------------------------

class WorldView {
public:
    virtual ~WorldView() = default;
    virtual WorldSnapshot snapshot() const = 0;
    virtual Vector3 true_position(int uav) const = 0; // idealized location service
};

// Wiring handed to a protocol instance by its UAV.
struct RoutingEnv {
    EventQueue* kernel = nullptr;
    int self = -1;
    int n_uavs = 0;
    NeighborTable* neighbors = nullptr;
    const WorldView* world = nullptr;
    RoutingParams params;
    double comm_range = 0.0;
    std::function<Vector3()> self_position;
    std::function<void(Frame)> send_control;   // enqueue a broadcast at the MAC
    std::function<bool()> node_dead;
    Rng* rng = nullptr;                        // per-UAV routing stream
};

class RoutingProtocol {
public:
    explicit RoutingProtocol(RoutingEnv env) : env_(std::move(env)) {}
    virtual ~RoutingProtocol() = default;

    virtual const char* name() const = 0;
    virtual void start() {}

    // next_hop_selection(): pick the forwarding target for a data frame.
    virtual RouteDecision next_hop_selection(const Frame& data) = 0;

    // packet_reception() hooks for protocol-specific control traffic.
    virtual void on_advert(const Frame& advert) { (void)advert; }
    virtual void on_neighbor_lost(int neighbor) { (void)neighbor; }
    virtual void on_hop_acked(const Frame& data, double hop_delay_s, double ack_estimate) {
        (void)data; (void)hop_delay_s; (void)ack_estimate;
    }
    // Estimate piggybacked on the ACKs this node sends (Q-routing only).
    virtual double ack_estimate(const Frame& data) { (void)data; return 0.0; }

protected:
    RoutingEnv env_;
};

std::unique_ptr<RoutingProtocol> make_routing_protocol(RoutingEnv env);

// --- concrete protocols ------------------------------------------------------

class GreedyRouting : public RoutingProtocol {
public:
    using RoutingProtocol::RoutingProtocol;
    const char* name() const override { return "greedy"; }
    RouteDecision next_hop_selection(const Frame& data) override;
};

class DsdvRouting : public RoutingProtocol {
public:
    explicit DsdvRouting(RoutingEnv env);
    const char* name() const override { return "dsdv"; }
    void start() override;
    RouteDecision next_hop_selection(const Frame& data) override;
    void on_advert(const Frame& advert) override;
    void on_neighbor_lost(int neighbor) override;

    const DsdvTable& table() const { return table_; }

private:
    void broadcast_full_dump();
    void broadcast_entries(const std::vector<DsdvEntry>& entries);
    Frame make_advert(const std::vector<DsdvEntry>& entries) const;

    DsdvTable table_;
    std::int64_t self_seq_ = 0;
};

class OparRouting : public RoutingProtocol {
public:
    using RoutingProtocol::RoutingProtocol;
    const char* name() const override { return "opar"; }
    RouteDecision next_hop_selection(const Frame& data) override;
};

class QRouting : public RoutingProtocol {
public:
    using RoutingProtocol::RoutingProtocol;
    const char* name() const override { return "q_routing"; }
    RouteDecision next_hop_selection(const Frame& data) override;
    void on_hop_acked(const Frame& data, double hop_delay_s, double ack_estimate) override;
    double ack_estimate(const Frame& data) override;

    double q_value(int dst, int neighbor) const;

private:
    double best_estimate(int dst, SimTime now) const;

    // q_[destination][neighbor] = estimated remaining delivery delay (s);
    // unseen pairs read as 0 (optimistic initialization).
    std::map<int, std::map<int, double>> q_;
};

} // namespace uavsim
