#pragma once

#include "uavsim/geometry.hpp"
#include "uavsim/time.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace uavsim {

enum class FrameKind { data, ack, hello, routing_update };

inline const char* to_string(FrameKind k) {
    switch (k) {
        case FrameKind::data: return "data";
        case FrameKind::ack: return "ack";
        case FrameKind::hello: return "hello";
        case FrameKind::routing_update: return "routing_update";
    }
    return "?";
}

enum class DropReason {
    retry_exhausted,
    local_minimum,
    no_route,
    ttl_exceeded,
    queue_overflow,
    dead_node,
    sim_end,
};

inline const char* to_string(DropReason r) {
    switch (r) {
        case DropReason::retry_exhausted: return "retry_exhausted";
        case DropReason::local_minimum: return "local_minimum";
        case DropReason::no_route: return "no_route";
        case DropReason::ttl_exceeded: return "ttl_exceeded";
        case DropReason::queue_overflow: return "queue_overflow";
        case DropReason::dead_node: return "dead_node";
        case DropReason::sim_end: return "sim_end";
    }
    return "?";
}

// One hop of a data packet's journey, recorded in the travelling frame copy.
// queuing + contention + transmission + propagation spans enqueue->arrival
// exactly; ack_overhead is the SIFS + ACK + return-propagation tail that the
// hop additionally occupies the channel for.
struct HopRecord {
    int forwarder = -1;
    SimTime enqueue_t;
    SimTime hol_t;
    SimTime tx_start;
    SimTime tx_end;
    SimTime arrival_t;

    SimTime queuing;
    SimTime contention;
    SimTime transmission;
    SimTime propagation;
    SimTime ack_overhead;

    // Greedy-forwarding audit: decision-time distance to destination of the
    // forwarder and of the chosen next hop (table position).
    double dist_self = -1.0;
    double dist_next = -1.0;
};

struct DsdvAdvertEntry {
    int destination = -1;
    int hop_metric = -1;      // -1 encodes unreachable
    std::int64_t sequence_number = 0;
};

// A packet in flight. Frames travel by value: every emission delivers an
// independent copy to each receiver, so retransmitted or duplicated packets
// carry their own hop history.
struct Frame {
    FrameKind kind = FrameKind::data;
    std::int64_t packet_id = -1;   // data packets only
    int src = -1;
    int dst = -1;                  // final destination; -1 for broadcast kinds
    int tx_node = -1;              // this hop's sender
    int rx_node = -1;              // this hop's receiver; -1 broadcast
    int total_bytes = 0;           // on-air size including all headers
    std::int64_t payload_bits = 0; // application payload, data only
    SimTime generated_at;
    Vector3 dst_position_stamp;    // location-service read at generation

    std::vector<HopRecord> hop_trace;

    // hello payload
    Vector3 hello_position;
    Vector3 hello_velocity;

    // routing_update payload
    std::vector<DsdvAdvertEntry> advert;

    // ack payload
    std::int64_t acked_packet_id = -1;
    double ack_q_estimate = 0.0;   // Q-routing piggyback, seconds

    int hops_so_far() const { return static_cast<int>(hop_trace.size()); }
};

struct PacketSizes {
    int payload_bytes = 1024;
    int ip_header_bytes = 20;
    int mac_header_bytes = 14;
    int phy_header_bytes = 24;
    int ack_bytes = 30;
    int hello_bytes = 50;
    int advert_base_bytes = 50;
    int advert_entry_bytes = 12;
    int ack_q_extension_bytes = 8; // appended when Q-routing is active

    int data_total() const {
        return payload_bytes + ip_header_bytes + mac_header_bytes + phy_header_bytes;
    }
    int advert_total(int entries) const {
        return advert_base_bytes + advert_entry_bytes * entries;
    }
};

} // namespace uavsim
