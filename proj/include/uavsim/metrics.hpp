#pragma once

#include "uavsim/frame.hpp"
#include "uavsim/time.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace uavsim {

enum class TerminalState { pending, delivered, dropped };

// Per-data-packet outcome. Delivery wins over any copy drop: a retransmitted
// duplicate that dies after the first copy arrived does not demote the
// packet.
struct PacketRecord {
    std::int64_t packet_id = -1;
    int src = -1;
    int dst = -1;
    SimTime generated_at;
    std::optional<SimTime> delivered_at;
    std::int64_t payload_bits = 0;
    TerminalState terminal = TerminalState::pending;
    DropReason drop_reason = DropReason::sim_end;
    std::vector<HopRecord> hops; // filled by the copy that reached dst
};

// Global counters plus per-packet records; the five summary metrics are
// derived queries. Append-only during the run.
class MetricsLedger {
public:
    void on_generated(std::int64_t packet_id, int src, int dst, std::int64_t payload_bits,
                      SimTime at);
    void on_delivered(std::int64_t packet_id, SimTime at, const std::vector<HopRecord>& hops);
    void on_dropped(std::int64_t packet_id, DropReason reason);
    void on_control_tx() { ++control_tx_count_; }

    // Marks still-pending packets with the sim_end terminal state.
    void finalize(double sim_duration_s);

    std::int64_t generated_count() const { return generated_count_; }
    std::int64_t delivered_count() const { return delivered_count_; }
    std::int64_t control_tx_count() const { return control_tx_count_; }
    std::int64_t delivered_payload_bits() const { return delivered_payload_bits_; }
    double sim_duration() const { return sim_duration_s_; }

    // The five summary metrics. Ratios are NaN when their precondition
    // (packets generated / delivered) does not hold.
    double pdr() const;
    double avg_e2e_delay_s() const;
    double avg_throughput_kbps() const;
    double routing_load() const;
    double avg_hop_count() const;

    std::map<std::string, std::int64_t> drop_histogram() const;

    const std::vector<PacketRecord>& records() const { return records_; }

private:
    PacketRecord* find(std::int64_t packet_id);

    std::vector<PacketRecord> records_;
    std::map<std::int64_t, std::size_t> index_;
    std::int64_t generated_count_ = 0;
    std::int64_t delivered_count_ = 0;
    std::int64_t control_tx_count_ = 0;
    std::int64_t delivered_payload_bits_ = 0;
    double sim_duration_s_ = 0.0;
};

// Fig.-3-style per-hop component totals for one delivered packet.
struct DelayBreakdownTotals {
    SimTime queuing;
    SimTime contention;
    SimTime transmission;
    SimTime propagation;
    SimTime ack_overhead;

    SimTime path_total() const {
        return queuing + contention + transmission + propagation;
    }
};

DelayBreakdownTotals delay_breakdown(const PacketRecord& record);

// Exact reconciliation audit: the in-path components of every hop must sum
// to delivered_at - generated_at. Returns the ids of violating packets.
std::vector<std::int64_t> reconcile_delays(const MetricsLedger& ledger);

} // namespace uavsim
