#include "uavsim/metrics.hpp"

#include <cmath>
#include <limits>

namespace uavsim {

PacketRecord* MetricsLedger::find(std::int64_t packet_id) {
    auto it = index_.find(packet_id);
    if (it == index_.end()) return nullptr;
    return &records_[it->second];
}

void MetricsLedger::on_generated(std::int64_t packet_id, int src, int dst,
                                 std::int64_t payload_bits, SimTime at) {
    PacketRecord rec;
    rec.packet_id = packet_id;
    rec.src = src;
    rec.dst = dst;
    rec.generated_at = at;
    rec.payload_bits = payload_bits;
    index_[packet_id] = records_.size();
    records_.push_back(std::move(rec));
    ++generated_count_;
}

void MetricsLedger::on_delivered(std::int64_t packet_id, SimTime at,
                                 const std::vector<HopRecord>& hops) {
    PacketRecord* rec = find(packet_id);
    if (!rec || rec->terminal == TerminalState::delivered) return; // duplicate copy
    rec->terminal = TerminalState::delivered;
    rec->delivered_at = at;
    rec->hops = hops;
    ++delivered_count_;
    delivered_payload_bits_ += rec->payload_bits;
}

void MetricsLedger::on_dropped(std::int64_t packet_id, DropReason reason) {
    PacketRecord* rec = find(packet_id);
    if (!rec || rec->terminal != TerminalState::pending) return; // first terminal wins
    rec->terminal = TerminalState::dropped;
    rec->drop_reason = reason;
}

void MetricsLedger::finalize(double sim_duration_s) {
    sim_duration_s_ = sim_duration_s;
    for (auto& rec : records_) {
        if (rec.terminal == TerminalState::pending) {
            rec.terminal = TerminalState::dropped;
            rec.drop_reason = DropReason::sim_end;
        }
    }
}

double MetricsLedger::pdr() const {
    if (generated_count_ == 0) return std::numeric_limits<double>::quiet_NaN();
    return static_cast<double>(delivered_count_) / static_cast<double>(generated_count_);
}

double MetricsLedger::avg_e2e_delay_s() const {
    if (delivered_count_ == 0) return std::numeric_limits<double>::quiet_NaN();
    double total = 0.0;
    for (const auto& rec : records_) {
        if (rec.terminal == TerminalState::delivered) {
            total += (*rec.delivered_at - rec.generated_at).seconds();
        }
    }
    return total / static_cast<double>(delivered_count_);
}

double MetricsLedger::avg_throughput_kbps() const {
    if (sim_duration_s_ <= 0.0) return 0.0;
    return static_cast<double>(delivered_payload_bits_) / sim_duration_s_ / 1000.0;
}

double MetricsLedger::routing_load() const {
    if (delivered_count_ == 0) return std::numeric_limits<double>::quiet_NaN();
    return static_cast<double>(control_tx_count_) / static_cast<double>(delivered_count_);
}

double MetricsLedger::avg_hop_count() const {
    if (delivered_count_ == 0) return std::numeric_limits<double>::quiet_NaN();
    double total = 0.0;
    for (const auto& rec : records_) {
        if (rec.terminal == TerminalState::delivered) {
            // Intermediate relays only: the source's own transmission is not
            // an intermediate node.
            total += static_cast<double>(rec.hops.size()) - 1.0;
        }
    }
    return total / static_cast<double>(delivered_count_);
}

std::map<std::string, std::int64_t> MetricsLedger::drop_histogram() const {
    std::map<std::string, std::int64_t> hist;
    for (const auto& rec : records_) {
        if (rec.terminal == TerminalState::dropped) {
            ++hist[to_string(rec.drop_reason)];
        }
    }
    return hist;
}

DelayBreakdownTotals delay_breakdown(const PacketRecord& record) {
    DelayBreakdownTotals t;
    for (const auto& hop : record.hops) {
        t.queuing += hop.queuing;
        t.contention += hop.contention;
        t.transmission += hop.transmission;
        t.propagation += hop.propagation;
        t.ack_overhead += hop.ack_overhead;
    }
    return t;
}

std::vector<std::int64_t> reconcile_delays(const MetricsLedger& ledger) {
    std::vector<std::int64_t> bad;
    for (const auto& rec : ledger.records()) {
        if (rec.terminal != TerminalState::delivered) continue;
        const DelayBreakdownTotals t = delay_breakdown(rec);
        const SimTime e2e = *rec.delivered_at - rec.generated_at;
        if (t.path_total() != e2e) bad.push_back(rec.packet_id);
        // Per-hop: components must also tile the hop interval exactly.
        for (const auto& hop : rec.hops) {
            const SimTime span = hop.arrival_t - hop.enqueue_t;
            if (hop.queuing + hop.contention + hop.transmission + hop.propagation != span) {
                bad.push_back(rec.packet_id);
                break;
            }
        }
    }
    return bad;
}

} // namespace uavsim
