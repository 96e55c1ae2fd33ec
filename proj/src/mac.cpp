#include "uavsim/mac.hpp"

#include <algorithm>
#include <cassert>

namespace uavsim {

int next_backoff(int cw, Rng& rng) {
    assert(cw >= 0);
    return static_cast<int>(rng.uniform_int(0, cw));
}

int MacEntity::ack_frame_bytes() const {
    return sizes_.ack_bytes + (q_routing_ack_ ? sizes_.ack_q_extension_bytes : 0);
}

bool MacEntity::enqueue(Frame frame) {
    if (static_cast<int>(queue_.size()) >= queue_capacity_) return false;
    queue_.push_back(std::move(frame));
    if (queue_.size() == 1 && state_.phase == MacPhase::idle) try_start_next();
    return true;
}

void MacEntity::try_start_next() {
    while (!queue_.empty()) {
        Frame& f = hol();
        if (f.kind == FrameKind::data) {
            if (!f.hop_trace.empty()) f.hop_trace.back().hol_t = kernel_.now();
            if (!owner_.resolve_next_hop(f)) {
                queue_.pop_front();
                continue;
            }
        }
        state_.attempt = 0;
        state_.cw = params_.cw_min;
        state_.backoff_drawn = false;
        start_access();
        return;
    }
    state_.phase = MacPhase::idle;
}

void MacEntity::start_access() {
    if (params_.protocol == MacProtocol::aloha) {
        if (state_.attempt == 0) {
            begin_tx();
        } else {
            const double backoff = rng_.uniform(0.0, params_.aloha_max_backoff.seconds());
            state_.phase = MacPhase::backoff;
            aloha_timer_ = kernel_.schedule(kernel_.now() + SimTime::from_seconds(backoff),
                                            [this] { begin_tx(); });
        }
        return;
    }

    // DCF: wait for the medium to stay idle a full DIFS, then count down a
    // random backoff, frozen while busy.
    state_.phase = MacPhase::deferring;
    if (!medium_busy_) {
        difs_timer_ = kernel_.schedule(kernel_.now() + params_.difs, [this] { on_difs_complete(); });
    }
}

void MacEntity::set_medium_busy(bool busy) {
    medium_busy_ = busy;
    if (params_.protocol == MacProtocol::aloha) return;

    if (busy) {
        switch (state_.phase) {
            case MacPhase::deferring:
                difs_timer_.cancel();
                break;
            case MacPhase::backoff: {
                backoff_timer_.cancel();
                const std::int64_t elapsed = (kernel_.now() - backoff_segment_start_).ns;
                const int completed = static_cast<int>(elapsed / params_.slot.ns);
                state_.backoff_remaining = std::max(0, state_.backoff_remaining - completed);
                state_.phase = MacPhase::deferring;
                break;
            }
            default:
                break;
        }
    } else {
        if (state_.phase == MacPhase::deferring) {
            difs_timer_.cancel();
            difs_timer_ = kernel_.schedule(kernel_.now() + params_.difs,
                                           [this] { on_difs_complete(); });
        }
    }
}

void MacEntity::on_difs_complete() {
    if (state_.phase != MacPhase::deferring) return;
    if (!state_.backoff_drawn) {
        state_.backoff_remaining = next_backoff(state_.cw, rng_);
        state_.backoff_drawn = true;
    }
    if (state_.backoff_remaining == 0) {
        begin_tx();
    } else {
        state_.phase = MacPhase::backoff;
        schedule_backoff_expiry();
    }
}

void MacEntity::schedule_backoff_expiry() {
    backoff_segment_start_ = kernel_.now();
    backoff_timer_ = kernel_.schedule(
        kernel_.now() + params_.slot * state_.backoff_remaining, [this] { begin_tx(); });
}

void MacEntity::begin_tx() {
    assert(!queue_.empty());

    // One radio: postpone the start if an ACK of ours is still on the air.
    if (channel_.transmitting(radio_.node_id())) {
        aloha_timer_ = kernel_.schedule(kernel_.now() + SimTime::from_ns(1), [this] { begin_tx(); });
        return;
    }

    Frame& f = hol();
    state_.phase = MacPhase::transmitting;
    state_.attempt += 1;
    state_.backoff_drawn = false;

    const SimTime airtime = channel_.params().airtime(f.total_bytes);
    if (f.kind == FrameKind::data && !f.hop_trace.empty()) {
        HopRecord& hop = f.hop_trace.back();
        hop.tx_start = kernel_.now();
        hop.tx_end = kernel_.now() + airtime;
        hop.queuing = hop.hol_t - hop.enqueue_t;
        hop.contention = hop.tx_start - hop.hol_t;
        hop.transmission = airtime;
    }
    current_tx_end_ = kernel_.now() + airtime;

    owner_.frame_tx_started(f);
    channel_.transmit(&radio_, f);
}

void MacEntity::on_own_tx_finished(const Frame& frame) {
    if (frame.kind == FrameKind::ack) return;
    if (state_.phase != MacPhase::transmitting) return;

    Frame& f = hol();
    const bool wants_ack = f.kind == FrameKind::data && f.rx_node >= 0 && params_.ack_enabled;
    if (!wants_ack) {
        complete_current();
        return;
    }
    state_.phase = MacPhase::awaiting_ack;
    ack_timer_ = kernel_.schedule(kernel_.now() + params_.ack_timeout, [this] { on_ack_timeout(); });
}

void MacEntity::on_ack_frame(const Frame& ack) {
    if (state_.phase != MacPhase::awaiting_ack) return; // late ACK, ignored
    Frame& f = hol();
    if (ack.acked_packet_id != f.packet_id || ack.src != f.rx_node) return;

    ack_timer_.cancel();
    AckOutcome outcome;
    outcome.acked = true;
    outcome.rtt = kernel_.now() - current_tx_end_;
    owner_.data_hop_acked(f, outcome, ack.ack_q_estimate);
    complete_current();
}

void MacEntity::on_ack_timeout() {
    if (state_.phase != MacPhase::awaiting_ack) return;
    retry_or_drop();
}

void MacEntity::retry_or_drop() {
    Frame& f = hol();
    if (state_.attempt > params_.retry_limit) {
        owner_.data_hop_failed(f);
        queue_.pop_front();
        state_.phase = MacPhase::idle;
        try_start_next();
        return;
    }
    // Exponential CW growth: 31, 63, 127, ... capped at cw_max.
    state_.cw = std::min(2 * (state_.cw + 1) - 1, params_.cw_max);
    start_access();
}

void MacEntity::complete_current() {
    queue_.pop_front();
    state_.phase = MacPhase::idle;
    try_start_next();
}

void MacEntity::send_ack_for(const Frame& data, double q_estimate) {
    Frame ack;
    ack.kind = FrameKind::ack;
    ack.packet_id = -1;
    ack.acked_packet_id = data.packet_id;
    ack.src = radio_.node_id();
    ack.dst = data.tx_node;
    ack.tx_node = radio_.node_id();
    ack.rx_node = data.tx_node;
    ack.total_bytes = ack_frame_bytes();
    ack.ack_q_estimate = q_estimate;

    kernel_.schedule(kernel_.now() + params_.sifs, [this, ack] {
        if (channel_.transmitting(radio_.node_id())) return; // radio occupied, ACK lost
        owner_.frame_tx_started(ack);
        channel_.transmit(&radio_, ack);
    });
}

std::vector<Frame> MacEntity::purge() {
    difs_timer_.cancel();
    backoff_timer_.cancel();
    ack_timer_.cancel();
    aloha_timer_.cancel();
    std::vector<Frame> out(queue_.begin(), queue_.end());
    queue_.clear();
    state_ = MacTxState{};
    state_.cw = params_.cw_min;
    return out;
}

} // namespace uavsim
