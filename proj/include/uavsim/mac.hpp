#pragma once

#include "uavsim/channel.hpp"
#include "uavsim/event_queue.hpp"
#include "uavsim/frame.hpp"
#include "uavsim/rng.hpp"
#include "uavsim/time.hpp"

#include <deque>
#include <vector>

namespace uavsim {

enum class MacProtocol { csma_ca, aloha };

struct MacParams {
    MacProtocol protocol = MacProtocol::csma_ca;
    SimTime slot = SimTime::from_us(20);
    SimTime sifs = SimTime::from_us(10);
    SimTime difs = SimTime::from_us(50);
    int cw_min = 31;
    int cw_max = 1023;
    int retry_limit = 5;
    SimTime ack_timeout{0};        // 0 selects the derived default at scenario build
    SimTime aloha_max_backoff = SimTime::from_ms(30);
    bool ack_enabled = true;
};

enum class MacPhase { idle, deferring, backoff, transmitting, awaiting_ack };

struct MacTxState {
    MacPhase phase = MacPhase::idle;
    int attempt = 0;           // transmissions made for the current frame
    int cw = 31;
    int backoff_remaining = 0;
    bool backoff_drawn = false;
};

struct AckOutcome {
    bool acked = false;
    SimTime rtt;               // tx-end to ACK-complete, valid when acked
};

// Uniform draw in [0, cw] slots.
int next_backoff(int cw, Rng& rng);

// Upcalls from the MAC into the owning UAV.
class MacClient {
public:
    virtual ~MacClient() = default;
    // Resolve the next hop of a data frame at head-of-line; fills rx_node
    // and the greedy audit distances. Returning false means the frame was
    // dropped by routing (the owner has already recorded why).
    virtual bool resolve_next_hop(Frame& frame) = 0;
    virtual void data_hop_acked(const Frame& frame, const AckOutcome& outcome,
                                double ack_q_estimate) = 0;
    virtual void data_hop_failed(const Frame& frame) = 0; // retry limit exceeded
    virtual void frame_tx_started(const Frame& frame) = 0;
};

// Per-UAV medium access entity: outbound FIFO, CSMA/CA (DCF) or pure ALOHA
// access, ACK wait and retransmission. Advances only inside kernel
// callbacks.
class MacEntity {
public:
    MacEntity(EventQueue& kernel, Channel& channel, RadioNode& radio, MacClient& owner,
              const MacParams& params, const PacketSizes& sizes, int queue_capacity,
              Rng rng)
        : kernel_(kernel), channel_(channel), radio_(radio), owner_(owner),
          params_(params), sizes_(sizes), queue_capacity_(queue_capacity),
          rng_(rng) {
        state_.cw = params_.cw_min;
    }

    // False on queue overflow (frame not accepted).
    bool enqueue(Frame frame);

    void set_medium_busy(bool busy);
    void on_own_tx_finished(const Frame& frame);
    void on_ack_frame(const Frame& ack);

    // Schedules the 30-byte ACK exactly SIFS after now, bypassing contention.
    void send_ack_for(const Frame& data, double q_estimate);

    // Drops everything (node died). Returns the abandoned frames.
    std::vector<Frame> purge();

    const MacTxState& tx_state() const { return state_; }
    std::size_t queue_depth() const { return queue_.size(); }
    int ack_frame_bytes() const;

private:
    Frame& hol() { return queue_.front(); }
    void try_start_next();
    void start_access();
    void on_difs_complete();
    void schedule_backoff_expiry();
    void begin_tx();
    void on_ack_timeout();
    void complete_current();
    void retry_or_drop();

    EventQueue& kernel_;
    Channel& channel_;
    RadioNode& radio_;
    MacClient& owner_;
    MacParams params_;
    PacketSizes sizes_;
    int queue_capacity_;
    Rng rng_;

    std::deque<Frame> queue_;
    MacTxState state_;
    bool medium_busy_ = false;
    bool q_routing_ack_ = false;
    SimTime backoff_segment_start_;
    SimTime current_tx_end_;
    EventHandle difs_timer_;
    EventHandle backoff_timer_;
    EventHandle ack_timer_;
    EventHandle aloha_timer_;

public:
    // Widens ACK frames by the Q-routing feedback field.
    void set_q_routing_ack(bool on) { q_routing_ack_ = on; }
};

} // namespace uavsim
