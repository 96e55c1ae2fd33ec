#include "uavsim/channel.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace uavsim {

double ChannelParams::sinr_threshold_linear() const {
    return std::pow(10.0, sinr_threshold_db / 10.0);
}

double ChannelParams::effective_cs_threshold() const {
    if (cs_threshold_w > 0.0) return cs_threshold_w;
    return sinr_threshold_linear() * noise_power;
}

SimTime ChannelParams::airtime(int total_bytes) const {
    const double bits = 8.0 * static_cast<double>(total_bytes);
    return SimTime::from_ns(std::llround(bits * 1e9 / bit_rate));
}

double received_power(double p_t, const Vector3& tx_pos, const Vector3& rx_pos,
                      const ChannelParams& c) {
    const double d = distance(tx_pos, rx_pos);
    if (d <= 0.0) throw std::domain_error("received_power: coincident tx/rx positions");
    if (p_t <= 0.0) return 0.0;
    const double lambda = kSpeedOfLight / c.carrier_frequency;
    return p_t * std::pow(lambda / (4.0 * M_PI * d), c.path_loss_exponent);
}

SimTime propagation_delay(const Vector3& tx_pos, const Vector3& rx_pos) {
    const double d = distance(tx_pos, rx_pos);
    return SimTime::from_ns(std::llround(d / kSpeedOfLight * 1e9));
}

double max_comm_range(const ChannelParams& c, double p_t) {
    if (p_t <= 0.0) return 0.0;
    const double lambda = kSpeedOfLight / c.carrier_frequency;
    const double min_power = c.sinr_threshold_linear() * c.noise_power;
    return lambda / (4.0 * M_PI) * std::pow(p_t / min_power, 1.0 / c.path_loss_exponent);
}

ReceptionOutcome evaluate_reception(const Transmission& target, const Vector3& rx_pos,
                                    const std::vector<Transmission>& concurrent,
                                    const ChannelParams& c) {
    ReceptionOutcome out;
    const double signal = received_power(target.tx_power, target.tx_position, rx_pos, c);

    if (c.sensitivity_w > 0.0 && signal < c.sensitivity_w) {
        out.verdict = ReceptionVerdict::below_sensitivity;
        out.min_sinr_db = -std::numeric_limits<double>::infinity();
        return out;
    }

    const SimTime w_start = target.start;
    const SimTime w_end = target.end;

    // Interference edges clipped to the window; the worst instantaneous sum
    // decides the verdict (no partial-overlap capture).
    struct Edge { SimTime t; double dp; };
    std::vector<Edge> edges;
    double at_window_start = 0.0;
    for (const auto& tx : concurrent) {
        if (tx.tx_id == target.tx_id && tx.frame_seq == target.frame_seq) continue;
        if (tx.end <= w_start || tx.start >= w_end) continue;
        const double p = received_power(tx.tx_power, tx.tx_position, rx_pos, c);
        out.interferer_ids.push_back(tx.tx_id);
        if (tx.start <= w_start) at_window_start += p;
        else edges.push_back({tx.start, p});
        if (tx.end < w_end) edges.push_back({tx.end, -p});
    }
    // Half-open [start, end) intervals: at equal timestamps the ending
    // emission switches off before the starting one switches on.
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
        if (a.t != b.t) return a.t < b.t;
        return a.dp < b.dp;
    });

    double worst_interference = at_window_start;
    double level = at_window_start;
    for (const auto& e : edges) {
        level += e.dp;
        worst_interference = std::max(worst_interference, level);
    }

    const double sinr = signal / (c.noise_power + worst_interference);
    out.min_sinr_db = 10.0 * std::log10(sinr);
    out.verdict = sinr >= c.sinr_threshold_linear() ? ReceptionVerdict::success
                                                    : ReceptionVerdict::sinr_failure;
    return out;
}

void Channel::attach(RadioNode* node) {
    assert(node->node_id() == static_cast<int>(nodes_.size()));
    nodes_.push_back(node);
    last_busy_.push_back(0);
}

bool Channel::transmitting(int node_id) const {
    const SimTime now = kernel_.now();
    for (const auto& oa : on_air_) {
        if (oa.tx.tx_id == node_id && oa.tx.start <= now && now < oa.tx.end) return true;
    }
    return false;
}

bool Channel::sensed_busy(int node_id) const {
    const SimTime now = kernel_.now();
    const Vector3 pos = nodes_[node_id]->position();
    double power = 0.0;
    for (const auto& oa : on_air_) {
        if (!(oa.tx.start <= now && now < oa.tx.end)) continue;
        if (oa.tx.tx_id == node_id) return true; // own emission
        power += received_power(oa.tx.tx_power, oa.tx.tx_position, pos, params_);
    }
    return power >= params_.effective_cs_threshold();
}

void Channel::transmit(RadioNode* node, const Frame& frame) {
    prune();

    OnAir oa;
    oa.tx.tx_id = node->node_id();
    oa.tx.frame_seq = next_frame_seq_++;
    oa.tx.tx_power = params_.tx_power;
    oa.tx.tx_position = node->position();
    oa.tx.start = kernel_.now();
    oa.tx.end = kernel_.now() + params_.airtime(frame.total_bytes);
    oa.frame = frame;
    const std::int64_t seq = oa.tx.frame_seq;
    const SimTime tx_end = oa.tx.end;
    longest_airtime_ = std::max(longest_airtime_, oa.tx.end - oa.tx.start);
    on_air_.push_back(std::move(oa));

    // Schedule deliveries. Receivers whose interference-free power cannot
    // clear the threshold are skipped: interference only lowers SINR, so
    // they could never decode. They still interfere via the registry.
    const double decode_floor = params_.sinr_threshold_linear() * params_.noise_power;
    const Vector3 tx_pos = nodes_[node->node_id()]->position();
    for (RadioNode* rx : nodes_) {
        if (rx == node) continue;
        const double p = received_power(params_.tx_power, tx_pos, rx->position(), params_);
        if (p < decode_floor && (params_.sensitivity_w <= 0.0 || p < params_.sensitivity_w)) {
            continue;
        }
        const SimTime prop = propagation_delay(tx_pos, rx->position());
        kernel_.schedule(tx_end + prop, [this, seq, rx] { deliver(seq, rx); });
    }

    kernel_.schedule(tx_end, [this, node, seq] {
        const OnAir* target = nullptr;
        for (const auto& o : on_air_) {
            if (o.tx.frame_seq == seq) { target = &o; break; }
        }
        refresh_carrier_sense();
        if (target) node->own_transmission_finished(target->frame);
    });

    refresh_carrier_sense();
}

void Channel::deliver(std::int64_t seq, RadioNode* rx) {
    const OnAir* target = nullptr;
    for (const auto& o : on_air_) {
        if (o.tx.frame_seq == seq) { target = &o; break; }
    }
    if (!target) return;
    const SimTime w_start = target->tx.start;
    const SimTime w_end = target->tx.end;

    std::vector<Transmission> concurrent;
    concurrent.reserve(on_air_.size());
    bool own_overlap = false;
    for (const auto& o : on_air_) {
        if (o.tx.frame_seq == seq) continue;
        if (o.tx.end <= w_start || o.tx.start >= w_end) continue;
        if (o.tx.tx_id == rx->node_id()) {
            own_overlap = true; // half duplex: receiving while transmitting
            continue;
        }
        concurrent.push_back(o.tx);
    }
    if (own_overlap) return; // frame lost, no outcome to report

    const ReceptionOutcome outcome =
        evaluate_reception(target->tx, rx->position(), concurrent, params_);
    rx->frame_arrival(target->frame, outcome);
}

void Channel::refresh_carrier_sense() {
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const bool busy = sensed_busy(static_cast<int>(i));
        if (busy != static_cast<bool>(last_busy_[i])) {
            last_busy_[i] = busy ? 1 : 0;
            nodes_[i]->medium_state_changed(busy);
        }
    }
}

void Channel::prune() {
    // An emission stays relevant while any window it could overlap is still
    // pending: windows last at most longest_airtime_ plus in-box propagation.
    const SimTime slack = longest_airtime_ + SimTime::from_us(100);
    const SimTime horizon = kernel_.now() - slack;
    std::erase_if(on_air_, [&](const OnAir& o) { return o.tx.end < horizon; });
}

} // namespace uavsim
