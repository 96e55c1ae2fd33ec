#pragma once

#include "uavsim/time.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <queue>
#include <stdexcept>
#include <vector>

namespace uavsim {

// Thrown when a callback tries to schedule an event before the current
// simulation time.
class CausalityError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Thrown out of run_until() when a callback fails; carries the offending
// event's timestamp and sequence number.
class EventFault : public std::runtime_error {
public:
    EventFault(const std::string& what, SimTime at, std::uint64_t seq)
        : std::runtime_error(what), at_(at), seq_(seq) {}
    SimTime at() const { return at_; }
    std::uint64_t seq() const { return seq_; }

private:
    SimTime at_;
    std::uint64_t seq_;
};

class EventHandle;

// Future-event list. Events execute in strict (fire_at, insertion seq)
// order, which makes runs with the same inputs byte-identical. One queue
// instance belongs to one replication; there is no shared state between
// instances.
class EventQueue {
public:
    EventHandle schedule(SimTime at, std::function<void()> action);

    // Runs every event with fire_at <= t_end, then advances the clock to
    // t_end. Returns the final clock value.
    SimTime run_until(SimTime t_end);

    SimTime now() const { return now_; }

    // Bookkeeping for the no-event-loss audit.
    std::uint64_t scheduled_count() const { return scheduled_; }
    std::uint64_t executed_count() const { return executed_; }
    std::uint64_t cancelled_count() const { return cancelled_; }
    std::uint64_t pending_count() const { return scheduled_ - executed_ - cancelled_; }

private:
    friend class EventHandle;

    struct Event {
        SimTime fire_at;
        std::uint64_t seq = 0;
        std::function<void()> action;
        bool cancelled = false;
        bool fired = false;
    };

    struct Later {
        bool operator()(const std::shared_ptr<Event>& a, const std::shared_ptr<Event>& b) const {
            if (a->fire_at != b->fire_at) return a->fire_at > b->fire_at;
            return a->seq > b->seq;
        }
    };

    std::priority_queue<std::shared_ptr<Event>, std::vector<std::shared_ptr<Event>>, Later> heap_;
    SimTime now_{0};
    std::uint64_t next_seq_ = 0;
    std::uint64_t scheduled_ = 0;
    std::uint64_t executed_ = 0;
    std::uint64_t cancelled_ = 0;
};

// Reference to one scheduled event; permits cancellation. Copyable; cancel
// is idempotent and returns true only on the call that actually prevented
// the event from firing.
class EventHandle {
public:
    EventHandle() = default;

    bool cancel() {
        auto ev = ev_.lock();
        if (!ev || ev->fired || ev->cancelled) return false;
        ev->cancelled = true;
        ev->action = nullptr;
        if (owner_) ++owner_->cancelled_;
        return true;
    }

    bool pending() const {
        auto ev = ev_.lock();
        return ev && !ev->fired && !ev->cancelled;
    }

private:
    friend class EventQueue;
    EventHandle(std::weak_ptr<EventQueue::Event> ev, EventQueue* owner)
        : ev_(std::move(ev)), owner_(owner) {}

    std::weak_ptr<EventQueue::Event> ev_;
    EventQueue* owner_ = nullptr;
};

inline EventHandle EventQueue::schedule(SimTime at, std::function<void()> action) {
    if (at < now_) {
        throw CausalityError("schedule: event time " + std::to_string(at.ns) +
                             " ns is before now " + std::to_string(now_.ns) + " ns");
    }
    auto ev = std::make_shared<Event>();
    ev->fire_at = at;
    ev->seq = next_seq_++;
    ev->action = std::move(action);
    heap_.push(ev);
    ++scheduled_;
    return EventHandle(ev, this);
}

inline SimTime EventQueue::run_until(SimTime t_end) {
    if (t_end < now_) {
        throw CausalityError("run_until: target precedes current time");
    }
    while (!heap_.empty() && heap_.top()->fire_at <= t_end) {
        auto ev = heap_.top();
        heap_.pop();
        if (ev->cancelled) continue;
        now_ = ev->fire_at;
        ev->fired = true;
        ++executed_;
        try {
            ev->action();
        } catch (const std::exception& e) {
            throw EventFault(std::string("event callback failed: ") + e.what(), ev->fire_at, ev->seq);
        }
        ev->action = nullptr;
    }
    now_ = t_end;
    return now_;
}

} // namespace uavsim
