#include <doctest.h>

#include "v2x/relay.hpp"

using namespace v2x;

namespace {

Beacon original(int origin, std::uint32_t msg, double t) {
    Beacon b;
    b.origin = origin;
    b.msg = msg;
    b.generation_time = t;
    return b;
}

}  // namespace

TEST_CASE("fresh beacons are enqueued once") {
    RsuQueue q;
    RsuCounters c;
    q.on_rsu_receive(original(7, 42, 0.0), 0.0, 100, c);
    CHECK(q.length() == 1);
    CHECK(c.enqueued == 1);

    q.on_rsu_receive(original(7, 42, 0.0), 0.01, 100, c);  // duplicate
    CHECK(q.length() == 1);
    CHECK(c.enqueued == 1);
}

TEST_CASE("relays from other RSUs are never re-enqueued") {
    RsuQueue q;
    RsuCounters c;
    Beacon relay = original(7, 42, 0.0);
    relay.is_relay = true;
    relay.relayed = {7, 42};
    q.on_rsu_receive(relay, 0.0, 100, c);
    CHECK(q.length() == 0);
}

TEST_CASE("queue cap drops tail and counts it") {
    RsuQueue q;
    RsuCounters c;
    for (int i = 0; i < 105; ++i) q.on_rsu_receive(original(i, 0, 0.0), 0.0, 100, c);
    CHECK(q.length() == 100);
    CHECK(c.dropped_full == 5);
}

TEST_CASE("service pops FIFO and flags relay copies") {
    RsuQueue q;
    RsuCounters c;
    q.on_rsu_receive(original(1, 5, 0.0), 0.0, 100, c);
    q.on_rsu_receive(original(2, 9, 0.0), 0.001, 100, c);
    auto head = q.next_to_service(0.01, 0.1, c);
    REQUIRE(head.has_value());
    CHECK(head->is_relay);
    CHECK(head->relayed.origin == 1);
    CHECK(head->relayed.msg == 5);
    CHECK(q.length() == 1);

    CHECK(!RsuQueue{}.next_to_service(0.0, 0.1, c).has_value());
}

TEST_CASE("stale queued relays are discarded at service time") {
    RsuQueue q;
    RsuCounters c;
    q.on_rsu_receive(original(1, 5, 0.0), 0.0, 100, c);
    q.on_rsu_receive(original(2, 9, 0.0), 0.15, 100, c);
    auto head = q.next_to_service(0.2, 0.1, c);  // first entry is 0.2 s old
    REQUIRE(head.has_value());
    CHECK(head->relayed.origin == 2);
    CHECK(c.dropped_stale == 1);
    CHECK(q.length() == 0);
}

TEST_CASE("forwarding delay gates service until the item is eligible") {
    RsuQueue q;
    RsuCounters c;
    q.on_rsu_receive(original(1, 5, 0.0), 0.0, 100, c, 0.008);
    CHECK(!q.next_to_service(0.004, 0.1, c).has_value());  // not yet eligible
    CHECK(q.length() == 1);
    auto head = q.next_to_service(0.008, 0.1, c);
    REQUIRE(head.has_value());
    CHECK(head->relayed.origin == 1);
}

TEST_CASE("overheard duplicate relay removes the queued copy") {
    RsuQueue q;
    RsuCounters c;
    q.on_rsu_receive(original(1, 5, 0.0), 0.0, 100, c);
    q.on_rsu_receive(original(2, 9, 0.0), 0.0, 100, c);
    CHECK(q.remove(1, 5));
    CHECK(!q.remove(1, 5));  // already gone
    CHECK(q.length() == 1);
    auto head = q.next_to_service(0.0, 0.1, c);
    REQUIRE(head.has_value());
    CHECK(head->relayed.origin == 2);
}

TEST_CASE("conservation: enqueued = serviced + queued + stale-dropped") {
    RsuQueue q;
    RsuCounters c;
    std::uint64_t serviced = 0;
    for (int i = 0; i < 50; ++i) {
        q.on_rsu_receive(original(i % 20, i / 20, i * 0.01), i * 0.01, 10, c);
        if (i % 3 == 0 && q.next_to_service(i * 0.01, 0.1, c)) ++serviced;
    }
    CHECK(c.enqueued == serviced + q.length() + c.dropped_stale);
}
