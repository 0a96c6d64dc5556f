#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "manet/routing/aodv.hpp"
#include "oracles.hpp"

using namespace manet;
using fixture::static_scenario;
using fixture::static_traces;
using fixture::stream;

namespace {

struct Net {
  std::unique_ptr<Simulation> sim;
  AodvProtocol* aodv = nullptr;

  Net(const std::vector<Position>& pts, std::vector<CbrStream> streams, double duration = 20.0,
      Scenario s = Scenario{}) {
    if (s.scenario_id == "default") s = static_scenario(static_cast<std::uint32_t>(pts.size()), ProtocolKind::Aodv, duration);
    RunOptions opt;
    opt.keep_log = true;
    opt.keep_hops = true;
    opt.traces = static_traces(pts, duration);
    opt.streams = std::move(streams);
    sim = std::make_unique<Simulation>(s, std::move(opt));
    aodv = dynamic_cast<AodvProtocol*>(&sim->protocol());
  }
  std::uint64_t tx(PacketKind k) { return sim->metrics().tx_count(k); }
};

const std::vector<Position> kChain{{0, 0}, {200, 0}, {400, 0}, {600, 0}};

}  // namespace

TEST_CASE("route table freshness rule") {
  RouteTable t;
  const SimTime now{};
  const SimTime later = SimTime::from_seconds(10);
  CHECK(t.offer({5, 1, 3, 10, later, true}, now));
  CHECK_FALSE(t.offer({5, 2, 2, 9, later, true}, now));  // stale sequence number
  CHECK(t.find(5)->next_hop == 1);
  CHECK_FALSE(t.offer({5, 2, 4, 10, later, true}, now));  // same number, longer
  CHECK(t.offer({5, 2, 2, 10, later, true}, now));        // same number, shorter
  CHECK(t.find(5)->next_hop == 2);
  CHECK(t.offer({5, 3, 9, 11, later, true}, now));  // newer number wins regardless of length
  CHECK(t.find(5)->hop_count == 9);

  CHECK(t.lookup(5, now) != nullptr);
  CHECK(t.lookup(5, later) == nullptr);  // expired

  const auto lost = t.invalidate_via(3, now);
  REQUIRE(lost.size() == 1);
  CHECK(lost[0].dst == 5);
  CHECK(lost[0].dst_seq == 12);
  CHECK(t.lookup(5, now) == nullptr);
  CHECK(t.offer({5, 4, 5, 12, later, true}, now));  // inactive entry yields to an equal number

  RouteTable u;
  u.offer({7, 1, 2, 0, later, true}, now);
  CHECK(u.offer({7, 2, 5, 0, later, true}, now));  // unknown number yields to anything
}

TEST_CASE("rreq cache sees each flood once within the window") {
  RreqSeenCache c(SimTime::from_seconds(10));
  CHECK(c.insert(1, 1, SimTime{}));
  CHECK_FALSE(c.insert(1, 1, SimTime::from_seconds(1)));
  CHECK(c.insert(1, 2, SimTime::from_seconds(1)));
  CHECK(c.insert(2, 1, SimTime::from_seconds(1)));
  CHECK(c.contains(1, 1, SimTime::from_seconds(9)));
  CHECK_FALSE(c.contains(1, 1, SimTime::from_seconds(10)));
  CHECK(c.insert(1, 1, SimTime::from_seconds(11)));
}

TEST_CASE("chain discovery installs forward routes at every hop") {
  Net n(kChain, {stream(0, 3, 1.0, 1)});
  n.sim->run_until(SimTime::from_millis(1500));
  auto& d = n.aodv->discovery();
  const SimTime now = n.sim->sim().now();
  for (NodeId hop = 0; hop < 3; ++hop) {
    const RouteEntry* r = d.routes(hop).find(3);
    REQUIRE(r != nullptr);
    CHECK(r->next_hop == hop + 1);
    CHECK(r->hop_count == 3 - static_cast<int>(hop));
  }
  CHECK(d.routes(0).lookup(3, now) != nullptr);
  n.sim->run();
  CHECK(d.routes(0).lookup(3, n.sim->sim().now()) == nullptr);  // idle routes expire
  REQUIRE(n.sim->metrics().routes().size() == 1);
  CHECK(n.sim->metrics().routes()[0].hop_count == 3);
  CHECK(n.sim->metrics().finalize({}).delivered == 1);
}

TEST_CASE("known route sends data without a new flood") {
  Net n(kChain, {stream(0, 3, 1.0, 2, 1.0)});
  n.sim->run_until(SimTime::from_millis(1500));
  const auto rreq = n.tx(PacketKind::Rreq);
  CHECK(rreq == 3);  // 0, 1 and 2 each send the flood once; 3 answers
  n.sim->run();
  CHECK(n.tx(PacketKind::Rreq) == rreq);
  CHECK(n.sim->metrics().finalize({}).delivered == 2);
  CHECK(n.tx(PacketKind::Data) == 6);  // 2 packets x 3 hops
}

TEST_CASE("sending to oneself delivers with no transmissions") {
  Net n(kChain, {});
  n.aodv->originate_data(2, 2, 512);
  const auto row = n.sim->metrics().finalize({});
  CHECK(row.delivered == 1);
  CHECK(row.transmissions_total == 0);
  REQUIRE(row.mean_delay_ms);
  CHECK(*row.mean_delay_ms == 0.0);
}

TEST_CASE("packets buffered during discovery leave in FIFO order") {
  Net n(kChain, {});
  n.sim->run_until(SimTime::from_seconds(1));
  for (int i = 0; i < 5; ++i) n.aodv->originate_data(0, 3, 512);
  CHECK(n.aodv->discovery().buffered(0, 3) == 5);
  CHECK(n.tx(PacketKind::Rreq) == 1);
  n.sim->run();
  std::vector<PacketId> order;
  for (const auto& rec : n.sim->metrics().log()) {
    if (rec.type == LogRecord::Type::Deliver) order.push_back(rec.uid);
  }
  REQUIRE(order.size() == 5);
  CHECK(std::is_sorted(order.begin(), order.end()));
  CHECK(n.aodv->buffered_data() == 0);
}

TEST_CASE("destination answers the first copy only") {
  // Diamond: 0 reaches 3 through 1 or 2.
  Net n({{0, 0}, {150, 100}, {150, -100}, {300, 0}}, {stream(0, 3, 1.0, 1)});
  n.sim->run();
  CHECK(n.tx(PacketKind::Rreq) == 3);
  CHECK(n.tx(PacketKind::Rrep) == 2);  // 3 -> relay, relay -> 0
  const RouteEntry* back = n.aodv->discovery().routes(3).find(0);
  REQUIRE(back != nullptr);
  CHECK(back->next_hop == 1);  // first copy came through the lower id
}

TEST_CASE("ttl 1 stops the flood after one hop") {
  Scenario s = static_scenario(4, ProtocolKind::Aodv, 20.0, 1);
  Net n(kChain, {stream(0, 3, 1.0, 1)}, 20.0, s);
  n.sim->run();
  // The original flood and its two retries, none of them relayed.
  CHECK(n.tx(PacketKind::Rreq) == 3);
  CHECK(n.sim->metrics().finalize({}).drop(DropCause::DiscoveryTimeout) == 1);
}

TEST_CASE("unreachable destination: retries with fresh ids, then drops") {
  // 0 and 1 are connected; 2 is far away.
  Net n({{0, 0}, {200, 0}, {900, 900}}, {stream(0, 2, 1.0, 3, 0.01)});
  n.sim->run();
  const auto& floods = n.sim->metrics().floods();
  CHECK(floods.size() == 3);
  // A fresh id per attempt, so the neighbor relays every attempt.
  CHECK(n.tx(PacketKind::Rreq) == 6);
  const auto row = n.sim->metrics().finalize({});
  CHECK(row.drop(DropCause::DiscoveryTimeout) == 3);
  CHECK(row.in_flight == 0);
  CHECK(n.aodv->discovery().discovery_wait() >= SimTime::from_millis(100));
}

TEST_CASE("reply before the timer cancels the retry") {
  Net n(kChain, {stream(0, 3, 1.0, 1)});
  n.sim->run();
  CHECK(n.sim->metrics().floods().size() == 1);
  CHECK_FALSE(n.aodv->discovery().pending(0, 3));
}

TEST_CASE("link break: RERR travels upstream and the source floods again") {
  // Node 2 leaves the chain at t = 5 s.
  const double duration = 20.0;
  auto traces = static_traces(kChain, duration);
  WaypointTrace leaving;
  leaving.node = 2;
  leaving.duration = SimTime::from_seconds(duration);
  leaving.legs.push_back({SimTime{}, kChain[2], kChain[2], 1.0, SimTime{}, SimTime::from_seconds(5)});
  leaving.legs.push_back({SimTime::from_seconds(5), kChain[2], {400, 900}, 900.0, SimTime::from_seconds(6),
                          SimTime::from_seconds(14)});
  traces[2] = leaving;

  Scenario s = static_scenario(4, ProtocolKind::Aodv, duration);
  RunOptions opt;
  opt.keep_log = true;
  opt.traces = traces;
  opt.streams = std::vector<CbrStream>{stream(0, 3, 1.0, 40)};
  Simulation sim(s, std::move(opt));
  sim.run();
  auto& m = sim.metrics();
  CHECK(m.tx_count(PacketKind::Rerr) >= 1);
  std::size_t source_floods = 0;
  for (const auto& f : m.floods()) {
    if (f.origin == 0 && f.t > SimTime::from_seconds(5)) ++source_floods;
  }
  CHECK(source_floods >= 1);
  const auto row = m.finalize({});
  CHECK(row.drop(DropCause::LinkFailure) >= 1);
  CHECK(fixture::identity_violation(sim.result()).empty());
}

TEST_CASE("routes are loop-free and shortest on static graphs") {
  std::mt19937_64 rng(5);
  for (int g = 0; g < 10; ++g) {
    const auto pts = oracle::random_connected(20, 800, 800, 250.0, rng);
    std::uniform_int_distribution<NodeId> pick(1, 19);
    const NodeId dst = pick(rng);
    Net n(pts, {stream(0, dst, 1.0, 1)}, 5.0);
    n.sim->run();
    const auto& d = n.aodv->discovery();
    const auto hops = oracle::bfs_hops(pts, 250.0, dst);
    // Walk from every node that has a route to dst.
    for (NodeId start = 0; start < pts.size(); ++start) {
      const RouteEntry* r = d.routes(start).find(dst);
      if (r == nullptr || !r->active) continue;
      NodeId at = start;
      int steps = 0;
      while (at != dst && steps <= 20) {
        const RouteEntry* here = d.routes(at).find(dst);
        REQUIRE(here != nullptr);
        const RouteEntry* next = here->next_hop == dst ? nullptr : d.routes(here->next_hop).find(dst);
        if (next != nullptr) {
          const bool monotone = next->dst_seq > here->dst_seq ||
                                (next->dst_seq == here->dst_seq && next->hop_count < here->hop_count);
          CHECK(monotone);
        }
        at = here->next_hop;
        ++steps;
      }
      CHECK(at == dst);
    }
    const RouteEntry* src_route = d.routes(0).find(dst);
    REQUIRE(src_route != nullptr);
    CHECK(src_route->hop_count == hops[0]);
  }
}

TEST_CASE("every packet arrives on a static connected graph") {
  std::mt19937_64 rng(6);
  for (int g = 0; g < 5; ++g) {
    const auto pts = oracle::random_connected(25, 1000, 1000, 250.0, rng);
    std::vector<CbrStream> streams;
    for (NodeId i = 0; i < 5; ++i) streams.push_back(stream(i, 24 - i, 1.0 + 0.1 * i, 20));
    Net n(pts, streams, 30.0);
    n.sim->run();
    const auto row = n.sim->metrics().finalize({});
    CHECK(row.sent == 100);
    CHECK(row.delivered == 100);
  }
}

TEST_CASE("hello mode sends hellos and still accounts every packet") {
  Scenario s;
  s.protocol = ProtocolKind::Aodv;
  s.aodv.hello = true;
  s.duration = 60;
  s.pause = 0;
  const auto r = run_one(s);
  CHECK(r.tx_by_kind[static_cast<std::size_t>(PacketKind::Hello)] > 0);
  CHECK(fixture::identity_violation(r).empty());

  s.aodv.hello = false;
  const auto quiet = run_one(s);
  CHECK(quiet.tx_by_kind[static_cast<std::size_t>(PacketKind::Hello)] == 0);
  CHECK(quiet.tx_by_kind[static_cast<std::size_t>(PacketKind::Beacon)] == 0);
}
