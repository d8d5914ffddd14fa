#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qcnet/network.hpp"

namespace qcnet {

/// Generated reference networks A-E (ring chain, chain with weak shortcuts,
/// random, scale-free, small-world). Parameters the source figures leave
/// open (edge probability, shortcut placement, seeds) are declared here so
/// every run reproduces the same graphs.
struct Fixture {
    std::string id;      // "A".."E"
    std::string name;
    TopologySpec spec;
    std::uint64_t seed = 0;
};

Fixture fixture_periodic_chain();   // A: 51 nodes, v=0.1, 0.06 every 3rd link
Fixture fixture_shortcut_chain();   // B: 50 nodes, v=0.1, weak shortcuts v/50
Fixture fixture_random();           // C: Erdos-Renyi, 50 nodes, v=0.01, p=0.1
Fixture fixture_barabasi_albert();  // D: 50 nodes, m=3, v=0.05
Fixture fixture_watts_strogatz();   // E: 50 nodes, ring degree 4, p=0.2, v=0.05

std::vector<Fixture> generated_fixtures();

OscillatorNetwork build_fixture(const Fixture& f);

}  // namespace qcnet
