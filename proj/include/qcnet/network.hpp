#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace qcnet {

/// Network of quantum harmonic oscillators: bare frequencies plus a
/// symmetric, zero-diagonal adjacency matrix of spring-like couplings.
/// Frequencies and couplings are dimensionless (hbar = k_B = 1).
struct OscillatorNetwork {
    int n = 0;
    Eigen::VectorXd omega;  // size n, all > 0
    Eigen::MatrixXd V;      // n x n, symmetric, zero diagonal, entries >= 0

    /// Throws netgraph/invalid-parameter if any invariant is violated.
    void validate() const;
};

/// Degree of each node: number of nonzero off-diagonal entries in its row.
std::vector<int> degrees(const OscillatorNetwork& net);

/// Number of undirected links (nonzero entries above the diagonal).
int edge_count(const OscillatorNetwork& net);

bool is_connected(const OscillatorNetwork& net);

enum class TopologyKind {
    PeriodicChain,
    ShortcutChain,
    ErdosRenyi,
    BarabasiAlbert,
    WattsStrogatz,
};

std::string to_string(TopologyKind kind);
TopologyKind topology_kind_from_string(const std::string& name);

struct TopologySpec {
    TopologyKind kind = TopologyKind::PeriodicChain;
    int n = 0;
    double omega0 = 0.25;  // uniform bare frequency
    double v = 0.1;        // uniform coupling strength

    // periodic chain: every weak_period-th ring link is reduced to v_weak
    // (v_weak < 0 means no weak links)
    double v_weak = -1.0;
    int weak_period = 3;

    // shortcut chain: weak links of strength v / shortcut_ratio added on top
    // of the linear chain, either explicitly or as a seeded random count
    double shortcut_ratio = 50.0;
    int shortcut_count = 0;
    std::vector<std::pair<int, int>> shortcut_edges;  // wins over shortcut_count

    // Erdos-Renyi
    double edge_prob = 0.1;

    // Barabasi-Albert: links attached per new node
    int attach_m = 3;

    // Watts-Strogatz
    int ring_degree = 4;      // even; nearest ring_degree/2 neighbours per side
    double rewire_prob = 0.2;
};

/// Deterministic generator: a pure function of (spec, seed).
OscillatorNetwork generate(const TopologySpec& spec, std::uint64_t seed);

enum class IndexBase { Auto, Zero, One };

/// Parses lines "i j [weight]" ('#' starts a comment). With IndexBase::Auto
/// the file is treated as 0-based when any 0 index appears, 1-based
/// otherwise. Missing weights default to default_v, all frequencies to
/// omega0. Node count = max index + 1 after conversion to 0-based.
OscillatorNetwork load_edge_list(std::istream& in, double default_v, double omega0,
                                 IndexBase base = IndexBase::Auto);
OscillatorNetwork load_edge_list(const std::string& text, double default_v, double omega0,
                                 IndexBase base = IndexBase::Auto);
OscillatorNetwork load_edge_list_file(const std::string& path, double default_v, double omega0,
                                      IndexBase base = IndexBase::Auto);

}  // namespace qcnet
