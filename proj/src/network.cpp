#include "qcnet/network.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "qcnet/errors.hpp"
#include "qcnet/rng.hpp"

namespace qcnet {

namespace {

constexpr const char* kModule = "netgraph";

void check(bool cond, const std::string& message) {
    require(cond, kModule, "invalid-parameter", message);
}

Eigen::MatrixXd zero_matrix(int n) { return Eigen::MatrixXd::Zero(n, n); }

OscillatorNetwork finish(int n, double omega0, Eigen::MatrixXd V) {
    OscillatorNetwork net;
    net.n = n;
    net.omega = Eigen::VectorXd::Constant(n, omega0);
    net.V = std::move(V);
    net.validate();
    return net;
}

void add_link(Eigen::MatrixXd& V, int i, int j, double w) {
    V(i, j) = w;
    V(j, i) = w;
}

}  // namespace

void OscillatorNetwork::validate() const {
    check(n >= 1, "network must contain at least one node");
    check(omega.size() == n, "omega size must equal node count");
    check(V.rows() == n && V.cols() == n, "V must be n x n");
    for (int i = 0; i < n; ++i) {
        check(omega(i) > 0.0, "omega[" + std::to_string(i) + "] must be positive");
        check(V(i, i) == 0.0, "V diagonal must be zero at index " + std::to_string(i));
        for (int j = i + 1; j < n; ++j) {
            check(V(i, j) == V(j, i), "V must be symmetric at (" + std::to_string(i) + "," +
                                          std::to_string(j) + ")");
            check(V(i, j) >= 0.0, "coupling v[" + std::to_string(i) + "][" + std::to_string(j) +
                                      "] must be non-negative");
        }
    }
}

std::vector<int> degrees(const OscillatorNetwork& net) {
    std::vector<int> deg(net.n, 0);
    for (int i = 0; i < net.n; ++i)
        for (int j = 0; j < net.n; ++j)
            if (j != i && net.V(i, j) != 0.0) ++deg[i];
    return deg;
}

int edge_count(const OscillatorNetwork& net) {
    int m = 0;
    for (int i = 0; i < net.n; ++i)
        for (int j = i + 1; j < net.n; ++j)
            if (net.V(i, j) != 0.0) ++m;
    return m;
}

bool is_connected(const OscillatorNetwork& net) {
    if (net.n == 0) return false;
    std::vector<int> stack{0};
    std::vector<bool> seen(net.n, false);
    seen[0] = true;
    int count = 1;
    while (!stack.empty()) {
        const int i = stack.back();
        stack.pop_back();
        for (int j = 0; j < net.n; ++j) {
            if (!seen[j] && net.V(i, j) != 0.0) {
                seen[j] = true;
                ++count;
                stack.push_back(j);
            }
        }
    }
    return count == net.n;
}

std::string to_string(TopologyKind kind) {
    switch (kind) {
        case TopologyKind::PeriodicChain: return "periodic-chain";
        case TopologyKind::ShortcutChain: return "shortcut-chain";
        case TopologyKind::ErdosRenyi: return "erdos-renyi";
        case TopologyKind::BarabasiAlbert: return "barabasi-albert";
        case TopologyKind::WattsStrogatz: return "watts-strogatz";
    }
    return "unknown";
}

TopologyKind topology_kind_from_string(const std::string& name) {
    if (name == "periodic-chain") return TopologyKind::PeriodicChain;
    if (name == "shortcut-chain") return TopologyKind::ShortcutChain;
    if (name == "erdos-renyi") return TopologyKind::ErdosRenyi;
    if (name == "barabasi-albert") return TopologyKind::BarabasiAlbert;
    if (name == "watts-strogatz") return TopologyKind::WattsStrogatz;
    raise(kModule, "invalid-parameter", "unknown topology kind '" + name + "'");
}

namespace {

void check_common(const TopologySpec& spec) {
    check(spec.n >= 1, "node count n must be positive");
    check(spec.omega0 > 0.0, "omega0 must be positive");
    check(spec.v >= 0.0, "coupling v must be non-negative");
}

OscillatorNetwork make_periodic_chain(const TopologySpec& spec) {
    check(spec.n >= 3, "periodic chain needs at least 3 nodes");
    if (spec.v_weak >= 0.0) check(spec.weak_period >= 1, "weak_period must be >= 1");
    Eigen::MatrixXd V = zero_matrix(spec.n);
    for (int link = 0; link < spec.n; ++link) {
        const int i = link;
        const int j = (link + 1) % spec.n;
        double w = spec.v;
        // links are numbered 1..n; every weak_period-th one is reduced
        if (spec.v_weak >= 0.0 && (link + 1) % spec.weak_period == 0) w = spec.v_weak;
        add_link(V, i, j, w);
    }
    return finish(spec.n, spec.omega0, std::move(V));
}

Eigen::MatrixXd linear_chain(int n, double v) {
    Eigen::MatrixXd V = zero_matrix(n);
    for (int i = 0; i + 1 < n; ++i) add_link(V, i, i + 1, v);
    return V;
}

OscillatorNetwork make_shortcut_chain(const TopologySpec& spec, std::uint64_t seed) {
    check(spec.n >= 2, "chain needs at least 2 nodes");
    check(spec.shortcut_ratio > 0.0, "shortcut_ratio must be positive");
    Eigen::MatrixXd V = linear_chain(spec.n, spec.v);
    const double w = spec.v / spec.shortcut_ratio;
    if (!spec.shortcut_edges.empty()) {
        for (auto [i, j] : spec.shortcut_edges) {
            check(i >= 0 && i < spec.n && j >= 0 && j < spec.n, "shortcut index out of range");
            check(i != j, "shortcut must not be a self-loop");
            check(V(i, j) == 0.0, "shortcut duplicates an existing link");
            add_link(V, i, j, w);
        }
    } else if (spec.shortcut_count > 0) {
        check(spec.n >= 4, "random shortcuts need at least 4 nodes");
        Rng rng(seed);
        int placed = 0;
        while (placed < spec.shortcut_count) {
            const int i = rng.index(spec.n);
            const int j = rng.index(spec.n);
            if (i == j || std::abs(i - j) == 1) continue;  // skip chain links
            if (V(std::min(i, j), std::max(i, j)) != 0.0) continue;
            add_link(V, i, j, w);
            ++placed;
        }
    }
    return finish(spec.n, spec.omega0, std::move(V));
}

OscillatorNetwork make_erdos_renyi(const TopologySpec& spec, std::uint64_t seed) {
    check(spec.edge_prob >= 0.0 && spec.edge_prob <= 1.0, "edge_prob must be in [0,1]");
    Eigen::MatrixXd V = zero_matrix(spec.n);
    Rng rng(seed);
    for (int i = 0; i < spec.n; ++i)
        for (int j = i + 1; j < spec.n; ++j)
            if (rng.bernoulli(spec.edge_prob)) add_link(V, i, j, spec.v);
    return finish(spec.n, spec.omega0, std::move(V));
}

OscillatorNetwork make_barabasi_albert(const TopologySpec& spec, std::uint64_t seed) {
    const int m = spec.attach_m;
    check(m >= 1, "attach_m must be >= 1");
    check(m < spec.n, "attach_m must be smaller than the node count");
    Eigen::MatrixXd V = zero_matrix(spec.n);
    Rng rng(seed);
    // Start from m isolated nodes; every new node attaches m links to
    // distinct targets drawn preferentially (each endpoint of an existing
    // link counts once), so the final graph has (n - m) * m links.
    std::vector<int> endpoints;
    endpoints.reserve(2 * (spec.n - m) * m);
    for (int node = m; node < spec.n; ++node) {
        std::set<int> targets;
        while (static_cast<int>(targets.size()) < m) {
            const int candidate = endpoints.empty()
                                      ? rng.index(node)
                                      : endpoints[rng.index(static_cast<int>(endpoints.size()))];
            targets.insert(candidate);
        }
        for (int t : targets) {
            add_link(V, node, t, spec.v);
            endpoints.push_back(node);
            endpoints.push_back(t);
        }
    }
    return finish(spec.n, spec.omega0, std::move(V));
}

OscillatorNetwork make_watts_strogatz(const TopologySpec& spec, std::uint64_t seed) {
    const int k = spec.ring_degree;
    check(k >= 2 && k % 2 == 0, "ring_degree must be a positive even number");
    check(k < spec.n, "ring_degree must be smaller than the node count");
    check(spec.rewire_prob >= 0.0 && spec.rewire_prob <= 1.0, "rewire_prob must be in [0,1]");
    Eigen::MatrixXd V = zero_matrix(spec.n);
    for (int i = 0; i < spec.n; ++i)
        for (int d = 1; d <= k / 2; ++d) add_link(V, i, (i + d) % spec.n, spec.v);
    Rng rng(seed);
    // Standard rewiring pass: each rightward lattice link may move its far
    // endpoint; moves creating self-loops or duplicates are skipped, so the
    // link count is conserved.
    for (int d = 1; d <= k / 2; ++d) {
        for (int i = 0; i < spec.n; ++i) {
            if (!rng.bernoulli(spec.rewire_prob)) continue;
            const int j = (i + d) % spec.n;
            const int target = rng.index(spec.n);
            if (target == i || target == j) continue;
            if (V(i, target) != 0.0) continue;
            if (V(i, j) == 0.0) continue;  // already rewired away
            add_link(V, i, j, 0.0);
            add_link(V, i, target, spec.v);
        }
    }
    return finish(spec.n, spec.omega0, std::move(V));
}

}  // namespace

OscillatorNetwork generate(const TopologySpec& spec, std::uint64_t seed) {
    check_common(spec);
    switch (spec.kind) {
        case TopologyKind::PeriodicChain: return make_periodic_chain(spec);
        case TopologyKind::ShortcutChain: return make_shortcut_chain(spec, seed);
        case TopologyKind::ErdosRenyi: return make_erdos_renyi(spec, seed);
        case TopologyKind::BarabasiAlbert: return make_barabasi_albert(spec, seed);
        case TopologyKind::WattsStrogatz: return make_watts_strogatz(spec, seed);
    }
    raise(kModule, "invalid-parameter", "unknown topology kind");
}

namespace {

[[noreturn]] void parse_fail(int line, const std::string& message) {
    raise(kModule, "parse-error", "line " + std::to_string(line) + ": " + message);
}

}  // namespace

OscillatorNetwork load_edge_list(std::istream& in, double default_v, double omega0,
                                 IndexBase base) {
    check(default_v >= 0.0, "default weight must be non-negative");
    check(omega0 > 0.0, "omega0 must be positive");

    struct RawEdge {
        int i, j, line;
        double w;
    };
    std::vector<RawEdge> edges;
    std::string line;
    int line_no = 0;
    int min_index = std::numeric_limits<int>::max();
    int max_index = -1;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        long long i, j;
        if (!(ls >> i)) continue;  // blank or comment-only line
        if (!(ls >> j)) parse_fail(line_no, "expected two indices");
        double w = default_v;
        std::string extra;
        if (ls >> extra) {
            std::istringstream ws(extra);
            if (!(ws >> w) || !ws.eof()) parse_fail(line_no, "bad weight '" + extra + "'");
            if (w < 0.0) parse_fail(line_no, "negative weight");
        }
        if (ls >> extra) parse_fail(line_no, "trailing token '" + extra + "'");
        if (i < 0 || j < 0) parse_fail(line_no, "negative index");
        if (i > 1'000'000 || j > 1'000'000) parse_fail(line_no, "index out of supported range");
        if (i == j) parse_fail(line_no, "self-loop " + std::to_string(i));
        edges.push_back({static_cast<int>(i), static_cast<int>(j), line_no, w});
        min_index = std::min({min_index, static_cast<int>(i), static_cast<int>(j)});
        max_index = std::max({max_index, static_cast<int>(i), static_cast<int>(j)});
    }
    if (edges.empty()) raise(kModule, "parse-error", "no edges found in input");

    int shift = 0;
    if (base == IndexBase::One || (base == IndexBase::Auto && min_index >= 1)) shift = 1;
    const int n = max_index + 1 - shift;

    Eigen::MatrixXd V = zero_matrix(n);
    for (const auto& e : edges) {
        const int i = e.i - shift;
        const int j = e.j - shift;
        if (i < 0 || j < 0) parse_fail(e.line, "index 0 in a 1-based edge list");
        if (V(i, j) != 0.0 && V(i, j) != e.w)
            parse_fail(e.line, "duplicate edge (" + std::to_string(e.i) + "," +
                                   std::to_string(e.j) + ") with conflicting weight");
        add_link(V, i, j, e.w);
    }
    return finish(n, omega0, std::move(V));
}

OscillatorNetwork load_edge_list(const std::string& text, double default_v, double omega0,
                                 IndexBase base) {
    std::istringstream in(text);
    return load_edge_list(in, default_v, omega0, base);
}

OscillatorNetwork load_edge_list_file(const std::string& path, double default_v, double omega0,
                                      IndexBase base) {
    std::ifstream in(path);
    require(in.good(), kModule, "missing-input", "cannot open edge list '" + path + "'");
    return load_edge_list(in, default_v, omega0, base);
}

}  // namespace qcnet
