#include "qcnet/io.hpp"

#include <cstdio>
#include <fstream>

#include "qcnet/errors.hpp"

namespace qcnet {

namespace {

constexpr const char* kModule = "io";

using nlohmann::json;

}  // namespace

std::uint64_t fnv1a64(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string config_hash(const json& config) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(config.dump())));
    return buf;
}

void stamp(json& j, const std::string& hash) {
    j["tool_version"] = kToolVersion;
    j["config_hash"] = hash;
}

json matrix_to_json(const Eigen::MatrixXd& M) {
    json data = json::array();
    for (int r = 0; r < M.rows(); ++r)
        for (int c = 0; c < M.cols(); ++c) data.push_back(M(r, c));
    return json{{"rows", M.rows()}, {"cols", M.cols()}, {"layout", "qqpp"}, {"data", data}};
}

Eigen::MatrixXd matrix_from_json(const json& j) {
    require(j.contains("rows") && j.contains("cols") && j.contains("data"), kModule,
            "parse-error", "matrix object needs rows/cols/data");
    const int rows = j.at("rows").get<int>();
    const int cols = j.at("cols").get<int>();
    const auto& data = j.at("data");
    require(static_cast<int>(data.size()) == rows * cols, kModule, "parse-error",
            "matrix data length does not match rows*cols");
    Eigen::MatrixXd M(rows, cols);
    int i = 0;
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) M(r, c) = data.at(i++).get<double>();
    return M;
}

json network_to_json(const OscillatorNetwork& net) {
    json edges = json::array();
    for (int i = 0; i < net.n; ++i)
        for (int j = i + 1; j < net.n; ++j)
            if (net.V(i, j) != 0.0) edges.push_back(json::array({i, j, net.V(i, j)}));
    json omega = json::array();
    for (int i = 0; i < net.n; ++i) omega.push_back(net.omega(i));
    return json{{"n", net.n}, {"omega", omega}, {"edges", edges}};
}

OscillatorNetwork network_from_json(const json& j) {
    require(j.contains("n") && j.contains("omega") && j.contains("edges"), kModule,
            "parse-error", "network object needs n/omega/edges");
    OscillatorNetwork net;
    net.n = j.at("n").get<int>();
    require(net.n >= 1, kModule, "parse-error", "n must be positive");
    const auto& omega = j.at("omega");
    require(static_cast<int>(omega.size()) == net.n, kModule, "parse-error",
            "omega length must equal n");
    net.omega.resize(net.n);
    for (int i = 0; i < net.n; ++i) net.omega(i) = omega.at(i).get<double>();
    net.V = Eigen::MatrixXd::Zero(net.n, net.n);
    for (const auto& e : j.at("edges")) {
        require(e.is_array() && (e.size() == 2 || e.size() == 3), kModule, "parse-error",
                "edge must be [i, j] or [i, j, w]");
        const int a = e.at(0).get<int>();
        const int b = e.at(1).get<int>();
        require(a >= 0 && a < net.n && b >= 0 && b < net.n && a != b, kModule, "parse-error",
                "edge endpoints out of range");
        const double w = e.size() == 3 ? e.at(2).get<double>() : 1.0;
        net.V(a, b) = w;
        net.V(b, a) = w;
    }
    net.validate();
    return net;
}

json state_to_json(const GaussianState& state) {
    json mean = json::array();
    for (int i = 0; i < state.mean.size(); ++i) mean.push_back(state.mean(i));
    json j{{"modes", state.modes()}, {"mean", mean}, {"cov", matrix_to_json(state.cov)}};
    j["cov"]["convention"] = "vacuum=0.5";
    return j;
}

GaussianState state_from_json(const json& j) {
    GaussianState state;
    state.cov = matrix_from_json(j.at("cov"));
    const auto& mean = j.at("mean");
    state.mean.resize(mean.size());
    for (std::size_t i = 0; i < mean.size(); ++i)
        state.mean(static_cast<int>(i)) = mean.at(i).get<double>();
    require(state.mean.size() == state.cov.rows(), kModule, "parse-error",
            "state mean and covariance dimensions differ");
    return state;
}

json bloch_messiah_to_json(const BlochMessiah& bm) {
    json diag = json::array();
    const Eigen::VectorXd d = bm.dsq_diagonal();
    for (int i = 0; i < d.size(); ++i) diag.push_back(d(i));
    return json{{"R1", matrix_to_json(bm.R1)},
                {"R2", matrix_to_json(bm.R2)},
                {"Dsq_diagonal", diag},
                {"residual", bm.residual},
                {"r2_droppable_on_vacuum", bm.r2_droppable_on_vacuum}};
}

json pump_to_json(const PumpShape& pump) {
    json omega = json::array(), re = json::array(), im = json::array();
    for (int i = 0; i < pump.omega.size(); ++i) {
        omega.push_back(pump.omega(i));
        re.push_back(pump.amplitude(i).real());
        im.push_back(pump.amplitude(i).imag());
    }
    json amps = json::array(), phases = json::array();
    for (int i = 0; i < pump.pixel_amplitude.size(); ++i) {
        amps.push_back(pump.pixel_amplitude(i));
        phases.push_back(pump.pixel_phase(i));
    }
    return json{{"omega", omega},
                {"amplitude_re", re},
                {"amplitude_im", im},
                {"pixel_amplitude", amps},
                {"pixel_phase", phases}};
}

void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    require(out.good(), kModule, "missing-input", "cannot open '" + path + "' for writing");
    out << j.dump(2) << "\n";
    require(out.good(), kModule, "write-failure", "failed writing '" + path + "'");
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), kModule, "missing-input", "cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        raise(kModule, "parse-error", std::string("invalid JSON in '") + path + "': " + e.what());
    }
    return j;
}

std::string format_double(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

void write_csv(const std::string& path, const std::string& hash,
               const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path);
    require(out.good(), kModule, "missing-input", "cannot open '" + path + "' for writing");
    out << "# tool_version=" << kToolVersion << "\n";
    out << "# config_hash=" << hash << "\n";
    for (std::size_t c = 0; c < columns.size(); ++c)
        out << columns[c] << (c + 1 < columns.size() ? "," : "");
    out << "\n";
    for (const auto& row : rows) {
        require(row.size() == columns.size(), kModule, "write-failure",
                "row width does not match header");
        for (std::size_t c = 0; c < row.size(); ++c)
            out << format_double(row[c]) << (c + 1 < row.size() ? "," : "");
        out << "\n";
    }
    require(out.good(), kModule, "write-failure", "failed writing '" + path + "'");
}

}  // namespace qcnet
