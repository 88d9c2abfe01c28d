#include "radns/io.hpp"

#include <array>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "radns/model.hpp"

namespace radns {

std::string format17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string moment_column(double k) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "k_moment_%g", k);
    return buf;
}

}  // namespace

std::string diagnostics_csv(const std::vector<SampleRow>& rows, const DiagnosticsConfig& cfg) {
    std::ostringstream out;
    out << "t,dt,min_rho,max_rho,kinetic,potential,bd_kinetic,bd_dissipation_rate,"
           "energy_residual,bd_residual";
    for (double k : cfg.k_moments) out << "," << moment_column(k);
    for (const auto& w : cfg.weighted_norms) out << ",wnorm_" << w.tag;
    out << ",boundary_contamination\n";

    for (const auto& row : rows) {
        const DiagnosticsSample& d = row.diag;
        out << format17(d.time) << ',' << format17(row.dt) << ',' << format17(d.min_rho) << ','
            << format17(d.max_rho) << ',' << format17(d.kinetic_energy) << ','
            << format17(d.potential_energy_total) << ',' << format17(d.bd_kinetic) << ','
            << format17(d.bd_dissipation_rate) << ',' << format17(d.energy_balance_residual)
            << ',' << format17(d.bd_balance_residual);
        for (const auto& [k, v] : d.k_moments) out << ',' << format17(v);
        for (const auto& [tag, v] : d.weighted_norms) out << ',' << format17(v);
        out << ',' << format17(row.boundary_contamination) << '\n';
    }
    return out.str();
}

std::string snapshot_text(const FluidState& state, const RadialGrid& grid,
                          const ModelParams& params) {
    const Field w = effective_velocity(state, grid, params);
    std::ostringstream out;
    out << "# radns snapshot 1\n";
    out << "# dim = " << grid.dim << "\n";
    out << "# alpha = " << format17(params.alpha) << "\n";
    out << "# gamma = " << format17(params.gamma) << "\n";
    out << "# pressure_coeff = " << format17(params.pressure_coeff) << "\n";
    if (params.far_density) out << "# far_density = " << format17(*params.far_density) << "\n";
    out << "# n_cells = " << grid.n_cells << "\n";
    out << "# r_max = " << format17(grid.r_max) << "\n";
    out << "# time = " << format17(state.time) << "\n";
    out << "# regime = " << to_string(state.regime) << "\n";
    out << "# columns: r rho u w\n";
    for (int i = 0; i < grid.n_cells; ++i)
        out << format17(grid.cell_centers[i]) << ' ' << format17(state.rho[i]) << ' '
            << format17(state.u[i]) << ' ' << format17(w[i]) << '\n';
    return out.str();
}

SnapshotData parse_snapshot(const std::string& text) {
    SnapshotData snap;
    std::istringstream in(text);
    std::string line;
    bool versioned = false;
    std::vector<std::array<double, 4>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (line.find("radns snapshot 1") != std::string::npos) {
                versioned = true;
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string::npos) continue;
            const std::string key = line.substr(1, eq - 1);
            const std::string value = line.substr(eq + 1);
            auto has = [&](const char* k) { return key.find(k) != std::string::npos; };
            if (has("dim")) snap.params.dim = std::stoi(value);
            else if (has("alpha")) snap.params.alpha = std::stod(value);
            else if (has("gamma")) snap.params.gamma = std::stod(value);
            else if (has("pressure_coeff")) snap.params.pressure_coeff = std::stod(value);
            else if (has("far_density")) snap.params.far_density = std::stod(value);
            else if (has("n_cells")) snap.n_cells = std::stoi(value);
            else if (has("r_max")) snap.r_max = std::stod(value);
            else if (has("time")) snap.time = std::stod(value);
            else if (has("regime"))
                snap.regime = value.find("ball") != std::string::npos ? Regime::ball
                                                                      : Regime::cauchy;
            continue;
        }
        std::istringstream ss(line);
        std::array<double, 4> row{};
        if (!(ss >> row[0] >> row[1] >> row[2] >> row[3]))
            throw std::invalid_argument("malformed snapshot row: " + line);
        rows.push_back(row);
    }
    if (!versioned) throw std::invalid_argument("not a radns snapshot (missing version line)");
    if (static_cast<int>(rows.size()) != snap.n_cells)
        throw std::invalid_argument("snapshot row count does not match n_cells header");
    snap.r.resize(rows.size());
    snap.rho.resize(rows.size());
    snap.u.resize(rows.size());
    snap.w.resize(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        snap.r[i] = rows[i][0];
        snap.rho[i] = rows[i][1];
        snap.u[i] = rows[i][2];
        snap.w[i] = rows[i][3];
    }
    return snap;
}

namespace {

// Compact SHA-1 (RFC 3174), enough for content addressing of run outputs.
class Sha1 {
  public:
    void update(const unsigned char* data, std::size_t len) {
        total_ += len;
        while (len > 0) {
            const std::size_t take = std::min(len, std::size_t(64) - fill_);
            std::memcpy(block_ + fill_, data, take);
            fill_ += take;
            data += take;
            len -= take;
            if (fill_ == 64) {
                process();
                fill_ = 0;
            }
        }
    }

    std::string hex_digest() {
        const std::uint64_t bits = total_ * 8;
        const unsigned char one = 0x80;
        update(&one, 1);
        const unsigned char zero = 0x00;
        while (fill_ != 56) update(&zero, 1);
        unsigned char len_be[8];
        for (int i = 0; i < 8; ++i) len_be[i] = static_cast<unsigned char>(bits >> (56 - 8 * i));
        update(len_be, 8);
        char out[41];
        for (int i = 0; i < 5; ++i) std::snprintf(out + 8 * i, 9, "%08x", h_[i]);
        return std::string(out, 40);
    }

  private:
    static std::uint32_t rol(std::uint32_t x, int s) { return (x << s) | (x >> (32 - s)); }

    void process() {
        std::uint32_t w[80];
        for (int i = 0; i < 16; ++i)
            w[i] = (std::uint32_t(block_[4 * i]) << 24) | (std::uint32_t(block_[4 * i + 1]) << 16) |
                   (std::uint32_t(block_[4 * i + 2]) << 8) | std::uint32_t(block_[4 * i + 3]);
        for (int i = 16; i < 80; ++i) w[i] = rol(w[i - 3] ^ w[i - 8] ^ w[i - 14] ^ w[i - 16], 1);
        std::uint32_t a = h_[0], b = h_[1], c = h_[2], d = h_[3], e = h_[4];
        for (int i = 0; i < 80; ++i) {
            std::uint32_t f, k;
            if (i < 20) {
                f = (b & c) | (~b & d);
                k = 0x5A827999u;
            } else if (i < 40) {
                f = b ^ c ^ d;
                k = 0x6ED9EBA1u;
            } else if (i < 60) {
                f = (b & c) | (b & d) | (c & d);
                k = 0x8F1BBCDCu;
            } else {
                f = b ^ c ^ d;
                k = 0xCA62C1D6u;
            }
            const std::uint32_t tmp = rol(a, 5) + f + e + k + w[i];
            e = d;
            d = c;
            c = rol(b, 30);
            b = a;
            a = tmp;
        }
        h_[0] += a;
        h_[1] += b;
        h_[2] += c;
        h_[3] += d;
        h_[4] += e;
    }

    std::uint32_t h_[5] = {0x67452301u, 0xEFCDAB89u, 0x98BADCFEu, 0x10325476u, 0xC3D2E1F0u};
    unsigned char block_[64] = {};
    std::size_t fill_ = 0;
    std::uint64_t total_ = 0;
};

}  // namespace

std::string git_blob_sha1(const std::string& bytes) {
    Sha1 sha;
    const std::string header = "blob " + std::to_string(bytes.size());
    sha.update(reinterpret_cast<const unsigned char*>(header.data()), header.size());
    const unsigned char nul = 0;
    sha.update(&nul, 1);
    sha.update(reinterpret_cast<const unsigned char*>(bytes.data()), bytes.size());
    return sha.hex_digest();
}

void write_file(const std::string& path, const std::string& content) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace radns
