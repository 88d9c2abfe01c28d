#include "radns/grid.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace radns {

RadialGrid build_grid(int n_cells, double r_max, int dim) {
    if (n_cells < 8) throw std::invalid_argument("build_grid: n_cells must be >= 8");
    if (!(r_max > 0.0)) throw std::invalid_argument("build_grid: r_max must be positive");
    if (dim != 2 && dim != 3) throw std::invalid_argument("build_grid: dim must be 2 or 3");

    RadialGrid g;
    g.n_cells = n_cells;
    g.r_max = r_max;
    g.dim = dim;
    g.dr = r_max / n_cells;
    g.faces = Field::LinSpaced(n_cells + 1, 0.0, r_max);
    g.cell_centers = 0.5 * (g.faces.head(n_cells) + g.faces.tail(n_cells));
    g.metric_weights =
        (g.faces.tail(n_cells).pow(dim) - g.faces.head(n_cells).pow(dim)) / dim;
    return g;
}

void require_valid(const FluidState& s, const RadialGrid& g) {
    if (s.rho.size() != g.n_cells || s.u.size() != g.n_cells)
        throw std::domain_error("state fields do not match grid size");
    if (!s.rho.isFinite().all() || !s.u.isFinite().all())
        throw std::domain_error("state contains non-finite values");
    if (!(s.rho > 0.0).all())
        throw std::domain_error("degenerate input: density must be strictly positive");
}

namespace {

// Mollifier bump: 1 at s=0, C-infinity, support |s| < 1.
double compact_bump(double s) {
    const double s2 = s * s;
    if (s2 >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - s2));
}

struct TableRow {
    double r, rho, u;
};

std::vector<TableRow> read_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open table file: " + path);
    std::vector<TableRow> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        TableRow row{};
        if (!(ss >> row.r >> row.rho >> row.u))
            throw std::invalid_argument("malformed table row: " + line);
        rows.push_back(row);
    }
    if (rows.size() < 2) throw std::invalid_argument("table needs at least two rows");
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (!(rows[i].r > rows[i - 1].r))
            throw std::invalid_argument("table radii must be strictly increasing");
    return rows;
}

double lerp_table(const std::vector<TableRow>& rows, double r, double TableRow::*col) {
    if (r <= rows.front().r) return rows.front().*col;
    if (r >= rows.back().r) return rows.back().*col;
    auto it = std::lower_bound(rows.begin(), rows.end(), r,
                               [](const TableRow& a, double x) { return a.r < x; });
    const TableRow& hi = *it;
    const TableRow& lo = *(it - 1);
    const double t = (r - lo.r) / (hi.r - lo.r);
    return (1.0 - t) * (lo.*col) + t * (hi.*col);
}

}  // namespace

FluidState make_initial_data(const InitialDataSpec& spec, const RadialGrid& grid,
                             const ModelParams& params, Regime regime,
                             std::vector<std::string>* warnings) {
    const double rho_far = params.far_density_or_throw();
    const Field& r = grid.cell_centers;

    FluidState s;
    s.time = 0.0;
    s.regime = regime;
    s.rho = Field::Constant(grid.n_cells, rho_far);
    s.u = Field::Zero(grid.n_cells);

    switch (spec.kind) {
        case InitialKind::constant:
            break;
        case InitialKind::gaussian_bump: {
            if (spec.amplitude <= -rho_far)
                throw std::invalid_argument("bump amplitude <= -far_density loses positivity");
            if (!(spec.width > 0.0)) throw std::invalid_argument("bump width must be positive");
            const double w2 = spec.width * spec.width;
            // symmetrized so rho0 is exactly even about r = 0
            s.rho += spec.amplitude * (((r - spec.center).square() / -w2).exp() +
                                       ((r + spec.center).square() / -w2).exp());
            break;
        }
        case InitialKind::compacted_bump: {
            if (spec.amplitude <= -rho_far)
                throw std::invalid_argument("bump amplitude <= -far_density loses positivity");
            if (!(spec.width > 0.0)) throw std::invalid_argument("bump width must be positive");
            for (int i = 0; i < grid.n_cells; ++i)
                s.rho[i] += spec.amplitude * (compact_bump((r[i] - spec.center) / spec.width) +
                                              compact_bump((r[i] + spec.center) / spec.width));
            break;
        }
        case InitialKind::custom_table: {
            const auto rows = read_table(spec.table_file);
            for (int i = 0; i < grid.n_cells; ++i) {
                s.rho[i] = lerp_table(rows, r[i], &TableRow::rho);
                s.u[i] = lerp_table(rows, r[i], &TableRow::u);
            }
            break;
        }
    }

    if (spec.velocity_amplitude != 0.0) {
        if (!(spec.velocity_width > 0.0))
            throw std::invalid_argument("velocity width must be positive");
        const double w2 = spec.velocity_width * spec.velocity_width;
        s.u += spec.velocity_amplitude * r * (r.square() / -w2).exp();
    }

    if (warnings &&
        (spec.kind == InitialKind::gaussian_bump || spec.kind == InitialKind::compacted_bump) &&
        spec.amplitude != 0.0) {
        double tail = 0.0;
        if (spec.kind == InitialKind::gaussian_bump) {
            const double z = (grid.r_max - spec.center) / spec.width;
            tail = std::exp(-z * z);
        } else {
            tail = compact_bump((grid.r_max - spec.center) / spec.width);
        }
        if (tail > 1e-12)
            warnings->push_back("density bump has not decayed below 1e-12 of its amplitude at r_max");
    }

    require_valid(s, grid);
    return s;
}

Field mass_coordinate(const FluidState& state, const RadialGrid& grid) {
    require_valid(state, grid);
    Field y(grid.n_cells);
    const int N = grid.dim;
    double accum = 0.0;
    for (int i = 0; i < grid.n_cells; ++i) {
        // inner half-cell up to the center, with the exact geometric integral
        const double half =
            (std::pow(grid.cell_centers[i], N) - std::pow(grid.faces[i], N)) / N;
        y[i] = accum + state.rho[i] * half;
        accum += state.rho[i] * grid.metric_weights[i];
    }
    return y;
}

Field cell_weights_rpow(const RadialGrid& grid, double m) {
    return cell_weights_rpow(grid, m, 0.0, grid.r_max);
}

Field cell_weights_rpow(const RadialGrid& grid, double m, double lo, double hi) {
    Field w = Field::Zero(grid.n_cells);
    const double e = m + 1.0;
    for (int i = 0; i < grid.n_cells; ++i) {
        const double a = std::max(grid.faces[i], lo);
        const double b = std::min(grid.faces[i + 1], hi);
        if (b <= a) continue;
        w[i] = (std::abs(e) < 1e-14) ? std::log(b / a)
                                     : (std::pow(b, e) - std::pow(a, e)) / e;
    }
    return w;
}

double integrate(const Field& f, const RadialGrid& grid) {
    return (f * grid.metric_weights).sum();
}

double weighted_lp_norm(const Field& field, const RadialGrid& grid, double p,
                        double weight_exponent, double lo, double hi) {
    if (!(p >= 1.0)) throw std::invalid_argument("weighted_lp_norm: p must be >= 1");
    if (!(lo < hi)) throw std::invalid_argument("weighted_lp_norm: empty interval");
    if (field.size() != grid.n_cells)
        throw std::invalid_argument("weighted_lp_norm: field/grid size mismatch");

    if (std::isinf(p)) {
        double sup = 0.0;
        for (int i = 0; i < grid.n_cells; ++i) {
            const double r = grid.cell_centers[i];
            if (r < lo || r > hi) continue;
            sup = std::max(sup, std::abs(field[i]) * std::pow(r, weight_exponent));
        }
        return sup;
    }
    const double m = grid.dim - 1 + weight_exponent * p;
    if (m >= 0.0) {
        const Field w = cell_weights_rpow(grid, m, lo, hi);
        return std::pow((field.abs().pow(p) * w).sum(), 1.0 / p);
    }
    // negative net exponent: midpoint rule keeps the weight finite per cell
    double sum = 0.0;
    for (int i = 0; i < grid.n_cells; ++i) {
        const double a = std::max(grid.faces[i], lo);
        const double b = std::min(grid.faces[i + 1], hi);
        if (b <= a) continue;
        const double r = grid.cell_centers[i];
        sum += std::pow(std::abs(field[i]), p) * std::pow(r, m) * (b - a);
    }
    return std::pow(sum, 1.0 / p);
}

double weighted_lp_norm(const Field& field, const RadialGrid& grid, double p,
                        double weight_exponent) {
    return weighted_lp_norm(field, grid, p, weight_exponent, 0.0, grid.r_max);
}

}  // namespace radns
