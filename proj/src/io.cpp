#include "prodplan/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace prodplan {

std::string format_double(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

void write_csv(const std::string& path, const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path, std::ios::binary);  // binary: keep '\n' on every platform
    if (!out) throw ConfigError("cannot open " + path + " for writing");

    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (c > 0) out << ',';
        out << columns[c];
    }
    out << '\n';
    for (const auto& row : rows) {
        if (row.size() != columns.size()) {
            throw ConfigError("ragged CSV row while writing " + path);
        }
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c > 0) out << ',';
            out << format_double(row[c]);
        }
        out << '\n';
    }
    if (!out) throw ConfigError("write failed for " + path);
}

namespace {
const std::vector<std::string> kFieldColumns = {"r", "u", "z", "dz_dr", "d2z_dr2"};
}

void write_value_field_csv(const std::string& path, const DiscreteField& field,
                           const ValueField& vf) {
    const int n = field.grid.n_nodes;
    std::vector<std::vector<double>> rows;
    rows.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const std::size_t s = static_cast<std::size_t>(i);
        rows.push_back({field.grid.node(i), field.u[s], vf.z[s], vf.z_r[s], vf.z_rr[s]});
    }
    write_csv(path, kFieldColumns, rows);
}

StoredField read_value_field_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open " + path);

    std::string line;
    if (!std::getline(in, line)) throw ConfigError(path + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    {
        std::stringstream header(line);
        std::string cell;
        for (const std::string& expected : kFieldColumns) {
            if (!std::getline(header, cell, ',') || cell != expected) {
                throw ConfigError(path + ": expected columns r,u,z,dz_dr,d2z_dr2");
            }
        }
    }

    std::vector<double> r, u, z, z_r, z_rr;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::stringstream row(line);
        std::string cell;
        double values[5];
        for (int c = 0; c < 5; ++c) {
            if (!std::getline(row, cell, ',')) {
                throw ConfigError(path + ":" + std::to_string(line_no) + ": expected 5 columns");
            }
            try {
                std::size_t used = 0;
                values[c] = std::stod(cell, &used);
                if (used != cell.size()) throw std::invalid_argument(cell);
            } catch (const std::exception&) {
                throw ConfigError(path + ":" + std::to_string(line_no) + ": bad number '" + cell
                                  + "'");
            }
        }
        r.push_back(values[0]);
        u.push_back(values[1]);
        z.push_back(values[2]);
        z_r.push_back(values[3]);
        z_rr.push_back(values[4]);
    }

    const int n = static_cast<int>(r.size());
    if (n < 3) throw ConfigError(path + ": need at least 3 grid rows");
    if (r.front() != 0.0) throw ConfigError(path + ": grid must start at r = 0");
    const double spacing = r[1] - r[0];
    for (int i = 1; i < n; ++i) {
        const double expected = spacing * static_cast<double>(i);
        if (std::abs(r[static_cast<std::size_t>(i)] - expected) > 1e-9 * std::max(1.0, expected)) {
            throw ConfigError(path + ": grid spacing is not uniform");
        }
    }

    StoredField out;
    out.field.grid = build_grid(r.back(), n);
    out.field.u = std::move(u);
    out.values.grid = out.field.grid;
    out.values.z = std::move(z);
    out.values.z_r = std::move(z_r);
    out.values.z_rr = std::move(z_rr);
    return out;
}

}  // namespace prodplan
