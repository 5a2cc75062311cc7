#include "hnf/trajectory.hpp"

#include <fstream>
#include <sstream>

namespace hnf {

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    return out;
}

}  // namespace

void save_csv(const std::string& path, const ComplexTrajectory& traj,
              const std::string& name) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "t";
    for (int k = 0; k < traj.n(); ++k)
        out << "," << name << k + 1 << "_re," << name << k + 1 << "_im";
    out << "\n";
    out.precision(12);
    for (std::size_t i = 0; i < traj.samples(); ++i) {
        out << traj.time_at(i);
        for (int k = 0; k < traj.n(); ++k)
            out << "," << traj.channels[k][i].real() << "," << traj.channels[k][i].imag();
        out << "\n";
    }
}

void save_csv(const std::string& path, const RealTrajectory& traj, const std::string& name) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "t";
    for (int k = 0; k < traj.n(); ++k) out << "," << name << k + 1;
    out << "\n";
    out.precision(12);
    for (std::size_t i = 0; i < traj.samples(); ++i) {
        out << traj.time_at(i);
        for (int k = 0; k < traj.n(); ++k) out << "," << traj.channels[k][i];
        out << "\n";
    }
}

ComplexTrajectory load_complex_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty csv: " + path);
    const auto header = split_line(line);
    if (header.size() < 3 || (header.size() - 1) % 2 != 0)
        throw std::runtime_error("complex csv needs t plus re/im column pairs: " + path);
    const int n = static_cast<int>((header.size() - 1) / 2);

    ComplexTrajectory traj;
    traj.channels.assign(n, {});
    double prev_t = 0.0, first_t = 0.0;
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto cells = split_line(line);
        if (cells.size() != header.size())
            throw std::runtime_error("ragged csv row in " + path);
        const double t = std::stod(cells[0]);
        if (rows == 0) first_t = t;
        if (rows == 1) traj.dt = t - first_t;
        prev_t = t;
        for (int k = 0; k < n; ++k)
            traj.channels[k].emplace_back(std::stod(cells[1 + 2 * k]),
                                          std::stod(cells[2 + 2 * k]));
        ++rows;
    }
    (void)prev_t;
    traj.t0 = first_t;
    traj.validate();
    return traj;
}

RealTrajectory load_real_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty csv: " + path);
    const auto header = split_line(line);
    if (header.size() < 2) throw std::runtime_error("csv needs t plus value columns");
    const int n = static_cast<int>(header.size() - 1);

    RealTrajectory traj;
    traj.channels.assign(n, {});
    double first_t = 0.0;
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto cells = split_line(line);
        if (cells.size() != header.size())
            throw std::runtime_error("ragged csv row in " + path);
        const double t = std::stod(cells[0]);
        if (rows == 0) first_t = t;
        if (rows == 1) traj.dt = t - first_t;
        for (int k = 0; k < n; ++k) traj.channels[k].push_back(std::stod(cells[1 + k]));
        ++rows;
    }
    traj.t0 = first_t;
    traj.validate();
    return traj;
}

std::vector<Complex> order_parameter(const std::vector<std::vector<double>>& phases) {
    if (phases.empty()) throw std::invalid_argument("order_parameter: no phases");
    const std::size_t len = phases.front().size();
    for (const auto& p : phases)
        if (p.size() != len) throw std::invalid_argument("order_parameter: ragged input");
    std::vector<Complex> z(len, Complex(0.0));
    for (const auto& p : phases)
        for (std::size_t i = 0; i < len; ++i) z[i] += std::polar(1.0, p[i]);
    const double inv = 1.0 / static_cast<double>(phases.size());
    for (auto& v : z) v *= inv;
    return z;
}

}  // namespace hnf
