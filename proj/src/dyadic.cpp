#include "wiener/dyadic.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include <json.hpp>

namespace wiener {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

std::string shortest(double x) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    if (ec != std::errc{}) fail("float formatting failed");
    return std::string(buf, ptr);
}

} // namespace

DyadicGrid::DyadicGrid(double a, int n) : horizon(a), level(n) {
    if (!(a > 0.0)) fail("grid horizon must be positive");
    if (n < 1) fail("grid level must be >= 1");
    if (n > 30) fail("grid level too large");
}

GridPath::GridPath(DyadicGrid g, std::vector<double> values)
    : grid(g), levels(std::move(values)) {
    if (levels.size() != grid.count()) fail("levels length must equal 2^n");
}

IncrementVector::IncrementVector(DyadicGrid g, std::vector<double> incs)
    : grid(g), increments(std::move(incs)) {
    if (increments.size() != grid.count()) fail("increments length must equal 2^n");
}

IncrementVector project(const GridPath& path) {
    std::vector<double> incs(path.levels.size());
    double prev = 0.0;
    for (std::size_t i = 0; i < path.levels.size(); ++i) {
        incs[i] = path.levels[i] - prev;
        prev = path.levels[i];
    }
    return IncrementVector(path.grid, std::move(incs));
}

GridPath cumulate(const IncrementVector& inc) {
    std::vector<double> levels(inc.increments.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < inc.increments.size(); ++i) {
        sum += inc.increments[i];
        levels[i] = sum;
    }
    return GridPath(inc.grid, std::move(levels));
}

GridPath refine(const GridPath& path, int to_level) {
    const int from = path.grid.level;
    if (to_level < from) fail("cannot coarsen with refine");
    if (to_level == from) return path;

    const std::size_t factor = std::size_t{1} << (to_level - from);
    const std::size_t fine_count = path.grid.count() * factor;
    std::vector<double> levels(fine_count);
    for (std::size_t k = 1; k <= fine_count; ++k) {
        const std::size_t j = k / factor;   // coarse cell index
        const std::size_t rem = k % factor;
        if (rem == 0) {
            levels[k - 1] = path.value(j);
        } else {
            const double lo = path.value(j);
            const double hi = path.value(j + 1);
            const double frac = static_cast<double>(rem) / static_cast<double>(factor);
            levels[k - 1] = lo + frac * (hi - lo);
        }
    }
    return GridPath(DyadicGrid(path.grid.horizon, to_level), std::move(levels));
}

GridPath restrict_path(const GridPath& path, int to_level) {
    const int from = path.grid.level;
    if (to_level > from) fail("restrict cannot refine; target level exceeds path level");
    if (to_level < 1) fail("target level must be >= 1");
    if (to_level == from) return path;

    const std::size_t stride = std::size_t{1} << (from - to_level);
    const std::size_t coarse_count = std::size_t{1} << to_level;
    std::vector<double> levels(coarse_count);
    for (std::size_t k = 1; k <= coarse_count; ++k)
        levels[k - 1] = path.levels[k * stride - 1];
    return GridPath(DyadicGrid(path.grid.horizon, to_level), std::move(levels));
}

std::string grid_path_to_json(const GridPath& path) {
    nlohmann::ordered_json j;
    j["a"] = path.grid.horizon;
    j["n"] = path.grid.level;
    j["levels"] = path.levels;
    return j.dump();
}

GridPath grid_path_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    DyadicGrid grid(j.at("a").get<double>(), j.at("n").get<int>());
    return GridPath(grid, j.at("levels").get<std::vector<double>>());
}

std::string grid_path_to_csv(const GridPath& path) {
    std::string out = "t,x\n";
    out += shortest(0.0);
    out += ",";
    out += shortest(0.0);
    out += "\n";
    for (std::size_t k = 1; k <= path.grid.count(); ++k) {
        out += shortest(path.grid.time(k));
        out += ",";
        out += shortest(path.levels[k - 1]);
        out += "\n";
    }
    return out;
}

GridPath grid_path_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<double> times, values;
    while (std::getline(in, line)) {
        if (line.empty() || line == "t,x") continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) fail("malformed CSV row: " + line);
        double t = 0.0, x = 0.0;
        auto r1 = std::from_chars(line.data(), line.data() + comma, t);
        auto r2 = std::from_chars(line.data() + comma + 1, line.data() + line.size(), x);
        if (r1.ec != std::errc{} || r2.ec != std::errc{}) fail("malformed CSV row: " + line);
        times.push_back(t);
        values.push_back(x);
    }
    if (times.size() < 2 || times.front() != 0.0) fail("CSV path must start at t = 0");
    const std::size_t count = times.size() - 1;
    if ((count & (count - 1)) != 0) fail("CSV path must have 2^n + 1 rows");
    int level = 0;
    while ((std::size_t{1} << level) < count) ++level;
    DyadicGrid grid(times.back(), level);
    return GridPath(grid, std::vector<double>(values.begin() + 1, values.end()));
}

} // namespace wiener
