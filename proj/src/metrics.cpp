#include "nsgafh/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace nsgafh::metrics {

namespace {

/// Prefix-minimum Fenwick tree.
class MinTree {
public:
    explicit MinTree(std::size_t n) : tree_(n + 1, std::numeric_limits<double>::infinity()) {}

    void insert(std::size_t pos, double value) {
        for (std::size_t i = pos + 1; i < tree_.size(); i += i & (~i + 1)) tree_[i] = std::min(tree_[i], value);
    }

    /// Minimum over positions [0, pos].
    double prefix_min(std::size_t pos) const {
        double m = std::numeric_limits<double>::infinity();
        for (std::size_t i = pos + 1; i > 0; i -= i & (~i + 1)) m = std::min(m, tree_[i]);
        return m;
    }

private:
    std::vector<double> tree_;
};

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace

std::vector<std::size_t> nondominated_indices(const std::vector<Point>& points) {
    std::vector<std::size_t> order(points.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    if (points.empty()) return order;
    const std::size_t m = points.front().size();
    for (const Point& p : points) {
        if (p.size() != m) throw ContractViolation("nondominated_indices: mixed dimensions");
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return points[a] < points[b]; });
    order.erase(std::unique(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return points[a] == points[b]; }),
                order.end());

    // In lexicographic order every dominator of p precedes p, so p survives
    // iff no earlier point is <= p in the remaining coordinates.
    std::vector<std::size_t> kept;
    if (m == 1) {
        kept.push_back(order.front());
    } else if (m == 2) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i : order) {
            if (!(best <= points[i][1])) kept.push_back(i);
            best = std::min(best, points[i][1]);
        }
    } else if (m == 3) {
        std::vector<double> keys;
        keys.reserve(order.size());
        for (std::size_t i : order) keys.push_back(points[i][1]);
        std::sort(keys.begin(), keys.end());
        keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
        MinTree tree(keys.size());
        for (std::size_t i : order) {
            const auto pos = static_cast<std::size_t>(std::lower_bound(keys.begin(), keys.end(), points[i][1]) - keys.begin());
            if (!(tree.prefix_min(pos) <= points[i][2])) kept.push_back(i);
            tree.insert(pos, points[i][2]);
        }
    } else {
        for (std::size_t i : order) {
            const bool dominated = std::any_of(kept.begin(), kept.end(), [&](std::size_t k) {
                return std::equal(points[k].begin(), points[k].end(), points[i].begin(), std::less_equal<>());
            });
            if (!dominated) kept.push_back(i);
        }
    }
    return kept;
}

ReferenceFront build_reference_front(const ProblemSpec& problem, std::size_t grid_per_dim, std::uint64_t max_evaluations) {
    problem.validate();
    if (grid_per_dim < 2) throw ContractViolation("reference front grid needs at least 2 points per dimension");
    double total = 1.0;
    for (std::size_t i = 0; i < problem.num_variables; ++i) total *= static_cast<double>(grid_per_dim);
    if (total > static_cast<double>(max_evaluations))
        throw std::length_error("reference front grid for " + problem.name + " exceeds the evaluation cap");

    const std::size_t l = problem.num_variables;
    std::vector<std::size_t> counter(l, 0);
    std::vector<Point> feasible;
    const auto coord = [&](std::size_t dim, std::size_t k) {
        if (k + 1 == grid_per_dim) return problem.upper[dim];
        const double t = static_cast<double>(k) / static_cast<double>(grid_per_dim - 1);
        return problem.lower[dim] + t * (problem.upper[dim] - problem.lower[dim]);
    };
    for (;;) {
        std::vector<double> x(l);
        for (std::size_t d = 0; d < l; ++d) x[d] = coord(d, counter[d]);
        Solution s = problem.evaluate(std::move(x));
        if (s.feasible()) feasible.push_back(std::move(s.f));

        std::size_t d = 0;
        while (d < l && ++counter[d] == grid_per_dim) counter[d++] = 0;
        if (d == l) break;
    }

    ReferenceFront front;
    front.grid_per_dim = grid_per_dim;
    front.problem = problem.name;
    front.version = problem.version;
    for (std::size_t i : nondominated_indices(feasible)) front.points.push_back(std::move(feasible[i]));
    return front;
}

double generational_distance(const std::vector<Point>& front, const ReferenceFront& reference) {
    if (front.empty()) throw ContractViolation("generational distance of an empty front");
    if (reference.points.empty()) throw ContractViolation("generational distance against an empty reference");
    const auto& ref = reference.points;
    double sum = 0.0;
    for (const Point& p : front) {
        if (p.size() != ref.front().size()) throw ContractViolation("generational distance: dimension mismatch");
        // ref is sorted by its first coordinate, so search outward from p[0].
        const auto start = static_cast<std::size_t>(
            std::lower_bound(ref.begin(), ref.end(), p[0], [](const Point& r, double v) { return r[0] < v; }) - ref.begin());
        double best = std::numeric_limits<double>::infinity();
        const auto dist2 = [&](const Point& r) {
            double s = 0.0;
            for (std::size_t k = 0; k < p.size(); ++k) s += (r[k] - p[k]) * (r[k] - p[k]);
            return s;
        };
        for (std::size_t i = start; i < ref.size(); ++i) {
            const double d0 = ref[i][0] - p[0];
            if (d0 * d0 >= best) break;
            best = std::min(best, dist2(ref[i]));
        }
        for (std::size_t i = start; i-- > 0;) {
            const double d0 = p[0] - ref[i][0];
            if (d0 * d0 >= best) break;
            best = std::min(best, dist2(ref[i]));
        }
        sum += std::sqrt(best);
    }
    return sum / static_cast<double>(front.size());
}

double generational_distance(const std::vector<Solution>& front, const ReferenceFront& reference) {
    std::vector<Point> pts;
    pts.reserve(front.size());
    for (const Solution& s : front) pts.push_back(s.f);
    return generational_distance(pts, reference);
}

bool is_mutually_nondominating(const std::vector<Solution>& set) {
    for (std::size_t i = 0; i < set.size(); ++i) {
        for (std::size_t j = 0; j < set.size(); ++j) {
            if (i != j && dominates(set[i], set[j])) return false;
        }
    }
    return true;
}

std::vector<Solution> nondominated_subset(const std::vector<Solution>& pop) {
    std::vector<Solution> out;
    for (std::size_t i = 0; i < pop.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < pop.size() && !dominated; ++j) dominated = j != i && dominates(pop[j], pop[i]);
        if (!dominated) out.push_back(pop[i]);
    }
    return out;
}

void write_front_csv(const ReferenceFront& front, std::ostream& out) {
    out << "# problem=" << front.problem << " version=" << front.version << " grid=" << front.grid_per_dim << '\n';
    const std::size_t m = front.points.empty() ? 0 : front.points.front().size();
    for (std::size_t k = 0; k < m; ++k) out << (k ? "," : "") << 'f' << (k + 1);
    out << '\n' << std::setprecision(17);
    for (const Point& p : front.points) {
        for (std::size_t k = 0; k < p.size(); ++k) out << (k ? "," : "") << p[k];
        out << '\n';
    }
}

void write_front_csv(const ReferenceFront& front, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    write_front_csv(front, out);
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

ReferenceFront read_front_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    ReferenceFront front;
    std::string line;
    if (std::getline(in, line) && line.rfind("# ", 0) == 0) {
        std::istringstream meta(line.substr(2));
        std::string kv;
        while (meta >> kv) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) continue;
            const std::string key = kv.substr(0, eq);
            const std::string value = kv.substr(eq + 1);
            if (key == "problem") front.problem = value;
            else if (key == "version") front.version = value;
            else if (key == "grid") front.grid_per_dim = std::stoul(value);
        }
        std::getline(in, line);  // column header
    }
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        Point p;
        std::istringstream row(line);
        std::string cell;
        while (std::getline(row, cell, ',')) p.push_back(std::stod(cell));
        front.points.push_back(std::move(p));
    }
    return front;
}

std::filesystem::path ReferenceFrontCache::path_for(const ProblemSpec& problem, std::size_t grid_per_dim) const {
    std::ostringstream name;
    name << problem.name << "_g" << grid_per_dim << '_' << std::hex << std::setw(16) << std::setfill('0')
         << fnv1a(problem.name + '\n' + problem.version) << ".csv";
    return dir_ / name.str();
}

std::optional<ReferenceFront> ReferenceFrontCache::load(const ProblemSpec& problem, std::size_t grid_per_dim) const {
    const auto path = path_for(problem, grid_per_dim);
    if (!std::filesystem::exists(path)) return std::nullopt;
    ReferenceFront front = read_front_csv(path);
    if (front.problem != problem.name || front.version != problem.version || front.grid_per_dim != grid_per_dim)
        return std::nullopt;
    return front;
}

void ReferenceFrontCache::store(const ReferenceFront& front, const ProblemSpec& problem) const {
    std::filesystem::create_directories(dir_);
    write_front_csv(front, path_for(problem, front.grid_per_dim));
}

ReferenceFront ReferenceFrontCache::get(const ProblemSpec& problem, std::size_t grid_per_dim) const {
    if (auto cached = load(problem, grid_per_dim)) return *std::move(cached);
    ReferenceFront front = build_reference_front(problem, grid_per_dim);
    store(front, problem);
    return front;
}

}  // namespace nsgafh::metrics
