#include "wiener/path_sets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <json.hpp>

namespace wiener {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

void validate_node(const PathSetSpec& spec, bool top_level) {
    std::visit(
        [&](const auto& node) {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, SupBall>) {
                if (!(node.radius >= 0.0)) fail("sup ball radius must be >= 0");
            } else if constexpr (std::is_same_v<T, Tube>) {
                if (!(node.radius > 0.0)) fail("tube radius must be > 0");
            } else if constexpr (std::is_same_v<T, HolderBall>) {
                if (!(node.alpha > 0.0 && node.alpha < 0.5))
                    fail("alpha must be in (0, 1/2)");
                if (!(node.bound >= 0.0)) fail("holder bound must be >= 0");
                if (!(node.window > 0.0)) fail("holder window must be > 0");
            } else if constexpr (std::is_same_v<T, Intersection> ||
                                 std::is_same_v<T, SetUnion>) {
                if (node.parts.empty()) fail("boolean combination must be non-empty");
                for (const auto& part : node.parts) validate_node(part, false);
            } else if constexpr (std::is_same_v<T, Complement>) {
                if (top_level)
                    fail("complement is not allowed as a top-level set (never compact)");
                if (!node.inner) fail("complement has no inner set");
                validate_node(*node.inner, false);
            }
        },
        spec.node);
}

} // namespace

PathSetSpec PathSetSpec::sup_ball(double m) { return PathSetSpec{SupBall{m}}; }

PathSetSpec PathSetSpec::tube(GridPath center, double r) {
    return PathSetSpec{Tube{std::move(center), r}};
}

PathSetSpec PathSetSpec::holder_ball(double alpha, double lambda, double window) {
    return PathSetSpec{HolderBall{alpha, lambda, window}};
}

PathSetSpec PathSetSpec::intersection(std::vector<PathSetSpec> parts) {
    return PathSetSpec{Intersection{std::move(parts)}};
}

PathSetSpec PathSetSpec::set_union(std::vector<PathSetSpec> parts) {
    return PathSetSpec{SetUnion{std::move(parts)}};
}

PathSetSpec PathSetSpec::complement(PathSetSpec inner) {
    return PathSetSpec{Complement{std::make_shared<const PathSetSpec>(std::move(inner))}};
}

PathSetSpec PathSetSpec::annulus(double inner_m, double outer_m) {
    std::vector<PathSetSpec> parts;
    parts.push_back(sup_ball(outer_m));
    parts.push_back(complement(sup_ball(inner_m)));
    return intersection(std::move(parts));
}

void validate_catalog(const PathSetSpec& spec) { validate_node(spec, true); }

bool provably_empty(const PathSetSpec& spec) {
    if (const auto* inter = std::get_if<Intersection>(&spec.node)) {
        // annulus with inner radius >= outer radius
        const SupBall* outer = nullptr;
        const SupBall* removed = nullptr;
        for (const auto& part : inter->parts) {
            if (const auto* b = std::get_if<SupBall>(&part.node)) {
                if (!outer) outer = b;
            } else if (const auto* c = std::get_if<Complement>(&part.node)) {
                if (c->inner)
                    if (const auto* ib = std::get_if<SupBall>(&c->inner->node))
                        removed = ib;
            }
            if (provably_empty(part)) return true;
        }
        if (outer && removed && removed->radius >= outer->radius) return true;
        return false;
    }
    if (const auto* un = std::get_if<SetUnion>(&spec.node)) {
        return std::all_of(un->parts.begin(), un->parts.end(),
                           [](const PathSetSpec& p) { return provably_empty(p); });
    }
    return false;
}

// --- compiled evaluation ------------------------------------------------

struct CompiledSet::Node {
    enum class Kind { SupBall, Tube, Holder, And, Or, Not } kind;
    double radius = 0.0;
    std::vector<double> center;      // tube center at grid points 1..2^n
    std::vector<double> thresholds;  // holder: bound * (g*h)^alpha per gap g
    std::vector<std::shared_ptr<const Node>> children;

    bool eval(std::span<const double> values) const {
        switch (kind) {
        case Kind::SupBall: {
            for (std::size_t k = 1; k < values.size(); ++k)
                if (std::fabs(values[k]) > radius) return false;
            return true;
        }
        case Kind::Tube: {
            for (std::size_t k = 1; k < values.size(); ++k)
                if (std::fabs(values[k] - center[k - 1]) > radius) return false;
            return true;
        }
        case Kind::Holder: {
            for (std::size_t g = 1; g <= thresholds.size(); ++g) {
                const double thr = thresholds[g - 1];
                double worst = 0.0;
                const double* lo = values.data();
                const double* hi = values.data() + g;
                for (std::size_t k = g; k < values.size(); ++k, ++lo, ++hi) {
                    const double d = std::fabs(*hi - *lo);
                    if (d > worst) worst = d;
                }
                if (worst > thr) return false;
            }
            return true;
        }
        case Kind::And:
            for (const auto& c : children)
                if (!c->eval(values)) return false;
            return true;
        case Kind::Or:
            for (const auto& c : children)
                if (c->eval(values)) return true;
            return false;
        case Kind::Not:
            return !children.front()->eval(values);
        }
        return false;
    }
};

namespace {

std::shared_ptr<const CompiledSet::Node> compile_node(const PathSetSpec& spec,
                                                      double spacing,
                                                      std::size_t point_count,
                                                      double horizon, int level_hint) {
    using Node = CompiledSet::Node;
    auto node = std::make_shared<Node>();
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, SupBall>) {
                node->kind = Node::Kind::SupBall;
                node->radius = s.radius;
            } else if constexpr (std::is_same_v<T, Tube>) {
                node->kind = Node::Kind::Tube;
                node->radius = s.radius;
                if (level_hint < 0)
                    fail("tube sets need a dyadic grid level for evaluation");
                if (s.center.grid.horizon != horizon)
                    fail("tube center horizon does not match evaluation grid");
                GridPath c = s.center.grid.level <= level_hint
                                 ? refine(s.center, level_hint)
                                 : restrict_path(s.center, level_hint);
                node->center = c.levels;
                if (node->center.size() != point_count - 1)
                    fail("tube center does not match evaluation grid");
            } else if constexpr (std::is_same_v<T, HolderBall>) {
                node->kind = Node::Kind::Holder;
                const std::size_t max_gap = point_count - 1;
                for (std::size_t g = 1; g <= max_gap; ++g) {
                    const double gap = static_cast<double>(g) * spacing;
                    if (!(gap < s.window)) break;
                    node->thresholds.push_back(s.bound * std::pow(gap, s.alpha));
                }
            } else if constexpr (std::is_same_v<T, Intersection>) {
                node->kind = Node::Kind::And;
                for (const auto& part : s.parts)
                    node->children.push_back(
                        compile_node(part, spacing, point_count, horizon, level_hint));
            } else if constexpr (std::is_same_v<T, SetUnion>) {
                node->kind = Node::Kind::Or;
                for (const auto& part : s.parts)
                    node->children.push_back(
                        compile_node(part, spacing, point_count, horizon, level_hint));
            } else if constexpr (std::is_same_v<T, Complement>) {
                node->kind = Node::Kind::Not;
                node->children.push_back(
                    compile_node(*s.inner, spacing, point_count, horizon, level_hint));
            }
        },
        spec.node);
    return node;
}

} // namespace

CompiledSet::CompiledSet(const PathSetSpec& spec, const DyadicGrid& grid) {
    validate_catalog(spec);
    root_ = compile_node(spec, grid.spacing(), grid.count() + 1, grid.horizon, grid.level);
}

CompiledSet::CompiledSet(const PathSetSpec& spec, double spacing,
                         std::size_t point_count, double horizon_hint) {
    validate_catalog(spec);
    root_ = compile_node(spec, spacing, point_count, horizon_hint, -1);
}

bool CompiledSet::contains(std::span<const double> values) const {
    return root_->eval(values);
}

bool member_grid(const PathSetSpec& spec, const IncrementVector& inc) {
    CompiledSet compiled(spec, inc.grid);
    std::vector<double> values(inc.grid.count() + 1);
    values[0] = 0.0;
    double sum = 0.0;
    for (std::size_t i = 0; i < inc.increments.size(); ++i) {
        sum += inc.increments[i];
        values[i + 1] = sum;
    }
    return compiled.contains(values);
}

HolderValue discrete_seminorm(std::span<const double> values, double spacing,
                              double alpha, double window) {
    if (values.size() < 2) fail("seminorm needs at least 2 grid points");
    if (!(alpha > 0.0 && alpha < 1.0)) fail("alpha must be in (0, 1)");
    if (!(window > 0.0)) fail("window must be positive");

    HolderValue best;
    for (std::size_t g = 1; g < values.size(); ++g) {
        const double gap = static_cast<double>(g) * spacing;
        if (!(gap < window)) break;
        const double denom = std::pow(gap, alpha);
        for (std::size_t s = 0; s + g < values.size(); ++s) {
            const double ratio = std::fabs(values[s + g] - values[s]) / denom;
            if (!best.has_pair || ratio > best.seminorm) {
                best.seminorm = ratio;
                best.has_pair = true;
                best.s_index = s;
                best.t_index = s + g;
                best.s_time = static_cast<double>(s) * spacing;
                best.t_time = static_cast<double>(s + g) * spacing;
            }
        }
    }
    return best;
}

HolderValue holder_seminorm(const GridPath& path, double alpha, double window) {
    std::vector<double> values(path.grid.count() + 1);
    values[0] = 0.0;
    std::copy(path.levels.begin(), path.levels.end(), values.begin() + 1);
    return discrete_seminorm(values, path.grid.spacing(), alpha, window);
}

namespace {

bool holder_member(const HolderBall& ball, const GridPath& path) {
    const auto v = holder_seminorm(path, ball.alpha, ball.window);
    return v.seminorm <= ball.bound;
}

double sup_distance(const GridPath& a, const GridPath& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.levels.size(); ++i)
        d = std::max(d, std::fabs(a.levels[i] - b.levels[i]));
    return d;
}

} // namespace

ModulusReport equicontinuity_modulus(const HolderBall& ball, double delta,
                                     std::span<const GridPath> sample) {
    if (!(delta > 0.0 && delta < ball.window))
        fail("delta must lie in (0, window)");
    double modulus = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const GridPath& p = sample[i];
        if (!holder_member(ball, p))
            fail("sample path " + std::to_string(i) + " is not a member of the ball");
        const double h = p.grid.spacing();
        const auto max_gap = static_cast<std::size_t>(delta / h + 1e-12);
        for (std::size_t g = 1; g <= std::min(max_gap, p.grid.count()); ++g) {
            for (std::size_t s = 0; s + g <= p.grid.count(); ++s)
                modulus = std::max(modulus, std::fabs(p.value(s + g) - p.value(s)));
        }
    }
    const double bound = ball.bound * std::pow(delta, ball.alpha);
    if (modulus > bound)
        throw std::logic_error("equicontinuity certificate violated");
    return ModulusReport{modulus, bound};
}

bool closedness_check(const HolderBall& ball, std::span<const GridPath> sequence) {
    if (sequence.size() < 2) fail("closedness check needs at least 2 paths");
    const DyadicGrid grid = sequence.front().grid;
    for (const auto& p : sequence)
        if (!(p.grid == grid)) fail("mixed grids in closedness check");

    const GridPath& limit = sequence.back();
    double prev = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < sequence.size(); ++i) {
        const GridPath& p = sequence[i];
        if (!holder_member(ball, p))
            fail("sequence path " + std::to_string(i) + " is not a member of the ball");
        const double d = sup_distance(p, limit);
        if (d > prev + 1e-9) fail("sequence is not Cauchy in sup norm");
        prev = d;
    }
    return holder_member(ball, limit);
}

double separation(const PathSetSpec& a, const PathSetSpec& b, double horizon, int level) {
    const DyadicGrid grid(horizon, level);
    auto center_radius = [&](const PathSetSpec& s) -> std::pair<std::vector<double>, double> {
        if (const auto* ball = std::get_if<SupBall>(&s.node))
            return {std::vector<double>(grid.count(), 0.0), ball->radius};
        if (const auto* tube = std::get_if<Tube>(&s.node)) {
            if (tube->center.grid.horizon != horizon)
                fail("tube center horizon does not match separation grid");
            GridPath c = tube->center.grid.level <= level ? refine(tube->center, level)
                                                          : restrict_path(tube->center, level);
            return {c.levels, tube->radius};
        }
        fail("separation supports only SupBall and Tube specs");
    };
    const auto [c1, r1] = center_radius(a);
    const auto [c2, r2] = center_radius(b);
    double max_gap = 0.0;
    for (std::size_t i = 0; i < c1.size(); ++i)
        max_gap = std::max(max_gap, std::fabs(c1[i] - c2[i]));
    return std::max(0.0, max_gap - r1 - r2);
}

// --- JSON ----------------------------------------------------------------

namespace {

using nlohmann::ordered_json;

ordered_json spec_to_json_node(const PathSetSpec& spec) {
    ordered_json j;
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, SupBall>) {
                j["type"] = "sup_ball";
                j["radius"] = s.radius;
            } else if constexpr (std::is_same_v<T, Tube>) {
                j["type"] = "tube";
                j["radius"] = s.radius;
                j["center"] = nlohmann::json::parse(grid_path_to_json(s.center));
            } else if constexpr (std::is_same_v<T, HolderBall>) {
                j["type"] = "holder_ball";
                j["alpha"] = s.alpha;
                j["lambda"] = s.bound;
                j["window"] = s.window;
            } else if constexpr (std::is_same_v<T, Intersection>) {
                j["type"] = "intersection";
                j["parts"] = ordered_json::array();
                for (const auto& part : s.parts) j["parts"].push_back(spec_to_json_node(part));
            } else if constexpr (std::is_same_v<T, SetUnion>) {
                j["type"] = "union";
                j["parts"] = ordered_json::array();
                for (const auto& part : s.parts) j["parts"].push_back(spec_to_json_node(part));
            } else if constexpr (std::is_same_v<T, Complement>) {
                j["type"] = "complement";
                j["inner"] = spec_to_json_node(*s.inner);
            }
        },
        spec.node);
    return j;
}

PathSetSpec spec_from_json_node(const nlohmann::json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "sup_ball") return PathSetSpec::sup_ball(j.at("radius").get<double>());
    if (type == "tube")
        return PathSetSpec::tube(grid_path_from_json(j.at("center").dump()),
                                 j.at("radius").get<double>());
    if (type == "holder_ball")
        return PathSetSpec::holder_ball(j.at("alpha").get<double>(),
                                        j.at("lambda").get<double>(),
                                        j.value("window", 1.0));
    if (type == "intersection" || type == "union") {
        std::vector<PathSetSpec> parts;
        for (const auto& part : j.at("parts")) parts.push_back(spec_from_json_node(part));
        return type == "intersection" ? PathSetSpec::intersection(std::move(parts))
                                      : PathSetSpec::set_union(std::move(parts));
    }
    if (type == "complement")
        return PathSetSpec::complement(spec_from_json_node(j.at("inner")));
    fail("unsupported path set type: " + type);
}

} // namespace

std::string path_set_to_json(const PathSetSpec& spec) {
    ordered_json j;
    j["schema"] = "wiener-meter/pathset/1";
    j.update(spec_to_json_node(spec));
    return j.dump();
}

PathSetSpec path_set_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    auto spec = spec_from_json_node(j);
    validate_catalog(spec);
    return spec;
}

} // namespace wiener
