#include "grainstat/patterns.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "grainstat/errors.hpp"

namespace grainstat::patterns {
namespace {

// Calls fn(bits) for every subset of `size` cells out of `total`.
template <typename Fn>
void for_each_subset(int total, int size, Fn&& fn) {
    std::vector<int> pick(size);
    for (int i = 0; i < size; ++i)
        pick[i] = i;
    while (true) {
        std::uint64_t bits = 0;
        for (int i : pick)
            bits |= std::uint64_t{1} << i;
        fn(bits);
        int i = size - 1;
        while (i >= 0 && pick[i] == total - size + i)
            --i;
        if (i < 0)
            break;
        ++pick[i];
        for (int j = i + 1; j < size; ++j)
            pick[j] = pick[j - 1] + 1;
    }
}

std::vector<Offset> canonical_black_set(const Pattern& pattern) {
    std::vector<Offset> blacks = pattern.black_offsets();
    int min_x = blacks[0].x;
    int min_y = blacks[0].y;
    for (const Offset& o : blacks) {
        min_x = std::min(min_x, o.x);
        min_y = std::min(min_y, o.y);
    }
    for (Offset& o : blacks) {
        o.x -= min_x;
        o.y -= min_y;
    }
    std::sort(blacks.begin(), blacks.end(),
              [](const Offset& a, const Offset& b) {
                  return a.y != b.y ? a.y < b.y : a.x < b.x;
              });
    return blacks;
}

void validate(const LocalProperty& prop) {
    if (!prop.predicate)
        throw ParamError("property \"" + prop.name + "\" has no predicate");
    if (prop.ball.size() == 0)
        throw ParamError("property \"" + prop.name + "\" has an empty ball");
}

} // namespace

Ball Ball::diamond(int radius) {
    if (radius < 0 || radius > 5)
        throw ParamError("ball radius must be in 0..5");
    Ball ball;
    ball.radius = radius;
    const int side = 2 * radius + 1;
    ball.grid_.assign(static_cast<std::size_t>(side) * side, -1);
    for (int y = -radius; y <= radius; ++y) {
        for (int x = -radius; x <= radius; ++x) {
            if (std::abs(x) + std::abs(y) > radius)
                continue;
            ball.grid_[static_cast<std::size_t>(y + radius) * side +
                       (x + radius)] = ball.size();
            ball.cells.push_back({x, y});
        }
    }
    return ball;
}

std::vector<Offset> Pattern::black_offsets() const {
    std::vector<Offset> out;
    out.reserve(black_count());
    for (int i = 0; i < ball_->size(); ++i)
        if (black_cell(i))
            out.push_back(ball_->cells[i]);
    return out;
}

int black_index(const LocalProperty& prop, int b_cap) {
    validate(prop);
    if (b_cap < 1)
        throw ParamError("b_cap must be positive");
    if (prop.predicate(Pattern(prop.ball, 0)))
        throw ParamError("property \"" + prop.name +
                         "\" is satisfied by the all-white pattern");
    const int total = prop.ball.size();
    for (int b = 1; b <= std::min(b_cap, total); ++b) {
        bool found = false;
        for_each_subset(total, b, [&](std::uint64_t bits) {
            if (!found && prop.predicate(Pattern(prop.ball, bits)))
                found = true;
        });
        if (found)
            return b;
    }
    throw ParamError("property \"" + prop.name +
                     "\" has no satisfying pattern with at most " +
                     std::to_string(b_cap) + " black pixels");
}

PropertyAnalysis analyze(const LocalProperty& prop, int b_cap) {
    PropertyAnalysis out;
    out.black_index = black_index(prop, b_cap);

    std::map<std::vector<Offset>, std::vector<Offset>> classes;
    for_each_subset(prop.ball.size(), out.black_index,
                    [&](std::uint64_t bits) {
                        Pattern pattern(prop.ball, bits);
                        if (prop.predicate(pattern))
                            classes.emplace(canonical_black_set(pattern),
                                            pattern.black_offsets());
                    });
    for (auto& [key, rep] : classes) {
        out.canonical_sets.push_back(key);
        out.representatives.push_back(rep);
    }
    out.meaningful_index = static_cast<int>(out.canonical_sets.size());
    return out;
}

int meaningful_index(const LocalProperty& prop, int b_cap) {
    return analyze(prop, b_cap).meaningful_index;
}

long long definition_set_size(const LocalProperty& prop, int r_cap) {
    validate(prop);
    if (prop.ball.radius > r_cap)
        throw ParamError("full pattern enumeration is capped at radius " +
                         std::to_string(r_cap));
    const int total = prop.ball.size();
    long long count = 0;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << total); ++bits)
        if (prop.predicate(Pattern(prop.ball, bits)))
            ++count;
    return count;
}

double limit_probability(int black_index, int meaningful_index, double c) {
    if (black_index < 1 || meaningful_index < 1)
        throw ParamError("indices must be positive");
    if (!(c >= 0.0))
        throw ParamError("c must be nonnegative");
    return -std::expm1(-meaningful_index * std::pow(c, black_index));
}

Pattern extract(const Ball& ball, const BinaryImage& image, int cx, int cy) {
    std::uint64_t bits = 0;
    for (int i = 0; i < ball.size(); ++i) {
        const Offset& o = ball.cells[i];
        if (image.at_wrapped(cx + o.x, cy + o.y))
            bits |= std::uint64_t{1} << i;
    }
    return Pattern(ball, bits);
}

LocalProperty black_pixel(int radius) {
    return {"black-pixel", Ball::diamond(radius),
            [](const Pattern& p) { return p.bits() != 0; }};
}

LocalProperty horizontal_pair(int radius) {
    return {"horizontal-pair", Ball::diamond(radius), [](const Pattern& p) {
                for (const Offset& o : p.black_offsets())
                    if (p.black_at(o.x + 1, o.y))
                        return true;
                return false;
            }};
}

LocalProperty connected_pair(int radius) {
    return {"connected-pair", Ball::diamond(radius), [](const Pattern& p) {
                for (const Offset& o : p.black_offsets())
                    if (p.black_at(o.x + 1, o.y) || p.black_at(o.x, o.y + 1))
                        return true;
                return false;
            }};
}

LocalProperty component_at_least(int k) {
    if (k < 1)
        throw ParamError("component size must be positive");
    LocalProperty prop;
    prop.name = "component" + std::to_string(k);
    prop.ball = Ball::diamond((k + 1) / 2);
    prop.predicate = [k](const Pattern& p) {
        std::vector<Offset> blacks = p.black_offsets();
        if (static_cast<int>(blacks.size()) < k)
            return false;
        std::vector<char> seen(blacks.size(), 0);
        std::vector<Offset> queue;
        for (std::size_t start = 0; start < blacks.size(); ++start) {
            if (seen[start])
                continue;
            queue.assign(1, blacks[start]);
            seen[start] = 1;
            int size = 0;
            while (!queue.empty()) {
                const Offset cur = queue.back();
                queue.pop_back();
                ++size;
                const Offset nb[4] = {{cur.x + 1, cur.y},
                                      {cur.x - 1, cur.y},
                                      {cur.x, cur.y + 1},
                                      {cur.x, cur.y - 1}};
                for (const Offset& n : nb) {
                    if (!p.black_at(n.x, n.y))
                        continue;
                    for (std::size_t j = 0; j < blacks.size(); ++j) {
                        if (!seen[j] && blacks[j] == n) {
                            seen[j] = 1;
                            queue.push_back(n);
                        }
                    }
                }
            }
            if (size >= k)
                return true;
        }
        return false;
    };
    return prop;
}

LocalProperty property_by_name(const std::string& name) {
    if (name == "black-pixel")
        return black_pixel();
    if (name == "horizontal-pair")
        return horizontal_pair();
    if (name == "connected-pair")
        return connected_pair();
    if (name.rfind("component", 0) == 0) {
        const std::string arg = name.substr(9);
        if (!arg.empty() &&
            arg.find_first_not_of("0123456789") == std::string::npos)
            return component_at_least(std::stoi(arg));
    }
    throw ParamError("unknown property \"" + name +
                     "\" (expected black-pixel, horizontal-pair, "
                     "connected-pair or component<K>)");
}

} // namespace grainstat::patterns
