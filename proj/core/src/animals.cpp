#include "grainstat/animals.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "grainstat/errors.hpp"

namespace grainstat::animals {
namespace {

// Redelmeier field: one animal per translation class is generated by fixing
// its first cell (lowest row, then lowest column) at the origin and growing
// into cells that compare greater, i.e. y > 0 or (y == 0 and x >= 0).
class Enumerator {
public:
    explicit Enumerator(int k)
        : k_(k), w_(2 * k - 1), counts_(static_cast<std::size_t>(k) + 1, 0),
          busy_(static_cast<std::size_t>(w_) * k, 0) {}

    std::vector<std::int64_t> run() {
        const int origin = cell(0, 0);
        busy_[origin] = 1;
        std::vector<int> untried{origin};
        grow(std::move(untried), 0);
        return counts_;
    }

private:
    int cell(int x, int y) const { return y * w_ + (x + k_ - 1); }

    // Cells are popped one at a time; each pop extends the current animal by
    // one cell and is counted.  A popped cell stays marked for the rest of
    // its level so later branches cannot re-add it, which is what guarantees
    // every animal is visited exactly once.
    void grow(std::vector<int> untried, int size) {
        while (!untried.empty()) {
            const int c = untried.back();
            untried.pop_back();
            ++counts_[size + 1];
            if (size + 1 == k_)
                continue;

            const int cx = c % w_ - (k_ - 1);
            const int cy = c / w_;
            const int nb[4][2] = {
                {cx + 1, cy}, {cx - 1, cy}, {cx, cy + 1}, {cx, cy - 1}};
            int added[4];
            int n_added = 0;
            std::vector<int> child = untried;
            for (const auto& [nx, ny] : nb) {
                if (ny < 0 || ny >= k_ || nx <= -k_ || nx >= k_)
                    continue;
                if (ny == 0 && nx < 0)
                    continue;
                const int id = cell(nx, ny);
                if (busy_[id])
                    continue;
                busy_[id] = 1;
                child.push_back(id);
                added[n_added++] = id;
            }
            grow(std::move(child), size + 1);
            for (int i = 0; i < n_added; ++i)
                busy_[added[i]] = 0;
        }
    }

    int k_;
    int w_;
    std::vector<std::int64_t> counts_;
    std::vector<std::uint8_t> busy_;
};

void check_k_cap(int k_cap) {
    if (k_cap < 1 || k_cap > kAbsoluteKCap)
        throw ParamError("enumeration cap must be in 1.." +
                         std::to_string(kAbsoluteKCap));
}

} // namespace

std::int64_t enumerate_animals(int k, int k_cap) {
    check_k_cap(k_cap);
    if (k < 1 || k > k_cap)
        throw ParamError("animal size must be in 1.." + std::to_string(k_cap) +
                         " (enumeration cap)");
    return Enumerator(k).run()[k];
}

AnimalTable build_table(int k_max_exact, double growth_assumed, int k_cap) {
    check_k_cap(k_cap);
    if (k_max_exact < 1 || k_max_exact > k_cap)
        throw ParamError("k_max_exact must be in 1.." + std::to_string(k_cap) +
                         " (enumeration cap)");
    if (!(growth_assumed > 1.0))
        throw ParamError("assumed growth rate must exceed 1");

    AnimalTable table;
    table.k_max_exact = k_max_exact;
    table.growth_assumed = growth_assumed;
    auto counts = Enumerator(k_max_exact).run();
    table.counts.assign(counts.begin() + 1, counts.end());
    for (int k = 1; k <= k_max_exact; ++k) {
        const double root =
            std::pow(static_cast<double>(table.counts[k - 1]), 1.0 / k);
        if (root > table.growth_sup)
            table.growth_sup = root;
    }
    return table;
}

CountResult count_at(const AnimalTable& table, int k) {
    if (k < 1)
        throw ParamError("animal size must be positive");
    if (k <= table.k_max_exact)
        return {static_cast<double>(table.exact_count(k)), true};
    const double base = static_cast<double>(table.exact_count(table.k_max_exact));
    return {base * std::pow(table.growth_assumed, k - table.k_max_exact), false};
}

void save_table(const AnimalTable& table, std::ostream& out) {
    out << "grainstat-animals v1 kmax=" << table.k_max_exact
        << " growth=" << table.growth_assumed << "\n";
    for (int k = 1; k <= table.k_max_exact; ++k)
        out << k << "\t" << table.exact_count(k) << "\texact\n";
}

void save_table(const AnimalTable& table, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out)
        throw ParseError("cannot open " + path.string() + " for writing");
    save_table(table, out);
    if (!out)
        throw ParseError("write failed on " + path.string());
}

AnimalTable load_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open " + path.string());

    std::string header;
    std::getline(in, header);
    int kmax = 0;
    double growth = 0.0;
    if (std::sscanf(header.c_str(), "grainstat-animals v1 kmax=%d growth=%lf",
                    &kmax, &growth) != 2)
        throw ParseError(path.string() + ": bad header \"" + header + "\"");
    if (kmax < 1 || kmax > kAbsoluteKCap || !(growth > 1.0))
        throw ParseError(path.string() + ": header values out of range");

    AnimalTable table;
    table.k_max_exact = kmax;
    table.growth_assumed = growth;

    std::string line;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::istringstream row(line);
        int k = 0;
        std::int64_t count = 0;
        std::string tag;
        if (!(row >> k >> count >> tag) || (tag != "exact" && tag != "extrap"))
            throw ParseError(path.string() + ": bad row \"" + line + "\"");
        if (tag == "extrap")
            continue;
        if (k != static_cast<int>(table.counts.size()) + 1)
            throw ParseError(path.string() + ": rows out of order at k=" +
                             std::to_string(k));
        if (count < 1 ||
            (k > 1 && count <= table.counts.back()))
            throw ParseError(path.string() + ": counts must be increasing");
        table.counts.push_back(count);
    }
    if (static_cast<int>(table.counts.size()) != kmax)
        throw ParseError(path.string() + ": expected " + std::to_string(kmax) +
                         " exact rows, found " +
                         std::to_string(table.counts.size()));
    for (int k = 1; k <= kmax; ++k) {
        const double root =
            std::pow(static_cast<double>(table.counts[k - 1]), 1.0 / k);
        if (root > table.growth_sup)
            table.growth_sup = root;
    }
    return table;
}

AnimalTable build_table_cached(int k_max_exact,
                               const std::filesystem::path& cache,
                               double growth_assumed, int k_cap) {
    if (std::filesystem::exists(cache)) {
        try {
            AnimalTable table = load_table(cache);
            if (table.k_max_exact == k_max_exact &&
                table.growth_assumed == growth_assumed)
                return table;
        } catch (const ParseError& e) {
            std::fprintf(stderr, "warning: rebuilding animal cache (%s)\n",
                         e.what());
        }
    }
    AnimalTable table = build_table(k_max_exact, growth_assumed, k_cap);
    save_table(table, cache);
    return table;
}

} // namespace grainstat::animals
