#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

namespace grainstat::animals {

// Enumeration cap.  Total work is the number of animals visited,
// sum of a_1..a_k, which is about 10^7 at k = 14 (a few seconds).
inline constexpr int kDefaultKCap = 14;

// Hard cap: a_k grows like 4.06^k and leaves int64 range near k = 31,
// and the enumeration is unaffordable well before that.
inline constexpr int kAbsoluteKCap = 28;

// Assumed growth rate of a_k used to extrapolate beyond the exact range.
// The true growth constant lies in (3.9, 4.65).
inline constexpr double kDefaultGrowth = 4.06;

// Number of fixed 4-connected lattice animals with k cells, counted up to
// translation (Redelmeier's algorithm).
std::int64_t enumerate_animals(int k, int k_cap = kDefaultKCap);

struct AnimalTable {
    std::vector<std::int64_t> counts; // counts[i] = a_{i+1}, i < k_max_exact
    int k_max_exact = 0;
    double growth_sup = 0.0;    // max over computed k of a_k^(1/k)
    double growth_assumed = kDefaultGrowth;

    std::int64_t exact_count(int k) const { return counts[k - 1]; }
};

struct CountResult {
    double count = 0.0;
    bool exact = false;
};

AnimalTable build_table(int k_max_exact, double growth_assumed = kDefaultGrowth,
                        int k_cap = kDefaultKCap);

// a_k for k within the exact range, a_{kmax} * growth_assumed^(k - kmax)
// beyond it.
CountResult count_at(const AnimalTable& table, int k);

// Plain-text cache, one `k<TAB>count<TAB>exact|extrap` line per k after a
// `grainstat-animals v1 kmax=<K> growth=<G>` header.
void save_table(const AnimalTable& table, std::ostream& out);
void save_table(const AnimalTable& table, const std::filesystem::path& path);
AnimalTable load_table(const std::filesystem::path& path);

// Loads `cache` when it holds a valid table for exactly k_max_exact;
// otherwise recomputes and rewrites it (with a note on stderr when an
// existing file was unreadable).
AnimalTable build_table_cached(int k_max_exact,
                               const std::filesystem::path& cache,
                               double growth_assumed = kDefaultGrowth,
                               int k_cap = kDefaultKCap);

} // namespace grainstat::animals
