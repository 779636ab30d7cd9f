#pragma once

#include "cpxcp/engine.hpp"

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cpxcp {

struct InfiniteGroup : std::runtime_error {
    InfiniteGroup() : std::runtime_error("group is infinite") {}
};

struct TooLarge : std::runtime_error {
    explicit TooLarge(const std::string& what) : std::runtime_error(what) {}
};

/// Explicit multiplication table of a finite instance. Index 0 is the
/// identity; `table[i*n + j]` is the index of element i * element j.
struct MulTable {
    int n = 0;
    std::vector<int> table;
    std::vector<std::string> elem_labels;
    // Generator indices: x, y, then one per center factor.
    int x = 0, y = 0;
    std::vector<int> center_gens;

    int mul(int i, int j) const { return table[static_cast<std::size_t>(i) * n + j]; }
    int inv(int i) const;
    int pow(int g, long long e) const;
    int order_of(int g) const;
    bool is_latin_square() const;
};

inline constexpr int kDefaultTableBound = 4096;
inline constexpr int kDefaultSearchBound = 512;

/// Enumerates all p^2 * |Z| collected normal forms.
MulTable build_table(const GroupPresentation& pres, int max_order = kDefaultTableBound);

struct CenterInfo {
    std::vector<int> center;
    bool quotient_is_cpxcp = false;
};

CenterInfo center_and_quotient(const MulTable& t);

Int exponent_of(const MulTable& t);

/// Census of element orders, total and for non-central elements only.
struct OrderProfile {
    std::map<Int, int> counts;
    std::map<Int, int> noncentral_counts;

    bool operator==(const OrderProfile&) const = default;
};

OrderProfile order_profile(const MulTable& t);

/// Exhaustive isomorphism search (backtracking over images of a generating
/// set, pruned by order/centrality fingerprints). Returns a bijection
/// `f[i] = image of i` or nullopt.
std::optional<std::vector<int>> brute_iso(const MulTable& a, const MulTable& b,
                                          int max_order = kDefaultSearchBound);

/// Searches for a direct decomposition G = H x K with both parts nontrivial.
/// Returns element-index sets (H, K) or nullopt if G is indecomposable.
std::optional<std::pair<std::vector<int>, std::vector<int>>> direct_factor_search(
    const MulTable& t, int max_order = kDefaultSearchBound);

/// Plain-text export: header "order n", then the n x n index matrix.
void export_table(const MulTable& t, std::ostream& os);

}  // namespace cpxcp
