#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "linrank/constraint.hpp"

namespace linrank {

/// Fourier-Motzkin elimination of one column. Equalities mentioning the
/// column are used for substitution; otherwise every (positive, negative)
/// pair of rows is combined, and the result is strict iff either parent is.
/// The returned system no longer has the column.
ConstraintSystem eliminate(const ConstraintSystem& c, std::size_t column);
ConstraintSystem eliminate(const ConstraintSystem& c, std::string_view column);

/// Existential projection onto `keep` (in that column order), irredundant.
ConstraintSystem project(const ConstraintSystem& c, const std::vector<std::string>& keep);

/// Does every point of `c` satisfy `k`? Throws std::invalid_argument when
/// `c` is unsatisfiable.
bool entails(const ConstraintSystem& c, const LinConstraint& k);

/// Drops rows implied by the remaining ones. An unsatisfiable input becomes
/// the canonical empty system {0 <= -1}.
ConstraintSystem remove_redundant(const ConstraintSystem& c);

/// Rows scaled to primitive integer form, ground rows folded, duplicates
/// and opposite pairs merged. Solution set unchanged.
ConstraintSystem normalize(const ConstraintSystem& c);

struct SpaceComparison {
    bool closures_equal = false;
    bool equal = false;  // exact, strict rows included
};

/// Set comparison by mutual row entailment. Strict rows are decided exactly:
/// a strict row is implied only when its boundary hyperplane misses the other set.
SpaceComparison compare_spaces(const ConstraintSystem& a, const ConstraintSystem& b);
bool equivalent(const ConstraintSystem& a, const ConstraintSystem& b);
/// Exact NNC inclusion a ⊆ b.
bool is_subset(const ConstraintSystem& a, const ConstraintSystem& b);

/// {0 <= -1} over `vars`.
ConstraintSystem empty_system(std::vector<std::string> vars);
bool is_empty_set(const ConstraintSystem& c);

/// Same rows with columns renamed/reordered: `order[i]` names the source
/// column that becomes column i. Missing source columns are zero.
ConstraintSystem reorder_columns(const ConstraintSystem& c, const std::vector<std::string>& order);

} // namespace linrank
