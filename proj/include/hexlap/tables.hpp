#pragma once

#include <set>
#include <string>
#include <vector>

#include "hexlap/alpha.hpp"

namespace hexlap {

using Cell = std::pair<int, int>;
using CellSet = std::set<Cell>;

// The ten support-derived index sets per table, built mechanically from the
// nonzero pattern of the coefficients:
//   I0: support                      I1: (i+1,j) leaves I0
//   I2: in I1 and (i,j+1) leaves I0  I3: (-i,-j) leaves I0
//   I4: (-i-1,-j) leaves I0          I5: (-i,-j-1) leaves I0
//   I6: in I2 and (i-1,j+1) leaves   I7: in I3, (-i-1,-j) and (-i,-j-1) leave
//   I8: in I4, (-i-2,-j) and (-i-1,-j-1) leave
//   I9: in I5 and four more cells leave (always empty here)
struct IndexSetFamily {
  CellSet sets[2][2][10];
  const CellSet& at(int l1, int l2, int k) const { return sets[l1][l2][k]; }
};

IndexSetFamily build_index_sets(const CoeffTable& table);

struct StructureReport {
  bool point1 = false;  // three-alternative condition on I^{4-min}
  bool point2 = false;  // three-alternative condition on I^5
  bool point3 = false;  // I9 empty and I^{7+min} within I1 u I2 u I^{4-min}
  std::string witness;  // first failing cell, empty on full pass

  bool pass() const { return point1 && point2 && point3; }
};

StructureReport verify_structure(const CoeffTable& table, const IndexSetFamily& fam);

enum class IdentityKind { Q1, Q2, Q3, Q9 };
const char* to_string(IdentityKind k);

struct SumRow {
  int l1 = 0, l2 = 0;
  IdentityKind kind = IdentityKind::Q1;
  int i = 0, j = 0;
  long S1 = 0, S2 = 0;
  bool match = false;  // S1 == (-1)^{max(l1,l2)} S2
};

struct IdentityViolation : std::runtime_error {
  SumRow row;
  IdentityViolation(const SumRow& r, const std::string& msg)
      : std::runtime_error(msg), row(r) {}
};

// Q1 over I0, Q2 over I1, Q3 over I2, Q9 over I4, all four tables, exact
// integer arithmetic. Throws IdentityViolation on the first broken row
// unless throw_on_violation is false.
std::vector<SumRow> verify_sum_identities(const CoeffTable& table, const IndexSetFamily& fam,
                                          bool throw_on_violation = true);

struct GoldenMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// CSV schema: l1,l2,i,j,kind,S1,S2,match
void write_sum_rows_csv(const std::string& path, const std::vector<SumRow>& rows);
std::vector<SumRow> load_sum_rows_csv(const std::string& path);

// Regenerates all rows from the coefficients and diffs them against the
// frozen golden file; throws GoldenMismatch listing row-level differences.
void compare_with_golden(const std::vector<SumRow>& rows, const std::string& golden_path);

// Convenience: the full appendix battery on the published tables.
struct TableSuiteResult {
  StructureReport structure;
  std::vector<SumRow> rows;
  bool golden_clean = false;
};
TableSuiteResult run_table_suite(const std::string& golden_path);

// Every single-cell +-1 mutation must be caught by the battery
// (alpha self-check, structure, identities, golden diff). Returns the number
// of undetected mutations (0 on success).
int mutation_sweep(const std::string& golden_path);

}  // namespace hexlap
