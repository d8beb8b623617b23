#include <doctest.h>

#include "hexlap/tables.hpp"

using namespace hexlap;

namespace {
const std::string kGolden = std::string(HEXLAP_GOLDEN_DIR) + "/s_tables.csv";

long sum3(const CoeffTable& t, int l1, int l2, int i1, int j1, int i2, int j2, int i3,
          int j3) {
  return t.at(l1, l2, i1, j1) + t.at(l1, l2, i2, j2) + t.at(l1, l2, i3, j3);
}
}  // namespace

TEST_CASE("index sets: published landmarks") {
  const IndexSetFamily fam = build_index_sets(CoeffTable::published());
  CHECK(fam.at(0, 1, 7) == CellSet{{-2, 1}});
  CHECK(fam.at(1, 0, 8) == CellSet{{0, -2}});
  for (int l1 = 0; l1 < 2; ++l1)
    for (int l2 = 0; l2 < 2; ++l2) CHECK(fam.at(l1, l2, 9).empty());
  // chains by construction
  for (int l1 = 0; l1 < 2; ++l1)
    for (int l2 = 0; l2 < 2; ++l2) {
      auto subset = [&](int a, int b) {
        for (const Cell& c : fam.at(l1, l2, a))
          if (!fam.at(l1, l2, b).count(c)) return false;
        return true;
      };
      CHECK(subset(1, 0));
      CHECK(subset(2, 1));
      CHECK(subset(6, 2));
      CHECK(subset(7, 3));
      CHECK(subset(8, 4));
      CHECK(subset(9, 5));
    }
}

TEST_CASE("index sets: more sampled members") {
  const IndexSetFamily fam = build_index_sets(CoeffTable::published());
  CHECK(fam.at(0, 0, 1) == CellSet{{2, 0}, {1, 1}, {2, -2}, {2, -1}, {0, 2}, {2, -3}});
  CHECK(fam.at(0, 0, 4) == CellSet{{0, -3}, {1, -3}, {2, -3}});
  CHECK(fam.at(0, 0, 5) == CellSet{{-3, 0}, {-3, 1}, {-3, 2}});
  CHECK(fam.at(0, 1, 5) == CellSet{{-2, 0}, {-2, -1}, {-2, 1}, {-2, 2}});
  CHECK(fam.at(1, 0, 4) == CellSet{{0, -2}, {-1, -2}, {1, -2}, {2, -2}});
  CHECK(fam.at(1, 1, 4) == CellSet{{-1, 0}, {0, 1}, {2, -3}, {1, -3}});
  CHECK(fam.at(1, 1, 8) == CellSet{{0, 1}});
  CHECK(fam.at(0, 0, 7).empty());
  CHECK(fam.at(0, 0, 8).empty());
}

TEST_CASE("structure points hold for all four tables") {
  const IndexSetFamily fam = build_index_sets(CoeffTable::published());
  const StructureReport rep = verify_structure(CoeffTable::published(), fam);
  INFO(rep.witness);
  CHECK(rep.point1);
  CHECK(rep.point2);
  CHECK(rep.point3);
}

TEST_CASE("sum identities hold exactly; published sample rows") {
  const CoeffTable& t = CoeffTable::published();
  const IndexSetFamily fam = build_index_sets(t);
  const auto rows = verify_sum_identities(t, fam);
  for (const SumRow& r : rows) CHECK(r.match);

  // Q1 family samples
  CHECK(sum3(t, 0, 0, 0, 0, -1, 0, 0, -1) == 12);   // S1 at (0,0)
  CHECK(sum3(t, 0, 1, 0, 1, -1, 1, 0, 0) == -14);   // S1 at (0,1)
  CHECK(sum3(t, 0, 1, 0, -1, -1, -1, 0, -2) == 14); // its S2 partner
  CHECK(sum3(t, 1, 0, 2, 0, 1, 0, 2, -1) == -8);    // S1 at (2,0)
  CHECK(sum3(t, 1, 0, -2, 0, -3, 0, -2, -1) == 8);
  CHECK(sum3(t, 1, 1, -1, 1, -2, 1, -1, 0) == 14);  // S1 at (-1,1)
  // Q2 family sample: (0,0) table at (2,0)
  CHECK(sum3(t, 0, 0, 2, 0, 3, 0, 3, -1) == 5);
  CHECK(sum3(t, 0, 0, -3, 0, -4, 0, -3, -1) == 5);
  // Q3 family sample: the (0,0) sums at (0,-2) as printed upstream
  CHECK(sum3(t, 0, 0, 0, -2, 0, -1, -1, -1) == 42);
  CHECK(sum3(t, 0, 0, 0, 1, -1, 1, 0, 0) == 42);
}

TEST_CASE("row counts per identity kind") {
  const IndexSetFamily fam = build_index_sets(CoeffTable::published());
  const auto rows = verify_sum_identities(CoeffTable::published(), fam);
  size_t q1 = 0, q2 = 0, q3 = 0, q9 = 0;
  for (const SumRow& r : rows) {
    if (r.kind == IdentityKind::Q1) ++q1;
    if (r.kind == IdentityKind::Q2) ++q2;
    if (r.kind == IdentityKind::Q3) ++q3;
    if (r.kind == IdentityKind::Q9) ++q9;
  }
  // Q1 covers every support cell of the four tables
  size_t support = 0;
  for (int l1 = 0; l1 < 2; ++l1)
    for (int l2 = 0; l2 < 2; ++l2) support += fam.at(l1, l2, 0).size();
  CHECK(q1 == support);
  CHECK(q2 > 0);
  CHECK(q3 > 0);
  CHECK(q9 > 0);
}

TEST_CASE("golden regeneration is clean") {
  const TableSuiteResult res = run_table_suite(kGolden);
  CHECK(res.structure.pass());
  CHECK(res.golden_clean);
}

TEST_CASE("corrupting a published coefficient breaks at least one check") {
  CoeffTable bad = CoeffTable::published();
  bad.t[0][0][3][3] += 1;  // alpha^{0,0}_{0,0}
  bool caught = false;
  try {
    alpha_self_check(bad);
    const IndexSetFamily fam = build_index_sets(bad);
    if (!verify_structure(bad, fam).pass()) caught = true;
    verify_sum_identities(bad, fam);
    compare_with_golden(verify_sum_identities(bad, fam, false), kGolden);
  } catch (const std::exception&) {
    caught = true;
  }
  CHECK(caught);
}

TEST_CASE("exhaustive single-cell mutation sweep") {
  CHECK(mutation_sweep(kGolden) == 0);
}
