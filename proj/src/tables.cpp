#include "hexlap/tables.hpp"

#include <fstream>
#include <sstream>

namespace hexlap {

namespace {
bool in(const CellSet& s, int i, int j) { return s.count({i, j}) > 0; }
}  // namespace

IndexSetFamily build_index_sets(const CoeffTable& table) {
  IndexSetFamily fam;
  for (int l1 = 0; l1 < 2; ++l1)
    for (int l2 = 0; l2 < 2; ++l2) {
      auto nz = [&](int i, int j) { return table.at(l1, l2, i, j) != 0; };
      CellSet* I = fam.sets[l1][l2];
      for (int i = -3; i <= 3; ++i)
        for (int j = -3; j <= 3; ++j)
          if (nz(i, j)) I[0].insert({i, j});
      for (const Cell& c : I[0]) {
        const auto [i, j] = c;
        if (!nz(i + 1, j)) I[1].insert(c);
        if (!nz(-i, -j)) I[3].insert(c);
        if (!nz(-i - 1, -j)) I[4].insert(c);
        if (!nz(-i, -j - 1)) I[5].insert(c);
      }
      for (const Cell& c : I[1])
        if (!nz(c.first, c.second + 1)) I[2].insert(c);
      for (const Cell& c : I[2])
        if (!nz(c.first - 1, c.second + 1)) I[6].insert(c);
      for (const Cell& c : I[3])
        if (!nz(-c.first - 1, -c.second) && !nz(-c.first, -c.second - 1)) I[7].insert(c);
      for (const Cell& c : I[4])
        if (!nz(-c.first - 2, -c.second) && !nz(-c.first - 1, -c.second - 1)) I[8].insert(c);
      for (const Cell& c : I[5])
        if (!nz(-c.first - 1, -c.second - 1) && !nz(-c.first, -c.second - 2) &&
            !nz(c.first, c.second + 1) && !nz(c.first + 1, c.second + 1))
          I[9].insert(c);
    }
  return fam;
}

StructureReport verify_structure(const CoeffTable& table, const IndexSetFamily& fam) {
  (void)table;
  StructureReport rep;
  rep.point1 = rep.point2 = rep.point3 = true;
  std::ostringstream witness;

  for (int l1 = 0; l1 < 2; ++l1)
    for (int l2 = 0; l2 < 2; ++l2) {
      const int mn = std::min(l1, l2);
      const CellSet& I1 = fam.at(l1, l2, 1);
      const CellSet& I2 = fam.at(l1, l2, 2);
      const CellSet& I3mn = fam.at(l1, l2, 3 + mn);
      const CellSet& I4mn = fam.at(l1, l2, 4 - mn);

      // Point 1: on I^{4-min}, one of
      //   (-i-2+min, -j) in I1, (-i-1+min, -j-1) in I2, (i+1-2min, j) in I^{3+min}
      for (const Cell& c : I4mn) {
        const auto [i, j] = c;
        const bool ok = in(I1, -i - 2 + mn, -j) || in(I2, -i - 1 + mn, -j - 1) ||
                        in(I3mn, i + 1 - 2 * mn, j);
        if (!ok && rep.point1) {
          rep.point1 = false;
          witness << "point1 (" << l1 << "," << l2 << ") cell (" << i << "," << j << "); ";
        }
      }
      // Point 2: on I5, one of
      //   (-i-1, -j-1) in I1, (-i, -j) in I2, (i-min, j+1) in I^{4-min}
      for (const Cell& c : fam.at(l1, l2, 5)) {
        const auto [i, j] = c;
        const bool ok = in(I1, -i - 1, -j - 1) || in(I2, -i, -j) || in(I4mn, i - mn, j + 1);
        if (!ok && rep.point2) {
          rep.point2 = false;
          witness << "point2 (" << l1 << "," << l2 << ") cell (" << i << "," << j << "); ";
        }
      }
      // Point 3: I9 empty and I^{7+min} within I1 u I2 u I^{4-min}.
      if (!fam.at(l1, l2, 9).empty()) {
        rep.point3 = false;
        witness << "point3 I9 nonempty (" << l1 << "," << l2 << "); ";
      }
      for (const Cell& c : fam.at(l1, l2, 7 + mn)) {
        const auto [i, j] = c;
        if (!(in(I1, i, j) || in(I2, i, j) || in(I4mn, i, j))) {
          rep.point3 = false;
          witness << "point3 inclusion (" << l1 << "," << l2 << ") cell (" << i << "," << j
                  << "); ";
        }
      }
    }
  rep.witness = witness.str();
  return rep;
}

const char* to_string(IdentityKind k) {
  switch (k) {
    case IdentityKind::Q1: return "Q1";
    case IdentityKind::Q2: return "Q2";
    case IdentityKind::Q3: return "Q3";
    case IdentityKind::Q9: return "Q9";
  }
  return "?";
}

std::vector<SumRow> verify_sum_identities(const CoeffTable& table, const IndexSetFamily& fam,
                                          bool throw_on_violation) {
  std::vector<SumRow> rows;
  struct Spec {
    IdentityKind kind;
    int set_index;
  };
  const Spec specs[4] = {{IdentityKind::Q1, 0},
                         {IdentityKind::Q2, 1},
                         {IdentityKind::Q3, 2},
                         {IdentityKind::Q9, 4}};
  for (int l1 = 0; l1 < 2; ++l1)
    for (int l2 = 0; l2 < 2; ++l2) {
      const long sign = (std::max(l1, l2) % 2 == 0) ? 1 : -1;
      auto a = [&](int i, int j) { return long(table.at(l1, l2, i, j)); };
      for (const Spec& sp : specs) {
        for (const Cell& c : fam.at(l1, l2, sp.set_index)) {
          const auto [i, j] = c;
          SumRow row;
          row.l1 = l1;
          row.l2 = l2;
          row.kind = sp.kind;
          row.i = i;
          row.j = j;
          switch (sp.kind) {
            case IdentityKind::Q1:
              row.S1 = a(i, j) + a(i - 1, j) + a(i, j - 1);
              row.S2 = a(-i, -j) + a(-i - 1, -j) + a(-i, -j - 1);
              break;
            case IdentityKind::Q2:
            case IdentityKind::Q9:
              row.S1 = a(i, j) + a(i + 1, j) + a(i + 1, j - 1);
              row.S2 = a(-i - 1, -j) + a(-i - 2, -j) + a(-i - 1, -j - 1);
              break;
            case IdentityKind::Q3:
              row.S1 = a(i, j) + a(i, j + 1) + a(i - 1, j + 1);
              row.S2 = a(-i, -j - 1) + a(-i - 1, -j - 1) + a(-i, -j - 2);
              break;
          }
          row.match = row.S1 == sign * row.S2;
          if (!row.match && throw_on_violation) {
            std::ostringstream os;
            os << "identity " << to_string(sp.kind) << " broken at (" << l1 << "," << l2
               << ") cell (" << i << "," << j << "): S1=" << row.S1 << " S2=" << row.S2;
            throw IdentityViolation(row, os.str());
          }
          rows.push_back(row);
        }
      }
    }
  return rows;
}

void write_sum_rows_csv(const std::string& path, const std::vector<SumRow>& rows) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path);
  os << "l1,l2,i,j,kind,S1,S2,match\n";
  for (const SumRow& r : rows)
    os << r.l1 << ',' << r.l2 << ',' << r.i << ',' << r.j << ',' << to_string(r.kind) << ','
       << r.S1 << ',' << r.S2 << ',' << (r.match ? 1 : 0) << '\n';
}

std::vector<SumRow> load_sum_rows_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot read " + path);
  std::string line;
  std::getline(is, line);  // header
  std::vector<SumRow> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tok;
    SumRow r;
    auto next = [&]() {
      if (!std::getline(ls, tok, ',')) throw std::runtime_error("bad row in " + path);
      return tok;
    };
    r.l1 = std::stoi(next());
    r.l2 = std::stoi(next());
    r.i = std::stoi(next());
    r.j = std::stoi(next());
    const std::string kind = next();
    if (kind == "Q1") r.kind = IdentityKind::Q1;
    else if (kind == "Q2") r.kind = IdentityKind::Q2;
    else if (kind == "Q3") r.kind = IdentityKind::Q3;
    else if (kind == "Q9") r.kind = IdentityKind::Q9;
    else throw std::runtime_error("bad kind in " + path);
    r.S1 = std::stol(next());
    r.S2 = std::stol(next());
    r.match = std::stoi(next()) != 0;
    rows.push_back(r);
  }
  return rows;
}

namespace {
std::string row_key(const SumRow& r) {
  std::ostringstream os;
  os << r.l1 << ',' << r.l2 << ',' << to_string(r.kind) << ",(" << r.i << ',' << r.j << ')';
  return os.str();
}
}  // namespace

void compare_with_golden(const std::vector<SumRow>& rows, const std::string& golden_path) {
  const std::vector<SumRow> golden = load_sum_rows_csv(golden_path);
  std::ostringstream diffs;
  int n = 0;
  auto key_less = [](const SumRow& a, const SumRow& b) {
    return std::tie(a.l1, a.l2, a.kind, a.i, a.j) < std::tie(b.l1, b.l2, b.kind, b.i, b.j);
  };
  std::vector<SumRow> a = rows, b = golden;
  std::sort(a.begin(), a.end(), key_less);
  std::sort(b.begin(), b.end(), key_less);
  size_t ia = 0, ib = 0;
  while (ia < a.size() || ib < b.size()) {
    if (ib == b.size() || (ia < a.size() && key_less(a[ia], b[ib]))) {
      diffs << "extra row " << row_key(a[ia]) << "; ";
      ++n;
      ++ia;
    } else if (ia == a.size() || key_less(b[ib], a[ia])) {
      diffs << "missing row " << row_key(b[ib]) << "; ";
      ++n;
      ++ib;
    } else {
      if (a[ia].S1 != b[ib].S1 || a[ia].S2 != b[ib].S2 || a[ia].match != b[ib].match) {
        diffs << "value diff " << row_key(a[ia]) << " got (" << a[ia].S1 << ',' << a[ia].S2
              << ") want (" << b[ib].S1 << ',' << b[ib].S2 << "); ";
        ++n;
      }
      ++ia;
      ++ib;
    }
  }
  if (n > 0) throw GoldenMismatch("golden table mismatch: " + diffs.str());
}

TableSuiteResult run_table_suite(const std::string& golden_path) {
  const CoeffTable& table = alpha_tables();  // runs the expansion self-check
  const IndexSetFamily fam = build_index_sets(table);
  TableSuiteResult res;
  res.structure = verify_structure(table, fam);
  res.rows = verify_sum_identities(table, fam);
  compare_with_golden(res.rows, golden_path);
  res.golden_clean = true;
  return res;
}

int mutation_sweep(const std::string& golden_path) {
  int undetected = 0;
  for (int l1 = 0; l1 < 2; ++l1)
    for (int l2 = 0; l2 < 2; ++l2)
      for (int i = -3; i <= 3; ++i)
        for (int j = -3; j <= 3; ++j)
          for (int delta : {+1, -1}) {
            CoeffTable mutated = CoeffTable::published();
            mutated.t[l1][l2][i + 3][j + 3] += delta;
            bool caught = false;
            try {
              alpha_self_check(mutated);
              const IndexSetFamily fam = build_index_sets(mutated);
              if (!verify_structure(mutated, fam).pass()) caught = true;
              if (!caught) {
                const auto rows = verify_sum_identities(mutated, fam, false);
                for (const SumRow& r : rows)
                  if (!r.match) {
                    caught = true;
                    break;
                  }
                if (!caught) compare_with_golden(rows, golden_path);
              }
            } catch (const std::exception&) {
              caught = true;
            }
            if (!caught) ++undetected;
          }
  return undetected;
}

}  // namespace hexlap
