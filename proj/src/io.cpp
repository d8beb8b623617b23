#include "hexlap/io.hpp"

#include <fstream>
#include <iomanip>

#include "hexlap/symbol.hpp"

namespace hexlap {

namespace {
std::ofstream open(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path);
  os << std::setprecision(17);
  return os;
}
}  // namespace

void write_dispersion_csv(const std::string& path, int M) {
  auto os = open(path);
  os << "x1,x2,beta,lambda_plus,lambda_minus\n";
  for (const DispersionSample& s : dispersion_grid(M))
    os << s.x.x1 << ',' << s.x.x2 << ',' << s.beta_value << ',' << s.lambda_plus << ','
       << s.lambda_minus << '\n';
}

void write_triplets(const std::string& path, const AssembledOperator& A) {
  auto os = open(path);
  for (int k = 0; k < A.matrix.outerSize(); ++k)
    for (SparseMatrixC::InnerIterator it(A.matrix, k); it; ++it)
      os << it.row() << ' ' << it.col() << ' ' << it.value().real() << ' '
         << it.value().imag() << '\n';
}

void write_eigenvalues_csv(const std::string& path, const Eigen::VectorXd& values,
                           bool flag_outside_band) {
  auto os = open(path);
  os << (flag_outside_band ? "index,value,outside_band\n" : "index,value\n");
  for (long i = 0; i < values.size(); ++i) {
    os << i << ',' << values[i];
    if (flag_outside_band) os << ',' << (std::abs(values[i]) > 1.0 ? 1 : 0);
    os << '\n';
  }
}

void write_resolvent_curves_csv(const std::string& path,
                                const std::vector<ResolventCurve>& curves) {
  auto os = open(path);
  os << "lambda,s,rho,norm,plateau\n";
  for (const ResolventCurve& c : curves)
    for (size_t k = 0; k < c.rho.size(); ++k)
      os << c.lambda << ',' << c.s << ',' << c.rho[k] << ',' << c.norms[k] << ','
         << (c.plateau_flag ? 1 : 0) << '\n';
}

void write_propagation_csv(const std::string& path, const PropagationRecord& rec) {
  auto os = open(path);
  os << "t,partial_integral,total,saturated\n";
  for (size_t k = 0; k < rec.checkpoint_t.size(); ++k)
    os << rec.checkpoint_t[k] << ',' << rec.partial_integral[k] << ',' << rec.total << ','
       << (rec.saturation_flag ? 1 : 0) << '\n';
}

}  // namespace hexlap
