#pragma once

#include <string>
#include <vector>

#include "hexlap/lap.hpp"
#include "hexlap/stencil.hpp"

namespace hexlap {

// columns: x1,x2,beta,lambda_plus,lambda_minus
void write_dispersion_csv(const std::string& path, int M);

// text triplet export: row, col, re, im (one entry per line)
void write_triplets(const std::string& path, const AssembledOperator& A);

// columns: index,value[,outside_band]
void write_eigenvalues_csv(const std::string& path, const Eigen::VectorXd& values,
                           bool flag_outside_band = false);

// one row per rho: lambda,s,rho,norm,plateau
void write_resolvent_curves_csv(const std::string& path,
                                const std::vector<ResolventCurve>& curves);

// one row per checkpoint: t,partial_integral,total,saturated
void write_propagation_csv(const std::string& path, const PropagationRecord& rec);

}  // namespace hexlap
