// Copyright 2026 The qforecast Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qforecast/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <stdexcept>
#include <string>

namespace qforecast::linalg {

Eigen::LLT<Eigen::MatrixXd> cholesky(const Eigen::MatrixXd& a, const char* what) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument(std::string(what) + ": matrix is not square");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(a);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error(std::string(what) +
                             ": Cholesky factorization failed (matrix not positive definite)");
  }
  return llt;
}

double log_det(const Eigen::LLT<Eigen::MatrixXd>& llt) {
  return 2.0 * llt.matrixLLT().diagonal().array().log().sum();
}

double min_eigenvalue(const Eigen::MatrixXd& sym) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

Eigen::MatrixXd psd_sqrt(const Eigen::MatrixXd& sym) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
  const Eigen::VectorXd roots = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * roots.asDiagonal() * es.eigenvectors().transpose();
}

double spectral_norm_symmetric(const Eigen::MatrixXd& sym) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

double asymmetry(const Eigen::MatrixXd& a) {
  return (a - a.transpose()).cwiseAbs().maxCoeff();
}

}  // namespace qforecast::linalg
