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

#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Dense>

namespace qforecast::linalg {

/// Cholesky factor of a symmetric positive-definite matrix.
/// Throws std::runtime_error naming `what` when the factorization fails.
Eigen::LLT<Eigen::MatrixXd> cholesky(const Eigen::MatrixXd& a, const char* what);

/// log det(A) from a successful Cholesky factorization.
double log_det(const Eigen::LLT<Eigen::MatrixXd>& llt);

/// Smallest eigenvalue of a symmetric matrix.
double min_eigenvalue(const Eigen::MatrixXd& sym);

/// Symmetric square root via eigendecomposition, negative eigenvalues clipped at 0.
Eigen::MatrixXd psd_sqrt(const Eigen::MatrixXd& sym);

/// Largest |eigenvalue| of a symmetric matrix (its spectral norm).
double spectral_norm_symmetric(const Eigen::MatrixXd& sym);

/// Largest elementwise |A - A^T|.
double asymmetry(const Eigen::MatrixXd& a);

}  // namespace qforecast::linalg
