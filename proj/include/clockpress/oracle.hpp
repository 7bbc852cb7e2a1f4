// Copyright 2026 The clockpress Authors
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

#include <stdexcept>
#include <vector>

#include "clockpress/clockstate.hpp"
#include "clockpress/compressor.hpp"
#include "clockpress/linalg.hpp"

/// Brute-force references on the full 2^n-dimensional qubit space. Nothing
/// here is optimized; everything is built from explicit vectors so that the
/// block-coordinate kernels can be checked entrywise.
///
/// Qubit ordering: qubit 0 is the most significant bit of a basis index, and
/// |0> is the m = +1/2 state.
namespace clockpress::oracle {

/// Raised when a request exceeds the sizes the oracle is willing to build.
class SizeRefusal : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr int kMaxProductQubits = 10;
constexpr int kMaxBlockQubits = 8;
constexpr int kMaxSymmetrizerQubits = 12;

CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Single-qubit clock state p |phi_t><phi_t| + (1-p) |phi_t_perp><phi_t_perp|.
CMatrix qubit_state(double s, double p, double t);
/// Explicit n-fold tensor power (n <= 10).
CMatrix full_product_state(const ClockParams& params);

/// One copy of a spin-J irrep inside (C^2)^{(x) n}: columns are |J, m> for
/// m = J..-J.
struct IrrepCopy {
  Spin j;
  RMatrix columns;
};

/// Schur basis built by coupling one qubit at a time, left to right, with
/// Clebsch-Gordan coefficients. Irreps are ordered by descending J, then by
/// coupling path.
struct CoupledBasis {
  int n = 0;
  std::vector<IrrepCopy> irreps;

  RMatrix matrix() const;
  int copies(Spin j) const;
};

CoupledBasis coupled_basis(int n);

struct OracleBlock {
  Spin j;
  double q = 0.0;
  CMatrix block;  ///< normalized, averaged over multiplicity paths
  /// Tr over the spin index of V_a^dag rho V_b; (q_J/m_J) I when the
  /// multiplicity register is maximally mixed.
  CMatrix multiplicity_marginal;
  /// Largest entry of rho between this irrep copy and any other J.
  double cross_block_leakage = 0.0;
};

/// Schur blocks of the explicit product state (n <= 8).
std::vector<OracleBlock> oracle_blocks(const ClockParams& params);

/// Dicke states |M/2, M/2 - c> (c ones) as columns of a 2^M x (M+1) matrix.
RMatrix dicke_basis(int qubits);
/// Projector onto the symmetric subspace of M qubits (M <= 12).
RMatrix symmetrizer(int qubits);
/// Operator sending qubit i to position perm[i].
RMatrix permutation_operator(int qubits, const std::vector<int>& perm);
/// Average over all M! permutation operators (M <= 6).
RMatrix permutation_average(int qubits);

/// Traces out the last `traced` of `total` qubits.
CMatrix partial_trace_last(const CMatrix& rho, int total, int traced);

/// C_{J->K} on the full qubit space: embed into Sym(2J), clone with
/// (2J+1)/(2K+1) S(. (x) I)S or discard qubits, re-extract spin coordinates.
CMatrix oracle_convert(Spin J, Spin K, const CMatrix& mat);
/// Norm of the part of the partial trace that leaves the symmetric subspace.
double trace_down_leakage(Spin J, Spin K, const CMatrix& mat);

/// Frequency projection with an explicit projector built from Dicke states.
CMatrix oracle_frequency_projection(const channels::Window& window, const CMatrix& mat);

/// sum_J w_J sum_paths V sigma_J V^dag / m_J on the full space.
CMatrix embed_block_state(const BlockState& state, const CoupledBasis& basis);

struct PipelineResult {
  CMatrix input;
  CMatrix output;
  double epsilon = 0.0;
};

/// End-to-end protocol (n <= 8) evaluated entirely on the full space.
PipelineResult oracle_pipeline(const ClockParams& params, Mode mode, double x);

}  // namespace clockpress::oracle
