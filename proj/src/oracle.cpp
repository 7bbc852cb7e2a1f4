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

#include "clockpress/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

#include "clockpress/channels.hpp"
#include "clockpress/repkit.hpp"

namespace clockpress::oracle {

namespace {

void refuse_above(int value, int limit, const char* what) {
  if (value > limit) {
    throw SizeRefusal(std::string(what) + ": " + std::to_string(value) + " qubits exceeds the oracle limit of " +
                      std::to_string(limit));
  }
}

CMatrix to_complex(const RMatrix& m) { return m.cast<Complex>(); }

}  // namespace

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CMatrix qubit_state(double s, double p, double t) {
  const Complex phase = std::polar(1.0, t);
  Eigen::Vector2cd phi(std::sqrt(s), std::sqrt(1.0 - s) * phase);
  Eigen::Vector2cd perp(std::sqrt(1.0 - s), -std::sqrt(s) * phase);
  return p * phi * phi.adjoint() + (1.0 - p) * perp * perp.adjoint();
}

CMatrix full_product_state(const ClockParams& params) {
  params.validate();
  refuse_above(params.n, kMaxProductQubits, "full_product_state");
  const CMatrix one = qubit_state(params.s, params.p, params.t);
  CMatrix rho = one;
  for (int i = 1; i < params.n; ++i) rho = kron(rho, one);
  return rho;
}

RMatrix CoupledBasis::matrix() const {
  RMatrix out(1 << n, 1 << n);
  Eigen::Index col = 0;
  for (const IrrepCopy& irrep : irreps) {
    out.middleCols(col, irrep.columns.cols()) = irrep.columns;
    col += irrep.columns.cols();
  }
  return out;
}

int CoupledBasis::copies(Spin j) const {
  return static_cast<int>(std::count_if(irreps.begin(), irreps.end(),
                                        [j](const IrrepCopy& c) { return c.j == j; }));
}

CoupledBasis coupled_basis(int n) {
  if (n < 1) throw std::invalid_argument("coupled_basis: n must be positive");
  refuse_above(n, kMaxProductQubits, "coupled_basis");
  std::vector<IrrepCopy> current{{Spin(1), RMatrix::Identity(2, 2)}};
  const Spin half(1);
  for (int m = 1; m < n; ++m) {
    std::vector<IrrepCopy> next;
    const Eigen::Index rows = Eigen::Index(1) << (m + 1);
    for (const IrrepCopy& irrep : current) {
      const Spin j = irrep.j;
      for (int twice_new : {j.twice + 1, j.twice - 1}) {
        if (twice_new < 0) continue;
        const Spin jn(twice_new);
        RMatrix cols = RMatrix::Zero(rows, jn.dim());
        for (int kk = 0; kk < jn.dim(); ++kk) {
          const int twice_M = jn.twice_m_at(kk);
          for (int bit = 0; bit < 2; ++bit) {
            const int twice_sigma = bit == 0 ? 1 : -1;
            const int twice_rest = twice_M - twice_sigma;
            if (!j.contains(twice_rest)) continue;
            const double cg = repkit::clebsch_gordan(j, twice_rest, half, twice_sigma, jn, twice_M);
            if (cg == 0.0) continue;
            const RVector& old = irrep.columns.col(j.index_of(twice_rest));
            for (Eigen::Index r = 0; r < old.size(); ++r) cols(2 * r + bit, kk) += cg * old(r);
          }
        }
        next.push_back({jn, std::move(cols)});
      }
    }
    std::stable_sort(next.begin(), next.end(),
                     [](const IrrepCopy& a, const IrrepCopy& b) { return a.j > b.j; });
    current = std::move(next);
  }
  return CoupledBasis{n, std::move(current)};
}

std::vector<OracleBlock> oracle_blocks(const ClockParams& params) {
  refuse_above(params.n, kMaxBlockQubits, "oracle_blocks");
  const CMatrix rho = full_product_state(params);
  const CoupledBasis basis = coupled_basis(params.n);
  std::vector<OracleBlock> out;
  for (Spin j : spin_grid(params.n)) {
    std::vector<const IrrepCopy*> copies;
    for (const IrrepCopy& c : basis.irreps) {
      if (c.j == j) copies.push_back(&c);
    }
    OracleBlock ob;
    ob.j = j;
    ob.block = CMatrix::Zero(j.dim(), j.dim());
    const Eigen::Index m = static_cast<Eigen::Index>(copies.size());
    ob.multiplicity_marginal = CMatrix::Zero(m, m);
    for (Eigen::Index a = 0; a < m; ++a) {
      const CMatrix va = to_complex(copies[a]->columns);
      for (Eigen::Index b = 0; b < m; ++b) {
        const CMatrix vb = to_complex(copies[b]->columns);
        const CMatrix piece = va.adjoint() * rho * vb;
        ob.multiplicity_marginal(a, b) = piece.trace();
        if (a == b) ob.block += piece;
      }
      for (const IrrepCopy& other : basis.irreps) {
        if (other.j == j) continue;
        const CMatrix cross = va.adjoint() * rho * to_complex(other.columns);
        ob.cross_block_leakage = std::max(ob.cross_block_leakage, cross.cwiseAbs().maxCoeff());
      }
    }
    ob.q = ob.block.trace().real();
    if (ob.q > 0.0) ob.block /= ob.q;
    out.push_back(std::move(ob));
  }
  return out;
}

RMatrix dicke_basis(int qubits) {
  refuse_above(qubits, kMaxSymmetrizerQubits, "dicke_basis");
  const Eigen::Index dim = Eigen::Index(1) << qubits;
  RMatrix d = RMatrix::Zero(dim, qubits + 1);
  for (Eigen::Index idx = 0; idx < dim; ++idx) {
    const int ones = std::popcount(static_cast<unsigned>(idx));
    d(idx, ones) = std::exp(-0.5 * repkit::log_binomial(qubits, ones));
  }
  return d;
}

RMatrix symmetrizer(int qubits) {
  const RMatrix d = dicke_basis(qubits);
  return d * d.transpose();
}

RMatrix permutation_operator(int qubits, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != qubits) throw std::invalid_argument("permutation_operator: size mismatch");
  const Eigen::Index dim = Eigen::Index(1) << qubits;
  RMatrix op = RMatrix::Zero(dim, dim);
  for (Eigen::Index idx = 0; idx < dim; ++idx) {
    Eigen::Index target = 0;
    for (int i = 0; i < qubits; ++i) {
      const int bit = (idx >> (qubits - 1 - i)) & 1;
      target |= Eigen::Index(bit) << (qubits - 1 - perm[i]);
    }
    op(target, idx) = 1.0;
  }
  return op;
}

RMatrix permutation_average(int qubits) {
  refuse_above(qubits, 6, "permutation_average");
  std::vector<int> perm(qubits);
  std::iota(perm.begin(), perm.end(), 0);
  const Eigen::Index dim = Eigen::Index(1) << qubits;
  RMatrix sum = RMatrix::Zero(dim, dim);
  int count = 0;
  do {
    sum += permutation_operator(qubits, perm);
    ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return sum / count;
}

CMatrix partial_trace_last(const CMatrix& rho, int total, int traced) {
  const Eigen::Index keep = Eigen::Index(1) << (total - traced);
  const Eigen::Index drop = Eigen::Index(1) << traced;
  CMatrix out = CMatrix::Zero(keep, keep);
  for (Eigen::Index a = 0; a < keep; ++a) {
    for (Eigen::Index c = 0; c < keep; ++c) {
      Complex sum = 0.0;
      for (Eigen::Index b = 0; b < drop; ++b) sum += rho(a * drop + b, c * drop + b);
      out(a, c) = sum;
    }
  }
  return out;
}

namespace {

CMatrix convert_full_space(Spin J, Spin K, const CMatrix& mat) {
  refuse_above(J.twice, kMaxBlockQubits, "oracle_convert");
  refuse_above(K.twice, kMaxBlockQubits, "oracle_convert");
  if (mat.rows() != J.dim() || mat.cols() != J.dim()) {
    throw std::invalid_argument("oracle_convert: matrix is not (2J+1)x(2J+1)");
  }
  const CMatrix dj = to_complex(dicke_basis(J.twice));
  const CMatrix embedded = dj * mat * dj.adjoint();
  if (K.twice > J.twice) {
    const int extra = K.twice - J.twice;
    const CMatrix s = to_complex(symmetrizer(K.twice));
    const double factor = static_cast<double>(J.dim()) / K.dim();
    const CMatrix widened = kron(embedded, CMatrix::Identity(Eigen::Index(1) << extra, Eigen::Index(1) << extra));
    return factor * s * widened * s;
  }
  if (K.twice < J.twice) return partial_trace_last(embedded, J.twice, J.twice - K.twice);
  return embedded;
}

}  // namespace

CMatrix oracle_convert(Spin J, Spin K, const CMatrix& mat) {
  const CMatrix full = convert_full_space(J, K, mat);
  const CMatrix dk = to_complex(dicke_basis(K.twice));
  return dk.adjoint() * full * dk;
}

double trace_down_leakage(Spin J, Spin K, const CMatrix& mat) {
  const CMatrix full = convert_full_space(J, K, mat);
  const CMatrix s = to_complex(symmetrizer(K.twice));
  return (full - s * full * s).cwiseAbs().maxCoeff();
}

CMatrix oracle_frequency_projection(const channels::Window& window, const CMatrix& mat) {
  const Spin j = window.j;
  refuse_above(j.twice, kMaxBlockQubits, "oracle_frequency_projection");
  const CMatrix d = to_complex(dicke_basis(j.twice));
  const CMatrix embedded = d * mat * d.adjoint();
  CMatrix projector = CMatrix::Zero(d.rows(), d.rows());
  for (int k = window.rows.first; k <= window.rows.last; ++k) projector += d.col(k) * d.col(k).adjoint();
  const CMatrix rho0 = d.col(window.nearest_row()) * d.col(window.nearest_row()).adjoint();
  const CMatrix kept = projector * embedded * projector;
  const CMatrix projected = kept + (embedded.trace() - kept.trace()) * rho0;
  return d.adjoint() * projected * d;
}

CMatrix embed_block_state(const BlockState& state, const CoupledBasis& basis) {
  if (state.n != basis.n) throw std::invalid_argument("embed_block_state: n mismatch");
  const Eigen::Index dim = Eigen::Index(1) << basis.n;
  CMatrix out = CMatrix::Zero(dim, dim);
  for (const Block& blk : state.blocks) {
    const CMatrix sigma = blk.op.dense();
    const int copies = basis.copies(blk.j);
    for (const IrrepCopy& c : basis.irreps) {
      if (c.j != blk.j) continue;
      const CMatrix v = to_complex(c.columns);
      out += (blk.weight / copies) * v * sigma * v.adjoint();
    }
  }
  return out;
}

PipelineResult oracle_pipeline(const ClockParams& params, Mode mode, double x) {
  refuse_above(params.n, kMaxBlockQubits, "oracle_pipeline");
  PipelineResult result;
  result.input = full_product_state(params);
  const std::vector<OracleBlock> blocks = oracle_blocks(params);
  std::map<int, const OracleBlock*> by_spin;
  for (const OracleBlock& b : blocks) by_spin[b.j.twice] = &b;

  // Decoded blocks keyed by K, accumulated as weight * normalized block.
  BlockState decoded;
  decoded.n = params.n;
  auto encode = [&](const std::vector<Spin>& members, Spin ref) {
    const channels::Window window = channels::make_window(ref, params.s);
    CMatrix sigma = CMatrix::Zero(ref.dim(), ref.dim());
    double prob = 0.0;
    for (Spin j : members) {
      const OracleBlock& ob = *by_spin.at(j.twice);
      if (ob.q <= 0.0) continue;
      sigma += ob.q * oracle_convert(j, ref, ob.block);
      prob += ob.q;
    }
    if (prob > 0.0) sigma /= prob;
    return std::pair{oracle_frequency_projection(window, sigma), prob};
  };
  auto emit = [&](Spin ref, const CMatrix& memory, Spin k, double weight) {
    decoded.blocks.push_back({k, weight, SpinOperator::full(k, oracle_convert(ref, k, memory))});
  };

  if (mode == Mode::known) {
    const Spin ref = known_reference_spin(params.n, params.p);
    const auto [memory, prob] = encode(spin_grid(params.n), ref);
    for (const OracleBlock& ob : blocks) {
      if (ob.q > 0.0) emit(ref, memory, ob.j, ob.q);
    }
  } else {
    const Partition part = make_partition(params.n, x);
    for (int i = 1; i <= part.b; ++i) {
      if (part.interval(i).empty()) continue;
      const std::vector<Spin> members = part.spins_in(i);
      const Spin ref = part.median_spin(i);
      const auto [memory, prob] = encode(members, ref);
      if (!(prob > 0.0)) continue;
      for (Spin k : members) emit(ref, memory, k, prob / members.size());
    }
  }
  result.output = embed_block_state(decoded, coupled_basis(params.n));
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(result.output - result.input, Eigen::EigenvaluesOnly);
  result.epsilon = 0.5 * solver.eigenvalues().cwiseAbs().sum();
  return result;
}

}  // namespace clockpress::oracle
