#include "besselrg/momentum_op.hpp"

#include <algorithm>
#include <cmath>

#include "quadrature.hpp"

namespace besselrg {

double kernel_min_max(FlowKind flow, const BesselParameter& param, double p, double q) {
  const double c = param.alpha() - 0.25;
  return flow == FlowKind::Dirichlet ? c * std::min(p, q) : -c * std::max(p, q);
}

double counterterm_weight(FlowKind flow, double coupling, double cutoff) {
  return flow == FlowKind::Dirichlet ? coupling / cutoff : -cutoff * coupling;
}

double CutoffHamiltonian::counterterm_weight() const {
  return besselrg::counterterm_weight(flow, coupling, grid.cutoff);
}

std::vector<double> counterterm_vector(const MomentumGrid& grid, FlowKind flow) {
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = std::sqrt(grid.weights[i]);
    if (flow == FlowKind::Dirichlet) v[i] *= grid.nodes[i];
  }
  return v;
}

Matrix counterterm_matrix(const MomentumGrid& grid, FlowKind flow) {
  const auto v = counterterm_vector(grid, flow);
  Matrix k(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) k(i, j) = v[i] * v[j];
  return k;
}

CutoffHamiltonian assemble_cutoff(const MomentumGrid& grid, FlowKind flow,
                                  const BesselParameter& param, double coupling) {
  if (!std::isfinite(coupling)) throw DomainError("coupling must be finite");
  if (grid.nodes.size() != grid.weights.size()) throw DomainError("grid nodes/weights mismatch");
  const std::size_t n = grid.size();
  CutoffHamiltonian h{grid, flow, param, coupling, Matrix(n)};
  const double weight = counterterm_weight(flow, coupling, grid.cutoff);
  const bool dir = flow == FlowKind::Dirichlet;
  std::vector<double> sw(n);
  for (std::size_t i = 0; i < n; ++i) sw[i] = std::sqrt(grid.weights[i]);
  for (std::size_t i = 0; i < n; ++i) {
    const double p = grid.nodes[i];
    for (std::size_t j = i; j < n; ++j) {
      const double q = grid.nodes[j];
      const double ct = dir ? weight * p * q : weight;
      double v = sw[i] * sw[j] * (kernel_min_max(flow, param, p, q) + ct);
      if (i == j) v += p * p;
      h.matrix(i, j) = v;
      h.matrix(j, i) = v;
    }
  }
  return h;
}

cplx TailFunction::tail(FlowKind flow, const BesselParameter& param, double p) const {
  switch (kind) {
    case Kind::PowerPair: {
      const cplx m = param.m();
      const double lp = std::log(p);
      return c_plus * std::exp((-1.5 - m) * lp) + c_minus * std::exp((-1.5 + m) * lp);
    }
    case Kind::LogPair:
      return std::pow(p, -1.5) * (c_plus * std::log(p) + c_minus);
    case Kind::Single:
      return flow == FlowKind::Dirichlet ? c_plus / p : c_plus / (p * p);
  }
  return {};
}

namespace {

// Antiderivatives of tail(q) and q*tail(q).
struct TailPrimitives {
  TailFunction::Kind kind;
  cplx m, cp, cm;

  cplx g0(double q) const {
    const double lq = std::log(q);
    if (kind == TailFunction::Kind::LogPair) {
      const double s = 1.0 / std::sqrt(q);
      return -2.0 * s * (cp * (lq + 2.0) + cm);
    }
    const cplx ep = -0.5 - m, em = -0.5 + m;
    return cp * std::exp(ep * lq) / ep + cm * std::exp(em * lq) / em;
  }

  cplx g1(double q) const {
    const double lq = std::log(q);
    if (kind == TailFunction::Kind::LogPair) {
      const double s = std::sqrt(q);
      return 2.0 * s * (cp * (lq - 2.0) + cm);
    }
    const cplx ep = 0.5 - m, em = 0.5 + m;
    return cp * std::exp(ep * lq) / ep + cm * std::exp(em * lq) / em;
  }
};

}  // namespace

std::vector<cplx> apply_maximal(FlowKind flow, const BesselParameter& param,
                                const TailFunction& psi, std::optional<double> working_cutoff) {
  const double a = param.alpha();
  if (a >= 1.0) throw UnsupportedError("maximal action is implemented for alpha < 1");
  const std::size_t n = psi.grid.size();
  if (n == 0 || psi.samples.size() != n) throw DomainError("tail function has no samples");
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (!(psi.grid[i] < psi.grid[i + 1])) throw DomainError("tail function grid must ascend");
  if (!(psi.grid.front() > 0.0) || !(psi.lambda0 > 0.0))
    throw DomainError("tail function grid and matching scale must be positive");

  using Kind = TailFunction::Kind;
  const Kind expected = a == 0.25 ? Kind::Single : (a == 0.0 ? Kind::LogPair : Kind::PowerPair);
  if (psi.kind != expected) throw TailMismatchError("tail kind does not match alpha");
  for (std::size_t i = 0; i < n; ++i) {
    const double p = psi.grid[i];
    if (p <= psi.lambda0) continue;
    const cplx t = psi.tail(flow, param, p);
    if (std::abs(psi.samples[i] - t) > 1e-10 * std::max(std::abs(t), 1e-300))
      throw TailMismatchError("samples beyond the matching scale differ from the tail");
  }

  std::vector<cplx> out(n);
  if (psi.kind == Kind::Single) {
    for (std::size_t i = 0; i < n; ++i) {
      const double p = psi.grid[i];
      const cplx t = flow == FlowKind::Dirichlet ? psi.c_plus / p : psi.c_plus / (p * p);
      out[i] = p * p * (psi.samples[i] - t);
    }
    return out;
  }

  const double lam0 = psi.lambda0;
  const double lam_w = working_cutoff.value_or(2.0 * std::max(lam0, psi.grid.back()));
  if (!(lam_w >= std::max(lam0, psi.grid.back())))
    throw DomainError("working cutoff must lie beyond the samples and the matching scale");

  // Head on [0, lambda0]: Dirichlet samples continue to 0 at p = 0, Neumann
  // samples are continued by their first value.
  std::vector<double> xs{0.0};
  std::vector<cplx> ys{flow == FlowKind::Dirichlet ? cplx{} : psi.samples.front()};
  std::vector<std::size_t> pos(n, 0);
  for (std::size_t i = 0; i < n && psi.grid[i] <= lam0; ++i) {
    pos[i] = xs.size();
    xs.push_back(psi.grid[i]);
    ys.push_back(psi.samples[i]);
  }
  if (xs.back() < lam0) {
    xs.push_back(lam0);
    ys.push_back(psi.tail(flow, param, lam0));
  }
  std::vector<cplx> qy(xs.size());
  for (std::size_t k = 0; k < xs.size(); ++k) qy[k] = xs[k] * ys[k];
  const auto i0 = detail::cumulative_integral(xs, ys);
  const auto i1 = detail::cumulative_integral(xs, qy);
  const cplx i0_end = i0.back(), i1_end = i1.back();

  const TailPrimitives tp{psi.kind, param.m(), psi.c_plus, psi.c_minus};
  const double coef = a - 0.25;
  const cplx g0w = tp.g0(lam_w), g1w = tp.g1(lam_w);
  for (std::size_t i = 0; i < n; ++i) {
    const double p = psi.grid[i];
    const bool head = p <= lam0;
    cplx r;
    if (flow == FlowKind::Dirichlet) {
      // int_0^Lw min(p,q) psi(q) dq + counterterm p*(-G0(Lw)).
      const cplx below = head ? i1[pos[i]] : i1_end + tp.g1(p) - tp.g1(lam0);
      const cplx above = head ? (i0_end - i0[pos[i]]) + (g0w - tp.g0(lam0)) : g0w - tp.g0(p);
      r = below + p * above - p * g0w;
      out[i] = p * p * psi.samples[i] + coef * r;
    } else {
      // int_0^Lw max(p,q) psi(q) dq + counterterm -G1(Lw).
      const cplx below = head ? i0[pos[i]] : i0_end + tp.g0(p) - tp.g0(lam0);
      const cplx above = head ? (i1_end - i1[pos[i]]) + (g1w - tp.g1(lam0)) : g1w - tp.g1(p);
      r = p * below + above - g1w;
      out[i] = p * p * psi.samples[i] - coef * r;
    }
  }
  return out;
}

}  // namespace besselrg
