#include "pvn/vn_basis.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>

#include "pvn/eigensolve.hpp"
#include "pvn/errors.hpp"

namespace pvn {
namespace {

using cd = std::complex<double>;

constexpr double kTailExponent = 345.0;

void require_square(const Eigen::MatrixXcd& m, const char* name) {
  if (m.rows() != m.cols())
    throw DimensionMismatch(std::string(name) + " must be square, got " + std::to_string(m.rows()) +
                            "x" + std::to_string(m.cols()));
}

void require_rows(const Eigen::MatrixXcd& m, const Eigen::MatrixXd& h, const char* name) {
  if (h.rows() != h.cols() || m.rows() != h.rows())
    throw DimensionMismatch(std::string(name) + " has " + std::to_string(m.rows()) +
                            " rows but H_fgh is " + std::to_string(h.rows()) + "x" +
                            std::to_string(h.cols()));
}

/// Real H times complex M without promoting H to complex.
Eigen::MatrixXcd real_times(const Eigen::MatrixXd& h, const Eigen::MatrixXcd& m) {
  Eigen::MatrixXcd out(h.rows(), m.cols());
  out.real() = h * m.real();
  out.imag() = h * m.imag();
  return out;
}

Eigen::LLT<Eigen::MatrixXcd> factor_overlap(const Eigen::MatrixXcd& S, double max_condition) {
  Eigen::LLT<Eigen::MatrixXcd> llt(S);
  if (llt.info() != Eigen::Success)
    throw IllConditionedOverlap("overlap matrix is not numerically positive definite",
                                std::numeric_limits<double>::infinity());
  const double condition = overlap_condition_estimate(llt);
  if (!(condition <= max_condition))
    throw IllConditionedOverlap("overlap condition estimate " + std::to_string(condition) +
                                    " exceeds " + std::to_string(max_condition),
                                condition);
  return llt;
}

void check_same_grid(const GridSpec& a, const GridSpec& b) {
  if (a.n_points() != b.n_points() || a.x_min() != b.x_min() || a.length() != b.length() ||
      a.hbar() != b.hbar())
    throw InvalidArgument("lattice", "lattice is built on a different grid");
}

SpectrumResult from_generalized(GeneralizedEigResult&& r, Method method, int basis_size) {
  SpectrumResult out;
  out.method = method;
  out.basis_size = basis_size;
  out.eigenvalues = std::move(r.eigenvalues);
  out.eigenvectors = std::move(r.eigenvectors);
  out.residual_max = r.residual_max;
  out.overlap_condition = r.s_condition;
  out.rank_deficient = r.rank_deficient;
  out.used_fallback = r.used_fallback;
  fix_phase(out.eigenvectors);
  return out;
}

}  // namespace

Eigen::MatrixXcd gaussian_samples(const VnLatticeSpec& lattice, PhaseSign sign) {
  const GridSpec& grid = lattice.grid();
  const int n = grid.n_points();
  const double alpha = lattice.alpha();
  const double norm = std::pow(2.0 * alpha / std::numbers::pi, 0.25);
  const double phase_sign = sign == PhaseSign::negative ? -1.0 : 1.0;

  Eigen::MatrixXcd g(n, lattice.size());
  for (int m = 0; m < lattice.size(); ++m) {
    const PhasePoint c = cell_center(lattice, m);
    const double k = phase_sign * c.p / grid.hbar();
    for (int row = 0; row < n; ++row) {
      const double d = grid.point(row) - c.x;
      const double exponent = alpha * d * d;
      // Tails below 1e-150 are stored as zero so that products never go subnormal.
      g(row, m) = exponent > kTailExponent
                      ? cd(0.0)
                      : norm * std::exp(-exponent) * cd(std::cos(k * d), std::sin(k * d));
    }
  }
  return g;
}

Eigen::MatrixXcd overlap_matrix(const Eigen::MatrixXcd& G) {
  Eigen::MatrixXcd s = G.adjoint() * G;
  for (Eigen::Index j = 0; j < s.cols(); ++j) {
    s(j, j) = s(j, j).real();
    for (Eigen::Index i = 0; i < j; ++i) s(i, j) = std::conj(s(j, i));
  }
  return s;
}

double overlap_condition_estimate(const Eigen::LLT<Eigen::MatrixXcd>& factor) {
  const double rcond = factor.rcond();
  return rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
}

Eigen::MatrixXcd dual_samples(const Eigen::MatrixXcd& G, const Eigen::MatrixXcd& S,
                              double max_condition) {
  require_square(S, "S");
  if (G.cols() != S.rows())
    throw DimensionMismatch("G has " + std::to_string(G.cols()) + " columns but S is " +
                            std::to_string(S.rows()) + "x" + std::to_string(S.cols()));
  const auto llt = factor_overlap(S, max_condition);
  // S X = G^H, then B = X^H = G S^-1.
  const Eigen::MatrixXcd x = llt.solve(Eigen::MatrixXcd(G.adjoint()));
  return x.adjoint();
}

BasisMatrices build_basis(const VnLatticeSpec& lattice, double max_condition) {
  Eigen::MatrixXcd g = gaussian_samples(lattice);
  Eigen::MatrixXcd s = overlap_matrix(g);
  Eigen::MatrixXcd b = dual_samples(g, s, max_condition);
  return {lattice, std::move(g), std::move(s), std::move(b)};
}

HermitianPencil pvn_hamiltonian(const Eigen::MatrixXcd& G, const Eigen::MatrixXd& h_fgh) {
  require_rows(G, h_fgh, "G");
  return {hermitian_part(G.adjoint() * real_times(h_fgh, G)), overlap_matrix(G)};
}

HermitianPencil bvn_hamiltonian(const Eigen::MatrixXcd& B, const Eigen::MatrixXd& h_fgh) {
  require_rows(B, h_fgh, "B");
  return {hermitian_part(B.adjoint() * real_times(h_fgh, B)), hermitian_part(B.adjoint() * B)};
}

std::vector<double> center_energies(const VnLatticeSpec& lattice, const PotentialModel& model) {
  std::vector<double> e(static_cast<std::size_t>(lattice.size()));
  for (int m = 0; m < lattice.size(); ++m) e[m] = classical_energy(model, cell_center(lattice, m));
  return e;
}

PruneMask prune_mask(const VnLatticeSpec& lattice, const PotentialModel& model, double e_cut,
                     double margin) {
  if (!std::isfinite(e_cut)) throw InvalidArgument("e_cut", "must be finite");
  if (!(margin >= 0.0) || !std::isfinite(margin))
    throw InvalidArgument("margin", "must be finite and >= 0");
  const auto energies = center_energies(lattice, model);
  PruneMask mask{{}, e_cut, margin, lattice};
  for (int m = 0; m < lattice.size(); ++m)
    if (energies[m] <= e_cut + margin) mask.kept.push_back(m);
  if (mask.kept.empty())
    throw EmptyBasis("no cell center has classical energy <= " + std::to_string(e_cut + margin));
  return mask;
}

PruneMask full_mask(const VnLatticeSpec& lattice) {
  PruneMask mask{std::vector<int>(static_cast<std::size_t>(lattice.size())),
                 std::numeric_limits<double>::infinity(), 0.0, lattice};
  for (int m = 0; m < lattice.size(); ++m) mask.kept[m] = m;
  return mask;
}

HermitianPencil restrict(const HermitianPencil& pencil, std::span<const int> kept) {
  const Eigen::Index n = pencil.H.rows();
  if (pencil.s.rows() != n) throw DimensionMismatch("H and s differ in size");
  for (int k : kept)
    if (k < 0 || k >= n)
      throw IndexError("mask index " + std::to_string(k) + " outside [0, " + std::to_string(n) + ")");
  const std::vector<int> idx(kept.begin(), kept.end());
  return {pencil.H(idx, idx), pencil.s(idx, idx)};
}

HermitianPencil restrict(const HermitianPencil& pencil, const PruneMask& mask) {
  return restrict(pencil, std::span<const int>(mask.kept));
}

BvnReducer::BvnReducer(Eigen::MatrixXcd G, Eigen::MatrixXd h_fgh, double max_condition)
    : g_(std::move(G)), h_(std::move(h_fgh)) {
  require_square(g_, "G");
  require_rows(g_, h_, "G");
  llt_ = factor_overlap(overlap_matrix(g_), max_condition);
  overlap_condition_ = overlap_condition_estimate(llt_);
}

HermitianPencil BvnReducer::restricted(std::span<const int> kept) const {
  const Eigen::Index n = g_.cols();
  for (int k : kept)
    if (k < 0 || k >= n)
      throw IndexError("mask index " + std::to_string(k) + " outside [0, " + std::to_string(n) + ")");
  const std::vector<int> idx(kept.begin(), kept.end());
  Eigen::MatrixXcd unit = Eigen::MatrixXcd::Zero(n, static_cast<Eigen::Index>(idx.size()));
  for (std::size_t c = 0; c < idx.size(); ++c) unit(idx[c], static_cast<Eigen::Index>(c)) = 1.0;
  const Eigen::MatrixXcd x = llt_.solve(unit);
  const Eigen::MatrixXcd b = g_ * x;
  return {hermitian_part(b.adjoint() * real_times(h_, b)),
          hermitian_part(x(idx, Eigen::all))};
}

SpectrumResult solve_method(const GridSpec& grid, const VnLatticeSpec& lattice,
                            const PotentialModel& model, Method method,
                            const std::optional<PruneMask>& mask) {
  check_same_grid(grid, lattice.grid());
  if (mask && method != Method::bvn)
    throw InvalidArgument("mask", "a prune mask is only valid with the bvn method");

  switch (method) {
    case Method::fgh:
      return solve_fgh(fgh_hamiltonian(grid, model), grid.n_points());
    case Method::pvn: {
      const auto h = fgh_hamiltonian(grid, model);
      const auto pencil = pvn_hamiltonian(gaussian_samples(lattice), h.matrix());
      return from_generalized(generalized_hermitian_eig(pencil.H, pencil.s), Method::pvn,
                              lattice.size());
    }
    case Method::bvn: {
      const auto h = fgh_hamiltonian(grid, model);
      const BvnReducer reducer(gaussian_samples(lattice), h.matrix());
      const PruneMask used = mask ? *mask : full_mask(lattice);
      const auto pencil = reducer.restricted(used.kept);
      return from_generalized(generalized_hermitian_eig(pencil.H, pencil.s), Method::bvn,
                              used.size());
    }
    case Method::vn_analytic:
      return analytic_vn_solve(lattice, model);
  }
  throw InvalidArgument("method", "unhandled method");
}

HermitianPencil analytic_vn_pencil(const VnLatticeSpec& lattice, const Harmonic& model) {
  const int n = lattice.size();
  const double alpha = lattice.alpha();
  const double hbar = lattice.grid().hbar();
  const double two_a = 2.0 * alpha;
  const double kinetic_scale = -hbar * hbar / (2.0 * model.mass);
  const double spring = 0.5 * model.mass * model.omega * model.omega;

  std::vector<PhasePoint> centers(static_cast<std::size_t>(n));
  for (int m = 0; m < n; ++m) centers[m] = cell_center(lattice, m);

  // g_i^* g_j = exp(-A x^2 + b x + c) with A = 2 alpha; normalized so that
  // int g_i^* g_j = exp(b^2 / 4A + c), mean mu = b / 2A, variance 1 / 2A.
  HermitianPencil out{Eigen::MatrixXcd(n, n), Eigen::MatrixXcd(n, n)};
  for (int i = 0; i < n; ++i) {
    const double xi = centers[i].x;
    const double ki = centers[i].p / hbar;
    for (int j = 0; j < n; ++j) {
      const double xj = centers[j].x;
      const double kj = centers[j].p / hbar;
      const cd b(two_a * (xi + xj), ki - kj);
      const cd c(-alpha * (xi * xi + xj * xj), -ki * xi + kj * xj);
      const cd overlap = std::exp(b * b / (4.0 * two_a) + c);
      const cd mu = b / (2.0 * two_a);
      const double variance = 1.0 / (2.0 * two_a);
      const cd shift = mu - xj;
      const cd y2 = shift * shift + variance;
      // g_j'' = ((-2 alpha y - i k_j)^2 - 2 alpha) g_j with y = x - x_j.
      const cd curvature = 4.0 * alpha * alpha * y2 + cd(0.0, 4.0 * alpha * kj) * shift -
                           kj * kj - 2.0 * alpha;
      out.s(i, j) = overlap;
      out.H(i, j) = overlap * (kinetic_scale * curvature + spring * (mu * mu + variance));
    }
  }
  out.H = hermitian_part(out.H);
  out.s = hermitian_part(out.s);
  return out;
}

SpectrumResult analytic_vn_solve(const VnLatticeSpec& lattice, const PotentialModel& model) {
  const auto* harmonic = std::get_if<Harmonic>(&model);
  if (!harmonic)
    throw NotImplemented("closed-form vN integrals exist only for the harmonic potential, got " +
                         kind_name(model));
  validate(model);
  const auto pencil = analytic_vn_pencil(lattice, *harmonic);
  return from_generalized(generalized_hermitian_eig(pencil.H, pencil.s), Method::vn_analytic,
                          lattice.size());
}

std::vector<std::pair<int, double>> dropped_overlaps(const Eigen::MatrixXcd& G,
                                                     const Eigen::MatrixXcd& psi,
                                                     const PruneMask& mask) {
  if (G.rows() != psi.rows())
    throw DimensionMismatch("psi must have one row per grid point");
  const Eigen::MatrixXcd c = G.adjoint() * psi;
  std::vector<std::pair<int, double>> out;
  auto kept = mask.kept.begin();
  for (int j = 0; j < G.cols(); ++j) {
    if (kept != mask.kept.end() && *kept == j) {
      ++kept;
      continue;
    }
    out.emplace_back(j, c.row(j).cwiseAbs().maxCoeff());
  }
  return out;
}

}  // namespace pvn
