#include "zmp/meanper.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "zmp/csv.hpp"
#include "zmp/specfun.hpp"

namespace zmp::meanper {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

mellin::GridFunction subsample(const mellin::GridFunction& f, std::size_t stride, std::size_t offset = 0) {
  mellin::GridFunction g;
  g.x0 = f.x(offset);
  g.ratio = std::pow(f.ratio, static_cast<double>(stride));
  for (std::size_t j = offset; j < f.size(); j += stride) g.values.push_back(f.values[j]);
  return g;
}

mellin::GridFunction magnitudes(const mellin::GridFunction& f) {
  auto g = f;
  for (auto& v : g.values) v = std::abs(v);
  return g;
}

mellin::GridFunction from_real(const mellin::GridFunction& like, const std::vector<double>& v) {
  auto g = like;
  for (std::size_t j = 0; j < v.size(); ++j) g.values[j] = v[j];
  return g;
}

double max_abs(const mellin::GridFunction& f) {
  double m = 0.0;
  for (const auto& v : f.values) m = std::max(m, std::abs(v));
  return m;
}

// Sum of |v| log r beyond each end: geometric in windows of half an e-fold, infinite if
// the outermost window is not below the next one.
double end_mass(const mellin::GridFunction& v) {
  const std::size_t n = v.size();
  const auto w = static_cast<std::size_t>(std::clamp(std::lround(0.5 / v.log_step()), 2L, 16L));
  if (n < 2 * w) return std::numeric_limits<double>::infinity();
  auto end = [&](bool left) {
    double e0 = 0.0, e1 = 0.0;
    for (std::size_t i = 0; i < w; ++i) {
      e0 = std::max(e0, std::abs(v.values[left ? i : n - 1 - i]));
      e1 = std::max(e1, std::abs(v.values[left ? w + i : n - 1 - w - i]));
    }
    if (e0 == 0.0) return 0.0;
    const double q = e0 / e1;
    return q < 1.0 ? e0 * double(w) * q / (1.0 - q) : std::numeric_limits<double>::infinity();
  };
  return (end(true) + end(false)) * v.log_step();
}

// Both kernels are entire and invariant under s -> 1 - s.
std::vector<double> symmetric_abscissae() { return {-3.0, -1.5, -0.5, 0.5, 1.5, 2.5, 4.0}; }

}  // namespace

mellin::GridFunction mult_convolve(const mellin::GridFunction& f, const mellin::GridFunction& g, ConvMode mode) {
  f.validate();
  g.validate();
  if (std::abs(f.ratio / g.ratio - 1.0) > 1e-12) throw DomainError("mult_convolve: grids need a common ratio");
  const std::size_t nf = f.size(), ng = g.size();
  const double lr = f.log_step();
  mellin::GridFunction out;
  out.ratio = f.ratio;
  std::size_t lo = 0, hi = nf + ng - 1;
  if (mode == ConvMode::valid) {
    lo = std::min(nf, ng) - 1;
    hi = std::max(nf, ng);
  }
  out.x0 = f.x0 * g.x0 * std::pow(f.ratio, static_cast<double>(lo));
  out.values.assign(hi - lo, cplx(0.0));
  for (std::size_t m = lo; m < hi; ++m) {
    const std::size_t j0 = m + 1 > nf ? m + 1 - nf : 0;
    const std::size_t j1 = std::min(m, ng - 1);
    cplx acc = 0.0;
    for (std::size_t j = j0; j <= j1; ++j) acc += f.values[m - j] * g.values[j];
    out.values[m - lo] = acc * lr;
  }
  return out;
}

Convolutor convolutor_from_kernel(const mellin::Evaluator& M, const mellin::ContourSpec& contour,
                                  const std::vector<double>& abscissae, const mellin::GridFunction& grid,
                                  std::string description) {
  if (abscissae.empty()) throw DomainError("convolutor_from_kernel: no abscissae");
  grid.validate();
  const double step = contour.step > 0.0 ? contour.step : mellin::auto_step(grid.x0, grid.x_max(), 1e-14);
  Convolutor v;
  v.grid = grid;
  v.pointwise_error.assign(grid.size(), std::numeric_limits<double>::infinity());
  v.description = std::move(description);
  for (double c : abscissae) {
    auto k = contour;
    k.c = c;
    const auto inv = mellin::inverse_from_samples(mellin::sample_contour(M, k, step), grid, 1e300);
    for (std::size_t j = 0; j < grid.size(); ++j) {
      if (inv.pointwise_error[j] < v.pointwise_error[j]) {
        v.pointwise_error[j] = inv.pointwise_error[j];
        v.grid.values[j] = inv.grid.values[j];
      }
    }
  }
  return v;
}

cplx v_kernel(const lfunc::CompletedSeries& lambda, cplx s) {
  return lfunc::eval_completed_smoothed(lambda, 2.0 * s) * s * (s - 1.0);
}

cplx v_full_kernel(const lfunc::CompletedSeries& lambda, cplx s) {
  const cplx L = lfunc::eval_completed_smoothed(lambda, 2.0 * s);
  const cplx p = s * (2.0 * s - 1.0) * (s - 1.0);
  const cplx p2 = p * p;
  return L * L * p2 * p2;
}

cplx w0_kernel(const arith::EllipticCurveData& curve, cplx s) {
  // Gamma(s)^2 s^4 = Gamma(s+1)^2 s^2, regular at s = 0
  const double A = static_cast<double>(curve.conductor) / (4 * kPi * kPi);
  const cplx g = specfun::gamma(s + 1.0);
  const cplx b = (s - 2.0) * (s - 2.0);
  return std::exp(s * std::log(A)) * g * g * s * s * b * b * (s - 1.0) * (s - 1.0);
}

Convolutor convolutor_v(const lfunc::CompletedSeries& lambda, const mellin::ContourSpec& contour,
                        const mellin::GridFunction& grid) {
  return convolutor_from_kernel([&](cplx s) { return v_kernel(lambda, s); }, contour, symmetric_abscissae(),
                                grid, "Lambda(E,2s) s(s-1)");
}

Convolutor convolutor_v_full(const lfunc::CompletedSeries& lambda, const mellin::ContourSpec& contour,
                             const mellin::GridFunction& grid) {
  return convolutor_from_kernel([&](cplx s) { return v_full_kernel(lambda, s); }, contour,
                                symmetric_abscissae(), grid, "Lambda(E,2s)^2 s^4 (2s-1)^4 (s-1)^4");
}

Convolutor convolutor_w0(const arith::EllipticCurveData& curve, const mellin::ContourSpec& contour,
                         const mellin::GridFunction& grid) {
  return convolutor_from_kernel([&](cplx s) { return w0_kernel(curve, s); }, contour, {-0.5, 0.5, 1.5, 2.5, 4.0},
                                grid, "A^s Gamma(s)^2 s^4 (s-2)^4 (s-1)^2");
}

mellin::GridFunction convolutor_grid(double log_step, double half_width) {
  const auto half = static_cast<std::size_t>(std::llround(half_width / log_step));
  return mellin::symmetric_grid(log_step, 2 * half + 1);
}

ConvolutionReport verify_convolution(const Convolutor& v, const boundary::BoundaryFunction& h,
                                     const std::vector<double>& h_error, int levels) {
  if (levels < 1) throw DomainError("verify_convolution: levels must be positive");
  if (h_error.size() != h.grid.size() || v.pointwise_error.size() != v.grid.size())
    throw DomainError("verify_convolution: error vectors do not match the grids");
  if (v.grid.size() >= h.grid.size()) throw DomainError("verify_convolution: v must be shorter than h");

  ConvolutionReport r;
  const auto fine = mult_convolve(h.grid, v.grid, ConvMode::valid);
  r.x_min = fine.x0;
  r.x_max = fine.x_max();
  const double lr = fine.log_step();
  for (const auto& z : fine.values) {
    r.sup_residual = std::max(r.sup_residual, std::abs(z));
    r.l2_residual += std::norm(z) * lr;
  }
  r.l2_residual = std::sqrt(r.l2_residual);

  // Coarser levels share the nodes of the finest: start both inputs at their first node
  // and keep every 2^l-th sample.
  std::vector<double> sups(static_cast<std::size_t>(levels));
  sups.back() = r.sup_residual;
  mellin::GridFunction coarse1;
  for (int l = 1; l < levels; ++l) {
    const std::size_t stride = std::size_t(1) << l;
    if (v.grid.size() / stride < 3) throw DomainError("verify_convolution: too many levels for the v grid");
    const auto c = mult_convolve(subsample(h.grid, stride), subsample(v.grid, stride), ConvMode::valid);
    sups[static_cast<std::size_t>(levels - 1 - l)] = max_abs(c);
    if (l == 1) coarse1 = c;
  }
  for (int l = 0; l < levels; ++l) {
    const std::size_t stride = std::size_t(1) << (levels - 1 - l);
    r.refinement_series.emplace_back(lr * static_cast<double>(stride), sups[static_cast<std::size_t>(l)]);
  }
  r.monotone = true;
  for (std::size_t i = 1; i < sups.size(); ++i) r.monotone = r.monotone && sups[i] <= sups[i - 1];

  const auto av = magnitudes(v.grid);
  const auto ah = magnitudes(h.grid);
  const auto t_h = mult_convolve(from_real(h.grid, h_error), av, ConvMode::valid);
  const auto t_v = mult_convolve(ah, from_real(v.grid, v.pointwise_error), ConvMode::valid);
  const auto t_r = mult_convolve(ah, av, ConvMode::valid);
  r.budget.h_error = max_abs(t_h);
  // h beyond its own grid is taken at its sampled maximum; the v tails it meets there
  // decay faster than any power.
  r.budget.v_error = max_abs(t_v) + end_mass(v.grid) * max_abs(ah);
  r.budget.rounding = 16 * kEps * max_abs(t_r);
  if (levels > 1) {
    // node k of coarse1 is node 2k + (offset) of fine
    const double shift = std::log(coarse1.x0 / fine.x0) / lr;
    const auto off = static_cast<long>(std::llround(shift));
    for (std::size_t k = 0; k < coarse1.size(); ++k) {
      const long j = off + 2 * static_cast<long>(k);
      if (j < 0 || j >= static_cast<long>(fine.size())) continue;
      r.budget.quadrature =
          std::max(r.budget.quadrature, std::abs(coarse1.values[k] - fine.values[static_cast<std::size_t>(j)]));
    }
  }
  r.within_budget = r.sup_residual <= r.budget.total();
  return r;
}

boundary::BoundaryFunction perturb_term(const boundary::BoundaryFunction& h, const boundary::SeriesAtom& atom,
                                        arith::Int k, double delta_b) {
  auto out = h;
  const auto term = [&](double y) { return y > atom.cutoff ? 0.0 : atom.eval(y); };
  for (std::size_t j = 0; j < h.grid.size(); ++j) {
    const double x = h.grid.x(j);
    out.grid.values[j] += delta_b * (term(double(k) * x) - h.epsilon / x * term(double(k) / x));
  }
  out.source = h.source + ", b_" + std::to_string(k) + " moved by " + csv::fmt(delta_b);
  return out;
}

void write_report(std::ostream& os, const ConvolutionReport& r) {
  os.precision(17);
  os << "sup_residual: " << r.sup_residual << '\n'
     << "l2_residual: " << r.l2_residual << '\n'
     << "x_min: " << r.x_min << '\n'
     << "x_max: " << r.x_max << '\n'
     << "budget: " << r.budget.total() << '\n'
     << "budget_h_error: " << r.budget.h_error << '\n'
     << "budget_v_error: " << r.budget.v_error << '\n'
     << "budget_rounding: " << r.budget.rounding << '\n'
     << "budget_quadrature: " << r.budget.quadrature << '\n'
     << "within_budget: " << (r.within_budget ? "true" : "false") << '\n'
     << "monotone: " << (r.monotone ? "true" : "false") << '\n';
}

void write_refinement_csv(std::ostream& os, const ConvolutionReport& r) {
  os.precision(17);
  os << "log_step,sup_residual\n";
  for (const auto& [step, sup] : r.refinement_series) os << step << ',' << sup << '\n';
}

std::vector<PoleValue> mellin_at_poles(const Convolutor& w, const std::vector<cplx>& poles) {
  if (w.pointwise_error.size() != w.grid.size()) throw DomainError("mellin_at_poles: error vector size");
  const double lr = w.grid.log_step();
  const auto coarse = subsample(w.grid, 2);
  std::vector<PoleValue> out;
  for (const cplx lam : poles) {
    PoleValue p;
    p.location = lam;
    const auto fw = mellin::forward_mellin(w.grid, lam);
    p.value = fw.value;
    double input = 0.0, mass = 0.0;
    for (std::size_t j = 0; j < w.grid.size(); ++j) {
      const double xs = std::exp(lam.real() * w.grid.log_x(j));
      input += w.pointwise_error[j] * xs * lr;
      mass += std::abs(w.grid.values[j]) * xs * lr;
    }
    const double halving = std::abs(mellin::forward_mellin(coarse, lam).value - fw.value);
    p.budget = input + fw.tail_estimate + halving + 16 * kEps * mass;
    out.push_back(p);
  }
  return out;
}

}  // namespace zmp::meanper
