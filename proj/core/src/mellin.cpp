#include "zmp/mellin.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <string>

#include "zmp/csv.hpp"

namespace zmp::mellin {

void ContourSpec::validate() const {
  if (!(T > 0.0) || !(step >= 0.0) || step > T || !std::isfinite(c)) {
    throw DomainError("ContourSpec: need T > 0 and 0 <= step <= T");
  }
}

double GridFunction::log_x(std::size_t j) const { return std::log(x0) + double(j) * std::log(ratio); }
double GridFunction::x(std::size_t j) const { return std::exp(log_x(j)); }
double GridFunction::log_step() const { return std::log(ratio); }

void GridFunction::validate() const {
  if (!(x0 > 0.0) || !(ratio > 1.0) || values.empty()) {
    throw DomainError("GridFunction: need x0 > 0, ratio > 1 and at least one sample");
  }
  for (const auto& v : values) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw DomainError("GridFunction: non-finite sample");
  }
}

GridFunction log_grid(double x0, double ratio, std::size_t n) {
  GridFunction g{x0, ratio, std::vector<cplx>(n, 0.0)};
  g.validate();
  return g;
}

GridFunction symmetric_grid(double log_ratio, std::size_t n) {
  if (n % 2 == 0) throw DomainError("symmetric_grid: n must be odd so that x = 1 is a node");
  const double half = double((n - 1) / 2);
  return log_grid(std::exp(-half * log_ratio), std::exp(log_ratio), n);
}

bool compatible(const GridFunction& a, const GridFunction& b) {
  const double la = a.log_step(), lb = b.log_step();
  if (std::abs(la - lb) > 1e-12 * la) return false;
  const double k = (std::log(a.x0) - std::log(b.x0)) / la;
  return std::abs(k - std::round(k)) < 1e-6;
}

double auto_step(double x_min, double x_max, double tol) {
  if (!(x_min > 0.0) || !(x_max >= x_min) || !(tol > 0.0) || tol >= 1.0) {
    throw DomainError("auto_step: need 0 < x_min <= x_max and 0 < tol < 1");
  }
  // e^{10} covers the log^m x factors that higher-order poles put on the aliased copies.
  return kPi / (std::log(x_max / x_min) + std::log(1.0 / tol) + 10.0);
}

ContourSamples sample_contour(const Evaluator& F, const ContourSpec& contour, double step) {
  contour.validate();
  if (!(step > 0.0) || step > contour.T) throw DomainError("sample_contour: invalid step");
  ContourSamples out;
  out.contour = contour;
  out.step = step;
  const auto K = static_cast<long>(std::floor(contour.T / step + 1e-9));
  const long lo = contour.conjugate_symmetric ? 0 : -K;
  for (long k = lo; k <= K; ++k) {
    const double t = double(k) * step;
    out.t.push_back(t);
    out.F.push_back(F(cplx(contour.c, t)));
  }
  return out;
}

namespace {

// Envelope decay rate of |F| at one end of the contour, per unit height: the
// maximum over the last window against the window before it.
struct TailShape {
  double edge = 0.0;
  double decay = 0.0;
};

TailShape tail_shape(const ContourSamples& s, bool top) {
  const std::size_t n = s.t.size();
  const double width = std::max(1.0, s.contour.T / 8);
  const auto m = static_cast<std::size_t>(std::max(1.0, std::round(width / s.step)));
  TailShape out;
  auto at = [&](std::size_t k) { return std::abs(s.F[top ? n - 1 - k : k]); };
  if (n <= 2 * m) {
    out.edge = at(0);
    return out;
  }
  double last = 0.0, prev = 0.0;
  for (std::size_t k = 0; k < m; ++k) last = std::max(last, at(k));
  for (std::size_t k = m; k < 2 * m; ++k) prev = std::max(prev, at(k));
  out.edge = last;
  if (last == 0.0) {
    out.decay = std::numeric_limits<double>::infinity();
  } else {
    out.decay = std::log(prev / last) / (double(m) * s.step);
  }
  return out;
}

}  // namespace

InverseGrid inverse_from_samples(const ContourSamples& s, const GridFunction& grid, double tol) {
  grid.validate();
  InverseGrid out;
  out.grid = grid;
  out.pointwise_error.assign(grid.size(), 0.0);
  const double c = s.contour.c;
  const double h = s.step;
  const std::size_t n = s.t.size();
  const bool sym = s.contour.conjugate_symmetric;
  const double top = std::abs(s.F.back());
  const double bottom = sym ? top : std::abs(s.F.front());

  const TailShape up = tail_shape(s, true);
  const TailShape down = sym ? up : tail_shape(s, false);
  const double decay = std::min(up.decay, down.decay);
  double mass = 0.0;
  for (const auto& f : s.F) mass += std::abs(f);
  mass *= (sym ? 2.0 : 1.0) * h / (2 * kPi);

  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double lx = grid.log_x(j);
    const double xc = std::exp(-c * lx);
    const double edge = std::max(top, bottom) * xc;
    if (edge > tol) {
      throw TailError("inverse_mellin: |F(c+iT)| x^{-c} = " + csv::fmt(edge) + " exceeds tolerance; raise T",
                      edge);
    }
    cplx sum_h = 0.0, sum_2h = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double t = s.t[k];
      const cplx term = s.F[k] * std::polar(xc, -t * lx);
      const bool end = (k + 1 == n) || (!sym && k == 0);
      double w = end ? 0.5 : 1.0;
      if (sym && k == 0) w = 0.5;
      sum_h += w * term;
      const auto idx = static_cast<long>(std::llround(t / h));
      if (idx % 2 == 0) sum_2h += w * term;
    }
    double scale = h / (2 * kPi);
    cplx v_h, v_2h;
    if (sym) {
      v_h = 2.0 * scale * sum_h.real();
      v_2h = 4.0 * scale * sum_2h.real();
    } else {
      v_h = scale * sum_h;
      v_2h = 2.0 * scale * sum_2h;
    }
    out.grid.values[j] = v_h;
    const double trunc =
        decay > 0.0 ? (up.edge + down.edge) * xc / (2 * kPi * decay) : std::numeric_limits<double>::infinity();
    const double disc = std::abs(v_h - v_2h);
    const double round = 8 * std::numeric_limits<double>::epsilon() * xc * mass;
    out.pointwise_error[j] = trunc + disc + round;
    out.rounding_error = std::max(out.rounding_error, round);
    out.truncation_error = std::max(out.truncation_error, trunc);
    out.discretization_error = std::max(out.discretization_error, disc);
  }
  return out;
}

InverseGrid inverse_mellin_grid(const Evaluator& F, const ContourSpec& contour, const GridFunction& grid, double tol) {
  grid.validate();
  const double h = contour.step > 0.0 ? contour.step : auto_step(grid.x0, std::max(grid.x0, grid.x_max()), tol);
  return inverse_from_samples(sample_contour(F, contour, h), grid, tol);
}

InverseValue inverse_mellin(const Evaluator& F, const ContourSpec& contour, double x, double tol) {
  if (!(x > 0.0)) throw DomainError("inverse_mellin: x must be positive");
  GridFunction g{x, 2.0, {0.0}};
  const auto r = inverse_mellin_grid(F, contour, g, tol);
  return {r.grid.values[0], r.truncation_error, r.discretization_error};
}

ForwardValue forward_mellin(const GridFunction& f, cplx s, double tol) {
  f.validate();
  const double lr = f.log_step();
  const std::size_t n = f.size();
  cplx sum = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    if (f.values[j] == 0.0) continue;
    sum += f.values[j] * std::exp(s * f.log_x(j));
  }
  // Each end is continued as a geometric series with the ratio of its two outermost terms.
  // When that ratio shows no decay (an end at the rounding floor) the end is bounded by
  // windows of w terms instead, with no correction applied.
  auto term = [&](std::size_t j) { return f.values[j] * std::exp(s * f.log_x(j)); };
  const std::size_t w = std::max<std::size_t>(1, std::min<std::size_t>(16, n / 4));
  auto envelope = [&](bool left) {
    if (n < 2 * w) return std::numeric_limits<double>::infinity();
    double e0 = 0.0, e1 = 0.0;
    for (std::size_t i = 0; i < w; ++i) {
      e0 = std::max(e0, std::abs(term(left ? i : n - 1 - i)));
      e1 = std::max(e1, std::abs(term(left ? w + i : n - 1 - w - i)));
    }
    if (e0 == 0.0) return 0.0;
    const double q = e0 / e1;
    return q < 1.0 ? e0 * double(w) * q / (1.0 - q) : std::numeric_limits<double>::infinity();
  };
  // Returns the bound on the omitted terms.
  auto tail = [&](std::size_t end, std::size_t inner, cplx& out) {
    out = 0.0;
    const cplx a0 = term(end);
    if (a0 == 0.0) return 0.0;
    if (n >= 2) {
      const cplx a1 = term(inner);
      if (a1 != 0.0) {
        const cplx q = a0 / a1;
        if (std::abs(q) < 1.0) {
          out = a0 * q / (1.0 - q);
          return std::abs(out);
        }
      }
    }
    return envelope(end == 0);
  };
  cplx lo = 0.0, hi = 0.0;
  const double b_lo = tail(0, n < 2 ? 0 : 1, lo);
  const double b_hi = n < 2 ? b_lo : tail(n - 1, n - 2, hi);
  const double est = (b_lo + b_hi) * lr;
  if (!(est <= tol)) {
    throw TailError("forward_mellin: endpoint tails " + csv::fmt(est) + " exceed tolerance", est);
  }
  return {(sum + lo + hi) * lr, est};
}

void write_csv(std::ostream& os, const GridFunction& f) {
  os << "x,re,im\n";
  for (std::size_t j = 0; j < f.size(); ++j) {
    os << csv::fmt(f.x(j)) << ',' << csv::fmt(f.values[j].real()) << ',' << csv::fmt(f.values[j].imag()) << '\n';
  }
}

GridFunction read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("x,re,im", 0) != 0) throw IoError("grid CSV: missing header x,re,im");
  std::vector<double> xs;
  std::vector<cplx> vs;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto f = csv::split(line);
    if (f.size() != 3) throw IoError("grid CSV: expected 3 columns");
    xs.push_back(csv::parse_double(f[0]));
    vs.emplace_back(csv::parse_double(f[1]), csv::parse_double(f[2]));
  }
  if (xs.size() < 2) throw IoError("grid CSV: need at least two rows");
  const double lr = std::log(xs.back() / xs.front()) / double(xs.size() - 1);
  for (std::size_t j = 1; j < xs.size(); ++j) {
    if (std::abs(std::log(xs[j] / xs[j - 1]) - lr) > 1e-9 * std::max(1.0, lr)) {
      throw IoError("grid CSV: abscissae are not geometric");
    }
  }
  GridFunction g{xs.front(), std::exp(lr), std::move(vs)};
  g.validate();
  return g;
}

}  // namespace zmp::mellin
