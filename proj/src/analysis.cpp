#include "bandrec/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/SVD>

#include "bandrec/constants.hpp"
#include "bandrec/errors.hpp"
#include "bandrec/quadrature.hpp"
#include "bandrec/rng.hpp"
#include "bandrec/sampling.hpp"

namespace bandrec {

namespace {

constexpr double kPi = std::numbers::pi;

double integral_of_square(const IntervalFunction& f, int j) {
  const QuadratureResult q = integrate([&](double x) { return std::norm(f.eval(x, j)); }, f.a, f.b);
  return q.value;
}

// Derivative j of cos(y) / sin(y).
double cos_derivative(double y, int j) {
  switch (j % 4) {
    case 0: return std::cos(y);
    case 1: return -std::sin(y);
    case 2: return -std::cos(y);
    default: return std::sin(y);
  }
}

double sin_derivative(double y, int j) { return cos_derivative(y, j + 3); }

cplx ipow(cplx base, int n) {
  cplx result = 1.0;
  for (int i = 0; i < n; ++i) result *= base;
  return result;
}

double seed_uniform(Rng& rng, double lo, double hi) { return rng.uniform(lo, hi); }

}  // namespace

void require_clamped(const IntervalFunction& f, int r) {
  if (!(f.a < f.b)) throw DomainError("interval function: requires a < b");
  const double len = f.b - f.a;
  double scale = 0.0;
  constexpr int kProbe = 256;
  for (int i = 0; i <= kProbe; ++i) scale = std::max(scale, std::abs(f.eval(f.a + len * i / kProbe, 0)));
  for (int l = 0; l < r; ++l) {
    const double tol = 1e-8 * scale / std::pow(len, l);
    if (std::abs(f.eval(f.a, l)) > tol || std::abs(f.eval(f.b, l)) > tol) {
      throw PreconditionError("interval function is not clamped to order " + std::to_string(r) +
                              " (derivative " + std::to_string(l) + " does not vanish at an endpoint)");
    }
  }
}

IntervalFunction aah_extremal(double a, double b) {
  if (!(a < b)) throw DomainError("aah_extremal: requires a < b");
  const double mu = kPi * std::pow(tau(TauSource::root_find), 0.25);
  const double kappa = (std::cosh(mu) - std::cos(mu)) / (std::sinh(mu) - std::sin(mu));
  const double len = b - a;
  auto eval = [=](double x, int j) -> cplx {
    const double y = mu * (x - a) / len;
    const double hyp_even = std::cosh(y);
    const double hyp_odd = std::sinh(y);
    const double ch = (j % 2 == 0) ? hyp_even : hyp_odd;  // cosh^(j)
    const double sh = (j % 2 == 0) ? hyp_odd : hyp_even;  // sinh^(j)
    const double value = ch - cos_derivative(y, j) - kappa * (sh - sin_derivative(y, j));
    return std::pow(mu / len, j) * value;
  };
  return {a, b, 2, eval};
}

IntervalFunction sine_squared(double a, double b) {
  if (!(a < b)) throw DomainError("sine_squared: requires a < b");
  const double len = b - a;
  auto eval = [=](double x, int j) -> cplx {
    const double y = 2.0 * kPi * (x - a) / len;
    if (j == 0) return 0.5 - 0.5 * std::cos(y);
    return -0.5 * std::pow(2.0 * kPi / len, j) * cos_derivative(y, j);
  };
  return {a, b, 1, eval};
}

InequalityCheck verify_ws(const IntervalFunction& f, int r) {
  if (r < 1) throw DomainError("verify_ws: r must be >= 1");
  require_clamped(f, r);
  const double cr = wirtinger_constant(r, CrSource::eigensolver).value;
  const double lhs = integral_of_square(f, 0);
  const double rhs = std::pow(f.b - f.a, 2 * r) / cr * integral_of_square(f, r);
  return {lhs, rhs, lhs <= rhs * (1.0 + 1e-8)};
}

InequalityCheck verify_ws_2r(const IntervalFunction& f, int r) {
  if (r < 1) throw DomainError("verify_ws_2r: r must be >= 1");
  require_clamped(f, r);
  const double cr = wirtinger_constant(r, CrSource::eigensolver).value;
  const double lhs = integral_of_square(f, 0);
  const double rhs = std::pow(f.b - f.a, 4 * r) / (cr * cr) * integral_of_square(f, 2 * r);
  return {lhs, rhs, lhs <= rhs * (1.0 + 1e-8)};
}

double rayleigh_quotient(const IntervalFunction& f) { return integral_of_square(f, 0) / integral_of_square(f, 2); }

DoubleZeroReport double_zero_gap(const PeriodicBandSignal& f, double zero_tol) {
  if (!(l2_norm(f) > zero_tol)) throw DomainError("double_zero_gap: the signal is identically zero");
  const double period = f.period();
  const double sigma = f.sigma();
  const std::size_t n = std::max<std::size_t>(1024, 64 * f.dimension());
  const double step = period / static_cast<double>(n);

  std::vector<cplx> v(n);
  std::vector<double> slope(n);  // Re(f' conj f) = (1/2) d|f|^2/dx
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = step * static_cast<double>(i);
    v[i] = evaluate(f, x, 0);
    slope[i] = std::real(evaluate(f, x, 1) * std::conj(v[i]));
    scale = std::max(scale, std::abs(v[i]));
  }
  auto slope_at = [&](double x) { return std::real(evaluate(f, x, 1) * std::conj(evaluate(f, x, 0))); };

  DoubleZeroReport report;
  report.threshold = kPi * std::pow(tau(TauSource::root_find), 0.25) / sigma;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t next = (i + 1) % n;
    if (!(slope[i] < 0.0 && slope[next] >= 0.0)) continue;
    // Local minimum of |f|^2 in [x_i, x_i + step]: bisect the slope, then polish with Newton on f'.
    double lo = step * static_cast<double>(i);
    double hi = lo + step;
    for (int it = 0; it < 80 && hi - lo > 1e-15 * period; ++it) {
      const double mid = 0.5 * (lo + hi);
      (slope_at(mid) < 0.0 ? lo : hi) = mid;
    }
    double x = 0.5 * (lo + hi);
    const double bracket_lo = lo - step;
    const double bracket_hi = hi + step;
    double polished = x;
    for (int it = 0; it < 40; ++it) {
      const cplx d1 = evaluate(f, polished, 1);
      const cplx d2 = evaluate(f, polished, 2);
      if (std::abs(d2) == 0.0) break;
      const double dx = std::real(d1 / d2);
      polished -= dx;
      if (polished < bracket_lo || polished > bracket_hi) break;
      if (std::abs(dx) <= 1e-15 * period) break;
    }
    if (polished >= bracket_lo && polished <= bracket_hi &&
        std::abs(evaluate(f, polished, 1)) <= std::abs(evaluate(f, x, 1))) {
      x = polished;
    }
    const bool value_vanishes = std::abs(evaluate(f, x, 0)) <= zero_tol * scale;
    const bool slope_vanishes = std::abs(evaluate(f, x, 1)) <= zero_tol * scale * sigma;
    if (value_vanishes && slope_vanishes) {
      x = std::fmod(x, period);
      if (x < 0.0) x += period;
      report.zeros.push_back(x);
    }
  }

  std::sort(report.zeros.begin(), report.zeros.end());
  const double merge = 1e-9 * period;
  std::vector<double> unique;
  for (double z : report.zeros) {
    if (unique.empty() || z - unique.back() > merge) unique.push_back(z);
  }
  if (unique.size() > 1 && unique.front() + period - unique.back() <= merge) unique.pop_back();
  report.zeros = std::move(unique);

  if (report.zeros.size() < 2) {
    report.vacuous = true;
    report.consistent = true;
    report.max_gap = report.zeros.empty() ? 0.0 : period;
    return report;
  }
  double gap = report.zeros.front() + period - report.zeros.back();
  for (std::size_t i = 1; i < report.zeros.size(); ++i) gap = std::max(gap, report.zeros[i] - report.zeros[i - 1]);
  report.max_gap = gap;
  report.consistent = gap > report.threshold;
  return report;
}

UniquenessReport uniqueness_check(std::span<const double> points, double period, double sigma) {
  if (points.empty()) throw DomainError("uniqueness_check: empty partition");
  const int top = max_mode(period, sigma);
  const auto cols = static_cast<Eigen::Index>(2 * top + 1);
  const auto rows = static_cast<Eigen::Index>(2 * points.size());
  Eigen::MatrixXcd a(rows, cols);
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (int m = -top; m <= top; ++m) {
      const double omega = 2.0 * kPi * m / period;
      const cplx phase = std::polar(1.0, omega * points[i]);
      a(static_cast<Eigen::Index>(2 * i), m + top) = phase;
      a(static_cast<Eigen::Index>(2 * i + 1), m + top) = cplx(0.0, omega / sigma) * phase;
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
  const Eigen::VectorXd& s = svd.singularValues();
  const double largest = s(0);
  // A map from a higher-dimensional space always has a kernel.
  const double smallest = rows < cols ? 0.0 : s(s.size() - 1);
  return {smallest, largest, smallest > 1e-8 * largest};
}

IntervalFunction random_clamped_function(std::uint64_t seed, double a, double b, int r, int family) {
  if (!(a < b)) throw DomainError("random_clamped_function: requires a < b");
  if (r < 1) throw DomainError("random_clamped_function: r must be >= 1");
  Rng rng(seed);
  const double len = b - a;
  if (family == 0) {
    // s^r (1 - s)^r q(s), q a random complex quartic.
    std::vector<cplx> p{1.0};
    auto times = [&p](std::vector<cplx> factor) {
      std::vector<cplx> out(p.size() + factor.size() - 1);
      for (std::size_t i = 0; i < p.size(); ++i) {
        for (std::size_t j = 0; j < factor.size(); ++j) out[i + j] += p[i] * factor[j];
      }
      p = std::move(out);
    };
    for (int i = 0; i < r; ++i) times({0.0, 1.0});
    for (int i = 0; i < r; ++i) times({1.0, -1.0});
    std::vector<cplx> q(5);
    for (cplx& c : q) c = cplx(rng.normal(), rng.normal());
    times(q);
    auto eval = [p, a, len](double x, int j) -> cplx {
      const double s = (x - a) / len;
      cplx acc = 0.0;
      const int degree = static_cast<int>(p.size()) - 1;
      for (int n = degree; n >= j; --n) {
        double falling = 1.0;
        for (int i = 0; i < j; ++i) falling *= n - i;
        acc = acc * s + p[static_cast<std::size_t>(n)] * falling;
      }
      return acc / std::pow(len, j);
    };
    return {a, b, r, eval};
  }
  // sin^{2r}(pi s) = ((1 - cos 2 pi s) / 2)^r times a random trigonometric polynomial of degree 3.
  constexpr int kDegree = 3;
  std::vector<cplx> base{1.0};
  for (int i = 0; i < r; ++i) {
    std::vector<cplx> next(base.size() + 2);
    for (std::size_t j = 0; j < base.size(); ++j) {
      next[j] += -0.25 * base[j];
      next[j + 1] += 0.5 * base[j];
      next[j + 2] += -0.25 * base[j];
    }
    base = std::move(next);
  }
  std::vector<cplx> trig(2 * kDegree + 1);
  for (cplx& c : trig) c = cplx(rng.normal(), rng.normal());
  std::vector<cplx> d(base.size() + trig.size() - 1);
  for (std::size_t i = 0; i < base.size(); ++i) {
    for (std::size_t j = 0; j < trig.size(); ++j) d[i + j] += base[i] * trig[j];
  }
  const int offset = r + kDegree;  // d[idx] is the coefficient of exp(2 pi i (idx - offset) s)
  auto eval = [d, a, len, offset](double x, int j) -> cplx {
    const double s = (x - a) / len;
    cplx acc = 0.0;
    for (std::size_t idx = 0; idx < d.size(); ++idx) {
      const int n = static_cast<int>(idx) - offset;
      acc += d[idx] * ipow(cplx(0.0, 2.0 * kPi * n / len), j) * std::polar(1.0, 2.0 * kPi * n * s);
    }
    return acc;
  };
  return {a, b, r, eval};
}

std::vector<VerificationRecord> verification_corpus(const CorpusOptions& options) {
  const auto wants = [&](std::string_view name) { return options.only.empty() || options.only == name; };
  const std::vector<std::string> known{"ws", "ws-2r", "aah-equality", "double-zero", "uniqueness"};
  if (!options.only.empty() && std::find(known.begin(), known.end(), options.only) == known.end()) {
    throw DomainError("verification_corpus: unknown check '" + options.only + "'");
  }
  const Rng root(options.seed);
  std::vector<VerificationRecord> records;

  if (wants("ws") || wants("ws-2r")) {
    for (int r = 1; r <= 3; ++r) {
      for (int c = 0; c < options.cases_per_order; ++c) {
        const std::uint64_t stream = static_cast<std::uint64_t>(r) * 100000u + static_cast<std::uint64_t>(c);
        Rng rng = root.split(stream);
        const double a = seed_uniform(rng, -2.0, 2.0);
        const double b = a + seed_uniform(rng, 0.5, 3.0);
        const int family = c % 2;
        const std::uint64_t fseed = rng.next_u64();
        const IntervalFunction f = random_clamped_function(fseed, a, b, r, family);
        const nlohmann::json inputs{{"r", r}, {"a", a}, {"b", b}, {"family", family}, {"seed", fseed}};
        if (wants("ws")) {
          const InequalityCheck chk = verify_ws(f, r);
          records.push_back({"ws", inputs, chk.lhs, chk.rhs, chk.holds});
        }
        if (wants("ws-2r")) {
          const InequalityCheck chk = verify_ws_2r(f, r);
          records.push_back({"ws-2r", inputs, chk.lhs, chk.rhs, chk.holds});
        }
      }
    }
    const IntervalFunction extremal = aah_extremal(0.0, 1.0);
    if (wants("ws")) {
      const InequalityCheck chk = verify_ws(extremal, 2);
      records.push_back({"ws", {{"r", 2}, {"a", 0.0}, {"b", 1.0}, {"family", "aah-extremal"}}, chk.lhs, chk.rhs, chk.holds});
    }
    if (wants("ws-2r")) {
      const InequalityCheck chk = verify_ws_2r(extremal, 2);
      records.push_back({"ws-2r", {{"r", 2}, {"a", 0.0}, {"b", 1.0}, {"family", "aah-extremal"}}, chk.lhs, chk.rhs, chk.holds});
    }
  }

  if (wants("aah-equality")) {
    const double t = tau(TauSource::root_find);
    for (int i = 0; i < options.aah_intervals; ++i) {
      Rng rng = root.split(200000u + static_cast<std::uint64_t>(i));
      const double a = seed_uniform(rng, -5.0, 5.0);
      const double b = a + seed_uniform(rng, 0.1, 4.0);
      const double lhs = rayleigh_quotient(aah_extremal(a, b));
      const double rhs = std::pow((b - a) / kPi, 4) / t;
      records.push_back({"aah-equality", {{"a", a}, {"b", b}}, lhs, rhs, std::abs(lhs - rhs) <= 1e-6 * rhs});
    }
  }

  if (wants("double-zero")) {
    const double sigma_g = kPi;
    const double period = default_period(sigma_g);
    for (int i = 0; i < options.zero_signals; ++i) {
      const std::uint64_t gseed = root.split(300000u + static_cast<std::uint64_t>(i)).next_u64();
      const PeriodicBandSignal g = random_signal(gseed, period, sigma_g, true);
      const DoubleZeroReport rep = double_zero_gap(multiply(g, g));
      records.push_back({"double-zero",
                         {{"seed", gseed}, {"sigma_g", sigma_g}, {"period", period}, {"zeros", rep.zeros.size()},
                          {"vacuous", rep.vacuous}},
                         rep.max_gap, rep.threshold, rep.consistent});
    }
  }

  if (wants("uniqueness")) {
    const double sigma = kPi;
    const double period = default_period(sigma);
    const double threshold = kPi * std::pow(tau(TauSource::root_find), 0.25) / sigma;
    for (int i = 0; i < options.partitions; ++i) {
      const std::uint64_t pseed = root.split(400000u + static_cast<std::uint64_t>(i)).next_u64();
      const std::vector<double> pts = make_partition(period, threshold, 0.5, pseed);
      const UniquenessReport rep = uniqueness_check(pts, period, sigma);
      records.push_back({"uniqueness",
                         {{"seed", pseed}, {"sigma", sigma}, {"period", period}, {"max_gap", max_cyclic_gap(pts, period)},
                          {"threshold", threshold}},
                         rep.min_singular_value / rep.max_singular_value, 1e-8, rep.unique});
    }
  }
  return records;
}

nlohmann::json to_json(const VerificationRecord& record) {
  return {{"check", record.check}, {"inputs", record.inputs}, {"lhs", record.lhs}, {"rhs", record.rhs}, {"holds", record.holds}};
}

}  // namespace bandrec
