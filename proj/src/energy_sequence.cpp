#include "susyvcs/energy_sequence.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace susyvcs::spectra {
namespace {

// (m^2/2)(1 - 1/(k+1)^2) = m^2 k (k+2) / (2 (k+1)^2)
mpq_class landau_level(int m, std::size_t k) {
  const mpz_class kk(static_cast<unsigned long>(k));
  mpq_class out(mpz_class(m) * m * kk * (kk + 2), 2 * (kk + 1) * (kk + 1));
  out.canonicalize();
  return out;
}

void require_positive_m(int m) {
  if (m < 1) throw std::invalid_argument("Landau sequences need m >= 1");
}

}  // namespace

EnergySequence EnergySequence::oscillator() {
  return EnergySequence(SequenceKind::kOscillator, 0, {});
}

EnergySequence EnergySequence::landau_bosonic(int m) {
  require_positive_m(m);
  return EnergySequence(SequenceKind::kLandauBosonic, m, {});
}

EnergySequence EnergySequence::landau_fermionic(int m) {
  require_positive_m(m);
  return EnergySequence(SequenceKind::kLandauFermionic, m, {});
}

EnergySequence EnergySequence::table(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("empty energy table");
  for (double v : values)
    if (!std::isfinite(v) || v < 0.0) throw std::invalid_argument("energy table values must be finite and >= 0");
  return EnergySequence(SequenceKind::kTable, 0, std::move(values));
}

std::string EnergySequence::name() const {
  switch (kind_) {
    case SequenceKind::kOscillator:
      return "oscillator";
    case SequenceKind::kLandauBosonic:
      return "landau_bosonic(m=" + std::to_string(m_) + ")";
    case SequenceKind::kLandauFermionic:
      return "landau_fermionic(m=" + std::to_string(m_) + ")";
    case SequenceKind::kTable:
      return "table(" + std::to_string(values_.size()) + ")";
  }
  return "unknown";
}

std::optional<std::size_t> EnergySequence::size() const {
  if (kind_ == SequenceKind::kTable) return values_.size();
  return std::nullopt;
}

double EnergySequence::limit() const {
  switch (kind_) {
    case SequenceKind::kOscillator:
      return std::numeric_limits<double>::infinity();
    case SequenceKind::kLandauBosonic:
    case SequenceKind::kLandauFermionic:
      return 0.5 * m_ * m_;
    case SequenceKind::kTable:
      return values_.back();
  }
  return 0.0;
}

std::optional<mpq_class> EnergySequence::eps_exact(std::size_t n) const {
  switch (kind_) {
    case SequenceKind::kOscillator:
      return mpq_class(mpz_class(static_cast<unsigned long>(n)));
    case SequenceKind::kLandauBosonic:
      return landau_level(m_, n);
    case SequenceKind::kLandauFermionic:
      return landau_level(m_, n + 1);
    case SequenceKind::kTable:
      return std::nullopt;
  }
  return std::nullopt;
}

double EnergySequence::eps(std::size_t n) const {
  if (kind_ == SequenceKind::kTable) {
    if (n >= values_.size()) throw std::out_of_range("energy table index " + std::to_string(n));
    return values_[n];
  }
  if (kind_ == SequenceKind::kOscillator) return static_cast<double>(n);
  return eps_exact(n)->get_d();
}

double EnergySequence::factorial(std::size_t n) const {
  double out = 1.0;
  for (std::size_t k = 1; k <= n; ++k) out *= eps(k);
  return out;
}

double EnergySequence::log_factorial(std::size_t n) const {
  double out = 0.0;
  for (std::size_t k = 1; k <= n; ++k) out += std::log(eps(k));
  return out;
}

std::vector<double> EnergySequence::log_factorials(std::size_t n_max) const {
  std::vector<double> out(n_max + 1, 0.0);
  for (std::size_t k = 1; k <= n_max; ++k) out[k] = out[k - 1] + std::log(eps(k));
  return out;
}

std::optional<mpq_class> EnergySequence::factorial_exact(std::size_t n) const {
  if (kind_ == SequenceKind::kTable) return std::nullopt;
  mpq_class out(1);
  for (std::size_t k = 1; k <= n; ++k) out *= *eps_exact(k);
  return out;
}

EnergySequence table_from_json_text(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("energy table: ") + e.what());
  }
  const nlohmann::json* arr = &doc;
  if (doc.is_object()) {
    if (!doc.contains("values")) throw std::invalid_argument("energy table: missing \"values\"");
    arr = &doc["values"];
  }
  if (!arr->is_array()) throw std::invalid_argument("energy table: expected an array of numbers");
  std::vector<double> values;
  for (const auto& v : *arr) {
    if (!v.is_number()) throw std::invalid_argument("energy table: non-numeric entry");
    values.push_back(v.get<double>());
  }
  return EnergySequence::table(std::move(values));
}

EnergySequence load_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open energy table " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return table_from_json_text(buf.str());
}

mpq_class landau_factorial_closed_form(int m, std::size_t n) {
  require_positive_m(m);
  const unsigned long nn = static_cast<unsigned long>(n);
  mpz_class m2n;
  mpz_pow_ui(m2n.get_mpz_t(), mpz_class(m * m).get_mpz_t(), nn);
  mpq_class out(m2n, mpz_class(1) << (nn + 1));
  out.canonicalize();
  return out * (1 + mpq_class(1, nn + 1));
}

PartnerReport partner_consistency(int m, std::size_t n_max) {
  const EnergySequence b = EnergySequence::landau_bosonic(m);
  const EnergySequence f = EnergySequence::landau_fermionic(m);
  PartnerReport out{m, n_max, {}};
  for (std::size_t n = 0; n <= n_max; ++n)
    if (*f.eps_exact(n) != *b.eps_exact(n + 1)) out.mismatches.push_back(n);
  return out;
}

std::vector<bool> printed_factorial_is_reciprocal(int m, std::size_t n_max) {
  const EnergySequence b = EnergySequence::landau_bosonic(m);
  std::vector<bool> out;
  mpz_class m2n(1);
  for (std::size_t n = 0; n <= n_max; ++n) {
    if (n > 0) m2n *= m * m;
    mpq_class printed(mpz_class(1) << (n + 1), m2n);
    printed.canonicalize();
    printed *= 1 - mpq_class(1, n + 2);
    out.push_back(printed * *b.factorial_exact(n) == 1);
  }
  return out;
}

namespace {

// Cumulative int_0^x w on a uniform step h, tabulated on both half-lines.
class CumulativeIntegral {
 public:
  CumulativeIntegral(const std::function<double(double)>& w, double reach, double h) : w_(w), h_(h) {
    const std::size_t panels = static_cast<std::size_t>(std::ceil(reach / h));
    pos_.assign(panels + 1, 0.0);
    neg_.assign(panels + 1, 0.0);
    for (std::size_t k = 0; k < panels; ++k) {
      pos_[k + 1] = pos_[k] + simpson(k * h, (k + 1) * h);
      neg_[k + 1] = neg_[k] + simpson(-(k + 1.0) * h, -static_cast<double>(k) * h);
    }
  }

  double operator()(double x) const {
    const double ax = std::abs(x);
    std::size_t k = static_cast<std::size_t>(std::floor(ax / h_));
    k = std::min(k, pos_.size() - 1);
    if (x >= 0.0) return pos_[k] + simpson(k * h_, x);
    return -(neg_[k] + simpson(x, -static_cast<double>(k) * h_));
  }

 private:
  double sample(double x) const {
    const double v = w_(x);
    if (!std::isfinite(v)) throw std::invalid_argument("superpotential is not finite at x = " + std::to_string(x));
    return v;
  }
  double simpson(double a, double b) const {
    if (b <= a) return 0.0;
    return (b - a) / 6.0 * (sample(a) + 4.0 * sample(0.5 * (a + b)) + sample(b));
  }

  const std::function<double(double)>& w_;
  double h_;
  std::vector<double> pos_, neg_;
};

// log of the trapezoid integral of exp(2 s I(x)) over [-r, r].
double log_norm2(const CumulativeIntegral& integral, double sign, double r, std::size_t points) {
  std::vector<double> logs(points);
  const double step = 2.0 * r / static_cast<double>(points - 1);
  for (std::size_t j = 0; j < points; ++j) logs[j] = 2.0 * sign * std::sqrt(2.0) * integral(-r + j * step);
  logs.front() += std::log(0.5);
  logs.back() += std::log(0.5);
  const double top = *std::max_element(logs.begin(), logs.end());
  double acc = 0.0;
  for (double l : logs) acc += std::exp(l - top);
  return top + std::log(acc) + std::log(step);
}

}  // namespace

GroundStateProfile ground_state_profiles(const std::function<double(double)>& w, double x_min, double x_max,
                                         std::size_t samples) {
  if (samples < 2) throw std::invalid_argument("ground_state_profiles needs at least 2 samples");
  if (!(x_min < x_max) || !std::isfinite(x_min) || !std::isfinite(x_max))
    throw std::invalid_argument("ground_state_profiles needs a finite range with x_min < x_max");
  const double r0 = std::max(std::abs(x_min), std::abs(x_max));
  const double reach = 16.0 * r0;
  constexpr int kDoublings = 4;
  constexpr std::size_t kNormPointsPerR0 = 2000;

  // Halve the Simpson step until the integral at probe points moves by < 1e-10.
  std::vector<double> probes;
  for (int j = -32; j <= 32; ++j) probes.push_back(reach * j / 32.0);
  for (std::size_t j = 0; j < samples; ++j) probes.push_back(x_min + (x_max - x_min) * j / (samples - 1.0));
  double h = reach / 1024.0;
  auto integral = std::make_unique<CumulativeIntegral>(w, reach, h);
  for (int level = 0; level < 12; ++level) {
    auto finer = std::make_unique<CumulativeIntegral>(w, reach, 0.5 * h);
    double change = 0.0;
    for (double x : probes) {
      const double a = (*integral)(x), b = (*finer)(x);
      change = std::max(change, std::abs(a - b) / std::max(1.0, std::abs(b)));
    }
    integral = std::move(finer);
    h *= 0.5;
    if (change < 1e-10) break;
  }

  GroundStateProfile out;
  out.quadrature_step = h;
  for (std::size_t j = 0; j < samples; ++j) {
    const double x = x_min + (x_max - x_min) * j / (samples - 1.0);
    const double lp = -std::sqrt(2.0) * (*integral)(x);
    out.grid.push_back(x);
    out.log_phi_b.push_back(lp);
    out.phi_b.push_back(std::exp(lp));
    out.chi.push_back(std::exp(-lp));
  }

  double r = r0;
  for (int d = 0; d <= kDoublings; ++d, r *= 2.0) {
    const std::size_t points = kNormPointsPerR0 * (std::size_t(1) << d) + 1;
    out.phi_b_log_norm2_growth.push_back(log_norm2(*integral, -1.0, r, points));
    out.chi_log_norm2_growth.push_back(log_norm2(*integral, +1.0, r, points));
  }
  auto converges = [](const std::vector<double>& g) {
    const double a = g[g.size() - 2], b = g.back();
    return std::isfinite(b) && b - a <= std::log(10.0);
  };
  out.phi_b_normalizable = converges(out.phi_b_log_norm2_growth);
  out.chi_normalizable = converges(out.chi_log_norm2_growth);
  const double inf = std::numeric_limits<double>::infinity();
  out.phi_b_norm2 = out.phi_b_normalizable ? std::exp(out.phi_b_log_norm2_growth.back()) : inf;
  out.chi_norm2 = out.chi_normalizable ? std::exp(out.chi_log_norm2_growth.back()) : inf;
  out.chi_divergent_when_phi_normalizable = !(out.phi_b_normalizable && out.chi_normalizable);
  return out;
}

}  // namespace susyvcs::spectra
