#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fockbell/errors.hpp"
#include "fockbell/scalar.hpp"

namespace fockbell {

/// A rail of the interferometer: a named propagation mode.
struct ModeId {
  int index = 0;
  std::string label;

  friend bool operator==(const ModeId&, const ModeId&) = default;
};

enum class ElementKind { beamsplitter, phase_shifter, mirror };

inline const char* to_string(ElementKind kind) {
  switch (kind) {
    case ElementKind::beamsplitter: return "beamsplitter";
    case ElementKind::phase_shifter: return "phase-shifter";
    case ElementKind::mirror: return "mirror";
  }
  return "?";
}

/// Linear optical element acting in place on one or two rails.
///
/// A beamsplitter on rails (p, q) maps
///   p -> i r e^{iφ} p + t q,    q -> t p + i r e^{-iφ} q,
/// so transmission is real and every reflection carries one factor i.
/// A mirror multiplies its rail by i; a phase shifter by e^{iφ}.
template <class Real>
struct BasicOpticalElement {
  ElementKind kind = ElementKind::beamsplitter;
  std::vector<ModeId> modes;
  Real reflection{};    // magnitude r
  Real transmission{};  // magnitude t
  double phase = 0.0;

  Complex reflection_amplitude() const {
    return Complex{0.0, to_double(reflection)} * std::polar(1.0, phase);
  }
  Complex transmission_amplitude() const { return {to_double(transmission), 0.0}; }
};

using OpticalElement = BasicOpticalElement<double>;
using ExactOpticalElement = BasicOpticalElement<Surd>;

inline constexpr double kUnitarityTolerance = 1e-12;

inline void validate_element(const OpticalElement& e) {
  switch (e.kind) {
    case ElementKind::beamsplitter: {
      if (e.modes.size() != 2 || e.modes[0].index == e.modes[1].index)
        throw ValidationError("beamsplitter must act on two distinct modes");
      if (e.reflection < 0.0 || e.reflection > 1.0 || e.transmission < 0.0 ||
          e.transmission > 1.0)
        throw ValidationError("beamsplitter r and t must lie in [0, 1]");
      const double norm = e.reflection * e.reflection + e.transmission * e.transmission;
      if (std::abs(norm - 1.0) > kUnitarityTolerance)
        throw ValidationError("beamsplitter is not unitary: r^2 + t^2 = " + std::to_string(norm));
      break;
    }
    case ElementKind::phase_shifter:
    case ElementKind::mirror:
      if (e.modes.size() != 1)
        throw ValidationError(std::string(to_string(e.kind)) + " must act on exactly one mode");
      break;
  }
}

inline void validate_element(const ExactOpticalElement& e) {
  if (e.kind == ElementKind::beamsplitter) {
    if (e.modes.size() != 2 || e.modes[0].index == e.modes[1].index)
      throw ValidationError("beamsplitter must act on two distinct modes");
    if (!(e.reflection * e.reflection + e.transmission * e.transmission == Surd{1}))
      throw ValidationError("exact beamsplitter is not unitary");
  } else if (e.modes.size() != 1) {
    throw ValidationError(std::string(to_string(e.kind)) + " must act on exactly one mode");
  }
}

inline OpticalElement beamsplitter_element(double r, double t, double extra_phase, ModeId first,
                                           ModeId second) {
  OpticalElement e{ElementKind::beamsplitter, {std::move(first), std::move(second)}, r, t,
                   extra_phase};
  validate_element(e);
  return e;
}

inline OpticalElement phase_shifter_element(double phase, ModeId mode) {
  return {ElementKind::phase_shifter, {std::move(mode)}, 0.0, 1.0, phase};
}

inline OpticalElement mirror_element(ModeId mode) {
  return {ElementKind::mirror, {std::move(mode)}, 1.0, 0.0, 0.0};
}

inline ExactOpticalElement exact_beamsplitter_element(Surd r, Surd t, ModeId first,
                                                      ModeId second) {
  ExactOpticalElement e{ElementKind::beamsplitter, {std::move(first), std::move(second)},
                        std::move(r), std::move(t), 0.0};
  validate_element(e);
  return e;
}

/// Reported angles live in (-pi, pi]; computations accept any real value.
inline double reduce_angle(double angle) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::remainder(angle, two_pi);
  if (r <= -std::numbers::pi) r += two_pi;
  return r;
}

struct AngleSettings {
  double zeta = 0.0;
  double theta = 0.0;
  std::optional<double> chi;

  AngleSettings reduced() const {
    AngleSettings a{reduce_angle(zeta), reduce_angle(theta), std::nullopt};
    if (chi) a.chi = reduce_angle(*chi);
    return a;
  }
};

/// Detector-by-source projection u(i, γ): a_i = Σ_γ u(i, γ) a_γ.
template <class S>
class BasicTransferMatrix {
 public:
  BasicTransferMatrix() = default;
  BasicTransferMatrix(std::size_t rows, std::size_t cols, std::vector<S> entries,
                      std::vector<std::string> detector_labels = {},
                      std::vector<std::string> source_labels = {})
      : rows_(rows),
        cols_(cols),
        entries_(std::move(entries)),
        detector_labels_(std::move(detector_labels)),
        source_labels_(std::move(source_labels)) {
    if (entries_.size() != rows_ * cols_)
      throw ValidationError("transfer matrix: entry count does not match shape");
    if (rows_ < cols_) throw ValidationError("transfer matrix needs at least as many rows as columns");
    if (detector_labels_.empty())
      for (std::size_t i = 0; i < rows_; ++i) detector_labels_.push_back("D" + std::to_string(i + 1));
    if (source_labels_.empty())
      for (std::size_t g = 0; g < cols_; ++g) source_labels_.push_back("S" + std::to_string(g + 1));
    if (detector_labels_.size() != rows_ || source_labels_.size() != cols_)
      throw ValidationError("transfer matrix: label count does not match shape");
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const S& operator()(std::size_t i, std::size_t g) const { return entries_[i * cols_ + g]; }
  S& operator()(std::size_t i, std::size_t g) { return entries_[i * cols_ + g]; }
  std::span<const S> row(std::size_t i) const { return {entries_.data() + i * cols_, cols_}; }
  const std::vector<S>& entries() const { return entries_; }
  const std::vector<std::string>& detector_labels() const { return detector_labels_; }
  const std::vector<std::string>& source_labels() const { return source_labels_; }

  /// Rows reordered so that new row k is old row order[k].
  BasicTransferMatrix permuted_rows(std::span<const std::size_t> order) const {
    if (order.size() != rows_) throw ValidationError("row permutation has wrong length");
    std::vector<S> e;
    std::vector<std::string> labels;
    e.reserve(entries_.size());
    for (std::size_t k : order) {
      for (std::size_t g = 0; g < cols_; ++g) e.push_back((*this)(k, g));
      labels.push_back(detector_labels_[k]);
    }
    return {rows_, cols_, std::move(e), std::move(labels), source_labels_};
  }

  /// Rows restricted to the given subset, in the given order.
  BasicTransferMatrix select_rows(std::span<const std::size_t> subset) const {
    std::vector<S> e;
    std::vector<std::string> labels;
    for (std::size_t k : subset) {
      for (std::size_t g = 0; g < cols_; ++g) e.push_back((*this)(k, g));
      labels.push_back(detector_labels_.at(k));
    }
    return {subset.size(), cols_, std::move(e), std::move(labels), source_labels_};
  }

  BasicTransferMatrix<Complex> to_complex() const {
    std::vector<Complex> e;
    e.reserve(entries_.size());
    for (const auto& x : entries_) e.push_back(ScalarTraits<S>::to_complex(x));
    return {rows_, cols_, std::move(e), detector_labels_, source_labels_};
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<S> entries_;
  std::vector<std::string> detector_labels_;
  std::vector<std::string> source_labels_;
};

using TransferMatrix = BasicTransferMatrix<Complex>;
using ExactTransferMatrix = BasicTransferMatrix<ExactComplex>;

/// Largest |Σ_i conj(u_iγ) u_iγ' − δ_γγ'| over all column pairs.
template <class S>
double isometry_deviation(const BasicTransferMatrix<S>& u) {
  const auto uc = u.to_complex();
  double worst = 0.0;
  for (std::size_t g = 0; g < uc.cols(); ++g)
    for (std::size_t h = 0; h < uc.cols(); ++h) {
      Complex sum{};
      for (std::size_t i = 0; i < uc.rows(); ++i) sum += std::conj(uc(i, g)) * uc(i, h);
      worst = std::max(worst, std::abs(sum - Complex{g == h ? 1.0 : 0.0, 0.0}));
    }
  return worst;
}

template <class S>
bool check_isometry(const BasicTransferMatrix<S>& u, double tol) {
  if (!(tol > 0.0)) throw ValidationError("check_isometry: tolerance must be positive");
  return isometry_deviation(u) <= tol;
}

/// Exact isometry test: column Gram matrix equals the identity in Q(√2, √3).
inline bool check_isometry_exact(const ExactTransferMatrix& u) {
  for (std::size_t g = 0; g < u.cols(); ++g)
    for (std::size_t h = 0; h < u.cols(); ++h) {
      ExactComplex sum;
      for (std::size_t i = 0; i < u.rows(); ++i) sum += u(i, g).conj() * u(i, h);
      if (!(sum == ExactComplex(g == h ? 1 : 0))) return false;
    }
  return true;
}

template <class Real>
struct BasicNetworkDescription {
  std::vector<BasicOpticalElement<Real>> elements;
  std::vector<ModeId> sources;
  std::vector<ModeId> detectors;
};

using NetworkDescription = BasicNetworkDescription<double>;
using ExactNetworkDescription = BasicNetworkDescription<Surd>;

namespace detail {

template <class S>
struct ScalarFor;
template <>
struct ScalarFor<double> {
  using type = Complex;
};
template <>
struct ScalarFor<Surd> {
  using type = ExactComplex;
};

}  // namespace detail

/// Traces every source through the ordered element list and returns the
/// projection of the source modes onto the detector rails. Rails that are
/// not sources start in the vacuum and are dropped from the result.
template <class Real>
BasicTransferMatrix<typename detail::ScalarFor<Real>::type> compose_network(
    const BasicNetworkDescription<Real>& network, double tol = kUnitarityTolerance) {
  using S = typename detail::ScalarFor<Real>::type;
  using Traits = ScalarTraits<S>;
  const std::size_t n_sources = network.sources.size();
  if (network.detectors.size() < n_sources)
    throw ConstructionError("network needs at least as many detectors as sources");

  std::map<int, std::vector<S>> rails;
  std::map<int, std::string> labels;
  auto register_mode = [&](const ModeId& m) -> std::vector<S>& {
    auto [it, inserted] = labels.emplace(m.index, m.label);
    if (!inserted && it->second != m.label)
      throw ConstructionError("mode index " + std::to_string(m.index) + " used with labels '" +
                              it->second + "' and '" + m.label + "'");
    auto rail = rails.find(m.index);
    if (rail == rails.end()) rail = rails.emplace(m.index, std::vector<S>(n_sources, S{})).first;
    return rail->second;
  };

  for (std::size_t g = 0; g < n_sources; ++g) {
    if (rails.contains(network.sources[g].index))
      throw ConstructionError("source mode '" + network.sources[g].label + "' listed twice");
    register_mode(network.sources[g])[g] = Traits::from_real(1);
  }

  const S i_unit = Traits::imag_unit();
  for (const auto& e : network.elements) {
    validate_element(e);
    switch (e.kind) {
      case ElementKind::beamsplitter: {
        auto p = register_mode(e.modes[0]);
        auto q = register_mode(e.modes[1]);
        const S r_fwd = i_unit * Traits::from_real(e.reflection) * Traits::polar(e.phase);
        const S r_bwd = i_unit * Traits::from_real(e.reflection) * Traits::polar(-e.phase);
        const S t = Traits::from_real(e.transmission);
        std::vector<S> p_out(n_sources), q_out(n_sources);
        for (std::size_t g = 0; g < n_sources; ++g) {
          p_out[g] = r_fwd * p[g] + t * q[g];
          q_out[g] = t * p[g] + r_bwd * q[g];
        }
        rails[e.modes[0].index] = std::move(p_out);
        rails[e.modes[1].index] = std::move(q_out);
        break;
      }
      case ElementKind::phase_shifter:
      case ElementKind::mirror: {
        auto& rail = register_mode(e.modes[0]);
        const S factor = e.kind == ElementKind::mirror ? i_unit : Traits::polar(e.phase);
        for (auto& x : rail) x = factor * x;
        break;
      }
    }
  }

  std::vector<S> entries;
  std::vector<std::string> det_labels, src_labels;
  std::vector<int> seen;
  for (const auto& d : network.detectors) {
    if (std::find(seen.begin(), seen.end(), d.index) != seen.end())
      throw ConstructionError("detector mode '" + d.label + "' listed twice");
    seen.push_back(d.index);
    if (auto l = labels.find(d.index); l != labels.end() && l->second != d.label)
      throw ConstructionError("detector mode index " + std::to_string(d.index) + " is labelled '" +
                              l->second + "', not '" + d.label + "'");
    auto it = rails.find(d.index);
    if (it == rails.end())
      throw ConstructionError("detector mode '" + d.label + "' is not part of the network");
    bool reached = false;
    for (const auto& x : it->second) reached = reached || !Traits::is_zero(x);
    if (!reached && n_sources > 0)
      throw ConstructionError("detector mode '" + d.label + "' is not reachable from any source");
    entries.insert(entries.end(), it->second.begin(), it->second.end());
    det_labels.push_back(d.label);
  }
  for (const auto& s : network.sources) src_labels.push_back(s.label);

  BasicTransferMatrix<S> u(network.detectors.size(), n_sources, std::move(entries),
                           std::move(det_labels), std::move(src_labels));
  if (isometry_deviation(u) > tol)
    throw ConstructionError("network loses amplitude to undetected modes (not an isometry)");
  return u;
}

/// The two-condensate interferometer with shifters ζ (Alice) and θ (Bob),
/// written out directly: rows D1..D4, columns (α, β).
inline TransferMatrix two_source_interferometer(double zeta, double theta) {
  const Complex i{0.0, 1.0};
  const Complex ez = std::polar(1.0, zeta);
  const Complex et = std::polar(1.0, theta);
  return {4,
          2,
          {0.5 * i * ez, 0.5 * i,  //
           -0.5 * ez, 0.5,         //
           0.5 * i, 0.5 * i * et,  //
           0.5, -0.5 * et},
          {"D1", "D2", "D3", "D4"},
          {"alpha", "beta"}};
}

/// Element-level description of the same interferometer. Each source splits
/// into a reflected arm (through the shifter) and a transmitted arm; Alice
/// mixes v and w, Bob mixes u and t.
inline NetworkDescription two_source_network(double zeta, double theta) {
  const double h = std::numbers::sqrt2 / 2.0;
  const ModeId v{0, "v"}, u{1, "u"}, t{2, "t"}, w{3, "w"};
  return {{
              beamsplitter_element(h, h, 0.0, v, u),
              beamsplitter_element(h, h, 0.0, t, w),
              phase_shifter_element(zeta, v),
              phase_shifter_element(theta, t),
              beamsplitter_element(h, h, 0.0, v, w),
              beamsplitter_element(h, h, 0.0, u, t),
          },
          {v, t},
          {w, v, u, t}};
}

/// Three condensates on a ring of stations A, B, C. Station k mixes the
/// reflected arm of source k (after its shifter) with the transmitted arm of
/// source k+1, using the same measuring splitter as Alice's station above.
/// Detector order: A1, A2, B1, B2, C1, C2; odd-numbered outputs count η = -1.
inline NetworkDescription three_source_ring_network(double sigma, double theta, double chi) {
  const double h = std::numbers::sqrt2 / 2.0;
  const std::vector<ModeId> reflected{{0, "alpha"}, {1, "beta"}, {2, "gamma"}};
  const std::vector<ModeId> transmitted{{3, "alpha'"}, {4, "beta'"}, {5, "gamma'"}};
  const double shift[3] = {sigma, theta, chi};
  NetworkDescription net;
  net.sources = reflected;
  for (int k = 0; k < 3; ++k)
    net.elements.push_back(beamsplitter_element(h, h, 0.0, reflected[k], transmitted[k]));
  for (int k = 0; k < 3; ++k) net.elements.push_back(phase_shifter_element(shift[k], reflected[k]));
  for (int k = 0; k < 3; ++k)
    net.elements.push_back(beamsplitter_element(h, h, 0.0, reflected[k], transmitted[(k + 1) % 3]));
  for (int k = 0; k < 3; ++k) {
    net.detectors.push_back(transmitted[(k + 1) % 3]);
    net.detectors.push_back(reflected[k]);
  }
  return net;
}

inline TransferMatrix three_source_ring(double sigma, double theta, double chi) {
  auto u = compose_network(three_source_ring_network(sigma, theta, chi));
  return {u.rows(), u.cols(), u.entries(), {"A1", "A2", "B1", "B2", "C1", "C2"},
          {"alpha", "beta", "gamma"}};
}

}  // namespace fockbell
