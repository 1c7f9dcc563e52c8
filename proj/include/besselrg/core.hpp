#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <variant>
#include <vector>

#include "besselrg/errors.hpp"

namespace besselrg {

using cplx = std::complex<double>;

// alpha = m^2 with m >= 0 real, or m = i*m_I with m_I > 0.
class BesselParameter {
 public:
  enum class Branch { Real, Imaginary };

  static BesselParameter from_alpha(double alpha);

  double alpha() const { return alpha_; }
  Branch branch() const { return branch_; }
  bool is_imaginary() const { return branch_ == Branch::Imaginary; }
  // |m|: m itself on the real branch, m_I on the imaginary one.
  double abs_m() const { return mu_; }
  double m_real() const;
  double m_imag() const;
  cplx m() const { return is_imaginary() ? cplx(0.0, mu_) : cplx(mu_, 0.0); }

  bool operator==(const BesselParameter&) const = default;

 private:
  BesselParameter(double a, double mu, Branch b) : alpha_(a), mu_(mu), branch_(b) {}
  double alpha_;
  double mu_;
  Branch branch_;
};

enum class Phase { Gas, Boundary, Liquid, Critical, Solid };

Phase classify_phase(const BesselParameter& param);
std::string to_string(Phase phase);

// Element of R ∪ {∞}.
class ExtendedReal {
 public:
  ExtendedReal() : value_(0.0), infinite_(false) {}
  ExtendedReal(double v);  // NOLINT(google-explicit-constructor)
  static ExtendedReal infinity() { return ExtendedReal(0.0, true); }

  bool is_infinite() const { return infinite_; }
  // Throws DomainError when infinite.
  double value() const;
  // 0 <-> ∞, x -> 1/x otherwise.
  ExtendedReal reciprocal() const;

  bool operator==(const ExtendedReal& o) const {
    return infinite_ == o.infinite_ && (infinite_ || value_ == o.value_);
  }

 private:
  ExtendedReal(double v, bool inf) : value_(v), infinite_(inf) {}
  double value_;
  bool infinite_;
};

std::string to_string(const ExtendedReal& x);
// Accepts "inf", "+inf", "infinity" or a decimal number.
ExtendedReal parse_extended_real(const std::string& text);

enum class Representation { Position, MomentumDirichlet, MomentumNeumann };

std::string to_string(Representation rep);

struct Kappa {
  ExtendedReal value;
  bool operator==(const Kappa&) const = default;
};

// kappa = exp(i*phase); the modulus is 1 by construction.
struct UnimodularKappa {
  double phase;
  cplx value() const { return std::polar(1.0, phase); }
  bool operator==(const UnimodularKappa&) const = default;
};

struct Nu {
  ExtendedReal value;
  bool operator==(const Nu&) const = default;
};

struct UnderlinedKappa {
  ExtendedReal value;
  bool operator==(const UnderlinedKappa&) const = default;
};

using ExtensionDatum = std::variant<Kappa, UnimodularKappa, Nu, UnderlinedKappa>;

struct ExtensionParameter {
  Representation representation = Representation::Position;
  ExtensionDatum datum = Kappa{};

  bool operator==(const ExtensionParameter&) const = default;
};

// Throws DomainError if the datum kind does not fit the parameter.
void validate_extension(const BesselParameter& param, const ExtensionParameter& ext);

struct Realization {
  BesselParameter param;
  ExtensionParameter ext;
  bool operator==(const Realization&) const = default;
};

// Canonical form of H_{m,kappa} for a signed real m with 0 < |m| < 1:
// negative m is replaced by (-m, 1/kappa).  m = ±1/2 uses the underlined kappa.
Realization canonical_realization(double m, ExtendedReal kappa);
// Imaginary order i*m_imag (m_imag != 0), kappa = exp(i*phase).  A negative
// m_imag is replaced by (-m_imag, conj(kappa)).
Realization canonical_imaginary_realization(double m_imag, double phase);

enum class GridScheme { Uniform, LogSpaced, GaussLegendre };

std::string to_string(GridScheme scheme);

struct MomentumGrid {
  std::vector<double> nodes;
  std::vector<double> weights;
  double cutoff = 0.0;
  GridScheme scheme = GridScheme::Uniform;

  std::size_t size() const { return nodes.size(); }

  // Midpoint rule on [0, cutoff].
  static MomentumGrid uniform(double cutoff, std::size_t n);
  // Geometric nodes from p_min to cutoff, trapezoid weights in log p; the
  // first weight also absorbs [0, p_min].
  static MomentumGrid log_spaced(double cutoff, std::size_t n, double p_min);
  static MomentumGrid gauss_legendre(double cutoff, std::size_t n);
};

MomentumGrid scale_grid(const MomentumGrid& grid, double tau);

// Gauss-Legendre nodes and weights on [a, b].
void gauss_legendre_rule(std::size_t n, double a, double b, std::vector<double>& x,
                         std::vector<double>& w);

}  // namespace besselrg
