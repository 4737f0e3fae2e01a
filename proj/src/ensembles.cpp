#include "qsplit/ensembles.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qsplit {

namespace {

constexpr double kPi = std::numbers::pi_v<double>;
constexpr double kHalfPi = kPi / 2.0;
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

}  // namespace

std::string_view ensemble_token(Ensemble e) {
  switch (e) {
    case Ensemble::Equatorial: return "equatorial";
    case Ensemble::Real: return "real";
    case Ensemble::Arbitrary: return "arbitrary";
  }
  throw std::logic_error("unknown ensemble");
}

SecretQubit make_secret(Ensemble ensemble, double theta, double phi) {
  if (!std::isfinite(theta) || !std::isfinite(phi))
    throw std::invalid_argument("secret angles must be finite");
  if (theta < 0.0 || theta > kPi) throw std::invalid_argument("theta must lie in [0, pi]");
  if (phi < 0.0 || phi >= 2.0 * kPi) throw std::invalid_argument("phi must lie in [0, 2*pi)");
  switch (ensemble) {
    case Ensemble::Equatorial:
      if (theta != kHalfPi)
        throw std::invalid_argument("equatorial secrets require theta = pi/2 exactly");
      break;
    case Ensemble::Real:
      if (phi != 0.0 && phi != kPi)
        throw std::invalid_argument("real secrets require phi = 0 or phi = pi exactly");
      break;
    case Ensemble::Arbitrary:
      break;
  }
  return SecretQubit{ensemble, theta, phi};
}

SecretQubit equatorial_secret(double phi) { return make_secret(Ensemble::Equatorial, kHalfPi, phi); }
SecretQubit real_secret(double theta, double phi) { return make_secret(Ensemble::Real, theta, phi); }

double secret_alpha(const SecretQubit& s) { return std::cos(s.theta / 2.0); }

Amp secret_beta(const SecretQubit& s) {
  return std::sin(s.theta / 2.0) * Amp(std::cos(s.phi), std::sin(s.phi));
}

StateVector secret_state(const SecretQubit& s, QubitLabel label) {
  return StateVector({label}, {Amp(secret_alpha(s)), secret_beta(s)});
}

OrthonormalBasis secret_basis(const SecretQubit& s) {
  const Amp alpha(secret_alpha(s));
  const Amp beta = secret_beta(s);
  return OrthonormalBasis({{alpha, beta}, {std::conj(beta), -alpha}}, {"0", "1"});
}

namespace {

void check_channel_norm(double sq_sum) {
  if (std::abs(sq_sum - 1.0) > kConstructionTol)
    throw std::invalid_argument("channel coefficients are not normalized");
}

}  // namespace

ChannelSpec ghz_channel() { return ChannelSpec{ChannelKind::GHZ, kInvSqrt2, kInvSqrt2, 0.0}; }

ChannelSpec nonmax_ghz_channel(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b) || a <= 0.0 || b <= 0.0)
    throw std::invalid_argument("channel coefficients must be positive");
  check_channel_norm(a * a + b * b);
  return ChannelSpec{ChannelKind::NonMaxGHZ, a, b, 0.0};
}

ChannelSpec asym_w_channel() { return ChannelSpec{ChannelKind::AsymW, 0.5, 0.5, kInvSqrt2}; }

ChannelSpec general_w_channel(double a, double b, double c) {
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) || a <= 0.0 || b <= 0.0 || c <= 0.0)
    throw std::invalid_argument("channel coefficients must be positive");
  check_channel_norm(a * a + b * b + c * c);
  return ChannelSpec{ChannelKind::GeneralW, a, b, c};
}

StateVector make_channel(const ChannelSpec& spec) {
  std::vector<Amp> amps(8, Amp(0.0));
  switch (spec.kind) {
    case ChannelKind::GHZ:
    case ChannelKind::NonMaxGHZ:
      amps[0b000] = spec.a;  // a|000⟩ + b|111⟩
      amps[0b111] = spec.b;
      break;
    case ChannelKind::AsymW:
    case ChannelKind::GeneralW:
      amps[0b001] = spec.a;  // a|001⟩ + b|010⟩ + c|100⟩
      amps[0b010] = spec.b;
      amps[0b100] = spec.c;
      break;
  }
  return StateVector({'a', 'b', 'c'}, amps);
}

std::string_view channel_token(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::GHZ: return "ghz";
    case ChannelKind::NonMaxGHZ: return "nonmax-ghz";
    case ChannelKind::AsymW: return "asymw";
    case ChannelKind::GeneralW: return "general-w";
  }
  throw std::logic_error("unknown channel kind");
}

const Unitary& named_unitary(OpName name) {
  static const Unitary identity{Matrix(2, {1, 0, 0, 1})};
  static const Unitary sigma_x{Matrix(2, {0, -1, 1, 0})};   // |1⟩⟨0| - |0⟩⟨1|
  static const Unitary sigma_z{Matrix(2, {1, 0, 0, -1})};   // |0⟩⟨0| - |1⟩⟨1|
  static const Unitary sigma_xz{Matrix(2, {0, 1, 1, 0})};   // |1⟩⟨0| + |0⟩⟨1|
  static const Unitary omega{Matrix(4, {1, 0,          0,           0,
                                        0, kInvSqrt2,  kInvSqrt2,   0,
                                        0, kInvSqrt2,  -kInvSqrt2,  0,
                                        0, 0,          0,           1})};
  switch (name) {
    case OpName::Identity: return identity;
    case OpName::SigmaX: return sigma_x;
    case OpName::SigmaZ: return sigma_z;
    case OpName::SigmaXZ: return sigma_xz;
    case OpName::Omega: return omega;
  }
  throw std::logic_error("unknown operator name");
}

std::string_view op_token(OpName name) {
  switch (name) {
    case OpName::Identity: return "I";
    case OpName::SigmaX: return "sx";
    case OpName::SigmaZ: return "sz";
    case OpName::SigmaXZ: return "sxsz";
    case OpName::Omega: return "omega";
  }
  throw std::logic_error("unknown operator name");
}

int op_arity(OpName name) { return name == OpName::Omega ? 2 : 1; }

bool op_antidiagonal(OpName name) { return name == OpName::SigmaX || name == OpName::SigmaXZ; }

}  // namespace qsplit
