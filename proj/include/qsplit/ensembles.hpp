#pragma once

#include <string>
#include <string_view>

#include "qsplit/operators.hpp"
#include "qsplit/state.hpp"

namespace qsplit {

// Secrets are |ξ⟩ = α'|0⟩ + β|1⟩ with α' = cos(θ/2) ≥ 0 and β = sin(θ/2)e^{iφ}.
// The ensemble names the class of secrets a protocol run is promised:
//   Equatorial — θ = π/2 exactly, any φ
//   Real       — φ ∈ {0, π} exactly (β real), any θ
//   Arbitrary  — any point on the sphere
enum class Ensemble { Equatorial, Real, Arbitrary };

struct SecretQubit {
  Ensemble ensemble;
  double theta;  // [0, π]
  double phi;    // [0, 2π)
};

std::string_view ensemble_token(Ensemble e);  // "equatorial", "real", "arbitrary"

// Validating factory. Constraint violations are rejected, never coerced:
// (Equatorial, π/3, ...) is an error, not a projection onto the equator.
SecretQubit make_secret(Ensemble ensemble, double theta, double phi);
SecretQubit equatorial_secret(double phi);
SecretQubit real_secret(double theta, double phi = 0.0);

double secret_alpha(const SecretQubit& s);  // α' = cos(θ/2)
Amp secret_beta(const SecretQubit& s);      // sin(θ/2)·e^{iφ}

// α'|0⟩ + β|1⟩ on the given qubit label.
StateVector secret_state(const SecretQubit& s, QubitLabel label);

// {|ξ⟩, |ξ⊥⟩} with |ξ⊥⟩ = β*|0⟩ - α'|1⟩; outcome labels "0" (ξ) and "1" (ξ⊥),
// matching the classical bit Alice announces.
OrthonormalBasis secret_basis(const SecretQubit& s);

// Three-qubit channels on labels (a,b,c). GHZ is NonMaxGHZ(1/√2, 1/√2) and
// AsymW is GeneralW(1/2, 1/2, 1/√2); the named kinds exist so protocol
// preconditions can tell the maximal channels from the parameterized ones.
enum class ChannelKind { GHZ, NonMaxGHZ, AsymW, GeneralW };

struct ChannelSpec {
  ChannelKind kind;
  double a = 0.0, b = 0.0, c = 0.0;  // real coefficients; validated per kind
};

ChannelSpec ghz_channel();
ChannelSpec nonmax_ghz_channel(double a, double b);  // a|000⟩ + b|111⟩
ChannelSpec asym_w_channel();
ChannelSpec general_w_channel(double a, double b, double c);  // a|001⟩ + b|010⟩ + c|100⟩

StateVector make_channel(const ChannelSpec& spec);

std::string_view channel_token(ChannelKind kind);

// The closed operator set protocols may apply as corrections. SigmaX here is
// |1⟩⟨0| - |0⟩⟨1| (the protocol family's convention, -i·σ_y in Pauli terms),
// so SigmaX² = -1 while SigmaXZ = |1⟩⟨0| + |0⟩⟨1| squares to +1. Omega acts
// on two qubits: identity on |00⟩,|11⟩ and a Hadamard mix of |01⟩,|10⟩.
enum class OpName { Identity, SigmaX, SigmaZ, SigmaXZ, Omega };

inline constexpr OpName kOpPool[] = {OpName::Identity, OpName::SigmaX, OpName::SigmaZ,
                                     OpName::SigmaXZ, OpName::Omega};

const Unitary& named_unitary(OpName name);
std::string_view op_token(OpName name);  // "I", "sx", "sz", "sxsz", "omega"
int op_arity(OpName name);               // qubits acted on: 1 or 2
bool op_antidiagonal(OpName name);       // true for the bit-flipping single-qubit ops

}  // namespace qsplit
