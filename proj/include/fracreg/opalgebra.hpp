#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fracreg/errors.hpp"
#include "fracreg/fracops.hpp"

namespace fracreg {

/// Composition law for a finite group of fractional matrix operators.
/// Additive is the vertical Hadamard product (exponents add mod n);
/// Multiplicative is the star operation (exponents multiply mod n).
enum class Composition { Additive, Multiplicative };

/// One operator A_alpha^r: the generator raised to integer exponent r.
/// Elements remember the group they came from so that compositions across
/// distinct groups are rejected.
struct OperatorElement {
    int exponent = 0;
    double base_alpha = 0.0;
    int modulus = 0;
    Composition composition = Composition::Additive;
};

struct AxiomReport {
    bool closure = false;
    bool associativity = false;
    bool identity = false;
    bool inverses = false;
    bool commutativity = false;

    bool all() const {
        return closure && associativity && identity && inverses &&
               commutativity;
    }
};

/// Finite group of operator exponents under a declared composition.
/// The matrix structure of the operators collapses to exponent bookkeeping:
/// composing A_alpha^p with A_alpha^q only ever touches p and q.
class OperatorGroup {
public:
    /// Arbitrary carrier; used by tests to probe non-groups as well.
    OperatorGroup(std::vector<int> carrier, int modulus,
                  Composition composition, double base_alpha);

    const std::vector<int>& carrier() const { return carrier_; }
    int modulus() const { return modulus_; }
    Composition composition() const { return composition_; }
    double base_alpha() const { return base_alpha_; }
    std::size_t order() const { return carrier_.size(); }

    bool contains(int exponent) const;

    /// Element with the given exponent; throws DomainError if the exponent
    /// is not in the carrier.
    OperatorElement element(int exponent) const;

    /// Raw composition of two residues under this group's law.
    int compose_exponents(int p, int q) const;

private:
    std::vector<int> carrier_;
    int modulus_;
    Composition composition_;
    double base_alpha_;
};

/// Vertical Hadamard product: A^p o A^q = A^(p+q mod n). Requires both
/// elements to come from the same additive group.
OperatorElement hadamard_compose(const OperatorElement& p,
                                 const OperatorElement& q);

/// Star operation: A^p * A^q = A^(p*q mod n). Requires a shared
/// multiplicative group; throws ClosureError when the product leaves the
/// carrier (only possible for malformed carriers).
OperatorElement star_compose(const OperatorElement& p,
                             const OperatorElement& q);

/// Z_n: additive group on residues {0, ..., n-1}.
OperatorGroup build_group_zn(int n, double alpha);

/// M_n: multiplicative group on the residues in [1, n) coprime to n.
OperatorGroup build_group_mn(int n, double alpha);

/// Z_p^+: multiplicative group on {1, ..., p-1}; p must be prime.
OperatorGroup build_group_zp(int p, double alpha);

/// Exhaustively checks the five Abelian group axioms on the carrier.
/// Associativity is enumerated over all triples up to |carrier| = 64 and
/// sampled (>= 1e5 deterministic pseudo-random triples) above that.
/// Requires |carrier| <= 1e4.
AxiomReport verify_group_axioms(const OperatorGroup& g);

/// The witness of the isomorphism onto integer residues: psi(A^r) = r.
/// Construction re-verifies the axioms and, for additive groups, the
/// homomorphism property psi(a o b) = psi(a) + psi(b) mod n over all pairs.
/// Throws NotAGroupError when the carrier fails the axioms.
class IsoWitness {
public:
    explicit IsoWitness(const OperatorGroup& g);

    int to_integer(const OperatorElement& e) const;
    OperatorElement from_integer(int r) const;

private:
    const OperatorGroup* group_;
};

/// Builds the isomorphism witness for g (see IsoWitness).
IsoWitness iso_witness(const OperatorGroup& g);

/// Applies A_alpha^r to a power term: one power-rule application of total
/// order r * base_alpha. Throws PoleError when the Gamma argument
/// mu - r*alpha + 1 lands on a non-positive integer.
PowerTerm apply_element(const OperatorElement& e, const PowerTerm& term);

/// Renders an element as "A^r" for CLI output.
std::string to_string(const OperatorElement& e);

}  // namespace fracreg
