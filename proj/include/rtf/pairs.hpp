#pragma once

#include <optional>
#include <string>

#include "rtf/characters.hpp"

namespace rtf {

struct MismatchedPlaceKind : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

enum class PlaceKind { Arch, Sigma1, Sigma2, Sigma3, GoodSplit, GoodInert, GoodRamified };

/** Minimal local description of a place, shared by the local modules. */
struct LocalPlace {
    PlaceKind kind;
    long q = 0;       // residue field size at finite places
    int k = 0;        // archimedean: half the modular weight
    int m = 0;        // archimedean: weight of Omega_v
    int n_omega = 0;  // conductor exponent of Omega_v
};

/**
 * Canonical representative of an equivalence class of admissible pairs.
 * Level 0 (unramified E): parameter a mod q^2-1 with (q-1) | a and
 * (q+1) does not divide a; the class {a, aq} is stored as its minimum.
 * Level 1/2 (ramified E): sign at pi_E and beta in {1, ..., (q-1)/2}
 * (the class {beta, -beta} keeps its sign).
 */
struct AdmissiblePair {
    int level;  // 0 or 1 (level one-half)
    long q;
    long a = 0;
    int sign = 1;
    long beta = 0;

    bool operator==(const AdmissiblePair&) const = default;
    std::string label() const;
};

AdmissiblePair canonical(const AdmissiblePair& p);
std::vector<AdmissiblePair> enumerate_level0_pairs(long q);
std::vector<AdmissiblePair> enumerate_level_half_pairs(long q);

// The toric character theta attached to a pair (E must match the level).
ToricChar theta_of(const QuadExt& E, const AdmissiblePair& p);

// Brute force: theta is admissible iff it is nontrivial on the norm-one
// classes enumerated through Hilbert 90 at the level's depth.
bool is_admissible(const QuadExt& E, const AdmissiblePair& p);

/**
 * Extension Lambda of a level-1/2 theta to E^x U_J^1: on the Iwahori
 * representatives I + [[0, a], [pi b, 0]] it takes the value
 * psi~(beta (a + b)).
 */
struct LambdaChar {
    AdmissiblePair pair;

    RootOfUnity on_iwahori_rep(long a, long b) const;
    // theta(1 + pi_E (a+b)/2), the matching toric value.
    RootOfUnity theta_side(const QuadExt& E, long a, long b) const;
};

/** Descriptor of the local test function f'_v. */
struct TestFunction {
    PlaceKind kind;
    std::optional<AdmissiblePair> pair;  // Sigma2 / Sigma3
    int n_omega = 0;                     // good places: order o + pi^n o_E
    int k = 0, m = 0;                    // archimedean weights
};

TestFunction build_test_function(const LocalPlace& place,
                                 const std::optional<AdmissiblePair>& pair = std::nullopt);

// Volume of the relevant compact-mod-center group, in the symbols
// vU = vol(U_v) and L2 = L(2, 1_{F_v}).
ExactScalar local_volume(const LocalPlace& place);

// Closed-form J_{pi'_v}(f'_v).  L-factors with known rational values are
// substituted; the surviving ratio L(1/2, pi_E x Omega)/L(1, pi, Ad) is
// carried as the formal symbols Lhalf / Ladj.
ExactScalar local_spectral_value(const LocalPlace& place, const TestFunction& tf);

}  // namespace rtf
