#pragma once

#include <string>
#include <vector>

#include "dzh/tower.hpp"

namespace dzh {

// One of the eight eigencoordinates of the diagonal torus of GL8 under
// F^8 = E2 + E2 + E4: a block and the Galois index of the embedding.
struct EigenCoordinate {
    enum class Block : std::uint8_t { E2Slot1, E2Slot2, E4 };
    Block block;
    int galois_index;

    bool operator==(const EigenCoordinate&) const = default;
    std::string str() const;
};

std::vector<EigenCoordinate> all_eigencoordinates();

enum class GenericLevel : std::uint8_t {
    G1minusG0,  // roots of G1 not in G0, paired with X0*
    G2minusG1,  // roots of GL8 not in G1, paired with X1*
};

enum class Functional : std::uint8_t { X0star, X1star };

struct RootPair {
    EigenCoordinate i;
    EigenCoordinate j;
    GenericLevel level;
};

// All ordered pairs (i, j), i != j, of the given level: 12 resp. 40.
std::vector<RootPair> root_pairs(GenericLevel level);

// Weight of the functional on a coordinate: X0* gives sigma4^k(pi4^-1) on E4
// coordinates and 0 elsewhere; X1* gives sigma2^k(pi2^-1) on both E2 slots
// and 0 on E4.
LaurentElem weight(const Tower& tower, const EigenCoordinate& c, Functional level);

// Functional value on dalpha^vee(1) = E_ii - E_jj.
LaurentElem pairing_on_coroot(const Tower& tower, const RootPair& r);

struct GenericityEntry {
    RootPair pair;
    std::string value;
    Valuation ord;
    bool ok;
};

struct GenericityReport {
    GenericLevel level;
    Valuation target;
    std::vector<GenericityEntry> entries;
    // Distinct functional values, as strings; compared against the expected set.
    std::vector<std::string> value_set;
    bool pass = false;
    std::string error;  // set when a pairing could not be evaluated
};

GenericityReport check_ge1(const Tower& tower, GenericLevel level);

// ord of the functional on the explicit witness Lie element: (0, pi4) for
// X0*, (diag(pi2, 0), 0) for X1*. `scale_t` multiplies the witness by t^k.
Valuation check_ge0_witness(const Tower& tower, Functional level, int scale_t = 0);
// The witness value itself (4 resp. 2 times t^scale_t).
LaurentElem ge0_witness_value(const Tower& tower, Functional level, int scale_t = 0);

}  // namespace dzh
