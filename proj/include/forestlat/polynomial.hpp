#ifndef FORESTLAT_POLYNOMIAL_HPP
#define FORESTLAT_POLYNOMIAL_HPP

#include <string>
#include <vector>

#include "forestlat/shelling.hpp"

namespace forestlat {

// Dense integer polynomial, coefficients lowest degree first, exact 64-bit
// arithmetic with overflow detection (throws std::overflow_error).
struct IntPolynomial {
    std::vector<long long> coeffs;  // empty = zero polynomial

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    std::string to_string() const;  // e.g. "t^3-6t^2+9t-4"
    bool operator==(const IntPolynomial&) const = default;
};

// Product of (t - r) over a multiset of roots, kept sorted ascending.
struct FactoredPoly {
    std::vector<long long> roots;

    std::string to_string() const;  // e.g. "(t-1)^3(t-4)^2(t-10)"
    bool operator==(const FactoredPoly&) const = default;
};

IntPolynomial expand(const FactoredPoly& f);

// Characteristic polynomial three ways. All three agree for these lattices;
// cmd_charpoly and the sweep check that.
IntPolynomial charpoly_mobius(const LatticeModel& lattice);
FactoredPoly charpoly_levels(const LevelSets& levels);
FactoredPoly charpoly_exponents(const Tree& tree);

}  // namespace forestlat

#endif
