#include "forestlat/polynomial.hpp"

#include <algorithm>

namespace forestlat {

namespace {

long long checked_add(long long a, long long b) {
    long long r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("polynomial coefficient overflow");
    return r;
}

long long checked_mul(long long a, long long b) {
    long long r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("polynomial coefficient overflow");
    return r;
}

void append_term(std::string& out, long long c, int deg, bool first) {
    if (c == 0) return;
    long long abs = c < 0 ? -c : c;
    out += c < 0 ? "-" : (first ? "" : "+");
    if (abs != 1 || deg == 0) out += std::to_string(abs);
    if (deg >= 1) out += "t";
    if (deg >= 2) out += "^" + std::to_string(deg);
}

}  // namespace

std::string IntPolynomial::to_string() const {
    if (coeffs.empty()) return "0";
    std::string out;
    for (int d = degree(); d >= 0; --d) append_term(out, coeffs[d], d, out.empty());
    return out.empty() ? "0" : out;
}

std::string FactoredPoly::to_string() const {
    if (roots.empty()) return "1";
    std::string out;
    for (std::size_t i = 0; i < roots.size();) {
        std::size_t j = i;
        while (j < roots.size() && roots[j] == roots[i]) ++j;
        long long r = roots[i];
        std::string factor = r == 0 ? "t" : "(t-" + std::to_string(r) + ")";
        if (r < 0) factor = "(t+" + std::to_string(-r) + ")";
        out += factor;
        if (j - i > 1) out += "^" + std::to_string(j - i);
        i = j;
    }
    return out;
}

IntPolynomial expand(const FactoredPoly& f) {
    IntPolynomial p;
    p.coeffs = {1};
    for (long long r : f.roots) {
        // multiply by (t - r)
        p.coeffs.push_back(0);
        for (std::size_t i = p.coeffs.size(); i-- > 1;)
            p.coeffs[i] = checked_add(p.coeffs[i - 1], checked_mul(p.coeffs[i], -r));
        p.coeffs[0] = checked_mul(p.coeffs[0], -r);
    }
    return p;
}

IntPolynomial charpoly_mobius(const LatticeModel& lattice) {
    const int n = lattice.rank();
    IntPolynomial p;
    p.coeffs.assign(n + 1, 0);
    std::vector<long long> mu = lattice.mobius_from_bottom();
    for (int y = 0; y < lattice.size(); ++y) {
        int deg = n - lattice.rank_of(y);
        p.coeffs[deg] = checked_add(p.coeffs[deg], mu[y]);
    }
    return p;
}

FactoredPoly charpoly_levels(const LevelSets& levels) {
    FactoredPoly f;
    f.roots.reserve(levels.A.size());
    for (const auto& level : levels.A) f.roots.push_back(static_cast<long long>(level.size()));
    std::sort(f.roots.begin(), f.roots.end());
    return f;
}

FactoredPoly charpoly_exponents(const Tree& tree) {
    FactoredPoly f;
    for (int e : tree.exponent_multiset()) f.roots.push_back(e);
    return f;
}

}  // namespace forestlat
