#include "mixtop/negativity.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace mixtop {

CommutationMatrix commutation_matrix(const StabilizerMixedState &s, const QubitSet &region, bool prune) {
    BitVec in = mask_of(region, s.n());
    BitVec out(s.n());
    for (size_t q = 0; q < s.n(); q++)
        out.set(q, !in.get(q));
    CommutationMatrix cm;
    std::vector<PauliOp> parts;
    for (size_t i = 0; i < s.m(); i++) {
        auto &g = s.generators()[i];
        BitVec supp = g.support_mask();
        bool straddles = (supp & in).any() && (supp & out).any();
        if (prune && !straddles)
            continue;
        cm.generators.push_back(i);
        parts.push_back(restrict(g, in));
    }
    size_t N = parts.size();
    cm.M = BitMatrix(N, N);
    for (size_t i = 0; i < N; i++)
        for (size_t j = i + 1; j < N; j++)
            if (commutes(parts[i], parts[j]) < 0) {
                cm.M.set(i, j, true);
                cm.M.set(j, i, true);
            }
    return cm;
}

NegativityReport stabilizer_negativity(const StabilizerMixedState &s, const QubitSet &region,
                                       std::optional<int> cut_length) {
    auto cm = commutation_matrix(s, region);
    NegativityReport r;
    r.N = cm.generators.size();
    r.rank = rank(cm.M);
    r.EN = r.rank / 2.0;
    r.cut_length = cut_length;
    return r;
}

void split_area_law(NegativityReport &small, NegativityReport &large) {
    if (!small.cut_length || !large.cut_length || *small.cut_length == *large.cut_length)
        throw std::invalid_argument("split_area_law needs two reports with distinct cut lengths");
    double a = (large.EN - small.EN) / (*large.cut_length - *small.cut_length);
    double g = a * *small.cut_length - small.EN;
    for (auto *r : {&small, &large}) {
        r->alpha = a;
        r->gamma = g;
    }
}

LinearFit linear_fit(const std::vector<double> &x, const std::vector<double> &y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("linear_fit needs at least two points");
    double n = x.size(), sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < x.size(); i++) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    double den = n * sxx - sx * sx;
    if (den == 0)
        throw std::invalid_argument("linear_fit: all x values coincide");
    LinearFit f;
    f.slope = (n * sxy - sx * sy) / den;
    f.intercept = (sy - f.slope * sx) / n;
    return f;
}

SpectrumSummary negativity_spectrum_oracle(const StabilizerMixedState &s, const QubitSet &region, size_t max_N) {
    auto cm = commutation_matrix(s, region);
    size_t N = cm.generators.size();
    if (N > max_N)
        throw std::length_error("negativity spectrum: " + std::to_string(N) +
                                " boundary generators exceed the enumeration budget of " + std::to_string(max_N));
    std::vector<uint32_t> lower(N, 0);  // neighbours j < i
    for (size_t i = 0; i < N; i++)
        for (size_t j = 0; j < i; j++)
            if (cm.M.get(i, j))
                lower[i] |= uint32_t{1} << j;
    size_t dim = size_t{1} << N;
    std::vector<double> f(dim);
    for (size_t sigma = 0; sigma < dim; sigma++) {
        int q = 0;
        for (size_t i = 0; i < N; i++)
            if ((sigma >> i) & 1)
                q += std::popcount(static_cast<uint32_t>(sigma) & lower[i]);
        f[sigma] = (q & 1) ? -1.0 : 1.0;
    }
    // Walsh-Hadamard transform
    for (size_t h = 1; h < dim; h <<= 1)
        for (size_t i = 0; i < dim; i += h << 1)
            for (size_t j = i; j < i + h; j++) {
                double a = f[j], b = f[j + h];
                f[j] = a + b;
                f[j + h] = a - b;
            }
    SpectrumSummary out;
    out.N = N;
    double scale = std::ldexp(1.0, -static_cast<int>(N));
    for (double v : f) {
        out.trace_norm += std::abs(v) * scale;
        if (std::abs(v) * scale > 1e-12)
            out.support++;
    }
    out.EN = std::log2(out.trace_norm);
    return out;
}

namespace {

struct HexMasks {
    // for each hexagon, the six adjacent site pairs around it
    std::vector<std::vector<std::pair<int, int>>> pairs;
};

HexMasks hex_masks(const Lattice &lat) {
    if (lat.kind() != LatticeKind::honeycomb_vertices)
        throw std::invalid_argument("the CZ model constraint is defined on honeycomb lattices (got " +
                                    to_string(lat.kind()) + ")");
    HexMasks hm;
    for (auto &hx : lat.hexagons()) {
        std::vector<std::pair<int, int>> p;
        for (size_t k = 0; k < hx.sites.size(); k++)
            p.push_back({int(hx.sites[k]), int(hx.sites[(k + 1) % hx.sites.size()])});
        hm.pairs.push_back(std::move(p));
    }
    return hm;
}

bool hex_ok(const HexMasks &hm, uint64_t a) {
    for (auto &h : hm.pairs) {
        int c = 0;
        for (auto [i, j] : h)
            c += (a >> i) & (a >> j) & 1;
        if (c & 1)
            return false;
    }
    return true;
}

}  // namespace

bool satisfies_hexagons(const Lattice &lat, uint64_t bits) { return hex_ok(hex_masks(lat), bits); }

double mms_cz_negativity(const Lattice &lat, const QubitSet &region, size_t max_n) {
    HexMasks hm = hex_masks(lat);
    if (lat.n() > max_n)
        throw std::length_error("mms_cz_negativity: " + std::to_string(lat.n()) +
                                " sites exceed the enumeration budget of " + std::to_string(max_n));
    uint64_t flip = 0;
    for (size_t q : region) {
        if (q >= lat.n())
            throw std::out_of_range("region qubit outside the lattice");
        flip |= uint64_t{1} << q;
    }
    uint64_t dim = uint64_t{1} << lat.n();
    uint64_t in_set = 0, leaves = 0;
    for (uint64_t a = 0; a < dim; a++) {
        if (!hex_ok(hm, a))
            continue;
        in_set++;
        if (!hex_ok(hm, a ^ flip))
            leaves++;
    }
    return 0.5 * double(leaves) / double(in_set);
}

}  // namespace mixtop
