#include "mixtop/cssnoise.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

namespace mixtop {

NoiseSpec NoiseSpec::independent(const std::vector<PauliOp> &ops, double p) {
    NoiseSpec ns;
    ns.n = ops.empty() ? 0 : ops[0].n();
    for (auto &o : ops)
        ns.sites.push_back({{{o, p}}});
    ns.validate();
    return ns;
}

NoiseSpec NoiseSpec::pauli_dephasing(size_t n, double px, double pz) {
    NoiseSpec ns;
    ns.n = n;
    for (size_t q = 0; q < n; q++) {
        if (px > 0)
            ns.sites.push_back({{{PauliOp::single(n, q, 'X'), px}}});
        if (pz > 0)
            ns.sites.push_back({{{PauliOp::single(n, q, 'Z'), pz}}});
    }
    if (px < 0 || px > 1 || pz < 0 || pz > 1)
        throw std::invalid_argument("dephasing probabilities must lie in [0, 1]");
    return ns;
}

NoiseSpec NoiseSpec::zx_dephasing(const Lattice &lat, double p) {
    NoiseSpec ns = independent(dephasing_ops(lat, "ZX"), p);
    ns.n = lat.n();
    return ns;
}

NoiseSpec &NoiseSpec::append(const NoiseSpec &o) {
    if (n == 0)
        n = o.n;
    if (o.n != n && !o.sites.empty())
        throw std::invalid_argument("cannot combine noise on different qubit counts");
    sites.insert(sites.end(), o.sites.begin(), o.sites.end());
    return *this;
}

void NoiseSpec::validate() const {
    for (auto &site : sites) {
        double total = 0;
        for (auto &[op, pr] : site.errors) {
            if (op.n() != n)
                throw std::invalid_argument("noise operator " + op.str() + " does not act on " +
                                            std::to_string(n) + " qubits");
            if (!op.is_hermitian())
                throw std::invalid_argument("noise operator " + op.str() + " is not Hermitian");
            if (!(pr >= 0 && pr <= 1))
                throw std::invalid_argument("noise probability " + std::to_string(pr) + " outside [0, 1]");
            total += pr;
        }
        if (total > 1 + 1e-12)
            throw std::invalid_argument("error probabilities of one site sum to " + std::to_string(total));
    }
}

double SyndromeDistribution::total() const {
    double t = 0;
    for (double p : prob)
        t += p;
    return t;
}

double SyndromeDistribution::shannon_entropy() const {
    double h = 0;
    for (double p : prob)
        if (p > 0)
            h -= p * std::log2(p);
    return h;
}

namespace {

uint64_t syndrome_of(const std::vector<PauliOp> &gens, const PauliOp &e) {
    uint64_t s = 0;
    for (size_t i = 0; i < gens.size(); i++)
        if (commutes(gens[i], e) < 0)
            s |= uint64_t{1} << i;
    return s;
}

void fwht(std::vector<double> &f) {
    size_t dim = f.size();
    for (size_t h = 1; h < dim; h <<= 1)
        for (size_t i = 0; i < dim; i += h << 1)
            for (size_t j = i; j < i + h; j++) {
                double a = f[j], b = f[j + h];
                f[j] = a + b;
                f[j + h] = a - b;
            }
}

}  // namespace

std::vector<SiteSyndromes> site_syndromes(const std::vector<PauliOp> &gens, const NoiseSpec &noise,
                                          const QubitSet &region) {
    if (gens.size() > 64)
        throw std::length_error("site_syndromes packs syndromes into 64 bits");
    BitVec in = mask_of(region, noise.n);
    std::vector<SiteSyndromes> out;
    for (auto &site : noise.sites) {
        std::map<uint64_t, double> acc;
        double rest = 1;
        for (auto &[op, pr] : site.errors) {
            acc[syndrome_of(gens, restrict(op, in))] += pr;
            rest -= pr;
        }
        acc[0] += std::max(rest, 0.0);
        if (acc.size() == 1)
            continue;  // no effect on the reduced state
        SiteSyndromes ss;
        for (auto &[s, pr] : acc)
            ss.outcomes.push_back({s, pr});
        out.push_back(std::move(ss));
    }
    return out;
}

std::vector<double> convolve_sites(size_t k, const std::vector<SiteSyndromes> &sites, bool wht) {
    size_t dim = size_t{1} << k;
    if (!wht) {
        std::vector<double> cur(dim, 0.0), next(dim);
        cur[0] = 1;
        for (auto &site : sites) {
            std::fill(next.begin(), next.end(), 0.0);
            for (size_t s = 0; s < dim; s++) {
                if (cur[s] == 0)
                    continue;
                for (auto [t, pr] : site.outcomes)
                    next[s ^ t] += cur[s] * pr;
            }
            cur.swap(next);
        }
        return cur;
    }
    // the transform of a product distribution is the product of transforms
    std::vector<double> hat(dim, 1.0);
    for (auto &site : sites)
        for (size_t t = 0; t < dim; t++) {
            double v = 0;
            for (auto [s, pr] : site.outcomes)
                v += (std::popcount(static_cast<uint64_t>(s & t)) & 1) ? -pr : pr;
            hat[t] *= v;
        }
    fwht(hat);
    double scale = 1.0 / static_cast<double>(dim);
    for (double &v : hat)
        v = std::max(v * scale, 0.0);
    return hat;
}

SyndromeDistribution syndrome_distribution(const StabilizerMixedState &s, const NoiseSpec &noise,
                                           const QubitSet &region, size_t budget) {
    if (noise.n != s.n() && !noise.sites.empty())
        throw std::invalid_argument("noise acts on " + std::to_string(noise.n) + " qubits, state on " +
                                    std::to_string(s.n()));
    noise.validate();
    auto gens = subgroup_on(s, region);
    size_t k = gens.size();
    if (k > budget)
        throw std::length_error("syndrome length " + std::to_string(k) + " exceeds the budget of " +
                                std::to_string(budget) + " bits (budget-qubits)");
    auto sites = site_syndromes(gens, noise, region);
    SyndromeDistribution d;
    d.k = k;
    d.prob = convolve_sites(k, sites, k > 10);
    return d;
}

double noisy_entropy_region(const StabilizerMixedState &s, const NoiseSpec &noise, const QubitSet &region,
                            size_t budget) {
    if (noise.n != s.n() && !noise.sites.empty())
        throw std::invalid_argument("noise acts on " + std::to_string(noise.n) + " qubits, state on " +
                                    std::to_string(s.n()));
    noise.validate();
    auto gens = subgroup_on(s, region);
    size_t k = gens.size();
    BitVec in = mask_of(region, s.n());
    // flip patterns per site; the entropy only sees their span, so the
    // convolution runs in span coordinates
    std::vector<std::vector<std::pair<BitVec, double>>> tables;
    size_t count = 0;
    for (auto &site : noise.sites) {
        std::vector<std::pair<BitVec, double>> t;
        double rest = 1;
        for (auto &[op, pr] : site.errors) {
            PauliOp r = restrict(op, in);
            BitVec syn(k);
            for (size_t i = 0; i < k; i++)
                syn.set(i, commutes(gens[i], r) < 0);
            rest -= pr;
            if (syn.any())
                t.push_back({syn, pr});
        }
        if (t.empty())
            continue;
        t.push_back({BitVec(k), std::max(rest, 0.0)});
        count += t.size();
        tables.push_back(std::move(t));
    }
    SpanBasis probe(k, count);
    std::vector<BitVec> independent;
    for (auto &t : tables)
        for (auto &[v, pr] : t)
            if (v.any() && probe.insert(v))
                independent.push_back(v);
    size_t r = independent.size();
    if (r > budget || r > 64)
        throw std::length_error("syndrome length " + std::to_string(r) + " exceeds the budget of " +
                                std::to_string(std::min<size_t>(budget, 64)) + " bits (budget-qubits)");
    SpanBasis basis(k, r);
    for (auto &v : independent)
        basis.insert(v);
    std::vector<SiteSyndromes> sites;
    for (auto &t : tables) {
        std::map<uint64_t, double> acc;
        for (auto &[v, pr] : t) {
            uint64_t c = 0;
            if (v.any()) {
                BitVec combo = *basis.coefficients(v);
                for (size_t i = 0; i < r; i++)
                    c |= uint64_t{combo.get(i)} << i;
            }
            acc[c] += pr;
        }
        SiteSyndromes ss;
        for (auto &[c, pr] : acc)
            ss.outcomes.push_back({c, pr});
        sites.push_back(std::move(ss));
    }
    SyndromeDistribution d;
    d.k = r;
    d.prob = convolve_sites(r, sites, r > 10);
    return d.shannon_entropy() + entropy_region(s, region);
}

double noisy_cmi(const StabilizerMixedState &s, const NoiseSpec &noise, const Partition &p, size_t budget) {
    return noisy_entropy_region(s, noise, p.AB(), budget) + noisy_entropy_region(s, noise, p.BC(), budget) -
           noisy_entropy_region(s, noise, p.B, budget) - noisy_entropy_region(s, noise, p.ABC(), budget);
}

double sampled_entropy_region(const StabilizerMixedState &s, const NoiseSpec &noise, const QubitSet &region,
                              uint64_t samples, uint64_t seed) {
    if (samples == 0)
        throw std::invalid_argument("sampling needs at least one sample");
    noise.validate();
    auto gens = subgroup_on(s, region);
    BitVec in = mask_of(region, s.n());
    std::vector<std::vector<std::pair<BitVec, double>>> tables;
    for (auto &site : noise.sites) {
        std::vector<std::pair<BitVec, double>> t;
        for (auto &[op, pr] : site.errors) {
            PauliOp r = restrict(op, in);
            BitVec syn(gens.size());
            for (size_t i = 0; i < gens.size(); i++)
                syn.set(i, commutes(gens[i], r) < 0);
            t.push_back({syn, pr});
        }
        tables.push_back(std::move(t));
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::map<std::vector<uint64_t>, uint64_t> counts;
    for (uint64_t k = 0; k < samples; k++) {
        BitVec syn(gens.size());
        for (auto &t : tables) {
            double x = u(rng);
            for (auto &[sv, pr] : t) {
                if (x < pr) {
                    syn ^= sv;
                    break;
                }
                x -= pr;
            }
        }
        counts[syn.words()]++;
    }
    double h = 0;
    for (auto &[key, c] : counts) {
        double p = double(c) / double(samples);
        h -= p * std::log2(p);
    }
    return h + entropy_region(s, region);
}

double sampled_cmi(const StabilizerMixedState &s, const NoiseSpec &noise, const Partition &p, uint64_t samples,
                   uint64_t seed) {
    return sampled_entropy_region(s, noise, p.AB(), samples, seed) +
           sampled_entropy_region(s, noise, p.BC(), samples, seed + 1) -
           sampled_entropy_region(s, noise, p.B, samples, seed + 2) -
           sampled_entropy_region(s, noise, p.ABC(), samples, seed + 3);
}

}  // namespace mixtop
