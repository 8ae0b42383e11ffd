#include "mixtop/config.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "mixtop/anomaly.hpp"
#include "mixtop/convexroof.hpp"
#include "mixtop/cssnoise.hpp"
#include "mixtop/negativity.hpp"

namespace mixtop {

const std::vector<std::string> &quantities() {
    static const std::vector<std::string> q = {"entropy",      "cmi",         "negativity", "braiding-table",
                                               "memory-class", "tee-witness", "convex-roof"};
    return q;
}

namespace {

const json empty_object = json::object();

const json &section(const json &cfg, const std::string &key) {
    if (!cfg.contains(key))
        return empty_object;
    if (!cfg[key].is_object())
        throw ConfigError(key, "expected an object");
    return cfg[key];
}

void check_keys(const json &obj, const std::string &path, std::initializer_list<const char *> known) {
    for (auto &[k, v] : obj.items()) {
        bool ok = std::any_of(known.begin(), known.end(), [&](const char *n) { return k == n; });
        if (!ok)
            throw ConfigError(path.empty() ? k : path + "." + k, "unknown field");
    }
}

double num(const json &obj, const std::string &key, const std::string &path, double dflt) {
    if (!obj.contains(key))
        return dflt;
    if (!obj[key].is_number())
        throw ConfigError(path + key, "expected a number");
    return obj[key].get<double>();
}

int integer(const json &obj, const std::string &key, const std::string &path, int dflt) {
    double v = num(obj, key, path, dflt);
    if (v != std::floor(v))
        throw ConfigError(path + key, "expected an integer");
    return static_cast<int>(v);
}

std::string str(const json &obj, const std::string &key, const std::string &path, const std::string &dflt) {
    if (!obj.contains(key))
        return dflt;
    if (!obj[key].is_string())
        throw ConfigError(path + key, "expected a string");
    return obj[key].get<std::string>();
}

template <class F>
auto wrap(const std::string &field, F &&f) -> decltype(f()) {
    try {
        return f();
    } catch (const ConfigError &) {
        throw;
    } catch (const std::length_error &e) {
        throw;  // budget errors keep their own message
    } catch (const std::invalid_argument &e) {
        throw ConfigError(field, e.what());
    } catch (const std::out_of_range &e) {
        throw ConfigError(field, e.what());
    }
}

Lattice build_lattice(const json &cfg) {
    const json &l = section(cfg, "lattice");
    check_keys(l, "lattice", {"kind", "Lx", "Ly", "boundary"});
    int Lx = integer(l, "Lx", "lattice.", 4);
    int Ly = integer(l, "Ly", "lattice.", Lx);
    auto kind = wrap("lattice.kind", [&] { return parse_lattice_kind(str(l, "kind", "lattice.", "square")); });
    auto b = wrap("lattice.boundary", [&] { return parse_boundary(str(l, "boundary", "lattice.", "torus")); });
    return wrap("lattice", [&] { return Lattice::build(kind, Lx, Ly, b); });
}

json lattice_fields(const Lattice &lat) {
    return {{"lattice", to_string(lat.kind())}, {"Lx", lat.Lx()}, {"Ly", lat.Ly()},
            {"boundary", to_string(lat.boundary())}};
}

struct Noise {
    double px = 0, pz = 0, pzx = 0;
    bool any() const { return px > 0 || pz > 0 || pzx > 0; }
    bool endpoint() const {
        auto ok = [](double p) { return p == 0 || p == 0.5; };
        return ok(px) && ok(pz) && ok(pzx);
    }
};

Noise parse_noise(const json &cfg) {
    const json &n = section(cfg, "noise");
    check_keys(n, "noise", {"px", "pz", "pzx"});
    Noise out{num(n, "px", "noise.", 0), num(n, "pz", "noise.", 0), num(n, "pzx", "noise.", 0)};
    for (auto [k, v] : {std::pair{"px", out.px}, {"pz", out.pz}, {"pzx", out.pzx}})
        if (!(v >= 0 && v <= 1))
            throw ConfigError(std::string("noise.") + k, "probability outside [0, 1]");
    return out;
}

void add_noise_fields(json &row, const Noise &n) {
    row["px"] = n.px;
    row["pz"] = n.pz;
    row["pzx"] = n.pzx;
}

StabilizerMixedState clean_state(const json &cfg, const Lattice &lat) {
    std::string model = str(cfg, "model", "", "toric-code");
    return wrap("model", [&] { return model_state(model, lat); });
}

// exact stabilizer state after maximal dephasing of every channel with p > 0
StabilizerMixedState strong_group_state(const StabilizerMixedState &s, const Lattice &lat, const Noise &n) {
    std::vector<PauliOp> ops;
    auto add = [&](double p, const char *type) {
        if (p > 0) {
            auto o = wrap("noise", [&] { return dephasing_ops(lat, type); });
            ops.insert(ops.end(), o.begin(), o.end());
        }
    };
    add(n.px, "X");
    add(n.pz, "Z");
    add(n.pzx, "ZX");
    return apply_max_dephasing(s, ops);
}

NoiseSpec noise_spec(const Lattice &lat, const Noise &n) {
    NoiseSpec ns = NoiseSpec::pauli_dephasing(lat.n(), n.px, n.pz);
    if (n.pzx > 0)
        ns.append(wrap("noise.pzx", [&] { return NoiseSpec::zx_dephasing(lat, n.pzx); }));
    return ns;
}

Partition explicit_partition(const json &p, size_t n) {
    check_keys(p, "partition", {"scheme", "A", "B", "C"});
    Partition part;
    part.scheme = "explicit";
    std::vector<bool> used(n, false);
    for (auto [key, dst] : {std::pair{"A", &part.A}, {"B", &part.B}, {"C", &part.C}}) {
        if (!p.contains(key))
            continue;
        if (!p[key].is_array())
            throw ConfigError(std::string("partition.") + key, "expected a list of qubits");
        for (auto &q : p[key]) {
            if (!q.is_number_unsigned() || q.get<size_t>() >= n)
                throw ConfigError(std::string("partition.") + key, "qubit index outside the system");
            if (used[q.get<size_t>()])
                throw ConfigError(std::string("partition.") + key, "regions overlap");
            used[q.get<size_t>()] = true;
            dst->push_back(q.get<size_t>());
        }
        std::sort(dst->begin(), dst->end());
    }
    return part;
}

Partition resolve_partition(const json &cfg, const Lattice &lat, const std::string &dflt_scheme) {
    const json &p = section(cfg, "partition");
    std::string scheme = str(p, "scheme", "partition.", dflt_scheme);
    if (scheme == "explicit")
        return explicit_partition(p, lat.n());
    check_keys(p, "partition", {"scheme", "parameters"});
    Parameters params;
    if (p.contains("parameters")) {
        if (!p["parameters"].is_object())
            throw ConfigError("partition.parameters", "expected an object");
        for (auto &[k, v] : p["parameters"].items()) {
            if (!v.is_number())
                throw ConfigError("partition.parameters." + k, "expected a number");
            params[k] = v.get<double>();
        }
    }
    return wrap("partition", [&] { return partition(lat, scheme, params); });
}

QubitSet resolve_region(const json &cfg, const Lattice &lat, const Partition *part, const std::string &dflt,
                        std::string &name) {
    json r = cfg.contains("region") ? cfg["region"] : json(dflt);
    if (r.is_array()) {
        QubitSet q;
        for (auto &v : r) {
            if (!v.is_number_unsigned() || v.get<size_t>() >= lat.n())
                throw ConfigError("region", "qubit index outside the lattice");
            q.push_back(v.get<size_t>());
        }
        name = "explicit";
        return set_union(q, {});
    }
    if (r.is_object()) {
        check_keys(r, "region", {"first"});
        int k = integer(r, "first", "region.", 0);
        if (k < 0 || static_cast<size_t>(k) > lat.n())
            throw ConfigError("region.first", "out of range");
        QubitSet q(k);
        for (int i = 0; i < k; i++)
            q[i] = i;
        name = "first-" + std::to_string(k);
        return q;
    }
    if (!r.is_string())
        throw ConfigError("region", "expected a name, a list of qubits or {\"first\": k}");
    name = r.get<std::string>();
    if (name == "full") {
        QubitSet q(lat.n());
        for (size_t i = 0; i < lat.n(); i++)
            q[i] = i;
        return q;
    }
    if (!part)
        throw ConfigError("region", "named region '" + name + "' needs a partition");
    if (name == "A")
        return part->A;
    if (name == "B")
        return part->B;
    if (name == "C")
        return part->C;
    if (name == "AB")
        return part->AB();
    if (name == "BC")
        return part->BC();
    if (name == "ABC")
        return part->ABC();
    if (name == "hole")
        return part->hole;
    throw ConfigError("region", "unknown region '" + name + "'");
}

// ------------------------------------------------------------ quantities

std::vector<json> eval_entropy(const json &cfg, const RunOptions &opt, bool as_cmi) {
    Lattice lat = build_lattice(cfg);
    Noise noise = parse_noise(cfg);
    auto s = clean_state(cfg, lat);
    json row = lattice_fields(lat);
    row["model"] = str(cfg, "model", "", "toric-code");
    add_noise_fields(row, noise);

    std::optional<Partition> part;
    if (as_cmi || cfg.contains("partition"))
        part = resolve_partition(cfg, lat, "levin-wen");
    std::string region_name;
    QubitSet region;
    if (!as_cmi)
        region = resolve_region(cfg, lat, part ? &*part : nullptr, "full", region_name);

    auto exact = [&](const QubitSet &r) { return entropy_region(strong_group_state(s, lat, noise), r); };
    auto syndrome = [&](const QubitSet &r) {
        return noisy_entropy_region(s, noise_spec(lat, noise), r, opt.budget_qubits);
    };
    auto sampled = [&](const QubitSet &r, uint64_t salt) {
        return sampled_entropy_region(s, noise_spec(lat, noise), r, opt.mc_samples, opt.seed + salt);
    };
    std::string method = noise.endpoint() ? "stabilizer" : (opt.mc_samples ? "monte-carlo" : "syndrome");
    auto S = [&](const QubitSet &r, uint64_t salt) {
        if (method == "stabilizer")
            return exact(r);
        return method == "syndrome" ? syndrome(r) : sampled(r, salt);
    };
    row["method"] = method;
    if (as_cmi) {
        row["quantity"] = "cmi";
        row["partition"] = part->scheme;
        double ab = S(part->AB(), 0), bc = S(part->BC(), 1), b = S(part->B, 2), abc = S(part->ABC(), 3);
        row["S_AB"] = ab;
        row["S_BC"] = bc;
        row["S_B"] = b;
        row["S_ABC"] = abc;
        row["cmi"] = ab + bc - b - abc;
    } else {
        row["quantity"] = "entropy";
        row["region"] = region_name;
        row["region_size"] = region.size();
        row["entropy"] = S(region, 0);
    }
    if (method == "monte-carlo")
        row["mc_samples"] = opt.mc_samples;
    if (method == "syndrome" && noise.px > 0 && noise.pz > 0 && noise.pzx == 0) {
        // X and Z noise decouple: f(px,pz) + f(0,0) - f(0,pz) - f(px,0) vanishes
        auto value = [&](double px, double pz) {
            json c = cfg;
            c["noise"] = {{"px", px}, {"pz", pz}};
            return eval_entropy(c, opt, as_cmi)[0][as_cmi ? "cmi" : "entropy"].get<double>();
        };
        row["decoupling_residual"] = row[as_cmi ? "cmi" : "entropy"].get<double>() + value(0, 0) - value(0, noise.pz) - value(noise.px, 0);
    }
    return {row};
}

std::optional<double> cut_formula(const std::string &model, int cut, int L) {
    if (model != "zx-dephased-max" && model != "honeycomb-flux")
        return std::nullopt;
    if (cut == 1)
        return L - 1;
    return L % 2 == 0 ? L / 2.0 - 1 : (L - 1) / 2.0;
}

std::vector<json> eval_negativity(const json &cfg, const RunOptions &opt) {
    Lattice lat = build_lattice(cfg);
    std::string model = str(cfg, "model", "", "zx-dephased-max");
    json base = lattice_fields(lat);
    base["quantity"] = "negativity";
    base["model"] = model;
    if (model == "cz-mms") {
        std::string name;
        std::optional<Partition> part;
        if (cfg.contains("partition"))
            part = resolve_partition(cfg, lat, "levin-wen");
        QubitSet region = resolve_region(cfg, lat, part ? &*part : nullptr, "A", name);
        double v = wrap("lattice", [&] { return mms_cz_negativity(lat, region, opt.budget_qubits); });
        base["region"] = name;
        base["region_size"] = region.size();
        base["negativity"] = v;
        base["method"] = "bitstring enumeration";
        return {base};
    }
    Noise noise = parse_noise(cfg);
    if (!noise.endpoint())
        throw ConfigError("noise", "negativity is computed exactly only at p in {0, 1/2}");
    add_noise_fields(base, noise);
    auto s = strong_group_state(wrap("model", [&] { return model_state(model, lat); }), lat, noise);
    bool spectrum = cfg.value("spectrum", false);

    std::vector<std::pair<json, QubitSet>> cuts;
    if (cfg.contains("cuts")) {
        if (!cfg["cuts"].is_array() || cfg["cuts"].empty())
            throw ConfigError("cuts", "expected a nonempty list of cut kinds (1 or 2)");
        const json &p = section(cfg, "partition");
        Parameters params;
        if (p.contains("parameters"))
            for (auto &[k, v] : p["parameters"].items())
                params[k] = v.get<double>();
        for (auto &c : cfg["cuts"]) {
            if (!c.is_number_integer() || (c.get<int>() != 1 && c.get<int>() != 2))
                throw ConfigError("cuts", "cut kinds are 1 and 2");
            int which = c.get<int>();
            auto part = wrap("cuts", [&] {
                return partition(lat, which == 1 ? "cylinder-cut-1" : "cylinder-cut-2", params);
            });
            cuts.push_back({json{{"cut", which}}, part.A});
        }
    } else {
        auto part = resolve_partition(cfg, lat, "cylinder-cut-1");
        std::string name;
        QubitSet region = resolve_region(cfg, lat, &part, "A", name);
        cuts.push_back({json{{"partition", part.scheme}, {"region", name}}, region});
    }
    std::vector<json> rows;
    for (auto &[tag, region] : cuts) {
        json row = base;
        row.update(tag);
        auto rep = stabilizer_negativity(s, region, lat.Lx());
        row["cut_length"] = lat.Lx();
        row["N"] = rep.N;
        row["rank"] = rep.rank;
        row["EN"] = rep.EN;
        if (spectrum) {
            auto sp = negativity_spectrum_oracle(s, region, 20);
            row["spectrum_trace_norm"] = sp.trace_norm;
            row["spectrum_EN"] = sp.EN;
        }
        if (tag.contains("cut") && lat.boundary() == Boundary::cylinder && !noise.any()) {
            if (auto e = cut_formula(model, tag["cut"].get<int>(), lat.Lx())) {
                row["expected_EN"] = *e;
                row["expected_source"] = tag["cut"].get<int>() == 1 ? "closed form L - 1"
                                                                     : "closed form L/2 - 1 (even L), (L-1)/2 (odd L)";
            }
        }
        rows.push_back(row);
    }
    return rows;
}

std::vector<json> eval_braiding(const json &cfg) {
    Lattice lat = build_lattice(cfg);
    std::string dil = str(cfg, "dilation", "", "");
    json base = lattice_fields(lat);
    base["quantity"] = "braiding-table";
    base["dilation"] = dil.empty() ? "none" : dil;
    std::vector<json> rows;
    if (dil.empty()) {
        auto t = wrap("lattice", [&] { return braiding_table(lat); });
        for (size_t i = 0; i < 3; i++) {
            json row = base;
            row["anyon"] = to_string(all_anyons[i]);
            for (size_t j = 0; j < 3; j++)
                row["S_" + to_string(all_anyons[j])] = t.S[i][j];
            row["theta"] = phase_str(t.theta[i]);
            rows.push_back(row);
        }
        return rows;
    }
    auto d = wrap("dilation", [&] { return dephasing_dilation(lat, dil); });
    for (Anyon a : all_anyons) {
        json row = base;
        row["anyon"] = to_string(a);
        for (Anyon b : all_anyons) {
            auto cp = wrap("lattice", [&] { return crossing_pair(lat, a == Anyon::m, b == Anyon::m); });
            auto wa = string_operator(a, cp.a, lat), wb = string_operator(b, cp.b, lat);
            QubitSet region = d.light_cone(lat.disc(cp.crossing, 3));
            row["S_" + to_string(b)] = braiding_phase(pullback(wa.op, d), pullback(wb.op, d), region);
        }
        auto h = hopping_operators(a, lat);
        row["theta"] = phase_str(hopping_phase(pullback(h.pq, d), pullback(h.pr, d), pullback(h.sp, d)));
        rows.push_back(row);
    }
    return rows;
}

std::vector<json> eval_memory(const json &cfg) {
    Lattice lat = build_lattice(cfg);
    Noise noise = parse_noise(cfg);
    auto s = strong_group_state(clean_state(cfg, lat), lat, noise);
    auto rep = wrap("lattice", [&] { return classify_memory(s, lat); });
    json row = lattice_fields(lat);
    row["quantity"] = "memory-class";
    row["model"] = str(cfg, "model", "", "toric-code");
    add_noise_fields(row, noise);
    row["memory"] = rep.memory.str();
    row["basis"] = "exact Pauli strong group";
    for (auto &l : rep.loops)
        row[to_string(l.anyon) + "_" + l.direction] = l.status.str() + (l.effective_strong ? "*" : "");
    for (size_t i = 0; i < 3; i++)
        row["contractible_" + to_string(all_anyons[i])] = rep.contractible[i].str();
    return {row};
}

std::vector<json> eval_witness(const json &cfg) {
    Lattice lat = build_lattice(cfg);
    Noise noise = parse_noise(cfg);
    if (!noise.endpoint())
        throw ConfigError("noise", "the witness check needs a stabilizer state (p in {0, 1/2})");
    std::string model = str(cfg, "model", "", "loop-soup");
    auto s = strong_group_state(clean_state(cfg, lat), lat, noise);
    auto part = resolve_partition(cfg, lat, "levin-wen");
    if (part.scheme != "levin-wen")
        throw ConfigError("partition.scheme", "the witness check uses a levin-wen partition");
    Parameters params;
    const json &p = section(cfg, "partition");
    if (p.contains("parameters"))
        for (auto &[k, v] : p["parameters"].items())
            params[k] = v.get<double>();
    Anyon loop = wrap("loop", [&] { return parse_anyon(str(cfg, "loop", "", model == "zx-dephased-max" ? "f" : "m")); });
    auto w = wrap("loop", [&] { return witness_pair(loop, lat, params); });
    auto r = wrap("partition", [&] { return tee_witness_check(s, w.loop, w.string, part, lat); });
    json row = lattice_fields(lat);
    row["quantity"] = "tee-witness";
    row["model"] = model;
    add_noise_fields(row, noise);
    row["loop"] = to_string(loop);
    row["loop_status"] = r.loop_status.str();
    row["orthogonal"] = r.orthogonal;
    row["indistinguishable"] = r.indistinguishable;
    row["homentropic"] = r.homentropic;
    row["charge"] = phase_str(r.charge);
    row["braiding"] = r.braiding;
    row["cmi"] = cmi(s, part);
    return {row};
}

std::vector<json> eval_roof(const json &cfg, const RunOptions &opt, std::vector<RoofTraceEntry> *trace) {
    const json &r = section(cfg, "roof");
    check_keys(r, "roof",
               {"state", "p", "generators", "mode", "members", "groups", "restarts", "max_iterations", "tolerance"});
    std::string state = str(r, "state", "roof.", "ghz-mixture");
    std::string mode_s = str(r, "mode", "roof.", "pure");
    if (mode_s != "pure" && mode_s != "mixed")
        throw ConfigError("roof.mode", "expected pure or mixed");
    RoofBudget b;
    b.members = integer(r, "members", "roof.", 0);
    b.groups = integer(r, "groups", "roof.", 0);
    b.restarts = integer(r, "restarts", "roof.", 16);
    b.max_iterations = integer(r, "max_iterations", "roof.", 4000);
    b.tolerance = num(r, "tolerance", "roof.", 1e-6);
    b.seed = opt.seed;
    b.trace = trace != nullptr;
    json row;
    row["quantity"] = "convex-roof";
    row["state"] = state;
    row["mode"] = mode_s;
    DenseState rho;
    Partition part;
    if (state == "ghz-mixture") {
        double p = num(r, "p", "roof.", 0.1);
        rho = wrap("roof.p", [&] { return ghz_mixture(p); });
        part.A = {0};
        part.B = {1};
        part.C = {2};
        row["p"] = p;
        if (mode_s == "pure" && p > 0 && p < 1) {
            row["expected"] = ghz_roof_closed_form(p);
            row["expected_source"] = "closed form h((1 + 2 sqrt(p(1-p)))/2)";
        }
    } else if (state == "stabilizer") {
        if (!r.contains("generators") || !r["generators"].is_array())
            throw ConfigError("roof.generators", "expected a list of Pauli strings");
        auto s = wrap("roof.generators", [&] { return canonicalize(r["generators"].get<std::vector<std::string>>()); });
        rho = wrap("roof.generators", [&] { return densify(s, 10); });
        part = explicit_partition(section(cfg, "partition"), s.n());
    } else {
        throw ConfigError("roof.state", "expected ghz-mixture or stabilizer");
    }
    auto res = wrap("roof", [&] {
        return convex_roof_minimize(rho, part, mode_s == "pure" ? RoofMode::pure : RoofMode::mixed, b);
    });
    row["value"] = res.value;
    row["cmi"] = cmi_dense(rho, part);
    row["restarts"] = b.restarts;
    row["seed"] = opt.seed;
    if (trace)
        *trace = std::move(res.trace);
    return {row};
}

std::vector<json> evaluate(const json &cfg, const RunOptions &opt, std::vector<RoofTraceEntry> *trace) {
    check_keys(cfg, "", {"quantity", "model", "lattice", "noise", "partition", "region", "cuts", "spectrum",
                         "dilation", "loop", "roof"});
    std::string q = str(cfg, "quantity", "", "");
    if (q == "entropy")
        return eval_entropy(cfg, opt, false);
    if (q == "cmi")
        return eval_entropy(cfg, opt, true);
    if (q == "negativity")
        return eval_negativity(cfg, opt);
    if (q == "braiding-table")
        return eval_braiding(cfg);
    if (q == "memory-class")
        return eval_memory(cfg);
    if (q == "tee-witness")
        return eval_witness(cfg);
    if (q == "convex-roof")
        return eval_roof(cfg, opt, trace);
    throw ConfigError("quantity", q.empty() ? "missing" : "unknown quantity '" + q + "'");
}

std::vector<json> sweep_values(const std::string &key, const json &spec) {
    std::string field = "sweep." + key;
    std::vector<json> out;
    if (spec.is_array()) {
        out.assign(spec.begin(), spec.end());
    } else if (spec.is_object()) {
        check_keys(spec, field, {"from", "to", "step"});
        double from = num(spec, "from", field + ".", NAN), to = num(spec, "to", field + ".", NAN),
               step = num(spec, "step", field + ".", 1);
        if (std::isnan(from) || std::isnan(to))
            throw ConfigError(field, "a range needs from and to");
        if (!(step > 0))
            throw ConfigError(field + ".step", "must be positive");
        if (to >= from) {
            long count = static_cast<long>(std::floor((to - from) / step + 1e-9)) + 1;
            bool ints = from == std::floor(from) && step == std::floor(step);
            for (long i = 0; i < count; i++) {
                double v = from + i * step;
                v = std::round(v * 1e12) / 1e12;
                out.push_back(ints ? json(static_cast<long>(v)) : json(v));
            }
        }
    } else {
        throw ConfigError(field, "expected a list or {from, to, step}");
    }
    if (out.empty())
        throw ConfigError(field, "empty range");
    for (auto &v : out)
        if (!v.is_number())
            throw ConfigError(field, "sweep values must be numbers");
    return out;
}

void apply_sweep(json &cfg, const std::string &key, const json &v) {
    auto obj = [&](const char *k) -> json & {
        if (!cfg.contains(k))
            cfg[k] = json::object();
        return cfg[k];
    };
    if (key == "L") {
        obj("lattice")["Lx"] = v;
        obj("lattice")["Ly"] = v;
    } else if (key == "Lx" || key == "Ly") {
        obj("lattice")[key] = v;
    } else if (key == "px" || key == "pz" || key == "pzx") {
        obj("noise")[key] = v;
    } else if (key == "p") {
        obj("roof")["p"] = v;
    } else if (key == "row" || key == "inner" || key == "outer" || key == "gap" || key == "width" || key == "cx" ||
               key == "cy") {
        json &p = obj("partition");
        if (!p.contains("parameters"))
            p["parameters"] = json::object();
        p["parameters"][key] = v;
    } else {
        throw ConfigError("sweep." + key, "unknown sweep parameter");
    }
}

std::string csv_cell(const json &v) {
    if (v.is_null())
        return "";
    if (v.is_string()) {
        std::string s = v.get<std::string>();
        if (s.find_first_of(",\"\n") == std::string::npos)
            return s;
        std::string q = "\"";
        for (char c : s)
            q += c == '"' ? std::string("\"\"") : std::string(1, c);
        return q + "\"";
    }
    return v.dump();
}

}  // namespace

std::vector<json> expand_sweep(const json &config) {
    if (!config.is_object())
        throw ConfigError("", "the config must be a JSON object");
    json base = config;
    base.erase("sweep");
    if (!config.contains("sweep"))
        return {base};
    const json &sw = config["sweep"];
    if (!sw.is_object() || sw.empty())
        throw ConfigError("sweep", "expected an object with one or two parameters");
    if (sw.size() > 2)
        throw ConfigError("sweep", "at most two swept parameters are supported");
    std::vector<std::pair<std::string, std::vector<json>>> axes;
    for (auto &[k, v] : sw.items())
        axes.push_back({k, sweep_values(k, v)});
    std::vector<json> points;
    std::vector<size_t> idx(axes.size(), 0);
    while (true) {
        json p = base;
        for (size_t a = 0; a < axes.size(); a++)
            apply_sweep(p, axes[a].first, axes[a].second[idx[a]]);
        points.push_back(std::move(p));
        size_t a = axes.size();
        while (a > 0) {
            a--;
            if (++idx[a] < axes[a].second.size())
                break;
            idx[a] = 0;
            if (a == 0)
                return points;
        }
        if (axes.empty())
            return points;
    }
}

json run_experiment(const json &config, const RunOptions &opt) {
    auto points = expand_sweep(config);
    std::vector<std::vector<json>> results(points.size());
    std::vector<std::vector<RoofTraceEntry>> traces(points.size());
    std::vector<std::exception_ptr> errors(points.size());
    bool want_trace = !opt.trace_path.empty();
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t i = next++; i < points.size(); i = next++) {
            try {
                results[i] = evaluate(points[i], opt, want_trace ? &traces[i] : nullptr);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    size_t nthreads = std::min<size_t>(points.size(), std::max(1u, std::thread::hardware_concurrency()));
    std::vector<std::thread> pool;
    for (size_t t = 1; t < nthreads; t++)
        pool.emplace_back(worker);
    worker();
    for (auto &t : pool)
        t.join();
    for (auto &e : errors)
        if (e)
            std::rethrow_exception(e);

    json doc;
    doc["version"] = MIXTOP_VERSION;
    doc["quantity"] = config.value("quantity", "");
    doc["config"] = config;
    doc["options"] = {{"seed", opt.seed}, {"budget_qubits", opt.budget_qubits}, {"mc_samples", opt.mc_samples}};
    json rows = json::array();
    for (size_t i = 0; i < results.size(); i++)
        for (auto &r : results[i]) {
            json row = r;
            row["point"] = i;
            rows.push_back(row);
        }

    // linear fit of EN against the cut length, per cut kind
    json fits = json::array();
    if (doc["quantity"] == "negativity") {
        std::map<std::string, std::vector<size_t>> groups;
        for (size_t i = 0; i < rows.size(); i++)
            if (rows[i].contains("EN"))
                groups[rows[i].value("model", "") + "/" + (rows[i].contains("cut") ? rows[i]["cut"].dump() : "-")]
                    .push_back(i);
        for (auto &[key, ids] : groups) {
            std::vector<double> x, y;
            for (size_t i : ids) {
                x.push_back(rows[i]["cut_length"].get<double>());
                y.push_back(rows[i]["EN"].get<double>());
            }
            if (std::set<double>(x.begin(), x.end()).size() < 2)
                continue;
            auto f = linear_fit(x, y);
            fits.push_back({{"group", key}, {"slope", f.slope}, {"intercept", f.intercept}});
            for (size_t i : ids) {
                rows[i]["fit_slope"] = f.slope;
                rows[i]["fit_intercept"] = f.intercept;
            }
        }
    }
    doc["rows"] = rows;
    doc["fits"] = fits;

    if (want_trace) {
        std::ofstream out(opt.trace_path);
        if (!out)
            throw std::runtime_error("cannot write trace file " + opt.trace_path);
        for (size_t i = 0; i < traces.size(); i++)
            for (auto &t : traces[i])
                out << json{{"point", i}, {"restart", t.restart}, {"iteration", t.iteration}, {"value", t.value}}.dump()
                    << "\n";
    }
    return doc;
}

std::string to_csv(const json &doc) {
    std::vector<std::string> cols;
    for (auto &r : doc.at("rows"))
        for (auto &[k, v] : r.items())
            if (std::find(cols.begin(), cols.end(), k) == cols.end())
                cols.push_back(k);
    std::ostringstream out;
    for (size_t i = 0; i < cols.size(); i++)
        out << (i ? "," : "") << cols[i];
    out << "\n";
    for (auto &r : doc.at("rows")) {
        for (size_t i = 0; i < cols.size(); i++)
            out << (i ? "," : "") << (r.contains(cols[i]) ? csv_cell(r[cols[i]]) : "");
        out << "\n";
    }
    return out.str();
}

}  // namespace mixtop
