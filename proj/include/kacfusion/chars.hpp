// Finite-dimensional representation combinatorics for the underlying simple
// algebra: root data, Weyl group enumeration, Freudenthal weight multiplicities,
// Racah-Speiser tensor decomposition, and evaluation of finite characters at
// rational torus points (the only place complex arithmetic enters).

#pragma once

#include "kacfusion/weights.hpp"
#include "kacfusion/weyl.hpp"

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>

namespace kacfusion {

struct RootDatum {
    std::vector<FiniteWeight> positive_roots; // label coordinates
    std::vector<Rat> norms;                   // (alpha, alpha)
    int count = 0;                            // |Delta_+|
};

inline const RootDatum& root_datum(const AffineAlgebraData& data) {
    static std::map<AffineType, RootDatum> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(data.atype);
    if (it != cache.end()) return it->second;
    RootDatum rd;
    for (const auto& beta : positive_roots_of(data.finite_cartan)) {
        RatVec lab(data.rank, Rat(0));
        for (int i = 0; i < data.rank; ++i)
            for (int j = 0; j < data.rank; ++j) lab[i] += Rat(data.finite_cartan[i][j] * beta[j]);
        FiniteWeight w{lab};
        rd.norms.push_back(data.norm2(w));
        rd.positive_roots.push_back(std::move(w));
    }
    rd.count = static_cast<int>(rd.positive_roots.size());
    return cache.emplace(data.atype, std::move(rd)).first->second;
}

struct WeylGroup {
    std::vector<IntMat> elements; // act on label column vectors
    std::vector<int> signs;
    size_t size() const { return elements.size(); }
};

inline IntVec apply_int(const IntMat& m, const IntVec& v) {
    IntVec out(m.size(), 0);
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
    return out;
}

inline const WeylGroup& weyl_group(const AffineAlgebraData& data) {
    static std::map<AffineType, WeylGroup> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(data.atype);
    if (it != cache.end()) return it->second;

    const int l = data.rank;
    std::vector<IntMat> gens;
    for (int i = 0; i < l; ++i) {
        IntMat m(l, IntVec(l, 0));
        for (int j = 0; j < l; ++j) {
            m[j][j] = 1;
            m[j][i] -= data.finite_cartan[j][i];
        }
        gens.push_back(std::move(m));
    }
    WeylGroup w;
    IntVec rho(l, 1);
    std::map<IntVec, size_t> seen;
    IntMat id(l, IntVec(l, 0));
    for (int i = 0; i < l; ++i) id[i][i] = 1;
    w.elements.push_back(id);
    w.signs.push_back(1);
    seen[rho] = 0;
    constexpr size_t kWeylCap = 2000000; // numeric S-matrix paths are desk scale
    for (size_t at = 0; at < w.elements.size(); ++at) {
        IntMat cur = w.elements[at];
        int sign = w.signs[at];
        for (const auto& g : gens) {
            IntMat nxt(l, IntVec(l, 0));
            for (int i = 0; i < l; ++i)
                for (int j = 0; j < l; ++j)
                    for (int k = 0; k < l; ++k) nxt[i][j] += g[i][k] * cur[k][j];
            IntVec key = apply_int(nxt, rho);
            if (!seen.count(key)) {
                seen[key] = w.elements.size();
                w.elements.push_back(std::move(nxt));
                w.signs.push_back(-sign);
                if (w.elements.size() > kWeylCap)
                    throw Error("weyl_group: order exceeds cap for " + to_string(data.atype));
            }
        }
    }
    return cache.emplace(data.atype, std::move(w)).first->second;
}

// Weyl dimension formula.
inline long long weyl_dim(const AffineAlgebraData& data, const FiniteWeight& hw) {
    const auto& rd = root_datum(data);
    FiniteWeight rho = rho_weight(data.rank);
    FiniteWeight shifted = hw + rho;
    Rat num(1), den(1);
    for (const auto& alpha : rd.positive_roots) {
        num *= data.inner(shifted, alpha);
        den *= data.inner(rho, alpha);
    }
    Rat d = num / den;
    if (!rat_is_integer(d)) throw Error("weyl_dim: non-integer dimension");
    return d.numerator();
}

// ---------------------------------------------------------------------------
// weight systems

struct WeightSystem {
    FiniteWeight highest;
    std::vector<std::pair<FiniteWeight, long long>> dominant_mults;
    long long dim = 0;
};

namespace detail {

inline std::string cache_file_name(const AffineAlgebraData& data, const FiniteWeight& hw) {
    std::string name = "ws_" + to_string(data.atype);
    for (const auto& x : hw.labels) name += "_" + std::to_string(x.numerator());
    return name + ".json";
}

inline bool load_cached_system(const AffineAlgebraData& data, const FiniteWeight& hw, WeightSystem& ws) {
    const char* dir = std::getenv("KACFUSION_CACHE_DIR");
    if (!dir) return false;
    std::ifstream in(std::filesystem::path(dir) / cache_file_name(data, hw));
    if (!in) return false;
    try {
        nlohmann::json j;
        in >> j;
        ws.highest = hw;
        ws.dim = j.at("dim").get<long long>();
        for (const auto& entry : j.at("mults")) {
            RatVec lab;
            for (const auto& x : entry.at("labels")) lab.push_back(Rat(x.get<long long>()));
            ws.dominant_mults.emplace_back(FiniteWeight{lab}, entry.at("mult").get<long long>());
        }
        return true;
    } catch (const std::exception&) {
        return false;
    }
}

inline void store_cached_system(const AffineAlgebraData& data, const WeightSystem& ws) {
    const char* dir = std::getenv("KACFUSION_CACHE_DIR");
    if (!dir) return;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    nlohmann::json j;
    j["dim"] = ws.dim;
    j["mults"] = nlohmann::json::array();
    for (const auto& [w, m] : ws.dominant_mults) {
        nlohmann::json e;
        for (const auto& x : w.labels) e["labels"].push_back(x.numerator());
        e["mult"] = m;
        j["mults"].push_back(e);
    }
    std::ofstream out(std::filesystem::path(dir) / cache_file_name(data, ws.highest));
    out << j.dump();
}

} // namespace detail

// All weights of the irreducible module with highest weight hw, via the
// Freudenthal recursion over dominant weights.
inline const WeightSystem& weight_system(const AffineAlgebraData& data, const FiniteWeight& hw) {
    if (!hw.is_integral()) throw NotIntegral("weight_system: highest weight must be integral");
    if (!hw.is_dominant()) throw NotDominant("weight_system: highest weight must be dominant");

    static std::map<std::pair<AffineType, RatVec>, WeightSystem> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_pair(data.atype, hw.labels);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    WeightSystem ws;
    if (detail::load_cached_system(data, hw, ws))
        return cache.emplace(key, std::move(ws)).first->second;

    const auto& rd = root_datum(data);
    const FiniteWeight rho = rho_weight(data.rank);

    // dominant weights of the module: saturate downward by positive roots
    std::vector<FiniteWeight> dominants{hw};
    std::map<RatVec, size_t> index{{hw.labels, 0}};
    for (size_t at = 0; at < dominants.size(); ++at) {
        FiniteWeight cur = dominants[at];
        for (const auto& alpha : rd.positive_roots) {
            FiniteWeight down = cur - alpha;
            if (!down.is_dominant() || index.count(down.labels)) continue;
            index[down.labels] = dominants.size();
            dominants.push_back(down);
        }
    }
    // process by increasing height of hw - mu: every weight above mu is done
    // before mu itself enters the recursion
    RatMat fin(data.rank, RatVec(data.rank));
    for (int i = 0; i < data.rank; ++i)
        for (int j = 0; j < data.rank; ++j) fin[i][j] = Rat(data.finite_cartan[i][j]);
    RatMat invfin = rat_inverse(fin);
    auto deficit = [&](const FiniteWeight& mu) {
        RatVec coords = mat_vec(invfin, (hw - mu).labels);
        Rat s(0);
        for (const auto& c : coords) s += c;
        return s;
    };
    std::sort(dominants.begin(), dominants.end(), [&](const FiniteWeight& a, const FiniteWeight& b) {
        Rat da = deficit(a), db = deficit(b);
        if (da != db) return da < db;
        return a < b;
    });
    index.clear();
    for (size_t i = 0; i < dominants.size(); ++i) index[dominants[i].labels] = i;

    std::vector<long long> mults(dominants.size(), 0);
    auto mult_of = [&](const FiniteWeight& w) -> long long {
        SignedWeight dom = to_dominant(data, w);
        auto f = index.find(dom.weight.labels);
        return f == index.end() ? 0 : mults[f->second];
    };
    const Rat top_norm = data.norm2(hw + rho);
    mults[0] = 1;
    for (size_t i = 1; i < dominants.size(); ++i) {
        const FiniteWeight& mu = dominants[i];
        Rat num(0);
        for (size_t a = 0; a < rd.positive_roots.size(); ++a) {
            const FiniteWeight& alpha = rd.positive_roots[a];
            FiniteWeight up = mu;
            for (long long j = 1;; ++j) {
                up = up + alpha;
                long long m = mult_of(up);
                if (m == 0) break;
                num += Rat(2 * m) * data.inner(up, alpha);
            }
        }
        Rat den = top_norm - data.norm2(mu + rho);
        if (den == Rat(0)) throw Error("weight_system: Freudenthal denominator vanished");
        Rat m = num / den;
        if (!rat_is_integer(m) || m < Rat(0)) throw Error("weight_system: bad multiplicity");
        mults[i] = m.numerator();
    }

    ws.highest = hw;
    for (size_t i = 0; i < dominants.size(); ++i) ws.dominant_mults.emplace_back(dominants[i], mults[i]);
    ws.dim = weyl_dim(data, hw);
    detail::store_cached_system(data, ws);
    return cache.emplace(key, std::move(ws)).first->second;
}

// Weyl orbit of a dominant weight.
inline std::vector<FiniteWeight> weyl_orbit(const AffineAlgebraData& data, const FiniteWeight& w) {
    std::vector<FiniteWeight> orbit{w};
    std::map<RatVec, bool> seen{{w.labels, true}};
    for (size_t at = 0; at < orbit.size(); ++at) {
        FiniteWeight cur = orbit[at];
        for (int i = 1; i <= data.rank; ++i) {
            FiniteWeight nxt = reflect(data, i, cur);
            if (!seen.count(nxt.labels)) {
                seen[nxt.labels] = true;
                orbit.push_back(std::move(nxt));
            }
        }
    }
    return orbit;
}

// Full weight multiset (orbit expansion of the dominant slice).
inline std::vector<std::pair<FiniteWeight, long long>> full_weights(const AffineAlgebraData& data,
                                                                    const WeightSystem& ws) {
    std::vector<std::pair<FiniteWeight, long long>> out;
    for (const auto& [dom, mult] : ws.dominant_mults) {
        if (mult == 0) continue;
        for (auto& w : weyl_orbit(data, dom)) out.emplace_back(std::move(w), mult);
    }
    return out;
}

// ---------------------------------------------------------------------------
// tensor decomposition (Racah-Speiser)

using Decomposition = std::map<FiniteWeight, long long>;

inline Decomposition tensor_decompose(const AffineAlgebraData& data, const FiniteWeight& lam,
                                      const FiniteWeight& mu) {
    if (!lam.is_dominant() || !mu.is_dominant()) throw NotDominant("tensor_decompose");
    if (!lam.is_integral() || !mu.is_integral()) throw NotIntegral("tensor_decompose");
    const FiniteWeight* big = &lam;
    const FiniteWeight* small = &mu;
    if (weyl_dim(data, *small) > weyl_dim(data, *big)) std::swap(big, small);

    const FiniteWeight rho = rho_weight(data.rank);
    Decomposition out;
    for (const auto& [phi, mult] : full_weights(data, weight_system(data, *small))) {
        SignedWeight dom = to_dominant(data, *big + phi + rho);
        if (dom.on_wall) continue;
        FiniteWeight nu = dom.weight - rho;
        out[nu] += dom.sign * mult;
    }
    for (auto it = out.begin(); it != out.end();) {
        if (it->second == 0) it = out.erase(it);
        else if (it->second < 0) throw Error("tensor_decompose: negative multiplicity");
        else ++it;
    }
    return out;
}

// ---------------------------------------------------------------------------
// numeric character evaluation

// chi_{lam}(exp(-2 pi i xi / m)) via the Weyl character formula; angles are
// reduced mod 1 in exact rationals before any trigonometric call.
inline Cplx char_eval(const AffineAlgebraData& data, const FiniteWeight& lam, const FiniteWeight& xi,
                      long long m) {
    if (!lam.is_integral()) throw NotIntegral("char_eval: weight must be integral");
    if (!lam.is_dominant()) throw NotDominant("char_eval: weight must be dominant");
    const auto& w = weyl_group(data);
    const FiniteWeight rho = rho_weight(data.rank);
    const RatVec gx = mat_vec(data.gram, xi.labels);

    auto alternant = [&](const FiniteWeight& shifted) {
        IntVec base(data.rank);
        for (int i = 0; i < data.rank; ++i) base[i] = shifted.labels[i].numerator();
        Cplx sum(0, 0);
        for (size_t e = 0; e < w.size(); ++e) {
            IntVec img = apply_int(w.elements[e], base);
            Rat phase(0);
            for (int i = 0; i < data.rank; ++i) phase += Rat(img[i]) * gx[i];
            sum += static_cast<double>(w.signs[e]) * unit_phase(-phase / Rat(m));
        }
        return sum;
    };
    Cplx den = alternant(rho);
    if (std::abs(den) < 1e-12) throw SingularPoint("char_eval: Weyl denominator vanishes");
    return alternant(lam + rho) / den;
}

} // namespace kacfusion
