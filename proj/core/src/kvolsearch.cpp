#include "flatcurve/kvolsearch.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>

#include "flatcurve/builders.hpp"
#include "flatcurve/parallel.hpp"
#include "flatcurve/segments.hpp"

namespace flatcurve {

namespace {

// Chain rotated so that its smallest entry comes first.
std::vector<int> rotate_min_first(std::vector<int> v) {
    std::rotate(v.begin(), std::min_element(v.begin(), v.end()), v.end());
    return v;
}

struct PreparedCurve {
    std::vector<std::pair<int, int>> parts;  // (unoriented representative, orientation)
    std::vector<std::tuple<int, double, double>> passes;  // (singularity, incoming ray, outgoing ray)
    double length = 0.0;
};

// Singular signs of two prepared curves; `degenerate` is set when rays coincide.
void singular_part(const TranslationSurface& s, const PreparedCurve& a, const PreparedCurve& b,
                   std::vector<int>& signs, bool& degenerate) {
    for (const auto& [za, ain, aout] : a.passes)
        for (const auto& [zb, bin, bout] : b.passes) {
            if (za != zb) continue;
            const SingularSign sg = singular_sign(s.singularities()[za].cone_angle, ain, aout, bin, bout);
            degenerate = degenerate || sg.degenerate;
            signs.push_back(sg.sign);
        }
}

CurveSummary summarize(const TranslationSurface& s, const std::vector<SaddleConnection>& scs, const CurveChain& c) {
    CurveSummary out;
    out.components = c.components;
    out.all_sides = true;
    const double l0 = s.l0();
    for (int i : c.components) {
        out.singularities.push_back(scs[i].start_sing);
        out.component_lengths.push_back(scs[i].length / l0);
        out.holonomies.push_back(scs[i].holonomy / l0);
        out.all_sides = out.all_sides && is_polygon_side(s, scs[i]);
    }
    out.length = c.length / l0;
    return out;
}

}  // namespace

bool is_polygon_side(const TranslationSurface& s, const SaddleConnection& sc) {
    if (sc.pieces.size() != 1) return false;
    const Piece& p = sc.pieces.front();
    if (p.from_vertex < 0 || p.to_vertex < 0) return false;
    const int k = s.vertex_count(p.polygon);
    const int step = ((p.to_vertex - p.from_vertex) % k + k) % k;
    return step == 1 || step == k - 1;
}

std::vector<CurveChain> enumerate_closed_curves(const std::vector<SaddleConnection>& scs, int max_components) {
    if (max_components < 1) throw InvalidArgument("max components must be at least 1");
    const std::vector<int> rev = reverse_index(scs);
    std::map<int, std::vector<int>> leaving;
    for (size_t i = 0; i < scs.size(); ++i) leaving[scs[i].start_sing].push_back(static_cast<int>(i));

    std::vector<CurveChain> out;
    std::vector<int> chain;
    std::vector<int> visited;  // singularities

    auto reversed_chain = [&](const std::vector<int>& c) {
        std::vector<int> r;
        for (auto it = c.rbegin(); it != c.rend(); ++it) r.push_back(rev[*it]);
        return rotate_min_first(r);
    };

    auto emit = [&]() {
        const auto& last = scs[chain.back()];
        const auto& first = scs[chain.front()];
        if (std::abs(last.end_angle - first.start_angle) < 1e-9) return;  // doubles back
        for (int c : chain)
            if (rev[c] < 0) return;
        // Rotations where the first element is not minimal are generated from the minimal start.
        const std::vector<int> r = reversed_chain(chain);
        if (r < chain) return;
        CurveChain cc;
        cc.components = chain;
        for (int c : chain) cc.length += scs[c].length;
        out.push_back(std::move(cc));
    };

    auto extend = [&](auto&& self, int head) -> void {
        const SaddleConnection& cur = scs[chain.back()];
        if (cur.end_sing == scs[head].start_sing) emit();
        if (static_cast<int>(chain.size()) == max_components) return;
        if (cur.end_sing == scs[head].start_sing) return;
        auto it = leaving.find(cur.end_sing);
        if (it == leaving.end()) return;
        for (int nx : it->second) {
            if (nx <= head) continue;
            const SaddleConnection& c = scs[nx];
            if (std::abs(cur.end_angle - c.start_angle) < 1e-9) continue;
            if (c.end_sing != scs[head].start_sing &&
                std::find(visited.begin(), visited.end(), c.end_sing) != visited.end())
                continue;
            chain.push_back(nx);
            visited.push_back(c.end_sing);
            self(self, head);
            chain.pop_back();
            visited.pop_back();
        }
    };

    for (size_t h = 0; h < scs.size(); ++h) {
        chain = {static_cast<int>(h)};
        visited = {scs[h].start_sing};
        if (scs[h].end_sing != scs[h].start_sing) visited.push_back(scs[h].end_sing);
        extend(extend, static_cast<int>(h));
    }
    std::sort(out.begin(), out.end(),
              [](const CurveChain& a, const CurveChain& b) { return a.components < b.components; });
    return out;
}

ClosedCurve to_closed_curve(const std::vector<SaddleConnection>& scs, const CurveChain& chain) {
    std::vector<SaddleConnection> comps;
    for (int i : chain.components) comps.push_back(scs.at(i));
    return make_closed_curve(std::move(comps));
}

KVolReport sup_ratio(const TranslationSurface& s, const SearchConfig& cfg) {
    if (!(cfg.lmax > 0)) throw InvalidArgument("lmax must be positive");
    const double l0 = s.l0();
    KVolReport rep;
    rep.lmax = cfg.lmax;
    rep.max_components = cfg.max_components > 0 ? cfg.max_components : static_cast<int>(s.singularities().size());
    rep.tolerance = cfg.tolerance;
    rep.area = s.area() / (l0 * l0);
    if (s.family().kind == "ngon") {
        const double n = s.family().n;
        rep.has_closed_forms = true;
        rep.closed_form_cot = n / (8.0 * std::tan(kPi / n));
        rep.closed_form_tan = n / 8.0 * std::tan(kPi / n);
    }

    EnumerationConfig ec;
    ec.lmax = cfg.lmax * l0 * (1 + 1e-12);
    ec.max_copies = cfg.max_copies;
    const std::vector<SaddleConnection> scs = enumerate_saddle_connections(s, ec);
    rep.saddle_connections = scs.size();
    const std::vector<int> rev = reverse_index(scs);
    const std::vector<CurveChain> chains = enumerate_closed_curves(scs, rep.max_components);
    rep.curves = chains.size();
    const long long nc = static_cast<long long>(chains.size());
    if (nc * (nc - 1) / 2 > cfg.max_pairs) throw ResourceError("pair budget exceeded");

    // Signed interior crossings between unoriented representatives.
    std::vector<int> reps;
    std::vector<int> rep_slot(scs.size(), -1);
    for (size_t i = 0; i < scs.size(); ++i) {
        const int r = std::min(static_cast<int>(i), rev[i]);
        if (rep_slot[r] < 0) {
            rep_slot[r] = static_cast<int>(reps.size());
            reps.push_back(r);
        }
        rep_slot[i] = rep_slot[r];
    }
    const size_t nr = reps.size();
    std::vector<int> table(nr * nr, 0);
    parallel_for(nr, [&](size_t i) {
        for (size_t j = 0; j < nr; ++j)
            if (i != j) table[i * nr + j] = transverse_crossings(s, scs[reps[i]], scs[reps[j]]).signed_sum();
    });

    std::vector<PreparedCurve> prepared(chains.size());
    for (size_t c = 0; c < chains.size(); ++c) {
        auto& pc = prepared[c];
        const auto& comps = chains[c].components;
        const size_t k = comps.size();
        for (size_t j = 0; j < k; ++j) {
            const int id = comps[j];
            pc.parts.emplace_back(rep_slot[id], id == std::min(id, rev[id]) ? 1 : -1);
            const auto& in = scs[comps[(j + k - 1) % k]];
            pc.passes.emplace_back(scs[id].start_sing, in.end_angle, scs[id].start_angle);
        }
        pc.length = chains[c].length;
    }

    struct Local {
        double best = -1.0;
        std::vector<PairRecord> near;
        long long evaluated = 0;
        long long excluded = 0;
        std::vector<std::pair<int, int>> excluded_log;
    };
    std::vector<Local> rows(chains.size());
    const double tol = cfg.tolerance;
    parallel_for(chains.size(), [&](size_t i) {
        Local& L = rows[i];
        const PreparedCurve& a = prepared[i];
        std::vector<int> signs;
        for (size_t j = i + 1; j < chains.size(); ++j) {
            const PreparedCurve& b = prepared[j];
            bool shared = false;
            for (const auto& pa : a.parts)
                for (const auto& pb : b.parts) shared = shared || pa.first == pb.first;
            signs.clear();
            bool degenerate = false;
            if (!shared) singular_part(s, a, b, signs, degenerate);
            if (shared || degenerate) {
                ++L.excluded;
                if (L.excluded_log.size() < cfg.exclusion_log_limit)
                    L.excluded_log.emplace_back(static_cast<int>(i), static_cast<int>(j));
                continue;
            }
            ++L.evaluated;
            int interior = 0;
            for (const auto& pa : a.parts)
                for (const auto& pb : b.parts) interior += pa.second * pb.second * table[pa.first * nr + pb.first];
            int total = interior;
            for (int sg : signs) total += sg;
            const double ratio = std::abs(total) * l0 * l0 / (a.length * b.length);
            if (ratio < L.best - tol) continue;
            if (ratio > L.best + tol) {
                L.best = ratio;
                std::erase_if(L.near, [&](const PairRecord& r) { return r.ratio < L.best - tol; });
            } else {
                L.best = std::max(L.best, ratio);
            }
            PairRecord r;
            r.curve_a = static_cast<int>(i);
            r.curve_b = static_cast<int>(j);
            r.algebraic = total;
            r.interior = interior;
            r.singular_signs = signs;
            r.ratio = ratio;
            L.near.push_back(std::move(r));
        }
    });

    double best = 0.0;
    for (const auto& L : rows) {
        best = std::max(best, L.best);
        rep.pairs_evaluated += L.evaluated;
        rep.pairs_excluded += L.excluded;
        for (const auto& e : L.excluded_log)
            if (rep.exclusion_log.size() < cfg.exclusion_log_limit) rep.exclusion_log.push_back(e);
    }
    for (auto& L : rows)
        for (auto& r : L.near)
            if (r.ratio >= best - tol) rep.achievers.push_back(std::move(r));
    // Rows are visited in order, so achievers are already sorted by (curve_a, curve_b).
    if (rep.achievers.empty()) return rep;
    rep.max_ratio = rep.achievers.front().ratio;
    for (const auto& r : rep.achievers) rep.max_ratio = std::max(rep.max_ratio, r.ratio);
    rep.witness = rep.achievers.front();

    // Independent recomputation from the curves themselves and a sampled recount of interior crossings.
    std::vector<char> ok(rep.achievers.size(), 0);
    parallel_for(rep.achievers.size(), [&](size_t k) {
        PairRecord& r = rep.achievers[k];
        const ClosedCurve ca = to_closed_curve(scs, chains[r.curve_a]);
        const ClosedCurve cb = to_closed_curve(scs, chains[r.curve_b]);
        const IntersectionReport ir = algebraic_intersection(s, ca, cb);
        int sampled = 0;
        for (const auto& x : ca.components)
            for (const auto& y : cb.components) sampled += sampled_crossing_count(s, x, y, cfg.validation_samples);
        const double ratio = std::abs(ir.algebraic) * l0 * l0 / (ca.length() * cb.length());
        r.validated = ir.algebraic == r.algebraic && static_cast<int>(ir.interior.size()) == sampled &&
                      std::abs(ratio - r.ratio) <= tol;
        ok[k] = r.validated;
    });
    rep.achievers_validated = std::all_of(ok.begin(), ok.end(), [](char c) { return c != 0; });
    rep.witness = rep.achievers.front();
    rep.witness_recomputed = rep.witness.validated;
    rep.witness_a = summarize(s, scs, chains[rep.witness.curve_a]);
    rep.witness_b = summarize(s, scs, chains[rep.witness.curve_b]);

    std::vector<int> ids;
    for (const auto& r : rep.achievers) {
        ids.push_back(r.curve_a);
        ids.push_back(r.curve_b);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    rep.achiever_curve_ids = ids;
    for (int id : ids) rep.achiever_curves.push_back(summarize(s, scs, chains[id]));
    rep.area_times_sup = rep.area * rep.max_ratio;
    return rep;
}

WitnessPair construct_witness_pair_bm(int m, int n) {
    const int d = std::gcd(m, n);
    if (d == 1) throw InvalidArgument("witness pair needs gcd(m, n) > 1; gcd is 1");
    if (d == n) throw InvalidArgument("witness pair is not available: gcd equals n");
    const TranslationSurface s = bouw_moller(m, n);
    const int first = s.polygon_index(0);
    const int last = s.polygon_index(m - 1);
    const int z1 = s.singularity_of({first, 0});
    const int z2 = s.singularity_of({first, 1});
    const double cone = s.singularities()[z1].cone_angle;

    // Sides leaving z1 towards z2, by polygon, keyed by their angle at z1.
    struct Ray {
        double angle;
        bool in_first;
        bool in_last;
        SaddleConnection sc;
    };
    std::vector<Ray> rays;
    auto add = [&](int polygon, SaddleConnection sc) {
        if (sc.start_sing != z1 || sc.end_sing != z2) return;
        for (auto& r : rays)
            if (std::abs(wrap(r.angle - sc.start_angle, cone)) < 1e-9 ||
                std::abs(wrap(r.angle - sc.start_angle, cone) - cone) < 1e-9) {
                r.in_first = r.in_first || polygon == first;
                r.in_last = r.in_last || polygon == last;
                return;
            }
        rays.push_back({sc.start_angle, polygon == first, polygon == last, std::move(sc)});
    };
    for (const FanEntry& f : s.singularities()[z1].fan) {
        const Corner c = f.corner;
        add(c.polygon, side_connection(s, c));
        add(c.polygon, reversed(s, side_connection(s, {c.polygon, c.vertex - 1 + s.vertex_count(c.polygon)})));
    }
    const SaddleConnection alpha1 = side_connection(s, {first, 0});
    const double a1 = alpha1.start_angle;
    std::sort(rays.begin(), rays.end(), [&](const Ray& x, const Ray& y) {
        return wrap(x.angle - a1, cone) < wrap(y.angle - a1, cone);
    });

    // Walk counter-clockwise from alpha1: beta1 (last polygon), alpha2 (first polygon), beta2 (last polygon).
    const SaddleConnection* picks[3] = {nullptr, nullptr, nullptr};
    int stage = 0;
    for (const auto& r : rays) {
        if (wrap(r.angle - a1, cone) < 1e-9) continue;
        const bool want_last = stage != 1;
        if ((want_last && r.in_last) || (!want_last && r.in_first)) {
            picks[stage++] = &r.sc;
            if (stage == 3) break;
        }
    }
    if (stage < 3) throw GeometryError("fan walk did not find the sides of the witness pair");

    WitnessPair w;
    w.alpha = make_closed_curve({alpha1, reversed(s, *picks[1])});
    w.beta = make_closed_curve({*picks[0], reversed(s, *picks[2])});
    w.intersection = algebraic_intersection(s, w.alpha, w.beta);
    const double l0 = s.l0();
    w.ratio = std::abs(w.intersection.algebraic) * l0 * l0 / (w.alpha.length() * w.beta.length());
    return w;
}

ConjectureReport explore_conjecture(int m, int n, const SearchConfig& cfg) {
    if (std::gcd(m, n) != n) throw InvalidArgument("conjecture exploration needs gcd(m, n) = n");
    ConjectureReport r;
    r.m = m;
    r.n = n;
    r.search = sup_ratio(bouw_moller(m, n), cfg);
    r.search.surface = "bm" + std::to_string(m) + "_" + std::to_string(n);
    r.equals_conjectured = std::abs(r.search.max_ratio - r.conjectured) <= cfg.tolerance;
    r.exceeds_conjectured = r.search.max_ratio > r.conjectured + cfg.tolerance;
    for (const auto& a : r.search.achievers) {
        if (std::abs(a.algebraic) != 1) continue;
        const auto& ids = r.search.achiever_curve_ids;
        const auto ia = std::lower_bound(ids.begin(), ids.end(), a.curve_a) - ids.begin();
        const auto ib = std::lower_bound(ids.begin(), ids.end(), a.curve_b) - ids.begin();
        if (r.search.achiever_curves[ia].all_sides && r.search.achiever_curves[ib].all_sides) {
            r.once_intersecting_side_witness = true;
            break;
        }
    }
    return r;
}

namespace {

// Edge of the polygon carrying a side connection.
EdgeRef side_edge(const TranslationSurface& s, const SaddleConnection& sc) {
    const Piece& p = sc.pieces.front();
    const int k = s.vertex_count(p.polygon);
    if ((p.from_vertex + 1) % k == p.to_vertex) return {p.polygon, p.from_vertex};
    return {p.polygon, p.to_vertex};
}

bool sides_adjacent(const TranslationSurface& s, const SaddleConnection& a, const SaddleConnection& b) {
    const EdgeRef ea = side_edge(s, a), eb = side_edge(s, b);
    const EdgeRef xs[2] = {ea, s.glued(ea)};
    const EdgeRef ys[2] = {eb, s.glued(eb)};
    for (const auto& x : xs)
        for (const auto& y : ys) {
            if (x.polygon != y.polygon) continue;
            const int k = s.vertex_count(x.polygon);
            const int d = ((x.edge - y.edge) % k + k) % k;
            if (d == 1 || d == k - 1) return true;
        }
    return false;
}

}  // namespace

std::vector<LemmaCheck> verify_case_lemmas(const TranslationSurface& s, double lmax) {
    if (s.family().kind != "ngon") throw InvalidArgument("case lemmas apply to regular n-gons");
    const NgonAnalyzer an(s);
    const int n = an.n();
    const std::vector<SaddleConnection> scs = enumerate_saddle_connections(s, lmax * s.l0() * (1 + 1e-12));
    const std::vector<int> rev = reverse_index(scs);

    struct Info {
        int type = 0;
        int pieces_n = 1;
        bool side = false;
        bool short_diag = false;
        std::string sigma1, sigma2;
    };
    std::vector<Info> info(scs.size());
    parallel_for(scs.size(), [&](size_t i) {
        const Subdivision sub = an.subdivide(scs[i]);
        Info& f = info[i];
        f.type = an.classify_type(scs[i], sub);
        f.pieces_n = sub.counts.n;
        f.side = an.is_side(scs[i]);
        f.short_diag = an.is_short_diagonal(scs[i]);
        if (sub.sector) {
            const auto& d = an.diagram(*sub.sector);
            f.sigma1 = d.sigma.at(0);
            f.sigma2 = d.sigma.at(1);
        }
    });

    // Unsigned crossing counts between unoriented representatives.
    std::vector<int> reps;
    for (size_t i = 0; i < scs.size(); ++i)
        if (static_cast<int>(i) <= rev[i]) reps.push_back(static_cast<int>(i));
    std::vector<int> slot(scs.size(), -1);
    for (size_t k = 0; k < reps.size(); ++k) slot[reps[k]] = slot[rev[reps[k]]] = static_cast<int>(k);
    const size_t nr = reps.size();
    std::vector<int> cross(nr * nr, 0);
    parallel_for(nr, [&](size_t i) {
        for (size_t j = 0; j < nr; ++j)
            if (i != j)
                cross[i * nr + j] =
                    static_cast<int>(transverse_crossings(s, scs[reps[i]], scs[reps[j]]).crossings.size());
    });
    auto meet = [&](int a, int b) { return cross[slot[a] * nr + slot[b]]; };

    const double short_len = 2 * std::cos(kPi / n);
    std::vector<LemmaCheck> checks(6);
    checks[0].name = "Ia";
    checks[1].name = "Ib";
    checks[2].name = "Ic";
    checks[3].name = "Id";
    checks[4].name = "IIa";
    checks[5].name = "IIb";
    for (auto& c : checks) c.worst_margin = 1e300;
    const double tol = 1e-9;
    auto record = [&](LemmaCheck& c, double value, double bound, bool strict, bool equality_allowed,
                      const std::string& what) {
        ++c.pairs;
        const double margin = bound - value;
        c.worst_margin = std::min(c.worst_margin, margin);
        const bool eq = std::abs(margin) <= tol;
        if (eq) ++c.equalities;
        if (margin < -tol || (eq && (strict || !equality_allowed))) {
            ++c.violations;
            if (c.findings.size() < 20) c.findings.push_back(what);
        }
    };

    // Case I: gamma = gamma1 (side) + gamma2, checked against every connection beta sharing no component.
    const std::vector<CurveChain> pairs = enumerate_closed_curves(scs, 2);
    for (const auto& ch : pairs) {
        if (ch.components.size() != 2) continue;
        for (int o = 0; o < 2; ++o) {
            const int g1 = ch.components[o], g2 = ch.components[1 - o];
            if (!info[g1].side) continue;
            if (o == 1 && info[g2].side) continue;  // two sides: handled once
            const int t2 = info[g2].type;
            const double lg = scs[g1].length + scs[g2].length;
            const std::string label1 = s.label(side_edge(s, scs[g1]));
            for (size_t k = 0; k < nr; ++k) {
                const int b = reps[k];
                if (slot[b] == slot[g1] || slot[b] == slot[g2]) continue;
                const int inter = meet(g1, b) + meet(g2, b);
                const double lb = scs[b].length;
                const std::string what = "gamma=" + std::to_string(g1) + "+" + std::to_string(g2) +
                                         " beta=" + std::to_string(b);
                if (t2 == 1) {
                    if (sides_adjacent(s, scs[g1], scs[g2])) continue;
                    const double v = (inter + 1) / (lg * lb);
                    record(checks[0], v, 0.5, false, info[b].side, what);
                } else if (t2 == 2) {
                    if (info[b].side || label1 == info[g2].sigma1 || label1 == info[g2].sigma2) continue;
                    const int sb = scs[b].closed() ? 1 : 2;
                    record(checks[1], (inter + sb) / (lg * lb), 0.5, true, false, what);
                } else if (t2 == 3) {
                    record(checks[2], (inter + 1) / (lg * lb), 0.5, true, false, what);
                } else {
                    if (info[b].side) continue;
                    record(checks[3], (inter + 1) / (lg * lb), 0.5, true, false, what);
                }
            }
        }
    }

    // Case II: two connections, neither a side.
    for (size_t i = 0; i < nr; ++i) {
        const int a = reps[i];
        if (info[a].side) continue;
        for (size_t j = i + 1; j < nr; ++j) {
            const int b = reps[j];
            if (info[b].side) continue;
            const double lab = scs[a].length * scs[b].length;
            const std::string what = "alpha=" + std::to_string(a) + " beta=" + std::to_string(b);
            if (info[a].short_diag && info[b].short_diag) {
                const bool share = scs[a].start_sing == scs[b].start_sing;
                const int bound_int = cross[i * nr + j] + (share ? 1 : 0);
                record(checks[4], bound_int / lab, 1.0 / (short_len * short_len), false, true, what);
            } else {
                record(checks[5], (cross[i * nr + j] + 1) / lab, 0.5, true, false, what);
            }
        }
    }
    for (auto& c : checks)
        if (c.pairs == 0) c.worst_margin = 0.0;
    return checks;
}

}  // namespace flatcurve
