#include "nullfront/completion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace nullfront::completion {

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int a) {
        while (parent[a] != a) {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        return a;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[b] = a;
    }
};

/// Sample index offset by d, honoring closed wrap-around; -1 when the index
/// falls off an open chain.
int step_index(const Patch& p, int i, int d) {
    const int n = p.size();
    int idx = i + d;
    if (p.closed()) return ((idx % n) + n) % n;
    return (idx >= 0 && idx < n) ? idx : -1;
}

/// Discrete open-set condition: walk up to k samples away from (i, j) on
/// index-paired neighbors and require the l values to stay within the band.
/// Running off an open chain clips the walk (germs only need the mutual
/// overlap to agree); a band violation inside the walk rejects the pair.
bool neighborhoods_agree(const Patch& u, int i, const Patch& v, int j, int k, double band) {
    // orientation of the index pairing, scored on the first available
    // neighbor pair of each candidate direction
    const auto score = [&](int dir) {
        const int iu = step_index(u, i, 1), im = step_index(u, i, -1);
        const int jf = step_index(v, j, dir), jb = step_index(v, j, -dir);
        if (iu >= 0 && jf >= 0) return (u.l(iu) - v.l(jf)).norm();
        if (im >= 0 && jb >= 0) return (u.l(im) - v.l(jb)).norm();
        return std::numeric_limits<double>::infinity();
    };
    const int dir = score(1) <= score(-1) ? 1 : -1;
    for (int side = -1; side <= 1; side += 2)
        for (int d = 1; d <= k; ++d) {
            const int iu = step_index(u, i, side * d);
            const int jv = step_index(v, j, dir * side * d);
            if (iu < 0 || jv < 0) break;
            if ((u.l(iu) - v.l(jv)).norm() > band) return false;
        }
    return true;
}

}  // namespace

Patch::Patch(Eigen::Matrix2Xd g, Eigen::Matrix2Xd nu, bool closed, double epsilon,
             double t_center)
    : g_(std::move(g)), nu_(std::move(nu)), closed_(closed), epsilon_(epsilon),
      t_center_(t_center) {
    if (g_.cols() != nu_.cols() || g_.cols() < 2)
        throw std::invalid_argument("patch needs matching g/nu samples (>= 2)");
    if (!(epsilon_ > 0.0)) throw std::invalid_argument("epsilon_U must be positive");
    double scale = 1.0;
    for (int i = 0; i < size(); ++i) {
        if (std::abs(nu_.col(i).norm() - 1.0) > 1e-8)
            throw std::invalid_argument("patch normals must be unit vectors");
        scale = std::max(scale, g_.col(i).cwiseAbs().maxCoeff());
    }
    std::vector<double> steps;
    for (int i = 0; i + 1 < size(); ++i) steps.push_back((l(i + 1) - l(i)).norm());
    if (closed_) steps.push_back((l(0) - l(size() - 1)).norm());
    std::nth_element(steps.begin(), steps.begin() + steps.size() / 2, steps.end());
    l_step_ = steps[steps.size() / 2];
    // strongly adopted patches have injective lifts; reject exact duplicates
    for (int i = 0; i < size(); ++i)
        for (int j = i + 2; j < size(); ++j) {
            if (closed_ && i == 0 && j == size() - 1) continue;
            if ((l(i) - l(j)).norm() <= 1e-12 * scale)
                throw std::invalid_argument("patch lift l_U is not injective");
        }
}

Eigen::Vector4d Patch::l(int i) const {
    Eigen::Vector4d out;
    out.head<2>() = g_.col(i);
    out.tail<2>() = nu_.col(i);
    return out;
}

// ---------------------------------------------------------------------------
// reconstruction

ReconstructionResult reconstruct_generator(const std::vector<ReconstructSample>& samples,
                                           const ReconstructOptions& opts) {
    const int m = static_cast<int>(samples.size());
    if (m < 4) throw std::invalid_argument("need at least 4 front samples");

    std::vector<int> keep(m, 0);
    Eigen::Matrix2Xd g(2, m), nu(2, m);
    int accepted = 0;
    for (int q = 0; q < m; ++q) {
        const Eigen::Vector3d& xi = samples[q].xi;
        const double enorm2 = xi.squaredNorm();
        const double mink = -xi(0) * xi(0) + xi(1) * xi(1) + xi(2) * xi(2);
        if (std::abs(mink) > opts.xi_tol * enorm2 || std::abs(enorm2 - 2.0) > 2.0 * opts.xi_tol ||
            !(xi(0) > 0.0))
            continue;  // reject: xi is not an E-normalized null normal
        keep[q] = 1;
        ++accepted;
        const double tau = samples[q].point(0);
        const Eigen::Vector2d n2 = xi.tail<2>() / xi(0);
        g.col(q) = samples[q].point.tail<2>() - tau * n2;
        nu.col(q) = n2;
    }
    if (accepted < 4) throw std::invalid_argument("fewer than 4 valid front samples");

    double scale = 0.0;
    for (int q = 0; q < m; ++q)
        if (keep[q]) scale = std::max(scale, g.col(q).cwiseAbs().maxCoeff());
    const double tol = opts.dedup_tol > 0 ? opts.dedup_tol : 1e-9 * (1.0 + scale);

    // merge samples that lie on a common ruling line (equal (g, nu))
    UnionFind uf(m);
    for (int a = 0; a < m; ++a) {
        if (!keep[a]) continue;
        for (int b = a + 1; b < m; ++b) {
            if (!keep[b]) continue;
            if ((g.col(a) - g.col(b)).norm() <= tol && (nu.col(a) - nu.col(b)).norm() <= tol)
                uf.unite(a, b);
        }
    }

    std::vector<int> root_to_class(m, -1);
    std::vector<int> class_of(m, -1);
    std::vector<std::vector<int>> members;
    for (int q = 0; q < m; ++q) {
        if (!keep[q]) continue;
        const int r = uf.find(q);
        if (root_to_class[r] < 0) {
            root_to_class[r] = static_cast<int>(members.size());
            members.emplace_back();
        }
        class_of[q] = root_to_class[r];
        members[class_of[q]].push_back(q);
    }
    const int nc = static_cast<int>(members.size());
    if (nc < 4) throw std::invalid_argument("fewer than 4 distinct rulings in the samples");

    Eigen::Matrix2Xd cg(2, nc), cnu(2, nc);
    for (int c = 0; c < nc; ++c) {
        Eigen::Vector2d sg = Eigen::Vector2d::Zero(), sn = Eigen::Vector2d::Zero();
        for (int q : members[c]) {
            sg += g.col(q);
            sn += nu.col(q);
        }
        cg.col(c) = sg / static_cast<double>(members[c].size());
        cnu.col(c) = (sn / static_cast<double>(members[c].size())).normalized();
    }

    // --- order the classes into a chain -----------------------------------
    std::vector<int> order;
    bool closed = false;
    bool ordered = false;

    if (!opts.adjacency.empty()) {
        // class-level graph inherited from the sample grid
        std::vector<std::vector<int>> nb(nc);
        auto add_edge = [&](int ca, int cb) {
            if (ca == cb || ca < 0 || cb < 0) return;
            if (std::find(nb[ca].begin(), nb[ca].end(), cb) == nb[ca].end()) {
                nb[ca].push_back(cb);
                nb[cb].push_back(ca);
            }
        };
        for (const auto& [a, b] : opts.adjacency)
            if (a >= 0 && a < m && b >= 0 && b < m) add_edge(class_of[a], class_of[b]);
        const bool degrees_ok =
            std::all_of(nb.begin(), nb.end(), [](const auto& v) { return v.size() <= 2; });
        if (degrees_ok) {
            int start = 0;
            for (int c = 0; c < nc; ++c)
                if (nb[c].size() == 1) start = c;
            std::vector<char> seen(nc, 0);
            int cur = start, prev = -1;
            while (cur >= 0 && !seen[cur]) {
                seen[cur] = 1;
                order.push_back(cur);
                int nxt = -1;
                for (int cb : nb[cur])
                    if (cb != prev && !seen[cb]) nxt = cb;
                prev = cur;
                cur = nxt;
            }
            if (static_cast<int>(order.size()) == nc) {
                ordered = true;
                closed = nb[start].size() == 2 &&
                         std::find(nb[order.back()].begin(), nb[order.back()].end(), start) !=
                             nb[order.back()].end();
            } else {
                order.clear();
            }
        }
    }

    if (!ordered) {
        // Gauss-map angle ordering; valid when the normal traverses S^1
        // injectively (locally convex arcs and closed convex curves).
        std::vector<std::pair<double, int>> ang(nc);
        for (int c = 0; c < nc; ++c) ang[c] = {std::atan2(cnu(1, c), cnu(0, c)), c};
        std::sort(ang.begin(), ang.end());
        bool distinct = true;
        for (int c = 0; c + 1 < nc; ++c)
            if (ang[c + 1].first - ang[c].first <= 1e-12) distinct = false;
        if (distinct) {
            double max_gap = 2.0 * std::numbers::pi - (ang.back().first - ang.front().first);
            int cut = 0;  // index into ang after which the chain starts
            for (int c = 0; c + 1 < nc; ++c) {
                const double gap = ang[c + 1].first - ang[c].first;
                if (gap > max_gap) {
                    max_gap = gap;
                    cut = c + 1;
                }
            }
            closed = max_gap <= 0.15 * 2.0 * std::numbers::pi;
            for (int c = 0; c < nc; ++c) order.push_back(ang[(cut + c) % nc].second);
            ordered = true;
        }
    }

    if (!ordered) {
        // greedy nearest-neighbor chain in l-space
        auto lval = [&](int c) {
            Eigen::Vector4d l;
            l.head<2>() = cg.col(c);
            l.tail<2>() = cnu.col(c);
            return l;
        };
        std::vector<char> used(nc, 0);
        int cur = 0;
        used[0] = 1;
        order.push_back(0);
        double max_step = 0.0;
        while (static_cast<int>(order.size()) < nc) {
            int best = -1;
            double bd = std::numeric_limits<double>::infinity();
            for (int c = 0; c < nc; ++c) {
                if (used[c]) continue;
                const double d = (lval(c) - lval(cur)).norm();
                if (d < bd) {
                    bd = d;
                    best = c;
                }
            }
            max_step = std::max(max_step, bd);
            used[best] = 1;
            order.push_back(best);
            cur = best;
        }
        closed = (lval(order.back()) - lval(order.front())).norm() <= 3.0 * max_step;
    }

    // remap class ids to chain positions
    std::vector<int> position(nc, -1);
    for (int p = 0; p < nc; ++p) position[order[p]] = p;
    Eigen::Matrix2Xd og(2, nc), onu(2, nc);
    for (int c = 0; c < nc; ++c) {
        og.col(position[c]) = cg.col(c);
        onu.col(position[c]) = cnu.col(c);
    }

    ReconstructionResult res{
        Patch(og, onu, closed, opts.epsilon, opts.t_center), m, m - accepted, nc,
        std::vector<int>(m, -1)};
    for (int q = 0; q < m; ++q)
        if (class_of[q] >= 0) res.class_of[q] = position[class_of[q]];

    // covering multiplicity: distinct input samples carrying the same
    // Legendrian value (F, xi).  A doubly covered front repeats its points.
    {
        double fscale = 0.0;
        for (int q = 0; q < m; ++q)
            if (keep[q]) fscale = std::max(fscale, samples[q].point.cwiseAbs().maxCoeff());
        const double ctol = 1e-9 * (1.0 + fscale);
        UnionFind collide(m);
        for (int a = 0; a < m; ++a) {
            if (!keep[a]) continue;
            for (int b = a + 1; b < m; ++b) {
                if (!keep[b]) continue;
                if ((samples[a].point - samples[b].point).norm() <= ctol &&
                    (samples[a].xi - samples[b].xi).norm() <= ctol)
                    collide.unite(a, b);
            }
        }
        std::vector<int> size_of_root(m, 0);
        for (int q = 0; q < m; ++q)
            if (keep[q]) ++size_of_root[collide.find(q)];
        int groups = 0;
        double total = 0.0;
        for (int q = 0; q < m; ++q)
            if (size_of_root[q] > 0) {
                ++groups;
                total += size_of_root[q];
                res.cover_multiplicity = std::max(res.cover_multiplicity, size_of_root[q]);
            }
        if (groups > 0) res.mean_multiplicity = total / groups;
        res.lift_embedding_ok = res.cover_multiplicity <= 1;
    }
    return res;
}

// ---------------------------------------------------------------------------
// relatedness

bool related(const Patch& u, int i, const Patch& v, int j, const RelatedTol& tol) {
    const double step = std::max(u.l_step(), v.l_step());
    const double pos = tol.pos > 0 ? tol.pos : 3.0 * step;
    const double band = tol.band > 0 ? tol.band : 3.0 * step;

    if ((u.g(i) - v.g(j)).norm() > pos) return false;
    if ((u.nu(i) - v.nu(j)).norm() > tol.nrm) return false;
    return neighborhoods_agree(u, i, v, j, tol.neighbors, band);
}

// ---------------------------------------------------------------------------
// gluing

Atlas glue(const std::vector<Patch>& patches, const RelatedTol& tol) {
    if (patches.empty()) throw std::invalid_argument("glue needs at least one patch");

    Atlas atlas;
    atlas.patches = patches;
    const int np = static_cast<int>(patches.size());
    std::vector<int> offset(np + 1, 0);
    for (int p = 0; p < np; ++p) offset[p + 1] = offset[p] + patches[p].size();
    const int total = offset[np];

    UnionFind uf(total);
    for (int a = 0; a < np; ++a)
        for (int b = a + 1; b < np; ++b) {
            TransitionMap tm;
            tm.patch_u = a;
            tm.patch_v = b;
            const Patch& u = patches[a];
            const Patch& v = patches[b];
            const double step = std::max(u.l_step(), v.l_step());
            const double pos = tol.pos > 0 ? tol.pos : 3.0 * step;
            for (int i = 0; i < u.size(); ++i)
                for (int j = 0; j < v.size(); ++j) {
                    // cheap point prefilter before the neighborhood test
                    if ((u.g(i) - v.g(j)).norm() > pos) continue;
                    if ((u.nu(i) - v.nu(j)).norm() > tol.nrm) continue;
                    if (!related(u, i, v, j, tol)) continue;
                    uf.unite(offset[a] + i, offset[b] + j);
                    tm.pairs.emplace_back(i, j);
                    tm.max_l_mismatch = std::max(tm.max_l_mismatch, (u.l(i) - v.l(j)).norm());
                }
            if (!tm.pairs.empty()) atlas.transitions.push_back(std::move(tm));
        }

    std::vector<int> root_to_class(total, -1);
    std::vector<int> cls(total, -1);
    int nc = 0;
    for (int q = 0; q < total; ++q) {
        const int r = uf.find(q);
        if (root_to_class[r] < 0) root_to_class[r] = nc++;
        cls[q] = root_to_class[r];
    }
    atlas.class_count = nc;
    atlas.class_of.resize(np);
    for (int p = 0; p < np; ++p) {
        atlas.class_of[p].resize(patches[p].size());
        for (int i = 0; i < patches[p].size(); ++i)
            atlas.class_of[p][i] = cls[offset[p] + i];
    }

    // neighbor classes from the per-patch chains
    std::vector<std::vector<int>> nb(nc);
    auto add_edge = [&](int ca, int cb) {
        if (ca == cb) return;
        if (std::find(nb[ca].begin(), nb[ca].end(), cb) == nb[ca].end()) {
            nb[ca].push_back(cb);
            nb[cb].push_back(ca);
        }
    };
    for (int p = 0; p < np; ++p) {
        const int sz = patches[p].size();
        for (int i = 0; i + 1 < sz; ++i) add_edge(cls[offset[p] + i], cls[offset[p] + i + 1]);
        if (patches[p].closed() && sz > 2) add_edge(cls[offset[p] + sz - 1], cls[offset[p]]);
    }

    for (int c = 0; c < nc; ++c) {
        if (nb[c].size() <= 2) continue;
        atlas.non_hausdorff = true;
        // witness pairs: members of the over-connected class against one
        // member of each neighbor class
        std::pair<int, int> member{-1, -1};
        for (int p = 0; p < np && member.first < 0; ++p)
            for (int i = 0; i < patches[p].size(); ++i)
                if (atlas.class_of[p][i] == c) {
                    member = {p, i};
                    break;
                }
        for (int cb : nb[c]) {
            std::pair<int, int> other{-1, -1};
            for (int p = 0; p < np && other.first < 0; ++p)
                for (int i = 0; i < patches[p].size(); ++i)
                    if (atlas.class_of[p][i] == cb) {
                        other = {p, i};
                        break;
                    }
            atlas.offending.emplace_back(member, other);
        }
    }

    // walk the class graph into the Sigma_F chain
    if (!atlas.non_hausdorff) {
        int start = 0;
        for (int c = 0; c < nc; ++c)
            if (nb[c].size() == 1) start = c;
        std::vector<char> seen(nc, 0);
        int cur = start, prev = -1;
        while (cur >= 0 && !seen[cur]) {
            seen[cur] = 1;
            atlas.chain.push_back(cur);
            int nxt = -1;
            for (int cb : nb[cur])
                if (cb != prev && !seen[cb]) nxt = cb;
            prev = cur;
            cur = nxt;
        }
        atlas.connected = static_cast<int>(atlas.chain.size()) == nc;
        atlas.chain_closed =
            atlas.connected && nb[start].size() == 2 &&
            std::find(nb[atlas.chain.back()].begin(), nb[atlas.chain.back()].end(), start) !=
                nb[atlas.chain.back()].end();
    }

    // completed generating curve: averaged l-values along the chain
    if (!atlas.chain.empty() && static_cast<int>(atlas.chain.size()) >= 4) {
        const int cn = static_cast<int>(atlas.chain.size());
        Eigen::Matrix2Xd cg = Eigen::Matrix2Xd::Zero(2, cn);
        Eigen::Matrix2Xd cnu = Eigen::Matrix2Xd::Zero(2, cn);
        std::vector<int> counts(cn, 0);
        std::vector<int> chain_pos(nc, -1);
        for (int p = 0; p < cn; ++p) chain_pos[atlas.chain[p]] = p;
        for (int p = 0; p < np; ++p)
            for (int i = 0; i < patches[p].size(); ++i) {
                const int pos = chain_pos[atlas.class_of[p][i]];
                if (pos < 0) continue;
                cg.col(pos) += patches[p].g(i);
                cnu.col(pos) += patches[p].nu(i);
                ++counts[pos];
            }
        for (int p = 0; p < cn; ++p) {
            cg.col(p) /= counts[p];
            cnu.col(p) = cnu.col(p).normalized();
        }
        atlas.completed =
            geometry::GeneratingFront::from_curve_samples(cg, cnu, atlas.chain_closed);

        // verify L_U(t, x) = L_G(t, class(x)) at three t values per sample
        for (int p = 0; p < np; ++p) {
            const Patch& u = patches[p];
            const double e = std::isfinite(u.epsilon()) ? std::min(u.epsilon(), 1.0) : 1.0;
            const double ts[3] = {u.t_center() - e, u.t_center(), u.t_center() + e};
            for (int i = 0; i < u.size(); ++i) {
                const int pos = chain_pos[atlas.class_of[p][i]];
                if (pos < 0) continue;
                const Eigen::Vector2d dg = u.g(i) - Eigen::Vector2d(cg.col(pos));
                const Eigen::Vector2d dn = u.nu(i) - Eigen::Vector2d(cnu.col(pos));
                for (double t : ts) {
                    const double dev = std::sqrt((dg + t * dn).squaredNorm() + dn.squaredNorm());
                    atlas.lift_verification_max = std::max(atlas.lift_verification_max, dev);
                }
            }
        }
    }
    return atlas;
}

// ---------------------------------------------------------------------------
// admissibility

AdmissibilityReport admissibility_check(const Patch& u, const Patch& v, double contact_tol,
                                        double angle_threshold, const RelatedTol& rtol) {
    AdmissibilityReport rep;

    const double step = std::max(u.l_step(), v.l_step());
    const double pos = rtol.pos > 0 ? rtol.pos : 3.0 * step;
    for (int i = 0; i < u.size(); ++i)
        for (int j = 0; j < v.size(); ++j) {
            if ((u.g(i) - v.g(j)).norm() > pos) continue;
            if ((u.nu(i) - v.nu(j)).norm() > rtol.nrm) continue;
            if (related(u, i, v, j, rtol)) ++rep.related_pairs;
        }
    if (rep.related_pairs > 0) {
        rep.verdict = AdmissibilityVerdict::Related;
        return rep;
    }

    struct Pair {
        int i, j;
        double d;
    };
    std::vector<Pair> close;
    for (int i = 0; i < u.size(); ++i)
        for (int j = 0; j < v.size(); ++j) {
            const double d = (u.l(i) - v.l(j)).norm();
            if (d < contact_tol) close.push_back({i, j, d});
        }
    if (close.empty()) {
        rep.verdict = AdmissibilityVerdict::Disjoint;
        return rep;
    }

    std::sort(close.begin(), close.end(), [](const Pair& a, const Pair& b) { return a.d < b.d; });
    auto index_near = [](const Patch& p, int a, int b, int w) {
        const int d = std::abs(a - b);
        return p.closed() ? std::min(d, p.size() - d) <= w : d <= w;
    };
    const int window = 8;

    // tangent of the sampled l-curve (central where possible)
    auto tangent = [](const Patch& p, int i) {
        const int n = p.size();
        int a = i - 1, b = i + 1;
        if (p.closed()) {
            a = ((a % n) + n) % n;
            b = b % n;
        } else {
            a = std::max(a, 0);
            b = std::min(b, n - 1);
        }
        return Eigen::Vector4d((p.l(b) - p.l(a)).normalized());
    };

    std::vector<Pair> reps;
    for (const Pair& c : close) {
        bool suppressed = false;
        for (const Pair& r : reps)
            if (index_near(u, c.i, r.i, window) && index_near(v, c.j, r.j, window)) {
                suppressed = true;
                break;
            }
        if (!suppressed) reps.push_back(c);
    }

    bool any_tangential = false;
    for (const Pair& r : reps) {
        Contact c;
        c.i = r.i;
        c.j = r.j;
        c.distance = r.d;
        const Eigen::Vector4d tu = tangent(u, r.i);
        const Eigen::Vector4d tv = tangent(v, r.j);
        const double cosang = std::clamp(std::abs(tu.dot(tv)), 0.0, 1.0);
        c.angle = std::acos(cosang);
        c.transversal = c.angle >= angle_threshold;
        if (!c.transversal) any_tangential = true;
        rep.contacts.push_back(c);
    }
    rep.verdict =
        any_tangential ? AdmissibilityVerdict::Inadmissible : AdmissibilityVerdict::Admissible;
    return rep;
}

const char* to_string(AdmissibilityVerdict v) {
    switch (v) {
        case AdmissibilityVerdict::Related: return "related";
        case AdmissibilityVerdict::Disjoint: return "disjoint";
        case AdmissibilityVerdict::Admissible: return "admissible";
        case AdmissibilityVerdict::Inadmissible: return "inadmissible";
    }
    return "unknown";
}

}  // namespace nullfront::completion
