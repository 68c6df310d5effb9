#include "simpfib/homology.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace simpfib {

namespace {

Integer reduce(const Integer& x, const Integer& order) {
    if (order == 0) return x;
    Integer r = x % order;
    if (r < 0) r += order;
    return r;
}

void reduce_rows(IntMatrix& m, const std::vector<Integer>& orders) {
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) m(i, j) = reduce(m(i, j), orders[static_cast<std::size_t>(i)]);
}

// Every elementary divisor is 1 and there are `n` of them.
bool unimodular_rank(const IntMatrix& m, int n) {
    const SmithForm s = smith_normal_form(m);
    if (s.rank() != n) return false;
    return std::all_of(s.diagonal.begin(), s.diagonal.end(), [](const Integer& d) { return d == 1; });
}

Json integer_json(const Integer& x) {
    if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
        return Json(x.convert_to<std::int64_t>());
    return Json(x.str());
}

HomologyGroup zero_group(int k) {
    HomologyGroup g;
    g.degree = k;
    return g;
}

}  // namespace

IntMatrix ChainComplex::boundary(int k) const {
    if (k >= 1 && k <= top()) return boundaries[static_cast<std::size_t>(k)];
    return IntMatrix(rank(k - 1), rank(k));
}

ChainComplex chain_complex(const SimplicialSet& x) {
    ChainComplex c;
    for (int k = 0; k <= x.dimension(); ++k) c.ranks.push_back(x.cell_count(k));
    for (int k = 0; k <= x.dimension(); ++k) {
        IntMatrix b(k == 0 ? 0 : c.rank(k - 1), c.rank(k));
        if (k > 0) {
            for (int j = 0; j < c.rank(k); ++j) {
                const auto& faces = x.cell(k, j).faces;
                for (int i = 0; i <= k; ++i) {
                    const Simplex& f = faces[static_cast<std::size_t>(i)];
                    if (!f.nondegenerate()) continue;
                    b(f.cell, j) += (i % 2 == 0) ? 1 : -1;
                }
            }
        }
        c.boundaries.push_back(std::move(b));
    }
    return c;
}

std::vector<Integer> chain_of(const SimplicialSet& x, const Simplex& s) {
    std::vector<Integer> v(static_cast<std::size_t>(std::max(0, s.dim <= x.dimension() ? x.cell_count(s.dim) : 0)));
    if (s.nondegenerate()) v[static_cast<std::size_t>(s.cell)] = 1;
    return v;
}

std::vector<Integer> HomologyGroup::orders() const {
    std::vector<Integer> out(static_cast<std::size_t>(betti), Integer(0));
    out.insert(out.end(), torsion.begin(), torsion.end());
    return out;
}

std::vector<Integer> HomologyGroup::class_of(const std::vector<Integer>& cycle) const {
    if (rank() == 0) return {};
    std::vector<Integer> c = coordinates * cycle;
    const auto ord = orders();
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = reduce(c[i], ord[i]);
    return c;
}

HomologyGroup HomologyProfile::group(int k) const {
    if (k >= 0 && k < static_cast<int>(groups.size())) return groups[static_cast<std::size_t>(k)];
    return zero_group(k);
}

bool HomologyProfile::is_point() const {
    if (valid_below && *valid_below < 1) return false;
    const HomologyGroup h0 = group(0);
    if (h0.betti != 1 || !h0.torsion.empty()) return false;
    for (std::size_t k = 1; k < groups.size(); ++k)
        if (!groups[k].trivial()) return false;
    return true;
}

bool HomologyProfile::same_groups(const HomologyProfile& other) const {
    std::size_t n = std::max(groups.size(), other.groups.size());
    for (const auto& v : {valid_below, other.valid_below})
        if (v) n = std::min(n, static_cast<std::size_t>(std::max(*v, 0)));
    for (std::size_t k = 0; k < n; ++k) {
        const HomologyGroup a = group(static_cast<int>(k));
        const HomologyGroup b = other.group(static_cast<int>(k));
        if (a.betti != b.betti || a.torsion != b.torsion) return false;
    }
    return true;
}

Components pi0(const SimplicialSet& x) {
    const int n = x.empty() ? 0 : x.cell_count(0);
    std::vector<int> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
        while (parent[static_cast<std::size_t>(v)] != v) {
            parent[static_cast<std::size_t>(v)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
            v = parent[static_cast<std::size_t>(v)];
        }
        return v;
    };
    if (x.dimension() >= 1) {
        for (const Cell& e : x.cells(1)) {
            const int a = find(e.faces[0].cell), b = find(e.faces[1].cell);
            if (a != b) parent[static_cast<std::size_t>(a)] = b;
        }
    }
    Components c;
    c.label.assign(static_cast<std::size_t>(n), -1);
    std::vector<int> root_label(static_cast<std::size_t>(n), -1);
    if (n > 0) {
        for (int v : x.id_order(0)) {
            const int r = find(v);
            if (root_label[static_cast<std::size_t>(r)] < 0) {
                root_label[static_cast<std::size_t>(r)] = c.count++;
                c.representative.push_back(v);
            }
            c.label[static_cast<std::size_t>(v)] = root_label[static_cast<std::size_t>(r)];
        }
    }
    return c;
}

EulerCharacteristic euler_characteristic(const SimplicialSet& x) {
    EulerCharacteristic e;
    for (int k = 0; k <= x.dimension(); ++k) e.value += (k % 2 == 0 ? 1 : -1) * static_cast<long long>(x.cell_count(k));
    e.truncated = x.truncation().has_value();
    return e;
}

HomologyProfile homology(const SimplicialSet& x) { return homology(x, chain_complex(x)); }

HomologyProfile homology(const SimplicialSet& x, const ChainComplex& c) {
    HomologyProfile h;
    h.valid_below = x.truncation();
    int last = std::max(c.top(), 0);
    if (h.valid_below) last = std::min(last, *h.valid_below - 1);

    const Components comps = pi0(x);
    h.components = comps.count;

    for (int k = 0; k <= last; ++k) {
        HomologyGroup g;
        g.degree = k;
        const int nk = c.rank(k);
        if (k == 0) {
            // Canonical basis: one least vertex per component.
            g.betti = comps.count;
            g.coordinates = IntMatrix(comps.count, nk);
            for (int v = 0; v < nk; ++v) g.coordinates(comps.label[static_cast<std::size_t>(v)], v) = 1;
            for (int rep : comps.representative) {
                std::vector<Integer> gen(static_cast<std::size_t>(nk));
                gen[static_cast<std::size_t>(rep)] = 1;
                g.generators.push_back(std::move(gen));
            }
            h.groups.push_back(std::move(g));
            continue;
        }
        // Cycles: the kernel of d_k is spanned by the last columns of V.
        const SmithForm sk = smith_normal_form(c.boundary(k));
        const int r = sk.rank();
        const int z = nk - r;
        const IntMatrix kernel = sk.v.block(0, nk, r, nk);
        const IntMatrix to_kernel = sk.v_inverse.block(r, nk, 0, nk);
        // Boundaries in kernel coordinates.
        const SmithForm sb = smith_normal_form(to_kernel * c.boundary(k + 1));
        const IntMatrix basis = kernel * sb.u_inverse;
        const IntMatrix coords = sb.u * to_kernel;

        std::vector<int> order;
        for (int i = sb.rank(); i < z; ++i) order.push_back(i);
        for (int i = 0; i < sb.rank(); ++i)
            if (sb.diagonal[static_cast<std::size_t>(i)] != 1) order.push_back(i);
        g.betti = z - sb.rank();
        g.coordinates = IntMatrix(static_cast<int>(order.size()), nk);
        for (std::size_t row = 0; row < order.size(); ++row) {
            const int i = order[row];
            if (i < sb.rank()) g.torsion.push_back(sb.diagonal[static_cast<std::size_t>(i)]);
            g.generators.push_back(basis.column(i));
            for (int j = 0; j < nk; ++j) g.coordinates(static_cast<int>(row), j) = coords(i, j);
        }
        h.groups.push_back(std::move(g));
    }
    return h;
}

Json homology_json(const HomologyProfile& h) {
    Json out = Json::array();
    for (const HomologyGroup& g : h.groups) {
        Json entry;
        entry["degree"] = g.degree;
        entry["betti"] = g.betti;
        Json torsion = Json::array();
        for (const Integer& t : g.torsion) torsion.push_back(integer_json(t));
        entry["torsion"] = std::move(torsion);
        out.push_back(std::move(entry));
    }
    return out;
}

std::string homology_text(const HomologyProfile& h) {
    std::ostringstream out;
    out << '(';
    for (std::size_t k = 0; k < h.groups.size(); ++k) {
        const HomologyGroup& g = h.groups[k];
        if (k) out << ", ";
        if (g.trivial()) {
            out << '0';
            continue;
        }
        bool first = true;
        if (g.betti > 0) {
            out << 'Z';
            if (g.betti > 1) out << '^' << g.betti;
            first = false;
        }
        for (const Integer& t : g.torsion) {
            out << (first ? "" : " + ") << "Z/" << t;
            first = false;
        }
    }
    out << ')';
    if (h.valid_below) out << " in degrees < " << *h.valid_below;
    return out.str();
}

bool HomologyMap::is_isomorphism() const {
    std::vector<int> free_s, tors_s, free_t, tors_t;
    for (std::size_t i = 0; i < source_orders.size(); ++i) (source_orders[i] == 0 ? free_s : tors_s).push_back(static_cast<int>(i));
    for (std::size_t i = 0; i < target_orders.size(); ++i) (target_orders[i] == 0 ? free_t : tors_t).push_back(static_cast<int>(i));
    if (free_s.size() != free_t.size() || tors_s.size() != tors_t.size()) return false;
    std::vector<Integer> os, ot;
    for (int i : tors_s) os.push_back(source_orders[static_cast<std::size_t>(i)]);
    for (int i : tors_t) ot.push_back(target_orders[static_cast<std::size_t>(i)]);
    std::sort(os.begin(), os.end());
    std::sort(ot.begin(), ot.end());
    if (os != ot) return false;

    // The map is block triangular: free quotient and torsion subgroup.
    const int nf = static_cast<int>(free_s.size());
    IntMatrix ff(nf, nf);
    for (int i = 0; i < nf; ++i)
        for (int j = 0; j < nf; ++j) ff(i, j) = matrix(free_t[static_cast<std::size_t>(i)], free_s[static_cast<std::size_t>(j)]);
    if (!unimodular_rank(ff, nf)) return false;

    // Equal finite orders, so the torsion block is bijective iff surjective.
    const int nt = static_cast<int>(tors_t.size());
    IntMatrix tt(nt, nt + nt);
    for (int i = 0; i < nt; ++i) {
        for (int j = 0; j < nt; ++j) tt(i, j) = matrix(tors_t[static_cast<std::size_t>(i)], tors_s[static_cast<std::size_t>(j)]);
        tt(i, nt + i) = target_orders[static_cast<std::size_t>(tors_t[static_cast<std::size_t>(i)])];
    }
    return unimodular_rank(tt, nt);
}

bool HomologyMap::is_identity() const {
    if (source_orders != target_orders) return false;
    IntMatrix m = matrix;
    reduce_rows(m, target_orders);
    return m.is_identity();
}

HomologyMap HomologyMap::identity(const std::vector<Integer>& orders) {
    return HomologyMap{IntMatrix::identity(static_cast<int>(orders.size())), orders, orders};
}

HomologyMap compose(const HomologyMap& g, const HomologyMap& f) {
    HomologyMap out{g.matrix * f.matrix, f.source_orders, g.target_orders};
    reduce_rows(out.matrix, out.target_orders);
    return out;
}

std::optional<HomologyMap> inverse(const HomologyMap& f) {
    if (!f.is_isomorphism()) return std::nullopt;
    const int ns = static_cast<int>(f.source_orders.size());
    const int nt = static_cast<int>(f.target_orders.size());
    // Solve f(x) = e_j modulo the target relations.
    IntMatrix system(nt, ns + nt);
    for (int i = 0; i < nt; ++i) {
        for (int j = 0; j < ns; ++j) system(i, j) = f.matrix(i, j);
        system(i, ns + i) = f.target_orders[static_cast<std::size_t>(i)];
    }
    HomologyMap inv{IntMatrix(ns, nt), f.target_orders, f.source_orders};
    for (int j = 0; j < nt; ++j) {
        std::vector<Integer> e(static_cast<std::size_t>(nt));
        e[static_cast<std::size_t>(j)] = 1;
        const auto x = solve_integer(system, e);
        if (!x) return std::nullopt;
        for (int i = 0; i < ns; ++i) inv.matrix(i, j) = (*x)[static_cast<std::size_t>(i)];
    }
    reduce_rows(inv.matrix, inv.target_orders);
    return inv;
}

InducedHomology induced_homology(const SMap& f) {
    return induced_homology(f, homology(f.source()), homology(f.target()));
}

InducedHomology induced_homology(const SMap& f, const HomologyProfile& source, const HomologyProfile& target) {
    InducedHomology out;
    int degrees = static_cast<int>(std::max(source.groups.size(), target.groups.size()));
    for (const auto& v : {source.valid_below, target.valid_below}) {
        if (!v) continue;
        out.valid_below = out.valid_below ? std::min(*out.valid_below, *v) : *v;
        degrees = std::min(degrees, std::max(*v, 0));
    }
    const SimplicialSet& x = f.source();
    const SimplicialSet& y = f.target();
    bool all_iso = true;
    for (int k = 0; k < degrees; ++k) {
        const HomologyGroup gs = source.group(k);
        const HomologyGroup gt = target.group(k);
        HomologyMap m{IntMatrix(gt.rank(), gs.rank()), gs.orders(), gt.orders()};
        const int target_rank = k <= y.dimension() ? y.cell_count(k) : 0;
        for (int col = 0; col < gs.rank(); ++col) {
            std::vector<Integer> image(static_cast<std::size_t>(target_rank));
            const auto& gen = gs.generators[static_cast<std::size_t>(col)];
            for (std::size_t j = 0; j < gen.size(); ++j) {
                if (gen[j] == 0) continue;
                const Simplex& img = f.image(k, static_cast<int>(j));
                if (img.nondegenerate()) image[static_cast<std::size_t>(img.cell)] += gen[j];
            }
            const auto coords = gt.class_of(image);
            for (int row = 0; row < gt.rank(); ++row) m.matrix(row, col) = coords[static_cast<std::size_t>(row)];
        }
        const bool iso = m.is_isomorphism();
        all_iso = all_iso && iso;
        out.iso_by_degree.push_back(iso);
        out.maps.push_back(std::move(m));
    }

    const Components cx = pi0(x), cy = pi0(y);
    std::vector<int> hit(static_cast<std::size_t>(cy.count), 0);
    for (int v = 0; v < static_cast<int>(cx.label.size()); ++v) hit[static_cast<std::size_t>(cy.label[static_cast<std::size_t>(f.image(0, v).cell)])] = 1;
    out.pi0_bijection = cx.count == cy.count && std::all_of(hit.begin(), hit.end(), [](int h) { return h == 1; });
    out.iso = all_iso && out.pi0_bijection;
    return out;
}

}  // namespace simpfib
