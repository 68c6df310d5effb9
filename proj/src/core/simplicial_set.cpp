#include "simpfib/simplicial_set.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <unordered_map>

namespace simpfib {

struct SimplicialSet::Data {
    bool simplicial = true;
    bool nerve = false;
    std::optional<int> truncation;
    std::vector<std::vector<Cell>> cells;
    std::vector<std::vector<int>> id_order;
    std::unordered_map<std::string, Simplex> by_id;
};

namespace {

const std::vector<Cell>& no_cells() {
    static const std::vector<Cell> empty;
    return empty;
}

const std::vector<int>& no_indices() {
    static const std::vector<int> empty;
    return empty;
}

}  // namespace

SimplicialSet::SimplicialSet() : data_(std::make_shared<const Data>()) {}

bool SimplicialSet::simplicial() const { return data_->simplicial; }

int SimplicialSet::dimension() const { return static_cast<int>(data_->cells.size()) - 1; }

int SimplicialSet::cell_count(int degree) const {
    if (degree < 0 || degree > dimension()) return 0;
    return static_cast<int>(data_->cells[static_cast<std::size_t>(degree)].size());
}

std::vector<int> SimplicialSet::cell_counts() const {
    std::vector<int> out;
    for (int d = 0; d <= dimension(); ++d) out.push_back(cell_count(d));
    return out;
}

const std::vector<Cell>& SimplicialSet::cells(int degree) const {
    if (degree < 0 || degree > dimension()) return no_cells();
    return data_->cells[static_cast<std::size_t>(degree)];
}

const Cell& SimplicialSet::cell(int degree, int index) const {
    return data_->cells.at(static_cast<std::size_t>(degree)).at(static_cast<std::size_t>(index));
}

std::optional<Simplex> SimplicialSet::find(std::string_view id) const {
    auto it = data_->by_id.find(std::string(id));
    if (it == data_->by_id.end()) return std::nullopt;
    return it->second;
}

Simplex SimplicialSet::at(std::string_view id) const {
    auto s = find(id);
    if (!s) throw InputError("no cell with identifier \"" + std::string(id) + "\"");
    return *s;
}

std::optional<int> SimplicialSet::truncation() const { return data_->truncation; }
bool SimplicialSet::is_nerve() const { return data_->nerve; }

Simplex SimplicialSet::face(const Simplex& s, int i) const {
    if (s.dim <= 0 || i < 0 || i > s.dim) throw std::logic_error("face index out of range");
    if (s.degen == 0) return cell(s.cell_dim, s.cell).faces[static_cast<std::size_t>(i)];

    auto eta = degeneracy::surjection(s.degen, s.dim);
    const int value = eta[static_cast<std::size_t>(i)];
    const bool kept = (i > 0 && eta[static_cast<std::size_t>(i) - 1] == value) ||
                      (i < s.dim && eta[static_cast<std::size_t>(i) + 1] == value);
    eta.erase(eta.begin() + i);
    if (kept) return Simplex{s.dim - 1, s.cell_dim, s.cell, degeneracy::mask_of(eta)};

    for (int& v : eta)
        if (v > value) --v;
    const Simplex& f = cell(s.cell_dim, s.cell).faces[static_cast<std::size_t>(value)];
    const auto mu = degeneracy::surjection(f.degen, f.dim);
    std::vector<int> composite(eta.size());
    for (std::size_t k = 0; k < eta.size(); ++k) composite[k] = mu[static_cast<std::size_t>(eta[k])];
    return Simplex{s.dim - 1, f.cell_dim, f.cell, degeneracy::mask_of(composite)};
}

Simplex SimplicialSet::degeneracy(const Simplex& s, int j) const {
    if (!simplicial()) throw std::logic_error("semi-simplicial sets have no degeneracies");
    if (j < 0 || j > s.dim || s.dim + 1 > kMaxDegree) throw std::logic_error("degeneracy index out of range");
    auto eta = degeneracy::surjection(s.degen, s.dim);
    eta.insert(eta.begin() + j, eta[static_cast<std::size_t>(j)]);
    return Simplex{s.dim + 1, s.cell_dim, s.cell, degeneracy::mask_of(eta)};
}

Simplex SimplicialSet::apply(const Simplex& s, std::span<const int> op) const {
    if (op.empty()) throw std::logic_error("empty simplicial operator");
    for (std::size_t t = 0; t < op.size(); ++t) {
        if (op[t] < 0 || op[t] > s.dim || (t > 0 && op[t] < op[t - 1]))
            throw std::logic_error("simplicial operator is not a monotone map into the simplex");
    }
    const auto eta = degeneracy::surjection(s.degen, s.dim);
    std::vector<int> values(op.size());
    for (std::size_t t = 0; t < op.size(); ++t) values[t] = eta[static_cast<std::size_t>(op[t])];

    std::vector<int> image = values;
    image.erase(std::unique(image.begin(), image.end()), image.end());

    Simplex z = cell_simplex(s.cell_dim, s.cell);
    for (int j = s.cell_dim; j >= 0; --j)
        if (!std::binary_search(image.begin(), image.end(), j)) z = face(z, j);

    if (!simplicial() && values.size() != image.size())
        throw std::logic_error("degenerate operator applied in a semi-simplicial set");

    const auto mu = degeneracy::surjection(z.degen, z.dim);
    std::vector<int> composite(values.size());
    for (std::size_t t = 0; t < values.size(); ++t) {
        auto pos = std::lower_bound(image.begin(), image.end(), values[t]) - image.begin();
        composite[t] = mu[static_cast<std::size_t>(pos)];
    }
    return Simplex{static_cast<int>(op.size()) - 1, z.cell_dim, z.cell, degeneracy::mask_of(composite)};
}

Simplex SimplicialSet::vertex(const Simplex& s, int k) const {
    const int op[1] = {k};
    return apply(s, op);
}

std::vector<int> SimplicialSet::vertices(const Simplex& s) const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(s.dim) + 1);
    for (int k = 0; k <= s.dim; ++k) out.push_back(vertex(s, k).cell);
    return out;
}

std::vector<Simplex> SimplicialSet::simplices(int degree) const {
    std::vector<Simplex> out;
    if (degree < 0) return out;
    const int max_word = simplicial() ? degree : 0;
    for (int w = 0; w <= max_word; ++w) {
        const int m = degree - w;
        if (m > dimension() || cell_count(m) == 0) continue;
        for (std::uint32_t mask : degeneracy::masks(degree, w))
            for (int idx : id_order(m)) out.push_back(Simplex{degree, m, idx, mask});
    }
    return out;
}

const std::vector<int>& SimplicialSet::id_order(int degree) const {
    if (degree < 0 || degree > dimension()) return no_indices();
    return data_->id_order[static_cast<std::size_t>(degree)];
}

std::string SimplicialSet::name(const Simplex& s) const {
    const std::string& id = cell(s.cell_dim, s.cell).id;
    if (s.degen == 0) return id;
    return "s" + degeneracy::format(s.degen) + ":" + id;
}

Simplex SimplicialSet::parse_name(std::string_view text) const {
    if (auto s = find(text)) return *s;
    const auto colon = text.find(':');
    if (text.size() < 3 || text[0] != 's' || colon == std::string_view::npos)
        throw InputError("no simplex named \"" + std::string(text) + "\"");
    const Simplex base = at(text.substr(colon + 1));
    std::uint32_t mask = 0;
    try {
        mask = degeneracy::parse(text.substr(1, colon - 1));
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
    const int dim = base.dim + std::popcount(mask);
    if (mask >> dim) throw InputError("degeneracy index too large in \"" + std::string(text) + "\"");
    return Simplex{dim, base.cell_dim, base.cell, mask};
}

bool SimplicialSet::canonical_less(const Simplex& a, const Simplex& b) const {
    const int la = degeneracy::length(a.degen);
    const int lb = degeneracy::length(b.degen);
    if (la != lb) return la < lb;
    if (a.degen != b.degen) return degeneracy::word_less(a.degen, b.degen);
    return cell(a.cell_dim, a.cell).id < cell(b.cell_dim, b.cell).id;
}

bool operator==(const SimplicialSet& a, const SimplicialSet& b) {
    if (a.data_ == b.data_) return true;
    return a.data_->simplicial == b.data_->simplicial && a.data_->nerve == b.data_->nerve &&
           a.data_->truncation == b.data_->truncation && a.data_->cells == b.data_->cells;
}

// ---------------------------------------------------------------------------

SimplicialSetBuilder::SimplicialSetBuilder(bool simplicial) : simplicial_(simplicial) {}

int SimplicialSetBuilder::add_cell(int degree, std::string id, std::vector<Simplex> faces) {
    if (degree < 0 || degree > kMaxDegree) throw ValidationError("cell degree out of range for \"" + id + "\"");
    const std::size_t expected = degree == 0 ? 0 : static_cast<std::size_t>(degree) + 1;
    if (faces.size() != expected)
        throw ValidationError("cell \"" + id + "\" of degree " + std::to_string(degree) + " needs " +
                              std::to_string(expected) + " faces, got " + std::to_string(faces.size()));
    for (std::size_t i = 0; i < faces.size(); ++i) {
        const Simplex& f = faces[i];
        const std::string where = "face d_" + std::to_string(i) + " of cell \"" + id + "\"";
        if (f.dim != degree - 1) throw ValidationError(where + " has the wrong degree");
        if (f.cell_dim != f.dim - std::popcount(f.degen) || f.cell_dim < 0 || (f.degen >> f.dim) != 0)
            throw ValidationError(where + " carries an invalid degeneracy word");
        if (!simplicial_ && f.degen != 0)
            throw ValidationError(where + " is degenerate in a semi-simplicial set");
        if (static_cast<std::size_t>(f.cell_dim) >= cells_.size() || f.cell < 0 ||
            static_cast<std::size_t>(f.cell) >= cells_[static_cast<std::size_t>(f.cell_dim)].size())
            throw ValidationError(where + " references a missing cell");
    }
    if (cells_.size() <= static_cast<std::size_t>(degree)) cells_.resize(static_cast<std::size_t>(degree) + 1);
    auto& bucket = cells_[static_cast<std::size_t>(degree)];
    bucket.push_back(Cell{std::move(id), std::move(faces)});
    return static_cast<int>(bucket.size()) - 1;
}

int SimplicialSetBuilder::add_cell_named(int degree, std::string id,
                                         const std::vector<std::pair<std::string, std::string>>& faces) {
    std::vector<Simplex> resolved;
    for (std::size_t i = 0; i < faces.size(); ++i) {
        const auto& [word, target] = faces[i];
        std::uint32_t mask = 0;
        try {
            mask = degeneracy::parse(word);
        } catch (const std::invalid_argument& e) {
            throw ValidationError("face d_" + std::to_string(i) + " of cell \"" + id + "\": " + e.what());
        }
        const int cell_dim = degree - 1 - std::popcount(mask);
        int found = -1;
        if (cell_dim >= 0 && static_cast<std::size_t>(cell_dim) < cells_.size()) {
            const auto& bucket = cells_[static_cast<std::size_t>(cell_dim)];
            for (std::size_t k = 0; k < bucket.size(); ++k)
                if (bucket[k].id == target) found = static_cast<int>(k);
        }
        if (found < 0)
            throw ValidationError("face d_" + std::to_string(i) + " of cell \"" + id + "\" references \"" +
                                  target + "\", which is not a cell of degree " + std::to_string(cell_dim));
        resolved.push_back(Simplex{degree - 1, cell_dim, found, mask});
    }
    return add_cell(degree, std::move(id), std::move(resolved));
}

SimplicialSet SimplicialSetBuilder::build() const {
    auto data = std::make_shared<SimplicialSet::Data>();
    data->simplicial = simplicial_;
    data->nerve = nerve_;
    data->truncation = truncation_;
    data->cells = cells_;
    while (!data->cells.empty() && data->cells.back().empty()) data->cells.pop_back();

    for (std::size_t d = 0; d < data->cells.size(); ++d) {
        const auto& bucket = data->cells[d];
        std::vector<int> order(bucket.size());
        for (std::size_t k = 0; k < order.size(); ++k) order[k] = static_cast<int>(k);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            return bucket[static_cast<std::size_t>(a)].id < bucket[static_cast<std::size_t>(b)].id;
        });
        data->id_order.push_back(std::move(order));
        for (std::size_t k = 0; k < bucket.size(); ++k) {
            const Simplex s{static_cast<int>(d), static_cast<int>(d), static_cast<int>(k), 0};
            if (!data->by_id.emplace(bucket[k].id, s).second)
                throw ValidationError("duplicate cell identifier \"" + bucket[k].id + "\"");
        }
    }

    SimplicialSet out;
    out.data_ = data;

    for (int n = 2; n <= out.dimension(); ++n) {
        for (int idx = 0; idx < out.cell_count(n); ++idx) {
            const Simplex x = out.cell_simplex(n, idx);
            for (int j = 1; j <= n; ++j) {
                for (int i = 0; i < j; ++i) {
                    if (out.face(out.face(x, j), i) != out.face(out.face(x, i), j - 1))
                        throw ValidationError("cell \"" + out.cell(n, idx).id + "\" violates d_" + std::to_string(i) +
                                              " d_" + std::to_string(j) + " = d_" + std::to_string(j - 1) + " d_" +
                                              std::to_string(i));
                }
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------

SMap::SMap(SimplicialSet source, SimplicialSet target, std::vector<std::vector<Simplex>> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
    images_.resize(static_cast<std::size_t>(source_.dimension() + 1));
    for (int d = 0; d <= source_.dimension(); ++d) {
        const auto& row = images_[static_cast<std::size_t>(d)];
        if (static_cast<int>(row.size()) != source_.cell_count(d))
            throw ValidationError("map assigns " + std::to_string(row.size()) + " images in degree " +
                                  std::to_string(d) + " but the source has " +
                                  std::to_string(source_.cell_count(d)) + " cells");
        for (int k = 0; k < source_.cell_count(d); ++k) {
            const Simplex& img = row[static_cast<std::size_t>(k)];
            const std::string& id = source_.cell(d, k).id;
            if (img.dim != d || img.cell_dim != d - std::popcount(img.degen) || (img.degen >> img.dim) != 0 ||
                img.cell < 0 || img.cell >= target_.cell_count(img.cell_dim))
                throw ValidationError("image of cell \"" + id + "\" is not a valid simplex of degree " +
                                      std::to_string(d) + " in the target");
            if (!target_.simplicial() && img.degen != 0)
                throw ValidationError("image of cell \"" + id + "\" is degenerate in a semi-simplicial target");
        }
    }
    for (int d = 1; d <= source_.dimension(); ++d) {
        for (int k = 0; k < source_.cell_count(d); ++k) {
            const Cell& c = source_.cell(d, k);
            const Simplex& img = images_[static_cast<std::size_t>(d)][static_cast<std::size_t>(k)];
            for (int i = 0; i <= d; ++i) {
                if (target_.face(img, i) != (*this)(c.faces[static_cast<std::size_t>(i)]))
                    throw ValidationError("map does not commute with d_" + std::to_string(i) + " on cell \"" + c.id +
                                          "\"");
            }
        }
    }
}

const Simplex& SMap::image(int degree, int index) const {
    return images_.at(static_cast<std::size_t>(degree)).at(static_cast<std::size_t>(index));
}

Simplex SMap::operator()(const Simplex& s) const {
    const Simplex& img = image(s.cell_dim, s.cell);
    if (s.degen == 0) return img;
    const auto mu = degeneracy::surjection(s.degen, s.dim);
    return target_.apply(img, mu);
}

bool operator==(const SMap& a, const SMap& b) {
    return a.images_ == b.images_ && a.source_ == b.source_ && a.target_ == b.target_;
}

SMap identity_map(const SimplicialSet& x) {
    std::vector<std::vector<Simplex>> images(static_cast<std::size_t>(x.dimension() + 1));
    for (int d = 0; d <= x.dimension(); ++d)
        for (int k = 0; k < x.cell_count(d); ++k) images[static_cast<std::size_t>(d)].push_back(x.cell_simplex(d, k));
    return SMap(x, x, std::move(images));
}

SMap compose(const SMap& g, const SMap& f) {
    if (!(f.target() == g.source())) throw InputError("maps are not composable: target and source differ");
    std::vector<std::vector<Simplex>> images(static_cast<std::size_t>(f.source().dimension() + 1));
    for (int d = 0; d <= f.source().dimension(); ++d)
        for (int k = 0; k < f.source().cell_count(d); ++k)
            images[static_cast<std::size_t>(d)].push_back(g(f.image(d, k)));
    return SMap(f.source(), g.target(), std::move(images));
}

bool is_injective(const SMap& f) {
    for (int d = 0; d <= f.source().dimension(); ++d) {
        std::vector<int> seen;
        for (int k = 0; k < f.source().cell_count(d); ++k) {
            const Simplex& img = f.image(d, k);
            if (!img.nondegenerate()) return false;
            seen.push_back(img.cell);
        }
        std::sort(seen.begin(), seen.end());
        if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) return false;
    }
    return true;
}

bool is_isomorphism(const SMap& f) {
    return f.source().cell_counts() == f.target().cell_counts() && is_injective(f);
}

}  // namespace simpfib
