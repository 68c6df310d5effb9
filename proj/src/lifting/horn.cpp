#include <sstream>

#include "simpfib/lifting.hpp"

namespace simpfib {

HornProblem opposite_problem(const HornProblem& problem) {
    HornProblem op;
    op.n = problem.n;
    op.missing = problem.n - problem.missing;
    op.faces.resize(problem.faces.size());
    for (int j = 0; j <= problem.n; ++j) {
        const auto& f = problem.faces[static_cast<std::size_t>(problem.n - j)];
        if (f) op.faces[static_cast<std::size_t>(j)] = opposite_simplex(*f);
    }
    op.base = opposite_simplex(problem.base);
    return op;
}

Json horn_problem_json(const SMap& p, const HornProblem& problem) {
    Json j;
    j["horn"] = Json::array({problem.n, problem.missing});
    Json faces = Json::array();
    for (const auto& f : problem.faces) faces.push_back(f ? simplex_to_json(p.source(), *f) : Json());
    j["faces"] = std::move(faces);
    j["base"] = simplex_to_json(p.target(), problem.base);
    return j;
}

std::string horn_problem_text(const SMap& p, const HornProblem& problem) {
    std::ostringstream out;
    out << "Lambda^" << problem.n << "_" << problem.missing << " over " << p.target().name(problem.base) << " with";
    for (int j = 0; j <= problem.n; ++j) {
        const auto& f = problem.faces[static_cast<std::size_t>(j)];
        if (f) out << " d" << j << "=" << p.source().name(*f);
    }
    return out.str();
}

LiftingSearch::LiftingSearch(SMap p)
    : p_(std::move(p)), fibers_(static_cast<std::size_t>(kMaxDegree) + 1), indexed_(static_cast<std::size_t>(kMaxDegree) + 1) {}

const std::vector<Simplex>& LiftingSearch::fiber(const Simplex& base) {
    static const std::vector<Simplex> none;
    const auto degree = static_cast<std::size_t>(base.dim);
    if (!indexed_[degree]) {
        for (const Simplex& x : total().simplices(base.dim)) fibers_[degree][p_(x)].push_back(x);
        indexed_[degree] = true;
    }
    auto it = fibers_[degree].find(base);
    return it == fibers_[degree].end() ? none : it->second;
}

void LiftingSearch::validate(const HornProblem& problem) const {
    const int n = problem.n;
    if (n < 1 || problem.missing < 0 || problem.missing > n || static_cast<int>(problem.faces.size()) != n + 1)
        throw InputError("malformed horn problem");
    if (problem.base.dim != n) throw InputError("base simplex of a horn problem must have degree " + std::to_string(n));
    for (int j = 0; j <= n; ++j) {
        const auto& f = problem.faces[static_cast<std::size_t>(j)];
        if (j == problem.missing) {
            if (f) throw InputError("horn problem assigns the missing face d" + std::to_string(j));
            continue;
        }
        if (!f || f->dim != n - 1) throw InputError("horn face d" + std::to_string(j) + " is missing or has the wrong degree");
        if (!(p_(*f) == base().face(problem.base, j)))
            throw InputError("horn face d" + std::to_string(j) + " = " + total().name(*f) + " does not lie over d" +
                             std::to_string(j) + " of the base");
        for (int k = 0; k < j; ++k) {
            const auto& g = problem.faces[static_cast<std::size_t>(k)];
            if (k == problem.missing || n < 2) continue;
            if (!(total().face(*f, k) == total().face(*g, j - 1)))
                throw InputError("horn faces d" + std::to_string(k) + " and d" + std::to_string(j) + " do not agree");
        }
    }
}

bool LiftingSearch::fills(const HornProblem& problem, const Simplex& x) const {
    for (int j = 0; j <= problem.n; ++j) {
        const auto& f = problem.faces[static_cast<std::size_t>(j)];
        if (f && !(total().face(x, j) == *f)) return false;
    }
    return true;
}

std::optional<Simplex> LiftingSearch::solve(const HornProblem& problem) {
    for (const Simplex& x : fiber(problem.base))
        if (fills(problem, x)) return x;
    return std::nullopt;
}

std::vector<Simplex> LiftingSearch::solutions(const HornProblem& problem) {
    std::vector<Simplex> out;
    for (const Simplex& x : fiber(problem.base))
        if (fills(problem, x)) out.push_back(x);
    return out;
}

bool LiftingSearch::for_each_horn(int n, int i, const Simplex& sigma, const FaceFilter& filter,
                                  const std::function<bool(const HornProblem&)>& visit) {
    HornProblem problem;
    problem.n = n;
    problem.missing = i;
    problem.faces.assign(static_cast<std::size_t>(n) + 1, std::nullopt);
    problem.base = sigma;

    std::vector<const std::vector<Simplex>*> candidates(static_cast<std::size_t>(n) + 1, nullptr);
    for (int j = 0; j <= n; ++j)
        if (j != i) candidates[static_cast<std::size_t>(j)] = &fiber(base().face(sigma, j));

    std::function<bool(int)> extend = [&](int j) -> bool {
        if (j == i) return extend(j + 1);
        if (j > n) return visit(problem);
        for (const Simplex& c : *candidates[static_cast<std::size_t>(j)]) {
            if (filter && !filter(j, c)) continue;
            bool ok = true;
            for (int k = 0; k < j && ok && n >= 2; ++k) {
                if (k == i) continue;
                ok = total().face(c, k) == total().face(*problem.faces[static_cast<std::size_t>(k)], j - 1);
            }
            if (!ok) continue;
            problem.faces[static_cast<std::size_t>(j)] = c;
            if (!extend(j + 1)) return false;
        }
        problem.faces[static_cast<std::size_t>(j)].reset();
        return true;
    };
    return extend(0);
}

std::optional<Simplex> solve_horn_lift(const SMap& p, const HornProblem& problem) {
    LiftingSearch search(p);
    search.validate(problem);
    return search.solve(problem);
}

std::vector<Simplex> horn_fillers(const SMap& p, const HornProblem& problem) {
    LiftingSearch search(p);
    search.validate(problem);
    return search.solutions(problem);
}

std::optional<SMap> solve_horn_lift(const SMap& p, const SMap& lambda, const SMap& sigma) {
    const int n = sigma.source().dimension();
    if (!(sigma.source() == standard_simplex(n))) throw InputError("the base of a horn problem must be a map from a standard simplex");
    int missing = -1;
    for (int i = 0; i <= n && missing < 0; ++i)
        if (lambda.source() == horn(n, i)) missing = i;
    if (missing < 0) throw InputError("the horn map must be defined on a horn of Delta^" + std::to_string(n));
    if (!(lambda.target() == p.source()) || !(sigma.target() == p.target()))
        throw InputError("horn problem maps do not match the fibration");

    const SimplicialSet delta = standard_simplex(n);
    const SimplicialSet& hn = lambda.source();
    HornProblem problem;
    problem.n = n;
    problem.missing = missing;
    problem.faces.assign(static_cast<std::size_t>(n) + 1, std::nullopt);
    std::vector<int> all(static_cast<std::size_t>(n) + 1);
    for (int v = 0; v <= n; ++v) all[static_cast<std::size_t>(v)] = v;
    problem.base = sigma(delta.at(subset_id(n, all)));
    for (int j = 0; j <= n; ++j) {
        if (j == missing) continue;
        auto face = all;
        face.erase(face.begin() + j);
        problem.faces[static_cast<std::size_t>(j)] = lambda(hn.at(subset_id(n, face)));
    }
    LiftingSearch search(p);
    search.validate(problem);
    auto x = search.solve(problem);
    if (!x) return std::nullopt;
    return classifying_map(p.source(), *x);
}

}  // namespace simpfib
