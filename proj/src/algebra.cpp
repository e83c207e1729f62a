#include "carnot/algebra.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>

namespace carnot {

StratifiedAlgebra::StratifiedAlgebra(std::vector<int> layer_dims,
                                     std::vector<BracketEntry> brackets, bool quiet)
    : layer_dims_(std::move(layer_dims)) {
    step_ = static_cast<int>(layer_dims_.size());
    if (step_ < 1) throw std::invalid_argument("algebra: empty layer_dims");
    if (step_ > 4)
        throw std::invalid_argument("algebra: step " + std::to_string(step_) +
                                    " not supported (group law expansion stops at 4)");
    for (int d : layer_dims_)
        if (d < 1) throw std::invalid_argument("algebra: layer dims must be positive");

    q_ = 0;
    for (int i = 0; i < step_; ++i) {
        for (int r = 0; r < layer_dims_[i]; ++r) degree_.push_back(i + 1);
        q_ += layer_dims_[i];
        Q_ += (i + 1) * layer_dims_[i];
    }
    m_ = layer_dims_[0];
    if (q_ > kMaxQ)
        throw std::invalid_argument("algebra: dimension " + std::to_string(q_) +
                                    " exceeds the supported maximum " + std::to_string(kMaxQ));

    // Normalize the bracket table: antisymmetrize, merge duplicates, validate.
    std::map<std::tuple<int, int, int>, double> table;
    for (const auto& e : brackets) {
        if (e.i < 0 || e.i >= q_ || e.j < 0 || e.j >= q_ || e.k < 0 || e.k >= q_)
            throw std::invalid_argument("algebra: bracket index out of range");
        if (e.c == 0.0) continue;
        if (e.i == e.j)
            throw std::invalid_argument("algebra: [e_i, e_i] must vanish (antisymmetry)");
        if (degree_[e.k] != degree_[e.i] + degree_[e.j])
            throw std::invalid_argument(
                "algebra: grading violated on [e" + std::to_string(e.i + 1) + ", e" +
                std::to_string(e.j + 1) + "] -> e" + std::to_string(e.k + 1));
        auto key = std::make_tuple(e.i, e.j, e.k);
        auto mirror = std::make_tuple(e.j, e.i, e.k);
        if (auto it = table.find(mirror); it != table.end()) {
            if (it->second != -e.c)
                throw std::invalid_argument("algebra: antisymmetry conflict on [e" +
                                            std::to_string(e.i + 1) + ", e" +
                                            std::to_string(e.j + 1) + "]");
            continue;
        }
        auto [it, inserted] = table.emplace(key, e.c);
        if (!inserted && it->second != e.c)
            throw std::invalid_argument("algebra: duplicate bracket entry with conflicting value");
    }
    for (const auto& [key, c] : table) {
        auto [i, j, k] = key;
        entries_.push_back({i, j, k, c});
        entries_.push_back({j, i, k, -c});
    }

    if (!quiet)
        std::fprintf(stderr,
                     "algebra: Jacobi identity and first-layer generativity are assumed, "
                     "not verified\n");

    for (int j = 0; j < q_; ++j) names_.push_back("x" + std::to_string(j + 1));
    build_tables();
}

void StratifiedAlgebra::build_tables() {
    // Symbolic product z = bch(x, y) with x -> vars 0..q-1, y -> vars q..2q-1.
    std::array<Poly, kMaxQ> x, y, z;
    for (int j = 0; j < q_; ++j) {
        x[j] = Poly::var(j);
        y[j] = Poly::var(q_ + j);
    }
    bch(x, y, z);
    product_poly_.assign(q_, Poly{});
    for (int k = 0; k < q_; ++k) product_poly_[k] = z[k];

    // Frame row j = d/dt (p * t e_j) at t = 0: the y_j-linear part of z.
    frame_.assign(m_, std::vector<Poly>(q_));
    for (int j = 0; j < m_; ++j)
        for (int i = 0; i < q_; ++i)
            frame_[j][i] = product_poly_[i].linear_part(q_ + j, q_, 2 * q_);
}

void StratifiedAlgebra::check_point(const GroupPoint& p, const char* who) const {
    if (p.size() != q_)
        throw std::invalid_argument(std::string(who) + ": point has dimension " +
                                    std::to_string(p.size()) + ", expected " +
                                    std::to_string(q_));
    for (int j = 0; j < q_; ++j)
        if (!std::isfinite(p[j]))
            throw std::invalid_argument(std::string(who) + ": non-finite coordinate");
}

GroupPoint StratifiedAlgebra::product(const GroupPoint& p, const GroupPoint& q) const {
    check_point(p, "product");
    check_point(q, "product");
    std::array<double, kMaxQ> x{}, y{}, z{};
    for (int j = 0; j < q_; ++j) { x[j] = p[j]; y[j] = q[j]; }
    bch(x, y, z);
    GroupPoint out(q_);
    for (int j = 0; j < q_; ++j) out[j] = z[j];
    return out;
}

GroupPoint StratifiedAlgebra::inverse(const GroupPoint& p) const {
    check_point(p, "inverse");
    return -p;
}

GroupPoint StratifiedAlgebra::dilate(double r, const GroupPoint& p) const {
    check_point(p, "dilate");
    if (!(r > 0.0)) throw std::domain_error("dilate: factor must be positive");
    GroupPoint out(q_);
    for (int j = 0; j < q_; ++j) out[j] = p[j] * std::pow(r, degree_[j]);
    return out;
}

GroupPoint StratifiedAlgebra::flow(const GroupPoint& p, int j, double t) const {
    GroupPoint e = GroupPoint::Zero(q_);
    e[j] = t;
    return product(p, e);
}

Mat StratifiedAlgebra::frame_coefficients(const GroupPoint& p) const {
    check_point(p, "frame_coefficients");
    Mat out(m_, q_);
    for (int j = 0; j < m_; ++j)
        for (int i = 0; i < q_; ++i)
            out(j, i) = frame_[j][i].eval(p.data(), q_);
    return out;
}

std::string StratifiedAlgebra::describe() const {
    std::string s;
    char buf[160];
    std::snprintf(buf, sizeof(buf), "step %d, layer dims (", step_);
    s += buf;
    for (int i = 0; i < step_; ++i)
        s += std::to_string(layer_dims_[i]) + (i + 1 < step_ ? ", " : ")");
    std::snprintf(buf, sizeof(buf), ", q = %d, Q = %d\n", q_, Q_);
    s += buf;
    s += "brackets:\n";
    bool any = false;
    for (const auto& e : entries_) {
        if (e.i > e.j) continue;
        std::snprintf(buf, sizeof(buf), "  [e%d, e%d] = %g e%d\n", e.i + 1, e.j + 1, e.c,
                      e.k + 1);
        s += buf;
        any = true;
    }
    if (!any) s += "  (abelian)\n";
    s += "horizontal frame:\n";
    for (int j = 0; j < m_; ++j) {
        s += "  X" + std::to_string(j + 1) + " = (";
        for (int i = 0; i < q_; ++i)
            s += frame_[j][i].str(names_) + (i + 1 < q_ ? ", " : ")\n");
    }
    return s;
}

} // namespace carnot
