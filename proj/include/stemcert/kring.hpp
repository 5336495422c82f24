#pragma once

// Reduced complex K-theory of CP^n, HP^n, even spheres and their smash
// products, presented as truncated polynomial rings, with Adams operations.
//
//   K~(CP^n)   = Z[mu]/(mu^{n+1}),   mu  = H - 1,           psi^k(mu)  = (1+mu)^k - 1
//   K~(HP^n)   = Z[phi]/(phi^{n+1}), phi = c(H_q) - 2,      psi^k(phi) = x-expansion of t^k + t^-k - 2
//   K~(S^{2m}) = Z[nu]/(nu^2),                              psi^k(nu)  = k^m nu
//   K~(S^{2m} ^ X) = K~(S^{2m}) (x) K~(X),                   psi^k factorwise
//
// where x = t + t^-1 - 2 is the image of phi in the representation ring of
// the circle.  Basis monomials are ordered by increasing cell dimension, ties
// broken by the degree of the left smash factor, so every Adams matrix is
// lower-triangular.

#include "stemcert/exact.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace stemcert::kring {

inline constexpr int kMaxTruncation = 32;

enum class SpaceKind { ComplexProjective, QuaternionicProjective, EvenSphere, Smash };

class Space {
public:
    static Space complex_projective(int n) { return Space(SpaceKind::ComplexProjective, n); }
    static Space quaternionic_projective(int n) { return Space(SpaceKind::QuaternionicProjective, n); }
    /// S^{2m}.
    static Space even_sphere(int m) { return Space(SpaceKind::EvenSphere, m); }
    static Space smash(const Space& left, const Space& right) {
        Space s(SpaceKind::Smash, 0);
        s.left_ = std::make_shared<const Space>(left);
        s.right_ = std::make_shared<const Space>(right);
        return s;
    }

    // "cp2", "hp3", "s4", "s2-smash-cp2", "s2-smash-s4-smash-hp2".
    static Space parse(std::string_view name) {
        auto bad = [&] { return std::invalid_argument("unknown space: " + std::string(name)); };
        constexpr std::string_view sep = "-smash-";
        if (auto pos = name.find(sep); pos != std::string_view::npos)
            return smash(parse(name.substr(0, pos)), parse(name.substr(pos + sep.size())));
        auto number = [&](std::string_view digits) {
            if (digits.empty() || digits.size() > 4) throw bad();
            int v = 0;
            for (char c : digits) {
                if (c < '0' || c > '9') throw bad();
                v = v * 10 + (c - '0');
            }
            return v;
        };
        if (name.starts_with("cp")) return complex_projective(number(name.substr(2)));
        if (name.starts_with("hp")) return quaternionic_projective(number(name.substr(2)));
        if (name.starts_with("s")) {
            int dim = number(name.substr(1));
            if (dim % 2 != 0) throw std::invalid_argument("only even spheres are modelled: " + std::string(name));
            return even_sphere(dim / 2);
        }
        throw bad();
    }

    [[nodiscard]] SpaceKind kind() const { return kind_; }
    /// n for projective spaces, m for S^{2m}; 0 for smash products.
    [[nodiscard]] int index() const { return index_; }
    [[nodiscard]] const Space& left() const { return *left_; }
    [[nodiscard]] const Space& right() const { return *right_; }

    [[nodiscard]] std::string name() const {
        switch (kind_) {
            case SpaceKind::ComplexProjective: return "cp" + std::to_string(index_);
            case SpaceKind::QuaternionicProjective: return "hp" + std::to_string(index_);
            case SpaceKind::EvenSphere: return "s" + std::to_string(2 * index_);
            case SpaceKind::Smash: return left_->name() + "-smash-" + right_->name();
        }
        return {};
    }

    [[nodiscard]] int smash_depth() const {
        return kind_ == SpaceKind::Smash ? 1 + right_->smash_depth() : 0;
    }

    friend bool operator==(const Space& a, const Space& b) {
        if (a.kind_ != b.kind_ || a.index_ != b.index_) return false;
        if (a.kind_ != SpaceKind::Smash) return true;
        return *a.left_ == *b.left_ && *a.right_ == *b.right_;
    }

private:
    Space(SpaceKind kind, int index) : kind_(kind), index_(index) {}

    SpaceKind kind_;
    int index_;
    std::shared_ptr<const Space> left_;
    std::shared_ptr<const Space> right_;
};

struct Monomial {
    std::string symbol;  // unicode, e.g. "μ²ν"
    std::string ascii;   // e.g. "mu^2*nu"
    int cell_dim = 0;    // real dimension of the cell
    int degree = 0;      // power of the generator (simple rings) or of the left factor (smash)
    int left = -1;       // factor basis indices, smash only
    int right = -1;
};

namespace detail {

inline std::string superscript(int d) {
    static const char* digits[] = {"⁰", "¹", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸", "⁹"};
    std::string out;
    for (char c : std::to_string(d)) out += digits[c - '0'];
    return out;
}

inline std::string subscript(int d) {
    static const char* digits[] = {"₀", "₁", "₂", "₃", "₄", "₅", "₆", "₇", "₈", "₉"};
    std::string out;
    for (char c : std::to_string(d)) out += digits[c - '0'];
    return out;
}

struct ModelData {
    Space space;
    std::string generator;        // unicode symbol; empty for smash products
    std::string generator_ascii;
    int truncation = 0;           // highest surviving power; 1 for spheres
    int generator_dim = 0;        // cell dimension of the generator
    std::vector<Monomial> basis;
    // product[i][j]: basis index of basis[i] * basis[j], or nullopt when it vanishes.
    std::vector<std::vector<std::optional<std::size_t>>> product;
    std::shared_ptr<const ModelData> left;
    std::shared_ptr<const ModelData> right;
};

}  // namespace detail

class RingElement;

/// Immutable ring presentation; cheap to copy.
class RingModel {
public:
    [[nodiscard]] const Space& space() const { return d_->space; }
    [[nodiscard]] std::string name() const { return d_->space.name(); }
    [[nodiscard]] const std::string& generator() const { return d_->generator; }
    [[nodiscard]] int truncation() const { return d_->truncation; }
    [[nodiscard]] std::size_t rank() const { return d_->basis.size(); }
    [[nodiscard]] const std::vector<Monomial>& basis() const { return d_->basis; }
    [[nodiscard]] const Monomial& monomial(std::size_t i) const { return d_->basis.at(i); }
    [[nodiscard]] bool is_smash() const { return d_->space.kind() == SpaceKind::Smash; }
    [[nodiscard]] RingModel left() const { return RingModel(d_->left); }
    [[nodiscard]] RingModel right() const { return RingModel(d_->right); }

    [[nodiscard]] std::optional<std::size_t> product_index(std::size_t i, std::size_t j) const {
        return d_->product.at(i).at(j);
    }

    [[nodiscard]] std::optional<std::size_t> find(std::string_view ascii_or_symbol) const {
        for (std::size_t i = 0; i < d_->basis.size(); ++i)
            if (d_->basis[i].ascii == ascii_or_symbol || d_->basis[i].symbol == ascii_or_symbol) return i;
        return std::nullopt;
    }

    [[nodiscard]] RingElement zero() const;
    [[nodiscard]] RingElement basis_element(std::size_t i) const;
    /// The generator of a non-smash model.
    [[nodiscard]] RingElement gen() const;

    friend bool operator==(const RingModel& a, const RingModel& b) {
        return a.d_ == b.d_ || a.d_->space == b.d_->space;
    }

private:
    explicit RingModel(std::shared_ptr<const detail::ModelData> d) : d_(std::move(d)) {}
    friend RingModel make_ring(const Space& space);

    std::shared_ptr<const detail::ModelData> d_;
};

namespace detail {

inline std::shared_ptr<const ModelData> simple_model(const Space& space) {
    auto d = std::make_shared<ModelData>(ModelData{space, {}, {}, 0, 0, {}, {}, {}, {}});
    const int n = space.index();
    if (n < 1) throw std::invalid_argument("space index must be >= 1: " + space.name());
    if (n > kMaxTruncation) throw std::invalid_argument("space index above supported range: " + space.name());
    switch (space.kind()) {
        case SpaceKind::ComplexProjective:
            d->generator = "μ", d->generator_ascii = "mu", d->truncation = n, d->generator_dim = 2;
            break;
        case SpaceKind::QuaternionicProjective:
            d->generator = "φ", d->generator_ascii = "phi", d->truncation = n, d->generator_dim = 4;
            break;
        case SpaceKind::EvenSphere:
            d->generator = n == 1 ? "ν" : "ν" + subscript(n);
            d->generator_ascii = n == 1 ? "nu" : "nu" + std::to_string(n);
            d->truncation = 1;
            d->generator_dim = 2 * n;
            break;
        case SpaceKind::Smash: throw std::logic_error("simple_model called on smash product");
    }
    for (int p = 1; p <= d->truncation; ++p) {
        Monomial m;
        m.symbol = d->generator + (p > 1 ? superscript(p) : "");
        m.ascii = d->generator_ascii + (p > 1 ? "^" + std::to_string(p) : "");
        m.cell_dim = p * d->generator_dim;
        m.degree = p;
        d->basis.push_back(std::move(m));
    }
    const auto size = d->basis.size();
    d->product.assign(size, std::vector<std::optional<std::size_t>>(size));
    for (std::size_t i = 0; i < size; ++i)
        for (std::size_t j = 0; j < size; ++j)
            if (i + j + 2 <= static_cast<std::size_t>(d->truncation)) d->product[i][j] = i + j + 1;
    return d;
}

inline std::shared_ptr<const ModelData> build_model(const Space& space);

inline std::shared_ptr<const ModelData> smash_model(const Space& space) {
    if (space.left().kind() != SpaceKind::EvenSphere)
        throw std::invalid_argument("smash products must have an even sphere on the left: " + space.name());
    const auto rk = space.right().kind();
    if (rk == SpaceKind::EvenSphere)
        throw std::invalid_argument("smash products must end in CP^n or HP^n: " + space.name());
    if (space.smash_depth() > 2)
        throw std::invalid_argument("smash nesting depth above 2: " + space.name());

    auto d = std::make_shared<ModelData>(ModelData{space, {}, {}, 0, 0, {}, {}, {}, {}});
    d->left = build_model(space.left());
    d->right = build_model(space.right());
    d->truncation = std::max(d->left->truncation, d->right->truncation);

    for (std::size_t l = 0; l < d->left->basis.size(); ++l) {
        for (std::size_t r = 0; r < d->right->basis.size(); ++r) {
            const auto& lm = d->left->basis[l];
            const auto& rm = d->right->basis[r];
            Monomial m;
            m.symbol = rm.symbol + lm.symbol;
            m.ascii = rm.ascii + "*" + lm.ascii;
            m.cell_dim = lm.cell_dim + rm.cell_dim;
            m.degree = lm.degree;
            m.left = static_cast<int>(l);
            m.right = static_cast<int>(r);
            d->basis.push_back(std::move(m));
        }
    }
    std::stable_sort(d->basis.begin(), d->basis.end(), [](const Monomial& a, const Monomial& b) {
        return a.cell_dim != b.cell_dim ? a.cell_dim < b.cell_dim : a.degree < b.degree;
    });

    const auto size = d->basis.size();
    auto locate = [&](std::size_t l, std::size_t r) -> std::size_t {
        for (std::size_t i = 0; i < size; ++i)
            if (d->basis[i].left == static_cast<int>(l) && d->basis[i].right == static_cast<int>(r)) return i;
        throw std::logic_error("smash basis lookup failed");
    };
    d->product.assign(size, std::vector<std::optional<std::size_t>>(size));
    for (std::size_t i = 0; i < size; ++i) {
        for (std::size_t j = 0; j < size; ++j) {
            const auto& a = d->basis[i];
            const auto& b = d->basis[j];
            auto l = d->left->product[a.left][b.left];
            auto r = d->right->product[a.right][b.right];
            if (l && r) d->product[i][j] = locate(*l, *r);
        }
    }
    return d;
}

inline std::shared_ptr<const ModelData> build_model(const Space& space) {
    return space.kind() == SpaceKind::Smash ? smash_model(space) : simple_model(space);
}

}  // namespace detail

inline RingModel make_ring(const Space& space) { return RingModel(detail::build_model(space)); }

class RingElement {
public:
    RingElement(RingModel model, std::vector<BigInt> coeffs) : model_(std::move(model)), c_(std::move(coeffs)) {
        if (c_.size() != model_.rank())
            throw std::invalid_argument("coefficient vector length does not match basis of " + model_.name());
    }

    [[nodiscard]] const RingModel& model() const { return model_; }
    [[nodiscard]] const std::vector<BigInt>& coeffs() const { return c_; }
    [[nodiscard]] const BigInt& operator[](std::size_t i) const { return c_.at(i); }
    [[nodiscard]] bool is_zero() const {
        return std::all_of(c_.begin(), c_.end(), [](const BigInt& v) { return v.is_zero(); });
    }

    friend RingElement operator+(const RingElement& a, const RingElement& b) {
        a.require_same(b);
        auto c = a.c_;
        for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.c_[i];
        return {a.model_, std::move(c)};
    }
    friend RingElement operator-(const RingElement& a, const RingElement& b) {
        a.require_same(b);
        auto c = a.c_;
        for (std::size_t i = 0; i < c.size(); ++i) c[i] -= b.c_[i];
        return {a.model_, std::move(c)};
    }
    friend RingElement operator*(const BigInt& s, const RingElement& a) {
        auto c = a.c_;
        for (auto& v : c) v *= s;
        return {a.model_, std::move(c)};
    }
    friend RingElement operator*(const RingElement& a, const RingElement& b);

    friend bool operator==(const RingElement& a, const RingElement& b) {
        return a.model_ == b.model_ && a.c_ == b.c_;
    }

    void require_same(const RingElement& o) const {
        if (!(model_ == o.model_))
            throw std::invalid_argument("elements of " + model_.name() + " and " + o.model_.name() + " do not combine");
    }

private:
    RingModel model_;
    std::vector<BigInt> c_;
};

inline RingElement RingModel::zero() const { return {*this, std::vector<BigInt>(rank())}; }

inline RingElement RingModel::basis_element(std::size_t i) const {
    std::vector<BigInt> c(rank());
    c.at(i) = 1;
    return {*this, std::move(c)};
}

inline RingElement RingModel::gen() const {
    if (is_smash()) throw std::invalid_argument("smash products have no single generator");
    return basis_element(0);
}

/// Truncated product.  Throws for elements of different models.
inline RingElement mul(const RingElement& a, const RingElement& b) {
    a.require_same(b);
    const auto& m = a.model();
    std::vector<BigInt> out(m.rank());
    for (std::size_t i = 0; i < m.rank(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < m.rank(); ++j) {
            if (b[j].is_zero()) continue;
            if (auto idx = m.product_index(i, j)) out[*idx] += a[i] * b[j];
        }
    }
    return {m, std::move(out)};
}

inline RingElement operator*(const RingElement& a, const RingElement& b) { return mul(a, b); }

inline RingElement power(const RingElement& a, unsigned e) {
    if (e == 0) throw std::invalid_argument("power: reduced rings have no unit");
    RingElement r = a;
    for (unsigned i = 1; i < e; ++i) r = mul(r, a);
    return r;
}

/// Element of the unreduced ring K(X) = Z (+) K~(X).
struct Augmented {
    BigInt rank;
    RingElement reduced;

    friend Augmented operator+(const Augmented& a, const Augmented& b) {
        return {a.rank + b.rank, a.reduced + b.reduced};
    }
    friend Augmented operator-(const Augmented& a, const Augmented& b) {
        return {a.rank - b.rank, a.reduced - b.reduced};
    }
    friend Augmented operator*(const Augmented& a, const Augmented& b) {
        return {a.rank * b.rank, a.rank * b.reduced + b.rank * a.reduced + mul(a.reduced, b.reduced)};
    }
    friend Augmented operator*(const BigInt& s, const Augmented& a) { return {s * a.rank, s * a.reduced}; }
    friend bool operator==(const Augmented&, const Augmented&) = default;
};

inline Augmented unit(const RingModel& m) { return {1, m.zero()}; }

// ---------------------------------------------------------------------------
// Laurent polynomials in the circle variable t.

class LaurentPoly {
public:
    LaurentPoly() = default;

    static LaurentPoly monomial(long exponent, BigInt coeff = 1) {
        LaurentPoly p;
        if (!coeff.is_zero()) p.c_[exponent] = std::move(coeff);
        return p;
    }
    /// t + t^-1 - 2
    static LaurentPoly x() { return monomial(1) + monomial(-1) + monomial(0, -2); }
    /// t^k + t^-k - 2
    static LaurentPoly adams_image_of_x(long k) {
        return monomial(k) + monomial(-k) + monomial(0, -2);
    }

    [[nodiscard]] bool is_zero() const { return c_.empty(); }
    [[nodiscard]] BigInt coeff(long e) const {
        auto it = c_.find(e);
        return it == c_.end() ? BigInt(0) : it->second;
    }
    [[nodiscard]] long max_exponent() const {
        if (c_.empty()) throw std::domain_error("zero polynomial has no leading term");
        return c_.rbegin()->first;
    }
    [[nodiscard]] const std::map<long, BigInt>& terms() const { return c_; }

    [[nodiscard]] bool is_symmetric() const {
        return std::all_of(c_.begin(), c_.end(), [&](const auto& kv) { return coeff(-kv.first) == kv.second; });
    }

    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) {
        for (const auto& [e, v] : b.c_) a.add(e, v);
        return a;
    }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) {
        for (const auto& [e, v] : b.c_) a.add(e, -v);
        return a;
    }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r;
        for (const auto& [ea, va] : a.c_)
            for (const auto& [eb, vb] : b.c_) r.add(ea + eb, va * vb);
        return r;
    }
    friend LaurentPoly operator*(const BigInt& s, const LaurentPoly& a) {
        LaurentPoly r;
        for (const auto& [e, v] : a.c_) r.add(e, s * v);
        return r;
    }
    friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

private:
    void add(long e, const BigInt& v) {
        auto& slot = c_[e];
        slot += v;
        if (slot.is_zero()) c_.erase(e);
    }

    std::map<long, BigInt> c_;
};

inline LaurentPoly laurent_power(const LaurentPoly& p, unsigned e) {
    LaurentPoly r = LaurentPoly::monomial(0);
    for (unsigned i = 0; i < e; ++i) r = r * p;
    return r;
}

/// Coefficients a_0..a_k with t^k + t^-k - 2 = sum a_j x^j, found by
/// repeated elimination of the leading t-power.
inline std::vector<BigInt> adams_x_expansion(long k) {
    if (k < 1) throw std::invalid_argument("Adams operation index must be >= 1");
    std::vector<BigInt> out(static_cast<std::size_t>(k) + 1);
    const LaurentPoly x = LaurentPoly::x();
    std::vector<LaurentPoly> x_powers{LaurentPoly::monomial(0)};
    LaurentPoly rest = LaurentPoly::adams_image_of_x(k);
    while (!rest.is_zero()) {
        const long e = rest.max_exponent();
        if (e < 0 || e > k) throw std::logic_error("Laurent reduction left a non-symmetric remainder");
        while (static_cast<long>(x_powers.size()) <= e) x_powers.push_back(x_powers.back() * x);
        const BigInt c = rest.coeff(e);
        out[static_cast<std::size_t>(e)] += c;
        rest = rest - c * x_powers[static_cast<std::size_t>(e)];
    }
    return out;
}

/// psi^k(phi) in K~(HP^n): the x-expansion truncated at degree n.
inline RingElement laurent_to_phi(long k, int n) {
    const auto expansion = adams_x_expansion(k);
    if (!expansion[0].is_zero()) throw std::logic_error("Laurent reduction produced a constant term");
    RingModel hp = make_ring(Space::quaternionic_projective(n));
    std::vector<BigInt> c(hp.rank());
    for (std::size_t j = 1; j < expansion.size() && j <= c.size(); ++j) c[j - 1] = expansion[j];
    return {hp, std::move(c)};
}

// ---------------------------------------------------------------------------
// Adams operations.

struct AdamsMatrix {
    RingModel model;
    long k = 0;
    /// entries[j][i] = coefficient of basis j in psi^k(basis i).
    std::vector<std::vector<BigInt>> entries;
    std::vector<int> cell_dims;

    [[nodiscard]] std::size_t size() const { return entries.size(); }
    [[nodiscard]] const BigInt& at(std::size_t row, std::size_t col) const { return entries.at(row).at(col); }
    [[nodiscard]] bool is_lower_triangular() const {
        for (std::size_t r = 0; r < size(); ++r)
            for (std::size_t c = r + 1; c < size(); ++c)
                if (!entries[r][c].is_zero()) return false;
        return true;
    }
};

namespace detail {

// psi^k(generator) for a non-smash model.
inline RingElement adams_on_generator(const RingModel& m, long k) {
    const Space& s = m.space();
    switch (s.kind()) {
        case SpaceKind::ComplexProjective: {
            std::vector<BigInt> c(m.rank());
            for (std::size_t j = 1; j <= c.size(); ++j)
                if (j <= static_cast<std::size_t>(k)) c[j - 1] = binomial(static_cast<unsigned long>(k), j);
            return {m, std::move(c)};
        }
        case SpaceKind::QuaternionicProjective: {
            auto phi = laurent_to_phi(k, s.index());
            return {m, phi.coeffs()};
        }
        case SpaceKind::EvenSphere:
            return {m, {BigInt::pow(BigInt(k), static_cast<unsigned long>(s.index()))}};
        case SpaceKind::Smash: break;
    }
    throw std::logic_error("adams_on_generator called on smash product");
}

}  // namespace detail

inline AdamsMatrix adams_matrix(const RingModel& model, long k) {
    if (k < 1) throw std::invalid_argument("Adams operation index must be >= 1, got " + std::to_string(k));
    const std::size_t n = model.rank();
    AdamsMatrix out{model, k, std::vector<std::vector<BigInt>>(n, std::vector<BigInt>(n)), {}};
    for (const auto& mono : model.basis()) out.cell_dims.push_back(mono.cell_dim);

    if (!model.is_smash()) {
        const RingElement image = detail::adams_on_generator(model, k);
        RingElement p = image;
        for (std::size_t i = 0; i < n; ++i) {
            if (i > 0) p = mul(p, image);
            for (std::size_t j = 0; j < n; ++j) out.entries[j][i] = p[j];
        }
        return out;
    }

    const AdamsMatrix lm = adams_matrix(model.left(), k);
    const AdamsMatrix rm = adams_matrix(model.right(), k);
    const auto& basis = model.basis();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out.entries[j][i] = lm.at(basis[j].left, basis[i].left) * rm.at(basis[j].right, basis[i].right);
    return out;
}

inline RingElement apply(const AdamsMatrix& m, const RingElement& x) {
    if (!(m.model == x.model())) throw std::invalid_argument("Adams matrix and element belong to different models");
    std::vector<BigInt> out(m.size());
    for (std::size_t j = 0; j < m.size(); ++j)
        for (std::size_t i = 0; i < m.size(); ++i)
            if (!x[i].is_zero()) out[j] += m.at(j, i) * x[i];
    return {x.model(), std::move(out)};
}

inline RingElement adams(long k, const RingElement& x) { return apply(adams_matrix(x.model(), k), x); }

inline Augmented adams(long k, const Augmented& x) { return {x.rank, adams(k, x.reduced)}; }

// ---------------------------------------------------------------------------
// Formatting and serialization.

/// "2μ + μ²", "0", "-3ν".
inline std::string to_string(const RingElement& x, bool ascii = false) {
    std::string out;
    for (std::size_t i = 0; i < x.coeffs().size(); ++i) {
        BigInt c = x[i];
        if (c.is_zero()) continue;
        const auto& mono = x.model().monomial(i);
        const std::string& name = ascii ? mono.ascii : mono.symbol;
        if (out.empty()) {
            if (c.sign() < 0) out += "-";
        } else {
            out += c.sign() < 0 ? " - " : " + ";
        }
        c = c.abs();
        if (c != BigInt(1)) out += c.to_string() + (ascii ? "*" : "");
        out += name;
    }
    return out.empty() ? "0" : out;
}

/// Parses "mu + 2mu^2", "3*mu*nu", "-phi^2" against a model's basis names.
inline RingElement parse_element(const RingModel& model, std::string_view text) {
    std::string s;
    for (char ch : text)
        if (ch != ' ') s += ch;
    if (s.empty()) throw std::invalid_argument("empty element");
    std::vector<BigInt> c(model.rank());
    std::size_t pos = 0;
    while (pos < s.size()) {
        int sign = 1;
        if (s[pos] == '+' || s[pos] == '-') {
            sign = s[pos] == '-' ? -1 : 1;
            ++pos;
        } else if (pos != 0) {
            throw std::invalid_argument("expected '+' or '-' in element: " + s);
        }
        std::size_t end = pos;
        // A term ends at the next top-level sign.
        while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
        std::string term = s.substr(pos, end - pos);
        pos = end;
        std::size_t digits = 0;
        while (digits < term.size() && term[digits] >= '0' && term[digits] <= '9') ++digits;
        BigInt coeff = digits ? BigInt::parse(term.substr(0, digits)) : BigInt(1);
        std::string name = term.substr(digits);
        if (!name.empty() && name[0] == '*') name.erase(0, 1);
        auto idx = model.find(name);
        if (!idx) throw std::invalid_argument("unknown monomial '" + name + "' in " + model.name());
        c[*idx] += BigInt(sign) * coeff;
    }
    return {model, std::move(c)};
}

inline nlohmann::json to_json(const RingElement& x) {
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& v : x.coeffs()) coeffs.push_back(v.to_string());
    return {{"space", x.model().name()}, {"coeffs", coeffs}};
}

inline RingElement element_from_json(const nlohmann::json& j) {
    RingModel model = make_ring(Space::parse(j.at("space").get<std::string>()));
    std::vector<BigInt> c;
    for (const auto& v : j.at("coeffs")) c.push_back(BigInt::parse(v.get<std::string>()));
    return {model, std::move(c)};
}

}  // namespace stemcert::kring
