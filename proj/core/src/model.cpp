#include "nikulin/model.hpp"

#include <stdexcept>

namespace nikulin {

namespace {

IntMatrix u_gram(long scale) { return IntMatrix{{0, scale}, {scale, 0}}; }

LatticePtr assemble(std::string label, const std::vector<std::pair<std::string, IntMatrix>>& parts) {
  std::size_t n = 0;
  for (const auto& p : parts) n += p.second.rows();
  IntMatrix g(n, n);
  std::vector<Block> blocks;
  std::size_t offset = 0;
  for (const auto& [name, m] : parts) {
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) g(offset + i, offset + j) = m(i, j);
    blocks.push_back({name, offset, m.rows()});
    offset += m.rows();
  }
  return Lattice::make(std::move(label), std::move(g), std::move(blocks));
}

void require(bool condition, const char* what) {
  if (!condition) throw std::logic_error(std::string("model invariant violated: ") + what);
}

}  // namespace

IntMatrix eta_as_written_matrix() {
  IntMatrix m(16, 15);
  for (std::size_t i = 0; i < 6; ++i) m(i, i) = 1;
  for (std::size_t i = 0; i < 8; ++i) m(layout::kY_E8 + i, layout::kFix_E8 + i) = 2;
  m(layout::kY_Gamma1, layout::kFix_Alpha) = 1;
  m(layout::kY_Gamma2, layout::kFix_Alpha) = 1;
  return m;
}

NamedModel::NamedModel() {
  const IntMatrix e8 = e8_neg_gram();
  IntMatrix minus2(1, 1);
  minus2(0, 0) = -2;

  lambda_y_ = assemble("LY", {{"U1", u_gram(2)}, {"U2", u_gram(2)}, {"U3", u_gram(2)}, {"E8", e8}, {"G1", minus2},
                              {"G2", minus2}});
  lambda_x_ = assemble("LX", {{"U1", u_gram(1)}, {"U2", u_gram(1)}, {"U3", u_gram(1)}, {"E8a", e8}, {"E8b", e8},
                              {"D", minus2}});
  lambda_fix_ = assemble("Lfix", {{"U1", u_gram(1)}, {"U2", u_gram(1)}, {"U3", u_gram(1)}, {"E8", e8.scaled(2)},
                                  {"A", minus2}});
  lambda_fix_doubled_ = rescale(lambda_fix_, 2);

  eta_variants_.emplace("as-written", EtaVariant{"as-written", eta_as_written_matrix()});

  require(lambda_y_->rank() == 16 && lambda_x_->rank() == 23 && lambda_fix_->rank() == 15, "ranks");
  for (long i = -3; i <= 3; ++i) {
    require(square(L(i)) == 4 * i, "L_i^2 = 4i");
    require(is_primitive(L(i)) && divisibility(L(i)) == 2, "L_i primitive of divisibility 2");
  }
  require(square(e1()) == -2, "e1^2 = -2");
  require(square(e2()) == -4 && square(ew()) == -4, "e2^2 = ew^2 = -4");
  require(pair(e2(), ew()) == 1, "(e2, ew) = 1");
  require(square(delta_y()) == -4 && square(sigma_y()) == -4, "deltaY^2 = SigmaY^2 = -4");
  require(pair(delta_y(), sigma_y()) == 0, "(deltaY, SigmaY) = 0");
  require(square(w()) == -2, "w^2 = -2");
}

LatticeVector NamedModel::u(std::size_t k) const {
  if (k < 1 || k > 6) throw DomainError("u(k) needs k in 1..6");
  return LatticeVector::basis(lambda_y_, k - 1);
}

LatticeVector NamedModel::eps(std::size_t k) const {
  if (k < 1 || k > 8) throw DomainError("eps(k) needs k in 1..8");
  return LatticeVector::basis(lambda_y_, layout::kY_E8 + k - 1);
}

LatticeVector NamedModel::L(const Integer& i) const { return u(1) + i * u(2); }
LatticeVector NamedModel::e1() const { return eps(1); }
LatticeVector NamedModel::e2() const { return eps(1) + eps(3); }
LatticeVector NamedModel::ew() const { return eps(4) + eps(6); }
LatticeVector NamedModel::gamma1() const { return LatticeVector::basis(lambda_y_, layout::kY_Gamma1); }
LatticeVector NamedModel::gamma2() const { return LatticeVector::basis(lambda_y_, layout::kY_Gamma2); }
LatticeVector NamedModel::delta_y() const { return gamma1() + gamma2(); }
LatticeVector NamedModel::sigma_y() const { return gamma1() - gamma2(); }
LatticeVector NamedModel::w() const { return L(1) + ew() + gamma1(); }

const std::vector<std::string>& NamedModel::names() {
  static const std::vector<std::string> kNames = {
      "L(i)", "u(k)", "u1..u6", "eps(k)", "eps1..eps8", "e1", "e2", "ew", "gamma1", "gamma2", "deltaY", "SigmaY", "w"};
  return kNames;
}

LatticeVector NamedModel::named(const std::string& name, std::optional<Integer> arg) const {
  auto no_arg = [&](LatticeVector v) {
    if (arg) throw DomainError("name '" + name + "' takes no argument");
    return v;
  };
  auto small_index = [&](const Integer& a) -> std::size_t {
    if (a < 1 || a > 8) throw DomainError("index out of range for '" + name + "'");
    return a.get_ui();
  };
  if (name == "L") {
    if (!arg) throw DomainError("L needs an argument, e.g. L(1)");
    return L(*arg);
  }
  if (name == "u" || name == "eps") {
    if (!arg) throw DomainError(name + " needs an index argument");
    return name == "u" ? u(small_index(*arg)) : eps(small_index(*arg));
  }
  for (const std::string prefix : {"u", "eps"}) {
    if (name.size() == prefix.size() + 1 && name.compare(0, prefix.size(), prefix) == 0 &&
        name.back() >= '1' && name.back() <= '8') {
      const std::size_t k = static_cast<std::size_t>(name.back() - '0');
      return no_arg(prefix == "u" ? u(k) : eps(k));
    }
  }
  if (name == "e1") return no_arg(e1());
  if (name == "e2") return no_arg(e2());
  if (name == "ew") return no_arg(ew());
  if (name == "gamma1") return no_arg(gamma1());
  if (name == "gamma2") return no_arg(gamma2());
  if (name == "deltaY") return no_arg(delta_y());
  if (name == "SigmaY") return no_arg(sigma_y());
  if (name == "w") return no_arg(w());
  throw DomainError("unknown vector name '" + name + "'");
}

LatticeVector NamedModel::sigma_star(const LatticeVector& v) const {
  if (!v.lattice()->same_as(*lambda_x_)) throw DomainError("sigma_star acts on LX, got " + v.lattice()->label());
  std::vector<Integer> c = v.coords();
  for (std::size_t i = 0; i < 8; ++i) std::swap(c[layout::kX_E8a + i], c[layout::kX_E8b + i]);
  return {lambda_x_, std::move(c)};
}

Isometry NamedModel::sigma_star_isometry() const {
  const std::size_t n = lambda_x_->rank();
  IntMatrix m = IntMatrix::identity(n);
  for (std::size_t i = 0; i < 8; ++i) m.swap_cols(layout::kX_E8a + i, layout::kX_E8b + i);
  return Isometry(lambda_x_, std::move(m));
}

EmbeddingMap NamedModel::fix_to_x() const {
  IntMatrix m(23, 15);
  for (std::size_t i = 0; i < 6; ++i) m(i, i) = 1;
  for (std::size_t i = 0; i < 8; ++i) {
    m(layout::kX_E8a + i, layout::kFix_E8 + i) = 1;
    m(layout::kX_E8b + i, layout::kFix_E8 + i) = 1;
  }
  m(layout::kX_Delta, layout::kFix_Alpha) = 1;
  return make_embedding(lambda_fix_, lambda_x_, std::move(m));
}

std::vector<std::string> NamedModel::eta_variant_names() const {
  std::vector<std::string> out;
  for (const auto& [name, _] : eta_variants_) out.push_back(name);
  return out;
}

const EtaVariant& NamedModel::eta_variant(const std::string& name) const {
  auto it = eta_variants_.find(name);
  if (it == eta_variants_.end()) throw DomainError("unknown eta variant '" + name + "'");
  return it->second;
}

void NamedModel::register_eta_variant(EtaVariant variant) {
  if (variant.matrix.rows() != 16 || variant.matrix.cols() != 15)
    throw DomainError("eta variant matrix must be 16 x 15");
  if (variant.matrix.rank() != 15) throw DomainError("eta variant matrix is not injective");
  eta_variants_[variant.name] = std::move(variant);
}

EmbeddingMap NamedModel::eta_embedding(const std::string& variant) const {
  return make_embedding(lambda_fix_doubled_, lambda_y_, eta_variant(variant).matrix);
}

LatticeVector NamedModel::eta(const std::string& variant, const LatticeVector& v) const {
  if (!v.lattice()->same_as(*lambda_fix_) && !v.lattice()->same_as(*lambda_fix_doubled_))
    throw DomainError("eta acts on Lfix, got " + v.lattice()->label());
  return {lambda_y_, eta_variant(variant).matrix * v.coords_span()};
}

const NamedModel& default_model() {
  static const NamedModel model;
  return model;
}

}  // namespace nikulin
