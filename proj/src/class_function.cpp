#include "dgw/class_function.hpp"

#include <ostream>

#include "dgw/parallel.hpp"

namespace dgw {

ClassFunction::ClassFunction(ClassTablePtr table, std::vector<cplx> values)
    : table_(std::move(table)), values_(std::move(values)) {
  if (static_cast<int>(values_.size()) != table_->num_classes())
    throw std::invalid_argument("class function has the wrong number of values");
}

ClassFunction ClassFunction::zero(ClassTablePtr table) {
  const int n = table->num_classes();
  return {std::move(table), std::vector<cplx>(n, 0.0)};
}

ClassFunction ClassFunction::trivial(ClassTablePtr table) {
  const int n = table->num_classes();
  return {std::move(table), std::vector<cplx>(n, 1.0)};
}

ClassFunction ClassFunction::from_function(ClassTablePtr table, const std::function<cplx(code_t)>& f) {
  std::vector<cplx> v(table->num_classes());
  for (int c = 0; c < table->num_classes(); ++c) v[c] = f(table->rep(c));
  return {std::move(table), std::move(v)};
}

void ClassFunction::check_same_table(const ClassFunction& o) const {
  if (table_ != o.table_) throw std::invalid_argument("class functions live on different class tables");
}

ClassFunction& ClassFunction::operator+=(const ClassFunction& o) {
  check_same_table(o);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
  return *this;
}

ClassFunction& ClassFunction::operator-=(const ClassFunction& o) {
  check_same_table(o);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
  return *this;
}

ClassFunction& ClassFunction::operator*=(cplx s) {
  for (auto& v : values_) v *= s;
  return *this;
}

ClassFunction ClassFunction::conj() const {
  ClassFunction r = *this;
  for (auto& v : r.values_) v = std::conj(v);
  return r;
}

ClassFunction ClassFunction::times(const ClassFunction& o) const {
  check_same_table(o);
  ClassFunction r = *this;
  for (std::size_t i = 0; i < values_.size(); ++i) r.values_[i] *= o.values_[i];
  return r;
}

double ClassFunction::distance(const ClassFunction& o) const {
  check_same_table(o);
  double d = 0;
  for (std::size_t i = 0; i < values_.size(); ++i) d = std::max(d, std::abs(values_[i] - o.values_[i]));
  return d;
}

void ClassFunction::write_csv(std::ostream& os) const {
  os << "class_id,re,im\n";
  os.precision(12);
  for (std::size_t i = 0; i < values_.size(); ++i) os << i << ',' << values_[i].real() << ',' << values_[i].imag() << '\n';
}

cplx inner_product(const ClassFunction& f, const ClassFunction& g) {
  if (f.table() != g.table()) throw std::invalid_argument("inner_product: class functions on different tables");
  const ClassTable& t = *f.table();
  cplx s = 0;
  for (int c = 0; c < t.num_classes(); ++c) s += static_cast<double>(t.size(c)) * f[c] * std::conj(g[c]);
  return s / static_cast<double>(t.order());
}

long long multiplicity(const ClassFunction& f, const ClassFunction& g) {
  const long long m = round_exact(inner_product(f, g), "multiplicity");
  if (m < 0) throw NumericResidual("multiplicity: negative inner product of characters");
  return m;
}

ClassFunction induce(ClassTablePtr table, std::span<const code_t> subgroup, const std::function<cplx(code_t)>& chi) {
  const ClassTable& t = *table;
  const int nc = t.num_classes();
  const int workers = thread_count();
  std::vector<std::vector<cplx>> partial(static_cast<std::size_t>(workers), std::vector<cplx>(nc, 0.0));
  const std::size_t n = subgroup.size();
  const std::size_t chunk = (n + workers - 1) / workers;
  parallel_for(static_cast<std::size_t>(workers), [&](std::size_t wb, std::size_t we) {
    for (std::size_t w = wb; w < we; ++w)
      for (std::size_t i = w * chunk; i < std::min(n, (w + 1) * chunk); ++i)
        partial[w][t.class_of(subgroup[i])] += chi(subgroup[i]);
  });
  std::vector<cplx> v(nc, 0.0);
  for (const auto& p : partial)
    for (int c = 0; c < nc; ++c) v[c] += p[c];
  const double hn = static_cast<double>(n);
  for (int c = 0; c < nc; ++c) v[c] *= static_cast<double>(t.order()) / (hn * static_cast<double>(t.size(c)));
  return {std::move(table), std::move(v)};
}

cplx restricted_inner_product(const ClassFunction& f, std::span<const code_t> subgroup,
                              const std::function<cplx(code_t)>& chi) {
  cplx s = 0;
  for (code_t h : subgroup) s += f.at(h) * std::conj(chi(h));
  return s / static_cast<double>(subgroup.size());
}

std::vector<long long> decompose(const ClassFunction& f, std::span<const ClassFunction> rows) {
  std::vector<long long> m(rows.size());
  ClassFunction rebuilt = ClassFunction::zero(f.table());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    m[i] = multiplicity(f, rows[i]);
    if (m[i] != 0) rebuilt += static_cast<double>(m[i]) * rows[i];
  }
  if (!rebuilt.approx_equal(f)) throw NumericResidual("decompose: multiplicities do not reconstruct the function");
  return m;
}

}  // namespace dgw
