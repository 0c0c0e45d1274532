#include "loomalg/laurent.hpp"

#include <sstream>

#include "loomalg/error.hpp"

namespace loomalg {

LaurentElement LaurentElement::monomial(const Vector& a, Degree j) {
  LaurentElement x(j.size(), a.size());
  x.add_term(j, a);
  return x;
}

Vector LaurentElement::coefficient(const Degree& j) const {
  auto it = terms_.find(j);
  return it == terms_.end() ? zero_vector(dim_) : it->second;
}

void LaurentElement::add_term(const Degree& j, const Vector& v) {
  if (j.size() != arity_) throw Error("arity", "degree has the wrong number of variables");
  if (v.size() != dim_) throw Error("dimension", "coefficient has the wrong length");
  if (loomalg::is_zero(v)) return;
  auto it = terms_.find(j);
  if (it == terms_.end()) {
    terms_.emplace(j, v);
    return;
  }
  it->second = add(it->second, v);
  if (loomalg::is_zero(it->second)) terms_.erase(it);
}

void LaurentElement::add_scaled(const CycloNumber& s, const LaurentElement& x) {
  if (x.arity_ != arity_ || x.dim_ != dim_) throw Error("arity", "Laurent elements have different shapes");
  if (s.is_zero()) return;
  for (const auto& [j, v] : x.terms_) add_term(j, scale(s, v));
}

LaurentElement LaurentElement::operator+(const LaurentElement& o) const {
  LaurentElement r = *this;
  r.add_scaled(CycloNumber(1), o);
  return r;
}

LaurentElement LaurentElement::operator-(const LaurentElement& o) const {
  LaurentElement r = *this;
  r.add_scaled(CycloNumber(-1), o);
  return r;
}

LaurentElement LaurentElement::scaled(const CycloNumber& s) const {
  LaurentElement r(arity_, dim_);
  r.add_scaled(s, *this);
  return r;
}

LaurentElement LaurentElement::shifted(const Degree& k) const {
  if (k.size() != arity_) throw Error("arity", "shift has the wrong number of variables");
  LaurentElement r(arity_, dim_);
  for (const auto& [j, v] : terms_) {
    Degree t = j;
    for (size_t p = 0; p < arity_; ++p) t[p] += k[p];
    r.terms_.emplace(std::move(t), v);
  }
  return r;
}

LaurentElement LaurentElement::mapped(const Matrix& m) const {
  if (m.cols() != dim_) throw Error("dimension", "map does not match the coefficient space");
  LaurentElement r(arity_, m.rows());
  for (const auto& [j, v] : terms_) r.add_term(j, m * v);
  return r;
}

std::map<long, LaurentElement> LaurentElement::slices() const {
  if (arity_ == 0) throw Error("arity", "cannot slice an arity-0 element");
  std::map<long, LaurentElement> out;
  for (const auto& [j, v] : terms_) {
    Degree head(j.begin(), j.end() - 1);
    auto it = out.try_emplace(j.back(), arity_ - 1, dim_).first;
    it->second.terms_.emplace(std::move(head), v);
  }
  return out;
}

LaurentElement LaurentElement::join(const std::map<long, LaurentElement>& slices, size_t arity, size_t dim) {
  LaurentElement r(arity, dim);
  for (const auto& [last, x] : slices) {
    for (const auto& [j, v] : x.support()) {
      Degree t = j;
      t.push_back(last);
      r.add_term(t, v);
    }
  }
  return r;
}

std::string monomial_name(const Degree& j) {
  std::string out;
  for (size_t p = 0; p < j.size(); ++p) {
    if (j[p] == 0) continue;
    if (!out.empty()) out += ' ';
    out += "z" + std::to_string(p + 1);
    if (j[p] != 1) out += "^" + std::to_string(j[p]);
  }
  return out.empty() ? "1" : out;
}

std::string LaurentElement::to_string(const std::vector<std::string>& labels) const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [j, v] : terms_) {
    if (!out.empty()) out += " + ";
    std::string coeff;
    size_t count = 0;
    for (size_t r = 0; r < v.size(); ++r) {
      if (v[r].is_zero()) continue;
      ++count;
      if (!coeff.empty()) coeff += " + ";
      const std::string c = v[r].to_string();
      const std::string label = r < labels.size() ? labels[r] : "e" + std::to_string(r + 1);
      if (v[r].is_one()) {
        coeff += label;
      } else if (c.find_first_of("+ ") == std::string::npos) {
        coeff += c + "*" + label;
      } else {
        coeff += "(" + c + ")*" + label;
      }
    }
    if (count > 1) coeff = "(" + coeff + ")";
    out += coeff + " @ " + monomial_name(j);
  }
  return out;
}

LaurentElement laurent_multiply(const StructureAlgebra& a, const LaurentElement& x, const LaurentElement& y) {
  if (x.arity() != y.arity()) throw Error("arity", "Laurent factors have different arity");
  if (x.dim() != a.dim() || y.dim() != a.dim()) throw Error("dimension", "Laurent factors do not live over this algebra");
  LaurentElement r(x.arity(), a.dim());
  for (const auto& [j1, v1] : x.support())
    for (const auto& [j2, v2] : y.support()) {
      Degree t = j1;
      for (size_t p = 0; p < t.size(); ++p) t[p] += j2[p];
      r.add_term(t, a.multiply(v1, v2));
    }
  return r;
}

bool DegreeBox::contains(const Degree& j) const {
  if (j.size() != radius.size()) return false;
  for (size_t p = 0; p < j.size(); ++p)
    if (j[p] < -radius[p] || j[p] > radius[p]) return false;
  return true;
}

std::vector<Degree> DegreeBox::degrees() const {
  std::vector<Degree> out;
  Degree j(radius.size());
  for (size_t p = 0; p < j.size(); ++p) j[p] = -radius[p];
  while (true) {
    out.push_back(j);
    size_t p = j.size();
    while (p > 0) {
      --p;
      if (j[p] < radius[p]) {
        ++j[p];
        for (size_t q = p + 1; q < j.size(); ++q) j[q] = -radius[q];
        break;
      }
      if (p == 0) return out;
    }
    if (j.empty()) return out;
  }
}

size_t DegreeBox::size() const {
  size_t n = 1;
  for (long r : radius) n *= static_cast<size_t>(2 * r + 1);
  return n;
}

DegreeBox DegreeBox::scaled(long num, long den) const {
  DegreeBox b;
  for (long r : radius) b.radius.push_back(r * num / den);
  return b;
}

std::string DegreeBox::to_string() const {
  std::string out;
  for (size_t p = 0; p < radius.size(); ++p) out += (p ? "," : "") + std::to_string(radius[p]);
  return out;
}

WindowIndex::WindowIndex(const DegreeBox& box, size_t dim) : box_(box), dim_(dim), degrees_(box.degrees()) {
  for (size_t i = 0; i < degrees_.size(); ++i) pos_.emplace(degrees_[i], i);
}

std::optional<size_t> WindowIndex::position(const Degree& j) const {
  auto it = pos_.find(j);
  if (it == pos_.end()) return std::nullopt;
  return it->second;
}

SparseVec<size_t> WindowIndex::flatten(const LaurentElement& x) const {
  SparseVec<size_t> out;
  for (const auto& [j, v] : x.support()) {
    auto pos = position(j);
    if (!pos) throw Error("window", "element has support outside the box " + box_.to_string());
    for (size_t r = 0; r < dim_; ++r)
      if (!v[r].is_zero()) out.emplace(index(*pos, r), v[r]);
  }
  return out;
}

LaurentElement WindowIndex::unflatten(const SparseVec<size_t>& v) const {
  LaurentElement x(box_.arity(), dim_);
  std::map<size_t, Vector> by_pos;
  for (const auto& [i, c] : v) {
    auto it = by_pos.try_emplace(i / dim_, zero_vector(dim_)).first;
    it->second[i % dim_] = c;
  }
  for (const auto& [pos, vec] : by_pos) x.add_term(degrees_[pos], vec);
  return x;
}

LaurentElement WindowIndex::unflatten(const Vector& v) const { return unflatten(to_sparse(v)); }

}  // namespace loomalg
