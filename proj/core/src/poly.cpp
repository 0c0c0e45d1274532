#include "loomalg/poly.hpp"

#include "loomalg/error.hpp"

namespace loomalg {
namespace poly {

void trim(KPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}
void trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}
long degree(const KPoly& p) { return static_cast<long>(p.size()) - 1; }
long degree(const QPoly& p) { return static_cast<long>(p.size()) - 1; }

KPoly add(const KPoly& a, const KPoly& b) {
  KPoly out(std::max(a.size(), b.size()));
  for (size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  trim(out);
  return out;
}

KPoly sub(const KPoly& a, const KPoly& b) {
  KPoly out(std::max(a.size(), b.size()));
  for (size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  trim(out);
  return out;
}

KPoly mul(const KPoly& a, const KPoly& b) {
  if (a.empty() || b.empty()) return {};
  KPoly out(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (size_t j = 0; j < b.size(); ++j)
      if (!b[j].is_zero()) out[i + j] += a[i] * b[j];
  }
  trim(out);
  return out;
}

KPoly scale(const CycloNumber& s, const KPoly& a) {
  KPoly out;
  for (const auto& c : a) out.push_back(s * c);
  trim(out);
  return out;
}

void divmod(const KPoly& a, const KPoly& b, KPoly& q, KPoly& r) {
  KPoly d = b;
  trim(d);
  if (d.empty()) throw Error("division-by-zero", "polynomial division by zero");
  r = a;
  trim(r);
  q.assign(r.size() >= d.size() ? r.size() - d.size() + 1 : 0, CycloNumber(0));
  const CycloNumber inv = d.back().inverse();
  while (r.size() >= d.size()) {
    const size_t shift = r.size() - d.size();
    const CycloNumber c = r.back() * inv;
    q[shift] = c;
    for (size_t i = 0; i < d.size(); ++i)
      if (!d[i].is_zero()) r[shift + i] -= c * d[i];
    r.pop_back();
    trim(r);
  }
  trim(q);
}

KPoly rem(const KPoly& a, const KPoly& b) {
  KPoly q, r;
  divmod(a, b, q, r);
  return r;
}

KPoly monic(const KPoly& a) {
  KPoly p = a;
  trim(p);
  if (p.empty()) return p;
  const CycloNumber inv = p.back().inverse();
  for (auto& c : p) c *= inv;
  return p;
}

KPoly gcd(const KPoly& a, const KPoly& b) {
  KPoly x = a, y = b;
  trim(x);
  trim(y);
  while (!y.empty()) {
    KPoly r = rem(x, y);
    x = std::move(y);
    y = std::move(r);
  }
  return monic(x);
}

KPoly derivative(const KPoly& a) {
  KPoly out;
  for (size_t i = 1; i < a.size(); ++i) out.push_back(a[i] * CycloNumber(static_cast<long>(i)));
  trim(out);
  return out;
}

CycloNumber eval(const KPoly& a, const CycloNumber& x) {
  CycloNumber acc(0);
  for (size_t i = a.size(); i-- > 0;) acc = acc * x + a[i];
  return acc;
}

KPoly shift(const KPoly& a, const CycloNumber& c) {
  KPoly acc;
  const KPoly lin{c, CycloNumber(1)};
  for (size_t i = a.size(); i-- > 0;) acc = poly::add(poly::mul(acc, lin), KPoly{a[i]});
  return acc;
}

std::vector<std::pair<KPoly, int>> squarefree(const KPoly& a) {
  std::vector<std::pair<KPoly, int>> out;
  KPoly f = monic(a);
  if (degree(f) < 1) return out;
  KPoly fp = derivative(f);
  KPoly g = gcd(f, fp);
  KPoly q, r;
  divmod(f, g, q, r);
  KPoly b = q;
  divmod(fp, g, q, r);
  KPoly c = q;
  KPoly d = poly::sub(c, derivative(b));
  int i = 1;
  while (degree(b) >= 1) {
    KPoly h = gcd(b, d);
    KPoly bq;
    divmod(b, h, bq, r);
    if (degree(h) >= 1) out.emplace_back(monic(h), i);
    KPoly cq;
    divmod(d, h, cq, r);
    b = bq;
    d = poly::sub(cq, derivative(b));
    ++i;
  }
  return out;
}

QPoly add(const QPoly& a, const QPoly& b) {
  QPoly out(std::max(a.size(), b.size()), Rational(0));
  for (size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  trim(out);
  return out;
}

QPoly sub(const QPoly& a, const QPoly& b) {
  QPoly out(std::max(a.size(), b.size()), Rational(0));
  for (size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  trim(out);
  return out;
}

QPoly mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly out(a.size() + b.size() - 1, Rational(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  trim(out);
  return out;
}

void divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r) {
  QPoly d = b;
  trim(d);
  if (d.empty()) throw Error("division-by-zero", "polynomial division by zero");
  r = a;
  trim(r);
  q.assign(r.size() >= d.size() ? r.size() - d.size() + 1 : 0, Rational(0));
  while (r.size() >= d.size()) {
    const size_t shift = r.size() - d.size();
    const Rational c = r.back() / d.back();
    q[shift] = c;
    for (size_t i = 0; i < d.size(); ++i) r[shift + i] -= c * d[i];
    r.pop_back();
    trim(r);
  }
  trim(q);
}

QPoly monic(const QPoly& a) {
  QPoly p = a;
  trim(p);
  if (p.empty()) return p;
  const Rational lead = p.back();
  for (auto& c : p) c /= lead;
  return p;
}

QPoly gcd(const QPoly& a, const QPoly& b) {
  QPoly x = a, y = b;
  trim(x);
  trim(y);
  while (!y.empty()) {
    QPoly q, r;
    divmod(x, y, q, r);
    x = std::move(y);
    y = std::move(r);
  }
  return monic(x);
}

QPoly derivative(const QPoly& a) {
  QPoly out;
  for (size_t i = 1; i < a.size(); ++i) out.push_back(a[i] * static_cast<long>(i));
  trim(out);
  return out;
}

std::vector<std::pair<QPoly, int>> squarefree(const QPoly& a) {
  std::vector<std::pair<QPoly, int>> out;
  QPoly f = monic(a);
  if (degree(f) < 1) return out;
  QPoly fp = derivative(f);
  QPoly g = gcd(f, fp);
  QPoly q, r;
  divmod(f, g, q, r);
  QPoly b = q;
  divmod(fp, g, q, r);
  QPoly d = sub(q, derivative(b));
  int i = 1;
  while (degree(b) >= 1) {
    QPoly h = gcd(b, d);
    QPoly bq, cq;
    divmod(b, h, bq, r);
    if (degree(h) >= 1) out.emplace_back(h, i);
    divmod(d, h, cq, r);
    b = bq;
    d = poly::sub(cq, derivative(b));
    ++i;
  }
  return out;
}

KPoly to_k(const QPoly& a) {
  KPoly out;
  for (const auto& c : a) out.emplace_back(c);
  return out;
}

bool is_rational(const KPoly& a) {
  for (const auto& c : a)
    if (!c.is_rational()) return false;
  return true;
}

QPoly to_q(const KPoly& a) {
  QPoly out;
  for (const auto& c : a) out.push_back(c.to_rational());
  return out;
}

std::string to_string(const KPoly& a, const std::string& var) {
  if (a.empty()) return "0";
  std::string out;
  for (size_t i = a.size(); i-- > 0;) {
    if (a[i].is_zero()) continue;
    if (!out.empty()) out += " + ";
    std::string c = a[i].to_string();
    if (i == 0) {
      out += c;
      continue;
    }
    if (!a[i].is_one()) out += "(" + c + ")*";
    out += var;
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out;
}

}  // namespace poly

KPoly minimal_polynomial(const Matrix& m) {
  if (m.rows() != m.cols()) throw Error("dimension", "minimal polynomial of non-square matrix");
  const size_t n = m.rows();
  struct Row {
    SparseVec<size_t> vec;
    SparseVec<size_t> tag;
  };
  std::map<size_t, Row> rows;
  Matrix power = Matrix::identity(n);
  for (size_t k = 0; k <= n; ++k) {
    SparseVec<size_t> v = to_sparse(power.flatten());
    SparseVec<size_t> tag{{k, CycloNumber(1)}};
    auto it = v.begin();
    while (it != v.end()) {
      auto row = rows.find(it->first);
      if (row == rows.end()) {
        ++it;
        continue;
      }
      const size_t key = it->first;
      const CycloNumber c = it->second;
      sparse_axpy(v, -c, row->second.vec);
      sparse_axpy(tag, -c, row->second.tag);
      it = v.upper_bound(key);
    }
    if (v.empty()) {
      KPoly p(k + 1);
      for (const auto& [i, c] : tag) p[i] = c;
      return poly::monic(p);
    }
    const CycloNumber inv = v.begin()->second.inverse();
    for (auto& [i, c] : v) c *= inv;
    for (auto& [i, c] : tag) c *= inv;
    const size_t pivot = v.begin()->first;
    rows.emplace(pivot, Row{std::move(v), std::move(tag)});
    power = power * m;
  }
  throw Error("internal", "minimal polynomial search exceeded the matrix size");
}

Matrix evaluate(const KPoly& p, const Matrix& m) {
  Matrix acc(m.rows(), m.cols());
  for (size_t i = p.size(); i-- > 0;) {
    acc = acc * m;
    for (size_t d = 0; d < m.rows(); ++d) acc(d, d) += p[i];
  }
  return acc;
}

}  // namespace loomalg
