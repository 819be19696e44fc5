#include "dpz/tripoly.hpp"

#include <sstream>

namespace dpz {

PPoint::PPoint(FV a, FV b, FV c) {
  if (a.is_zero() && b.is_zero() && c.is_zero())
    fail("BadPoint", "[0:0:0] is not a point");
  x = {a, b, c};
  for (int i = 0; i < 3; ++i)
    if (!x[i].is_zero()) {
      FV inv = fv_inv(x[i]);
      for (int j = 0; j < 3; ++j) x[j] = x[j] * inv;
      break;
    }
}

PPoint PPoint::parse(const FieldPtr& f, const std::string& text) {
  auto l = text.find('['), r = text.rfind(']');
  std::string body =
      (l != std::string::npos && r != std::string::npos && r > l)
          ? text.substr(l + 1, r - l - 1)
          : text;
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : body) {
    if (ch == ':') {
      parts.push_back(cur);
      cur.clear();
    } else
      cur += ch;
  }
  parts.push_back(cur);
  if (parts.size() != 3) fail("ParseError", "point literal [a:b:c]");
  return PPoint(FV::parse(f, parts[0]), FV::parse(f, parts[1]),
                FV::parse(f, parts[2]));
}

void TriPoly::add_term(const std::array<int, 3>& e, const FV& c) {
  auto it = terms.find(e);
  if (it == terms.end()) {
    if (!c.is_zero()) terms.emplace(e, c);
  } else {
    it->second = it->second + c;
    if (it->second.is_zero()) terms.erase(it);
  }
}

int TriPoly::degree() const {
  int d = -1;
  for (auto& [e, c] : terms) d = std::max(d, e[0] + e[1] + e[2]);
  return d;
}

bool TriPoly::homogeneous() const {
  int d = degree();
  for (auto& [e, c] : terms)
    if (e[0] + e[1] + e[2] != d) return false;
  return true;
}

TriPoly TriPoly::parse(const FieldPtr& f, const std::string& text) {
  std::vector<std::string> vars = {"x", "y", "z"};
  if (f->kind == FieldKind::Ext) vars.push_back(f->gen);
  if (f->kind == FieldKind::RationalFunctions)
    for (auto& v : f->vars) vars.push_back(v);
  MPoly m = parse_mpoly(text, vars, f->characteristic());
  TriPoly F(f);
  for (auto& [e, co] : m.terms) {
    FV coeff = FV::of_q(f, co);
    if (f->kind == FieldKind::Ext && e.size() > 3 && e[3] > 0)
      coeff = coeff * fv_pow(FV::of_ext(f, {0, 1}), e[3]);
    if (f->kind == FieldKind::RationalFunctions) {
      int nv = (int)f->vars.size();
      Int chr = f->characteristic();
      for (int v = 0; v < nv; ++v)
        if (e[3 + v] > 0) {
          MPoly var = MPoly::variable(nv, chr, v);
          MPoly pw = MPoly::constant(nv, chr, 1);
          for (int k = 0; k < e[3 + v]; ++k) pw = pw * var;
          coeff = coeff * FV::of_frac(f, MFrac(pw, MPoly::constant(nv, chr, 1)));
        }
    }
    F.add_term({e[0], e[1], e[2]}, coeff);
  }
  return F;
}

TriPoly TriPoly::operator+(const TriPoly& o) const {
  TriPoly r = *this;
  for (auto& [e, c] : o.terms) r.add_term(e, c);
  return r;
}

TriPoly TriPoly::operator-(const TriPoly& o) const {
  TriPoly r = *this;
  for (auto& [e, c] : o.terms) r.add_term(e, -c);
  return r;
}

TriPoly TriPoly::operator*(const TriPoly& o) const {
  TriPoly r(f);
  for (auto& [e1, c1] : terms)
    for (auto& [e2, c2] : o.terms)
      r.add_term({e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]}, c1 * c2);
  return r;
}

TriPoly TriPoly::scaled(const FV& k) const {
  TriPoly r(f);
  for (auto& [e, c] : terms) r.add_term(e, c * k);
  return r;
}

bool TriPoly::proportional(const TriPoly& o) const {
  if (is_zero() || o.is_zero()) return is_zero() && o.is_zero();
  if (terms.size() != o.terms.size()) return false;
  auto it = terms.begin();
  auto jt = o.terms.find(it->first);
  if (jt == o.terms.end()) return false;
  FV k = jt->second / it->second;
  for (auto& [e, c] : terms) {
    auto ot = o.terms.find(e);
    if (ot == o.terms.end() || !(ot->second == c * k)) return false;
  }
  return true;
}

FV TriPoly::eval(const FV& a, const FV& b, const FV& c) const {
  FV acc = FV::zero(f);
  for (auto& [e, co] : terms)
    acc = acc + co * fv_pow(a, e[0]) * fv_pow(b, e[1]) * fv_pow(c, e[2]);
  return acc;
}

FV TriPoly::eval(const PPoint& p) const { return eval(p.x[0], p.x[1], p.x[2]); }

BinForm TriPoly::pullback(const std::array<BinForm, 3>& param) const {
  if (terms.empty()) return BinForm(f, 0);
  int d = degree();
  int pd = param[0].deg();
  BinForm acc(f, d * pd);
  for (auto& [e, co] : terms) {
    BinForm term(f, 0);
    term.c[0] = co;
    for (int v = 0; v < 3; ++v)
      for (int k = 0; k < e[v]; ++k) term = term * param[v];
    // pad to full degree (monomials of equal total degree give equal form deg)
    if (term.deg() != acc.deg()) fail("DegreeMismatch", "pullback of inhomogeneous F");
    acc = acc + term;
  }
  return acc;
}

std::string TriPoly::str() const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  const char* names = "xyz";
  for (auto& [e, c] : terms) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")";
    for (int v = 0; v < 3; ++v) {
      if (!e[v]) continue;
      os << "*" << names[v];
      if (e[v] > 1) os << "^" << e[v];
    }
  }
  return os.str();
}

Mat3 Mat3::identity(const FieldPtr& f) {
  Mat3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m.a[i][j] = i == j ? FV::one(f) : FV::zero(f);
  return m;
}

Mat3 Mat3::from_columns(const PPoint& c0, const PPoint& c1, const PPoint& c2) {
  Mat3 m;
  for (int i = 0; i < 3; ++i) {
    m.a[i][0] = c0.x[i];
    m.a[i][1] = c1.x[i];
    m.a[i][2] = c2.x[i];
  }
  return m;
}

PPoint Mat3::apply(const PPoint& p) const {
  std::array<FV, 3> y;
  for (int i = 0; i < 3; ++i) {
    y[i] = a[i][0] * p.x[0] + a[i][1] * p.x[1] + a[i][2] * p.x[2];
  }
  return PPoint(y[0], y[1], y[2]);
}

std::array<BinForm, 3> Mat3::apply(const std::array<BinForm, 3>& forms) const {
  std::array<BinForm, 3> out;
  for (int i = 0; i < 3; ++i) {
    BinForm acc(forms[0].f, forms[0].deg());
    for (int j = 0; j < 3; ++j) acc = acc + forms[j].scaled(a[i][j]);
    out[i] = acc;
  }
  return out;
}

Mat3 Mat3::mul(const Mat3& o) const {
  Mat3 r;
  FieldPtr f = a[0][0].f;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      FV acc = FV::zero(f);
      for (int k = 0; k < 3; ++k) acc = acc + a[i][k] * o.a[k][j];
      r.a[i][j] = acc;
    }
  return r;
}

FV Mat3::det() const {
  return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
         a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
         a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

Mat3 Mat3::inverse() const {
  FV d = det();
  if (d.is_zero()) fail("Singular", "matrix not invertible");
  Mat3 r;
  FV inv = fv_inv(d);
  auto cof = [&](int i, int j) {
    int i1 = (i + 1) % 3, i2 = (i + 2) % 3, j1 = (j + 1) % 3, j2 = (j + 2) % 3;
    return a[i1][j1] * a[i2][j2] - a[i1][j2] * a[i2][j1];
  };
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r.a[i][j] = cof(j, i) * inv;
  return r;
}

std::string Mat3::str() const {
  std::string s = "[";
  for (int i = 0; i < 3; ++i) {
    s += "[";
    for (int j = 0; j < 3; ++j) s += a[i][j].str() + (j < 2 ? "," : "");
    s += std::string("]") + (i < 2 ? "," : "");
  }
  return s + "]";
}

TriPoly substitute(const TriPoly& F, const Mat3& M) {
  FieldPtr f = F.f;
  // images of x,y,z as linear TriPolys
  std::array<TriPoly, 3> img;
  for (int i = 0; i < 3; ++i) {
    img[i] = TriPoly(f);
    img[i].add_term({1, 0, 0}, M.a[i][0]);
    img[i].add_term({0, 1, 0}, M.a[i][1]);
    img[i].add_term({0, 0, 1}, M.a[i][2]);
  }
  TriPoly out(f);
  for (auto& [e, c] : F.terms) {
    TriPoly term(f);
    term.add_term({0, 0, 0}, c);
    for (int v = 0; v < 3; ++v)
      for (int k = 0; k < e[v]; ++k) term = term * img[v];
    out = out + term;
  }
  return out;
}

int multiplicity_at(const TriPoly& F, const PPoint& p) {
  if (F.is_zero()) fail("ZeroForm", "multiplicity of the zero polynomial");
  FieldPtr f = F.f;
  // move p to [0:0:1] by a matrix with p as third column
  std::array<std::array<FV, 3>, 3> cols;
  int pivot = -1;
  for (int i = 0; i < 3; ++i)
    if (!p.x[i].is_zero()) pivot = i;
  // complete to a basis with two unit vectors other than the pivot slot
  std::vector<PPoint> basis;
  FieldPtr fld = f;
  for (int i = 0; i < 3; ++i) {
    if (i == pivot) continue;
    std::array<FV, 3> u = {FV::zero(fld), FV::zero(fld), FV::zero(fld)};
    u[i] = FV::one(fld);
    basis.emplace_back(u[0], u[1], u[2]);
  }
  Mat3 M = Mat3::from_columns(basis[0], basis[1], p);
  TriPoly G = substitute(F, M);
  // multiplicity = min over terms of deg - z-exponent
  int d = G.degree();
  int m = d;
  for (auto& [e, c] : G.terms) m = std::min(m, d - e[2]);
  return m;
}

std::vector<std::vector<FV>> kernel_basis(std::vector<std::vector<FV>> rows,
                                          int ncols, const FieldPtr& f) {
  int nr = (int)rows.size();
  std::vector<int> pivot_of_col(ncols, -1);
  int rank = 0;
  for (int col = 0; col < ncols && rank < nr; ++col) {
    int pr = -1;
    for (int r = rank; r < nr; ++r)
      if (!rows[r][col].is_zero()) {
        pr = r;
        break;
      }
    if (pr < 0) continue;
    std::swap(rows[pr], rows[rank]);
    FV inv = fv_inv(rows[rank][col]);
    for (int j = 0; j < ncols; ++j) rows[rank][j] = rows[rank][j] * inv;
    for (int r = 0; r < nr; ++r)
      if (r != rank && !rows[r][col].is_zero()) {
        FV k = rows[r][col];
        for (int j = 0; j < ncols; ++j)
          rows[r][j] = rows[r][j] - k * rows[rank][j];
      }
    pivot_of_col[col] = rank;
    ++rank;
  }
  std::vector<std::vector<FV>> basis;
  for (int col = 0; col < ncols; ++col) {
    if (pivot_of_col[col] >= 0) continue;
    std::vector<FV> v(ncols, FV::zero(f));
    v[col] = FV::one(f);
    for (int c2 = 0; c2 < ncols; ++c2)
      if (pivot_of_col[c2] >= 0) v[c2] = -rows[pivot_of_col[c2]][col];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace dpz
