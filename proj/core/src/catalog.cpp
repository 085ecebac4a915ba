#include "latidx/catalog.hpp"

#include <algorithm>
#include <map>
#include <string_view>

namespace latidx {

namespace {

IntMatrix cartan_from_edges(std::size_t n, std::initializer_list<std::pair<int, int>> edges) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 2;
  for (auto [a, b] : edges) {
    m(a - 1, b - 1) = -1;
    m(b - 1, a - 1) = -1;
  }
  return m;
}

}  // namespace

GramMatrix root_lattice(RootFamily family, std::size_t n) {
  switch (family) {
    case RootFamily::A: {
      if (n < 1) throw ValidationError("A_n needs n >= 1");
      IntMatrix m(n, n);
      for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 2;
        if (i + 1 < n) m(i, i + 1) = m(i + 1, i) = -1;
      }
      return make_gram(m);
    }
    case RootFamily::D: {
      if (n < 4) throw ValidationError("D_n needs n >= 4");
      IntMatrix m(n, n);
      for (std::size_t i = 0; i < n; ++i) m(i, i) = 2;
      for (std::size_t i = 0; i + 2 < n; ++i) m(i, i + 1) = m(i + 1, i) = -1;
      m(n - 1, n - 3) = m(n - 3, n - 1) = -1;
      return make_gram(m);
    }
    case RootFamily::E: {
      // Bourbaki numbering: 1-3-4-5-6-7-8 with 2 attached to 4
      if (n == 6) return make_gram(cartan_from_edges(6, {{1, 3}, {3, 4}, {4, 5}, {5, 6}, {2, 4}}));
      if (n == 7)
        return make_gram(cartan_from_edges(7, {{1, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {2, 4}}));
      if (n == 8)
        return make_gram(
            cartan_from_edges(8, {{1, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}, {2, 4}}));
      throw ValidationError("E_n exists only for n = 6, 7, 8");
    }
  }
  throw ValidationError("unknown root family");
}

GlueResult glue(const GlueSpec& spec) {
  const std::size_t n = spec.base.dim();
  std::vector<std::vector<Rational>> vs = spec.glue_vectors;
  std::vector<Rational> all;
  for (auto& v : vs) {
    if (v.size() != n) throw DimensionError("glue vector length must equal the base dimension");
    for (auto& x : v) x.canonicalize();
    all.insert(all.end(), v.begin(), v.end());
  }
  const Integer l = all.empty() ? Integer(1) : lcm_of_denominators(all);

  IntMatrix stacked(0, n);
  std::vector<Integer> row(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(row.begin(), row.end(), Integer(0));
    row[i] = l;
    stacked.append_row(row);
  }
  for (const auto& v : vs) {
    for (std::size_t j = 0; j < n; ++j) {
      Rational t = v[j] * l;
      row[j] = t.get_num();
    }
    stacked.append_row(row);
  }
  IntMatrix h = hnf(stacked);

  GlueResult out{spec.base, 1, RatMatrix(n, n)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      out.basis(i, j) = Rational(h(i, j), l);
      out.basis(i, j).canonicalize();
    }
  Integer l_pow = 1;
  for (std::size_t i = 0; i < n; ++i) l_pow *= l;
  out.index = l_pow / abs(det_exact(h));
  out.gram = spec.base.change_basis(out.basis);
  return out;
}

GramMatrix family_base(const FamilySpec& spec) {
  const std::size_t n = spec.n;
  if (n == 0) throw DimensionError("family dimension must be >= 1");
  std::size_t m = 0;
  for (std::size_t b : spec.blocks) m += b;
  if (m > n) throw ValidationError("block sizes add up to more than n");

  std::vector<std::size_t> block_of(n, 0);  // 0: outside the support
  std::size_t pos = 0;
  for (std::size_t b = 0; b < spec.blocks.size(); ++b)
    for (std::size_t k = 0; k < spec.blocks[b]; ++k) block_of[pos++] = b + 1;

  const std::size_t k = spec.blocks.size();
  auto pair_index = [k](std::size_t a, std::size_t b) {
    // a < b, 1-based blocks; pairs ordered (1,2), (1,3), ..., (2,3), ...
    std::size_t idx = 0;
    for (std::size_t r = 1; r < a; ++r) idx += k - r;
    return idx + (b - a - 1);
  };

  RatMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    g(i, i) = 1;
    for (std::size_t j = i + 1; j < n; ++j) {
      std::size_t a = block_of[i], b = block_of[j];
      Rational v = 0;
      if (a != 0 && b != 0) {
        if (a == b) {
          if (a - 1 < spec.x.size()) v = spec.x[a - 1];
        } else {
          std::size_t p = pair_index(std::min(a, b), std::max(a, b));
          if (p < spec.y.size()) v = spec.y[p];
        }
      }
      g(i, j) = g(j, i) = v;
    }
  }
  for (const auto& o : spec.overrides) {
    if (o.i >= n || o.j >= n) throw ValidationError("override index out of range");
    g(o.i, o.j) = g(o.j, o.i) = o.value;
  }
  return make_gram(std::move(g));
}

std::vector<Rational> family_glue_vector(const FamilySpec& spec) {
  if (spec.d < 2) throw ValidationError("family denominator d must be >= 2");
  std::vector<Rational> e(spec.n, Rational(0));
  std::size_t pos = 0;
  for (std::size_t b = 0; b < spec.blocks.size(); ++b)
    for (std::size_t k = 0; k < spec.blocks[b] && pos < spec.n; ++k) {
      e[pos] = Rational(static_cast<unsigned long>(b + 1), static_cast<unsigned long>(spec.d));
      e[pos].canonicalize();
      ++pos;
    }
  return e;
}

GlueResult build_family(const FamilySpec& spec) {
  return glue(GlueSpec{family_base(spec), {family_glue_vector(spec)}});
}

namespace {

const std::map<std::string, std::vector<long>, std::less<>>& verbatim() {
  static const std::map<std::string, std::vector<long>, std::less<>> table = {
      {"eutactic-path-7",
       {4,  2,  2,  -2, -2, -1, -1,  //
        2,  4,  2,  -2, -2, 1,  -2,  //
        2,  2,  4,  0,  0,  -1, -2,  //
        -2, -2, 0,  4,  2,  -1, 0,   //
        -2, -2, 0,  2,  4,  0,  0,   //
        -1, 1,  -1, -1, 0,  4,  -1,  //
        -1, -2, -2, 0,  0,  -1, 4}},
      {"An11i234",
       {8600, 1756, 1756, 1756, 1756, 2135, 2135, 2135, 2135, 2135, 2135,  //
        1756, 1440, 160,  160,  160,  412,  412,  412,  412,  412,  412,   //
        1756, 160,  1440, 160,  160,  412,  412,  412,  412,  412,  412,   //
        1756, 160,  160,  1440, 160,  412,  412,  412,  412,  412,  412,   //
        1756, 160,  160,  160,  1440, 412,  412,  412,  412,  412,  412,   //
        2135, 412,  412,  412,  412,  1440, 360,  360,  360,  360,  360,   //
        2135, 412,  412,  412,  412,  360,  1440, 360,  360,  360,  360,   //
        2135, 412,  412,  412,  412,  360,  360,  1440, 360,  360,  360,   //
        2135, 412,  412,  412,  412,  360,  360,  360,  1440, 360,  360,   //
        2135, 412,  412,  412,  412,  360,  360,  360,  360,  1440, 360,   //
        2135, 412,  412,  412,  412,  360,  360,  360,  360,  360,  1440}},
      {"An15i34",
       {1836, 816,  816,  816,  816,  816,  816,  816,  816,  819,  819,  819,  819,  819,  819,   //
        816,  1728, 192,  192,  192,  192,  192,  192,  192,  364,  364,  364,  364,  364,  364,   //
        816,  192,  1728, 192,  192,  192,  192,  192,  192,  364,  364,  364,  364,  364,  364,   //
        816,  192,  192,  1728, 192,  192,  192,  192,  192,  364,  364,  364,  364,  364,  364,   //
        816,  192,  192,  192,  1728, 192,  192,  192,  192,  364,  364,  364,  364,  364,  364,   //
        816,  192,  192,  192,  192,  1728, 192,  192,  192,  364,  364,  364,  364,  364,  364,   //
        816,  192,  192,  192,  192,  192,  1728, 192,  192,  364,  364,  364,  364,  364,  364,   //
        816,  192,  192,  192,  192,  192,  192,  1728, 192,  364,  364,  364,  364,  364,  364,   //
        816,  192,  192,  192,  192,  192,  192,  192,  1728, 364,  364,  364,  364,  364,  364,   //
        819,  364,  364,  364,  364,  364,  364,  364,  364,  1728, 144,  144,  144,  144,  144,   //
        819,  364,  364,  364,  364,  364,  364,  364,  364,  144,  1728, 144,  144,  144,  144,   //
        819,  364,  364,  364,  364,  364,  364,  364,  364,  144,  144,  1728, 144,  144,  144,   //
        819,  364,  364,  364,  364,  364,  364,  364,  364,  144,  144,  144,  1728, 144,  144,   //
        819,  364,  364,  364,  364,  364,  364,  364,  364,  144,  144,  144,  144,  1728, 144,   //
        819,  364,  364,  364,  364,  364,  364,  364,  364,  144,  144,  144,  144,  144,  1728}},
      {"index5-s9",
       {1404, 534,  534,  534,  702,  697,  697,  697,   //
        534,  1200, 240,  240,  300,  75,   75,   75,    //
        534,  240,  1200, 240,  300,  75,   75,   75,    //
        534,  240,  240,  1200, 300,  75,   75,   75,    //
        702,  300,  300,  300,  1200, 185,  185,  185,   //
        697,  75,   75,   75,   185,  1200, 150,  150,   //
        697,  75,   75,   75,   185,  150,  1200, 150,   //
        697,  75,   75,   75,   185,  150,  150,  1200}},
      {"M32",
       {4, 0, 0, 2, 0, 0, 0, 0,  //
        0, 4, 0, 2, 0, 0, 0, 2,  //
        0, 0, 4, 2, 0, 2, 0, 0,  //
        2, 2, 2, 4, 0, 2, 0, 2,  //
        0, 0, 0, 0, 4, 2, 0, 0,  //
        0, 0, 2, 2, 2, 4, 0, 2,  //
        0, 0, 0, 0, 0, 0, 4, 2,  //
        0, 2, 0, 2, 0, 2, 2, 5}},
      {"W75",
       {4, 2, 2, 2, 2, 2, 2, 1,  //
        2, 4, 0, 0, 0, 2, 0, 2,  //
        2, 0, 4, 2, 2, 0, 0, 0,  //
        2, 0, 2, 4, 2, 0, 0, 0,  //
        2, 0, 2, 2, 4, 0, 0, 0,  //
        2, 2, 0, 0, 0, 4, 0, 0,  //
        2, 0, 0, 0, 0, 0, 4, 0,  //
        1, 2, 0, 0, 0, 0, 0, 4}},
  };
  return table;
}

std::optional<std::size_t> parse_dimension(std::string_view digits) {
  if (digits.empty() || digits.size() > 3) return std::nullopt;
  std::size_t v = 0;
  for (char c : digits) {
    if (c < '0' || c > '9') return std::nullopt;
    v = v * 10 + static_cast<std::size_t>(c - '0');
  }
  if (digits[0] == '0') return std::nullopt;
  return v;
}

}  // namespace

std::vector<std::string> catalog_names() {
  std::vector<std::string> names;
  for (const auto& [name, entries] : verbatim()) names.push_back(name);
  return names;
}

std::optional<GramMatrix> find_named_matrix(const std::string& name) {
  const auto& table = verbatim();
  if (auto it = table.find(name); it != table.end()) {
    const auto& v = it->second;
    std::size_t n = 0;
    while (n * n < v.size()) ++n;
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = v[i * n + j];
    return make_gram(m);
  }
  if (name.size() < 2) return std::nullopt;
  auto dim = parse_dimension(std::string_view(name).substr(1));
  if (!dim) return std::nullopt;
  try {
    switch (name[0]) {
      case 'A': return root_lattice(RootFamily::A, *dim);
      case 'D': return root_lattice(RootFamily::D, *dim);
      case 'E': return root_lattice(RootFamily::E, *dim);
      case 'Z': return make_gram(IntMatrix::identity(*dim));
      default: return std::nullopt;
    }
  } catch (const ValidationError&) {
    return std::nullopt;
  }
}

GramMatrix named_matrix(const std::string& name) {
  if (auto g = find_named_matrix(name)) return *g;
  std::string list;
  for (const auto& n : catalog_names()) list += (list.empty() ? "" : ", ") + n;
  throw ValidationError("unknown catalog name '" + name + "'; available: " + list +
                        ", A<n>, D<n> (n >= 4), E6, E7, E8, Z<n>");
}

}  // namespace latidx
