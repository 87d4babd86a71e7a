#include "gradecert/weyl/root_datum.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>

#include "gradecert/error.hpp"

namespace gradecert::weyl {

namespace {

std::vector<std::vector<long long>> cartan_matrix(CartanType type, std::size_t n) {
  std::vector<std::vector<long long>> a(n, std::vector<long long>(n, 0));
  for (std::size_t i = 0; i < n; ++i) a[i][i] = 2;
  auto bond = [&](std::size_t i, std::size_t j) { a[i][j] = a[j][i] = -1; };
  switch (type) {
    case CartanType::A:
      for (std::size_t i = 0; i + 1 < n; ++i) bond(i, i + 1);
      break;
    case CartanType::B:
    case CartanType::C:
      for (std::size_t i = 0; i + 1 < n; ++i) bond(i, i + 1);
      // B: alpha_n short, C: alpha_n long.
      if (type == CartanType::B) a[n - 1][n - 2] = -2;
      else a[n - 2][n - 1] = -2;
      break;
    case CartanType::D:
      for (std::size_t i = 0; i + 2 < n; ++i) bond(i, i + 1);
      bond(n - 3, n - 1);
      break;
    case CartanType::E:
      bond(0, 2);
      bond(1, 3);
      for (std::size_t i = 2; i + 1 < n; ++i) bond(i, i + 1);
      break;
    case CartanType::F:
      bond(0, 1);
      bond(1, 2);
      bond(2, 3);
      a[2][1] = -2;
      break;
    case CartanType::G:
      a[0][1] = -3;
      a[1][0] = -1;
      break;
  }
  return a;
}

void check_rank(CartanType type, std::size_t n) {
  bool ok = false;
  switch (type) {
    case CartanType::A: ok = n >= 1; break;
    case CartanType::B:
    case CartanType::C: ok = n >= 2; break;
    case CartanType::D: ok = n >= 4; break;
    case CartanType::E: ok = n >= 6 && n <= 8; break;
    case CartanType::F: ok = n == 4; break;
    case CartanType::G: ok = n == 2; break;
  }
  require(ok, ErrorKind::InvalidArgument, "no root system of this type and rank");
}

char type_letter(CartanType t) { return "ABCDEFG"[static_cast<int>(t)]; }

}  // namespace

IntVec RootDatum::root_weight(std::size_t k) const {
  const IntVec& a = positive_roots[k];
  IntVec w(rank, 0);
  for (std::size_t i = 0; i < rank; ++i)
    for (std::size_t j = 0; j < rank; ++j) w[i] += cartan[i][j] * a[j];
  return w;
}

long long RootDatum::pair_coroot(const IntVec& lambda, std::size_t k) const {
  long long s = 0;
  for (std::size_t i = 0; i < rank; ++i) s += positive_coroots[k][i] * lambda[i];
  return s;
}

long long RootDatum::height(std::size_t k) const {
  return std::accumulate(positive_roots[k].begin(), positive_roots[k].end(), 0LL);
}

bool RootDatum::is_long(std::size_t k) const {
  auto norm = [&](const IntVec& a) {
    long long s = 0;
    for (std::size_t i = 0; i < rank; ++i)
      for (std::size_t j = 0; j < rank; ++j) s += a[i] * a[j] * symmetrizer[i] * cartan[i][j];
    return s;
  };
  long long top = 0;
  for (const auto& r : positive_roots) top = std::max(top, norm(r));
  return norm(positive_roots[k]) == top;
}

RootDatum root_datum(CartanType type, std::size_t n) {
  check_rank(type, n);
  RootDatum d;
  d.type = type;
  d.rank = n;
  d.name = std::string(1, type_letter(type)) + std::to_string(n);
  d.cartan = cartan_matrix(type, n);
  const auto& a = d.cartan;

  // d_i a_ij = d_j a_ji along the Dynkin diagram.
  std::vector<mpq_class> sym(n, 0);
  sym[0] = 1;
  std::vector<std::size_t> stack = {0};
  while (!stack.empty()) {
    const std::size_t i = stack.back();
    stack.pop_back();
    for (std::size_t j = 0; j < n; ++j)
      if (j != i && a[i][j] != 0 && sym[j] == 0) {
        sym[j] = sym[i] * static_cast<long>(a[i][j]) / static_cast<long>(a[j][i]);
        stack.push_back(j);
      }
  }
  mpz_class den = 1;
  for (const auto& s : sym) den = lcm(den, mpz_class(s.get_den()));
  mpz_class g = 0;
  for (const auto& s : sym) g = gcd(g, mpz_class(s * den));
  for (const auto& s : sym) d.symmetrizer.push_back(mpz_class(s * den / g).get_si());

  // Orbit of the simple roots under the simple reflections.
  std::set<IntVec> roots;
  std::vector<IntVec> frontier;
  for (std::size_t i = 0; i < n; ++i) {
    IntVec e(n, 0);
    e[i] = 1;
    roots.insert(e);
    frontier.push_back(e);
  }
  while (!frontier.empty()) {
    IntVec b = frontier.back();
    frontier.pop_back();
    for (std::size_t i = 0; i < n; ++i) {
      long long c = 0;
      for (std::size_t j = 0; j < n; ++j) c += a[i][j] * b[j];
      IntVec r = b;
      r[i] -= c;
      if (roots.insert(r).second) frontier.push_back(r);
    }
  }
  for (const auto& r : roots)
    if (std::all_of(r.begin(), r.end(), [](long long x) { return x >= 0; })) d.positive_roots.push_back(r);
  std::stable_sort(d.positive_roots.begin(), d.positive_roots.end(), [](const IntVec& x, const IntVec& y) {
    return std::accumulate(x.begin(), x.end(), 0LL) < std::accumulate(y.begin(), y.end(), 0LL);
  });

  auto norm2 = [&](const IntVec& r) {  // (r, r) in symmetrizer units
    long long s = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) s += r[i] * r[j] * d.symmetrizer[i] * a[i][j];
    return s;
  };
  long long short_norm = -1;
  for (const auto& r : d.positive_roots) {
    const long long nr = norm2(r);
    short_norm = short_norm < 0 ? nr : std::min(short_norm, nr);
    IntVec c(n);
    for (std::size_t i = 0; i < n; ++i) {
      const long long num = 2 * r[i] * d.symmetrizer[i];
      require(num % nr == 0, ErrorKind::Internal, "coroot coefficient is not integral");
      c[i] = num / nr;
    }
    d.positive_coroots.push_back(c);
  }
  d.highest_root = d.positive_roots.size() - 1;
  for (std::size_t k = 0; k < d.positive_roots.size(); ++k)
    if (norm2(d.positive_roots[k]) == short_norm) d.highest_short_root = k;
  d.coxeter_number = static_cast<int>(d.height(d.highest_root)) + 1;
  d.rho.assign(n, 1);

  // omega = (A^T)^{-1} alpha.
  std::vector<std::vector<mpq_class>> m(n, std::vector<mpq_class>(2 * n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = static_cast<long>(a[j][i]);
    m[i][n + i] = 1;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (m[piv][col] == 0) ++piv;
    std::swap(m[piv], m[col]);
    const mpq_class inv = 1 / m[col][col];
    for (auto& x : m[col]) x *= inv;
    for (std::size_t r = 0; r < n; ++r)
      if (r != col && m[r][col] != 0) {
        const mpq_class f = m[r][col];
        for (std::size_t c = 0; c < 2 * n; ++c) m[r][c] -= f * m[col][c];
      }
  }
  for (std::size_t i = 0; i < n; ++i) d.fundamental_weights.emplace_back(m[i].begin() + n, m[i].end());
  return d;
}

RootDatum parse_root_datum(const std::string& name) {
  require(name.size() >= 2, ErrorKind::Parse, "root system name like A2 or G2 expected");
  const std::string letters = "ABCDEFG";
  const auto pos = letters.find(static_cast<char>(std::toupper(static_cast<unsigned char>(name[0]))));
  require(pos != std::string::npos, ErrorKind::Parse, "unknown Cartan type '" + name + "'");
  std::size_t rank = 0;
  for (std::size_t i = 1; i < name.size(); ++i) {
    require(std::isdigit(static_cast<unsigned char>(name[i])) != 0, ErrorKind::Parse, "bad rank in '" + name + "'");
    rank = rank * 10 + static_cast<std::size_t>(name[i] - '0');
  }
  return root_datum(static_cast<CartanType>(pos), rank);
}

}  // namespace gradecert::weyl
