#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numeric>

#include "doctest.h"
#include "odl/modforms.hpp"

using namespace odl;

TEST_CASE("cusp space dimensions") {
  CHECK(dim_cusp(12) == 1);
  CHECK(dim_cusp(16) == 1);
  CHECK(dim_cusp(24) == 2);
  CHECK(dim_cusp(26) == 1);
  CHECK(dim_cusp(36) == 3);
  for (int k : {4, 6, 8, 10, 14}) CHECK(dim_cusp(k) == 0);
  CHECK_THROWS(dim_cusp(2));
  CHECK_THROWS(dim_cusp(13));
}

TEST_CASE("echelon basis q-expansions") {
  // weight 12: the discriminant form q - 24q^2 + 252q^3 - 1472q^4 + ...
  CuspSpace s12 = victor_miller_basis(12, 8);
  REQUIRE(s12.dim == 1);
  CHECK(s12.basis[0][1] == 1);
  CHECK(s12.basis[0][2] == -24);
  CHECK(s12.basis[0][3] == 252);
  CHECK(s12.basis[0][4] == -1472);
  CHECK(s12.basis[0][5] == 4830);
  CHECK(s12.basis[0][7] == -16744);

  // weight 16: one form, q + 216 q^2 + ...
  CuspSpace s16 = victor_miller_basis(16, 4);
  REQUIRE(s16.dim == 1);
  CHECK(s16.basis[0][1] == 1);
  CHECK(s16.basis[0][2] == 216);

  // echelon property: coefficient of q^j in basis[i-1] is delta_{ij}
  for (int k : {24, 36, 48}) {
    CuspSpace s = victor_miller_basis(k, 20);
    for (int i = 1; i <= s.dim; ++i)
      for (int j = 1; j <= s.dim; ++j)
        CHECK(s.basis[i - 1][j] == (i == j ? 1 : 0));
  }

  CHECK_THROWS(victor_miller_basis(13, 10));
  CHECK_THROWS(victor_miller_basis(10, 10));
}

TEST_CASE("hecke operator matrices") {
  CuspSpace s12 = victor_miller_basis(12, 14);
  auto t2 = hecke_matrix(s12, 2);
  REQUIRE(t2.size() == 1);
  CHECK(t2[0][0] == -24);
  auto t6 = hecke_matrix(s12, 6);
  CHECK(t6[0][0] == -6048);
  CHECK(t6[0][0] == t2[0][0] * 252);  // multiplicative for coprime 2, 3

  CuspSpace s24 = victor_miller_basis(24, 10);
  auto id = hecke_matrix(s24, 1);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(id[i][j] == (i == j ? 1 : 0));

  CHECK_THROWS(hecke_matrix(s12, 100));  // not enough coefficients
}

TEST_CASE("eigenform extraction and normalized eigenvalues") {
  auto forms12 = eigenforms_for_weight(12, 50);
  REQUIRE(forms12.size() == 1);
  CHECK(forms12[0].lambda(1) == 1.0L);
  CHECK((double)forms12[0].lambda(2) ==
        doctest::Approx(-24.0 / std::pow(2.0, 5.5)).epsilon(1e-14));
  CHECK((double)forms12[0].lambda(3) ==
        doctest::Approx(252.0 / std::pow(3.0, 5.5)).epsilon(1e-14));
  CHECK(forms12[0].sign == +1);

  auto forms24 = eigenforms_for_weight(24, 50);
  REQUIRE(forms24.size() == 2);
  for (auto& f : forms24) {
    CHECK(std::fabs((double)f.lambda(2)) <= 2.0);  // divisor-bound box
    CHECK(f.sign == +1);
  }
  // the two weight-24 forms are distinct
  CHECK(std::fabs((double)(forms24[0].lambda(2) - forms24[1].lambda(2))) > 1e-3);

  auto forms26 = eigenforms_for_weight(26, 10);
  REQUIRE(forms26.size() == 1);
  CHECK(forms26[0].sign == -1);  // 26 = 2 mod 4
}

TEST_CASE("hecke multiplicativity for computed forms") {
  for (int k : {12, 24, 36}) {
    auto forms = eigenforms_for_weight(k, 50);
    for (auto& f : forms) {
      for (uint64_t m = 1; m <= 50; ++m)
        for (uint64_t n = m; n <= 50; ++n) {
          long double lhs = f.lambda(m) * f.lambda(n);
          long double rhs = 0.0L;
          for (uint64_t d = 1; d <= std::gcd(m, n); ++d)
            if (m % d == 0 && n % d == 0) rhs += f.lambda(m * n / (d * d));
          CHECK((double)lhs == doctest::Approx((double)rhs).epsilon(1e-9).scale(1.0));
        }
    }
  }
}

TEST_CASE("trace of the hecke matrix matches the eigenvalue sum") {
  for (int k = 12; k <= 60; k += 2) {
    if (dim_cusp(k) == 0) continue;
    CuspSpace s = victor_miller_basis(k, 5 * dim_cusp(k) + 2);
    auto t2 = hecke_matrix(s, 2);
    mpz_class tr = 0;
    for (int i = 0; i < s.dim; ++i) tr += t2[i][i];
    auto forms = eigenforms(s, 5);
    long double sum = 0.0L;
    for (auto& f : forms) sum += f.a_unnormalized(2);
    long double trd = mpf_class(tr, 128).get_d();
    CHECK((double)sum == doctest::Approx((double)trd).epsilon(1e-6));
  }
}

TEST_CASE("eigenform count equals the dimension across weights") {
  for (int k = 12; k <= 200; k += 2) {
    int d = dim_cusp(k);
    if (d == 0) continue;
    auto forms = eigenforms_for_weight(k, 7);
    CHECK((int)forms.size() == d);
    for (auto& f : forms) CHECK(f.sign == ((k % 4 == 0) ? +1 : -1));
  }
}

TEST_CASE("symmetric square truncation") {
  auto forms = eigenforms_for_weight(12, 16000);
  auto& f = forms[0];

  CHECK(sym_sq_truncation(f, 1).value == 1.0L);

  // doubling sweep: successive values differ by at most C X^{-1/2}
  long double prev = sym_sq_truncation(f, 125).value;
  for (uint64_t X = 250; X <= 16000; X *= 2) {
    long double cur = sym_sq_truncation(f, X).value;
    CHECK(std::fabs((double)(cur - prev)) <= 4.0 / std::sqrt((double)X / 2));
    prev = cur;
  }
  // positivity and the coarse logarithmic band around 1
  double band = std::pow(std::log(12.0), 2.0);
  CHECK((double)prev > 1.0 / band);
  CHECK((double)prev < band);

  CHECK_THROWS(sym_sq_truncation(f, 100000));
}

TEST_CASE("weight-2 level-11 eta-product form") {
  auto f = eta_product_level11(100);
  CHECK(f.k == 2);
  CHECK(f.level == 11);
  CHECK((double)f.lambda(2) == doctest::Approx(-2.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK((double)f.lambda(3) == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK((double)f.lambda(11) == doctest::Approx(1.0 / std::sqrt(11.0)).epsilon(1e-15));
  CHECK(f.sign == +1);
  for (uint64_t p : {2, 3, 5, 7, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53,
                     59, 61, 67, 71, 73, 79, 83, 89, 97})
    CHECK(std::fabs((double)f.lambda(p)) <= 2.0);

  // multiplicativity with the level-restricted divisor sum:
  // d | (2,22) with (d,11)=1 allows d in {1,2}, so
  // lambda(2) lambda(22) = lambda(44) + lambda(11)
  long double lhs = f.lambda(2) * f.lambda(22);
  long double rhs = f.lambda(44) + f.lambda(11);
  CHECK((double)lhs == doctest::Approx((double)rhs).epsilon(1e-12).scale(1.0));
  // at the level prime the coefficients are purely multiplicative
  CHECK((double)f.lambda(121) ==
        doctest::Approx((double)(f.lambda(11) * f.lambda(11))).epsilon(1e-12).scale(1.0));
}

TEST_CASE("basis cache round-trips through disk") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "odl_basis_cache_test";
  fs::create_directories(dir);
  fs::remove(dir / "basis_weight_24.txt");

  CuspSpace a = victor_miller_basis_cached(24, 60, dir.string());
  CHECK(fs::exists(dir / "basis_weight_24.txt"));
  CuspSpace b = victor_miller_basis_cached(24, 60, dir.string());
  CuspSpace c = victor_miller_basis_cached(24, 30, dir.string());  // served from file
  REQUIRE(a.dim == 2);
  REQUIRE(b.dim == 2);
  REQUIRE(c.dim == 2);
  for (int i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j <= 60; ++j) CHECK(a.basis[i][j] == b.basis[i][j]);
    for (std::size_t j = 0; j <= 30; ++j) CHECK(a.basis[i][j] == c.basis[i][j]);
  }
  fs::remove_all(dir);
}
