#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "oracles.hpp"
#include "qcss/gf2.hpp"
#include "qcss/rng.hpp"

using namespace qcss;

namespace {

BinMatrix from_rows(const std::vector<std::string>& rows) {
    BinMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows[r].size(); ++c)
            if (rows[r][c] == '1') m.set(r, c, true);
    return m;
}

// length-6 dimension-3 example code used throughout
BinMatrix example_h() {
    return from_rows({"111100", "001100", "000111"});
}

}  // namespace

TEST_CASE("BinVector bit plumbing") {
    BinVector v(131);
    CHECK(v.size() == 131);
    CHECK(v.is_zero());
    v.set(0, true);
    v.set(64, true);
    v.set(130, true);
    CHECK(v.weight() == 3);
    CHECK(v.get(64));
    CHECK_FALSE(v.get(63));
    v.flip(64);
    CHECK_FALSE(v.get(64));
    CHECK(v.support() == std::vector<std::size_t>{0, 130});

    BinVector w(131);
    w.set(0, true);
    CHECK((v ^ w).support() == std::vector<std::size_t>{130});
    CHECK(v.dot(w) == 1);
    w.set(130, true);
    CHECK(v.dot(w) == 0);
}

TEST_CASE("rank examples") {
    CHECK(rank(BinMatrix::identity(3)) == 3);
    CHECK(rank(example_h()) == 3);
    CHECK(rank(BinMatrix(4, 7)) == 0);
}

TEST_CASE("nullspace_basis examples") {
    CHECK(nullspace_basis(BinMatrix::identity(5)).empty());

    const BinMatrix h = example_h();
    const auto basis = nullspace_basis(h);
    CHECK(basis.size() == 3);
    for (const auto& v : basis) CHECK(h.mul(v).is_zero());

    const auto rep = nullspace_basis(from_rows({"11"}));
    REQUIRE(rep.size() == 1);
    CHECK(rep[0].get(0));
    CHECK(rep[0].get(1));
}

TEST_CASE("mat_mul examples") {
    Rng rng(42);
    const BinMatrix a = oracle::random_matrix(rng, 4, 4);
    CHECK(mat_mul(BinMatrix::identity(4), a) == a);

    // p=3 cyclic down-shift: P*P = shift by two
    const BinMatrix p3 = from_rows({"001", "100", "010"});
    const BinMatrix p3sq = from_rows({"010", "001", "100"});
    CHECK(mat_mul(p3, p3) == p3sq);

    const BinMatrix h = example_h();
    const BinMatrix gram = mat_mul(h, h.transposed());
    CHECK(gram == from_rows({"001", "001", "111"}));
    CHECK_FALSE(gram.get(0, 0));
    CHECK_FALSE(gram.get(1, 1));
    CHECK(gram.get(2, 2));

    CHECK_THROWS(mat_mul(BinMatrix(2, 3), BinMatrix(2, 3)));
}

TEST_CASE("solve examples") {
    BinVector r(3);
    r.set(1, true);
    const auto x = solve(BinMatrix::identity(3), r);
    REQUIRE(x.has_value());
    CHECK(*x == r);

    BinVector one(1);
    one.set(0, true);
    const auto under = solve(from_rows({"11"}), one);
    REQUIRE(under.has_value());
    CHECK(from_rows({"11"}).mul(*under) == one);

    BinVector rhs(2);
    rhs.set(0, true);
    CHECK_FALSE(solve(from_rows({"1", "1"}), rhs).has_value());

    CHECK_THROWS(solve(BinMatrix(2, 2), BinVector(3)));
}

TEST_CASE("in_rowspace examples") {
    const BinMatrix h = example_h();
    for (std::size_t r = 0; r < h.rows(); ++r) CHECK(in_rowspace(h, h.row(r)));
    CHECK(in_rowspace(h, BinVector(6)));

    BinVector ones(6);
    for (std::size_t i = 0; i < 6; ++i) ones.set(i, true);
    CHECK(in_rowspace(h, ones) == oracle::in_rowspace_brute(h, ones));
    CHECK_FALSE(in_rowspace(h, ones));

    CHECK_THROWS(in_rowspace(h, BinVector(5)));
}

TEST_CASE("linear algebra properties on random matrices") {
    Rng rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t rows = 1 + rng.below(10);
        const std::size_t cols = 1 + rng.below(20);
        const BinMatrix m = oracle::random_matrix(rng, rows, cols);

        const std::size_t rk = rank(m);
        CHECK(rk == rank(m.transposed()));
        CHECK(rk == oracle::dense_rank(oracle::to_dense(m)));

        const auto basis = nullspace_basis(m);
        CHECK(cols == rk + basis.size());
        for (const auto& v : basis) CHECK(m.mul(v).is_zero());

        const BinVector rhs = m.mul(rng.random_vector(cols));
        const auto x = solve(m, rhs);
        REQUIRE(x.has_value());
        CHECK(m.mul(*x) == rhs);

        if (rows <= 12) {
            const BinVector probe = rng.random_vector(cols);
            CHECK(in_rowspace(m, probe) == oracle::in_rowspace_brute(m, probe));
        }
    }
}

TEST_CASE("rref shape is canonical") {
    Rng rng(19);
    for (int trial = 0; trial < 20; ++trial) {
        const BinMatrix m = oracle::random_matrix(rng, 2 + rng.below(8), 2 + rng.below(12));
        const Rref rr = rref(m);
        CHECK(rr.rank == rank(m));
        CHECK(rr.pivot_cols.size() == rr.rank);
        for (std::size_t i = 0; i < rr.rank; ++i) {
            // pivot columns are strictly increasing unit columns
            if (i > 0) CHECK(rr.pivot_cols[i - 1] < rr.pivot_cols[i]);
            for (std::size_t r = 0; r < rr.mat.rows(); ++r)
                CHECK(rr.mat.get(r, rr.pivot_cols[i]) == (r == i));
        }
        // rows below the rank are zero
        for (std::size_t r = rr.rank; r < rr.mat.rows(); ++r)
            CHECK(rr.mat.row_weight(r) == 0);
    }
}

TEST_CASE("matrix text round trip") {
    Rng rng(23);
    const BinMatrix m = oracle::random_matrix(rng, 9, 17);
    const std::string text = to_text(m);
    CHECK(matrix_from_text(text) == m);

    const std::string path =
        (std::filesystem::temp_directory_path() / "qcss_gf2_roundtrip.txt").string();
    save_matrix(m, path);
    CHECK(load_matrix(path) == m);
    std::filesystem::remove(path);

    CHECK_THROWS(matrix_from_text("2 2\n01\n"));    // missing row
    CHECK_THROWS(matrix_from_text("1 2\n0x\n"));    // bad character
    CHECK_THROWS(matrix_from_text("1 2\n011\n"));   // wrong width
}
