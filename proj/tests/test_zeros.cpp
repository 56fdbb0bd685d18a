#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "common.hpp"
#include "zetafluct/riemann_siegel.hpp"
#include "zetafluct/s_functions.hpp"
#include "zetafluct/zero_search.hpp"
#include "zetafluct/zero_table.hpp"

using namespace zetafluct;

TEST_CASE("find_zeros counts and locations on (10, 100)") {
    const auto res = find_zeros(10.0, 100.0);
    REQUIRE(res.zeros.size() == 29);
    CHECK(!res.suspected_missed);

    const auto ref = ingest_table(testutil::data_path("zeros_ref_100.txt"), 29);
    for (std::size_t i = 0; i < 29; ++i)
        CHECK(res.zeros[i] == Catch::Approx(ref.zeros[i]).margin(1e-8));
}

TEST_CASE("find_zeros isolates gamma_1 and gamma_2") {
    const auto r1 = find_zeros(14.0, 14.2);
    REQUIRE(r1.zeros.size() == 1);
    CHECK(r1.zeros[0] == Catch::Approx(testutil::kGamma1).margin(1e-8));

    CHECK(find_zeros(15.0, 20.0).zeros.empty());

    const auto r2 = find_zeros(20.0, 22.0);
    REQUIRE(r2.zeros.size() == 1);
    CHECK(r2.zeros[0] == Catch::Approx(testutil::kGamma2).margin(1e-8));
}

TEST_CASE("find_zeros is deterministic bit-for-bit") {
    const auto a = find_zeros(10.0, 250.0);
    const auto b = find_zeros(10.0, 250.0);
    REQUIRE(a.zeros.size() == b.zeros.size());
    for (std::size_t i = 0; i < a.zeros.size(); ++i)
        CHECK(a.zeros[i] == b.zeros[i]);
}

TEST_CASE("every computed zero re-evaluates to ~0") {
    const auto& table = testutil::small_table();
    for (std::int64_t k = 1; k <= table.size(); k += 7)
        CHECK(std::fabs(hardy_z(table.gamma(k))) < 1e-6);
}

TEST_CASE("computed table matches the reference table entrywise") {
    const auto& table = testutil::small_table();
    const auto ref = ingest_table(testutil::data_path("zeros_ref_100.txt"), 100);
    REQUIRE(table.size() >= 100);
    for (std::int64_t k = 1; k <= 100; ++k)
        CHECK(table.gamma(k) == Catch::Approx(ref.gamma(k)).margin(1e-8));
}

TEST_CASE("table completeness against the smooth count") {
    const auto& table = testutil::small_table();
    for (double T : {100.0, 500.0, 1000.0, 1500.0, 1999.0}) {
        const auto res = verify_count(table, T);
        CHECK(std::llabs(res.discrepancy) <= 2);
        CHECK(!res.suspect);
    }
    CHECK_THROWS_AS(verify_count(table, 1e7), std::domain_error);
}

TEST_CASE("verify_count near exact zeros and below gamma_1") {
    const auto& table = testutil::small_table();
    // N(T) = 5 just above gamma_5
    const double T = table.gamma(5) + 1e-6;
    CHECK(count_zeros(table, T) == 5.0);
    // below the first zero the count is 0 and the discrepancy is -round(M)
    const auto res = verify_count(table, 12.0);
    CHECK(res.discrepancy == -std::llround(main_term(12.0, kConstZeroGrid)));
}

TEST_CASE("ingest_table parses, validates and truncates") {
    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path() / "zetafluct_ingest_test";
    fs::create_directories(dir);

    const auto good = (dir / "good.txt").string();
    {
        std::ofstream out(good);
        out << "# first two ordinates\n14.134725141734\n21.022039638771\n";
    }
    const auto table = ingest_table(good, 100);
    REQUIRE(table.size() == 2);
    CHECK(table.gamma(1) == Catch::Approx(14.134725141734).epsilon(1e-15));
    CHECK(table.max_height == Catch::Approx(21.022039638771).epsilon(1e-15));
    CHECK(table.source == ZeroTable::Source::ingested);

    const auto limited = ingest_table(good, 1);
    CHECK(limited.size() == 1);

    const auto empty = (dir / "empty.txt").string();
    { std::ofstream out(empty); }
    CHECK_THROWS_WITH(ingest_table(empty, 10), Catch::Matchers::ContainsSubstring("no zeros"));

    const auto unordered = (dir / "unordered.txt").string();
    {
        std::ofstream out(unordered);
        out << "14.1\n21.0\n20.9\n";
    }
    CHECK_THROWS_WITH(ingest_table(unordered, 10),
                      Catch::Matchers::ContainsSubstring("index 3"));

    const auto garbled = (dir / "garbled.txt").string();
    {
        std::ofstream out(garbled);
        out << "14.1\nnot-a-number\n";
    }
    CHECK_THROWS_WITH(ingest_table(garbled, 10), Catch::Matchers::ContainsSubstring(":2"));

    CHECK_THROWS_AS(ingest_table((dir / "missing.txt").string(), 10), std::runtime_error);
}

TEST_CASE("cache round-trips byte-for-byte") {
    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path() / "zetafluct_cache_test";
    fs::create_directories(dir);
    const auto p1 = (dir / "a.txt").string(), p2 = (dir / "b.txt").string();

    const auto res = find_zeros(10.0, 150.0);
    ZeroTable table;
    table.zeros = res.zeros;
    table.max_height = 150.0;
    save_table(table, p1);
    const auto back = ingest_table(p1, 1000);
    save_table(back, p2);

    std::ifstream f1(p1), f2(p2);
    std::string s1((std::istreambuf_iterator<char>(f1)), std::istreambuf_iterator<char>());
    std::string s2((std::istreambuf_iterator<char>(f2)), std::istreambuf_iterator<char>());
    CHECK(s1 == s2);
    REQUIRE(back.size() == static_cast<std::int64_t>(res.zeros.size()));
    for (std::int64_t k = 1; k <= back.size(); ++k)
        CHECK(back.gamma(k) == Catch::Approx(res.zeros[static_cast<std::size_t>(k - 1)]).margin(1e-11));
}
