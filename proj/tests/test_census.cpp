#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <bit>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <set>

#include "geocensus/arith.hpp"
#include "geocensus/census.hpp"
#include "oracles.hpp"

using namespace geocensus;

namespace {

std::vector<QuadField> fields_of(std::initializer_list<long> radicands)
{
    std::vector<QuadField> out;
    for (long d : radicands) {
        out.push_back(field_from_d(d));
    }
    return out;
}

SpectrumSpec spec_of(std::vector<Integer> radicands)
{
    SpectrumInputs in;
    in.radicands = std::move(radicands);
    return spectrum_from_inputs(in);
}

// Primes up to `limit` that split in none of the fields, by brute force.
std::vector<Integer> scan_nonsplit(const std::vector<QuadField>& fields, std::uint64_t limit)
{
    std::vector<Integer> out;
    for (std::uint64_t p : oracle::primes_between(2, limit)) {
        bool split = false;
        for (const auto& f : fields) {
            split |= oracle::character_at_prime(f.disc().get_si(), p) == 1;
        }
        if (!split) {
            out.push_back(from_u64(p));
        }
    }
    return out;
}

// A prime below `limit`, coprime to every prime discriminant, whose characters
// take the given signs.
std::optional<std::uint64_t> realizing_prime(const FinitenessVerdict& v, std::uint64_t limit)
{
    for (std::uint64_t p : oracle::primes_between(3, limit)) {
        bool ok = true;
        for (const auto& s : v.signs) {
            ok &= oracle::character_at_prime(s.prime_disc.get_si(), p) == s.sign;
        }
        if (ok) {
            return p;
        }
    }
    return std::nullopt;
}

std::uint64_t even_subsets(std::size_t k)
{
    return k == 0 ? 1 : std::uint64_t{1} << (k - 1);
}

} // namespace

TEST_CASE("finiteness verdict examples")
{
    const auto triple = fields_of({3, 17, 51});
    const auto v = nonsplit_is_finite(triple);
    CHECK(v.finite);
    CHECK(v.relation == std::vector<std::size_t>{0, 1, 2});
    CHECK(v.verify(triple));
    CHECK(12 * 17 * 204 == 204 * 204);

    for (auto fields : {fields_of({3}), fields_of({3, 17}), fields_of({2, 3, 5})}) {
        const auto w = nonsplit_is_finite(fields);
        CHECK_FALSE(w.finite);
        CHECK(w.verify(fields));
        const auto p = realizing_prime(w, 100);
        REQUIRE(p);
        for (const auto& f : fields) {
            CHECK(oracle::kronecker(f.disc().get_si(), static_cast<std::int64_t>(*p)) == -1);
        }
    }
    CHECK_THROWS_AS(nonsplit_is_finite(std::vector<QuadField>{}), DomainError);
    CHECK_THROWS_AS(nonsplit_is_finite(fields_of({3, 12})), DomainError);
}

TEST_CASE("tampered witnesses do not verify")
{
    const auto triple = fields_of({3, 17, 51});
    auto v = nonsplit_is_finite(triple);
    v.relation = {0, 1};
    CHECK_FALSE(v.verify(triple));
    const auto pair = fields_of({3, 17});
    auto w = nonsplit_is_finite(pair);
    for (auto& s : w.signs) {
        s.sign = 1;
    }
    CHECK_FALSE(w.verify(pair));
}

TEST_CASE("verdict witnesses re-verify on random field sets")
{
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> pick(2, 400);
    for (int trial = 0; trial < 300; ++trial) {
        std::set<long> radicands;
        const int size = 1 + trial % 4;
        while (static_cast<int>(radicands.size()) < size) {
            const long d = oracle::squarefree(pick(rng));
            if (d > 1) {
                radicands.insert(d);
            }
        }
        std::vector<QuadField> fields;
        for (long d : radicands) {
            fields.push_back(field_from_d(d));
        }
        const auto v = nonsplit_is_finite(fields);
        REQUIRE(v.verify(fields));
        if (!v.finite) {
            REQUIRE(realizing_prime(v, 10000));
        }
    }
}

TEST_CASE("nonsplit primes of the triple agree with a prime scan")
{
    const auto triple = fields_of({3, 17, 51});
    CHECK(nonsplit_primes(triple) == std::vector<Integer>{3, 17});
    CHECK(scan_nonsplit(triple, 100000) == std::vector<Integer>{3, 17});
    try {
        nonsplit_primes(fields_of({3, 17}));
        FAIL("expected InfiniteCensus");
    } catch (const InfiniteCensus& e) {
        CHECK_FALSE(e.verdict().finite);
        CHECK(e.verdict().verify(fields_of({3, 17})));
    }
}

TEST_CASE("count_algebras on the triple")
{
    const auto report = count_algebras(fields_of({3, 17, 51}));
    CHECK(report.count_total == 2);
    CHECK(report.count_division == 1);
    CHECK(report.eventual_pi == 2);
    REQUIRE(report.classes.size() == 2);
    CHECK(report.classes[0].ram.empty());
    CHECK_FALSE(report.classes[0].is_division);
    CHECK(report.classes[0].coarea->symbolic() == "pi/3");
    CHECK(report.classes[1].ram == RamSet({3, 17}, false));
    CHECK(report.classes[1].is_division);
    CHECK(report.classes[1].coarea->symbolic() == "32*pi/3");
    CHECK_THROWS_AS(count_algebras(fields_of({5})), InfiniteCensus);
}

TEST_CASE("synthesized finite families have power-of-two censuses")
{
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<long> pick(2, 250);
    int done = 0;
    while (done < 200) {
        const long d1 = oracle::squarefree(pick(rng));
        const long d2 = oracle::squarefree(pick(rng));
        const long d3 = oracle::squarefree(d1 * d2);
        std::set<long> distinct{d1, d2, d3};
        if (d1 <= 1 || d2 <= 1 || d3 <= 1 || distinct.size() != 3) {
            continue;
        }
        std::vector<QuadField> fields{field_from_d(d1), field_from_d(d2), field_from_d(d3)};
        if (done % 2 == 1) {
            const long d4 = oracle::squarefree(pick(rng));
            if (d4 <= 1 || distinct.count(d4)) {
                continue;
            }
            fields.push_back(field_from_d(d4));
        }
        const auto report = count_algebras(fields);
        REQUIRE(report.verdict.verify(fields));
        REQUIRE(std::has_single_bit(report.count_total));
        const auto scanned = scan_nonsplit(fields, 2000);
        REQUIRE(report.nonsplit_primes == scanned);
        REQUIRE(report.count_total == even_subsets(scanned.size()));
        REQUIRE(report.count_division + 1 == report.count_total);
        ++done;
    }
}

TEST_CASE("pi_of_V on the triple")
{
    const auto spec = spec_of({3, 17, 51});
    CHECK(pi_of_V(spec, 40).value == 2);
    CHECK(pi_of_V(spec, 10).value == 1);
    CHECK(pi_of_V(spec, 1).value == 0);
    CHECK(pi_of_V(spec, 1e9).value == 2);
    CHECK(pi_of_V(spec, 40).finite_census);
    CHECK_THROWS_AS(pi_of_V(spec, 0), DomainError);
    CHECK_THROWS_AS(pi_of_V(spec, -3), DomainError);
}

TEST_CASE("pi_of_V matches brute-force enumeration on an infinite spec")
{
    const auto spec = SpectrumSpec::from_traces({4}); // Q(sqrt 3)
    const auto pool = scan_nonsplit({field_from_d(3)}, 2000);
    std::uint64_t previous = 0;
    for (double V = 1; V <= 600; V += 7.5) {
        const long double limit = 3.0L * V / std::numbers::pi_v<long double>;
        // products of distinct pool primes, even count, (p - 1)-product below limit
        std::uint64_t count = 0;
        std::function<void(std::size_t, long double, std::size_t)> walk = [&](std::size_t i, long double prod,
                                                                               std::size_t size) {
            if (size % 2 == 0) {
                ++count;
            }
            for (std::size_t j = i; j < pool.size(); ++j) {
                const long double next = prod * (pool[j].get_d() - 1);
                if (next < limit) {
                    walk(j + 1, next, size + 1);
                }
            }
        };
        if (limit > 1) {
            walk(0, 1, 0);
        }
        const auto got = pi_of_V(spec, V);
        REQUIRE_MESSAGE(got.value == count, "V=" << V);
        REQUIRE(got.classes.size() == got.value);
        REQUIRE(got.value >= previous);
        previous = got.value;
    }
}

TEST_CASE("pi_of_V is independent of thread count")
{
    const auto spec = SpectrumSpec::from_traces({4});
    CensusOptions one{1, true}, four{4, true};
    const auto a = pi_of_V(spec, 2e4, one);
    const auto b = pi_of_V(spec, 2e4, four);
    CHECK(a.value == b.value);
    REQUIRE(a.classes.size() == b.classes.size());
    for (std::size_t i = 0; i < a.classes.size(); ++i) {
        CHECK(a.classes[i].ram == b.classes[i].ram);
    }
}

TEST_CASE("short_interval_delta")
{
    const auto spec = SpectrumSpec::from_traces({4});
    const auto r = short_interval_delta(spec, 1e3, 1e2);
    CHECK(r.bound == doctest::Approx(0.5 * 100 / std::log(1e3)));
    CHECK(r.delta == r.pi_upper - r.pi_lower);
    CHECK(r.theta == doctest::Approx(8.0 / 3.0));
    CHECK(r.window_floor == doctest::Approx(std::pow(1e3, -5.0 / 3.0)));
    const auto two = short_interval_delta(SpectrumSpec::from_traces({4, 5}), 1e3, 1e2);
    CHECK(two.theta == doctest::Approx(0.25));
    CHECK(two.bound == doctest::Approx(0.25 * 100 / std::log(1e3)));
    CHECK(r.pi_lower == pi_of_V(spec, 1e3).value);
    CHECK(r.pi_upper == pi_of_V(spec, 1.1e3).value);
    CHECK_THROWS_AS(short_interval_delta(spec, 1e3, 1e3), DomainError);
    CHECK_THROWS_AS(short_interval_delta(spec, 1e3, 0), DomainError);

    std::uint64_t previous = 0;
    for (double W = 50; W < 5e3; W += 250) {
        const auto d = short_interval_delta(spec, 5e3, W);
        REQUIRE(d.delta >= previous);
        previous = d.delta;
    }
}

TEST_CASE("construct_family")
{
    for (unsigned n = 0; n <= 4; ++n) {
        const Family f = construct_family(n);
        REQUIRE(f.primes.size() == n + 2);
        CHECK(f.primes[0] == 17);
        CHECK(f.report.eventual_pi == (std::uint64_t{1} << n));
        const std::vector<Integer> tail(f.primes.begin() + 1, f.primes.end());
        CHECK(f.report.nonsplit_primes == tail);
        for (const auto& p : f.primes) {
            CHECK(p % 8 == 1);
        }
        if (n <= 2) {
            CHECK(scan_nonsplit(f.fields, 100000) == tail);
        }
    }
    CHECK(construct_family(0).report.nonsplit_primes == std::vector<Integer>{41});
    CHECK(construct_family(3).primes == std::vector<Integer>{17, 41, 73, 97, 113});
    CHECK_THROWS_AS(construct_family(3, 100), SearchExhausted);
}

TEST_CASE("selectivity examples")
{
    auto v = selectivity_check(RamSet({3, 17}, false), QuadOrder::from_disc(12));
    CHECK_FALSE(v.selective_possible);
    CHECK(v.violated_condition == 2);
    CHECK(v.certificate_prime == Integer(3));
    CHECK(v.integral_domain.holds);
    CHECK(v.verify(RamSet({3, 17}, false), QuadOrder::from_disc(12)));

    v = selectivity_check(RamSet(), QuadOrder::from_disc(17));
    CHECK_FALSE(v.selective_possible);
    CHECK(v.certificate_prime == Integer(17));

    v = selectivity_check(RamSet(), QuadOrder::from_disc(68));
    CHECK(v.discriminant_split.holds);
    CHECK_FALSE(v.selective_possible);

    v = selectivity_check(RamSet(), QuadOrder::from_disc(5 * 9));
    CHECK_FALSE(v.discriminant_split.holds); // 3 is inert in Q(sqrt 5)
    CHECK(v.discriminant_split.witness_prime == Integer(3));

    CHECK_THROWS_AS(selectivity_check(RamSet({2}, true), QuadOrder::from_disc(12)), DomainError);
}

TEST_CASE("no selective pair over the rationals")
{
    std::mt19937_64 rng(99);
    const std::vector<long> small_primes{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31};
    std::uniform_int_distribution<long> radicand(2, 1000), conductor(1, 30);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Integer> ram;
        for (long p : small_primes) {
            if (rng() % 3 == 0) {
                ram.push_back(p);
            }
        }
        if (ram.size() % 2 == 1) {
            ram.pop_back();
        }
        const RamSet b(ram, false);
        long d = oracle::squarefree(radicand(rng));
        if (d <= 1) {
            d = 2;
        }
        const QuadOrder order(field_from_d(d), conductor(rng));
        const auto v = selectivity_check(b, order);
        REQUIRE_FALSE(v.selective_possible);
        REQUIRE(v.violated_condition == 2);
        REQUIRE(v.verify(b, order));
        const auto p = v.certificate_prime->get_si();
        REQUIRE(oracle::kronecker(order.field().disc().get_si(), p) == 0);
    }
}

TEST_CASE("chebotarev interval")
{
    const auto pair = fields_of({3, 17});
    const auto r = verify_chebotarev_interval(pair, 1000000, 100000);
    CHECK(r.ratio >= 0.85);
    CHECK(r.ratio <= 1.15);
    CHECK(r.predicted == doctest::Approx(1e5 / (4 * std::log(1e6))));

    const auto single = verify_chebotarev_interval(fields_of({5}), 1000000, 100000);
    CHECK(single.ratio >= 0.85);
    CHECK(single.ratio <= 1.15);

    // exact count on a small window by trial division
    const auto small = verify_chebotarev_interval(pair, 1000, 1000);
    std::uint64_t count = 0;
    for (auto p : oracle::primes_between(1000, 2000)) {
        count += oracle::kronecker(12, static_cast<std::int64_t>(p)) == -1 &&
                 oracle::kronecker(17, static_cast<std::int64_t>(p)) == -1;
    }
    CHECK(small.actual == count);

    CHECK_THROWS_AS(verify_chebotarev_interval(pair, 1000, 2000), DomainError);
    CHECK_THROWS_AS(verify_chebotarev_interval(pair, 999, 10), DomainError);
    CHECK_THROWS_AS(verify_chebotarev_interval(fields_of({3, 17, 51}), 1000, 10), DomainError);
    // even relation 3 * 5 * 7 * 105 = square: infinite verdict, dependent characters
    const auto dependent = fields_of({3, 5, 7, 105});
    CHECK_FALSE(nonsplit_is_finite(dependent).finite);
    CHECK_THROWS_AS(verify_chebotarev_interval(dependent, 1000, 10), DomainError);
}
