#include "geocensus/census.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <set>
#include <thread>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "geocensus/arith.hpp"
#include "geocensus/gf2.hpp"
#include "geocensus/sieve.hpp"

namespace geocensus {

namespace {

constexpr long double kPi = std::numbers::pi_v<long double>;
constexpr std::size_t kMaxListedPrimes = 30;

void require_distinct(std::span<const QuadField> fields)
{
    if (fields.empty()) {
        throw DomainError("at least one quadratic field is required");
    }
    std::vector<QuadField> sorted(fields.begin(), fields.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw DomainError("the quadratic fields must be pairwise distinct");
    }
}

bool nonsplit_everywhere(std::span<const QuadField> fields, std::uint64_t p) noexcept
{
    return std::none_of(fields.begin(), fields.end(),
                        [p](const QuadField& f) { return splitting_u64(f, p) == SplitType::Split; });
}

// chi_{-8} = chi_{-4} chi_8, so the character basis uses -4 and 8 only.
std::vector<Integer> character_basis(const QuadField& f)
{
    std::vector<Integer> out;
    for (const auto& q : prime_disc_vector(f)) {
        if (q == -8) {
            out.push_back(-4);
            out.push_back(8);
        } else {
            out.push_back(q);
        }
    }
    return out;
}

// Prime-discriminant exponent vectors of the fields over a shared column basis.
struct CharacterMatrix {
    std::vector<Integer> columns;
    std::vector<gf2::BitVector> rows;
};

CharacterMatrix character_matrix(std::span<const QuadField> fields)
{
    std::vector<std::vector<Integer>> per_field;
    std::set<Integer> all;
    for (const auto& f : fields) {
        per_field.push_back(character_basis(f));
        all.insert(per_field.back().begin(), per_field.back().end());
    }
    CharacterMatrix m{{all.begin(), all.end()}, {}};
    for (const auto& discs : per_field) {
        gf2::BitVector row(m.columns.size());
        for (const auto& q : discs) {
            const auto it = std::lower_bound(m.columns.begin(), m.columns.end(), q);
            row.set(static_cast<std::size_t>(it - m.columns.begin()));
        }
        m.rows.push_back(std::move(row));
    }
    return m;
}

bool class_less(const AlgebraClass& a, const AlgebraClass& b)
{
    const int c = cmp(a.coarea->pi_multiple, b.coarea->pi_multiple);
    if (c != 0) {
        return c < 0;
    }
    return a.ram.finite_primes() < b.ram.finite_primes();
}

AlgebraClass indefinite_class(std::vector<Integer> primes)
{
    return AlgebraClass::from(RamSet(std::move(primes), false));
}

// Primes that may appear in an admissible ramification set of coarea < V.
struct PrimePool {
    std::vector<std::uint64_t> primes;
    bool finite = false;
};

PrimePool admissible_primes(std::span<const QuadField> fields, long double limit, unsigned threads)
{
    PrimePool pool;
    const FinitenessVerdict verdict = nonsplit_is_finite(fields);
    pool.finite = verdict.finite;
    if (verdict.finite) {
        for (const auto& p : nonsplit_primes(fields)) {
            const std::uint64_t v = to_u64(p);
            if (static_cast<long double>(v - 1) < limit) {
                pool.primes.push_back(v);
            }
        }
        return pool;
    }
    // p - 1 < 3V/pi is necessary for p to appear at all.
    const long double top = std::ceil(limit);
    if (top < 2.0L) {
        return pool;
    }
    const auto hi = static_cast<std::uint64_t>(top);
    pool.primes = collect_primes_if(2, hi, [&](std::uint64_t p) {
        return static_cast<long double>(p - 1) < limit && nonsplit_everywhere(fields, p);
    }, threads);
    return pool;
}

// Depth-first search over ascending primes; products only grow, so a branch
// stops as soon as the coarea bound is reached.
class SubsetSearch {
public:
    SubsetSearch(const std::vector<std::uint64_t>& primes, long double limit, bool collect)
        : primes_(primes), limit_(limit), collect_(collect)
    {
    }

    void run_root(std::size_t i)
    {
        const std::uint64_t w = primes_[i] - 1;
        if (static_cast<long double>(w) >= limit_) {
            return;
        }
        stack_.push_back(i);
        descend(i + 1, w);
        stack_.pop_back();
    }

    std::uint64_t count() const noexcept { return count_; }
    std::vector<std::vector<std::size_t>>& found() noexcept { return found_; }

private:
    void descend(std::size_t start, std::uint64_t product)
    {
        for (std::size_t i = start; i < primes_.size(); ++i) {
            const std::uint64_t w = primes_[i] - 1;
            if (static_cast<long double>(product) * static_cast<long double>(w) >= limit_) {
                break;
            }
            stack_.push_back(i);
            if (stack_.size() % 2 == 0) {
                ++count_;
                if (collect_) {
                    found_.push_back(stack_);
                }
            }
            descend(i + 1, product * w);
            stack_.pop_back();
        }
    }

    const std::vector<std::uint64_t>& primes_;
    long double limit_;
    bool collect_;
    std::vector<std::size_t> stack_;
    std::uint64_t count_ = 0;
    std::vector<std::vector<std::size_t>> found_;
};

PiResult enumerate_pool(const PrimePool& pool, long double limit, const CensusOptions& options)
{
    PiResult result;
    result.finite_census = pool.finite;
    result.pool_size = pool.primes.size();
    if (!(limit > 1.0L)) {
        return result; // even M_2(Q) has coarea pi/3 >= V
    }
    result.value = 1;
    if (options.list_classes) {
        result.classes.push_back(indefinite_class({}));
    }

    const unsigned threads = resolve_threads(options.threads);
    std::atomic<std::size_t> next{0};
    std::mutex merge;
    auto worker = [&] {
        SubsetSearch search(pool.primes, limit, options.list_classes);
        for (std::size_t i; (i = next.fetch_add(1)) < pool.primes.size();) {
            search.run_root(i);
        }
        std::vector<AlgebraClass> local;
        for (const auto& indices : search.found()) {
            std::vector<Integer> primes;
            for (auto k : indices) {
                primes.push_back(from_u64(pool.primes[k]));
            }
            local.push_back(indefinite_class(std::move(primes)));
        }
        std::lock_guard lock(merge);
        result.value += search.count();
        std::move(local.begin(), local.end(), std::back_inserter(result.classes));
    };
    {
        std::vector<std::jthread> pool_threads;
        for (unsigned t = 1; t < threads; ++t) {
            pool_threads.emplace_back(worker);
        }
        worker();
    }
    std::sort(result.classes.begin(), result.classes.end(), class_less);
    return result;
}

long double coarea_limit(double V)
{
    if (!(V > 0.0) || !std::isfinite(V)) {
        throw DomainError("volume bound V must be positive");
    }
    if (V > 1e15) {
        throw ResourceLimit("volume bound V above 1e15 is outside the supported range");
    }
    return 3.0L * static_cast<long double>(V) / kPi;
}

} // namespace

bool FinitenessVerdict::verify(std::span<const QuadField> fields) const
{
    if (finite) {
        if (relation.empty() || relation.size() % 2 == 0) {
            return false;
        }
        std::set<std::size_t> seen(relation.begin(), relation.end());
        if (seen.size() != relation.size() || *seen.rbegin() >= fields.size()) {
            return false;
        }
        Integer product = 1;
        for (auto i : relation) {
            product *= fields[i].disc();
        }
        return is_perfect_square(product);
    }
    std::map<Integer, int> value;
    for (const auto& s : signs) {
        if (s.sign != 1 && s.sign != -1) {
            return false;
        }
        value[s.prime_disc] = s.sign;
    }
    for (const auto& f : fields) {
        int chi = 1;
        for (const auto& q : character_basis(f)) {
            const auto it = value.find(q);
            if (it == value.end()) {
                return false;
            }
            chi *= it->second;
        }
        if (chi != -1) {
            return false;
        }
    }
    return true;
}

FinitenessVerdict nonsplit_is_finite(std::span<const QuadField> fields)
{
    require_distinct(fields);
    const CharacterMatrix m = character_matrix(fields);
    gf2::BitVector ones(fields.size());
    for (std::size_t i = 0; i < fields.size(); ++i) {
        ones.set(i);
    }
    const gf2::SolveResult solved = gf2::solve(m.rows, ones);

    FinitenessVerdict verdict;
    if (solved.obstruction) {
        verdict.finite = true;
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (solved.obstruction->test(i)) {
                verdict.relation.push_back(i);
            }
        }
    } else {
        for (std::size_t c = 0; c < m.columns.size(); ++c) {
            verdict.signs.push_back({m.columns[c], solved.solution->test(c) ? -1 : 1});
        }
    }
    return verdict;
}

std::vector<Integer> nonsplit_primes(std::span<const QuadField> fields)
{
    FinitenessVerdict verdict = nonsplit_is_finite(fields);
    if (!verdict.finite) {
        throw InfiniteCensus(std::move(verdict));
    }
    // Off the discriminants, the odd relation forces some character to be +1.
    std::set<Integer> candidates;
    for (const auto& f : fields) {
        for (const auto& pf : factorize(f.disc()).factors) {
            candidates.insert(pf.prime);
        }
    }
    std::vector<Integer> out;
    for (const auto& p : candidates) {
        const bool split_somewhere = std::any_of(fields.begin(), fields.end(), [&](const QuadField& f) {
            return splitting(f, p) == SplitType::Split;
        });
        if (!split_somewhere) {
            out.push_back(p);
        }
    }
    return out;
}

CensusReport count_algebras(std::span<const QuadField> fields)
{
    CensusReport report;
    report.fields.assign(fields.begin(), fields.end());
    report.verdict = nonsplit_is_finite(fields);
    if (!report.verdict.finite) {
        throw InfiniteCensus(report.verdict);
    }
    report.nonsplit_primes = nonsplit_primes(fields);
    const std::size_t k = report.nonsplit_primes.size();
    if (k > kMaxListedPrimes) {
        throw ResourceLimit(fmt::format("{} non-split primes: too many classes to list", k));
    }
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
        if (std::popcount(mask) % 2 != 0) {
            continue;
        }
        std::vector<Integer> primes;
        for (std::size_t i = 0; i < k; ++i) {
            if ((mask >> i) & 1U) {
                primes.push_back(report.nonsplit_primes[i]);
            }
        }
        report.classes.push_back(indefinite_class(std::move(primes)));
    }
    std::sort(report.classes.begin(), report.classes.end(), class_less);
    report.count_total = report.classes.size();
    report.count_division = report.count_total - 1;
    report.eventual_pi = report.count_total;
    return report;
}

PiResult pi_of_V(const SpectrumSpec& spec, double V, const CensusOptions& options)
{
    const long double limit = coarea_limit(V);
    const auto fields = spec.embedding_fields();
    const PrimePool pool = admissible_primes(fields, limit, options.threads);
    spdlog::debug("pi_of_V: V={} pool={} finite={}", V, pool.primes.size(), pool.finite);
    return enumerate_pool(pool, limit, options);
}

IntervalDelta short_interval_delta(const SpectrumSpec& spec, double V, double W,
                                   const CensusOptions& options)
{
    if (!(W > 0.0) || !(W < V)) {
        throw DomainError("short_interval_delta requires 0 < W < V");
    }
    const long double lower_limit = coarea_limit(V);
    const long double upper_limit = coarea_limit(V + W);
    const auto fields = spec.embedding_fields();
    const PrimePool pool = admissible_primes(fields, upper_limit, options.threads);

    CensusOptions counting = options;
    counting.list_classes = false;
    IntervalDelta out;
    out.pi_lower = enumerate_pool(pool, lower_limit, counting).value;
    out.pi_upper = enumerate_pool(pool, upper_limit, counting).value;
    out.delta = out.pi_upper - out.pi_lower;
    const double r = static_cast<double>(spec.classes().size());
    out.bound = W / (std::exp2(r) * std::log(V));
    out.theta = spec.classes().size() == 1 ? 8.0 / 3.0 : 1.0 / std::exp2(r);
    out.window_floor = std::pow(V, 1.0 - out.theta);
    return out;
}

Family construct_family(unsigned n, std::uint64_t search_bound)
{
    const unsigned m = n + 2;
    Family family;
    family.n = n;

    auto exhausted = [&](const std::string& what) {
        return SearchExhausted(fmt::format("construct_family(n={}): no {} up to search bound {}", n,
                                           what, search_bound));
    };

    std::uint64_t p1 = 0;
    for (std::uint64_t q = 9; q <= search_bound; q += 8) {
        if (is_prime_u64(q)) {
            p1 = q;
            break;
        }
    }
    if (p1 == 0) {
        throw exhausted("prime p_1 = 1 mod 8");
    }
    family.primes.push_back(from_u64(p1));
    const Integer p1z = from_u64(p1);
    for (std::uint64_t q = p1 + 8; family.primes.size() < m; q += 8) {
        if (q > search_bound) {
            throw exhausted("further prime = 1 mod 8 inert in Q(sqrt(p_1))");
        }
        if (is_prime_u64(q) && kronecker(p1z, from_u64(q)) == -1) {
            family.primes.push_back(from_u64(q));
        }
    }

    Integer all = 1, tail = 1;
    for (std::size_t i = 0; i < family.primes.size(); ++i) {
        all *= family.primes[i];
        if (i > 0) {
            tail *= family.primes[i];
        }
    }
    family.fields.push_back(field_from_d(p1z));
    family.fields.push_back(field_from_d(all));
    family.fields.push_back(field_from_d(tail));

    std::optional<QuadField> fourth;
    for (std::uint64_t d = 2; d <= search_bound && !fourth; ++d) {
        const Integer dz = from_u64(d);
        if (squarefree_part(dz).cofactor != 1) {
            continue;
        }
        QuadField candidate = field_from_d(dz);
        if (kronecker(candidate.disc(), p1z) != 1) {
            continue;
        }
        const bool inert = std::all_of(family.primes.begin() + 1, family.primes.end(),
                                       [&](const Integer& p) { return kronecker(candidate.disc(), p) == -1; });
        if (inert) {
            fourth = std::move(candidate);
        }
    }
    if (!fourth) {
        throw exhausted("radicand d_4 with p_1 split and p_2..p_m inert");
    }
    family.fields.push_back(*fourth);

    family.report = count_algebras(family.fields);
    const std::vector<Integer> expected(family.primes.begin() + 1, family.primes.end());
    if (family.report.nonsplit_primes != expected || family.report.eventual_pi != (std::uint64_t{1} << n)) {
        throw Error(fmt::format("construct_family(n={}): census gave {} classes, expected 2^{}", n,
                                family.report.eventual_pi, n));
    }
    return family;
}

SelectivityVerdict selectivity_check(const RamSet& algebra, const QuadOrder& order)
{
    if (!algebra.indefinite()) {
        throw DomainError("selectivity needs an algebra unramified at the real place");
    }
    const QuadField& field = order.field();
    SelectivityVerdict v;

    v.integral_domain = {true, std::nullopt, "quadratic order inside " + field.name()};

    // Real places: both sides are unramified, so only finite places can differ.
    std::vector<Integer> field_ramified;
    for (const auto& pf : factorize(field.disc()).factors) {
        field_ramified.push_back(pf.prime);
    }
    const auto& ram = algebra.finite_primes();
    std::optional<Integer> shared;
    for (const auto& p : field_ramified) {
        if (std::binary_search(ram.begin(), ram.end(), p)) {
            shared = p;
            break;
        }
    }
    if (shared) {
        v.unramified_match = {false, shared,
                              fmt::format("{} ramifies in both {} and B", shared->get_str(), field.name())};
    } else if (!field_ramified.empty()) {
        v.unramified_match = {false, field_ramified.front(),
                              fmt::format("{} ramifies in {}", field_ramified.front().get_str(), field.name())};
    } else {
        v.unramified_match = {ram.empty(), ram.empty() ? std::nullopt : std::optional<Integer>(ram.front()),
                              "no finite prime ramifies in L"};
    }

    // Primes of the conductor part of the order discriminant must split in L.
    v.discriminant_split = {true, std::nullopt, "every prime dividing the conductor splits in L"};
    for (const auto& pf : factorize(order.conductor()).factors) {
        if (splitting(field, pf.prime) != SplitType::Split) {
            v.discriminant_split = {false, pf.prime,
                                    fmt::format("{} divides the conductor and is {} in {}", pf.prime.get_str(),
                                                to_string(splitting(field, pf.prime)), field.name())};
            break;
        }
    }

    v.selective_possible = v.integral_domain.holds && v.unramified_match.holds && v.discriminant_split.holds;
    if (!v.unramified_match.holds) {
        v.violated_condition = 2;
        v.certificate_prime = v.unramified_match.witness_prime;
    } else if (!v.discriminant_split.holds) {
        v.violated_condition = 3;
        v.certificate_prime = v.discriminant_split.witness_prime;
    }
    return v;
}

bool SelectivityVerdict::verify(const RamSet& algebra, const QuadOrder& order) const
{
    if (selective_possible || violated_condition != 2 || !certificate_prime) {
        return false;
    }
    const Integer& p = *certificate_prime;
    if (!is_prime(p)) {
        return false;
    }
    const bool ramified_in_field = kronecker(order.field().disc(), p) == 0;
    const auto& ram = algebra.finite_primes();
    return ramified_in_field || std::binary_search(ram.begin(), ram.end(), p);
}

ChebotarevResult verify_chebotarev_interval(std::span<const QuadField> fields, std::uint64_t X,
                                            std::uint64_t Y, unsigned threads)
{
    if (X < 1000) {
        throw DomainError("verify_chebotarev_interval requires X >= 1000");
    }
    if (Y < 1 || Y > X) {
        throw DomainError("verify_chebotarev_interval requires 1 <= Y <= X");
    }
    if (nonsplit_is_finite(fields).finite) {
        throw DomainError("the fields leave only finitely many inert primes");
    }
    const CharacterMatrix m = character_matrix(fields);
    if (gf2::rank(m.rows) != fields.size()) {
        throw DomainError("the field characters are dependent; 1/2^s is not the inert density");
    }
    ChebotarevResult out;
    out.actual = count_primes_if(X, X + Y, [&](std::uint64_t p) {
        return std::all_of(fields.begin(), fields.end(),
                           [p](const QuadField& f) { return splitting_u64(f, p) == SplitType::Inert; });
    }, threads);
    out.predicted = static_cast<double>(Y) / (std::exp2(static_cast<double>(fields.size()))
                                               * std::log(static_cast<double>(X)));
    out.ratio = static_cast<double>(out.actual) / out.predicted;
    return out;
}

} // namespace geocensus
