#include "mfs/series.hpp"
#include "mfs/smith.hpp"

#include <benchmark/benchmark.h>

#include <functional>
#include <random>

using namespace mfs;

namespace {

LaurentPoly random_poly(std::mt19937_64& rng, int max_deg) {
    std::uniform_int_distribution<int> cd(-3, 3);
    std::uniform_int_distribution<int> dd(0, max_deg);
    int deg = dd(rng);
    std::vector<Rat> cs(static_cast<std::size_t>(deg) + 1);
    for (auto& c : cs) c = Rat(cd(rng));
    return LaurentPoly(0, std::move(cs));
}

LaurentMatrix random_matrix(std::mt19937_64& rng, std::size_t s, int max_deg) {
    LaurentMatrix m(s);
    for (auto& e : m.entries) e = random_poly(rng, max_deg);
    return m;
}

Series<Rat> dense_series(std::size_t nvars, unsigned order, int salt) {
    Series<Rat> s(nvars, 0, order);
    Expo e(nvars, 0);
    // every monomial of total degree <= order, with small varying coefficients
    std::function<void(std::size_t, unsigned)> fill = [&](std::size_t v, unsigned left) {
        if (v == nvars) {
            s.set(e, Rat(1 + static_cast<int>((total_degree(e) + salt) % 5)));
            return;
        }
        for (unsigned k = 0; k <= left; ++k) {
            e[v] = k;
            fill(v + 1, left - k);
        }
        e[v] = 0;
    };
    fill(0, order);
    return s;
}

void bm_smith_normal_form(benchmark::State& state) {
    std::mt19937_64 rng(42);
    auto s = static_cast<std::size_t>(state.range(0));
    std::vector<LaurentMatrix> inputs;
    for (int i = 0; i < 8; ++i) inputs.push_back(random_matrix(rng, s, 4));
    std::size_t next = 0;
    for (auto _ : state) {
        SmithDecomposition d = smith_normal_form(inputs[next]);
        benchmark::DoNotOptimize(d.diag);
        next = (next + 1) % inputs.size();
    }
}
BENCHMARK(bm_smith_normal_form)->Arg(3)->Arg(4)->Arg(5)->Arg(6);

void bm_smith_certify(benchmark::State& state) {
    std::mt19937_64 rng(43);
    auto s = static_cast<std::size_t>(state.range(0));
    LaurentMatrix m = random_matrix(rng, s, 4);
    SmithDecomposition d = smith_normal_form(m);
    for (auto _ : state) {
        certify_smith(m, d);
        benchmark::ClobberMemory();
    }
}
BENCHMARK(bm_smith_certify)->Arg(3)->Arg(4)->Arg(5)->Arg(6);

void bm_series_multiply(benchmark::State& state) {
    auto order = static_cast<unsigned>(state.range(0));
    Series<Rat> a = dense_series(3, order, 0);
    Series<Rat> b = dense_series(3, order, 2);
    for (auto _ : state) {
        Series<Rat> c = a * b;
        benchmark::DoNotOptimize(c.terms);
    }
}
BENCHMARK(bm_series_multiply)->Arg(4)->Arg(6)->Arg(8);

void bm_laurent_det(benchmark::State& state) {
    std::mt19937_64 rng(44);
    auto s = static_cast<std::size_t>(state.range(0));
    LaurentMatrix m = random_matrix(rng, s, 4);
    for (auto _ : state) {
        LaurentPoly d = laurent_det(m);
        benchmark::DoNotOptimize(d);
    }
}
BENCHMARK(bm_laurent_det)->Arg(3)->Arg(4)->Arg(5)->Arg(6);

} // namespace

BENCHMARK_MAIN();
