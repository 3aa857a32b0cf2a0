#include <random>

#include <benchmark/benchmark.h>

#include "dzh/hecke.hpp"

using namespace dzh;

namespace {

void series_mul(benchmark::State& st)
{
    Tower tw(ResidueField::make(13), static_cast<int>(st.range(0)));
    std::mt19937_64 rng(1);
    LaurentElem a = random_unit(tw, FieldTag::E4, rng, static_cast<int>(st.range(0)));
    LaurentElem b = random_unit(tw, FieldTag::E4, rng, static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(series_mul)->Arg(40)->Arg(160)->Arg(640);

void series_inverse(benchmark::State& st)
{
    Tower tw(ResidueField::make(13), static_cast<int>(st.range(0)));
    std::mt19937_64 rng(2);
    LaurentElem a = random_unit(tw, FieldTag::E4, rng, static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(a.inverse());
}
BENCHMARK(series_inverse)->Arg(40)->Arg(160);

void classify(benchmark::State& st)
{
    Tower tw(ResidueField::make(static_cast<std::uint32_t>(st.range(0))));
    HeckeModel m(tw, SubgroupVariant::Parahoric);
    std::mt19937_64 rng(3);
    GroupElem g = random_K0(tw, SubgroupVariant::Parahoric, rng) * lift(tw, WeylElem::parse("s.s'.z")) *
                  random_K0(tw, SubgroupVariant::Parahoric, rng);
    for (auto _ : st) benchmark::DoNotOptimize(m.classify(g));
}
BENCHMARK(classify)->Arg(5)->Arg(13);

void convolve_s_s(benchmark::State& st)
{
    Tower tw(ResidueField::make(static_cast<std::uint32_t>(st.range(0))));
    HeckeModel m(tw, SubgroupVariant::Stabilizer);
    GroupElem one = identity(tw);
    m.coset_reps(WeylElem::s());
    for (auto _ : st) benchmark::DoNotOptimize(m.convolve_at(WeylElem::s(), WeylElem::s(), one));
}
BENCHMARK(convolve_s_s)->Arg(5)->Arg(13);

}  // namespace

BENCHMARK_MAIN();
