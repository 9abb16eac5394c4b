#include "doctest.h"

#include "ubb/engine.hpp"
#include "ubb/errors.hpp"
#include "ubb/oracle.hpp"
#include "ubb/rng.hpp"

using namespace ubb;

namespace {

Engine make_engine(std::size_t n, std::size_t arity, std::uint64_t seed = 1) {
    return Engine(Oracle(random_instance(ProblemClass::OneMax, n, splitmix64(seed ^ 0x5eedULL))), arity);
}

} // namespace

TEST_CASE("engine rejects operators above the arity limit") {
    auto e = make_engine(8, 1);
    Rng rng(1);
    const auto x = e.apply(OperatorId::uniform_sample(), {}, rng).handle;
    CHECK_NOTHROW(e.apply(OperatorId::complement(), {x}, rng));
    CHECK_THROWS_AS(e.apply(OperatorId::flip_one_where_different(), {x, x}, rng), ModelViolation);
}

TEST_CASE("engine rejects wrong parent counts and dangling handles") {
    auto e = make_engine(8, 3);
    Rng rng(2);
    const auto x = e.apply(OperatorId::uniform_sample(), {}, rng).handle;
    CHECK_THROWS_AS(e.apply(OperatorId::update(), {x, x}, rng), ModelViolation);
    CHECK_THROWS_AS(e.apply(OperatorId::complement(), {PointHandle{5}}, rng), ModelViolation);
    CHECK_THROWS_AS(e.fitness(PointHandle{5}), ModelViolation);
    CHECK(e.query_count() == 1);
}

TEST_CASE("every application is one query and one audit entry") {
    auto e = make_engine(12, 2);
    Rng rng(3);
    auto x = e.apply(OperatorId::uniform_sample(), {}, rng).handle;
    auto y = e.apply(OperatorId::complement(), {x}, rng).handle;
    for (int i = 0; i < 50; ++i) {
        const auto next = e.apply(OperatorId::flip_one_where_different(), {x, y}, rng);
        if (next.fitness > e.fitness(x)) x = next.handle;
    }
    const EngineInspector inspect(e);
    CHECK(e.query_count() == 52);
    CHECK(e.audit().size() == 52);
    CHECK(inspect.oracle().history().size() == 52);
    for (const auto& call : e.audit()) CHECK(call.op.arity <= 2);
    CHECK(e.fitness(y) == inspect.oracle().history()[y.index].value);
}

TEST_CASE("same seed, same query sequence") {
    auto run = [](std::uint64_t seed) {
        auto e = make_engine(20, 2, 9);
        Rng rng(seed);
        auto x = e.apply(OperatorId::uniform_sample(), {}, rng).handle;
        auto y = e.apply(OperatorId::complement(), {x}, rng).handle;
        for (int i = 0; i < 30; ++i) x = e.apply(OperatorId::random_where_different(), {x, y}, rng).handle;
        std::vector<BitString> points;
        for (const auto& q : EngineInspector(e).oracle().history()) points.push_back(q.point);
        return points;
    };
    CHECK(run(4) == run(4));
    CHECK(run(4) != run(5));
}
