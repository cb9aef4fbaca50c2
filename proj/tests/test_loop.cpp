#include <doctest.h>

#include "quadloop/loop.hpp"
#include "quadloop/loop_json.hpp"

#include <random>
#include <set>

using namespace quadloop;

namespace {

AffineLoop paperAffineLoop52() {
    return AffineLoop{MatQ(2, 2, {Rat(3, 5), Rat(-4, 5), Rat(4, 5), Rat(3, 5)}),
                      VecQ{Rat(2), Rat(-1)}, VecQ{Rat(1), Rat(-1)}};
}

QuadraticEquation equation52() {
    return QuadraticEquation{QuadraticForm(MatQ::identity(2)),
                             LinearForm(VecQ{Rat(-3), Rat(-1)}), Rat(0)};
}

QuadraticEquation equation57() {
    MatQ a(3, 3, {Rat(-11), Rat(1), Rat(-6), Rat(1), Rat(1), Rat(0), Rat(-6), Rat(0), Rat(-3)});
    return QuadraticEquation{QuadraticForm(std::move(a)), LinearForm(VecQ{Rat(1), Rat(0), Rat(1)}),
                             Rat(-1)};
}

LinearLoop paperFinalLoop57() {
    return LinearLoop{MatQ(3, 3,
                           {Rat(1), Rat(0), Rat(0), Rat(27, 4), Rat(2), Rat(3), Rat(35, 12),
                            Rat(1), Rat(2)}),
                      VecQ{Rat(2), Rat(-1), Rat(-4)}};
}

}  // namespace

TEST_CASE("iterate basics") {
    Loop scaling = LinearLoop{Rat(2) * MatQ::identity(2), VecQ{Rat(1), Rat(1)}};
    CHECK(iterate(scaling, 0) == VecQ{Rat(1), Rat(1)});
    CHECK(iterate(scaling, 10) == VecQ{Rat(1024), Rat(1024)});
    CHECK_THROWS_AS(iterate(scaling, -1), std::invalid_argument);

    Loop aff = paperAffineLoop52();
    VecQ x1 = iterate(aff, 1);
    CHECK(x1 == VecQ{Rat(3), Rat(0)});
    CHECK(equation52().evaluate(x1).isZero());
}

TEST_CASE("augment simulates the affine loop in its last coordinates") {
    AffineLoop aff = paperAffineLoop52();
    LinearLoop big = augment(aff);
    CHECK(big.update(0, 0) == Rat(1));
    CHECK(big.init[0] == Rat(1));
    for (long n = 0; n <= 20; ++n) {
        VecQ lifted = iterate(Loop{big}, n);
        VecQ direct = iterate(Loop{aff}, n);
        CHECK(lifted[0] == Rat(1));
        CHECK(lifted[1] == direct[0]);
        CHECK(lifted[2] == direct[1]);
    }

    AffineLoop zeroT{Rat(3) * MatQ::identity(2), VecQ{Rat(1), Rat(2)}, VecQ(2)};
    LinearLoop bz = augment(zeroT);
    CHECK(bz.update(1, 0).isZero());
    CHECK(bz.update(2, 0).isZero());
}

TEST_CASE("the published augmented matrix of the degenerate example") {
    // affine loop <M, s', t> with M = [[2,3],[1,2]], s' = (1/3, 0),
    // t = (-1/6, -1/18); its augmented matrix is the displayed M'.
    AffineLoop aff{MatQ(2, 2, {Rat(2), Rat(3), Rat(1), Rat(2)}), VecQ{Rat(1, 3), Rat(0)},
                   VecQ{Rat(-1, 6), Rat(-1, 18)}};
    LinearLoop big = augment(aff);
    CHECK(big.update == MatQ(3, 3,
                             {Rat(1), Rat(0), Rat(0), Rat(-1, 6), Rat(2), Rat(3), Rat(-1, 18),
                              Rat(1), Rat(2)}));
    CHECK(big.init == VecQ{Rat(1), Rat(1, 3), Rat(0)});
}

TEST_CASE("augment commutes with iteration on random affine loops") {
    std::mt19937_64 rng(79);
    std::uniform_int_distribution<long> dist(-5, 5);
    for (int trial = 0; trial < 20; ++trial) {
        int d = 2 + trial % 4;
        MatQ m(d, d);
        VecQ s(d), t(d);
        for (int i = 0; i < d; ++i) {
            s[i] = Rat(dist(rng), 2);
            t[i] = Rat(dist(rng), 3);
            for (int j = 0; j < d; ++j) m(i, j) = Rat(dist(rng), 2);
        }
        AffineLoop aff{m, s, t};
        LinearLoop big = augment(aff);
        VecQ lifted = iterate(Loop{big}, 50);
        VecQ direct = iterate(Loop{aff}, 50);
        CHECK(lifted[0] == Rat(1));
        for (int i = 0; i < d; ++i) CHECK(lifted[i + 1] == direct[i]);
    }
}

TEST_CASE("verifyInvariant on the published loops") {
    CHECK(verifyInvariant(Loop{paperAffineLoop52()}, equation52(), 100).ok);
    CHECK(verifyInvariant(Loop{paperFinalLoop57()}, equation57(), 100).ok);

    AffineLoop bad = paperAffineLoop52();
    bad.init = VecQ{Rat(2), Rat(0)};
    auto rep = verifyInvariant(Loop{bad}, equation52(), 10);
    CHECK_FALSE(rep.ok);
    CHECK(rep.firstViolation == 0);
}

TEST_CASE("distinct-prefix certification of foreign loops") {
    Loop identity = LinearLoop{MatQ::identity(2), VecQ{Rat(1), Rat(2)}};
    CHECK_FALSE(certifyNontrivial(identity, nullptr, nullptr, 10).has_value());

    Loop scaling = LinearLoop{Rat(2) * MatQ::identity(2), VecQ{Rat(1), Rat(0)}};
    auto cert = certifyNontrivial(scaling, nullptr, nullptr, 50);
    REQUIRE(cert.has_value());
    CHECK(cert->kind == NontrivialityCertificate::Kind::DistinctPrefix);
    CHECK(cert->prefixLength == 51);

    // period-2 loop: x <- -x
    Loop flip = LinearLoop{Rat(-1) * MatQ::identity(1), VecQ{Rat(3)}};
    CHECK_FALSE(certifyNontrivial(flip, nullptr, nullptr, 10).has_value());
}

TEST_CASE("trace replay rebuilds a loop step by step") {
    SynthesisTrace trace;
    TraceStep core;
    core.kind = TraceStep::Kind::Core;
    core.label = "scaling";
    core.matrix = Rat(2) * MatQ::identity(2);
    core.init = VecQ{Rat(1), Rat(1)};
    core.translation = VecQ(2);
    trace.push_back(core);

    TraceStep conj;
    conj.kind = TraceStep::Kind::Conjugate;
    conj.label = "sigma";
    conj.matrix = MatQ(2, 2, {Rat(1), Rat(1), Rat(0), Rat(1)});
    trace.push_back(conj);

    Loop loop = replayTrace(trace);
    CHECK(loopUpdate(loop) == Rat(2) * MatQ::identity(2));  // 2I commutes
    CHECK(loopInit(loop) == VecQ{Rat(2), Rat(1)});

    NontrivialityCertificate cert;
    cert.kind = NontrivialityCertificate::Kind::ScalingBlock;
    cert.coordinate = 0;
    cert.factor = Rat(2);
    cert.initial = Rat(1);
    CHECK(certifyNontrivial(loop, &trace, &cert, 10).has_value());

    // a tampered loop no longer matches its trace
    Loop tampered = LinearLoop{Rat(3) * MatQ::identity(2), VecQ{Rat(2), Rat(1)}};
    CHECK_THROWS_AS(certifyNontrivial(tampered, &trace, &cert, 10), std::logic_error);
}

TEST_CASE("scaling certificates require a nonzero scaled coordinate") {
    SynthesisTrace trace;
    TraceStep core;
    core.kind = TraceStep::Kind::Core;
    core.label = "scaling";
    core.matrix = Rat(2) * MatQ::identity(2);
    core.init = VecQ{Rat(0), Rat(0)};
    core.translation = VecQ(2);
    trace.push_back(core);
    Loop loop = replayTrace(trace);

    NontrivialityCertificate cert;
    cert.kind = NontrivialityCertificate::Kind::ScalingBlock;
    cert.coordinate = 0;
    cert.factor = Rat(2);
    cert.initial = Rat(0);
    CHECK_THROWS_AS(certifyNontrivial(loop, &trace, &cert, 10), std::logic_error);
}

TEST_CASE("loop JSON round trip is byte identical") {
    AffineLoop aff = paperAffineLoop52();
    NontrivialityCertificate cert;
    cert.kind = NontrivialityCertificate::Kind::NivenRotationBlock;
    cert.alpha = Rat(3, 5);
    cert.blockI = 0;
    cert.blockJ = 1;

    auto j = loopToJson(Loop{aff}, &cert, nullptr);
    std::string once = j.dump(2);
    LoadedLoop back = loopFromJson(nlohmann::json::parse(once));
    std::string twice = loopToJson(back.loop, &*back.certificate, nullptr).dump(2);
    CHECK(once == twice);
    CHECK(loopUpdate(back.loop) == aff.update);
    CHECK(loopTranslation(back.loop) == aff.translation);

    LinearLoop lin = paperFinalLoop57();
    auto j2 = loopToJson(Loop{lin}, nullptr, nullptr);
    LoadedLoop b2 = loopFromJson(j2);
    CHECK(std::holds_alternative<LinearLoop>(b2.loop));
    CHECK(loopToJson(b2.loop, nullptr, nullptr).dump(2) == j2.dump(2));
}

TEST_CASE("loop JSON rejects malformed documents") {
    CHECK_THROWS_AS(loopFromJson(nlohmann::json::parse(R"({"kind":"linear"})")), LoopSchemaError);
    CHECK_THROWS_AS(
        loopFromJson(nlohmann::json::parse(
            R"({"kind":"spiral","dim":1,"update":[["1"]],"init":["1"]})")),
        LoopSchemaError);
    CHECK_THROWS_AS(
        loopFromJson(nlohmann::json::parse(
            R"({"kind":"linear","dim":2,"update":[["1"]],"init":["1"]})")),
        LoopSchemaError);
    CHECK_THROWS_AS(
        loopFromJson(nlohmann::json::parse(
            R"({"kind":"linear","dim":1,"update":[["1/0"]],"init":["1"]})")),
        LoopSchemaError);
}
