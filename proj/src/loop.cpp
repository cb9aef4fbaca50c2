#include "quadloop/loop.hpp"

#include <set>
#include <sstream>

namespace quadloop {

int loopDim(const Loop& loop) {
    return std::visit([](const auto& l) { return l.update.rows(); }, loop);
}

const MatQ& loopUpdate(const Loop& loop) {
    return std::visit([](const auto& l) -> const MatQ& { return l.update; }, loop);
}

const VecQ& loopInit(const Loop& loop) {
    return std::visit([](const auto& l) -> const VecQ& { return l.init; }, loop);
}

VecQ loopTranslation(const Loop& loop) {
    if (const auto* aff = std::get_if<AffineLoop>(&loop)) return aff->translation;
    return VecQ(loopDim(loop));
}

VecQ stepLoop(const Loop& loop, const VecQ& x) {
    if (const auto* aff = std::get_if<AffineLoop>(&loop)) return aff->update * x + aff->translation;
    return std::get<LinearLoop>(loop).update * x;
}

VecQ iterate(const Loop& loop, long n) {
    if (n < 0) throw std::invalid_argument("iterate: negative iteration count");
    VecQ x = loopInit(loop);
    for (long i = 0; i < n; ++i) x = stepLoop(loop, x);
    return x;
}

std::vector<VecQ> iterates(const Loop& loop, long n) {
    std::vector<VecQ> out;
    out.reserve(static_cast<size_t>(n) + 1);
    VecQ x = loopInit(loop);
    out.push_back(x);
    for (long i = 0; i < n; ++i) {
        x = stepLoop(loop, x);
        out.push_back(x);
    }
    return out;
}

LinearLoop augment(const AffineLoop& loop) {
    const int d = loop.update.rows();
    MatQ m(d + 1, d + 1);
    m(0, 0) = Rat(1);
    for (int i = 0; i < d; ++i) {
        m(i + 1, 0) = loop.translation[i];
        for (int j = 0; j < d; ++j) m(i + 1, j + 1) = loop.update(i, j);
    }
    VecQ s(d + 1);
    s[0] = Rat(1);
    for (int i = 0; i < d; ++i) s[i + 1] = loop.init[i];
    return LinearLoop{std::move(m), std::move(s)};
}

VerifyReport verifyInvariant(const Loop& loop, const QuadraticEquation& eq, long n) {
    if (loopDim(loop) != eq.dim())
        throw std::invalid_argument("verifyInvariant: dimension mismatch");
    VerifyReport rep;
    VecQ x = loopInit(loop);
    for (long i = 0; i <= n; ++i) {
        if (!eq.evaluate(x).isZero()) {
            rep.firstViolation = i;
            rep.checked = i + 1;
            return rep;
        }
        if (i < n) x = stepLoop(loop, x);
    }
    rep.ok = true;
    rep.checked = n + 1;
    return rep;
}

std::string NontrivialityCertificate::describe() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::NivenRotationBlock:
            os << "niven-rotation-block (alpha = " << alpha << ", core block " << blockI << ","
               << blockJ << ")";
            break;
        case Kind::ScalingBlock:
            os << "scaling-block (core coordinate " << coordinate << ", factor " << factor
               << ", initial value " << initial << ")";
            break;
        case Kind::DistinctPrefix:
            os << "distinct-prefix (" << prefixLength << " states pairwise distinct)";
            break;
    }
    return os.str();
}

namespace {

Loop applyStep(Loop cur, const TraceStep& st) {
    switch (st.kind) {
        case TraceStep::Kind::Core:
            if (st.translation.isZero()) return LinearLoop{st.matrix, st.init};
            return AffineLoop{st.matrix, st.init, st.translation};

        case TraceStep::Kind::Conjugate: {
            MatQ pInv = st.matrix.inverse();
            MatQ m = st.matrix * loopUpdate(cur) * pInv;
            VecQ s = st.matrix * loopInit(cur);
            if (const auto* aff = std::get_if<AffineLoop>(&cur))
                return AffineLoop{std::move(m), std::move(s), st.matrix * aff->translation};
            return LinearLoop{std::move(m), std::move(s)};
        }

        case TraceStep::Kind::AffineUnreduce: {
            if (!std::holds_alternative<LinearLoop>(cur))
                throw std::logic_error("replayTrace: affine-unreduce expects a linear loop");
            const auto& lin = std::get<LinearLoop>(cur);
            Rat inv2delta = (Rat(2) * st.delta).inverse();
            VecQ init = inv2delta * (lin.init - st.h);
            VecQ t = inv2delta * ((lin.update * st.h) - st.h);
            return AffineLoop{lin.update, std::move(init), std::move(t)};
        }

        case TraceStep::Kind::AugmentScale: {
            const MatQ& m = loopUpdate(cur);
            const VecQ& s = loopInit(cur);
            VecQ t = loopTranslation(cur);
            const int d = m.rows();
            if (st.beta1.isZero()) throw std::logic_error("replayTrace: zero beta1");
            MatQ big(d + 1, d + 1);
            big(0, 0) = Rat(1);
            for (int i = 0; i < d; ++i) {
                big(i + 1, 0) = t[i] / st.beta1;
                for (int j = 0; j < d; ++j) big(i + 1, j + 1) = m(i, j);
            }
            VecQ init(d + 1);
            init[0] = st.beta1;
            for (int i = 0; i < d; ++i) init[i + 1] = s[i];
            return LinearLoop{std::move(big), std::move(init)};
        }

        case TraceStep::Kind::Embed: {
            const MatQ& m = loopUpdate(cur);
            const VecQ& s = loopInit(cur);
            VecQ t = loopTranslation(cur);
            const int small = m.rows();
            if (static_cast<int>(st.positions.size()) != small)
                throw std::logic_error("replayTrace: embed position count mismatch");
            MatQ big = MatQ::identity(st.dim);
            VecQ init = st.fillInit;
            VecQ bt(st.dim);
            for (int i = 0; i < small; ++i) {
                int pi = st.positions[static_cast<size_t>(i)];
                big(pi, pi) = Rat(0);
            }
            for (int i = 0; i < small; ++i) {
                int pi = st.positions[static_cast<size_t>(i)];
                for (int j = 0; j < small; ++j)
                    big(pi, st.positions[static_cast<size_t>(j)]) = m(i, j);
                init[pi] = s[i];
                bt[pi] = t[i];
            }
            if (bt.isZero() && std::holds_alternative<LinearLoop>(cur))
                return LinearLoop{std::move(big), std::move(init)};
            return AffineLoop{std::move(big), std::move(init), std::move(bt)};
        }
    }
    throw std::logic_error("replayTrace: unknown step kind");
}

}  // namespace

Loop replayTrace(const SynthesisTrace& trace) {
    if (trace.empty() || trace.front().kind != TraceStep::Kind::Core)
        throw std::logic_error("replayTrace: trace must start with a core step");
    Loop cur = applyStep(LinearLoop{MatQ(), VecQ()}, trace.front());
    for (size_t i = 1; i < trace.size(); ++i) cur = applyStep(std::move(cur), trace[i]);
    return cur;
}

namespace {

bool sameLoop(const Loop& a, const Loop& b) {
    return loopUpdate(a) == loopUpdate(b) && loopInit(a) == loopInit(b) &&
           loopTranslation(a) == loopTranslation(b);
}

bool nivenExcludedHalfTrace(const Rat& alpha) {
    return alpha.isZero() || alpha == Rat(1) || alpha == Rat(-1) || alpha == Rat(1, 2) ||
           alpha == Rat(-1, 2);
}

// The certificate conditions are checked against the trace's core loop,
// where the rotation/scaling structure is explicit. Every later trace
// step maps orbits injectively, so core-orbit infiniteness carries over.
void validateCoreCertificate(const TraceStep& core, const NontrivialityCertificate& cert) {
    const MatQ& m = core.matrix;
    const int d = m.rows();

    if (cert.kind == NontrivialityCertificate::Kind::ScalingBlock) {
        int c = cert.coordinate;
        if (c < 0 || c >= d) throw std::logic_error("certificate: coordinate out of range");
        if (core.init[c] != cert.initial || cert.initial.isZero())
            throw std::logic_error("certificate: scaled coordinate must start nonzero");
        if (m(c, c) != cert.factor || cert.factor.abs() <= Rat(1))
            throw std::logic_error("certificate: scaling factor must have |factor| > 1");
        for (int j = 0; j < d; ++j)
            if (j != c && !m(c, j).isZero())
                throw std::logic_error("certificate: scaled coordinate is not autonomous");
        if (!core.translation.isZero() && !core.translation[c].isZero())
            throw std::logic_error("certificate: scaled coordinate must not be translated");
        return;
    }

    if (cert.kind == NontrivialityCertificate::Kind::NivenRotationBlock) {
        int i = cert.blockI, j = cert.blockJ;
        if (i < 0 || j < 0 || i >= d || j >= d || i == j)
            throw std::logic_error("certificate: bad block position");
        Rat halfTrace = (m(i, i) + m(j, j)) / Rat(2);
        if (halfTrace != cert.alpha || nivenExcludedHalfTrace(cert.alpha))
            throw std::logic_error("certificate: Niven check failed");
        Rat det = m(i, i) * m(j, j) - m(i, j) * m(j, i);
        if (det != Rat(1))
            throw std::logic_error("certificate: rotation block determinant is not 1");
        for (int k = 0; k < d; ++k) {
            if (k == i || k == j) continue;
            if (!m(i, k).isZero() || !m(j, k).isZero())
                throw std::logic_error("certificate: rotation block is not autonomous");
        }
        if (core.init[i].isZero() && core.init[j].isZero())
            throw std::logic_error("certificate: rotation block starts at the origin");
        if (!core.translation.isZero() &&
            (!core.translation[i].isZero() || !core.translation[j].isZero()))
            throw std::logic_error("certificate: rotation block must not be translated");
        return;
    }

    throw std::logic_error("certificate: declared kind cannot be validated against a trace");
}

}  // namespace

std::optional<NontrivialityCertificate> certifyNontrivial(const Loop& loop,
                                                          const SynthesisTrace* trace,
                                                          const NontrivialityCertificate* declared,
                                                          long prefixLength) {
    if (trace && declared) {
        Loop replayed = replayTrace(*trace);
        if (!sameLoop(replayed, loop))
            throw std::logic_error("certifyNontrivial: trace does not reproduce the loop");
        validateCoreCertificate(trace->front(), *declared);
        return *declared;
    }

    // Foreign loop: sound but incomplete distinct-prefix check.
    std::set<std::string> seen;
    VecQ x = loopInit(loop);
    for (long i = 0; i < prefixLength; ++i) {
        if (!seen.insert(x.toString()).second) return std::nullopt;
        x = stepLoop(loop, x);
    }
    if (!seen.insert(x.toString()).second) return std::nullopt;
    NontrivialityCertificate cert;
    cert.kind = NontrivialityCertificate::Kind::DistinctPrefix;
    cert.prefixLength = prefixLength + 1;
    return cert;
}

}  // namespace quadloop
