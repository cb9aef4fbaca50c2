#include "quadloop/synthesis.hpp"

#include "quadloop/pell.hpp"

#include <algorithm>
#include <functional>

namespace quadloop {

namespace {

TraceStep coreStep(std::string label, MatQ m, VecQ s, VecQ t) {
    TraceStep st;
    st.kind = TraceStep::Kind::Core;
    st.label = std::move(label);
    st.matrix = std::move(m);
    st.init = std::move(s);
    st.translation = std::move(t);
    return st;
}

TraceStep conjugateStep(std::string label, MatQ p) {
    TraceStep st;
    st.kind = TraceStep::Kind::Conjugate;
    st.label = std::move(label);
    st.matrix = std::move(p);
    return st;
}

NontrivialityCertificate scalingCert(int coordinate, Rat factor, Rat initial) {
    NontrivialityCertificate c;
    c.kind = NontrivialityCertificate::Kind::ScalingBlock;
    c.coordinate = coordinate;
    c.factor = std::move(factor);
    c.initial = std::move(initial);
    return c;
}

NontrivialityCertificate nivenCert(const Rat& alpha, int i, int j) {
    NontrivialityCertificate c;
    c.kind = NontrivialityCertificate::Kind::NivenRotationBlock;
    c.alpha = alpha;
    c.blockI = i;
    c.blockJ = j;
    return c;
}

// Replays the trace, validates the certificate against it, and checks
// the invariant on a short prefix. Any failure here is a bug.
Synthesized finishSynthesis(SynthesisTrace trace, NontrivialityCertificate cert,
                            const QuadraticEquation& eq, std::optional<Loop> loopOverride = {}) {
    Loop loop = loopOverride ? *loopOverride : replayTrace(trace);
    certifyNontrivial(loop, &trace, &cert);
    auto rep = verifyInvariant(loop, eq, 4);
    if (!rep.ok)
        throw std::logic_error("synthesis produced a loop violating its invariant at n = " +
                               std::to_string(rep.firstViolation));
    return Synthesized{std::move(loop), std::move(cert), std::move(trace)};
}

QuadraticEquation pureFormEquation(const QuadraticForm& q, const Rat& c) {
    return QuadraticEquation{q, LinearForm(VecQ(q.dim())), c};
}

}  // namespace

SynthesisOutcome linLoop(const QuadraticForm& q, const Rat& c, const SearchLimits& limits) {
    const int d = q.dim();
    if (d < 1) throw std::invalid_argument("linLoop: empty form");
    if (d == 1) return NoLoop{"dimension 1: the equation has only finitely many solutions"};

    auto dg = diagonalize(q);
    std::vector<int> nz, zero;
    for (int i = 0; i < d; ++i) (dg.diag[static_cast<size_t>(i)].isZero() ? zero : nz).push_back(i);
    const int r = static_cast<int>(nz.size());

    MatQ mD = MatQ::identity(d);
    VecQ alpha(d);
    for (int i : zero) alpha[i] = Rat(1);
    std::string label;
    NontrivialityCertificate cert;

    if (r == 0) {
        if (!c.isZero()) return NoLoop{"the zero form cannot attain a nonzero constant"};
        for (int i = 0; i < d; ++i) mD(i, i) = Rat(2);
        label = "scaling";
        cert = scalingCert(0, Rat(2), Rat(1));
    } else if (r == 1) {
        Rat ratio = c / dg.diag[static_cast<size_t>(nz[0])];
        if (!ratio.isSquare())
            return NoLoop{"c/a1 is not the square of a rational"};
        alpha[nz[0]] = ratio.sqrt();
        for (int i : zero) mD(i, i) = Rat(2);
        label = "scaling";
        cert = scalingCert(zero.front(), Rat(2), Rat(1));
    } else {
        std::vector<Rat> coeffs;
        coeffs.reserve(static_cast<size_t>(r));
        for (int i : nz) coeffs.push_back(dg.diag[static_cast<size_t>(i)]);
        auto sol = solveDiagonalRational(coeffs, c, limits);
        if (sol) {
            for (int t = 0; t < r; ++t) alpha[nz[static_cast<size_t>(t)]] = (*sol)[t];
            auto pell = solvePell(coeffs[0], coeffs[1]);
            MatQ rot = rotationMatrix(pell);
            mD(nz[0], nz[0]) = rot(0, 0);
            mD(nz[0], nz[1]) = rot(0, 1);
            mD(nz[1], nz[0]) = rot(1, 0);
            mD(nz[1], nz[1]) = rot(1, 1);
            label = "pell-rotation";
            cert = nivenCert(pell.alpha, nz[0], nz[1]);
        } else if (c.isZero() && !zero.empty()) {
            // The restriction to the nonzero coefficients only has the
            // trivial zero, but the kernel coordinates still carry a
            // non-trivial loop: freeze the form coordinates at 0.
            for (int i : nz) alpha[i] = Rat(0);
            for (int i : zero) mD(i, i) = Rat(2);
            label = "scaling";
            cert = scalingCert(zero.front(), Rat(2), Rat(1));
        } else {
            return NoLoop{"the diagonal equation has no nonzero rational solution"};
        }
    }

    SynthesisTrace trace;
    trace.push_back(coreStep(label, std::move(mD), std::move(alpha), VecQ(d)));
    trace.push_back(conjugateStep("sigma", dg.sigma));
    return finishSynthesis(std::move(trace), std::move(cert), pureFormEquation(q, c));
}

AffineReduction affineReduce(const QuadraticEquation& eq) {
    Rat delta = eq.form.matrix().determinant();
    if (delta.isZero()) throw std::invalid_argument("affineReduce: degenerate quadratic form");
    MatQ cof = eq.form.matrix().adjugate();
    VecQ h = cof * eq.linear.coeffs();
    Rat cTilde = Rat(4) * delta * delta * eq.constant + eq.form.eval(h);
    return AffineReduction{std::move(delta), std::move(h), std::move(cTilde)};
}

AffineLoop affineFromLinear(const AffineReduction& red, const LinearLoop& lin) {
    Rat inv = (Rat(2) * red.delta).inverse();
    VecQ init = inv * (lin.init - red.h);
    VecQ t = inv * ((lin.update * red.h) - red.h);
    return AffineLoop{lin.update, std::move(init), std::move(t)};
}

DegenerateSplitResult degenerateSplit(const QuadraticEquation& eq) {
    const int d = eq.dim();
    auto rk = rankAndKernelBasis(eq.form);
    const int r = rk.rank, k = d - r;
    if (k == 0) throw std::invalid_argument("degenerateSplit: form is non-degenerate");

    MatQ tau = completeKernelBasisToTau(rk.kernel, d);
    MatQ conj = tau.transpose() * eq.form.matrix() * tau;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            if ((i < k || j < k) && !conj(i, j).isZero())
                throw std::logic_error("degenerateSplit: kernel block structure violated");

    MatQ block(r, r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) block(i, j) = conj(k + i, k + j);

    VecQ m = tau.transpose() * eq.linear.coeffs();
    std::vector<Rat> lambda;
    lambda.reserve(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) lambda.push_back(m[i]);
    VecQ reducedB(r);
    for (int i = 0; i < r; ++i) reducedB[i] = m[k + i];

    return DegenerateSplitResult{tau,          tau.inverse(),       r, k,
                                 QuadraticForm(std::move(block)),   LinearForm(std::move(reducedB)),
                                 std::move(lambda)};
}

namespace {

// Deterministic choice of the frozen values for the reduced coordinates.
// Tries (1,0,...), (1/3,0,...), (1,1,0,...) and then the grid {0..4}^r;
// a nonzero polynomial of degree <= 4 cannot vanish on the whole grid,
// so the scan always terminates.
VecQ chooseAlpha(int r, const std::function<bool(const VecQ&)>& good) {
    std::vector<VecQ> named;
    VecQ a1(r), a2(r), a3(r);
    a1[0] = Rat(1);
    a2[0] = Rat(1, 3);
    a3[0] = Rat(1);
    if (r > 1) a3[1] = Rat(1);
    named = {a1, a2, a3};
    for (const auto& a : named)
        if (good(a)) return a;

    VecQ g(r);
    std::function<VecQ*(int)> scan = [&](int idx) -> VecQ* {
        if (idx == r) return good(g) ? &g : nullptr;
        for (long v = 0; v <= 4; ++v) {
            g[idx] = Rat(v);
            if (VecQ* hit = scan(idx + 1)) return hit;
        }
        return nullptr;
    };
    if (VecQ* hit = scan(0)) return *hit;
    throw std::logic_error("chooseAlpha: no admissible point on the grid");
}

VecQ padFront(int k, const VecQ& tail) {
    VecQ out(k + tail.dim());
    for (int i = 0; i < tail.dim(); ++i) out[k + i] = tail[i];
    return out;
}

}  // namespace

SynthesisOutcome affLoop(const QuadraticEquation& eq, const SearchLimits& limits) {
    const int d = eq.dim();
    if (d < 1) throw std::invalid_argument("affLoop: empty equation");
    if (d == 1) return NoLoop{"dimension 1: a one-variable quadratic has finitely many solutions"};

    // L == 0: the invariant is a pure form equation.
    if (eq.linear.isZero()) return linLoop(eq.form, eq.constant, limits);

    // Non-degenerate: reduce affinely, solve the form equation, wrap back.
    if (!eq.form.matrix().determinant().isZero()) {
        auto red = affineReduce(eq);
        auto inner = linLoop(eq.form, red.cTilde, limits);
        if (auto* no = std::get_if<NoLoop>(&inner)) return *no;
        auto& syn = std::get<Synthesized>(inner);
        TraceStep st;
        st.kind = TraceStep::Kind::AffineUnreduce;
        st.delta = red.delta;
        st.h = red.h;
        st.cTilde = red.cTilde;
        syn.trace.push_back(std::move(st));
        return finishSynthesis(std::move(syn.trace), std::move(syn.certificate), eq);
    }

    auto split = degenerateSplit(eq);
    const int r = split.rank, k = split.kernelDim;

    std::vector<int> nzLambda;
    for (int i = 0; i < k; ++i)
        if (!split.lambda[static_cast<size_t>(i)].isZero()) nzLambda.push_back(i);

    auto residualAt = [&](const VecQ& a) {
        return eq.constant - split.reducedForm.eval(a) - split.reducedLinear.eval(a);
    };

    if (nzLambda.empty()) {
        // All kernel coordinates are absent from the equation.
        if (r == 0) {
            // Q == 0 and L(tau x) == 0, so the equation reads 0 = c.
            if (!eq.constant.isZero()) return NoLoop{"the equation reduces to 0 = c with c != 0"};
            SynthesisTrace trace;
            MatQ m = MatQ::identity(d);
            for (int i = 0; i < d; ++i) m(i, i) = Rat(2);
            VecQ ones(d);
            for (int i = 0; i < d; ++i) ones[i] = Rat(1);
            trace.push_back(coreStep("scaling", std::move(m), std::move(ones), VecQ(d)));
            return finishSynthesis(std::move(trace), scalingCert(0, Rat(2), Rat(1)), eq);
        }

        // Solve the reduced non-degenerate equation, then double the free
        // kernel coordinates while freezing the solution coordinates.
        auto red = affineReduce(QuadraticEquation{split.reducedForm, split.reducedLinear,
                                                  eq.constant});
        MatQ padded(d, d);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) padded(k + i, k + j) = split.reducedForm.matrix()(i, j);
        auto inner = linLoop(QuadraticForm(std::move(padded)), red.cTilde, limits);
        if (std::holds_alternative<NoLoop>(inner))
            return NoLoop{"the reduced form does not attain the reduced constant"};
        const VecQ& sL = loopInit(std::get<Synthesized>(inner).loop);

        VecQ s(d);
        for (int i = 0; i < k; ++i) s[i] = Rat(1);
        for (int i = 0; i < r; ++i) s[k + i] = sL[k + i];
        Rat inv = (Rat(2) * red.delta).inverse();
        VecQ sPrime = inv * (s - padFront(k, red.h));
        MatQ mPrime = MatQ::identity(d);
        for (int i = 0; i < k; ++i) mPrime(i, i) = Rat(2);

        SynthesisTrace trace;
        NontrivialityCertificate cert = scalingCert(0, Rat(2), sPrime[0]);
        trace.push_back(coreStep("degenerate-scaling", std::move(mPrime), std::move(sPrime), VecQ(d)));
        trace.push_back(conjugateStep("tau", split.tau));
        return finishSynthesis(std::move(trace), std::move(cert), eq);
    }

    const int kHat = static_cast<int>(nzLambda.size());
    const int i1 = nzLambda.front();
    const Rat& l1 = split.lambda[static_cast<size_t>(i1)];

    if (kHat > 1) {
        // Case 1: two kernel coordinates with nonzero coefficients carry
        // the whole right-hand side.
        const int i2 = nzLambda[1];
        const Rat& l2 = split.lambda[static_cast<size_t>(i2)];

        VecQ alpha(r);
        Rat residual = eq.constant;
        if (r > 0) {
            alpha = chooseAlpha(r, [&](const VecQ& a) { return !residualAt(a).isZero(); });
            residual = residualAt(alpha);
        }
        VecQ s(d);
        if (!residual.isZero()) {
            s[i1] = residual / l1;
        } else {
            s[i1] = -(l2 / l1);
            s[i2] = Rat(1);
        }
        for (int i = 0; i < k; ++i)
            if (split.lambda[static_cast<size_t>(i)].isZero()) s[i] = Rat(1);
        for (int i = 0; i < r; ++i) s[k + i] = alpha[i];

        MatQ m = MatQ::identity(d);
        m(i1, i1) = Rat(2);
        m(i2, i1) = -(l1 / l2);

        SynthesisTrace trace;
        NontrivialityCertificate cert = scalingCert(i1, Rat(2), s[i1]);
        trace.push_back(coreStep("case1", std::move(m), std::move(s), VecQ(d)));
        trace.push_back(conjugateStep("tau", split.tau));
        return finishSynthesis(std::move(trace), std::move(cert), eq);
    }

    if (r > 1) {
        // Case 2: pin the single right-hand-side coordinate to beta1 and
        // run a linear loop for the reduced form inside an augmented
        // matrix scaled by beta1.
        auto cTildeAt = [&](const VecQ& a) {
            Rat delta = split.reducedForm.matrix().determinant();
            VecQ h = split.reducedForm.matrix().adjugate() * split.reducedLinear.coeffs();
            return Rat(4) * delta * delta * (split.reducedForm.eval(a) + split.reducedLinear.eval(a)) +
                   split.reducedForm.eval(h);
        };
        VecQ alpha = chooseAlpha(r, [&](const VecQ& a) {
            return !residualAt(a).isZero() && !cTildeAt(a).isZero();
        });
        Rat beta1 = residualAt(alpha) / l1;
        Rat constant = eq.constant - l1 * beta1;  // A(beta1) = Q~(alpha) + L~(alpha)

        auto red = affineReduce(QuadraticEquation{split.reducedForm, split.reducedLinear, constant});
        auto inner = linLoop(split.reducedForm, red.cTilde, limits);
        if (std::holds_alternative<NoLoop>(inner))
            throw std::logic_error("affLoop: case 2 reduced equation must be solvable");
        auto& syn = std::get<Synthesized>(inner);

        TraceStep unred;
        unred.kind = TraceStep::Kind::AffineUnreduce;
        unred.delta = red.delta;
        unred.h = red.h;
        unred.cTilde = red.cTilde;
        syn.trace.push_back(std::move(unred));

        TraceStep aug;
        aug.kind = TraceStep::Kind::AugmentScale;
        aug.beta1 = beta1;
        syn.trace.push_back(std::move(aug));

        TraceStep embed;
        embed.kind = TraceStep::Kind::Embed;
        embed.dim = d;
        embed.positions.push_back(i1);
        for (int i = 0; i < r; ++i) embed.positions.push_back(k + i);
        embed.fillInit = VecQ(d);
        for (int i = 0; i < k; ++i)
            if (i != i1) embed.fillInit[i] = Rat(1);
        syn.trace.push_back(std::move(embed));

        syn.trace.push_back(conjugateStep("tau", split.tau));
        return finishSynthesis(std::move(syn.trace), std::move(syn.certificate), eq);
    }

    // Case 3: a w^2 + b w = c - l1 y (with a = 0 allowed when r = 0, in
    // which case a free kernel coordinate plays the role of w).
    Rat a(0), b(0);
    int wSlot = -1;
    if (r == 1) {
        a = split.reducedForm.matrix()(0, 0);
        b = split.reducedLinear.coeffs()[0];
        wSlot = k;  // the single reduced coordinate
    } else {
        for (int i = 0; i < k; ++i)
            if (split.lambda[static_cast<size_t>(i)].isZero()) { wSlot = i; break; }
        if (wSlot < 0) throw std::logic_error("affLoop: case 3 requires a free coordinate");
    }
    const Rat& cc = eq.constant;

    MatQ core(2, 2, {Rat(2), Rat(0), Rat(2) * b / l1, Rat(4)});
    VecQ init{Rat(1), (cc - a - b) / l1};
    VecQ trans{Rat(0), Rat(-3) * cc / l1};

    SynthesisTrace trace;
    trace.push_back(coreStep("case3", std::move(core), std::move(init), std::move(trans)));

    TraceStep embed;
    embed.kind = TraceStep::Kind::Embed;
    embed.dim = d;
    embed.positions = {wSlot, i1};
    embed.fillInit = VecQ(d);
    for (int i = 0; i < k; ++i)
        if (i != i1 && i != wSlot) embed.fillInit[i] = Rat(1);
    trace.push_back(std::move(embed));
    trace.push_back(conjugateStep("tau", split.tau));

    NontrivialityCertificate cert = scalingCert(0, Rat(2), Rat(1));
    Loop replayed = replayTrace(trace);
    // Case 3 is the genuinely affine construction; keep the affine kind
    // even when the translation happens to vanish.
    Loop asAffine = AffineLoop{loopUpdate(replayed), loopInit(replayed), loopTranslation(replayed)};
    return finishSynthesis(std::move(trace), std::move(cert), eq, std::move(asAffine));
}

Synthesized augmentToLinear(const Synthesized& s) {
    AffineLoop aff = std::holds_alternative<AffineLoop>(s.loop)
                         ? std::get<AffineLoop>(s.loop)
                         : AffineLoop{loopUpdate(s.loop), loopInit(s.loop), VecQ(loopDim(s.loop))};
    Synthesized out{Loop{augment(aff)}, s.certificate, s.trace};
    TraceStep st;
    st.kind = TraceStep::Kind::AugmentScale;
    st.beta1 = Rat(1);
    out.trace.push_back(std::move(st));
    certifyNontrivial(out.loop, &out.trace, &out.certificate);
    return out;
}

}  // namespace quadloop
