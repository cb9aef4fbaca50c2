#include "quadloop/emit.hpp"
#include "quadloop/loop_json.hpp"
#include "quadloop/parser.hpp"
#include "quadloop/synthesis.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace quadloop;

constexpr int kExitLoop = 0;
constexpr int kExitNoLoop = 1;
constexpr int kExitParseError = 2;
constexpr int kExitSearchLimit = 3;
constexpr int kExitInternal = 4;

std::string readEquationText(const std::string& arg) {
    if (arg != "-") return arg;
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
}

SearchLimits limitsFromEnv(long flagValue) {
    SearchLimits limits;
    if (const char* env = std::getenv("QUADLOOP_SEARCH_LIMIT")) {
        long v = std::atol(env);
        if (v > 0) limits.maxNorm = v;
    }
    if (flagValue > 0) limits.maxNorm = flagValue;
    return limits;
}

std::vector<std::string> splitVars(const std::string& csv) {
    std::vector<std::string> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

ParsedEquation parseWithVars(const std::string& text, const std::string& varsCsv) {
    if (varsCsv.empty()) return parseEquation(text);
    auto vars = splitVars(varsCsv);
    return parseEquation(text, &vars);
}

// Lifts a d-variable invariant to the (d+1)-variable augmented space,
// acting on the last d coordinates.
QuadraticEquation liftEquation(const QuadraticEquation& eq) {
    const int d = eq.dim();
    MatQ a(d + 1, d + 1);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) a(i + 1, j + 1) = eq.form.matrix()(i, j);
    VecQ b(d + 1);
    for (int i = 0; i < d; ++i) b[i + 1] = eq.linear.coeffs()[i];
    return QuadraticEquation{QuadraticForm(std::move(a)), LinearForm(std::move(b)), eq.constant};
}

std::string prettyVec(const VecQ& v) { return v.toString(); }

int runSynth(const std::string& eqText, const std::string& varsCsv, const std::string& format,
             long verifyIters, bool augmentFlag, long searchLimit) {
    auto parsed = parseWithVars(readEquationText(eqText), varsCsv);
    auto outcome = affLoop(parsed.eq, limitsFromEnv(searchLimit));
    if (const auto* no = std::get_if<NoLoop>(&outcome)) {
        std::cout << "no loop: " << no->reason << "\n";
        return kExitNoLoop;
    }
    Synthesized syn = std::get<Synthesized>(std::move(outcome));
    QuadraticEquation checkEq = parsed.eq;
    std::vector<std::string> vars = parsed.vars;
    if (augmentFlag) {
        syn = augmentToLinear(syn);
        checkEq = liftEquation(parsed.eq);
        vars.insert(vars.begin(), "one");
    }

    auto rep = verifyInvariant(syn.loop, checkEq, verifyIters);
    if (!rep.ok) {
        std::cerr << "internal error: synthesized loop violates the invariant at n = "
                  << rep.firstViolation << "\n";
        return kExitInternal;
    }
    std::string verifiedLine =
        "verified: invariant holds exactly for n = 0.." + std::to_string(verifyIters);

    EmitFormat fmt = emitFormatFromName(format);
    if (fmt == EmitFormat::Json) {
        std::cout << emitLoop(syn.loop, &syn.certificate, &syn.trace, fmt, vars);
        std::cerr << "certificate: " << syn.certificate.describe() << "\n"
                  << verifiedLine << "\n";
    } else if (fmt == EmitFormat::CLike) {
        std::cout << "/* " << verifiedLine << " */\n"
                  << emitLoop(syn.loop, &syn.certificate, &syn.trace, fmt, vars, &parsed.eq,
                              &parsed.vars);
    } else {
        std::cout << emitLoop(syn.loop, &syn.certificate, &syn.trace, fmt, vars) << "\n"
                  << verifiedLine << "\n";
    }
    return kExitLoop;
}

int runVerify(const std::string& loopPath, const std::string& eqText, const std::string& varsCsv,
              long iters) {
    std::ifstream in(loopPath);
    if (!in) {
        std::cerr << "error: cannot open " << loopPath << "\n";
        return kExitParseError;
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        std::cerr << "error: invalid JSON: " << e.what() << "\n";
        return kExitParseError;
    }
    LoadedLoop loaded = loopFromJson(j);
    auto parsed = parseWithVars(readEquationText(eqText), varsCsv);
    if (loopDim(loaded.loop) != parsed.eq.dim()) {
        std::cerr << "error: loop has " << loopDim(loaded.loop) << " variables but the equation has "
                  << parsed.eq.dim() << "\n";
        return kExitParseError;
    }

    auto rep = verifyInvariant(loaded.loop, parsed.eq, iters);
    if (rep.ok)
        std::cout << "PASS: invariant holds exactly for n = 0.." << iters << "\n";
    else
        std::cout << "FAIL: first violation at n = " << rep.firstViolation << "\n";

    std::optional<NontrivialityCertificate> cert;
    try {
        cert = certifyNontrivial(loaded.loop,
                                 loaded.trace ? &*loaded.trace : nullptr,
                                 loaded.certificate ? &*loaded.certificate : nullptr, iters);
    } catch (const std::logic_error&) {
        cert = std::nullopt;  // ill-formed certificate on a foreign loop
    }
    if (cert)
        std::cout << "orbit: " << cert->describe() << "\n";
    else
        std::cout << "warning: orbit not certified infinite\n";
    return rep.ok ? 0 : 1;
}

int runSample(const std::string& eqText, const std::string& varsCsv, long count,
              long searchLimit) {
    auto parsed = parseWithVars(readEquationText(eqText), varsCsv);
    auto outcome = affLoop(parsed.eq, limitsFromEnv(searchLimit));
    if (const auto* no = std::get_if<NoLoop>(&outcome)) {
        std::cerr << "no loop: " << no->reason << "\n";
        return kExitNoLoop;
    }
    const Synthesized& syn = std::get<Synthesized>(outcome);
    std::set<std::string> seen;
    VecQ x = loopInit(syn.loop);
    for (long i = 0; i < count; ++i) {
        if (!parsed.eq.evaluate(x).isZero() || !seen.insert(x.toString()).second) {
            std::cerr << "internal error: sampling produced an invalid or repeated point\n";
            return kExitInternal;
        }
        std::cout << prettyVec(x) << "\n";
        x = stepLoop(syn.loop, x);
    }
    return kExitLoop;
}

int runDiag(const std::string& formText, const std::string& varsCsv) {
    std::string text = readEquationText(formText);
    ParsedForm parsed = varsCsv.empty() ? parseQuadraticForm(text) : [&] {
        auto vars = splitVars(varsCsv);
        return parseQuadraticForm(text, &vars);
    }();
    auto dg = diagonalize(parsed.form);
    std::cout << "D = diag(";
    for (size_t i = 0; i < dg.diag.size(); ++i) {
        if (i) std::cout << ", ";
        std::cout << dg.diag[i];
    }
    std::cout << ")\nsigma =\n";
    for (int i = 0; i < dg.sigma.rows(); ++i) {
        std::cout << "  [";
        for (int j = 0; j < dg.sigma.cols(); ++j) {
            if (j) std::cout << " ";
            std::cout << dg.sigma(i, j);
        }
        std::cout << "]\n";
    }
    std::cout << "definiteness: " << definitenessName(definiteness(dg.diag)) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Synthesizes linear/affine loops whose orbits satisfy a quadratic invariant"};
    app.require_subcommand(1);

    std::string eqText, varsCsv, format = "pretty", loopPath;
    long verifyIters = 100, iters = 100, count = 10, searchLimit = 0;
    bool augmentFlag = false;

    auto* synth = app.add_subcommand("synth", "Synthesize a loop for a quadratic equation");
    synth->add_option("equation", eqText, "Equation text, or - for stdin")->required();
    synth->add_option("--format", format, "Output format: pretty, json or c");
    synth->add_option("--verify", verifyIters, "Verification iteration count (default 100)");
    synth->add_flag("--augment", augmentFlag, "Emit the (d+1)-variable linear loop");
    synth->add_option("--vars", varsCsv, "Comma-separated variable order");
    synth->add_option("--search-limit", searchLimit, "Witness search max-norm cap");

    auto* verify = app.add_subcommand("verify", "Check a loop JSON against an equation");
    verify->add_option("--loop", loopPath, "Loop JSON file")->required();
    verify->add_option("--equation", eqText, "Equation text, or - for stdin")->required();
    verify->add_option("--iters", iters, "Iterations to check (default 100)");
    verify->add_option("--vars", varsCsv, "Comma-separated variable order");

    auto* sample = app.add_subcommand("sample", "Print distinct exact points on the variety");
    sample->add_option("--equation", eqText, "Equation text, or - for stdin")->required();
    sample->add_option("-n", count, "Number of points")->required();
    sample->add_option("--vars", varsCsv, "Comma-separated variable order");
    sample->add_option("--search-limit", searchLimit, "Witness search max-norm cap");

    auto* diag = app.add_subcommand("diag", "Diagonalize a quadratic form");
    diag->add_option("form", eqText, "Quadratic form text, or - for stdin")->required();
    diag->add_option("--vars", varsCsv, "Comma-separated variable order");

    CLI11_PARSE(app, argc, argv);

    try {
        if (synth->parsed()) return runSynth(eqText, varsCsv, format, verifyIters, augmentFlag,
                                             searchLimit);
        if (verify->parsed()) return runVerify(loopPath, eqText, varsCsv, iters);
        if (sample->parsed()) return runSample(eqText, varsCsv, count, searchLimit);
        if (diag->parsed()) return runDiag(eqText, varsCsv);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParseError;
    } catch (const LoopSchemaError& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return kExitParseError;
    } catch (const SearchLimitExceeded& e) {
        std::cerr << "search limit exceeded: " << e.what() << "\n";
        return kExitSearchLimit;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParseError;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParseError;
    } catch (const std::logic_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitInternal;
}
