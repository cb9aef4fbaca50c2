#include "quadloop/emit.hpp"

#include "quadloop/loop_json.hpp"
#include "quadloop/parser.hpp"

#include <sstream>

namespace quadloop {

EmitFormat emitFormatFromName(const std::string& name) {
    if (name == "pretty") return EmitFormat::Pretty;
    if (name == "c") return EmitFormat::CLike;
    if (name == "json") return EmitFormat::Json;
    throw std::invalid_argument("unknown format '" + name + "' (expected pretty, c or json)");
}

namespace {

std::vector<std::string> defaultVars(int d) {
    std::vector<std::string> v;
    v.reserve(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) v.push_back("x" + std::to_string(i + 1));
    return v;
}

std::string tuple(const std::vector<std::string>& parts) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) os << ",";
        os << parts[i];
    }
    os << ")";
    return os.str();
}

// "3/5·x - 4/5·y + 1"; an empty affine row renders as "0".
std::string affineRow(const MatQ& m, int i, const VecQ& t, const std::vector<std::string>& vars) {
    std::ostringstream os;
    bool first = true;
    auto addTerm = [&](const Rat& coeff, const std::string& sym) {
        if (coeff.isZero()) return;
        Rat mag = coeff.abs();
        if (first) {
            if (coeff.sign() < 0) os << "-";
            first = false;
        } else {
            os << (coeff.sign() < 0 ? " - " : " + ");
        }
        if (sym.empty()) {
            os << mag.toString();
            return;
        }
        if (mag != Rat(1)) os << mag.toString() << "·";
        os << sym;
    };
    for (int j = 0; j < m.cols(); ++j) addTerm(m(i, j), vars[static_cast<size_t>(j)]);
    if (t.dim() > 0) addTerm(t[i], "");
    if (first) os << "0";
    return os.str();
}

std::string emitPretty(const Loop& loop, const NontrivialityCertificate* cert,
                       const std::vector<std::string>& vars) {
    const MatQ& m = loopUpdate(loop);
    const VecQ& s = loopInit(loop);
    VecQ t = loopTranslation(loop);
    std::vector<std::string> initParts, rowParts;
    for (int i = 0; i < m.rows(); ++i) {
        initParts.push_back(s[i].toString());
        rowParts.push_back(affineRow(m, i, t, vars));
    }
    std::ostringstream os;
    os << tuple(vars) << " ← " << tuple(initParts) << "; while ⋆ do " << tuple(vars)
       << " ← " << tuple(rowParts);
    if (cert) os << "\ncertificate: " << cert->describe();
    return os.str();
}

std::string emitCLike(const Loop& loop, const NontrivialityCertificate* cert,
                      const std::vector<std::string>& vars, const QuadraticEquation* eq,
                      const std::vector<std::string>* eqVars) {
    const MatQ& m = loopUpdate(loop);
    const VecQ& s = loopInit(loop);
    VecQ t = loopTranslation(loop);
    const int d = m.rows();
    std::ostringstream os;
    if (eq && eqVars) os << "/* invariant: " << emitEquation(*eq, *eqVars) << " */\n";
    if (cert) os << "/* non-trivial: " << cert->describe() << " */\n";
    os << "/* q(p, q) denotes the exact rational p/q */\n";
    for (int i = 0; i < d; ++i)
        os << "rational " << vars[static_cast<size_t>(i)] << " = q(" << s[i].num() << ", "
           << s[i].den() << ");\n";
    os << "while (1) {\n";
    for (int i = 0; i < d; ++i) {
        os << "    rational " << vars[static_cast<size_t>(i)] << "_next =";
        bool any = false;
        for (int j = 0; j < d; ++j) {
            if (m(i, j).isZero()) continue;
            os << (any ? " +" : "") << " q(" << m(i, j).num() << ", " << m(i, j).den() << ")*"
               << vars[static_cast<size_t>(j)];
            any = true;
        }
        if (!t[i].isZero() || !any)
            os << (any ? " +" : "") << " q(" << t[i].num() << ", " << t[i].den() << ")";
        os << ";\n";
    }
    for (int i = 0; i < d; ++i)
        os << "    " << vars[static_cast<size_t>(i)] << " = " << vars[static_cast<size_t>(i)]
           << "_next;\n";
    os << "}\n";
    return os.str();
}

}  // namespace

std::string emitLoop(const Loop& loop, const NontrivialityCertificate* cert,
                     const SynthesisTrace* trace, EmitFormat format,
                     const std::vector<std::string>& vars, const QuadraticEquation* eq,
                     const std::vector<std::string>* eqVars) {
    std::vector<std::string> names = vars;
    if (static_cast<int>(names.size()) != loopDim(loop)) names = defaultVars(loopDim(loop));
    switch (format) {
        case EmitFormat::Json:
            return loopToJson(loop, cert, trace).dump(2) + "\n";
        case EmitFormat::CLike:
            return emitCLike(loop, cert, names, eq, eqVars);
        case EmitFormat::Pretty:
            return emitPretty(loop, cert, names);
    }
    throw std::logic_error("emitLoop: unknown format");
}

}  // namespace quadloop
