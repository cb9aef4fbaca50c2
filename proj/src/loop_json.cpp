#include "quadloop/loop_json.hpp"

namespace quadloop {

using nlohmann::json;

json ratToJson(const Rat& r) { return r.toString(); }

Rat ratFromJson(const json& j) {
    if (j.is_number_integer()) return Rat(Int(j.get<long>()));
    if (!j.is_string()) throw LoopSchemaError("expected rational as \"p/q\" string");
    try {
        return Rat::fromString(j.get<std::string>());
    } catch (const std::exception&) {
        throw LoopSchemaError("malformed rational: " + j.dump());
    }
}

json vecToJson(const VecQ& v) {
    json a = json::array();
    for (int i = 0; i < v.dim(); ++i) a.push_back(ratToJson(v[i]));
    return a;
}

VecQ vecFromJson(const json& j) {
    if (!j.is_array()) throw LoopSchemaError("expected vector as array");
    VecQ v(static_cast<int>(j.size()));
    for (int i = 0; i < v.dim(); ++i) v[i] = ratFromJson(j[static_cast<size_t>(i)]);
    return v;
}

json matToJson(const MatQ& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(ratToJson(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

MatQ matFromJson(const json& j) {
    if (!j.is_array() || j.empty()) throw LoopSchemaError("expected matrix as array of rows");
    int rows = static_cast<int>(j.size());
    int cols = static_cast<int>(j[0].size());
    MatQ m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        const auto& row = j[static_cast<size_t>(i)];
        if (!row.is_array() || static_cast<int>(row.size()) != cols)
            throw LoopSchemaError("ragged matrix rows");
        for (int c = 0; c < cols; ++c) m(i, c) = ratFromJson(row[static_cast<size_t>(c)]);
    }
    return m;
}

namespace {

json certToJson(const NontrivialityCertificate& c) {
    json j;
    switch (c.kind) {
        case NontrivialityCertificate::Kind::NivenRotationBlock:
            j["kind"] = "niven-rotation-block";
            j["alpha"] = ratToJson(c.alpha);
            j["block"] = json::array({c.blockI, c.blockJ});
            break;
        case NontrivialityCertificate::Kind::ScalingBlock:
            j["kind"] = "scaling-block";
            j["coordinate"] = c.coordinate;
            j["factor"] = ratToJson(c.factor);
            j["initial"] = ratToJson(c.initial);
            break;
        case NontrivialityCertificate::Kind::DistinctPrefix:
            j["kind"] = "distinct-prefix";
            j["length"] = c.prefixLength;
            break;
    }
    return j;
}

NontrivialityCertificate certFromJson(const json& j) {
    NontrivialityCertificate c;
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "niven-rotation-block") {
        c.kind = NontrivialityCertificate::Kind::NivenRotationBlock;
        c.alpha = ratFromJson(j.at("alpha"));
        c.blockI = j.at("block").at(0).get<int>();
        c.blockJ = j.at("block").at(1).get<int>();
    } else if (kind == "scaling-block") {
        c.kind = NontrivialityCertificate::Kind::ScalingBlock;
        c.coordinate = j.at("coordinate").get<int>();
        c.factor = ratFromJson(j.at("factor"));
        c.initial = ratFromJson(j.at("initial"));
    } else if (kind == "distinct-prefix") {
        c.kind = NontrivialityCertificate::Kind::DistinctPrefix;
        c.prefixLength = j.at("length").get<long>();
    } else {
        throw LoopSchemaError("unknown certificate kind: " + kind);
    }
    return c;
}

json stepToJson(const TraceStep& st) {
    json j;
    switch (st.kind) {
        case TraceStep::Kind::Core:
            j["step"] = "core";
            j["label"] = st.label;
            j["update"] = matToJson(st.matrix);
            j["init"] = vecToJson(st.init);
            j["translation"] = vecToJson(st.translation);
            break;
        case TraceStep::Kind::Conjugate:
            j["step"] = "conjugate";
            j["label"] = st.label;
            j["matrix"] = matToJson(st.matrix);
            break;
        case TraceStep::Kind::AffineUnreduce:
            j["step"] = "affine-unreduce";
            j["delta"] = ratToJson(st.delta);
            j["h"] = vecToJson(st.h);
            j["cTilde"] = ratToJson(st.cTilde);
            break;
        case TraceStep::Kind::AugmentScale:
            j["step"] = "augment-scale";
            j["beta1"] = ratToJson(st.beta1);
            break;
        case TraceStep::Kind::Embed:
            j["step"] = "embed";
            j["dim"] = st.dim;
            j["positions"] = st.positions;
            j["fillInit"] = vecToJson(st.fillInit);
            break;
    }
    return j;
}

TraceStep stepFromJson(const json& j) {
    TraceStep st;
    std::string kind = j.at("step").get<std::string>();
    if (kind == "core") {
        st.kind = TraceStep::Kind::Core;
        st.label = j.at("label").get<std::string>();
        st.matrix = matFromJson(j.at("update"));
        st.init = vecFromJson(j.at("init"));
        st.translation = vecFromJson(j.at("translation"));
    } else if (kind == "conjugate") {
        st.kind = TraceStep::Kind::Conjugate;
        st.label = j.at("label").get<std::string>();
        st.matrix = matFromJson(j.at("matrix"));
    } else if (kind == "affine-unreduce") {
        st.kind = TraceStep::Kind::AffineUnreduce;
        st.delta = ratFromJson(j.at("delta"));
        st.h = vecFromJson(j.at("h"));
        st.cTilde = ratFromJson(j.at("cTilde"));
    } else if (kind == "augment-scale") {
        st.kind = TraceStep::Kind::AugmentScale;
        st.beta1 = ratFromJson(j.at("beta1"));
    } else if (kind == "embed") {
        st.kind = TraceStep::Kind::Embed;
        st.dim = j.at("dim").get<int>();
        st.positions = j.at("positions").get<std::vector<int>>();
        st.fillInit = vecFromJson(j.at("fillInit"));
    } else {
        throw LoopSchemaError("unknown trace step: " + kind);
    }
    return st;
}

}  // namespace

json loopToJson(const Loop& loop, const NontrivialityCertificate* cert,
                const SynthesisTrace* trace) {
    json j;
    j["kind"] = std::holds_alternative<LinearLoop>(loop) ? "linear" : "affine";
    j["dim"] = loopDim(loop);
    j["update"] = matToJson(loopUpdate(loop));
    j["init"] = vecToJson(loopInit(loop));
    if (std::holds_alternative<AffineLoop>(loop))
        j["translation"] = vecToJson(std::get<AffineLoop>(loop).translation);
    if (cert) j["certificate"] = certToJson(*cert);
    if (trace) {
        json steps = json::array();
        for (const auto& st : *trace) steps.push_back(stepToJson(st));
        j["trace"] = std::move(steps);
    }
    return j;
}

LoadedLoop loopFromJson(const json& j) {
    try {
        std::string kind = j.at("kind").get<std::string>();
        int dim = j.at("dim").get<int>();
        MatQ update = matFromJson(j.at("update"));
        VecQ init = vecFromJson(j.at("init"));
        if (update.rows() != dim || update.cols() != dim || init.dim() != dim)
            throw LoopSchemaError("dim field does not match matrix/vector sizes");

        LoadedLoop out{LinearLoop{update, init}, std::nullopt, std::nullopt};
        if (kind == "affine") {
            VecQ t = vecFromJson(j.at("translation"));
            if (t.dim() != dim) throw LoopSchemaError("translation size mismatch");
            out.loop = AffineLoop{std::move(update), std::move(init), std::move(t)};
        } else if (kind != "linear") {
            throw LoopSchemaError("kind must be \"linear\" or \"affine\"");
        }
        if (j.contains("certificate")) out.certificate = certFromJson(j.at("certificate"));
        if (j.contains("trace")) {
            SynthesisTrace tr;
            for (const auto& st : j.at("trace")) tr.push_back(stepFromJson(st));
            out.trace = std::move(tr);
        }
        return out;
    } catch (const LoopSchemaError&) {
        throw;
    } catch (const std::exception& e) {
        throw LoopSchemaError(std::string("malformed loop JSON: ") + e.what());
    }
}

}  // namespace quadloop
