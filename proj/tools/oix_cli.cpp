// oix: batch front end for ordinal arithmetic, trees, regular families,
// exact norms, domination constants, and the index probes.

#include "oix/verify.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>

#include "json.hpp"

using nlohmann::json;

namespace {

struct Cli {
    std::vector<std::string> args;
    bool jsonOut = false;

    std::string flag(const std::string& name, const std::string& dflt) const {
        for (size_t i = 0; i + 1 < args.size(); ++i)
            if (args[i] == "--" + name) return args[i + 1];
        return dflt;
    }
    std::vector<std::string> positional() const {
        std::vector<std::string> p;
        for (size_t i = 0; i < args.size(); ++i) {
            if (args[i].rfind("--", 0) == 0) {
                ++i;  // skip the flag value
                continue;
            }
            p.push_back(args[i]);
        }
        return p;
    }
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string classify(const std::exception& e) {
    std::string what = e.what();
    auto has = [&](const char* s) { return what.find(s) != std::string::npos; };
    if (dynamic_cast<const UsageError*>(&e)) return "usage";
    if (has("parse") || has("grammar")) return "parse";
    if (has("budget")) return "budget";
    if (has("dimension") || has("shape") || has("mismatch")) return "dimension";
    return "domain";
}

void emit(const Cli& cli, const json& payload, double ms) {
    if (cli.jsonOut) {
        json out;
        out["status"] = "ok";
        out["payload"] = payload;
        out["timing_ms"] = ms;
        std::cout << out.dump(2) << "\n";
        return;
    }
    std::function<void(const json&, int)> print = [&](const json& j, int indent) {
        std::string pad(indent, ' ');
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (it.value().is_object()) {
                std::cout << pad << it.key() << ":\n";
                print(it.value(), indent + 2);
            } else {
                std::cout << pad << std::left << std::setw(18) << (it.key() + ":") << " "
                          << (it.value().is_string() ? it.value().get<std::string>()
                                                     : it.value().dump())
                          << "\n";
            }
        }
    };
    print(payload, 0);
}

oix::FinSet parseSet(std::string s) {
    std::string t;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c)) && c != '{' && c != '}') t += c;
    oix::FinSet e;
    if (t.empty()) return e;
    std::string cur;
    for (char c : t + ",") {
        if (c == ',') {
            e.push_back(std::stol(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    oix::checkFinSet(e);
    return e;
}

std::vector<oix::FinVector> parseVectorList(const std::string& s) {
    std::string t = s;
    size_t b = t.find_first_not_of(" \t\n"), e = t.find_last_not_of(" \t\n");
    if (b == std::string::npos || t[b] != '[' || t[e] != ']')
        throw std::invalid_argument("vector list parse error: expected [[...],...]");
    std::string body = t.substr(b + 1, e - b - 1);
    std::vector<oix::FinVector> out;
    if (body.find_first_not_of(" \t\n") == std::string::npos) return out;
    for (const auto& part : oix::detail::splitTop(body, ',')) out.push_back(oix::parseVector(part));
    return out;
}

oix::RatMat parseMatrix(const std::string& s) {
    auto rows = parseVectorList(s);
    if (rows.empty()) throw std::invalid_argument("matrix parse error: no rows");
    return oix::RatMat(rows.begin(), rows.end());
}

json reportToJson(const oix::DominationReport& r) {
    json j;
    if (r.infinite) {
        j["constant"] = "infinity";
    } else {
        j["lower"] = oix::ratToString(r.lower);
        j["upper"] = oix::ratToString(r.upper);
        j["exact"] = r.exact;
    }
    j["witness"] = oix::vectorToString(r.witness);
    return j;
}

json valueToJson(const oix::Value& v) {
    json j;
    if (v.exact) {
        j["value"] = oix::ratToString(v.lo);
    } else {
        j["lower"] = oix::ratToString(v.lo);
        j["upper"] = oix::ratToString(v.hi);
        j["approx"] = v.approx();
    }
    j["exact"] = v.exact;
    return j;
}

json cmdOrd(const Cli& cli) {
    auto p = cli.positional();
    json out;
    if (p.size() >= 2 && p[1] == "fund") {
        if (p.size() != 4) throw UsageError("ord fund <expr> <n>");
        oix::Ordinal a = oix::parseOrdinal(p[2]);
        out["result"] = oix::ordToString(oix::fundamentalSeq(a, std::stol(p[3])));
        return out;
    }
    if (p.size() >= 2 && p[1] == "classify") {
        if (p.size() != 3) throw UsageError("ord classify <expr>");
        auto c = oix::ordClassify(oix::parseOrdinal(p[2]));
        out["kind"] = c.kind == oix::OrdKind::Zero
                          ? "zero"
                          : (c.kind == oix::OrdKind::Successor ? "successor" : "limit");
        if (c.pred) out["pred"] = oix::ordToString(*c.pred);
        return out;
    }
    if (p.size() >= 2 && p[1] == "mi") {
        if (p.size() != 3) throw UsageError("ord mi <expr>");
        out["result"] = oix::isMultiplicativelyIndecomposable(oix::parseOrdinal(p[2]));
        return out;
    }
    if (p.size() == 4 && (p[2] == "+" || p[2] == "*")) {
        oix::Ordinal a = oix::parseOrdinal(p[1]), b = oix::parseOrdinal(p[3]);
        out["result"] = oix::ordToString(p[2] == "+" ? oix::ordAdd(a, b) : oix::ordMul(a, b));
        return out;
    }
    if (p.size() == 4 && p[1] == "cmp") {
        int c = oix::ordCmp(oix::parseOrdinal(p[2]), oix::parseOrdinal(p[3]));
        out["result"] = c < 0 ? "<" : (c > 0 ? ">" : "=");
        return out;
    }
    if (p.size() == 2) {  // normalize
        out["result"] = oix::ordToString(oix::parseOrdinal(p[1]));
        return out;
    }
    throw UsageError("ord <expr> [+|*] <expr> | ord fund <expr> <n> | ord classify <expr> | "
                     "ord mi <expr> | ord cmp <a> <b>");
}

oix::FiniteTree loadTree(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open tree file: " + path);
    json j;
    in >> j;
    bool hasRoot = false;
    for (const auto& node : j)
        if (node.empty()) hasRoot = true;
    return oix::treeFromJson(j, hasRoot);
}

json cmdTree(const Cli& cli) {
    auto p = cli.positional();
    json out;
    if (p.size() >= 2 && p[1] == "rank") {
        if (p.size() != 3) throw UsageError("tree rank <file>");
        auto t = loadTree(p[2]);
        out["rank"] = oix::rank(t).get_str();
        out["nodes"] = t.size();
        out["root_included"] = t.rootIncluded;
        return out;
    }
    if (p.size() >= 2 && p[1] == "mt-member") {
        if (p.size() != 4) throw UsageError("tree mt-member <xi> <seq>");
        oix::Ordinal xi = oix::parseOrdinal(p[2]);
        oix::Seq s;
        for (const auto& part : oix::detail::splitTop(p[3], ','))
            s.push_back(oix::parseOrdinal(part));
        out["result"] = oix::minimalTreeMember(xi, s);
        return out;
    }
    if (p.size() >= 2 && p[1] == "derivative") {
        if (p.size() != 3) throw UsageError("tree derivative <file>");
        out["tree"] = oix::treeToJson(oix::derivative(loadTree(p[2])));
        return out;
    }
    if (p.size() >= 2 && p[1] == "embed") {
        if (p.size() != 4) throw UsageError("tree embed <xi> <file>");
        auto res = oix::monotoneEmbeddingSearch(oix::parseOrdinal(p[2]), loadTree(p[3]));
        out["found"] = res.found;
        if (res.found) {
            json br = json::array();
            for (const auto& s : res.witnessBranch) {
                json node = json::array();
                for (const auto& o : s) node.push_back(oix::ordToString(o));
                br.push_back(node);
            }
            out["witness_branch"] = br;
        } else {
            out["reason"] = res.reason;
        }
        return out;
    }
    throw UsageError("tree rank <file> | tree mt-member <xi> <seq> | tree derivative <file> | "
                     "tree embed <xi> <file>");
}

json cmdFamily(const Cli& cli) {
    auto p = cli.positional();
    json out;
    if (p.size() >= 2 && p[1] == "member") {
        if (p.size() != 4) throw UsageError("family member <expr> <set>");
        out["result"] = oix::memberExpr(oix::parseFamily(p[2]), parseSet(p[3]));
        return out;
    }
    if (p.size() >= 2 && p[1] == "rank") {
        if (p.size() != 4)
            throw UsageError("family rank <expr> <n> [--max-n N] [--max-members M]");
        oix::FamilyBudget fb;
        fb.maxN = std::stol(cli.flag("max-n", std::to_string(fb.maxN)));
        fb.maxMembers = std::stol(cli.flag("max-members", std::to_string(fb.maxMembers)));
        auto r = oix::restrict(oix::parseFamily(p[2]), std::stol(p[3]), fb);
        out["cb_index"] = oix::cbIndexRestricted(r);
        out["members"] = r.members.size();
        return out;
    }
    if (p.size() >= 2 && p[1] == "iota") {
        if (p.size() != 3) throw UsageError("family iota <expr>");
        out["iota"] = oix::ordToString(oix::iotaSymbolic(oix::parseFamily(p[2])));
        return out;
    }
    if (p.size() >= 2 && p[1] == "spreading") {
        if (p.size() != 4) throw UsageError("family spreading <expr> <n>");
        auto rep = oix::isSpreadingRestricted(oix::restrict(oix::parseFamily(p[2]), std::stol(p[3])));
        out["spreading"] = rep.spreading;
        if (!rep.spreading) {
            out["member"] = rep.member;
            out["missing_spread"] = rep.spread;
        }
        return out;
    }
    if (p.size() >= 2 && p[1] == "gasparis") {
        if (p.size() != 4) throw UsageError("family gasparis <F> <G> --depth D --cap C");
        long depth = std::stol(cli.flag("depth", "4"));
        long cap = std::stol(cli.flag("cap", "20"));
        long horizon = std::stol(cli.flag("horizon", "0"));
        auto r = oix::gasparisPrefixSearch(oix::parseFamily(p[2]), oix::parseFamily(p[3]), depth,
                                           cap, horizon);
        out["found"] = r.found;
        if (r.found) out["prefix"] = r.prefix;
        return out;
    }
    throw UsageError("family member|rank|iota|spreading|gasparis ...");
}

json cmdNorm(const Cli& cli) {
    auto p = cli.positional();
    if (p.size() != 3) throw UsageError("norm <descriptor> <vector>");
    auto d = oix::parseDescriptor(p[1]);
    auto v = oix::parseVector(p[2]);
    return valueToJson(oix::norm(d, v));
}

json cmdDominate(const Cli& cli) {
    auto p = cli.positional();
    if (p.size() != 5)
        throw UsageError("dominate <spaceX> <vectorsX> <spaceY> <vectorsY> "
                         "[--facet-cap F] [--vertex-cap V]");
    auto X = oix::parseDescriptor(p[1]);
    auto xs = parseVectorList(p[2]);
    auto Y = oix::parseDescriptor(p[3]);
    auto ys = parseVectorList(p[4]);
    oix::DominationBudget budget;
    budget.facetCap = std::stol(cli.flag("facet-cap", std::to_string(budget.facetCap)));
    budget.vertexCap = std::stol(cli.flag("vertex-cap", std::to_string(budget.vertexCap)));
    return reportToJson(oix::dominationConstant(X, xs, Y, ys, budget));
}

json cmdIndex(const Cli& cli) {
    auto p = cli.positional();
    if (p.size() < 2) throw UsageError("index np-probe|np-member|ss-member|wc-member|sm-cert|"
                                       "schreier-member ...");
    std::string sub = p[1];
    json out;
    auto mkOp = [&](const std::string& mat, const std::string& dom, const std::string& cod) {
        return oix::makeOperator(parseMatrix(mat), oix::parseDescriptor(dom),
                                 oix::parseDescriptor(cod));
    };
    if (sub == "np-probe") {
        if (p.size() != 5) throw UsageError("index np-probe <matrix> <domain> <codomain> "
                                            "[--K k] [--basis lp(1,1)] [--depth d] [--budget b]");
        auto op = mkOp(p[2], p[3], p[4]);
        oix::ProbeConfig cfg;
        cfg.K = oix::parseRat(cli.flag("K", "1"));
        cfg.basis = oix::parseDescriptor(cli.flag("basis", "lp(1,1)"));
        cfg.maxDepth = std::stol(cli.flag("depth", "4"));
        cfg.searchBudget = std::stol(cli.flag("budget", "20000"));
        cfg.pool = oix::defaultPool(op.domain);
        auto rep = oix::npDepthProbe(op, cfg);
        out["witnessed_depth"] = rep.witnessedDepth;
        if (rep.impossibleBeyond) out["impossible_beyond"] = *rep.impossibleBeyond;
        out["reason"] = rep.reason == oix::DepthReport::Reason::RankBound ? "rank bound"
                                                                          : "exhausted search";
        if (rep.finiteIndexClaim) out["index_claim"] = *rep.finiteIndexClaim;
        json chain = json::array();
        for (const auto& x : rep.witnessChain) chain.push_back(oix::vectorToString(x));
        out["witness_chain"] = chain;
        return out;
    }
    if (sub == "np-member") {
        if (p.size() != 6)
            throw UsageError("index np-member <matrix> <domain> <codomain> <chain> [--K] [--basis]");
        auto op = mkOp(p[2], p[3], p[4]);
        oix::ProbeConfig cfg;
        cfg.K = oix::parseRat(cli.flag("K", "1"));
        cfg.basis = oix::parseDescriptor(cli.flag("basis", "lp(1,1)"));
        out["member"] = oix::npMember(op, cfg, parseVectorList(p[5]));
        return out;
    }
    if (sub == "ss-member") {
        if (p.size() != 6)
            throw UsageError("index ss-member <matrix> <domain> <codomain> <chain> [--K]");
        auto op = mkOp(p[2], p[3], p[4]);
        out["member"] = oix::ssMember(op, oix::parseRat(cli.flag("K", "1")), parseVectorList(p[5]));
        return out;
    }
    if (sub == "wc-member") {
        if (p.size() != 6)
            throw UsageError("index wc-member <matrix> <domain> <codomain> <chain> [--K]");
        auto op = mkOp(p[2], p[3], p[4]);
        out["member"] = oix::wcMember(op, oix::parseRat(cli.flag("K", "1")), parseVectorList(p[5]));
        return out;
    }
    if (sub == "sm-cert") {
        if (p.size() != 4)
            throw UsageError("index sm-cert <space> <vectors> [--p p|inf] [--xi x] [--a a] [--b b]");
        auto X = oix::parseDescriptor(p[2]);
        auto xs = parseVectorList(p[3]);
        std::string ps = cli.flag("p", "1");
        bool pInf = ps == "inf";
        oix::Rat pr = pInf ? oix::Rat(1) : oix::parseRat(ps);
        auto cert = oix::spreadingModelCertificate(
            X, xs, pr, pInf, oix::parseOrdinal(cli.flag("xi", "1")),
            oix::parseRat(cli.flag("a", "1")), oix::parseRat(cli.flag("b", "1")));
        out["pass"] = cert.pass;
        if (!cert.pass) {
            out["failing_set"] = cert.failingSet;
            out["witness"] = oix::vectorToString(cert.witnessCoeffs);
            out["failed_side"] = cert.lowerFailed ? "lower" : "upper";
        }
        return out;
    }
    if (sub == "schreier-member") {
        if (p.size() != 6)
            throw UsageError("index schreier-member <matrix> <domain> <codomain> <vectors> "
                             "[--K] [--basis] [--xi]");
        auto op = mkOp(p[2], p[3], p[4]);
        oix::ProbeConfig cfg;
        cfg.K = oix::parseRat(cli.flag("K", "1"));
        cfg.basis = oix::parseDescriptor(cli.flag("basis", "lp(1,1)"));
        out["member"] = oix::schreierIndexedMember(op, cfg, oix::parseOrdinal(cli.flag("xi", "1")),
                                                   parseVectorList(p[5]));
        return out;
    }
    throw UsageError("unknown index subcommand: " + sub);
}

json cmdVerify(const Cli& cli, bool& allPass) {
    auto p = cli.positional();
    int only = 0;
    if (p.size() >= 2 && p[1] != "all") only = std::stoi(p[1]);
    auto results = oix::runAcceptance(only);
    json out;
    json rows = json::array();
    allPass = true;
    for (const auto& r : results) {
        json row;
        row["id"] = r.id;
        row["name"] = r.name;
        row["pass"] = r.pass;
        row["seconds"] = r.seconds;
        if (!r.detail.empty()) row["detail"] = r.detail;
        rows.push_back(row);
        allPass = allPass && r.pass;
        if (!cli.jsonOut)
            std::cout << (r.pass ? "PASS" : "FAIL") << "  " << std::setw(2) << r.id << "  "
                      << std::left << std::setw(52) << r.name << std::right << std::fixed
                      << std::setprecision(2) << std::setw(8) << r.seconds << " s"
                      << (r.detail.empty() ? "" : "\n      " + r.detail) << "\n";
    }
    out["criteria"] = rows;
    out["all_pass"] = allPass;
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    Cli cli;
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a == "--json")
            cli.jsonOut = true;
        else
            cli.args.push_back(a);
    }
    if (cli.args.empty()) {
        std::cerr << "usage: oix <ord|tree|family|norm|dominate|index|verify> ...\n";
        return 2;
    }
    auto start = std::chrono::steady_clock::now();
    try {
        json payload;
        bool verifyAllPass = true;
        const std::string& cmd = cli.args[0];
        if (cmd == "ord")
            payload = cmdOrd(cli);
        else if (cmd == "tree")
            payload = cmdTree(cli);
        else if (cmd == "family")
            payload = cmdFamily(cli);
        else if (cmd == "norm")
            payload = cmdNorm(cli);
        else if (cmd == "dominate")
            payload = cmdDominate(cli);
        else if (cmd == "index")
            payload = cmdIndex(cli);
        else if (cmd == "verify") {
            payload = cmdVerify(cli, verifyAllPass);
            double ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - start)
                            .count();
            if (cli.jsonOut) emit(cli, payload, ms);
            return verifyAllPass ? 0 : 1;
        } else {
            throw UsageError("unknown command: " + cmd);
        }
        double ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                .count();
        emit(cli, payload, ms);
        return 0;
    } catch (const std::exception& e) {
        std::string code = classify(e);
        if (cli.jsonOut) {
            json out;
            out["status"] = "error";
            out["code"] = code;
            out["message"] = e.what();
            std::cout << out.dump(2) << "\n";
        } else {
            std::cerr << "error [" << code << "]: " << e.what() << "\n";
        }
        return code == "usage" ? 2 : 1;
    }
}
