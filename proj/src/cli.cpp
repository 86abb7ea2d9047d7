#include "intcheb/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "intcheb/bounds.hpp"
#include "intcheb/factor_tables.hpp"
#include "intcheb/search.hpp"

namespace intcheb::cli {

namespace {

IntervalUnion parseDomain(const std::string& text) {
    std::vector<Interval> parts;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ';')) {
        auto comma = part.find(',');
        if (comma == std::string::npos) throw DomainError("domain interval needs 'lo,hi'");
        try {
            parts.push_back({std::stod(part.substr(0, comma)), std::stod(part.substr(comma + 1))});
        } catch (const std::exception&) {
            throw DomainError("bad domain interval '" + part + "'");
        }
    }
    if (parts.empty()) throw DomainError("empty domain");
    return IntervalUnion(parts);
}

FactorSpec parseFactorToken(const std::string& token, bool aliasOnly) {
    std::vector<std::string> parts;
    std::stringstream ss(token);
    std::string p;
    while (std::getline(ss, p, ':')) parts.push_back(p);
    if (parts.empty() || parts.size() > 3) throw DomainError("bad factor '" + token + "'");
    FactorSpec spec;
    const int idx = quarterFactorIndex(parts[0]);
    if (idx >= 0) {
        spec.poly = quarterFactorTable()[idx].text();
        spec.scale = quarterFactorScales()[idx];
    } else {
        if (aliasOnly)
            throw DomainError("'" + parts[0] +
                              "' is not a known factor alias; use --factor with coefficients");
        spec.poly = IntPoly::fromText(parts[0]).text();
        spec.scale = 1.0;
    }
    if (parts.size() >= 2 && !parts[1].empty()) {
        if (parts[1] != "*") {
            try {
                (void)std::stod(parts[1]);
            } catch (const std::exception&) {
                throw DomainError("bad factor exponent '" + parts[1] + "'");
            }
        }
        spec.exponent = parts[1];
    }
    if (parts.size() == 3) {
        try {
            spec.scale = std::stod(parts[2]);
        } catch (const std::exception&) {
            throw DomainError("bad factor scale '" + parts[2] + "'");
        }
    }
    return spec;
}

std::vector<RationalPoint> parseZetas(const std::string& text) {
    std::vector<RationalPoint> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) out.push_back(RationalPoint::parse(tok));
    }
    return out;
}

// Default constraint points: the rational zeros of the linear factors.
std::vector<RationalPoint> defaultZetas(const std::vector<FactorSpec>& factors) {
    std::vector<RationalPoint> out;
    for (const auto& f : factors) {
        IntPoly p = IntPoly::fromText(f.poly);
        if (p.degree() != 1) continue;
        const long c0 = static_cast<long>(p.coeff(0).get_si());
        const long c1 = static_cast<long>(p.coeff(1).get_si());
        if (c1 == 0) continue;
        long num = -c0, den = c1;
        if (den < 0) {
            num = -num;
            den = -den;
        }
        out.push_back(RationalPoint::real(num, den));
    }
    if (out.empty()) throw DomainError("no rational points given and no linear factors to derive them");
    return out;
}

FactorWeight pinnedWeight(const std::vector<FactorSpec>& factors) {
    std::vector<WeightedFactor> wf;
    for (const auto& f : factors) {
        if (f.exponent == "*")
            throw DomainError("this command needs pinned factor exponents, found '*'");
        wf.push_back({IntPoly::fromText(f.poly), std::stod(f.exponent)});
    }
    return FactorWeight(std::move(wf));
}

std::vector<SweepFactor> sweepFactors(const std::vector<FactorSpec>& factors) {
    std::vector<SweepFactor> out;
    for (const auto& f : factors) {
        if (f.exponent != "*")
            throw DomainError("sweep factors must use the '*' exponent wildcard");
        IntPoly p = IntPoly::fromText(f.poly);
        std::string label = quarterFactorAlias(p);
        if (label.empty()) label = "alpha" + std::to_string(out.size() + 1);
        out.push_back({std::move(p), f.scale, std::move(label)});
    }
    if (out.empty()) throw DomainError("at least one factor required");
    return out;
}

Json estimateJson(const Estimate& e) {
    return {{"value", e.value}, {"spread", e.spread}, {"length", e.length}};
}

}  // namespace

Json RunConfig::toJson() const {
    Json fs = Json::array();
    for (const auto& f : factors)
        fs.push_back({{"poly", f.poly}, {"exponent", f.exponent}, {"scale", f.scale}});
    return {{"command", command},
            {"domain", domain},
            {"factors", fs},
            {"zetas", zetas},
            {"alpha1", alpha1},
            {"alpha2", alpha2},
            {"latticeStep", latticeStep},
            {"lejaLength", lejaLength},
            {"gridDensity", gridDensity},
            {"refine", refine},
            {"coarseFactor", coarseFactor},
            {"m", m},
            {"method", method},
            {"mode", mode},
            {"degree", degree},
            {"budget", budget},
            {"r", r},
            {"irreducible", irreducible},
            {"poly", poly},
            {"n", n},
            {"outPath", outPath},
            {"format", format}};
}

RunConfig RunConfig::fromJson(const Json& j) {
    RunConfig c;
    c.command = j.value("command", c.command);
    c.domain = j.value("domain", c.domain);
    if (j.contains("factors"))
        for (const auto& f : j["factors"])
            c.factors.push_back({f.value("poly", ""), f.value("exponent", "*"),
                                 f.value("scale", 1.0)});
    c.zetas = j.value("zetas", c.zetas);
    c.alpha1 = j.value("alpha1", c.alpha1);
    c.alpha2 = j.value("alpha2", c.alpha2);
    c.latticeStep = j.value("latticeStep", c.latticeStep);
    c.lejaLength = j.value("lejaLength", c.lejaLength);
    c.gridDensity = j.value("gridDensity", c.gridDensity);
    c.refine = j.value("refine", c.refine);
    c.coarseFactor = j.value("coarseFactor", c.coarseFactor);
    c.m = j.value("m", c.m);
    c.method = j.value("method", c.method);
    c.mode = j.value("mode", c.mode);
    c.degree = j.value("degree", c.degree);
    c.budget = j.value("budget", c.budget);
    c.r = j.value("r", c.r);
    c.irreducible = j.value("irreducible", c.irreducible);
    c.poly = j.value("poly", c.poly);
    c.n = j.value("n", c.n);
    c.outPath = j.value("outPath", c.outPath);
    c.format = j.value("format", c.format);
    return c;
}

RunConfig parseArgs(const std::vector<std::string>& args) {
    RunConfig cfg;
    std::string configPath;
    std::string factorsCsv;
    std::vector<std::string> factorTokens;

    CLI::App app{"integer Chebyshev constant bounds toolkit"};
    app.name("intcheb");
    app.add_option("--config", configPath, "JSON config mirroring the flags");

    auto addCommon = [&](CLI::App* sub) {
        sub->add_option("--domain", cfg.domain, "interval union 'lo,hi[;lo,hi]'");
        sub->add_option("--factor", factorTokens, "factor 'coeffs:exponent[:scale]'");
        sub->add_option("--factors", factorsCsv, "comma list of alias:exponent factors");
        sub->add_option("--zetas", cfg.zetas, "comma list of rational points p/q");
        sub->add_option("--leja-n", cfg.lejaLength, "Leja sequence length");
        sub->add_option("--grid-density", cfg.gridDensity, "grid points per unit length");
        sub->add_flag("--refine,!--no-refine", cfg.refine, "golden-section grid refinement");
        sub->add_option("--out", cfg.outPath, "output file path");
        sub->add_option("--format", cfg.format, "json or csv");
    };

    auto* eq = app.add_subcommand("equilibrium", "closed-form two-factor equilibrium data");
    eq->add_option("--alpha1", cfg.alpha1)->required();
    eq->add_option("--alpha2", cfg.alpha2)->required();
    addCommon(eq);

    auto* leja = app.add_subcommand("leja", "weighted Leja points and estimators");
    addCommon(leja);

    auto* bound = app.add_subcommand("bound", "single bound reports");
    auto* boundUpper = bound->add_subcommand("upper", "upper bounds");
    boundUpper->add_option("--method", cfg.method, "fekete | weighted");
    boundUpper->add_option("--mode", cfg.mode, "closedform | leja");
    addCommon(boundUpper);
    auto* boundLower = bound->add_subcommand("lower", "lower bounds");
    boundLower->add_option("--method", cfg.method, "robin | rational | trigub");
    boundLower->add_option("--mode", cfg.mode, "closedform | leja");
    boundLower->add_option("--trigub-m", cfg.n, "m of the interval [1/(m+4), 1/m]");
    addCommon(boundLower);

    auto* sweep = app.add_subcommand("sweep", "lattice optimization of the lower bound");
    sweep->add_option("--step", cfg.latticeStep);
    sweep->add_option("--mode", cfg.mode, "closedform | leja");
    sweep->add_option("--coarse", cfg.coarseFactor, "coarse lattice factor (0 = auto)");
    addCommon(sweep);

    auto* region = app.add_subcommand("region", "multiplicity feasibility region");
    region->add_option("--step", cfg.latticeStep);
    region->add_option("--m", cfg.m, "upper bound M of the constraint");
    region->add_option("--mode", cfg.mode, "closedform | leja");
    region->add_option("--coarse", cfg.coarseFactor, "coarse lattice factor (0 = auto)");
    addCommon(region);

    auto* exact = app.add_subcommand("exact", "small-degree integer Chebyshev search");
    exact->add_option("--degree", cfg.degree)->required();
    exact->add_option("--budget", cfg.budget, "norm budget (0 = best factor product)");
    addCommon(exact);

    auto* lem = app.add_subcommand("lemniscate", "lemniscate integer Chebyshev constant");
    lem->add_option("--poly", cfg.poly)->required();
    lem->add_option("--r", cfg.r)->required();
    lem->add_flag("--irreducible", cfg.irreducible);
    addCommon(lem);

    auto* cons = app.add_subcommand("construct", "Hilbert-Fekete small polynomial");
    cons->add_option("--n", cfg.n)->required();
    addCommon(cons);

    // sweep/region default to the cheaper Leja settings unless overridden
    std::vector<char*> argv;
    std::vector<std::string> storage = args;
    std::string prog = "intcheb";
    argv.push_back(prog.data());
    for (auto& a : storage) argv.push_back(a.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        std::ostringstream os;
        os << "argument error: " << e.what();
        throw DomainError(os.str());
    }

    if (!configPath.empty()) {
        std::ifstream in(configPath);
        if (!in) throw DomainError("cannot read config file " + configPath);
        Json j = Json::parse(in, nullptr, true, true);
        return RunConfig::fromJson(j);
    }

    for (auto* sub : {eq, leja, boundUpper, boundLower, sweep, region, exact, lem, cons}) {
        if (sub->parsed()) {
            if (sub == boundUpper)
                cfg.command = "bound-upper";
            else if (sub == boundLower)
                cfg.command = "bound-lower";
            else
                cfg.command = sub->get_name();
        }
    }
    if (cfg.command.empty()) throw DomainError("missing command; try --help");

    // sweeps default to coarse grids without refinement; explicit flags win
    if (CLI::App* active = sweep->parsed() ? sweep : (region->parsed() ? region : nullptr)) {
        if (active->count("--grid-density") == 0) cfg.gridDensity = 40000;
        if (active->count("--refine") == 0) cfg.refine = false;
    }

    for (const auto& tok : factorTokens) cfg.factors.push_back(parseFactorToken(tok, false));
    if (!factorsCsv.empty()) {
        std::stringstream ss(factorsCsv);
        std::string tok;
        while (std::getline(ss, tok, ','))
            if (!tok.empty()) cfg.factors.push_back(parseFactorToken(tok, true));
    }
    return cfg;
}

namespace {

void writeDocument(const RunConfig& cfg, const Json& doc, const std::string& csvPayload) {
    if (!cfg.outPath.empty()) {
        std::ofstream out(cfg.outPath);
        if (!out) throw DomainError("cannot write " + cfg.outPath);
        if (cfg.format == "csv" && !csvPayload.empty())
            out << csvPayload;
        else
            out << doc.dump(2) << '\n';
    }
}

Json runEquilibrium(const RunConfig& cfg) {
    jacobi::TwoFactorParams p{cfg.alpha1, cfg.alpha2};
    const auto s = jacobi::supportEndpoints(p);
    const double fw = jacobi::robinConstant(p);
    const double logCap = jacobi::logWeightedCapacity(p);
    const double alpha = 2.0 * p.alpha1 + p.alpha2;
    return {{"a", s.a},
            {"b", s.b},
            {"delta", s.delta},
            {"F_w", fw},
            {"logCapacity", logCap},
            {"logCapacityAlt", jacobi::logWeightedCapacityAlt(p)},
            {"capacity", std::exp(logCap)},
            {"upperBound", std::exp(0.5 * (1.0 - alpha) * logCap)},
            {"gapAtZero", jacobi::potentialGap(p, 0.0)},
            {"gapAtQuarter", jacobi::potentialGap(p, 0.25)},
            {"densityMass", jacobi::densityMass(p)}};
}

Json runLeja(const RunConfig& cfg, std::string& csvPayload) {
    FactorWeight w = cfg.factors.empty() ? FactorWeight{} : pinnedWeight(cfg.factors);
    LejaSequence seq(parseDomain(cfg.domain), std::move(w),
                     {cfg.gridDensity, cfg.refine});
    seq.extend(cfg.lejaLength + 1);
    if (cfg.format == "csv") {
        std::ostringstream os;
        seq.dumpCsv(os);
        csvPayload = os.str();
    }
    const EquilibriumData eq = seq.equilibriumData();
    Json gaps = Json::array();
    if (!cfg.zetas.empty()) {
        for (const auto& z : parseZetas(cfg.zetas))
            gaps.push_back({{"zeta", z.text()},
                            {"gap", estimateJson(seq.potentialGapEstimate(z.value()))}});
    }
    return {{"robin", estimateJson(seq.robinEstimate())},
            {"capacity", estimateJson(seq.capacityEstimate())},
            {"logCapacity", estimateJson(seq.logCapacityEstimate())},
            {"support", eq.supportEstimate.text()},
            {"points", seq.size()},
            {"gaps", gaps}};
}

Json runBoundUpper(const RunConfig& cfg) {
    const IntervalUnion domain = parseDomain(cfg.domain);
    BoundReport rep;
    if (cfg.method == "fekete" || cfg.factors.empty()) {
        rep = feketeUpper(domain, cfg.lejaLength, {cfg.gridDensity, cfg.refine});
    } else {
        rep = weightedUpper(domain, pinnedWeight(cfg.factors),
                            cfg.mode == "leja" ? CapacityMode::Leja : CapacityMode::ClosedForm,
                            cfg.lejaLength, {cfg.gridDensity, cfg.refine});
    }
    Json j = rep.toJson();
    if (domain == IntervalUnion::segment(0.0, 0.25))
        j["unitIntervalBound"] = toUnitIntervalBound(rep.value);
    return j;
}

Json runBoundLower(const RunConfig& cfg) {
    const IntervalUnion domain = parseDomain(cfg.domain);
    BoundReport rep;
    if (cfg.method == "trigub") {
        rep = trigubLower(cfg.n);
        return rep.toJson();
    }
    if (cfg.method == "robin") {
        if (cfg.mode == "leja") {
            FactorWeight w = pinnedWeight(cfg.factors);
            LejaSequence seq(domain, w, {cfg.gridDensity, cfg.refine});
            seq.extend(cfg.lejaLength + 1);
            rep = robinLower(w, seq.robinEstimate().value);
            rep.diagnostics["robinSpread"] = seq.robinEstimate().spread;
        } else {
            FactorWeight w = pinnedWeight(cfg.factors);
            auto tf = [&]() -> jacobi::TwoFactorParams {
                for (const auto& f : w.factors())
                    if (!(f.poly == IntPoly{0, 1} || f.poly == IntPoly{-1, 4}))
                        throw ModeUnavailable("closed-form robin needs the z/(4z-1) weight");
                double e1 = 0, e2 = 0;
                for (const auto& f : w.factors())
                    (f.poly == IntPoly{0, 1} ? e1 : e2) = f.exponent;
                return {e1 / 2.0, e2};
            }();
            rep = robinLowerTwoFactor(tf);
        }
    } else if (cfg.method == "rational" || cfg.method.empty()) {
        FactorWeight w = pinnedWeight(cfg.factors);
        std::vector<RationalPoint> zetas =
            cfg.zetas.empty() ? defaultZetas(cfg.factors) : parseZetas(cfg.zetas);
        std::vector<double> gaps;
        std::vector<double> gapSpreads;
        if (cfg.mode == "leja") {
            LejaSequence seq(domain, w, {cfg.gridDensity, cfg.refine});
            seq.extend(cfg.lejaLength + 1);
            for (const auto& z : zetas) {
                Estimate e = seq.potentialGapEstimate(z.value());
                gaps.push_back(e.value);
                gapSpreads.push_back(e.spread);
            }
        } else {
            jacobi::TwoFactorParams p{0, 0};
            bool ok = w.factors().size() == 2;
            for (const auto& f : w.factors()) {
                if (f.poly == IntPoly{0, 1})
                    p.alpha1 = f.exponent / 2.0;
                else if (f.poly == IntPoly{-1, 4})
                    p.alpha2 = f.exponent;
                else
                    ok = false;
            }
            if (!ok) throw ModeUnavailable("closed-form gaps need the z/(4z-1) weight");
            for (const auto& z : zetas) gaps.push_back(jacobi::potentialGap(p, z.value()));
        }
        rep = rationalPointLower(w, zetas, gaps);
        if (!gapSpreads.empty()) rep.diagnostics["gapSpreads"] = gapSpreads;
    } else {
        throw DomainError("unknown lower bound method '" + cfg.method + "'");
    }
    Json j = rep.toJson();
    if (domain == IntervalUnion::segment(0.0, 0.25))
        j["unitIntervalBound"] = toUnitIntervalBound(rep.value);
    return j;
}

Json runSweep(const RunConfig& cfg) {
    const IntervalUnion domain = parseDomain(cfg.domain);
    auto factors = sweepFactors(cfg.factors);
    auto zetas = cfg.zetas.empty() ? defaultZetas(cfg.factors) : parseZetas(cfg.zetas);
    const bool closed = cfg.mode != "leja";
    GapEvaluator gaps = closed
                            ? makeClosedFormGapEvaluator(factors, zetas)
                            : makeLejaGapEvaluator(factors, zetas, domain, cfg.lejaLength,
                                                   {cfg.gridDensity, cfg.refine});
    SweepConfig sc;
    sc.latticeStep = cfg.latticeStep;
    sc.coarseFactor = cfg.coarseFactor > 0 ? cfg.coarseFactor : (closed ? 1 : 4);
    SweepResult res;
    if (closed) {
        res = sweepLowerBound(factors, zetas, gaps, sc);
    } else {
        GapEvaluator loose = makeLejaGapEvaluator(factors, zetas, domain, cfg.lejaLength,
                                                  {cfg.gridDensity, cfg.refine}, 0.5);
        res = sweepLowerBound(factors, zetas, gaps, sc, &loose);
    }
    Json j = res.report.toJson();
    j["unitIntervalBound"] = toUnitIntervalBound(res.value);
    return j;
}

Json runRegion(const RunConfig& cfg, std::string& csvPayload) {
    const IntervalUnion domain = parseDomain(cfg.domain);
    RegionSpec spec;
    spec.factors = sweepFactors(cfg.factors);
    spec.constraints = cfg.zetas.empty() ? defaultZetas(cfg.factors) : parseZetas(cfg.zetas);
    spec.latticeStep = cfg.latticeStep;
    spec.bound = cfg.m;
    const bool closed = cfg.mode != "leja";
    spec.coarseFactor = cfg.coarseFactor > 0 ? cfg.coarseFactor : (closed ? 1 : 4);
    GapEvaluator gaps = closed
                            ? makeClosedFormGapEvaluator(spec.factors, spec.constraints)
                            : makeLejaGapEvaluator(spec.factors, spec.constraints, domain,
                                                   cfg.lejaLength, {cfg.gridDensity, cfg.refine});
    std::optional<GapEvaluator> loose;
    if (!closed)
        loose = makeLejaGapEvaluator(spec.factors, spec.constraints, domain, cfg.lejaLength,
                                     {cfg.gridDensity, cfg.refine}, 0.5);
    RegionResult res;
    if (cfg.format == "csv") {
        std::ostringstream os;
        res = feasibleRegion(spec, gaps, &os, loose ? &*loose : nullptr);
        csvPayload = os.str();
    } else {
        res = feasibleRegion(spec, gaps, nullptr, loose ? &*loose : nullptr);
    }
    return {{"anyFeasible", res.anyFeasible},
            {"ambiguousCount", res.ambiguousCount},
            {"boxLo", res.boxLo},
            {"boxHi", res.boxHi},
            {"feasibleCount", res.points.size()},
            {"evaluations", res.evaluations},
            {"m", spec.bound}};
}

Json runExact(const RunConfig& cfg) {
    const IntervalUnion domain = parseDomain(cfg.domain);
    const auto table = defaultFactorTableFor(domain);
    double budget = cfg.budget;
    if (!(budget > 0.0)) budget = bestFactorProductNorm(domain, cfg.degree, table, 8192);
    SearchOptions opts;
    opts.maxDegree = std::max(10, cfg.degree);
    SearchResult res = searchIntegerChebyshev(domain, cfg.degree, budget, table, opts);
    Json ties = Json::array();
    for (const auto& t : res.ties) ties.push_back(t.text());
    Json j = res.record.toJson();
    j["ties"] = ties;
    j["nodesVisited"] = res.nodesVisited;
    j["budget"] = budget;
    j["normRoot"] = std::pow(res.record.norm, 1.0 / cfg.degree);
    return j;
}

Json runLemniscate(const RunConfig& cfg) {
    const LemniscateBounds b = lemniscateTz(IntPoly::fromText(cfg.poly), cfg.r, cfg.irreducible);
    return {{"exact", b.exact}, {"lower", b.lower.toJson()}, {"upper", b.upper.toJson()}};
}

Json runConstruct(const RunConfig& cfg) {
    const IntervalUnion domain = parseDomain(cfg.domain);
    FactorWeight w = cfg.factors.empty() ? FactorWeight{} : pinnedWeight(cfg.factors);
    if (cfg.n < 1) throw DomainError("construct needs --n >= 1");
    LejaSequence seq(domain, w, {cfg.gridDensity, cfg.refine});
    seq.extend(cfg.n + 1);
    ConstructResult res = hilbertFeketeConstruct(domain, w, cfg.n, seq.points());
    return {{"poly", res.poly.text()},
            {"certifiedBound", res.certifiedBound},
            {"boundRoot", std::pow(res.certifiedBound, 1.0 / cfg.n)},
            {"formValues", res.formValues}};
}

}  // namespace

Json execute(const RunConfig& cfg) {
    Json result;
    std::string csvPayload;
    if (cfg.command == "equilibrium")
        result = runEquilibrium(cfg);
    else if (cfg.command == "leja")
        result = runLeja(cfg, csvPayload);
    else if (cfg.command == "bound-upper")
        result = runBoundUpper(cfg);
    else if (cfg.command == "bound-lower")
        result = runBoundLower(cfg);
    else if (cfg.command == "sweep")
        result = runSweep(cfg);
    else if (cfg.command == "region")
        result = runRegion(cfg, csvPayload);
    else if (cfg.command == "exact")
        result = runExact(cfg);
    else if (cfg.command == "lemniscate")
        result = runLemniscate(cfg);
    else if (cfg.command == "construct")
        result = runConstruct(cfg);
    else
        throw DomainError("unknown command '" + cfg.command + "'");

    Json doc = {{"config", cfg.toJson()}, {"result", result}};
    writeDocument(cfg, doc, csvPayload);
    return doc;
}

int run(const std::vector<std::string>& args) {
    try {
        RunConfig cfg = parseArgs(args);
        Json doc = execute(cfg);
        std::cout << doc["result"].dump(2) << '\n';
        return 0;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 3;
    }
}

}  // namespace intcheb::cli
