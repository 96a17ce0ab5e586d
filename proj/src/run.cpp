#include "poisred/run.hpp"

#include "poisred/report.hpp"

#include <json.hpp>

namespace poisred {

SubmanifoldSpec* ProblemInstance::findSubmanifold(const std::string& name) {
    for (auto& s : submanifolds)
        if (s->name == name) return s.get();
    return nullptr;
}

DistributionSpec* ProblemInstance::findDistribution(const std::string& name) {
    for (auto& d : distributions)
        if (d.name == name) return &d;
    return nullptr;
}

ProblemInstance materialize(const ProblemFile& file) {
    ProblemInstance inst;
    inst.chart = file.chart;
    if (file.poisson) inst.pi = Bivector(*file.poisson);
    for (const auto& s : file.submanifolds)
        inst.submanifolds.push_back(
            std::make_unique<SubmanifoldSpec>(file.chart, s.name, s.gens, s.tangentGens, s.points));
    for (const auto& d : file.distributions) {
        DistributionSpec spec;
        spec.name = d.name;
        spec.gens = d.gens;
        spec.base = inst.findSubmanifold(d.baseName);
        inst.distributions.push_back(std::move(spec));
    }
    return inst;
}

namespace {

int verdictExit(Verdict v) {
    switch (v) {
        case Verdict::HOLDS: return 0;
        case Verdict::FAILS: return 1;
        default: return 2;
    }
}

int combineExit(int a, int b) {
    if (a == 1 || b == 1) return 1;
    if (a == 2 || b == 2) return 2;
    return 0;
}

Verdict membershipVerdict(Membership m) {
    switch (m) {
        case Membership::IN: return Verdict::HOLDS;
        case Membership::OUT: return Verdict::FAILS;
        default: return Verdict::UNDECIDED;
    }
}

struct CommandContext {
    const ProblemFile& file;
    ProblemInstance instance;
    int bound;
    std::uint64_t seed;
};

struct CommandOutcome {
    std::vector<std::pair<std::string, HypothesisReport>> reports;
    std::optional<BracketTable> algebraicTable;
    std::optional<BracketTable> gradedTable;
    std::optional<bool> routesAgree;
    std::string extraText;
    int exitCode = 0;
};

Bivector requirePi(CommandContext& ctx) {
    if (!ctx.instance.pi) throw std::invalid_argument("command needs a poisson section");
    return *ctx.instance.pi;
}

SubmanifoldSpec& requireRoleSubmanifold(CommandContext& ctx, const std::string& binding,
                                        const char* role) {
    if (!ctx.file.problem || binding.empty())
        throw std::invalid_argument(std::string("command needs problem role ") + role);
    SubmanifoldSpec* s = ctx.instance.findSubmanifold(binding);
    if (!s) throw std::invalid_argument(std::string("unresolved role ") + role);
    return *s;
}

DistributionSpec& requireRoleDistribution(CommandContext& ctx, const std::string& binding,
                                          const char* role) {
    if (!ctx.file.problem || binding.empty())
        throw std::invalid_argument(std::string("command needs problem role ") + role);
    DistributionSpec* d = ctx.instance.findDistribution(binding);
    if (!d) throw std::invalid_argument(std::string("unresolved role ") + role);
    return *d;
}

ReductionProblem buildReductionProblem(CommandContext& ctx) {
    const ProblemBindings& b = *ctx.file.problem;
    Bivector pi = requirePi(ctx);
    SubmanifoldSpec& c = requireRoleSubmanifold(ctx, b.c, "C");
    DistributionSpec& e = requireRoleDistribution(ctx, b.e, "E");
    SubmanifoldSpec& a = b.a.empty() ? c : requireRoleSubmanifold(ctx, b.a, "A");
    DistributionSpec d;
    if (!b.d.empty()) {
        d = requireRoleDistribution(ctx, b.d, "D");
    } else {
        d.name = "0";
        d.base = &a;
    }
    return ReductionProblem{pi, c, e, a, d, b.bgens, ctx.bound};
}

CommandOutcome runCheckPoisson(CommandContext& ctx) {
    CommandOutcome out;
    Bivector pi = requirePi(ctx);
    SuperFn selfBracket = poissonBracket(pi.value, pi.value);
    HypothesisReport rep;
    if (selfBracket.isZero()) {
        rep.add("pi-Poisson", Verdict::HOLDS, "{S,S} = 0");
    } else {
        std::string witness;
        const int n = ctx.instance.chart->dim();
        for (int i = 0; i < n && witness.empty(); ++i)
            for (int j = i + 1; j < n && witness.empty(); ++j)
                for (int k = j + 1; k < n && witness.empty(); ++k) {
                    SuperFn jac = cyclicJacobiSum(pi, SuperFn::coordinate(ctx.instance.chart, i),
                                                  SuperFn::coordinate(ctx.instance.chart, j),
                                                  SuperFn::coordinate(ctx.instance.chart, k));
                    if (!jac.isZero())
                        witness = "cyclic Jacobi sum on (x" + std::to_string(i + 1) + ",x" +
                                  std::to_string(j + 1) + ",x" + std::to_string(k + 1) + ") = " +
                                  jac.str();
                }
        rep.add("pi-Poisson", Verdict::FAILS,
                "{S,S} = " + selfBracket.str() + (witness.empty() ? "" : "; " + witness));
    }
    out.exitCode = verdictExit(rep.overall());
    out.reports.emplace_back("check-poisson", std::move(rep));
    return out;
}

CommandOutcome runBracket(CommandContext& ctx, const std::vector<std::string>& args) {
    if (args.size() != 2) throw std::invalid_argument("bracket needs two expression arguments");
    SuperFn f = parseExpression(args[0], ctx.instance.chart);
    SuperFn g = parseExpression(args[1], ctx.instance.chart);
    CommandOutcome out;
    out.extraText = "{" + f.str() + ", " + g.str() + "} = " + poissonBracket(f, g).str() + "\n";
    return out;
}

CommandOutcome runCheckCoisotropic(CommandContext& ctx) {
    CommandOutcome out;
    const ProblemBindings& b = *ctx.file.problem;
    SubmanifoldSpec& c = requireRoleSubmanifold(ctx, b.c, "C");
    DistributionSpec& e = requireRoleDistribution(ctx, b.e, "E");
    if (ctx.instance.pi) {
        HypothesisReport rep = checkCoisotropicReduction(*ctx.instance.pi, c, e, ctx.bound);
        out.exitCode = verdictExit(rep.overall());
        out.reports.emplace_back("check-coisotropic", std::move(rep));
    } else {
        GradedIdeal ideal(c.chart, c.gens, e.gens, c.samplePoints);
        NormalFormEngine engine(ideal);
        CoisotropyReport coiso = engine.isCoisotropic(ctx.bound);
        HypothesisReport rep;
        rep.add("coisotropy", membershipVerdict(coiso.overall),
                coiso.overall == Membership::IN ? "all generator brackets lie in the ideal"
                                                : coiso.witness);
        rep.add("tangency", membershipVerdict(coiso.tangency));
        rep.add("involutivity", membershipVerdict(coiso.involutivity));
        out.exitCode = verdictExit(rep.overall());
        out.reports.emplace_back("check-coisotropic", std::move(rep));
    }
    return out;
}

CommandOutcome runCheckPresymplectic(CommandContext& ctx) {
    CommandOutcome out;
    const ProblemBindings& b = *ctx.file.problem;
    SubmanifoldSpec& c = requireRoleSubmanifold(ctx, b.c, "C");
    DistributionSpec& e = requireRoleDistribution(ctx, b.e, "E");
    GradedIdeal ideal(c.chart, c.gens, e.gens, c.samplePoints);
    PresymplecticReport pres = isPresymplectic(ideal, ctx.bound);
    HypothesisReport rep;
    rep.add("submanifold-data-well-formed", membershipVerdict(pres.wellFormed),
            pres.wellFormed == Membership::IN ? "generator frames have constant pointwise rank"
                                              : pres.witness);
    {
        Verdict v = pres.gradedMatrix.verdict == RankVerdict::CONSTANT_RANK ? Verdict::HOLDS
                    : pres.gradedMatrix.verdict == RankVerdict::NOT_CONSTANT ? Verdict::FAILS
                                                                             : Verdict::UNDECIDED;
        std::string ev = pres.gradedMatrix.verdict == RankVerdict::CONSTANT_RANK
                             ? "bracket matrix has constant rank " +
                                   std::to_string(pres.gradedMatrix.rank)
                             : pres.gradedMatrix.detail;
        if (pres.wellFormed != Membership::IN) {
            v = Verdict::FAILS;
            ev = "submanifold data is not a graded submanifold";
        }
        rep.add("graded-matrix-criterion", v, ev);
    }
    {
        Verdict v = pres.classicalRank.verdict == RankVerdict::CONSTANT_RANK &&
                            pres.classicalInvolutive.verdict == Membership::IN
                        ? Verdict::HOLDS
                    : pres.classicalRank.verdict == RankVerdict::NOT_CONSTANT ||
                            pres.classicalInvolutive.verdict == Membership::OUT
                        ? Verdict::FAILS
                        : Verdict::UNDECIDED;
        std::string ev;
        if (pres.classicalRank.verdict == RankVerdict::CONSTANT_RANK)
            ev = "TC cap E has constant rank " + std::to_string(pres.classicalRank.rank) +
                 (pres.classicalInvolutive.verdict == Membership::IN ? " and is involutive" : "");
        else if (pres.classicalRank.witnessPoints)
            ev = "TC cap E rank " + std::to_string(pres.classicalRank.witnessRanks.first) + " vs " +
                 std::to_string(pres.classicalRank.witnessRanks.second) + " at sample points";
        if (pres.classicalInvolutive.verdict == Membership::OUT)
            ev += (ev.empty() ? "" : "; ") + pres.classicalInvolutive.witness;
        rep.add("classical-criterion", v, ev);
    }
    rep.add("presymplectic", membershipVerdict(pres.overall),
            pres.overall == Membership::OUT ? pres.witness : "");
    out.exitCode = verdictExit(rep.overall());
    out.reports.emplace_back("check-presymplectic", std::move(rep));
    return out;
}

CommandOutcome runCheckStages(CommandContext& ctx) {
    CommandOutcome out;
    ReductionProblem problem = buildReductionProblem(ctx);
    HypothesisReport rep = checkStages(problem.pi, problem.gradedIdealC(), problem.gradedIdealA(),
                                       ctx.bound);
    out.exitCode = verdictExit(rep.overall());
    out.reports.emplace_back("check-stages", std::move(rep));
    return out;
}

CommandOutcome runCheckThmA2(CommandContext& ctx) {
    CommandOutcome out;
    ReductionProblem problem = buildReductionProblem(ctx);
    HypothesisReport rep = checkThmA2(problem);
    out.exitCode = verdictExit(rep.overall());
    out.reports.emplace_back("check-thm-a2", std::move(rep));
    return out;
}

CommandOutcome runReduce(CommandContext& ctx) {
    CommandOutcome out;
    ReductionProblem problem = buildReductionProblem(ctx);
    if (problem.bgens.empty()) throw std::invalid_argument("reduce needs B generators");
    HypothesisReport hyp = checkThmA2(problem);
    out.exitCode = verdictExit(hyp.overall());
    Verdict gate = hyp.overall();
    out.reports.emplace_back("check-thm-a2", std::move(hyp));
    if (gate != Verdict::HOLDS) {
        out.extraText = "reduction skipped: theorem hypotheses did not all hold\n";
        return out;
    }
    BracketTable alg = algebraicReduce(problem);
    BracketTable graded = gradedReduce(problem, ctx.seed, 5);
    bool agree = alg.sameResidues(graded);
    out.routesAgree = agree;
    for (const auto& n : alg.notes) out.exitCode = combineExit(out.exitCode, verdictExit(n.verdict));
    out.exitCode = combineExit(out.exitCode, verdictExit(alg.jacobi));
    if (!agree) out.exitCode = 1;
    out.algebraicTable = std::move(alg);
    out.gradedTable = std::move(graded);
    return out;
}

std::string renderText(const std::string& command, const ProblemFile& file,
                       const CommandOutcome& out) {
    std::string text = "== problem ==\n" + echoProblem(file) + "\n";
    for (const auto& [name, rep] : out.reports)
        text += "== " + name + " ==\n" + renderHypotheses(rep) + "\n";
    if (out.algebraicTable)
        text += "== reduced bracket table (algebraic route) ==\n" +
                renderTable(*out.algebraicTable) + "\n";
    if (out.gradedTable)
        text += "== reduced bracket table (graded route) ==\n" + renderTable(*out.gradedTable) +
                "\n";
    if (out.routesAgree)
        text += std::string("routes agree: ") + (*out.routesAgree ? "yes" : "NO") + "\n";
    if (!out.extraText.empty()) text += out.extraText;
    text += "exit: " + std::to_string(out.exitCode) + "\n";
    (void)command;
    return text;
}

std::string renderStructured(const std::string& command, const ProblemFile& file,
                             const CommandOutcome& out) {
    nlohmann::json j;
    j["schema"] = "v1";
    j["command"] = command;
    j["problem"] = problemJson(file);
    nlohmann::json results;
    nlohmann::json reports = nlohmann::json::array();
    for (const auto& [name, rep] : out.reports) {
        nlohmann::json r = hypothesesJson(rep);
        r["check"] = name;
        reports.push_back(r);
    }
    results["reports"] = reports;
    if (out.algebraicTable) results["algebraicTable"] = tableJson(*out.algebraicTable);
    if (out.gradedTable) results["gradedTable"] = tableJson(*out.gradedTable);
    if (out.routesAgree) results["routesAgree"] = *out.routesAgree;
    if (!out.extraText.empty()) results["text"] = out.extraText;
    j["results"] = results;
    j["exit"] = out.exitCode;
    return j.dump(2) + "\n";
}

} // namespace

RunResult run(const std::string& command, const std::string& fileText, const RunOptions& options,
              const std::vector<std::string>& args) {
    RunResult result;
    try {
        ProblemFile file = parseProblemFile(fileText);
        CommandContext ctx{file, materialize(file), 4, options.seed};
        if (file.problem && file.problem->bound) ctx.bound = *file.problem->bound;
        if (options.bound) ctx.bound = *options.bound;

        CommandOutcome out;
        try {
            if (command == "check-poisson") {
                out = runCheckPoisson(ctx);
            } else if (command == "bracket") {
                out = runBracket(ctx, args);
            } else if (command == "check-coisotropic") {
                out = runCheckCoisotropic(ctx);
            } else if (command == "check-presymplectic") {
                out = runCheckPresymplectic(ctx);
            } else if (command == "check-stages") {
                out = runCheckStages(ctx);
            } else if (command == "check-thm-a2") {
                out = runCheckThmA2(ctx);
            } else if (command == "reduce") {
                out = runReduce(ctx);
            } else {
                throw std::invalid_argument("unknown command '" + command + "'");
            }
        } catch (const std::invalid_argument&) {
            throw; // malformed input, handled below as exit 3
        } catch (const std::logic_error& e) {
            // internal consistency violations are reported, not propagated
            HypothesisReport rep;
            rep.add("internal-consistency", Verdict::FAILS, e.what());
            out.reports.emplace_back(command, std::move(rep));
            out.exitCode = 1;
        }
        result.exitCode = out.exitCode;
        result.output = (options.format == "structured") ? renderStructured(command, file, out)
                                                         : renderText(command, file, out);
    } catch (const ParseError& e) {
        result.exitCode = 3;
        result.output = std::string("input error: ") + e.what() + "\n";
    } catch (const std::invalid_argument& e) {
        result.exitCode = 3;
        result.output = std::string("input error: ") + e.what() + "\n";
    }
    return result;
}

} // namespace poisred
