use std::collections::HashMap;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use lorentz_cauchy::causal::{
    compute_boundaries, maximal_causal_relation, maximal_causal_relation_restricted, random_weighted_poset,
    verify_distinguishing, FiniteLorentzianSpace, Sense,
};
use lorentz_cauchy::cauchy::{
    achronality_check, bump_violation, exp_distance_graph, lipschitz_envelope, random_strong_graph, validate_graph,
    CauchyGraph, ValidationMode,
};
use lorentz_cauchy::curves::{
    cauchy_complete_check, crossing_count, finite_compactness_check, finite_compactness_check_finite,
    inextendibility_check, radial_ray, random_timelike_curve, sinh_curve, timelike_cauchy_completeness_check,
    timelike_cauchy_completeness_finite, violation_witness_curve, CompactnessVerdict, DiscreteCausalCurve,
    EndBehavior, EndCompleteness, TimelikeCompleteness,
};
use lorentz_cauchy::dj::{
    blaschke_net, dj_graphs, dj_set, limit_of_graph_sequence, limit_of_slice_sequence, random_ball_probe,
    verify_metric_axioms, GraphLimitOutcome, SliceLimitOutcome, SliceSpace,
};
use lorentz_cauchy::io::{self, GraphFile, MeshFile};
use lorentz_cauchy::model::{
    general_position_sample, probe_cloud, slice, strip_slice, ConeModel, Event, EventCloud, FullCone, HyperbolicMesh,
    LorentzianModel, Minkowski2, Strip,
};
use lorentz_cauchy::report::{summary_table, Report};
use lorentz_cauchy::timefn::{
    build_time_function, build_time_function_relaxed, probe_levels, verify_level_crossing, TimeFunctionValues,
};
use lorentz_cauchy::{Error, ErrorClass, Result, Tolerance};

use crate::args::*;

/// Stated in every completeness report.
pub const THEOREM_NOTE: &str = "Completeness of the space of weak Cauchy sets under d_J and the implication chain \
between the completeness conditions are theorems. These checks test their hypotheses and conclusions together on \
finite prefixes of sampled models; they do not reproduce the theorems numerically.";

pub struct Outcome {
    pub report: Report,
    /// `(file name, contents)` pairs written next to the report.
    pub artifacts: Vec<(String, String)>,
    pub exit_code: i32,
}

struct Ctx {
    report: Report,
    artifacts: Vec<(String, String)>,
    rng: ChaCha8Rng,
    tol: Tolerance,
}

impl Ctx {
    fn artifact(&mut self, name: &str, contents: String) {
        self.artifacts.push((name.to_string(), contents));
    }
}

fn echo(global: &Global, args: &impl Serialize) -> Value {
    json!({ "seed": global.seed, "tol": global.tol, "args": args })
}

/// Runs one subcommand. Library errors become failing verdicts with the
/// exit code of their class.
pub fn run(command: &Command, global: &Global) -> Outcome {
    let config = match command {
        Command::Mesh { action: MeshAction::Build(a) } => echo(global, a),
        Command::Space { action: SpaceAction::Check(a) } => echo(global, a),
        Command::Jd { action: JdAction::Compute(a) } => echo(global, a),
        Command::Graph { action: GraphAction::Validate(a) } => echo(global, a),
        Command::Dj { action: DjAction::Pair(a) } => echo(global, a),
        Command::Dj { action: DjAction::Matrix(a) } => echo(global, a),
        Command::Dj { action: DjAction::Axioms(a) } => echo(global, a),
        Command::Curves { action: CurvesAction::Crossings(a) } => echo(global, a),
        Command::Complete { action: CompleteAction::Strip(a) } => echo(global, a),
        Command::Complete { action: CompleteAction::Cone(a) } => echo(global, a),
        Command::Complete { action: CompleteAction::Finite(a) } => echo(global, a),
        Command::Timefn { action: TimefnAction::Build(a) } => echo(global, a),
        Command::Timefn { action: TimefnAction::Levels(a) } => echo(global, a),
        Command::Blaschke { action: BlaschkeAction::Net(a) } => echo(global, a),
        Command::Report(a) => echo(global, a),
    };
    let mut ctx = Ctx {
        report: Report::new(command.slug().replace('-', " "), config),
        artifacts: Vec::new(),
        rng: ChaCha8Rng::seed_from_u64(global.seed),
        tol: Tolerance::DEFAULT,
    };
    let result = match Tolerance::new(global.tol) {
        None => Err(Error::Input(format!("tolerance must be positive, got {}", global.tol))),
        Some(tol) => {
            ctx.tol = tol;
            match command {
                Command::Mesh { action: MeshAction::Build(a) } => mesh_build(a, &mut ctx),
                Command::Space { action: SpaceAction::Check(a) } => space_check(a, &mut ctx),
                Command::Jd { action: JdAction::Compute(a) } => jd_compute(a, &mut ctx),
                Command::Graph { action: GraphAction::Validate(a) } => graph_validate(a, &mut ctx),
                Command::Dj { action: DjAction::Pair(a) } => dj_pair(a, &mut ctx),
                Command::Dj { action: DjAction::Matrix(a) } => dj_matrix(a, &mut ctx),
                Command::Dj { action: DjAction::Axioms(a) } => dj_axioms(a, &mut ctx),
                Command::Curves { action: CurvesAction::Crossings(a) } => curves_crossings(a, &mut ctx),
                Command::Complete { action: CompleteAction::Strip(a) } => complete_strip(a, &mut ctx),
                Command::Complete { action: CompleteAction::Cone(a) } => complete_cone(a, &mut ctx),
                Command::Complete { action: CompleteAction::Finite(a) } => complete_finite(a, &mut ctx),
                Command::Timefn { action: TimefnAction::Build(a) } => timefn_build(a, &mut ctx),
                Command::Timefn { action: TimefnAction::Levels(a) } => timefn_levels(a, &mut ctx),
                Command::Blaschke { action: BlaschkeAction::Net(a) } => blaschke(a, &mut ctx),
                Command::Report(a) => summarize(a, &mut ctx),
            }
        }
    };
    let exit_code = match &result {
        Err(e) => {
            ctx.report.error(e);
            e.class().exit_code()
        }
        Ok(()) if ctx.report.passed() => 0,
        Ok(()) => 2,
    };
    Outcome { report: ctx.report, artifacts: ctx.artifacts, exit_code }
}

fn load_mesh(args: &MeshArgs) -> Result<HyperbolicMesh> {
    match &args.mesh {
        Some(p) => io::read_mesh(p),
        None => HyperbolicMesh::disk(args.radius, args.resolution),
    }
}

/// Loads graph files, building one model per distinct mesh.
fn load_graphs(paths: &[PathBuf]) -> Result<Vec<CauchyGraph>> {
    let mut models: HashMap<String, ConeModel> = HashMap::new();
    let mut out = Vec::with_capacity(paths.len());
    for path in paths {
        let file = GraphFile::read(path)?;
        let base = path.parent().unwrap_or(Path::new("."));
        let key = match file.mesh_path(base) {
            Some(p) => p.display().to_string(),
            None => serde_json::to_string(&file.mesh)?,
        };
        let model = match models.get(&key) {
            Some(m) => m.clone(),
            None => {
                let m = ConeModel::new(file.load_mesh(base)?);
                models.insert(key, m.clone());
                m
            }
        };
        out.push(CauchyGraph::new(model, file.f)?);
    }
    Ok(out)
}

fn strong_graphs(model: &ConeModel, args: &EnsembleArgs, count: usize, rng: &mut ChaCha8Rng) -> Result<Vec<CauchyGraph>> {
    (0..count)
        .map(|_| random_strong_graph(model, args.margin, (args.log_min, args.log_max), args.seeds, rng))
        .collect()
}

fn mesh_build(args: &MeshBuildArgs, ctx: &mut Ctx) -> Result<()> {
    let mesh = match args.kind {
        MeshKind::Disk => HyperbolicMesh::disk(args.radius, args.resolution)?,
        MeshKind::Annulus => HyperbolicMesh::annulus(args.inner, args.radius, args.resolution)?,
    };
    ctx.report.verdict(
        "mesh",
        true,
        json!({ "vertices": mesh.len(), "edges": mesh.edges().len(), "triangles": mesh.triangles().len() }),
        format!("{:?} of radius {}", args.kind, args.radius).to_lowercase(),
    );
    let model = ConeModel::new(mesh.clone());
    match args.kind {
        MeshKind::Disk => {
            let rim = mesh.rings().last().cloned().unwrap_or_default();
            let worst = rim
                .iter()
                .map(|&v| (model.d_omega(0, v) - args.radius).abs() / args.radius)
                .fold(0.0, f64::max);
            ctx.report.verdict(
                "oracle-rim",
                worst <= 0.02,
                worst,
                "largest relative error of the center-to-rim intrinsic distance (bound 0.02)",
            );
        }
        MeshKind::Annulus => {
            let inner = &mesh.rings()[0];
            let (a, b) = (inner[0], inner[inner.len() / 2]);
            let (d, ambient) = (model.d_omega(a, b), mesh.ambient_distance(a, b));
            ctx.report.verdict(
                "oracle-detour",
                d > ambient + ctx.tol.value(),
                json!({ "intrinsic": d, "ambient": ambient }),
                "opposite inner-rim vertices: the intrinsic path goes around the hole",
            );
        }
    }
    ctx.artifact("mesh.json", serde_json::to_string_pretty(&MeshFile::from_mesh(&mesh))? + "\n");
    Ok(())
}

fn space_check(args: &SpaceCheckArgs, ctx: &mut Ctx) -> Result<()> {
    let space = io::read_space(&args.space)?;
    space.check_invariants(ctx.tol, !args.allow_acausal)?;
    ctx.report.verdict("invariants", true, space.len(), "reflexive, transitive, reverse triangle, causal");
    let b = compute_boundaries(&space);
    ctx.report.verdict("boundaries", true, &b, "chronological and causal boundaries");
    ctx.report.verdict("causality-level", true, space.causality_level(), "");
    let distinguishing = verify_distinguishing(&space);
    if args.require_distinguishing {
        if let Some((x, y)) = distinguishing {
            return Err(Error::Invariant {
                class: ErrorClass::Distinguishing,
                witness: vec![x, y],
                detail: format!("{} and {} have identical distance rows", space.labels()[x], space.labels()[y]),
            });
        }
        ctx.report.verdict("distinguishing", true, Value::Null, "");
    }
    Ok(())
}

fn relation_csv(labels: &[String], related: impl Fn(usize, usize) -> bool) -> String {
    let n = labels.len();
    let m: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| if related(i, j) { 1.0 } else { 0.0 }).collect()).collect();
    io::matrix_csv(labels, &m)
}

fn jd_compute(args: &JdArgs, ctx: &mut Ctx) -> Result<()> {
    if let Some(path) = &args.space {
        let space = io::read_space(path)?;
        let jd = maximal_causal_relation(&space);
        let declared = space.causal_relation();
        let missing = declared.difference(&jd);
        let extra = jd.difference(declared);
        let reverse_triangle = space.check_invariants(ctx.tol, false).is_ok();
        ctx.report.verdict(
            "contains-declared",
            !reverse_triangle || missing.is_empty(),
            json!({ "missing": missing, "reverseTriangle": reverse_triangle }),
            "declared causal pairs absent from J_d (required only when the reverse triangle inequality holds)",
        );
        ctx.report.verdict("extra-pairs", true, &extra, "pairs in J_d beyond the declared relation");
        ctx.artifact("jd.csv", relation_csv(space.labels(), |i, j| jd.get(i, j)));
        return Ok(());
    }
    let model = args.model.ok_or_else(|| Error::Input("give --space or --model".into()))?;
    let (t_box, x_box) = match model {
        SliceModel::Strip => ((0.0, 1.0), (-1.5, 1.5)),
        SliceModel::Minkowski => ((-0.5, 1.5), (-1.5, 1.5)),
    };
    let keep = |e: &Event| model == SliceModel::Minkowski || Strip.contains(e);
    let mut mismatches = Vec::new();
    let mut flagged = 0;
    for s in 0..args.samples {
        let sample = general_position_sample(args.points, (0.1, 0.9), (-0.5, 0.5), args.null_gap, &mut ctx.rng)?;
        let cloud = probe_cloud(&sample, t_box, x_box, args.probe_step, keep);
        let idx: Vec<usize> = (0..sample.len()).collect();
        let jd = maximal_causal_relation_restricted(&cloud, &idx, ctx.tol);
        let ambient = EventCloud::new(sample.clone()).causal_relation();
        if jd != ambient {
            let pairs = jd.difference(&ambient);
            let (a, b) = pairs.first().copied().unwrap_or((0, 0));
            mismatches.push(s);
            ctx.report.witness("jd-recovery", vec![s, a, b], "sample, pair in J_d but not causal");
        }
        if args.duplicate {
            let mut dup = sample.clone();
            dup.push(sample[0]);
            if verify_distinguishing(&EventCloud::new(dup)) == Some((0, sample.len())) {
                flagged += 1;
            }
        }
    }
    ctx.report.verdict(
        "jd-recovery",
        mismatches.is_empty(),
        json!({ "samples": args.samples, "mismatches": mismatches.len() }),
        "J_d over sample plus probes equals the ambient causal relation on the sample",
    );
    if args.duplicate {
        ctx.report.verdict(
            "duplicate-flagged",
            flagged == args.samples,
            flagged,
            "duplicated points reported by the distinguishing check",
        );
    }
    Ok(())
}

fn graph_validate(args: &GraphValidateArgs, ctx: &mut Ctx) -> Result<()> {
    let g = load_graphs(std::slice::from_ref(&args.graph))?.remove(0);
    let mode = match args.mode {
        Mode::Cauchy => ValidationMode::Cauchy,
        Mode::Strong => ValidationMode::Strong,
    };
    let v = validate_graph(&g, mode, args.margin, ctx.tol)?;
    if let (false, Some((p, q))) = (v.valid, v.worst_pair) {
        ctx.report.witness(ErrorClass::Lipschitz.as_str(), vec![p, q], format!("log slope {}", v.worst_ratio));
    }
    ctx.report.verdict("lipschitz", v.valid, &v, "log-Lipschitz bound over all vertex pairs");
    let a = achronality_check(&g, ctx.tol);
    ctx.report.verdict("achronal", a.achronal, &a, "no timelike pair of graph points");
    Ok(())
}

fn dj_pair(args: &DjPairArgs, ctx: &mut Ctx) -> Result<()> {
    if args.model == PairModel::Cone {
        let (Some(a), Some(b)) = (&args.graph_a, &args.graph_b) else {
            return Err(Error::Input("cone pairs need --graph-a and --graph-b".into()));
        };
        let gs = load_graphs(&[a.clone(), b.clone()])?;
        let r = dj_graphs(&gs[0], &gs[1], ctx.tol)?;
        ctx.report.verdict("dj", true, r.value, format!("witness vertices {:?}", r.witness));
        return Ok(());
    }
    let (Some(a), Some(b)) = (args.a, args.b) else {
        return Err(Error::Input("slice pairs need --a and --b".into()));
    };
    let range = (args.x_min, args.x_max);
    let r = match args.model {
        PairModel::Strip => dj_set(&Strip, &strip_slice(a, range, args.samples)?, &strip_slice(b, range, args.samples)?, ctx.tol)?,
        _ => dj_set(&Minkowski2, &slice(a, range, args.samples)?, &slice(b, range, args.samples)?, ctx.tol)?,
    };
    ctx.report.verdict("dj", true, r.value, format!("witness samples {:?}", r.witness));
    let expected = (a - b).abs();
    ctx.report.verdict(
        "slice-identity",
        (r.value - expected).abs() <= ctx.tol.value(),
        expected,
        "d_J of matched time slices equals the time difference",
    );
    Ok(())
}

fn dj_matrix(args: &DjMatrixArgs, ctx: &mut Ctx) -> Result<()> {
    let graphs = if args.graphs.is_empty() {
        let model = ConeModel::new(load_mesh(&args.ensemble.mesh)?);
        strong_graphs(&model, &args.ensemble, args.count, &mut ctx.rng)?
    } else {
        load_graphs(&args.graphs)?
    };
    let k = graphs.len();
    let mut m = vec![vec![0.0; k]; k];
    for i in 0..k {
        for j in 0..k {
            m[i][j] = dj_graphs(&graphs[i], &graphs[j], ctx.tol)?.value;
        }
    }
    let asym = (0..k).flat_map(|i| (0..k).map(move |j| (i, j))).find(|&(i, j)| m[i][j] != m[j][i]);
    ctx.report.verdict("symmetric", asym.is_none(), k, "exact symmetry of the d_J matrix");
    if let Some((i, j)) = asym {
        ctx.report.witness("symmetry", vec![i, j], "");
    }
    let labels: Vec<String> = (0..k).map(|i| format!("g{i}")).collect();
    ctx.artifact("dj-matrix.csv", io::matrix_csv(&labels, &m));
    Ok(())
}

fn dj_axioms(args: &DjAxiomsArgs, ctx: &mut Ctx) -> Result<()> {
    let model = ConeModel::new(load_mesh(&args.ensemble.mesh)?);
    let graphs = strong_graphs(&model, &args.ensemble, args.count, &mut ctx.rng)?;
    let mut invalid = Vec::new();
    for (i, g) in graphs.iter().enumerate() {
        if !validate_graph(g, ValidationMode::Strong, args.ensemble.margin, ctx.tol)?.valid {
            invalid.push(i);
        }
    }
    ctx.report.verdict(
        "strong-graphs",
        invalid.is_empty(),
        json!({ "graphs": graphs.len(), "vertices": model.vertex_count(), "invalid": invalid }),
        "every generated graph passes strong validation",
    );
    let r = verify_metric_axioms(&graphs, args.trials, &mut ctx.rng, ctx.tol)?;
    ctx.report.verdict("symmetry", r.symmetric, Value::Null, "d_J(A,B) = d_J(B,A) exactly");
    if let Some((i, j)) = r.asymmetric_pair {
        ctx.report.witness("symmetry", vec![i, j], "");
    }
    ctx.report.verdict("self-distance", r.self_distance_ok, r.max_self_distance, "max d_J(A,A)");
    ctx.report.verdict(
        "definiteness",
        r.definiteness_ok,
        r.definiteness_failures.len(),
        "distinct graphs have d_J above the radial floor",
    );
    for &(i, j) in &r.definiteness_failures {
        ctx.report.witness("definiteness", vec![i, j], "");
    }
    ctx.report.verdict(
        "triangle",
        r.triangle_ok,
        json!({ "trials": r.triangle_trials, "maxExcess": r.max_triangle_excess }),
        "d_J(A,C) <= d_J(A,B) + d_J(B,C) + 3 tol",
    );
    if let (false, Some((a, b, c))) = (r.triangle_ok, r.worst_triple) {
        ctx.report.witness("triangle", vec![a, b, c], "");
    }
    let labels: Vec<String> = (0..graphs.len()).map(|i| format!("g{i}")).collect();
    ctx.artifact("dj-matrix.csv", io::matrix_csv(&labels, &r.matrix));
    Ok(())
}

fn curves_crossings(args: &CrossingsArgs, ctx: &mut Ctx) -> Result<()> {
    let model = ConeModel::new(load_mesh(&args.ensemble.mesh)?);
    let graphs = strong_graphs(&model, &args.ensemble, args.graphs, &mut ctx.rng)?;
    let lo = graphs.iter().flat_map(|g| g.ln_f().iter().copied()).fold(f64::INFINITY, f64::min);
    let hi = graphs.iter().flat_map(|g| g.ln_f().iter().copied()).fold(f64::NEG_INFINITY, f64::max);
    let curves: Vec<_> = (0..args.curves)
        .map(|_| random_timelike_curve(&model, (lo, hi), args.eta, &mut ctx.rng))
        .collect::<Result<_>>()?;
    let mut rows = Vec::with_capacity(args.graphs * args.curves);
    let mut bad = 0usize;
    for (gi, g) in graphs.iter().enumerate() {
        for (ci, c) in curves.iter().enumerate() {
            let k = crossing_count(&model, c, g, ctx.tol)?.count;
            if k != 1 {
                bad += 1;
                if bad <= 10 {
                    ctx.report.witness("crossing", vec![ci, gi], format!("{k} crossings"));
                }
            }
            rows.push((ci, gi, k));
        }
    }
    ctx.report.verdict(
        "strong-graphs-cross-once",
        bad == 0,
        json!({ "pairs": rows.len(), "failures": bad }),
        "every inextendible timelike curve meets every strong graph exactly once",
    );
    ctx.artifact("crossings.csv", io::ensemble_csv(&rows));

    let mut vrows = Vec::new();
    let mut missed = 0usize;
    for i in 0..args.violations {
        let base = random_strong_graph(&model, args.ensemble.margin, (args.ensemble.log_min, args.ensemble.log_max), args.ensemble.seeds, &mut ctx.rng)?;
        let v = ctx.rng.gen_range(0..model.vertex_count());
        let (g, _, _) = bump_violation(&base, v, args.factor)?;
        match violation_witness_curve(&g, ctx.tol)? {
            Some((curve, (a, b))) => {
                let k = crossing_count(&model, &curve, &g, ctx.tol)?.count;
                if k == 1 {
                    missed += 1;
                    ctx.report.witness("violation-witness", vec![i, a, b], "witness curve crosses once");
                }
                vrows.push((i, i, k));
            }
            None => {
                missed += 1;
                ctx.report.witness("violation-witness", vec![i], "no witness curve");
            }
        }
    }
    ctx.report.verdict(
        "violations-detected",
        missed == 0,
        json!({ "graphs": args.violations, "undetected": missed }),
        "each Lipschitz-violating graph has a timelike curve not crossing it exactly once",
    );
    ctx.artifact("violations.csv", io::ensemble_csv(&vrows));
    Ok(())
}

fn vertical_strip_curve() -> Result<DiscreteCausalCurve<Event>> {
    let mut samples: Vec<(f64, Event)> = (1..=40).rev().map(|j| 0.5f64.powi(j)).map(|t| (t, Event::new(t, 0.0))).collect();
    samples.extend((2..=40).map(|j| 1.0 - 0.5f64.powi(j)).map(|t| (t, Event::new(t, 0.0))));
    DiscreteCausalCurve::new(
        &Strip,
        samples,
        EndBehavior::ApproachesBoundary(Event::new(0.0, 0.0)),
        EndBehavior::ApproachesBoundary(Event::new(1.0, 0.0)),
        true,
    )
}

fn vertical_line() -> Result<DiscreteCausalCurve<Event>> {
    let samples: Vec<(f64, Event)> = (-64..=64).map(|k| (k as f64, Event::new(k as f64, 0.0))).collect();
    DiscreteCausalCurve::new(&Minkowski2, samples, EndBehavior::EscapesToInfinity, EndBehavior::EscapesToInfinity, true)
}

fn complete_strip(args: &CompleteStripArgs, ctx: &mut Ctx) -> Result<()> {
    if args.first == 0 || args.last <= args.first {
        return Err(Error::Input("need 0 < first < last".into()));
    }
    let ts: Vec<f64> = (args.first..=args.last).map(|j| 1.0 / j as f64).collect();
    let tol = ctx.tol;
    let strip = limit_of_slice_sequence(SliceSpace::Strip, &ts, args.first, (-1.0, 1.0), args.samples, args.epsilon, tol)?;
    let strip_escapes = matches!(strip, SliceLimitOutcome::BoundaryEscape { .. });
    ctx.report.verdict("strip-slices", strip_escapes, &strip, "S_{1/j} is d_J-Cauchy in the strip and escapes through t = 0");
    let mink = limit_of_slice_sequence(SliceSpace::Minkowski, &ts, args.first, (-1.0, 1.0), args.samples, args.epsilon, tol)?;
    let limit_gap = match mink {
        SliceLimitOutcome::Converged { t, .. } => {
            Some(dj_set(&Minkowski2, &slice(t, (-1.0, 1.0), args.samples)?, &slice(0.0, (-1.0, 1.0), args.samples)?, tol)?.value)
        }
        _ => None,
    };
    let mink_converges = limit_gap.is_some_and(|g| g <= 1e-6);
    ctx.report.verdict(
        "minkowski-slices",
        mink_converges,
        json!({ "outcome": mink, "limitToS0": limit_gap }),
        "S_{1/j} converges to S_0 in Minkowski space (limit within 1e-6 of S_0)",
    );

    let seq: Vec<Event> = (args.first..=args.last).map(|j| Event::new(1.0 - 1.0 / j as f64, 0.0)).collect();
    let strip_tc = timelike_cauchy_completeness_check(&Strip, &seq, Sense::Future, args.first, tol)?;
    let mink_tc = timelike_cauchy_completeness_check(&Minkowski2, &seq, Sense::Future, args.first, tol)?;
    let strip_tc_fails = matches!(strip_tc, TimelikeCompleteness::Escapes { .. });
    let mink_tc_holds = matches!(mink_tc, TimelikeCompleteness::Convergent { .. });
    ctx.report.verdict("strip-timelike-cauchy", strip_tc_fails, &strip_tc, "(1 - 1/j, 0) is uniformly Cauchy with its limit outside the strip");
    ctx.report.verdict("minkowski-timelike-cauchy", mink_tc_holds, &mink_tc, "the same sequence converges in Minkowski space");

    let (x, y) = (Event::new(0.1, 0.0), Event::new(0.2, 0.0));
    let strip_fc = finite_compactness_check(&Strip, &x, &y, &seq, 1.0, args.first, tol)?;
    let mink_fc = finite_compactness_check(&Minkowski2, &x, &y, &seq, 1.0, args.first, tol)?;
    let strip_fc_fails = matches!(strip_fc, CompactnessVerdict::Escape { .. });
    let mink_fc_holds = matches!(mink_fc, CompactnessVerdict::FinitelyCompact { .. });
    ctx.report.verdict("strip-finite-compactness", strip_fc_fails, &strip_fc, "bounded sequence above y escapes the strip");
    ctx.report.verdict("minkowski-finite-compactness", mink_fc_holds, &mink_fc, "it converges in Minkowski space");

    let vc = vertical_strip_curve()?;
    let strip_curve = cauchy_complete_check(&Strip, &vc, tol)?;
    let strip_incomplete = inextendibility_check(&Strip, &vc, tol)?.inextendible()
        && matches!(strip_curve.future, EndCompleteness::Incomplete { .. });
    ctx.report.verdict("strip-vertical-curve", strip_incomplete, &strip_curve, "inextendible with bounded length: not Cauchy complete");
    let line = cauchy_complete_check(&Minkowski2, &vertical_line()?, tol)?;
    ctx.report.verdict("minkowski-vertical-line", line.complete(), &line, "inextendible with unbounded distance: complete");

    let strip_all_fail = strip_escapes && strip_tc_fails && strip_fc_fails && strip_incomplete;
    let mink_all_hold = mink_converges && mink_tc_holds && mink_fc_holds && line.complete();
    ctx.report.verdict(
        "co-occurrence",
        strip_all_fail && mink_all_hold,
        json!({ "strip": "all conditions fail", "minkowski": "all conditions hold" }),
        "d_J completeness, timelike Cauchy completeness, finite compactness and curve completeness agree per model",
    );
    ctx.report.note(THEOREM_NOTE);
    Ok(())
}

fn complete_cone(args: &CompleteConeArgs, ctx: &mut Ctx) -> Result<()> {
    let tol = ctx.tol;
    let model = ConeModel::new(load_mesh(&args.mesh)?);
    let ray = radial_ray(&model, 0, 1e-3, 60)?;
    let ray_inext = inextendibility_check(&model, &ray, tol)?;
    let ray_complete = cauchy_complete_check(&model, &ray, tol)?;
    ctx.report.verdict(
        "radial-ray",
        ray_inext.inextendible() && ray_complete.complete(),
        json!({ "inextendibility": ray_inext, "completeness": ray_complete }),
        "ray from the apex: past endpoint in the boundary, future escapes, complete",
    );

    let sinh = sinh_curve(4.0, 81)?;
    let sinh_inext = inextendibility_check(&FullCone, &sinh, tol)?;
    let sinh_complete = cauchy_complete_check(&FullCone, &sinh, tol)?;
    let ok = sinh_inext.future.inextendible
        && !sinh_inext.past.inextendible
        && sinh_complete.future == (EndCompleteness::Complete { reason: "distanceDiverges" });
    ctx.report.verdict(
        "sinh-curve",
        ok,
        json!({ "inextendibility": sinh_inext, "completeness": sinh_complete }),
        "future-inextendible curve with divergent distance from its start",
    );

    let n = model.vertex_count();
    let terms = args.terms.max(4);
    let mut picks: Vec<(usize, f64)> = Vec::new();
    for _ in 0..4 {
        picks.push((ctx.rng.gen_range(0..n), ctx.rng.gen_range(-0.3..0.3)));
    }
    let sequence: Vec<CauchyGraph> = (1..=terms)
        .map(|k| {
            let shifted: Vec<(usize, f64)> = picks.iter().map(|&(v, h)| (v, h + 1.0 / (k * k) as f64)).collect();
            CauchyGraph::from_log(model.clone(), &lipschitz_envelope(&model, &shifted, 0.95))
        })
        .collect::<Result<_>>()?;
    let converging = limit_of_graph_sequence(&sequence, 1, args.epsilon, tol)?;
    let (conv_ok, conv_value) = match &converging {
        GraphLimitOutcome::Converged { tail_sup, tail_to_limit, validation, .. } => (
            validation.valid,
            json!({ "verdict": "converged", "tailSup": tail_sup, "tailToLimit": tail_to_limit, "limitValid": validation.valid }),
        ),
        other => (false, json!({ "verdict": format!("{other:?}") })),
    };
    ctx.report.verdict("graph-sequence-converges", conv_ok, conv_value, "envelope graphs with shrinking shifts converge to a Cauchy graph");

    let base = exp_distance_graph(model.clone(), 0, 1.0)?;
    let collapsing: Vec<CauchyGraph> = (1..=terms)
        .map(|k| CauchyGraph::new(model.clone(), base.f().iter().map(|f| f / (k * k) as f64).collect()))
        .collect::<Result<_>>()?;
    let escape = limit_of_graph_sequence(&collapsing, 1, args.epsilon, tol)?;
    let escape_ok = matches!(escape, GraphLimitOutcome::BoundaryEscape { .. });
    let escape_value = match &escape {
        GraphLimitOutcome::BoundaryEscape { vertex, value } => json!({ "verdict": "boundaryEscape", "vertex": vertex, "value": value }),
        other => json!({ "verdict": format!("{other:?}") }),
    };
    ctx.report.verdict("graph-sequence-escapes", escape_ok, escape_value, "graphs shrinking to the apex leave every Cauchy set");
    ctx.report.note(THEOREM_NOTE);
    Ok(())
}

/// A timelike chain from a point without timelike past, always stepping to the
/// nearest timelike successor.
fn greedy_timelike_chain(space: &FiniteLorentzianSpace) -> Vec<usize> {
    let n = space.len();
    let Some(mut x) = (0..n).find(|&x| (0..n).all(|z| !space.timelike(z, x))) else {
        return Vec::new();
    };
    let mut chain = vec![x];
    while let Some(y) = (0..n)
        .filter(|&y| space.timelike(x, y))
        .min_by(|&a, &b| space.dist(x, a).total_cmp(&space.dist(x, b)))
    {
        chain.push(y);
        x = y;
    }
    chain
}

fn complete_finite(args: &CompleteFiniteArgs, ctx: &mut Ctx) -> Result<()> {
    let space = io::read_space(&args.space)?;
    space.check_invariants(ctx.tol, true)?;
    let chain = greedy_timelike_chain(&space);
    if chain.is_empty() {
        return Err(Error::Input("space has no points".into()));
    }
    let tc = timelike_cauchy_completeness_finite(&space, &chain, Sense::Future)?;
    ctx.report.verdict("timelike-cauchy", true, json!({ "chain": chain, "verdict": tc }), "timelike monotone sequences are finite");
    let fc = finite_compactness_check_finite(&space);
    ctx.report.verdict("finite-compactness", matches!(fc, CompactnessVerdict::FinitelyCompact { .. }), &fc, "");
    ctx.report.note(THEOREM_NOTE);
    Ok(())
}

fn enumeration_indices(space: &FiniteLorentzianSpace, labels: &[String]) -> Result<Option<Vec<usize>>> {
    if labels.is_empty() {
        return Ok(None);
    }
    labels
        .iter()
        .map(|l| space.index_of(l).ok_or_else(|| Error::Input(format!("unknown label {l:?}"))))
        .collect::<Result<Vec<_>>>()
        .map(Some)
}

fn build(space: &FiniteLorentzianSpace, enumeration: Option<&[usize]>, relaxed: bool) -> Result<TimeFunctionValues> {
    if relaxed {
        build_time_function_relaxed(space, enumeration)
    } else {
        build_time_function(space, enumeration)
    }
}

fn timefn_build(args: &TimefnBuildArgs, ctx: &mut Ctx) -> Result<()> {
    let space = io::read_space(&args.space)?;
    let enumeration = enumeration_indices(&space, &args.enumeration)?;
    let tf = build(&space, enumeration.as_deref(), args.relaxed)?;
    ctx.report.verdict("time-function", true, &tf, "strictly increasing along the causal order, infinite exactly on the boundary");
    ctx.artifact("tau.csv", io::tau_csv(&tf));
    Ok(())
}

fn timefn_levels(args: &TimefnLevelsArgs, ctx: &mut Ctx) -> Result<()> {
    let spaces: Vec<FiniteLorentzianSpace> = match &args.space {
        Some(p) => vec![io::read_space(p)?],
        None => (0..args.posets)
            .map(|_| {
                let n = ctx.rng.gen_range(2..=args.max_points.max(2));
                random_weighted_poset(n, args.edge_probability, &mut ctx.rng)
            })
            .collect(),
    };
    let (mut levels_checked, mut chains, mut failures) = (0usize, 0.0f64, 0usize);
    for (si, space) in spaces.iter().enumerate() {
        let tf = build(space, None, args.relaxed)?;
        let levels = if args.levels.is_empty() { probe_levels(&tf) } else { args.levels.clone() };
        for level in levels {
            let r = verify_level_crossing(space, &tf, level)?;
            levels_checked += 1;
            chains += r.straddling_by_crossings.iter().sum::<f64>();
            if !r.passed {
                failures += 1;
                ctx.report.witness("level-crossing", r.violation.clone().unwrap_or_default(), format!("space {si}, level {level}"));
            }
        }
    }
    ctx.report.verdict(
        "monotone",
        true,
        spaces.len(),
        "tau strictly increasing along the causal order on every space",
    );
    ctx.report.verdict(
        "level-crossing",
        failures == 0,
        json!({ "spaces": spaces.len(), "levels": levels_checked, "straddlingChains": chains, "failures": failures }),
        "every maximal chain straddling a finite level crosses it exactly once",
    );
    ctx.report.note(
        "Maximal chains whose tau range spans the level stand in for inextendible causal curves; this discrete surrogate is a modelling choice.",
    );
    Ok(())
}

fn blaschke(args: &NetArgs, ctx: &mut Ctx) -> Result<()> {
    let model = ConeModel::new(load_mesh(&args.mesh)?);
    let center = CauchyGraph::constant(model, args.center)?;
    let mut net = blaschke_net(&center, args.r, args.epsilon, args.margin, ctx.tol)?;
    let probes: Vec<CauchyGraph> = (0..args.probes)
        .map(|_| random_ball_probe(&center, args.r, args.margin, &mut ctx.rng, ctx.tol))
        .collect::<Result<_>>()?;
    let mut outside = 0;
    for p in &probes {
        if dj_graphs(p, &center, ctx.tol)?.value > args.r + ctx.tol.value() {
            outside += 1;
        }
    }
    ctx.report.verdict("probes-in-ball", outside == 0, json!({ "probes": probes.len(), "outside": outside }), "");
    let cover = net.cover(&probes)?;
    if let (false, Some(i)) = (cover.covered, cover.worst_probe) {
        ctx.report.witness("coverage", vec![i], format!("distance {}", cover.max_distance));
    }
    ctx.report.verdict(
        "covered",
        cover.covered,
        json!({
            "maxDistance": cover.max_distance,
            "members": cover.members,
            "log10CardinalityBound": net.log10_cardinality_bound(),
            "step": net.step(),
        }),
        "every probe lies within epsilon of a net member; the net is finite",
    );
    Ok(())
}

fn summarize(args: &ReportArgs, ctx: &mut Ctx) -> Result<()> {
    let mut reports = Vec::new();
    for path in &args.files {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
        let r: Report = serde_json::from_str(&text).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
        reports.push(r);
    }
    for (path, r) in args.files.iter().zip(&reports) {
        ctx.report.verdict(r.subcommand.clone(), r.passed(), path.display().to_string(), "");
    }
    let mut text = summary_table(&reports);
    for r in &reports {
        text.push('\n');
        text.push_str(&r.to_table());
    }
    ctx.artifact("summary.txt", text);
    Ok(())
}
